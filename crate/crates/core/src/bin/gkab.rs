use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = gkab::cli::parse_and_dispatch(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(r.exit_code as u8)
}
