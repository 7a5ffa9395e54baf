// Extensions 0 -> A -> B -> C1 + C2 -> 0 swept over the divisibility level.
//
// Run with `cargo run --example truncation`.

use gkab::extension::{enumerate_extensions, TruncationSpec, DEFAULT_BOUND};

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    let spec = TruncationSpec::new(2, "2".parse()?, vec![1, 2], 0)?;
    let report = enumerate_extensions(&spec, DEFAULT_BOUND)?;
    out += &format!("{spec}\n");
    for (&m, &count) in &report.level_counts {
        let classes: Vec<String> = report
            .classes_at(m)
            .iter()
            .map(|c| c.group.to_string())
            .collect();
        out += &format!("  m = {m}: {count} [{}]\n", classes.join(" | "));
    }
    out += &format!("saturation {:?}\n", report.saturation());
    out += &enumerate_extensions(&spec.with_level(1), DEFAULT_BOUND)?.to_document();
    out.push('\n');
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
