// Class groups of imaginary quadratic fields from reduced forms.
//
// Run with `cargo run --example class_groups`.

use gkab::quadfields::{class_group, compose, Discriminant};

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    for d in [-23, -35, -47, -420, -3299] {
        let cg = class_group(&Discriminant::new(d)?);
        out += &format!("{cg}\n");
    }

    let cg = class_group(&Discriminant::new(-47)?);
    let f = &cg.representatives[1];
    let mut acc = f.clone();
    out += &format!("powers of {f} in D = -47:");
    for _ in 0..cg.class_number() {
        out += &format!(" {acc}");
        acc = compose(&acc, f)?;
    }
    out.push('\n');
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
