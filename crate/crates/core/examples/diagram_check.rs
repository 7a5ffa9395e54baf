// Torsion of the dual model against the dual of the quotient, and a
// deliberately broken model that fails the divisibility check.
//
// Run with `cargo run --example diagram_check`.

use gkab::extension::{
    verify_diagram, verify_model, ExtensionModel, TruncationSpec, DEFAULT_BOUND,
};
use gkab::FiniteAbelianGroup;

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    for (a, exps) in [("2", vec![1, 2]), ("4", vec![1, 2, 3]), ("2,2", vec![1, 2])] {
        let a: FiniteAbelianGroup = a.parse()?;
        let spec = TruncationSpec::new(2, a.clone(), exps, 0)?;
        for n in [1, 2] {
            let c = verify_diagram(2, &a, &spec, n, DEFAULT_BOUND)?;
            out += &format!(
                "A={a} C={:?} n={n}: |D[l^n]|={} |T[l^n]|={} zero={} divisible={} {}\n",
                spec.quotient_exponents,
                c.d_socle_order,
                c.t_socle_order,
                c.composite_zero,
                c.divisible,
                if c.passed() { "PASS" } else { "FAIL" }
            );
        }
    }

    let b: FiniteAbelianGroup = "4,4".parse()?;
    let broken = ExtensionModel::new(2, b.clone(), vec![b.element(&[0, 2])?])?;
    let c = verify_model(&broken, 1, 2)?;
    out += &format!(
        "broken model {b}: passed={} counterexample={:?}\n",
        c.passed(),
        c.counterexample
    );
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
