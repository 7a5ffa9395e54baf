// At the saturation level exactly one extension survives, and it is the
// canonical model built from generators and relations.
//
// Run with `cargo run --example extension_uniqueness`.

use gkab::extension::{canonical_d_descriptor, verify_uniqueness, DEFAULT_BOUND};
use gkab::FiniteAbelianGroup;

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    let cases: [(u64, &str, Vec<Vec<u32>>); 3] = [
        (2, "1", vec![vec![1, 2], vec![1, 2, 3]]),
        (2, "2,2", vec![vec![1, 2], vec![1, 2, 3]]),
        (3, "3", vec![vec![1, 2]]),
    ];
    for (l, a, lists) in cases {
        let a: FiniteAbelianGroup = a.parse()?;
        let report = verify_uniqueness(&a, l, &lists, DEFAULT_BOUND)?;
        for e in &report.entries {
            let counts: Vec<String> = e.level_counts.values().map(ToString::to_string).collect();
            out += &format!(
                "l={l} A={a} C={:?}: counts {} saturation {:?} canonical {} {}\n",
                e.quotient_exponents,
                counts.join(","),
                e.saturation,
                e.canonical,
                if e.passed { "PASS" } else { "FAIL" }
            );
        }
        out += &format!("  limit type {}\n", canonical_d_descriptor(l, &a)?);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
