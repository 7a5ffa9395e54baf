// The `G_K^ab` type of imaginary quadratic fields and batch partitioning.
//
// Run with `cargo run --example classify_fields`.

use gkab::classifier::{classify, classify_all, reachable_types, SplitPolicy, BUILTIN_SPLIT_TABLE};
use gkab::FiniteAbelianGroup;
use num_bigint::BigInt;

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    let policy = SplitPolicy::builtin();
    for d in [-7, -35, -51] {
        let c = classify(&BigInt::from(d), &policy)?;
        out += &format!(
            "{:>5}  h = {}  split {} [{}]  {}\n",
            d,
            c.class_group.order(),
            c.split.group,
            c.split.source,
            c.gkab
        );
    }
    if let Err(e) = classify(&BigInt::from(-4), &policy) {
        out += &format!("   -4  {e}\n");
    }

    let mut discs: Vec<BigInt> = BUILTIN_SPLIT_TABLE
        .iter()
        .map(|&d| BigInt::from(d))
        .collect();
    discs.extend([-3, -7, -39].map(BigInt::from));
    // the user knows h(-39) = 4 has a trivial split part
    let policy = policy.with_entry(-39, FiniteAbelianGroup::trivial());
    let report = classify_all(&discs, &policy);
    for cell in &report.cells {
        let ds: Vec<String> = cell
            .members
            .iter()
            .map(|m| m.discriminant.to_string())
            .collect();
        out += &format!("{}: {}\n", cell.gkab, ds.join(" "));
    }

    let types = reachable_types(&FiniteAbelianGroup::cyclic(2)?)?;
    out += &format!("types reachable with h = 2: {}\n", types.len());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
