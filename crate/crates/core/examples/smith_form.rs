// Smith normal form of an integer matrix and the group it presents.
//
// Run with `cargo run --example smith_form`.

use gkab::finabelian::{present, smith_normal_form};
use gkab::IntegerMatrix;

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    let m = IntegerMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    out += &format!(
        "M = {m}\nS = {}\nU·M·V == S: {}\n",
        snf.s,
        snf.u.mul(&m).mul(&snf.v) == snf.s
    );

    // <a, x1, x2 | 2a, 2x1 - a, 4x2 - a>
    let relations = IntegerMatrix::from_rows(3, &[vec![2, 0, 0], vec![-1, 2, 0], vec![-1, 0, 4]]);
    let p = present(3, &relations)?;
    out += &format!("presented group: {}\n", p.group);
    for (name, img) in ["a", "x1", "x2"].iter().zip(&p.generator_images) {
        out += &format!("  {name} -> {img}\n");
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
