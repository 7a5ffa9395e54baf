// Comparing global function fields by characteristic, `d_K` and the
// prime-to-p class group.
//
// Run with `cargo run --example function_fields`.

use gkab::classifier::{ff_isomorphic, ff_type, FFInput};

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    let fields = [
        (2, 12, "4,3"),
        (2, 3, "3"),
        (2, 3, "8,3"),
        (3, 3, "3,2"),
        (5, 25, "5"),
    ];
    let types = fields
        .iter()
        .map(|&(p, n, g)| {
            ff_type(&FFInput {
                characteristic: p,
                constant_exponent: n,
                class_group_deg0: g.parse()?,
            })
        })
        .collect::<gkab::Result<Vec<_>>>()?;
    for t in &types {
        out += &format!("{t}\n");
    }
    for i in 0..types.len() {
        let row: Vec<&str> = types
            .iter()
            .map(|u| {
                if ff_isomorphic(&types[i], u) {
                    "="
                } else {
                    "."
                }
            })
            .collect();
        out += &format!("{}\n", row.join(" "));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
