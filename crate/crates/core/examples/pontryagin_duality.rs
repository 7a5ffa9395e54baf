// Descriptors of profinite and discrete torsion groups and their duals.
//
// Run with `cargo run --example pontryagin_duality`.

use gkab::finabelian::dual_finite;
use gkab::profinite::{
    dual_discrete, dual_profinite, t_descriptor, t_l, AnyDescriptor, Cardinal, ProfiniteDescriptor,
};
use gkab::FiniteAbelianGroup;

pub fn run_example() -> gkab::Result<String> {
    let mut out = String::new();
    let zhat2 = ProfiniteDescriptor::zhat(Cardinal::Finite(2));
    let d = zhat2.combine(&t_descriptor());
    out += &format!("{d}  dual  {}\n", dual_profinite(&d));
    let z3 = ProfiniteDescriptor::zl(3, Cardinal::Finite(1))?;
    out += &format!("{z3}  dual  {}\n", z3.dual());
    let t2 = t_l(2)?;
    out += &format!(
        "{t2}  self-dual pattern: {}\n",
        dual_discrete(&t2.dual()) == t2
    );

    let g: FiniteAbelianGroup = "4,6".parse()?;
    out += &format!("dual of {g} is {}\n", dual_finite(&g));

    let doc = AnyDescriptor::from(d).to_document();
    out += &format!("{doc}\n");
    out += &format!(
        "round trip: {}\n",
        AnyDescriptor::from_document(&doc)?.to_document() == doc
    );
    out += &format!(
        "T truncated at l = 2, K = 3, c = 2: {}\n",
        t_descriptor().truncate(2, 3, 2, 0)
    );
    Ok(out)
}

#[allow(dead_code)]
fn main() -> gkab::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
