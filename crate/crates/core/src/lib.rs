//! Isomorphism types of the abelianized absolute Galois group `G_K^ab`.
//!
//! For an imaginary quadratic field `K` other than `Q(i)` and `Q(sqrt(-2))`,
//! `G_K^ab` is isomorphic to `Ẑ² × D_K`, where `D_K` is the unique profinite
//! group extending the split part of the class group by `T = ∏ Z/nZ` with no
//! torsion outside `T`. The isomorphism type is therefore pinned down by the
//! isomorphism type of that split part alone.
//!
//! The crate is organised bottom-up:
//!
//! - [`finabelian`]: exact finite abelian group arithmetic (Smith normal form,
//!   presentations, Hom groups, duals, subgroups and quotients).
//! - [`profinite`]: canonical descriptors of profinite and discrete torsion
//!   groups with Pontryagin duality and truncation to finite models.
//! - [`extension`]: exhaustive enumeration of extensions `0 → A → B → ⊕Cᵢ → 0`
//!   under divisibility constraints, canonical models and diagram checks.
//! - [`quadfields`]: reduced binary quadratic forms, composition and class
//!   groups of imaginary quadratic fields.
//! - [`classifier`]: the `G_K^ab` type of a field, batch partitioning and the
//!   global function field comparison.
//! - [`cli`]: the command-line surface used by the `gkab` binary.

pub mod classifier;
pub mod cli;
pub mod error;
pub mod extension;
pub mod finabelian;
pub mod profinite;
pub mod quadfields;

pub use error::{Error, Result};
pub use finabelian::{FiniteAbelianGroup, GroupElement, IntegerMatrix};
