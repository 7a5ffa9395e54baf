use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::group::{FiniteAbelianGroup, GroupElement};
use super::matrix::{smith_normal_form, IntegerMatrix};
use super::primes::factorize;
use crate::error::{Error, Result};

/// `Z^g / ⟨rows⟩` together with where each standard generator lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub group: FiniteAbelianGroup,
    /// Image of the `j`-th generator of `Z^g`, in canonical coordinates.
    pub generator_images: Vec<GroupElement>,
}

/// The finite group `Z^g / (row lattice of relations)` in canonical form.
pub fn from_relations(
    num_generators: usize,
    relations: &IntegerMatrix,
) -> Result<FiniteAbelianGroup> {
    present(num_generators, relations).map(|p| p.group)
}

/// Like [`from_relations`], also returning the images of the generators.
///
/// With `S = U·M·V`, the map `x ↦ x·V` carries the row lattice of `M` onto
/// that of `S`, so generator `j` lands on row `j` of `V`, read modulo the
/// diagonal of `S` and split into primary components.
pub fn present(num_generators: usize, relations: &IntegerMatrix) -> Result<Presentation> {
    if relations.cols() != num_generators {
        return Err(Error::DimensionMismatch {
            expected: num_generators,
            found: relations.cols(),
        });
    }
    let snf = smith_normal_form(relations);
    let mut diag = snf.s.diagonal();
    diag.resize(num_generators, BigInt::zero());
    let free_rank = diag.iter().filter(|d| d.is_zero()).count();
    if free_rank > 0 {
        return Err(Error::InfiniteQuotient { free_rank });
    }

    // (prime, exponent, source diagonal slot)
    let mut slots: Vec<(u64, u32, usize)> = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = d.to_u64().ok_or_else(|| Error::OrderTooLarge {
            value: d.to_string(),
        })?;
        for (p, e) in factorize(d) {
            slots.push((p, e, i));
        }
    }
    slots.sort_by_key(|&(p, e, _)| (p, e));

    let group = FiniteAbelianGroup::from_prime_powers(slots.iter().map(|&(p, e, _)| (p, e)))?;
    let generator_images = (0..num_generators)
        .map(|j| {
            let coords = slots
                .iter()
                .map(|&(p, e, i)| {
                    let modulus = BigInt::from(p.pow(e));
                    snf.v[(j, i)]
                        .mod_floor(&modulus)
                        .to_u64()
                        .expect("residue below u64 modulus")
                })
                .collect();
            GroupElement::new(coords)
        })
        .collect();
    Ok(Presentation {
        group,
        generator_images,
    })
}
