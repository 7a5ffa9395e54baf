use super::group::{FiniteAbelianGroup, GroupElement};
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A homomorphism given by the images of the source's standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    images: Vec<GroupElement>,
}

impl Homomorphism {
    /// Checks that each image is killed by the order of its generator.
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        if images.len() != source.num_factors() {
            return Err(Error::IllDefinedHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                source.num_factors()
            )));
        }
        for (img, n) in images.iter().zip(source.factor_orders()) {
            if !target.contains(img) {
                return Err(Error::NotAnElement(format!("{img} in {target}")));
            }
            if target.scale(img, n) != target.zero() {
                return Err(Error::IllDefinedHomomorphism(format!(
                    "generator of order {n} sent to {img} of order {}",
                    target.order_of(img)
                )));
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn zero(source: FiniteAbelianGroup, target: FiniteAbelianGroup) -> Self {
        let images = vec![target.zero(); source.num_factors()];
        Self {
            source,
            target,
            images,
        }
    }

    pub fn identity(g: FiniteAbelianGroup) -> Self {
        Self {
            images: g.generators(),
            source: g.clone(),
            target: g,
        }
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.images
            .iter()
            .zip(&x.coords)
            .fold(self.target.zero(), |acc, (img, &c)| {
                self.target.add(&acc, &self.target.scale(img, c))
            })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if self.target != next.source {
            return Err(Error::IllDefinedHomomorphism(format!(
                "cannot compose into {} from {}",
                next.source, self.target
            )));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|x| next.apply(x)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|x| *x == self.target.zero())
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        let gens: Vec<GroupElement> = self
            .source
            .elements()?
            .into_iter()
            .filter(|x| self.apply(x) == self.target.zero())
            .collect();
        Subgroup::generated(&self.source, gens)
    }

    pub fn image(&self) -> Result<Subgroup> {
        Subgroup::generated(&self.target, self.images.clone())
    }
}
