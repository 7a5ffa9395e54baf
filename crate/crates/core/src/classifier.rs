//! Isomorphism types of `G_K^ab` for imaginary quadratic fields, and the
//! comparison of global function fields.
//!
//! The type of `G_K^ab` is `Ẑ² × D_K`, so two fields are compared through the
//! split part of their class groups. That split part is not computed here:
//! it comes from a [`SplitPolicy`] (user data, a builtin table, or the forced
//! trivial answer when `h_K = 1`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finabelian::primes::{factorize, is_prime, valuation};
use crate::finabelian::{groups_of_order, FiniteAbelianGroup};
use crate::profinite::{t_descriptor, ProfiniteDescriptor};
use crate::quadfields::{class_group, Discriminant};

/// Fields whose split class group is known to be `Z/2`.
pub const BUILTIN_SPLIT_TABLE: [i64; 10] =
    [-35, -51, -91, -115, -123, -187, -235, -267, -403, -427];

/// `Q(i)` and `Q(sqrt(-2))`.
pub const EXCLUDED_DISCRIMINANTS: [i64; 2] = [-4, -8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitSource {
    BuiltinTable,
    UserSupplied,
    ForcedTrivial,
    Unknown,
}

impl fmt::Display for SplitSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BuiltinTable => "builtin",
            Self::UserSupplied => "user",
            Self::ForcedTrivial => "forced-trivial",
            Self::Unknown => "unknown",
        })
    }
}

/// The split class group of one field and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitData {
    pub source: SplitSource,
    pub group: FiniteAbelianGroup,
}

/// Where split groups are looked up. User entries win over the builtin table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPolicy {
    user: BTreeMap<BigInt, FiniteAbelianGroup>,
    builtin: bool,
}

impl Default for SplitPolicy {
    fn default() -> Self {
        Self::builtin()
    }
}

impl SplitPolicy {
    pub fn builtin() -> Self {
        Self {
            user: BTreeMap::new(),
            builtin: true,
        }
    }

    /// No table at all; only `h = 1` fields resolve.
    pub fn none() -> Self {
        Self {
            user: BTreeMap::new(),
            builtin: false,
        }
    }

    pub fn with_entry(mut self, d: impl Into<BigInt>, group: FiniteAbelianGroup) -> Self {
        self.user.insert(d.into(), group);
        self
    }

    pub fn with_entries(
        mut self,
        entries: impl IntoIterator<Item = (BigInt, FiniteAbelianGroup)>,
    ) -> Self {
        self.user.extend(entries);
        self
    }

    pub fn user_entries(&self) -> &BTreeMap<BigInt, FiniteAbelianGroup> {
        &self.user
    }

    /// Table lookup without the `h = 1` rule or any containment check.
    pub fn lookup(&self, d: &BigInt) -> SplitData {
        if let Some(g) = self.user.get(d) {
            return SplitData {
                source: SplitSource::UserSupplied,
                group: g.clone(),
            };
        }
        if self.builtin && BUILTIN_SPLIT_TABLE.iter().any(|&b| BigInt::from(b) == *d) {
            return SplitData {
                source: SplitSource::BuiltinTable,
                group: FiniteAbelianGroup::cyclic(2).expect("2 is a valid order"),
            };
        }
        SplitData {
            source: SplitSource::Unknown,
            group: FiniteAbelianGroup::trivial(),
        }
    }

    /// Resolves the split group of `d` against its class group.
    pub fn resolve(&self, d: &BigInt, class_group: &FiniteAbelianGroup) -> Result<SplitData> {
        if class_group.is_trivial() {
            return Ok(SplitData {
                source: SplitSource::ForcedTrivial,
                group: FiniteAbelianGroup::trivial(),
            });
        }
        let data = self.lookup(d);
        match data.source {
            SplitSource::Unknown => Err(Error::SplitDataUnavailable(d.clone())),
            _ if !data.group.embeds_in(class_group) => Err(Error::SplitContainment {
                discriminant: d.clone(),
                split: data.group.to_string(),
                class_group: class_group.to_string(),
            }),
            _ => Ok(data),
        }
    }
}

/// The isomorphism type `Ẑ² × D_K` of `G_K^ab`. Rank and torsion closure are
/// the same for every field, so only the split group is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GKabType {
    pub split_group: FiniteAbelianGroup,
}

impl GKabType {
    pub fn free_zhat_rank(&self) -> u64 {
        2
    }

    pub fn torsion_closure(&self) -> ProfiniteDescriptor {
        t_descriptor()
    }

    /// `{"free_rank":2,"torsion_closure":"T","split":"<literal>"}`.
    pub fn to_document(&self) -> String {
        serde_json::to_string(&TypeDoc::from(self)).expect("type serialises")
    }
}

impl fmt::Display for GKabType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.split_group.is_trivial() {
            write!(f, "Zhat^2 x T")
        } else {
            write!(f, "Zhat^2 x D(T, {})", self.split_group)
        }
    }
}

#[derive(Serialize)]
pub(crate) struct TypeDoc {
    free_rank: u64,
    torsion_closure: &'static str,
    split: String,
}

impl From<&GKabType> for TypeDoc {
    fn from(t: &GKabType) -> Self {
        Self {
            free_rank: t.free_zhat_rank(),
            torsion_closure: "T",
            split: t.split_group.to_string(),
        }
    }
}

/// Everything computed for one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub discriminant: Discriminant,
    pub class_group: FiniteAbelianGroup,
    pub split: SplitData,
    pub gkab: GKabType,
}

impl Classification {
    pub fn to_document(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            discriminant: String,
            class_number: String,
            class_group: String,
            split_source: SplitSource,
            gkab: TypeDoc,
        }
        serde_json::to_string(&Doc {
            discriminant: self.discriminant.to_string(),
            class_number: self.class_group.order().to_string(),
            class_group: self.class_group.to_string(),
            split_source: self.split.source,
            gkab: TypeDoc::from(&self.gkab),
        })
        .expect("classification serialises")
    }
}

/// Validates `d` and classifies it under `policy`.
pub fn classify(d: &BigInt, policy: &SplitPolicy) -> Result<Classification> {
    let disc = Discriminant::new(d.clone())?;
    if EXCLUDED_DISCRIMINANTS
        .iter()
        .any(|&x| BigInt::from(x) == *d)
    {
        return Err(Error::ExcludedField(d.clone()));
    }
    let cg = class_group(&disc).structure;
    let split = policy.resolve(d, &cg)?;
    Ok(Classification {
        discriminant: disc,
        gkab: GKabType {
            split_group: split.group.clone(),
        },
        class_group: cg,
        split,
    })
}

pub fn gkab_type(d: &BigInt, policy: &SplitPolicy) -> Result<GKabType> {
    classify(d, policy).map(|c| c.gkab)
}

pub fn types_isomorphic(t1: &GKabType, t2: &GKabType) -> bool {
    t1.split_group == t2.split_group
}

/// One isomorphism class of a batch, members by increasing `|D|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub gkab: GKabType,
    pub members: Vec<Classification>,
}

/// Partition of a batch plus the items that could not be classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchReport {
    pub cells: Vec<Cell>,
    pub errors: Vec<(BigInt, Error)>,
}

impl BatchReport {
    pub fn to_document(&self) -> String {
        #[derive(Serialize)]
        struct CellDoc {
            gkab: TypeDoc,
            discriminants: Vec<String>,
        }
        #[derive(Serialize)]
        struct ErrorDoc {
            discriminant: String,
            error: String,
        }
        #[derive(Serialize)]
        struct Doc {
            classes: Vec<CellDoc>,
            errors: Vec<ErrorDoc>,
        }
        let doc = Doc {
            classes: self
                .cells
                .iter()
                .map(|c| CellDoc {
                    gkab: TypeDoc::from(&c.gkab),
                    discriminants: c
                        .members
                        .iter()
                        .map(|m| m.discriminant.to_string())
                        .collect(),
                })
                .collect(),
            errors: self
                .errors
                .iter()
                .map(|(d, e)| ErrorDoc {
                    discriminant: d.to_string(),
                    error: e.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("batch serialises")
    }
}

/// Classifies every item and groups them by isomorphism type. Cells are
/// ordered by their smallest `|D|`; errors keep input order.
pub fn classify_batch(items: &[(BigInt, SplitPolicy)]) -> BatchReport {
    let results: Vec<Result<Classification>> =
        items.par_iter().map(|(d, p)| classify(d, p)).collect();
    let mut cells: BTreeMap<GKabType, Vec<Classification>> = BTreeMap::new();
    let mut errors = Vec::new();
    for ((d, _), r) in items.iter().zip(results) {
        match r {
            Ok(c) => cells.entry(c.gkab.clone()).or_default().push(c),
            Err(e) => errors.push((d.clone(), e)),
        }
    }
    let mut cells: Vec<Cell> = cells
        .into_iter()
        .map(|(gkab, mut members)| {
            members.sort_by(|a, b| {
                a.discriminant
                    .value()
                    .abs()
                    .cmp(&b.discriminant.value().abs())
            });
            Cell { gkab, members }
        })
        .collect();
    cells.sort_by(|a, b| {
        a.members[0]
            .discriminant
            .value()
            .abs()
            .cmp(&b.members[0].discriminant.value().abs())
    });
    BatchReport { cells, errors }
}

/// Every batch item classified under the same policy.
pub fn classify_all(discriminants: &[BigInt], policy: &SplitPolicy) -> BatchReport {
    let items: Vec<(BigInt, SplitPolicy)> = discriminants
        .iter()
        .map(|d| (d.clone(), policy.clone()))
        .collect();
    classify_batch(&items)
}

/// Isomorphism types of all subgroups of a class group: the split groups a
/// policy may legally assign.
pub fn possible_split_groups(class_group: &FiniteAbelianGroup) -> Result<Vec<FiniteAbelianGroup>> {
    let h = class_group
        .order_u64()
        .ok_or_else(|| Error::OrderTooLarge {
            value: class_group.order().to_string(),
        })?;
    let mut divisors = vec![1u64];
    for (p, e) in factorize(h) {
        divisors = divisors
            .iter()
            .flat_map(|&d| (0..=e).map(move |k| d * p.pow(k)))
            .collect();
    }
    divisors.sort_unstable();
    let mut out = Vec::new();
    for d in divisors {
        out.extend(
            groups_of_order(d)?
                .into_iter()
                .filter(|g| g.embeds_in(class_group)),
        );
    }
    Ok(out)
}

/// `G_K^ab` types reachable for a field with the given class group.
pub fn reachable_types(class_group: &FiniteAbelianGroup) -> Result<Vec<GKabType>> {
    Ok(possible_split_groups(class_group)?
        .into_iter()
        .map(|split_group| GKabType { split_group })
        .collect())
}

/// A global function field: characteristic `p`, exact constant field
/// `F_q` with `q = pⁿ`, and degree-zero class group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFInput {
    pub characteristic: u64,
    pub constant_exponent: u64,
    pub class_group_deg0: FiniteAbelianGroup,
}

/// The invariants that decide `G_K^ab` for a function field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFType {
    pub characteristic: u64,
    /// Prime-to-`p` part of `n`.
    pub d_k: u64,
    /// Prime-to-`p` part of the degree-zero class group.
    pub nonp_class: FiniteAbelianGroup,
}

impl FFType {
    pub fn to_document(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            characteristic: u64,
            d_k: u64,
            nonp_class: String,
            zhat_rank: u64,
            zp_rank: &'static str,
        }
        serde_json::to_string(&Doc {
            characteristic: self.characteristic,
            d_k: self.d_k,
            nonp_class: self.nonp_class.to_string(),
            zhat_rank: 1,
            zp_rank: "aleph0",
        })
        .expect("type serialises")
    }
}

impl fmt::Display for FFType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Zhat x Z_{}^aleph0 x D(T, {}) with d_K = {}",
            self.characteristic, self.nonp_class, self.d_k
        )
    }
}

pub fn ff_type(input: &FFInput) -> Result<FFType> {
    let p = input.characteristic;
    if !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    if input.constant_exponent == 0 {
        return Err(Error::InvalidFieldExponent);
    }
    let d_k = input.constant_exponent / p.pow(valuation(input.constant_exponent, p));
    Ok(FFType {
        characteristic: p,
        d_k,
        nonp_class: input.class_group_deg0.without_prime(p),
    })
}

/// Same characteristic, same `d_K`, isomorphic prime-to-`p` class groups.
pub fn ff_isomorphic(a: &FFType, b: &FFType) -> bool {
    a.characteristic == b.characteristic && a.d_k == b.d_k && a.nonp_class == b.nonp_class
}
