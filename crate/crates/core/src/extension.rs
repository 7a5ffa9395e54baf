//! Finite-scale experiments on extensions `0 → A → B → ⊕Cᵢ → 0` of abelian
//! `l`-groups.
//!
//! For infinite families with unbounded `Cᵢ`, the group `B` is determined up
//! to isomorphism once `A` is required to consist of divisible elements. In
//! a finite group nothing nonzero is infinitely divisible, so the condition
//! is replaced by the parametric constraint `A ⊆ l^m B`, swept over `m`. The
//! saturation level is the largest `m` that still admits some `B`.
//!
//! [`enumerate_extensions`] finds every `B` by brute force,
//! [`canonical_b_model`] builds the expected one from generators and
//! relations, and [`verify_diagram`] checks the dual picture: the torsion of
//! the dual model in degree `l^n` lies inside the dual of `⊕Cᵢ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finabelian::primes::is_prime;
use crate::finabelian::{
    p_groups_of_order, present, quotient, quotient_by_counting, subgroups_isomorphic_to,
    FiniteAbelianGroup, GroupElement, Homomorphism, IntegerMatrix, Subgroup,
};

/// Default cap on `|A| · ∏|Cᵢ|`.
pub const DEFAULT_BOUND: u64 = 1 << 10;

/// Parameters of one truncated extension problem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncationSpec {
    pub prime: u64,
    pub sub: FiniteAbelianGroup,
    /// Exponents `kᵢ` with `Cᵢ = Z/l^kᵢ`, strictly ascending.
    pub quotient_exponents: Vec<u32>,
    /// Constraint `A ⊆ l^m B`.
    pub div_level: u32,
}

impl TruncationSpec {
    pub fn new(
        prime: u64,
        sub: FiniteAbelianGroup,
        quotient_exponents: Vec<u32>,
        div_level: u32,
    ) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidSpec(format!("{prime} is not prime")));
        }
        if !sub.is_p_group(prime) {
            return Err(Error::InvalidSpec(format!("{sub} is not a {prime}-group")));
        }
        if quotient_exponents.first() == Some(&0)
            || quotient_exponents.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::InvalidSpec(format!(
                "quotient exponents {quotient_exponents:?} must be positive and strictly ascending"
            )));
        }
        Ok(Self {
            prime,
            sub,
            quotient_exponents,
            div_level,
        })
    }

    pub fn with_level(&self, m: u32) -> Self {
        Self {
            div_level: m,
            ..self.clone()
        }
    }

    /// `⊕ Cᵢ`.
    pub fn quotient_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::p_group(self.prime, &self.quotient_exponents).expect("validated prime")
    }

    /// `log_l |B|`.
    pub fn total_exponent(&self) -> u32 {
        self.sub.exponents(self.prime).iter().sum::<u32>()
            + self.quotient_exponents.iter().sum::<u32>()
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.prime).pow(self.total_exponent())
    }
}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l={} A={} C={:?} m={}",
            self.prime, self.sub, self.quotient_exponents, self.div_level
        )
    }
}

/// Evidence that `B` is an admissible extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Generators of the copy `S ≅ A` inside `B`.
    pub sub_generators: Vec<GroupElement>,
    /// `B / S`, which must be `⊕ Cᵢ`.
    pub quotient: FiniteAbelianGroup,
    /// Largest `m ≤ log_l |B|` with `S ⊆ l^m B`.
    pub height: u32,
}

/// One isomorphism class of admissible `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionClass {
    pub group: FiniteAbelianGroup,
    /// Witness of maximal height; it certifies every level up to its height.
    pub witness: Witness,
}

impl ExtensionClass {
    pub fn max_level(&self) -> u32 {
        self.witness.height
    }
}

/// Result of [`enumerate_extensions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub spec: TruncationSpec,
    /// Classes surviving at `spec.div_level`, sorted by canonical form.
    pub classes: Vec<ExtensionClass>,
    /// Number of surviving classes at each level `0..=log_l |B|`.
    pub level_counts: BTreeMap<u32, usize>,
    all: Vec<ExtensionClass>,
}

impl ExtensionReport {
    /// Largest level with a survivor.
    pub fn saturation(&self) -> Option<u32> {
        self.level_counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&m, _)| m)
            .max()
    }

    pub fn classes_at(&self, m: u32) -> Vec<&ExtensionClass> {
        self.all.iter().filter(|c| c.max_level() >= m).collect()
    }

    /// JSON with the parameters, per-level counts and class keys.
    pub fn to_document(&self) -> String {
        let doc = ReportDoc {
            spec: SpecDoc::from(&self.spec),
            level_counts: self
                .level_counts
                .iter()
                .map(|(&m, &classes)| LevelDoc { m, classes })
                .collect(),
            saturation: self.saturation(),
            classes: self.classes.iter().map(|c| c.group.to_string()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("report serialises")
    }
}

#[derive(Serialize)]
pub(crate) struct SpecDoc {
    prime: u64,
    sub: String,
    quotient_exponents: Vec<u32>,
    div_level: u32,
}

impl From<&TruncationSpec> for SpecDoc {
    fn from(s: &TruncationSpec) -> Self {
        Self {
            prime: s.prime,
            sub: s.sub.to_string(),
            quotient_exponents: s.quotient_exponents.clone(),
            div_level: s.div_level,
        }
    }
}

#[derive(Serialize)]
struct LevelDoc {
    m: u32,
    classes: usize,
}

#[derive(Serialize)]
struct ReportDoc {
    spec: SpecDoc,
    level_counts: Vec<LevelDoc>,
    saturation: Option<u32>,
    classes: Vec<String>,
}

fn check_bound(spec: &TruncationSpec, bound: u64) -> Result<()> {
    let size = spec.order();
    if size > BigUint::from(bound) {
        return Err(Error::BoundExceeded {
            size: size.to_string(),
            bound,
        });
    }
    Ok(())
}

fn subgroup_height(b: &FiniteAbelianGroup, s: &Subgroup, l: u64, cap: u32) -> u32 {
    s.generators
        .iter()
        .filter_map(|x| b.height(x, l))
        .min()
        .unwrap_or(cap)
        .min(cap)
}

/// Necessary conditions on the shape of `B`, from `S[l^k] ⊆ B[l^k]`,
/// `B[l^k] / S[l^k] ↪ C[l^k]` and `l^k B ↠ l^k C`.
fn shape_admissible(spec: &TruncationSpec, b: &FiniteAbelianGroup) -> bool {
    let l = spec.prime;
    let socle = |exps: &[u32], k: u32| exps.iter().map(|&e| e.min(k)).sum::<u32>();
    let a = spec.sub.exponents(l);
    let c = &spec.quotient_exponents;
    let bx = b.exponents(l);
    let total_b: u32 = bx.iter().sum();
    let total_c: u32 = c.iter().sum();
    let top = bx.iter().copied().max().unwrap_or(0);
    (1..=top).all(|k| {
        let (sb, sa, sc) = (socle(bx, k), socle(a, k), socle(c, k));
        sa <= sb && sb <= sa + sc && total_b - sb >= total_c - sc
    })
}

/// Best witness in `b`, or `None` when no `S ≅ A` has `B/S ≅ ⊕Cᵢ`.
/// Levels are tried from the top, so the first hit has maximal height.
fn best_witness(spec: &TruncationSpec, b: &FiniteAbelianGroup) -> Result<Option<Witness>> {
    if !shape_admissible(spec, b) {
        return Ok(None);
    }
    let l = spec.prime;
    let target = spec.quotient_group();
    let top = b.exponents(l).iter().copied().max().unwrap_or(0);
    for m in (0..=top).rev() {
        let within = (m > 0).then(|| l.pow(m));
        for s in subgroups_isomorphic_to(b, &spec.sub, within)? {
            let q = quotient(b, &s.generators)?;
            if q == target {
                let height = subgroup_height(b, &s, l, spec.total_exponent());
                return Ok(Some(Witness {
                    sub_generators: s.generators,
                    quotient: q,
                    height,
                }));
            }
        }
    }
    Ok(None)
}

/// Every isomorphism class of `B` with `|B| = |A|·∏|Cᵢ|` admitting
/// `S ≅ A`, `S ⊆ l^m B`, `B/S ≅ ⊕Cᵢ`.
///
/// Candidates are all `l`-groups of the right order (one per partition of
/// the total exponent), evaluated in parallel and merged in canonical order.
/// Counts are reported for every level `0..=log_l |B|`.
pub fn enumerate_extensions(spec: &TruncationSpec, bound: u64) -> Result<ExtensionReport> {
    check_bound(spec, bound)?;
    let total = spec.total_exponent();
    let candidates = p_groups_of_order(spec.prime, total)?;
    let evaluated: Vec<Result<Option<ExtensionClass>>> = candidates
        .par_iter()
        .map(|b| {
            Ok(best_witness(spec, b)?.map(|witness| ExtensionClass {
                group: b.clone(),
                witness,
            }))
        })
        .collect();
    let mut all = Vec::new();
    for r in evaluated {
        if let Some(c) = r? {
            all.push(c);
        }
    }
    all.sort_by(|x, y| x.group.cmp(&y.group));

    let level_counts = (0..=total)
        .map(|m| (m, all.iter().filter(|c| c.max_level() >= m).count()))
        .collect();
    let classes = all
        .iter()
        .filter(|c| c.max_level() >= spec.div_level)
        .cloned()
        .collect();
    Ok(ExtensionReport {
        spec: spec.clone(),
        classes,
        level_counts,
        all,
    })
}

/// Re-checks a witness from scratch at level `m`: `S ≅ A`, `S ⊆ l^m B`, and
/// `B/S ≅ ⊕Cᵢ` computed by counting element orders in cosets.
pub fn verify_witness(spec: &TruncationSpec, class: &ExtensionClass, m: u32) -> Result<bool> {
    let b = &class.group;
    let s = Subgroup::generated(b, class.witness.sub_generators.clone())?;
    let l_m = spec
        .prime
        .checked_pow(m)
        .ok_or_else(|| Error::OrderTooLarge {
            value: format!("{}^{m}", spec.prime),
        })?;
    Ok(s.structure(b) == spec.sub
        && class
            .witness
            .sub_generators
            .iter()
            .all(|x| b.in_multiple(x, l_m))
        && quotient_by_counting(b, &s)? == spec.quotient_group())
}

/// A concrete extension: `B` with a distinguished copy of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionModel {
    pub prime: u64,
    pub group: FiniteAbelianGroup,
    /// A basis of the sub-copy `S ≅ A`.
    pub sub_generators: Vec<GroupElement>,
}

impl ExtensionModel {
    pub fn new(
        prime: u64,
        group: FiniteAbelianGroup,
        sub_generators: Vec<GroupElement>,
    ) -> Result<Self> {
        for x in &sub_generators {
            if !group.contains(x) {
                return Err(Error::NotAnElement(format!("{x} in {group}")));
            }
        }
        Ok(Self {
            prime,
            group,
            sub_generators,
        })
    }

    pub fn sub(&self) -> Result<Subgroup> {
        Subgroup::generated(&self.group, self.sub_generators.clone())
    }

    pub fn quotient(&self) -> Result<FiniteAbelianGroup> {
        quotient(&self.group, &self.sub_generators)
    }
}

/// The group generated by `a_j` (the cyclic factors of `A`, orders
/// `l^{e_j}`) and `x_i`, with relations `l^{e_j} a_j = 0` and
/// `l^{k_i} x_i = a_{i mod r}`. With `A` trivial the `x_i` are free cyclic.
pub fn canonical_b_model(spec: &TruncationSpec) -> Result<ExtensionModel> {
    let l = spec.prime;
    let a_factors = spec.sub.factors();
    let r = a_factors.len();
    let n = r + spec.quotient_exponents.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (j, f) in a_factors.iter().enumerate() {
        let mut row = vec![BigInt::from(0); n];
        row[j] = BigInt::from(f.order());
        rows.push(row);
    }
    for (i, &k) in spec.quotient_exponents.iter().enumerate() {
        let mut row = vec![BigInt::from(0); n];
        row[r + i] = BigInt::from(l).pow(k);
        if r > 0 {
            row[i % r] = BigInt::from(-1);
        }
        rows.push(row);
    }
    let p = present(n, &IntegerMatrix::from_rows(n, &rows))?;
    Ok(ExtensionModel {
        prime: l,
        group: p.group,
        sub_generators: p.generator_images[..r].to_vec(),
    })
}

/// Isomorphism type of [`canonical_b_model`].
pub fn canonical_b_truncation(spec: &TruncationSpec) -> Result<FiniteAbelianGroup> {
    canonical_b_model(spec).map(|m| m.group)
}

/// The isomorphism type of the pro-`l` group `D_l` extending `A` by `T_l`
/// with no torsion outside `T_l`; it is determined by `(l, A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DType {
    pub prime: u64,
    pub split: FiniteAbelianGroup,
}

impl DType {
    /// The type of `T_l` itself (trivial `A`).
    pub fn t_l(prime: u64) -> Self {
        Self {
            prime,
            split: FiniteAbelianGroup::trivial(),
        }
    }

    pub fn is_t_l(&self) -> bool {
        self.split.is_trivial()
    }
}

impl fmt::Display for DType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_t_l() {
            write!(f, "T_{}", self.prime)
        } else {
            write!(f, "D_{}(T_{}, {})", self.prime, self.prime, self.split)
        }
    }
}

pub fn canonical_d_descriptor(l: u64, a: &FiniteAbelianGroup) -> Result<DType> {
    if !is_prime(l) {
        return Err(Error::InvalidSpec(format!("{l} is not prime")));
    }
    if !a.is_p_group(l) {
        return Err(Error::InvalidSpec(format!("{a} is not a {l}-group")));
    }
    Ok(DType {
        prime: l,
        split: a.clone(),
    })
}

/// One truncation in a uniqueness sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessEntry {
    pub quotient_exponents: Vec<u32>,
    pub level_counts: BTreeMap<u32, usize>,
    pub saturation: Option<u32>,
    pub survivors: Vec<FiniteAbelianGroup>,
    pub canonical: FiniteAbelianGroup,
    pub passed: bool,
}

/// Result of [`verify_uniqueness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub prime: u64,
    pub sub: FiniteAbelianGroup,
    pub entries: Vec<UniquenessEntry>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn to_document(&self) -> String {
        #[derive(Serialize)]
        struct EntryDoc {
            quotient_exponents: Vec<u32>,
            level_counts: Vec<LevelDoc>,
            saturation: Option<u32>,
            survivors: Vec<String>,
            canonical: String,
            passed: bool,
        }
        #[derive(Serialize)]
        struct Doc {
            prime: u64,
            sub: String,
            passed: bool,
            entries: Vec<EntryDoc>,
        }
        let doc = Doc {
            prime: self.prime,
            sub: self.sub.to_string(),
            passed: self.passed(),
            entries: self
                .entries
                .iter()
                .map(|e| EntryDoc {
                    quotient_exponents: e.quotient_exponents.clone(),
                    level_counts: e
                        .level_counts
                        .iter()
                        .map(|(&m, &classes)| LevelDoc { m, classes })
                        .collect(),
                    saturation: e.saturation,
                    survivors: e.survivors.iter().map(ToString::to_string).collect(),
                    canonical: e.canonical.to_string(),
                    passed: e.passed,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("report serialises")
    }
}

/// For each exponent list, sweeps `m` to saturation and checks that exactly
/// one class survives there and that it is the canonical model.
pub fn verify_uniqueness(
    sub: &FiniteAbelianGroup,
    prime: u64,
    exponent_lists: &[Vec<u32>],
    bound: u64,
) -> Result<UniquenessReport> {
    let mut entries = Vec::new();
    for exps in exponent_lists {
        let spec = TruncationSpec::new(prime, sub.clone(), exps.clone(), 0)?;
        let report = enumerate_extensions(&spec, bound)?;
        let saturation = report.saturation();
        let survivors: Vec<FiniteAbelianGroup> = saturation
            .map(|m| {
                report
                    .classes_at(m)
                    .into_iter()
                    .map(|c| c.group.clone())
                    .collect()
            })
            .unwrap_or_default();
        let canonical = canonical_b_truncation(&spec)?;
        let passed = survivors.len() == 1 && survivors[0] == canonical;
        entries.push(UniquenessEntry {
            quotient_exponents: exps.clone(),
            level_counts: report.level_counts,
            saturation,
            survivors,
            canonical,
            passed,
        });
    }
    Ok(UniquenessReport {
        prime,
        sub: sub.clone(),
        entries,
    })
}

/// Which diagram identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFailure {
    /// An `l^n`-torsion element of the dual model outside the dual of `⊕Cᵢ`.
    TorsionOutsideT,
    /// An element of the sub-copy of `A` not divisible by `l^m` in `B`.
    NotDivisible,
}

/// Outcome of [`verify_diagram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramCheck {
    pub prime: u64,
    pub n: u32,
    pub saturation: u32,
    /// `|D_tr[l^n]|`.
    pub d_socle_order: u64,
    /// `|T_tr[l^n]|`.
    pub t_socle_order: u64,
    /// `D_tr[l^n] → A` is the zero map.
    pub composite_zero: bool,
    /// The sub-copy of `A` lies in `l^saturation B`.
    pub divisible: bool,
    pub counterexample: Option<(DiagramFailure, GroupElement)>,
}

impl DiagramCheck {
    pub fn passed(&self) -> bool {
        self.d_socle_order == self.t_socle_order && self.composite_zero && self.divisible
    }
}

/// Restriction of characters of `B` to the sub-copy: `D_tr = B^∨ → S^∨ ≅ A`.
///
/// Characters of `B = ⊕ Z/nᵢ` are coordinate vectors `c` acting by
/// `x ↦ Σ cᵢxᵢ/nᵢ ∈ Q/Z`. On a basis element `s` of order `o`, the value
/// lies in `(1/o)Z/Z ≅ Z/o`.
fn restriction_to_sub(model: &ExtensionModel) -> Result<Homomorphism> {
    let b = &model.group;
    let mut basis = model.sub_generators.clone();
    basis.sort_by_key(|s| b.order_of(s));
    let orders: Vec<u64> = basis.iter().map(|s| b.order_of(s)).collect();
    let target = FiniteAbelianGroup::from_cyclic_orders(&orders)?;
    let factor_orders = b.factor_orders();
    let exp = factor_orders.iter().copied().max().unwrap_or(1);
    let images = (0..factor_orders.len())
        .map(|i| {
            let coords = basis
                .iter()
                .zip(&orders)
                .map(|(s, &o)| {
                    // value s_i / n_i written over the common denominator exp
                    let num =
                        (s.coords[i] as u128 * (exp / factor_orders[i]) as u128) % exp as u128;
                    ((num / (exp / o) as u128) % o as u128) as u64
                })
                .collect();
            GroupElement::new(coords)
        })
        .collect();
    Homomorphism::new(b.clone(), target, images)
}

/// Diagram identities for an explicit model at level `n`, with the
/// divisibility check taken at `saturation`.
pub fn verify_model(model: &ExtensionModel, n: u32, saturation: u32) -> Result<DiagramCheck> {
    let l = model.prime;
    let b = &model.group;
    let restriction = restriction_to_sub(model)?;
    let t_tr = restriction.kernel()?;
    let l_n = l.checked_pow(n).ok_or_else(|| Error::OrderTooLarge {
        value: format!("{l}^{n}"),
    })?;

    let mut counterexample = None;
    let mut d_socle = 0u64;
    let mut t_socle = 0u64;
    let mut composite_zero = true;
    for x in b.elements()? {
        if b.scale(&x, l_n) != b.zero() {
            continue;
        }
        d_socle += 1;
        if t_tr.contains(b, &x) {
            t_socle += 1;
        }
        if restriction.apply(&x) != restriction.target().zero() {
            composite_zero = false;
            counterexample.get_or_insert((DiagramFailure::TorsionOutsideT, x));
        }
    }

    let mut divisible = true;
    for s in model.sub()?.elements(b) {
        if b.height(&s, l).is_some_and(|h| h < saturation) {
            divisible = false;
            counterexample.get_or_insert((DiagramFailure::NotDivisible, s));
        }
    }

    Ok(DiagramCheck {
        prime: l,
        n,
        saturation,
        d_socle_order: d_socle,
        t_socle_order: t_socle,
        composite_zero,
        divisible,
        counterexample,
    })
}

/// Builds the canonical model for `spec` and checks the diagram at `l^n`,
/// with the saturation level taken from exhaustive enumeration.
pub fn verify_diagram(
    l: u64,
    a: &FiniteAbelianGroup,
    spec: &TruncationSpec,
    n: u32,
    bound: u64,
) -> Result<DiagramCheck> {
    if spec.prime != l || &spec.sub != a {
        return Err(Error::InvalidSpec(format!(
            "spec {spec} does not match l={l}, A={a}"
        )));
    }
    let saturation = enumerate_extensions(spec, bound)?.saturation().unwrap_or(0);
    let model = canonical_b_model(spec)?;
    verify_model(&model, n, saturation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    fn spec(l: u64, a: &str, exps: &[u32], m: u32) -> TruncationSpec {
        TruncationSpec::new(l, g(a), exps.to_vec(), m).unwrap()
    }

    fn groups(r: &ExtensionReport) -> Vec<FiniteAbelianGroup> {
        r.classes.iter().map(|c| c.group.clone()).collect()
    }

    #[test]
    fn spec_validation() {
        assert!(TruncationSpec::new(4, g("2"), vec![1], 0).is_err());
        assert!(TruncationSpec::new(2, g("3"), vec![1], 0).is_err());
        assert!(TruncationSpec::new(2, g("2"), vec![2, 1], 0).is_err());
        assert!(TruncationSpec::new(2, g("2"), vec![1, 1], 0).is_err());
        assert!(TruncationSpec::new(2, g("2"), vec![0, 1], 0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let r = enumerate_extensions(&spec(2, "2", &[2], 1), DEFAULT_BOUND).unwrap();
        assert_eq!(groups(&r), vec![g("8")]);

        let r = enumerate_extensions(&spec(2, "1", &[1], 0), DEFAULT_BOUND).unwrap();
        assert_eq!(groups(&r), vec![g("2")]);

        let r = enumerate_extensions(&spec(2, "2", &[1, 2], 1), DEFAULT_BOUND).unwrap();
        let mut got = groups(&r);
        got.sort();
        let mut want = vec![g("2,8"), g("4,4")];
        want.sort();
        assert_eq!(got, want);
        let r = enumerate_extensions(&spec(2, "2", &[1, 2], 2), DEFAULT_BOUND).unwrap();
        assert_eq!(groups(&r), vec![g("2,8")]);
        assert_eq!(r.saturation(), Some(2));
    }

    #[test]
    fn counts_are_monotone_and_witnesses_sound() {
        for s in [
            spec(2, "2", &[1, 2, 3], 0),
            spec(2, "2,2", &[1, 2], 0),
            spec(3, "3", &[1, 2], 0),
        ] {
            let r = enumerate_extensions(&s, DEFAULT_BOUND).unwrap();
            let counts: Vec<usize> = r.level_counts.values().copied().collect();
            assert!(counts.windows(2).all(|w| w[0] >= w[1]), "{counts:?}");
            for c in &r.classes {
                for m in 0..=c.max_level() {
                    assert!(verify_witness(&s, c, m).unwrap());
                }
            }
        }
    }

    /// No pruning, no level ordering: every subgroup of every candidate.
    fn oracle_counts(s: &TruncationSpec) -> Vec<usize> {
        let total = s.total_exponent();
        let mut best = Vec::new();
        for b in p_groups_of_order(s.prime, total).unwrap() {
            let mut h = None;
            for sub in subgroups_isomorphic_to(&b, &s.sub, None).unwrap() {
                if quotient_by_counting(&b, &sub).unwrap() == s.quotient_group() {
                    let height = subgroup_height(&b, &sub, s.prime, total);
                    h = h.max(Some(height));
                }
            }
            best.extend(h);
        }
        (0..=total)
            .map(|m| best.iter().filter(|&&h| h >= m).count())
            .collect()
    }

    #[test]
    fn pruned_search_matches_oracle() {
        for s in [
            spec(2, "2", &[1, 2], 0),
            spec(2, "4", &[1, 2], 0),
            spec(2, "2,2", &[1, 2], 0),
            spec(2, "2", &[2, 3], 0),
            spec(3, "3", &[1, 2], 0),
            spec(2, "1", &[1, 3], 0),
        ] {
            let r = enumerate_extensions(&s, DEFAULT_BOUND).unwrap();
            let counts: Vec<usize> = r.level_counts.values().copied().collect();
            assert_eq!(counts, oracle_counts(&s), "{s}");
        }
    }

    #[test]
    fn bound_is_enforced() {
        let s = spec(2, "2", &[1, 2, 3, 4], 0);
        assert!(matches!(
            enumerate_extensions(&s, DEFAULT_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn canonical_b_examples() {
        assert_eq!(
            canonical_b_truncation(&spec(2, "2", &[1, 2], 0)).unwrap(),
            g("2,8")
        );
        assert_eq!(
            canonical_b_truncation(&spec(2, "1", &[1, 2], 0)).unwrap(),
            g("2,4")
        );
        assert_eq!(
            canonical_b_truncation(&spec(2, "2", &[2], 0)).unwrap(),
            g("8")
        );
        assert_eq!(
            canonical_b_truncation(&spec(3, "3", &[1, 2], 0)).unwrap(),
            g("3,27")
        );
    }

    #[test]
    fn canonical_model_embeds_a_with_quotient_c() {
        let s = spec(2, "2,4", &[1, 2, 3], 0);
        let m = canonical_b_model(&s).unwrap();
        assert_eq!(m.sub().unwrap().structure(&m.group), g("2,4"));
        assert_eq!(m.quotient().unwrap(), s.quotient_group());
    }

    #[test]
    fn uniqueness_examples() {
        let r = verify_uniqueness(&g("2"), 2, &[vec![1, 2, 3]], DEFAULT_BOUND).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries[0].survivors.len(), 1);

        let r = verify_uniqueness(&g("1"), 2, &[vec![1, 2], vec![1, 3]], DEFAULT_BOUND).unwrap();
        for e in &r.entries {
            assert!(e.level_counts.values().all(|&c| c == 1));
        }
        assert!(r.passed());

        let r = verify_uniqueness(&g("3"), 3, &[vec![1, 2]], DEFAULT_BOUND).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries[0].survivors, vec![g("3,27")]);
    }

    #[test]
    fn d_types() {
        assert!(canonical_d_descriptor(2, &g("1")).unwrap().is_t_l());
        assert_eq!(canonical_d_descriptor(2, &g("1")).unwrap(), DType::t_l(2));
        assert_eq!(
            canonical_d_descriptor(2, &g("2")).unwrap(),
            canonical_d_descriptor(2, &"2".parse().unwrap()).unwrap()
        );
        assert_ne!(
            canonical_d_descriptor(2, &g("2")).unwrap(),
            canonical_d_descriptor(2, &g("4")).unwrap()
        );
        assert!(canonical_d_descriptor(3, &g("2")).is_err());
    }

    #[test]
    fn diagram_examples() {
        let s = spec(2, "2", &[1, 2], 0);
        let check = verify_diagram(2, &g("2"), &s, 1, DEFAULT_BOUND).unwrap();
        assert!(check.passed(), "{check:?}");
        assert_eq!((check.d_socle_order, check.t_socle_order), (4, 4));

        let s = spec(2, "1", &[1, 2], 0);
        assert!(verify_diagram(2, &g("1"), &s, 2, DEFAULT_BOUND)
            .unwrap()
            .passed());

        let b = g("4,4");
        let broken = ExtensionModel::new(2, b.clone(), vec![b.element(&[0, 2]).unwrap()]).unwrap();
        let check = verify_model(&broken, 1, 2).unwrap();
        assert!(!check.passed());
        assert!(!check.divisible);
        assert_eq!(
            check.counterexample.unwrap().0,
            DiagramFailure::NotDivisible
        );
    }

    #[test]
    fn report_document_is_stable() {
        let r = enumerate_extensions(&spec(2, "2", &[1, 2], 1), DEFAULT_BOUND).unwrap();
        let doc = r.to_document();
        assert_eq!(
            doc,
            enumerate_extensions(&spec(2, "2", &[1, 2], 1), DEFAULT_BOUND)
                .unwrap()
                .to_document()
        );
        assert!(doc.contains("\"saturation\": 2"));
        assert!(doc.find("\"spec\"").unwrap() < doc.find("\"level_counts\"").unwrap());
    }
}
