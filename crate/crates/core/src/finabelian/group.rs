use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use super::primes::{factorize, is_prime, valuation};
use crate::error::{Error, Result};

/// Largest group order for which elements are enumerated explicitly.
pub const ELEMENT_LIMIT: u64 = 1 << 24;

/// A cyclic factor `Z/p^e` of a primary decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFactor {
    pub prime: u64,
    pub exponent: u32,
}

impl CyclicFactor {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// A finite abelian group in canonical primary form.
///
/// `primary` maps each prime `l` to the descending list of exponents `e`
/// of its cyclic factors `Z/l^e`. Two values compare equal exactly when the
/// groups are isomorphic.
///
/// Elements are coordinate vectors over the factors listed by
/// [`FiniteAbelianGroup::factors`]: primes ascending, and within a prime the
/// exponents ascending, so `Z/2 ⊕ Z/4` has coordinates `(x mod 2, y mod 4)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    primary: BTreeMap<u64, Vec<u32>>,
}

/// An element of a [`FiniteAbelianGroup`], one residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        Self { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Direct sum of `Z/p^e` over the given pairs. Zero exponents are ignored.
    pub fn from_prime_powers<I: IntoIterator<Item = (u64, u32)>>(factors: I) -> Result<Self> {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(Error::InvalidGroupLiteral {
                    literal: format!("{p}^{e}"),
                    reason: format!("{p} is not prime"),
                });
            }
            if e == 0 {
                continue;
            }
            if p.checked_pow(e).is_none() {
                return Err(Error::OrderTooLarge {
                    value: format!("{p}^{e}"),
                });
            }
            primary.entry(p).or_default().push(e);
        }
        for exps in primary.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Self { primary })
    }

    /// An `l`-group with the given exponents.
    pub fn p_group(l: u64, exponents: &[u32]) -> Result<Self> {
        Self::from_prime_powers(exponents.iter().map(|&e| (l, e)))
    }

    /// `Z/n` for `n ≥ 1`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_cyclic_orders(&[n])
    }

    /// `Z/n₁ ⊕ Z/n₂ ⊕ …` for arbitrary positive orders.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut pairs = Vec::new();
        for &n in orders {
            if n == 0 {
                return Err(Error::InfiniteQuotient { free_rank: 1 });
            }
            pairs.extend(factorize(n));
        }
        Self::from_prime_powers(pairs)
    }

    pub fn primary(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.primary
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primary.keys().copied()
    }

    /// Descending exponents of the `l`-primary part (empty if absent).
    pub fn exponents(&self, l: u64) -> &[u32] {
        self.primary.get(&l).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_trivial(&self) -> bool {
        self.primary.is_empty()
    }

    pub fn is_p_group(&self, l: u64) -> bool {
        self.primary.keys().all(|&p| p == l)
    }

    /// Cyclic factors in element-coordinate order.
    pub fn factors(&self) -> Vec<CyclicFactor> {
        self.primary
            .iter()
            .flat_map(|(&prime, exps)| {
                exps.iter()
                    .rev()
                    .map(move |&exponent| CyclicFactor { prime, exponent })
            })
            .collect()
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors().iter().map(CyclicFactor::order).collect()
    }

    pub fn num_factors(&self) -> usize {
        self.primary.values().map(Vec::len).sum()
    }

    pub fn order(&self) -> BigUint {
        self.factors()
            .iter()
            .fold(BigUint::one(), |acc, f| acc * BigUint::from(f.order()))
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.factors()
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.order()))
    }

    /// The cyclic group `Z/exp(G)`.
    pub fn exponent_group(&self) -> Self {
        Self {
            primary: self
                .primary
                .iter()
                .map(|(&p, exps)| (p, vec![exps[0]]))
                .collect(),
        }
    }

    pub fn p_part(&self, l: u64) -> Self {
        Self {
            primary: self
                .primary
                .iter()
                .filter(|(&p, _)| p == l)
                .map(|(&p, e)| (p, e.clone()))
                .collect(),
        }
    }

    /// The prime-to-`l` part.
    pub fn without_prime(&self, l: u64) -> Self {
        Self {
            primary: self
                .primary
                .iter()
                .filter(|(&p, _)| p != l)
                .map(|(&p, e)| (p, e.clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut primary = self.primary.clone();
        for (&p, exps) in &other.primary {
            let entry = primary.entry(p).or_default();
            entry.extend(exps);
            entry.sort_unstable_by(|a, b| b.cmp(a));
        }
        Self { primary }
    }

    /// Whether `self` is isomorphic to a subgroup of `other`.
    ///
    /// Per prime, the descending exponent lists must be dominated entrywise.
    pub fn embeds_in(&self, other: &Self) -> bool {
        self.primary.iter().all(|(p, exps)| {
            let big = other.exponents(*p);
            exps.len() <= big.len() && exps.iter().zip(big).all(|(a, b)| a <= b)
        })
    }

    /// Whether `other ≅ self ⊕ X` for some `X` (multiset containment of factors).
    pub fn is_direct_summand_of(&self, other: &Self) -> bool {
        self.primary.iter().all(|(p, exps)| {
            let mut pool = other.exponents(*p).to_vec();
            exps.iter().all(|e| match pool.iter().position(|x| x == e) {
                Some(i) => {
                    pool.swap_remove(i);
                    true
                }
                None => false,
            })
        })
    }

    /// `(nG, G[n])` for `n ≥ 1`.
    pub fn power_and_socle(&self, n: u64) -> (Self, Self) {
        assert!(n >= 1, "power_and_socle needs n >= 1");
        let mut image = BTreeMap::new();
        let mut kernel = BTreeMap::new();
        for (&p, exps) in &self.primary {
            let v = valuation(n, p);
            let img: Vec<u32> = exps
                .iter()
                .map(|&e| e.saturating_sub(v))
                .filter(|&e| e > 0)
                .collect();
            let ker: Vec<u32> = exps.iter().map(|&e| e.min(v)).filter(|&e| e > 0).collect();
            if !img.is_empty() {
                image.insert(p, img);
            }
            if !ker.is_empty() {
                kernel.insert(p, ker);
            }
        }
        (Self { primary: image }, Self { primary: kernel })
    }

    // ---- elements ----

    /// Number of elements, if small enough to enumerate.
    pub fn enumerable_order(&self) -> Result<u64> {
        match self.order_u64() {
            Some(n) if n <= ELEMENT_LIMIT => Ok(n),
            _ => Err(Error::OrderTooLarge {
                value: self.order().to_string(),
            }),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.num_factors()])
    }

    /// Checked element construction.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        let orders = self.factor_orders();
        if coords.len() != orders.len() || coords.iter().zip(&orders).any(|(c, n)| c >= n) {
            return Err(Error::NotAnElement(format!(
                "{} in {}",
                GroupElement::new(coords.to_vec()),
                self
            )));
        }
        Ok(GroupElement::new(coords.to_vec()))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        let orders = self.factor_orders();
        a.coords.len() == orders.len() && a.coords.iter().zip(&orders).all(|(c, n)| c < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let orders = self.factor_orders();
        GroupElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&orders)
                .map(|((x, y), n)| ((*x as u128 + *y as u128) % *n as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let orders = self.factor_orders();
        GroupElement::new(
            a.coords
                .iter()
                .zip(&orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    /// `k · a`.
    pub fn scale(&self, a: &GroupElement, k: u64) -> GroupElement {
        let orders = self.factor_orders();
        GroupElement::new(
            a.coords
                .iter()
                .zip(&orders)
                .map(|(x, n)| ((*x as u128 * (k % n) as u128) % *n as u128) as u64)
                .collect(),
        )
    }

    /// Order of an element (lcm of coordinate orders).
    pub fn order_of(&self, a: &GroupElement) -> u64 {
        let mut per_prime: BTreeMap<u64, u32> = BTreeMap::new();
        for (f, &x) in self.factors().iter().zip(&a.coords) {
            if x == 0 {
                continue;
            }
            let e = f.exponent - valuation(x, f.prime).min(f.exponent);
            let slot = per_prime.entry(f.prime).or_default();
            *slot = (*slot).max(e);
        }
        per_prime.iter().map(|(p, e)| p.pow(*e)).product()
    }

    /// Largest `m` with `a ∈ l^m G`, or `None` when every `m` works.
    pub fn height(&self, a: &GroupElement, l: u64) -> Option<u32> {
        self.factors()
            .iter()
            .zip(&a.coords)
            .filter(|(f, &x)| f.prime == l && x != 0)
            .map(|(_, &x)| valuation(x, l))
            .min()
    }

    /// Whether `a ∈ nG`.
    pub fn in_multiple(&self, a: &GroupElement, n: u64) -> bool {
        self.factors().iter().zip(&a.coords).all(|(f, &x)| {
            let v = valuation(n, f.prime).min(f.exponent);
            x % f.prime.pow(v) == 0
        })
    }

    /// Mixed-radix index of an element in `0..|G|`.
    pub fn index_of(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(self.factor_orders())
            .fold(0u64, |acc, (x, n)| acc * n + x)
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let orders = self.factor_orders();
        let mut coords = vec![0; orders.len()];
        for (slot, n) in coords.iter_mut().zip(&orders).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement::new(coords)
    }

    /// Every element, in index order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let n = self.enumerable_order()?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Standard generators: the unit vector of each cyclic factor.
    pub fn generators(&self) -> Vec<GroupElement> {
        let k = self.num_factors();
        (0..k)
            .map(|i| {
                let mut c = vec![0; k];
                c[i] = 1;
                GroupElement::new(c)
            })
            .collect()
    }
}

/// `G ≅ H`.
pub fn is_isomorphic(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup) -> bool {
    g == h
}

/// The group `Hom(G, H)` under pointwise addition.
///
/// It splits over pairs of cyclic factors as `⊕ Z/gcd(|Gᵢ|, |Hⱼ|)`; only
/// pairs with the same prime contribute.
pub fn hom_group(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup) -> FiniteAbelianGroup {
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (&p, src) in &g.primary {
        for &e in src {
            for &f in h.exponents(p) {
                primary.entry(p).or_default().push(e.min(f));
            }
        }
    }
    for exps in primary.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    FiniteAbelianGroup { primary }
}

/// Character group `Hom(G, Z/exp(G))`, which is isomorphic to `G`.
pub fn dual_finite(g: &FiniteAbelianGroup) -> FiniteAbelianGroup {
    hom_group(g, &g.exponent_group())
}

/// `(nG, G[n])`; see [`FiniteAbelianGroup::power_and_socle`].
pub fn power_and_socle(g: &FiniteAbelianGroup, n: u64) -> (FiniteAbelianGroup, FiniteAbelianGroup) {
    g.power_and_socle(n)
}

/// Every isomorphism type of abelian `l`-group of order `l^n`.
pub fn p_groups_of_order(l: u64, n: u32) -> Result<Vec<FiniteAbelianGroup>> {
    super::primes::partitions(n)
        .into_iter()
        .map(|parts| FiniteAbelianGroup::p_group(l, &parts))
        .collect()
}

/// Every isomorphism type of abelian group of order `n`.
pub fn groups_of_order(n: u64) -> Result<Vec<FiniteAbelianGroup>> {
    let mut out = vec![FiniteAbelianGroup::trivial()];
    for (p, e) in factorize(n) {
        let locals = p_groups_of_order(p, e)?;
        out = out
            .iter()
            .flat_map(|g| locals.iter().map(move |l| g.direct_sum(l)))
            .collect();
    }
    Ok(out)
}

impl fmt::Display for FiniteAbelianGroup {
    /// Group literal: comma-separated cyclic orders, `1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let orders: Vec<String> = self.factor_orders().iter().map(u64::to_string).collect();
        write!(f, "{}", orders.join(","))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `"2,4"` as `Z/2 ⊕ Z/4`; `""` and `"1"` give the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidGroupLiteral {
            literal: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for tok in trimmed.split(',') {
            let tok = tok.trim();
            let n: u64 = tok
                .parse()
                .map_err(|_| bad(format!("{tok:?} is not a positive integer")))?;
            if n == 0 {
                return Err(bad("cyclic order 0 is not finite".into()));
            }
            orders.push(n);
        }
        Self::from_cyclic_orders(&orders)
    }
}
