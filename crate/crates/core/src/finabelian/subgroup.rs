use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;

use super::group::{FiniteAbelianGroup, GroupElement};
use super::matrix::IntegerMatrix;
use super::presentation::{from_relations, present, Presentation};
use super::primes::{factorize, valuation};
use crate::error::{Error, Result};

/// A subgroup of an ambient group, stored as generators plus its sorted
/// element indices (see [`FiniteAbelianGroup::index_of`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub generators: Vec<GroupElement>,
    indices: Vec<u64>,
}

impl Subgroup {
    /// The subgroup of `ambient` generated by `generators`.
    pub fn generated(ambient: &FiniteAbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        ambient.enumerable_order()?;
        for g in &generators {
            if !ambient.contains(g) {
                return Err(Error::NotAnElement(format!("{g} in {ambient}")));
            }
        }
        let mut members: HashSet<u64> = HashSet::from([ambient.index_of(&ambient.zero())]);
        let mut current = vec![ambient.zero()];
        for g in &generators {
            extend_closure(ambient, &mut current, &mut members, g);
        }
        let mut indices: Vec<u64> = members.into_iter().collect();
        indices.sort_unstable();
        Ok(Self {
            generators,
            indices,
        })
    }

    pub fn order(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains(&self, ambient: &FiniteAbelianGroup, a: &GroupElement) -> bool {
        self.indices.binary_search(&ambient.index_of(a)).is_ok()
    }

    pub fn elements(&self, ambient: &FiniteAbelianGroup) -> Vec<GroupElement> {
        self.indices
            .iter()
            .map(|&i| ambient.element_at(i))
            .collect()
    }

    /// Isomorphism type of the subgroup.
    pub fn structure(&self, ambient: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        structure_from_orders(
            self.indices
                .iter()
                .map(|&i| ambient.order_of(&ambient.element_at(i))),
        )
    }
}

/// Adds `⟨g⟩` to the subgroup whose elements are `current`.
fn extend_closure(
    ambient: &FiniteAbelianGroup,
    current: &mut Vec<GroupElement>,
    members: &mut HashSet<u64>,
    g: &GroupElement,
) {
    let mut step = g.clone();
    let base = current.clone();
    loop {
        if members.contains(&ambient.index_of(&step)) {
            break;
        }
        for h in &base {
            let x = ambient.add(h, &step);
            if members.insert(ambient.index_of(&x)) {
                current.push(x);
            }
        }
        step = ambient.add(&step, g);
    }
}

/// Isomorphism type of a finite abelian group from the multiset of its
/// element orders.
///
/// For each prime `p`, `|G[p^k]| = p^{r_k}` and the number of cyclic
/// factors of exponent `≥ k` is `r_k − r_{k−1}`.
pub fn structure_from_orders<I: IntoIterator<Item = u64>>(orders: I) -> FiniteAbelianGroup {
    // prime -> valuation -> count
    let mut hist: BTreeMap<u64, BTreeMap<u32, u64>> = BTreeMap::new();
    let mut primes_seen: BTreeSet<u64> = BTreeSet::new();
    let orders: Vec<u64> = orders.into_iter().collect();
    for &n in &orders {
        for (p, _) in factorize(n) {
            primes_seen.insert(p);
        }
    }
    for &p in &primes_seen {
        let h = hist.entry(p).or_default();
        for &n in &orders {
            *h.entry(valuation(n, p)).or_default() += 1;
        }
    }
    let mut pairs = Vec::new();
    for (p, h) in hist {
        let max_v = *h.keys().max().unwrap_or(&0);
        // elements of order prime to p: |G_{p'}|
        let coprime = h.get(&0).copied().unwrap_or(1).max(1);
        let mut cumulative = 0u64;
        let mut prev_rank = 0u32;
        let mut at_least = Vec::new();
        for k in 0..=max_v {
            cumulative += h.get(&k).copied().unwrap_or(0);
            let r = log_exact(cumulative / coprime, p);
            if k > 0 {
                at_least.push(r - prev_rank);
            }
            prev_rank = r;
        }
        // at_least[k-1] = number of factors with exponent ≥ k
        for k in 1..=max_v as usize {
            let here = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            for _ in 0..here {
                pairs.push((p, k as u32));
            }
        }
    }
    FiniteAbelianGroup::from_prime_powers(pairs).expect("primes from factorisation")
}

/// `log_p(n)` rounded down; exact for the `p`-power sizes that arise here.
fn log_exact(mut n: u64, p: u64) -> u32 {
    let mut r = 0;
    while n >= p && n.is_multiple_of(p) {
        n /= p;
        r += 1;
    }
    r
}

/// Every subgroup `S ≤ G` with `S ≅ A`, optionally restricted to `S ⊆ nG`.
///
/// Subgroups are built from bases `g₁, …, g_r` whose orders match the cyclic
/// factors of `A` (largest first), extending one direct summand at a time.
/// Partial subgroups are memoised per depth so each is expanded once. The
/// result is duplicate-free and sorted by element indices.
pub fn subgroups_isomorphic_to(
    g: &FiniteAbelianGroup,
    a: &FiniteAbelianGroup,
    within_multiple: Option<u64>,
) -> Result<Vec<Subgroup>> {
    g.enumerable_order()?;
    if !a.embeds_in(g) {
        return Ok(Vec::new());
    }
    let mut wanted = a.factor_orders();
    wanted.sort_unstable_by(|x, y| y.cmp(x));

    let mut by_order: BTreeMap<u64, Vec<GroupElement>> = BTreeMap::new();
    for x in g.elements()? {
        if within_multiple.is_some_and(|n| !g.in_multiple(&x, n)) {
            continue;
        }
        by_order.entry(g.order_of(&x)).or_default().push(x);
    }

    let zero = g.zero();
    let mut frontier: Vec<(Vec<GroupElement>, Vec<GroupElement>, HashSet<u64>)> = vec![(
        Vec::new(),
        vec![zero.clone()],
        HashSet::from([g.index_of(&zero)]),
    )];
    for &order in &wanted {
        let candidates = by_order.get(&order).map(Vec::as_slice).unwrap_or(&[]);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        for (gens, elems, members) in &frontier {
            for c in candidates {
                if members.contains(&g.index_of(c)) {
                    continue;
                }
                let mut e2 = elems.clone();
                let mut m2 = members.clone();
                extend_closure(g, &mut e2, &mut m2, c);
                if e2.len() as u64 != elems.len() as u64 * order {
                    continue;
                }
                let mut key: Vec<u64> = m2.iter().copied().collect();
                key.sort_unstable();
                if !seen.insert(key) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(c.clone());
                next.push((g2, e2, m2));
            }
        }
        frontier = next;
    }

    let mut out: Vec<Subgroup> = frontier
        .into_iter()
        .map(|(generators, _, members)| {
            let mut indices: Vec<u64> = members.into_iter().collect();
            indices.sort_unstable();
            Subgroup {
                generators,
                indices,
            }
        })
        .collect();
    out.sort_by(|x, y| x.indices.cmp(&y.indices));
    Ok(out)
}

fn relation_matrix(g: &FiniteAbelianGroup, generators: &[GroupElement]) -> IntegerMatrix {
    let orders = g.factor_orders();
    let k = orders.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k + generators.len());
    for (i, &n) in orders.iter().enumerate() {
        let mut r = vec![BigInt::from(0); k];
        r[i] = BigInt::from(n);
        rows.push(r);
    }
    for s in generators {
        rows.push(s.coords.iter().map(|&c| BigInt::from(c)).collect());
    }
    IntegerMatrix::from_rows(k, &rows)
}

/// `G / ⟨generators⟩` via the Smith form of the relation matrix.
pub fn quotient(g: &FiniteAbelianGroup, generators: &[GroupElement]) -> Result<FiniteAbelianGroup> {
    for s in generators {
        if !g.contains(s) {
            return Err(Error::NotAnElement(format!("{s} in {g}")));
        }
    }
    from_relations(g.num_factors(), &relation_matrix(g, generators))
}

/// The quotient together with the images of `G`'s standard generators.
pub fn quotient_presentation(
    g: &FiniteAbelianGroup,
    generators: &[GroupElement],
) -> Result<Presentation> {
    present(g.num_factors(), &relation_matrix(g, generators))
}

/// `G / S` by counting: `|(G/S)[p^k]| · |S| = #{x : p^k x ∈ S}`.
///
/// Independent of the Smith form; used in the hot loop of extension
/// enumeration.
pub fn quotient_by_counting(g: &FiniteAbelianGroup, s: &Subgroup) -> Result<FiniteAbelianGroup> {
    let size = s.order();
    let mut orders = Vec::new();
    for x in g.elements()? {
        // smallest d | exp(G) with d·x ∈ S; element orders in G/S divide ord(x)
        let ord = g.order_of(&x);
        let mut best = ord;
        for (p, e) in factorize(ord) {
            let mut cur = best;
            for _ in 0..e {
                let trial = cur / p;
                if s.contains(g, &g.scale(&x, trial)) {
                    cur = trial;
                } else {
                    break;
                }
            }
            best = cur;
        }
        orders.push(best);
    }
    // each coset contributes |S| identical orders
    let mut per_coset = Vec::with_capacity(orders.len() / size.max(1) as usize);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for o in orders {
        *counts.entry(o).or_default() += 1;
    }
    for (o, c) in counts {
        for _ in 0..c / size {
            per_coset.push(o);
        }
    }
    Ok(structure_from_orders(per_coset))
}
