//! Descriptors of profinite and discrete torsion abelian groups.
//!
//! A [`ProfiniteDescriptor`] records a direct product of copies of `Ẑ`,
//! `Z_l` and `Z/l^k`; a [`DiscreteTorsionDescriptor`] records a direct sum of
//! copies of `Q/Z`, `Z(l^∞)` and `Z/l^k`. Both store the same data, a
//! multiplicity for every factor, so Pontryagin duality is a relabelling:
//!
//! | profinite | discrete  |
//! |-----------|-----------|
//! | `Ẑ`       | `Q/Z`     |
//! | `Z_l`     | `Z(l^∞)`  |
//! | `Z/l^k`   | `Z/l^k`   |
//!
//! The group `T = ∏_{n≥1} Z/nZ` has multiplicity `ℵ₀` at every prime and
//! every exponent (each `k` is the `l`-adic valuation of infinitely many
//! `n`), which is stored as a single flag rather than infinitely many
//! records.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finabelian::primes::is_prime;
use crate::finabelian::FiniteAbelianGroup;

/// A multiplicity: a finite count or `ℵ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u64),
    Aleph0,
}

impl Default for Cardinal {
    fn default() -> Self {
        Cardinal::ZERO
    }
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);

    pub fn is_zero(&self) -> bool {
        *self == Cardinal::ZERO
    }

    /// `min(self, cap)` as a number.
    pub fn capped(&self, cap: u64) -> u64 {
        match self {
            Cardinal::Finite(n) => (*n).min(cap),
            Cardinal::Aleph0 => cap,
        }
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                a.checked_add(b).map_or(Cardinal::Aleph0, Cardinal::Finite)
            }
            _ => Cardinal::Aleph0,
        }
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::Finite(n)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => write!(f, "aleph0"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => s.serialize_u64(*n),
            Cardinal::Aleph0 => s.serialize_str("aleph0"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Cardinal::Finite(n)),
            Raw::Str(s) if s == "aleph0" => Ok(Cardinal::Aleph0),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected an integer or \"aleph0\", got {s:?}"
            ))),
        }
    }
}

/// The data of one prime: free rank (`Z_l` or `Z(l^∞)`) and cyclic
/// multiplicities by exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LocalRecord {
    pub free_rank: Cardinal,
    pub cyclic: BTreeMap<u32, Cardinal>,
    /// Multiplicity `ℵ₀` at every exponent `k ≥ 1`.
    pub all_exponents_aleph0: bool,
}

impl LocalRecord {
    pub fn multiplicity(&self, k: u32) -> Cardinal {
        if self.all_exponents_aleph0 {
            Cardinal::Aleph0
        } else {
            self.cyclic.get(&k).copied().unwrap_or(Cardinal::ZERO)
        }
    }

    fn is_empty(&self) -> bool {
        self.free_rank.is_zero() && !self.all_exponents_aleph0 && self.cyclic.is_empty()
    }

    fn merge(&mut self, other: &LocalRecord) {
        self.free_rank = self.free_rank + other.free_rank;
        self.all_exponents_aleph0 |= other.all_exponents_aleph0;
        for (&k, &m) in &other.cyclic {
            let slot = self.cyclic.entry(k).or_insert(Cardinal::ZERO);
            *slot = *slot + m;
        }
    }
}

/// Shared state of both descriptor kinds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
struct Body {
    free_rank: Cardinal,
    all_primes_t: bool,
    locals: BTreeMap<u64, LocalRecord>,
}

impl Body {
    fn canonical(mut self) -> Self {
        let t = self.all_primes_t;
        for rec in self.locals.values_mut() {
            if t {
                rec.all_exponents_aleph0 = false;
            }
            if t || rec.all_exponents_aleph0 {
                rec.cyclic.clear();
            }
            rec.cyclic.retain(|_, m| !m.is_zero());
        }
        self.locals.retain(|_, rec| !rec.is_empty());
        self
    }

    fn local(&self, l: u64) -> LocalRecord {
        let mut rec = self.locals.get(&l).cloned().unwrap_or_default();
        if self.all_primes_t {
            rec.all_exponents_aleph0 = true;
            rec.cyclic.clear();
        }
        rec
    }

    fn combine(&self, other: &Body) -> Body {
        let mut out = self.clone();
        out.free_rank = out.free_rank + other.free_rank;
        out.all_primes_t |= other.all_primes_t;
        for (&l, rec) in &other.locals {
            out.locals.entry(l).or_default().merge(rec);
        }
        out.canonical()
    }

    fn primary_part(&self, l: u64) -> Body {
        let mut rec = self.local(l);
        rec.free_rank = rec.free_rank + self.free_rank;
        Body {
            free_rank: Cardinal::ZERO,
            all_primes_t: false,
            locals: BTreeMap::from([(l, rec)]),
        }
        .canonical()
    }

    fn truncate(&self, l: u64, max_exp: u32, mult_cap: u64, free_level: u32) -> FiniteAbelianGroup {
        let rec = self.local(l);
        let mut factors = Vec::new();
        for k in 1..=max_exp {
            for _ in 0..rec.multiplicity(k).capped(mult_cap) {
                factors.push((l, k));
            }
        }
        for _ in 0..free_unit_count(self.free_rank + rec.free_rank, mult_cap) {
            factors.push((l, free_level));
        }
        FiniteAbelianGroup::from_prime_powers(factors)
            .expect("truncation of a prime-indexed descriptor")
    }

    fn from_finite(g: &FiniteAbelianGroup) -> Body {
        let mut locals = BTreeMap::new();
        for (&p, exps) in g.primary() {
            let mut rec = LocalRecord::default();
            for &e in exps {
                let slot = rec.cyclic.entry(e).or_insert(Cardinal::ZERO);
                *slot = *slot + Cardinal::Finite(1);
            }
            locals.insert(p, rec);
        }
        Body {
            free_rank: Cardinal::ZERO,
            all_primes_t: false,
            locals,
        }
    }
}

/// Finite free ranks are kept exactly; an `ℵ₀` free rank is capped like a
/// cyclic multiplicity.
fn free_unit_count(rank: Cardinal, mult_cap: u64) -> u64 {
    match rank {
        Cardinal::Finite(n) => n,
        Cardinal::Aleph0 => mult_cap,
    }
}

/// `∏ Ẑ × ∏ Z_l × ∏ Z/l^k` with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ProfiniteDescriptor {
    body: Body,
}

/// `⊕ Q/Z ⊕ Z(l^∞) ⊕ Z/l^k` with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DiscreteTorsionDescriptor {
    body: Body,
}

macro_rules! common_descriptor_api {
    ($ty:ident) => {
        impl $ty {
            pub fn trivial() -> Self {
                Self::default()
            }

            /// The finite group viewed as a descriptor.
            pub fn from_finite(g: &FiniteAbelianGroup) -> Self {
                Self {
                    body: Body::from_finite(g),
                }
            }

            /// Adds `mult` copies of `Z/l^k`.
            pub fn with_cyclic(self, l: u64, k: u32, mult: Cardinal) -> Result<Self> {
                check_prime(l)?;
                if k == 0 {
                    return Err(Error::MalformedDescriptor(
                        "cyclic exponent must be ≥ 1".into(),
                    ));
                }
                let mut rec = LocalRecord::default();
                rec.cyclic.insert(k, mult);
                let add = Body {
                    locals: BTreeMap::from([(l, rec)]),
                    ..Body::default()
                };
                Ok(Self {
                    body: self.body.combine(&add),
                })
            }

            /// Multiplicity of `Z/l^k`.
            pub fn cyclic_multiplicity(&self, l: u64, k: u32) -> Cardinal {
                self.body.local(l).multiplicity(k)
            }

            /// The effective record of prime `l`, including the `T` pattern.
            pub fn local(&self, l: u64) -> LocalRecord {
                self.body.local(l)
            }

            pub fn has_all_primes_pattern(&self) -> bool {
                self.body.all_primes_t
            }

            /// Primes carrying explicit records.
            pub fn explicit_primes(&self) -> Vec<u64> {
                self.body.locals.keys().copied().collect()
            }

            /// The `l`-primary part; a global free unit becomes a local one.
            pub fn primary_part(&self, l: u64) -> Self {
                Self {
                    body: self.body.primary_part(l),
                }
            }

            /// Direct product (profinite) or direct sum (discrete).
            pub fn combine(&self, other: &Self) -> Self {
                Self {
                    body: self.body.combine(&other.body),
                }
            }

            pub fn is_trivial(&self) -> bool {
                *self == Self::trivial()
            }

            /// Finite model at prime `l`: each `Z/l^k` with `k ≤ max_exp`
            /// contributes `min(mult, mult_cap)` factors and each free unit
            /// one factor `Z/l^free_level`.
            pub fn truncate(
                &self,
                l: u64,
                max_exp: u32,
                mult_cap: u64,
                free_level: u32,
            ) -> FiniteAbelianGroup {
                self.body.truncate(l, max_exp, mult_cap, free_level)
            }
        }
    };
}

common_descriptor_api!(ProfiniteDescriptor);
common_descriptor_api!(DiscreteTorsionDescriptor);

fn check_prime(l: u64) -> Result<()> {
    if is_prime(l) {
        Ok(())
    } else {
        Err(Error::MalformedDescriptor(format!("{l} is not prime")))
    }
}

impl ProfiniteDescriptor {
    /// `Ẑ^rank`.
    pub fn zhat(rank: Cardinal) -> Self {
        Self {
            body: Body {
                free_rank: rank,
                ..Body::default()
            }
            .canonical(),
        }
    }

    /// `Z_l^rank`.
    pub fn zl(l: u64, rank: Cardinal) -> Result<Self> {
        check_prime(l)?;
        let rec = LocalRecord {
            free_rank: rank,
            ..LocalRecord::default()
        };
        Ok(Self {
            body: Body {
                locals: BTreeMap::from([(l, rec)]),
                ..Body::default()
            }
            .canonical(),
        })
    }

    pub fn zhat_rank(&self) -> Cardinal {
        self.body.free_rank
    }

    pub fn zl_rank(&self, l: u64) -> Cardinal {
        self.body.local(l).free_rank
    }

    pub fn dual(&self) -> DiscreteTorsionDescriptor {
        DiscreteTorsionDescriptor {
            body: self.body.clone(),
        }
    }
}

impl DiscreteTorsionDescriptor {
    /// `(Q/Z)^rank`.
    pub fn qz(rank: Cardinal) -> Self {
        ProfiniteDescriptor::zhat(rank).dual()
    }

    /// `Z(l^∞)^rank`.
    pub fn prufer(l: u64, rank: Cardinal) -> Result<Self> {
        Ok(ProfiniteDescriptor::zl(l, rank)?.dual())
    }

    pub fn qz_rank(&self) -> Cardinal {
        self.body.free_rank
    }

    pub fn prufer_rank(&self, l: u64) -> Cardinal {
        self.body.local(l).free_rank
    }

    pub fn dual(&self) -> ProfiniteDescriptor {
        ProfiniteDescriptor {
            body: self.body.clone(),
        }
    }
}

/// Pontryagin dual of a profinite descriptor.
pub fn dual_profinite(d: &ProfiniteDescriptor) -> DiscreteTorsionDescriptor {
    d.dual()
}

/// Pontryagin dual of a discrete torsion descriptor.
pub fn dual_discrete(d: &DiscreteTorsionDescriptor) -> ProfiniteDescriptor {
    d.dual()
}

/// `T = ∏_{n≥1} Z/nZ`.
pub fn t_descriptor() -> ProfiniteDescriptor {
    ProfiniteDescriptor {
        body: Body {
            all_primes_t: true,
            ..Body::default()
        },
    }
}

/// `T_l`, the `l`-primary part of `T`.
pub fn t_l(l: u64) -> Result<ProfiniteDescriptor> {
    check_prime(l)?;
    Ok(t_descriptor().primary_part(l))
}

/// Either kind of descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyDescriptor {
    Profinite(ProfiniteDescriptor),
    Discrete(DiscreteTorsionDescriptor),
}

impl From<ProfiniteDescriptor> for AnyDescriptor {
    fn from(d: ProfiniteDescriptor) -> Self {
        AnyDescriptor::Profinite(d)
    }
}

impl From<DiscreteTorsionDescriptor> for AnyDescriptor {
    fn from(d: DiscreteTorsionDescriptor) -> Self {
        AnyDescriptor::Discrete(d)
    }
}

impl AnyDescriptor {
    fn body(&self) -> &Body {
        match self {
            AnyDescriptor::Profinite(d) => &d.body,
            AnyDescriptor::Discrete(d) => &d.body,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyDescriptor::Profinite(_) => "profinite",
            AnyDescriptor::Discrete(_) => "discrete",
        }
    }

    pub fn dual(&self) -> AnyDescriptor {
        match self {
            AnyDescriptor::Profinite(d) => AnyDescriptor::Discrete(d.dual()),
            AnyDescriptor::Discrete(d) => AnyDescriptor::Profinite(d.dual()),
        }
    }

    pub fn truncate(
        &self,
        l: u64,
        max_exp: u32,
        mult_cap: u64,
        free_level: u32,
    ) -> FiniteAbelianGroup {
        self.body().truncate(l, max_exp, mult_cap, free_level)
    }

    /// Serialises to the descriptor document (pretty JSON, stable field order).
    pub fn to_document(&self) -> String {
        let body = self.body();
        let doc = DescriptorDoc {
            kind: self.kind().to_string(),
            free_rank: body.free_rank,
            all_primes_t: body.all_primes_t,
            locals: body
                .locals
                .iter()
                .map(|(&prime, rec)| LocalDoc {
                    prime,
                    local_free_rank: rec.free_rank,
                    all_exponents_aleph0: rec.all_exponents_aleph0,
                    cyclic: rec
                        .cyclic
                        .iter()
                        .map(|(&exp, &mult)| CyclicDoc { exp, mult })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("descriptor documents always serialise")
    }

    /// Parses a descriptor document; the result is canonical.
    pub fn from_document(text: &str) -> Result<AnyDescriptor> {
        let doc: DescriptorDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedDescriptor(e.to_string()))?;
        let mut locals = BTreeMap::new();
        for local in doc.locals {
            check_prime(local.prime)?;
            let mut cyclic = BTreeMap::new();
            for c in local.cyclic {
                if c.exp == 0 {
                    return Err(Error::MalformedDescriptor(format!(
                        "prime {}: cyclic exponent must be ≥ 1",
                        local.prime
                    )));
                }
                if cyclic.insert(c.exp, c.mult).is_some() {
                    return Err(Error::MalformedDescriptor(format!(
                        "prime {}: exponent {} listed twice",
                        local.prime, c.exp
                    )));
                }
            }
            let rec = LocalRecord {
                free_rank: local.local_free_rank,
                cyclic,
                all_exponents_aleph0: local.all_exponents_aleph0,
            };
            if locals.insert(local.prime, rec).is_some() {
                return Err(Error::MalformedDescriptor(format!(
                    "prime {} listed twice",
                    local.prime
                )));
            }
        }
        let body = Body {
            free_rank: doc.free_rank,
            all_primes_t: doc.all_primes_t,
            locals,
        }
        .canonical();
        match doc.kind.as_str() {
            "profinite" => Ok(AnyDescriptor::Profinite(ProfiniteDescriptor { body })),
            "discrete" => Ok(AnyDescriptor::Discrete(DiscreteTorsionDescriptor { body })),
            other => Err(Error::MalformedDescriptor(format!(
                "kind must be \"profinite\" or \"discrete\", got {other:?}"
            ))),
        }
    }
}

/// Structural equality of canonical forms; kinds must agree.
pub fn descriptors_equal(a: &AnyDescriptor, b: &AnyDescriptor) -> Result<bool> {
    match (a, b) {
        (AnyDescriptor::Profinite(x), AnyDescriptor::Profinite(y)) => Ok(x == y),
        (AnyDescriptor::Discrete(x), AnyDescriptor::Discrete(y)) => Ok(x == y),
        _ => Err(Error::KindMismatch),
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorDoc {
    kind: String,
    free_rank: Cardinal,
    #[serde(rename = "all_primes_T", default)]
    all_primes_t: bool,
    #[serde(default)]
    locals: Vec<LocalDoc>,
}

#[derive(Serialize, Deserialize)]
struct LocalDoc {
    prime: u64,
    local_free_rank: Cardinal,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    all_exponents_aleph0: bool,
    #[serde(default)]
    cyclic: Vec<CyclicDoc>,
}

#[derive(Serialize, Deserialize)]
struct CyclicDoc {
    exp: u32,
    mult: Cardinal,
}

fn power(base: &str, m: Cardinal) -> String {
    match m {
        Cardinal::Finite(1) => base.to_string(),
        Cardinal::Finite(n) => format!("{base}^{n}"),
        Cardinal::Aleph0 => format!("{base}^aleph0"),
    }
}

fn render(body: &Body, profinite: bool) -> String {
    let (global, local_free, all_t, join) = if profinite {
        ("Zhat", "Z_", "T", " x ")
    } else {
        ("Q/Z", "Z(", "(+)Z/n", " + ")
    };
    let mut terms = Vec::new();
    if !body.free_rank.is_zero() {
        terms.push(power(global, body.free_rank));
    }
    if body.all_primes_t {
        terms.push(all_t.to_string());
    }
    for (&l, rec) in &body.locals {
        if !rec.free_rank.is_zero() {
            let base = if profinite {
                format!("{local_free}{l}")
            } else {
                format!("{local_free}{l}^inf)")
            };
            terms.push(power(&base, rec.free_rank));
        }
        if rec.all_exponents_aleph0 {
            terms.push(if profinite {
                format!("T_{l}")
            } else {
                format!("(+)Z/{l}^k")
            });
        }
        for (&k, &m) in &rec.cyclic {
            let base = if k == 1 {
                format!("Z/{l}")
            } else {
                format!("(Z/{l}^{k})")
            };
            terms.push(power(&base, m));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(join)
    }
}

impl fmt::Display for ProfiniteDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.body, true))
    }
}

impl fmt::Display for AnyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyDescriptor::Profinite(d) => d.fmt(f),
            AnyDescriptor::Discrete(d) => d.fmt(f),
        }
    }
}

impl fmt::Display for DiscreteTorsionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.body, false))
    }
}
