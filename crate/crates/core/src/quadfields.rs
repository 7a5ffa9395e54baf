//! Imaginary quadratic fields through positive definite binary quadratic
//! forms: fundamental discriminants, reduced forms, composition and the
//! structure of the class group.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::finabelian::{structure_from_orders, FiniteAbelianGroup};

/// A negative fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant(BigInt);

impl Discriminant {
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if is_fundamental(&d) {
            Ok(Self(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    let n = n.abs();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            rest /= &p;
            if rest.is_multiple_of(&p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Whether `d < 0` is the discriminant of an imaginary quadratic field:
/// `d ≡ 1 (mod 4)` squarefree, or `d = 4m` with `m ≡ 2, 3 (mod 4)` squarefree.
pub fn is_fundamental(d: &BigInt) -> bool {
    if !d.is_negative() {
        return false;
    }
    let four = BigInt::from(4);
    match d.mod_floor(&four) {
        r if r.is_one() => is_squarefree(d),
        r if r.is_zero() => {
            let m = d / &four;
            let mm = m.mod_floor(&four);
            (mm == BigInt::from(2) || mm == BigInt::from(3)) && is_squarefree(&m)
        }
        _ => false,
    }
}

/// The form `a x² + b x y + c y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The principal form `(1, b, (b² − D)/4)` with `b ∈ {0, 1}`.
    pub fn principal(d: &Discriminant) -> Self {
        let b = d.0.mod_floor(&BigInt::from(2));
        let c = (&b * &b - &d.0) / 4;
        Self::new(1, b, c)
    }

    /// `|b| ≤ a ≤ c`, and `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        if !self.a.is_positive() || abs_b > self.a || self.a > self.c {
            return false;
        }
        if (abs_b == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// The class inverse `(a, −b, c)`, reduced.
    pub fn inverse(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.c.clone()).reduce()
    }

    /// Reduced representative of the same proper equivalence class.
    ///
    /// Only meaningful for positive definite forms (`a > 0`, `D < 0`).
    pub fn reduce(&self) -> Self {
        let d = self.discriminant();
        let (mut a, mut b) = (self.a.clone(), self.b.clone());
        let mut c = self.c.clone();
        loop {
            if !(b > -&a && b <= a) {
                let two_a = &a * 2;
                let r = (&a - &b).div_floor(&two_a);
                b += &two_a * r;
                c = (&b * &b - &d) / (&a * 4);
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b.is_negative() {
                b = -b;
            }
            break;
        }
        Self { a, b, c }
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant `d`, sorted by `a` then by `b`
/// descending. Their number is the class number.
pub fn reduced_forms(d: &Discriminant) -> Vec<BinaryQuadraticForm> {
    let dv = &d.0;
    let bound: BigInt = (-dv / BigInt::from(3)).sqrt();
    let two = BigInt::from(2);
    let mut out = Vec::new();
    let mut b = -bound.clone();
    while b <= bound {
        if (&b - dv).is_multiple_of(&two) {
            let ac = (&b * &b - dv) / 4;
            let mut a = b.abs().max(BigInt::one());
            while &a * &a <= ac {
                if ac.is_multiple_of(&a) {
                    let c = &ac / &a;
                    let f = BinaryQuadraticForm::new(a.clone(), b.clone(), c);
                    if f.is_reduced() && f.a.gcd(&f.b).gcd(&f.c).is_one() {
                        out.push(f);
                    }
                }
                a += 1;
            }
        }
        b += 1;
    }
    out.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
    out
}

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Reduced representative of the composition of two classes.
///
/// With `s = (b₁ + b₂)/2` and `d = gcd(a₁, a₂, s) = u a₁ + v a₂ + w s`, the
/// united form is `a₃ = a₁a₂/d²`, `b₃ = b₂ + (2a₂/d)(v(s − b₂) − w c₂)`,
/// `c₃ = (b₃² − D)/(4a₃)`.
pub fn compose(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let disc = f.discriminant();
    let other = g.discriminant();
    if disc != other {
        return Err(Error::DiscriminantMismatch {
            left: disc,
            right: other,
        });
    }
    let s = (&f.b + &g.b) / 2;
    let (g1, _, y) = ext_gcd(&f.a, &g.a);
    let (d, p, w) = ext_gcd(&g1, &s);
    let v = &p * &y;
    let a3 = &f.a * &g.a / (&d * &d);
    let b3 = &g.b + (&g.a * 2 / &d) * (&v * (&s - &g.b) - &w * &g.c);
    let c3 = (&b3 * &b3 - &disc) / (&a3 * 4);
    Ok(BinaryQuadraticForm {
        a: a3,
        b: b3,
        c: c3,
    }
    .reduce())
}

/// The class group of an imaginary quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub discriminant: Discriminant,
    pub representatives: Vec<BinaryQuadraticForm>,
    pub structure: FiniteAbelianGroup,
}

impl ClassGroup {
    pub fn class_number(&self) -> usize {
        self.representatives.len()
    }

    pub fn identity(&self) -> BinaryQuadraticForm {
        BinaryQuadraticForm::principal(&self.discriminant)
    }

    /// Full composition table indexed by position in `representatives`.
    pub fn composition_table(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&BinaryQuadraticForm, usize> = self
            .representatives
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        self.representatives
            .iter()
            .map(|f| {
                self.representatives
                    .iter()
                    .map(|g| {
                        let h = compose(f, g).expect("same discriminant");
                        index[&h]
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = self
            .representatives
            .iter()
            .map(ToString::to_string)
            .collect();
        write!(
            f,
            "D = {}  h = {}  structure {}  forms {}",
            self.discriminant,
            self.class_number(),
            self.structure,
            forms.join(" ")
        )
    }
}

/// Order of a reduced form under repeated composition.
fn class_order(f: &BinaryQuadraticForm, identity: &BinaryQuadraticForm) -> u64 {
    let mut acc = f.clone();
    let mut n = 1;
    while &acc != identity {
        acc = compose(&acc, f).expect("same discriminant");
        n += 1;
    }
    n
}

/// Reduced forms of `d` with the group structure they carry.
pub fn class_group(d: &Discriminant) -> ClassGroup {
    let representatives = reduced_forms(d);
    let identity = BinaryQuadraticForm::principal(d);
    let structure =
        structure_from_orders(representatives.iter().map(|f| class_order(f, &identity)));
    ClassGroup {
        discriminant: d.clone(),
        representatives,
        structure,
    }
}
