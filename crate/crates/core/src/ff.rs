//! Arithmetic in `F_p` and `F_p²`, quadratic residues and the
//! hyperbolic / parabolic / elliptic split of traces.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_MODULUS: u64 = 50_000;

/// A residue modulo an odd prime, always stored in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    /// Reduces `value` into `[0, modulus)`; negative inputs are allowed.
    pub fn new(value: i64, modulus: u32) -> Fp {
        Fp {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Balanced representative in `(-p/2, p/2]`, used for display.
    pub fn signed(self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    pub fn pow(self, mut exp: u64) -> Fp {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }

    /// Euler's criterion.
    pub fn legendre(self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let e = self.pow((self.modulus as u64 - 1) / 2);
        if e.value == 1 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for Fp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value as u64 * rhs.value as u64 % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

/// An element `re + im·ε` of `F_p²`, where `ε² = ν` for the field's
/// fixed non-residue `ν`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2 {
    re: Fp,
    im: Fp,
    nu: Fp,
}

impl Fp2 {
    pub fn new(re: Fp, im: Fp, nu: Fp) -> Fp2 {
        Fp2 { re, im, nu }
    }

    pub fn re(self) -> Fp {
        self.re
    }

    pub fn im(self) -> Fp {
        self.im
    }

    /// The element lies in the prime subfield.
    pub fn is_base(self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `w ↦ w^p`, which negates the `ε` coordinate.
    pub fn frobenius(self) -> Fp2 {
        Fp2 {
            im: -self.im,
            ..self
        }
    }

    /// `w^(p+1) = re² − ν·im²`.
    pub fn norm(self) -> Fp {
        self.re * self.re - self.nu * self.im * self.im
    }

    pub fn pow(self, mut exp: u64) -> Fp2 {
        let mut base = self;
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Fp2> {
        let n = self.norm().inv()?;
        let c = self.frobenius();
        Some(Fp2 {
            re: c.re * n,
            im: c.im * n,
            nu: self.nu,
        })
    }

    fn lift(self, t: Fp) -> Fp2 {
        Fp2 {
            re: t,
            im: Fp::new(0, t.modulus),
            nu: self.nu,
        }
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re.signed())
        } else {
            write!(f, "{}{:+}e", self.re.signed(), self.im.signed())
        }
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
            nu: self.nu,
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
            nu: self.nu,
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.nu, rhs.nu);
        Fp2 {
            re: self.re * rhs.re + self.nu * self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
            nu: self.nu,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        Fp2 {
            re: -self.re,
            im: -self.im,
            nu: self.nu,
        }
    }
}

/// Coefficient ring for [`crate::sl2::Mat2`]: either `F_p` or `F_p²`.
pub trait Scalar:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(self) -> Self;
    fn one_like(self) -> Self;
    fn inverse(self) -> Option<Self>;
    fn is_zero(self) -> bool;
    /// Two scalars may be combined only when their field ids agree.
    fn field_id(self) -> (u32, u32);
}

impl Scalar for Fp {
    fn zero_like(self) -> Fp {
        Fp::new(0, self.modulus)
    }
    fn one_like(self) -> Fp {
        Fp::new(1, self.modulus)
    }
    fn inverse(self) -> Option<Fp> {
        self.inv()
    }
    fn is_zero(self) -> bool {
        self.value == 0
    }
    fn field_id(self) -> (u32, u32) {
        (self.modulus, 0)
    }
}

impl Scalar for Fp2 {
    fn zero_like(self) -> Fp2 {
        self.lift(self.re.zero_like())
    }
    fn one_like(self) -> Fp2 {
        self.lift(self.re.one_like())
    }
    fn inverse(self) -> Option<Fp2> {
        self.inv()
    }
    fn is_zero(self) -> bool {
        Fp2::is_zero(self)
    }
    fn field_id(self) -> (u32, u32) {
        (self.re.modulus, self.nu.value)
    }
}

/// Hyperbolic / parabolic / elliptic type of a trace `t`, read off from
/// the Legendre symbol of `t² − 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TraceClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// A root `u` of `u² − t·u + 1 = 0`, so that `t = u + u⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceRoot {
    /// `u ∈ F_p \ {±1}`.
    Hyperbolic(Fp),
    /// `u ∈ F_p² \ F_p` with `u^(p+1) = 1`.
    Elliptic(Fp2),
}

impl TraceRoot {
    pub fn class(&self) -> TraceClass {
        match self {
            TraceRoot::Hyperbolic(_) => TraceClass::Hyperbolic,
            TraceRoot::Elliptic(_) => TraceClass::Elliptic,
        }
    }
}

/// The prime field `F_p` for an odd prime `p > 5`, together with the
/// non-residue used to build `F_p²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    nonresidue: Fp,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p <= 5 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        if p > MAX_MODULUS {
            return Err(Error::TooLarge {
                p,
                max: MAX_MODULUS,
            });
        }
        let p = p as u32;
        // smallest non-residue; 2 already fails for p ≡ ±3 (mod 8)
        let nonresidue = (2..)
            .map(|v| Fp::new(v, p))
            .find(|t| t.legendre() == -1)
            .expect("an odd prime has a quadratic non-residue");
        Ok(PrimeField { p, nonresidue })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp::new(v, self.p)
    }

    pub fn zero(&self) -> Fp {
        self.elem(0)
    }

    pub fn one(&self) -> Fp {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p as i64).map(move |v| self.elem(v))
    }

    pub fn nonresidue(&self) -> Fp {
        self.nonresidue
    }

    pub fn legendre(&self, t: Fp) -> i8 {
        t.legendre()
    }

    /// The smaller of the two square roots of `t`, or `None` for a
    /// non-residue.
    pub fn sqrt(&self, t: Fp) -> Option<Fp> {
        match t.legendre() {
            0 => return Some(self.zero()),
            -1 => return None,
            _ => {}
        }
        let p = self.p as u64;
        let root = if p % 4 == 3 {
            t.pow((p + 1) / 4)
        } else {
            self.tonelli_shanks(t)
        };
        Some(if root.value <= (-root).value {
            root
        } else {
            -root
        })
    }

    fn tonelli_shanks(&self, n: Fp) -> Fp {
        let p = self.p as u64;
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut m = s;
        let mut c = self.nonresidue.pow(q);
        let mut t = n.pow(q);
        let mut r = n.pow(q.div_ceil(2));
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut t2 = t;
            while t2 != one {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        r
    }

    pub fn classify_trace(&self, t: Fp) -> TraceClass {
        match (t * t - self.elem(4)).legendre() {
            1 => TraceClass::Hyperbolic,
            0 => TraceClass::Parabolic,
            _ => TraceClass::Elliptic,
        }
    }

    /// Writes a non-parabolic `t` as `u + u⁻¹`, with `u = (t + √(t²−4))/2`
    /// built from the canonical square root.
    pub fn trace_split(&self, t: Fp) -> Result<TraceRoot> {
        let disc = t * t - self.elem(4);
        let half = self.half();
        match disc.legendre() {
            0 => Err(Error::ParabolicInput(t.value())),
            1 => {
                let a = self.sqrt(disc).expect("residue has a root");
                Ok(TraceRoot::Hyperbolic((t + a) * half))
            }
            _ => {
                // disc = ν·w², so √disc = w·ε
                let nu_inv = self.nonresidue.inv().expect("non-zero");
                let w = self.sqrt(disc * nu_inv).expect("disc/ν is a residue");
                Ok(TraceRoot::Elliptic(self.ext(t * half, w * half)))
            }
        }
    }

    pub fn half(&self) -> Fp {
        self.elem(2).inv().expect("p is odd")
    }

    pub fn ext(&self, re: Fp, im: Fp) -> Fp2 {
        Fp2::new(re, im, self.nonresidue)
    }

    pub fn embed(&self, t: Fp) -> Fp2 {
        self.ext(t, self.zero())
    }

    /// `ε`, the fixed element of `F_p² \ F_p` with `ε² = ν`.
    pub fn ext_generator(&self) -> Fp2 {
        self.ext(self.zero(), self.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn legendre_examples() {
        let k = f(7);
        assert_eq!(k.legendre(k.elem(2)), 1);
        assert_eq!(k.legendre(k.elem(0)), 0);
        assert_eq!(k.legendre(k.elem(5)), -1);
    }

    #[test]
    fn legendre_matches_enumerated_squares() {
        for p in [7u64, 11, 13, 17, 97] {
            let k = f(p);
            let squares: Vec<Fp> = k.elements().map(|x| x * x).collect();
            for t in k.elements() {
                let expected = if t.is_zero() {
                    0
                } else if squares.contains(&t) {
                    1
                } else {
                    -1
                };
                assert_eq!(k.legendre(t), expected, "p={p} t={t}");
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(f(7).sqrt(f(7).elem(2)), Some(f(7).elem(3)));
        assert_eq!(f(11).sqrt(f(11).elem(0)), Some(f(11).zero()));
        assert_eq!(f(7).sqrt(f(7).elem(5)), None);
    }

    #[test]
    fn sqrt_exhaustive_including_tonelli_shanks_primes() {
        // 13, 17, 41, 97 are ≡ 1 (mod 4)
        for p in [7u64, 11, 13, 17, 41, 97, 113] {
            let k = f(p);
            for t in k.elements() {
                let roots: Vec<Fp> = k.elements().filter(|r| *r * *r == t).collect();
                assert_eq!(k.sqrt(t), roots.first().copied(), "p={p} t={t}");
            }
        }
    }

    #[test]
    fn classify_trace_examples() {
        assert_eq!(f(11).classify_trace(f(11).elem(2)), TraceClass::Parabolic);
        assert_eq!(f(11).classify_trace(f(11).elem(3)), TraceClass::Hyperbolic);
        assert_eq!(f(7).classify_trace(f(7).elem(3)), TraceClass::Elliptic);
    }

    #[test]
    fn trace_class_partition_counts() {
        for p in [7u64, 11, 13, 17, 19, 23, 101] {
            let k = f(p);
            let mut counts = [0usize; 3];
            for t in k.elements() {
                match k.classify_trace(t) {
                    TraceClass::Hyperbolic => counts[0] += 1,
                    TraceClass::Parabolic => counts[1] += 1,
                    TraceClass::Elliptic => counts[2] += 1,
                }
            }
            let p = p as usize;
            assert_eq!(counts, [(p - 3) / 2, 2, (p - 1) / 2]);
        }
    }

    #[test]
    fn trace_split_examples() {
        let k = f(11);
        assert_eq!(
            k.trace_split(k.elem(3)).unwrap(),
            TraceRoot::Hyperbolic(k.elem(9))
        );
        assert_eq!(k.elem(9) + k.elem(9).inv().unwrap(), k.elem(3));

        let k = f(7);
        let TraceRoot::Elliptic(u) = k.trace_split(k.zero()).unwrap() else {
            panic!("0 is elliptic mod 7");
        };
        assert!(!u.is_base());
        assert_eq!(u * u, k.embed(k.elem(-1)));
        assert_eq!(u.pow(8), k.embed(k.one()));

        assert_eq!(k.trace_split(k.elem(2)), Err(Error::ParabolicInput(2)));
        assert_eq!(k.trace_split(k.elem(-2)), Err(Error::ParabolicInput(5)));
    }

    #[test]
    fn trace_split_roots_are_exact() {
        for p in [7u64, 11, 13, 29, 37] {
            let k = f(p);
            for t in k.elements() {
                let Ok(root) = k.trace_split(t) else {
                    assert_eq!(k.classify_trace(t), TraceClass::Parabolic);
                    continue;
                };
                assert_eq!(root.class(), k.classify_trace(t));
                match root {
                    TraceRoot::Hyperbolic(u) => {
                        let ui = u.inv().unwrap();
                        assert_eq!(u * ui, k.one());
                        assert_eq!(u + ui, t);
                        assert!(u != k.one() && u != -k.one());
                    }
                    TraceRoot::Elliptic(u) => {
                        let ui = u.inv().unwrap();
                        assert_eq!(u + ui, k.embed(t));
                        assert_eq!(u.pow(p + 1), k.embed(k.one()));
                        assert!(!u.is_base());
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_small_and_composite_moduli() {
        for p in [0u64, 1, 2, 3, 4, 5, 9, 15, 49] {
            assert_eq!(PrimeField::new(p), Err(Error::InvalidModulus(p)));
        }
        assert!(matches!(
            PrimeField::new(50_021),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn nonresidue_is_smallest() {
        assert_eq!(f(7).nonresidue().value(), 3);
        assert_eq!(f(11).nonresidue().value(), 2);
        assert_eq!(f(17).nonresidue().value(), 3);
        assert_eq!(f(71).nonresidue().value(), 7);
    }

    proptest! {
        #[test]
        fn legendre_is_multiplicative(a in 1i64..1000, b in 1i64..1000, idx in 0usize..6) {
            let p = [7u64, 11, 13, 97, 101, 997][idx];
            let k = f(p);
            let (a, b) = (k.elem(a), k.elem(b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(k.legendre(a * b), k.legendre(a) * k.legendre(b));
        }

        #[test]
        fn frobenius_identities(re in 0i64..1000, im in 0i64..1000, idx in 0usize..5) {
            let p = [7u64, 11, 13, 101, 997][idx];
            let k = f(p);
            let w = k.ext(k.elem(re), k.elem(im));
            prop_assert_eq!(w.pow(p), w.frobenius());
            prop_assert_eq!(w.pow(p * p), w);
            prop_assert_eq!(w.pow(p) == w, w.is_base());
            if !w.is_zero() {
                prop_assert_eq!(w * w.inv().unwrap(), k.embed(k.one()));
            }
        }
    }
}
