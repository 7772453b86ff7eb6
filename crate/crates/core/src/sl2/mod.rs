//! 2×2 unimodular matrices over `F_p` and `F_p²`, pairs of them, the
//! trace map and the Nielsen moves.

mod group;
mod nielsen;
mod normal;
mod tower;

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::ff::{Fp, Fp2, PrimeField, Scalar};
use crate::surface::Triple;

pub use group::{
    classify_pair, psl2_closure, Closure, GroupClass, GroupClassification, CLOSURE_FULL_MAX_P,
};
pub use nielsen::{nielsen_class_count, NielsenCensus, NielsenClass, Sl2Table, TABLE_MAX_P};
pub use normal::{normal_form, NormalForm};
pub use tower::{sl2_conjugacy_class_count, sl2_elements, tower_enumerate, tower_witness};

/// `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn scalar(s: S) -> Self {
        let z = s.zero_like();
        Mat2::new(s, z, z, s)
    }

    /// The identity over the same field as `self`.
    pub fn identity_like(&self) -> Self {
        Mat2::scalar(self.a.one_like())
    }

    pub fn det(&self) -> S {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> S {
        self.a + self.d
    }

    /// Inverse of a unimodular matrix (the adjugate).
    pub fn inverse(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    /// Inverse of any invertible matrix.
    pub fn general_inverse(&self) -> Option<Self> {
        let di = self.det().inverse()?;
        Some(Mat2::new(
            self.d * di,
            -self.b * di,
            -self.c * di,
            self.a * di,
        ))
    }

    fn field_id(&self) -> (u32, u32) {
        self.a.field_id()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.field_id() != rhs.field_id() {
            return Err(Error::MixedField);
        }
        Ok(*self * *rhs)
    }

    /// `[A, B] = A B A⁻¹ B⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    pub fn checked_commutator(&self, other: &Self) -> Result<Self> {
        if self.field_id() != other.field_id() {
            return Err(Error::MixedField);
        }
        Ok(self.commutator(other))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = self.identity_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `M = ±I`, i.e. trivial in `PSL₂`.
    pub fn is_central(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && {
            let one = self.a.one_like();
            self.a == one || self.a == -one
        }
    }

    /// Representative of `±M` in `PSL₂`: the smaller of `M` and `−M`.
    pub fn psl_canonical(&self) -> Self {
        let n = -*self;
        if n < *self {
            n
        } else {
            *self
        }
    }

    /// `X⁻¹ M X` for an invertible `X`.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        let xi = x.general_inverse().expect("conjugator must be invertible");
        xi * *self * *x
    }
}

impl<S: Scalar> Mul for Mat2<S> {
    type Output = Mat2<S>;
    fn mul(self, r: Mat2<S>) -> Mat2<S> {
        Mat2::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl<S: Scalar> Neg for Mat2<S> {
    type Output = Mat2<S>;
    fn neg(self) -> Mat2<S> {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mat2<Fp> {
    pub fn from_ints(field: &PrimeField, a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(field.elem(a), field.elem(b), field.elem(c), field.elem(d))
    }

    pub fn identity(field: &PrimeField) -> Self {
        Mat2::scalar(field.one())
    }

    pub fn lift(&self, field: &PrimeField) -> Mat2<Fp2> {
        Mat2::new(
            field.embed(self.a),
            field.embed(self.b),
            field.embed(self.c),
            field.embed(self.d),
        )
    }
}

impl Mat2<Fp2> {
    /// `[[x, y], [y^p, x^p]]` with `x^(p+1) − y^(p+1) = 1`.
    pub fn is_el2_form(&self) -> bool {
        self.d == self.a.frobenius()
            && self.c == self.b.frobenius()
            && self.a.norm() - self.b.norm() == self.a.re().one_like()
    }

    /// Back to `F_p` when every entry lies in the prime subfield.
    pub fn to_base(&self) -> Option<Mat2<Fp>> {
        let ok = [self.a, self.b, self.c, self.d].iter().all(|e| e.is_base());
        ok.then(|| Mat2::new(self.a.re(), self.b.re(), self.c.re(), self.d.re()))
    }
}

impl<S: fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2<Fp> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.a.signed(),
            self.b.signed(),
            self.c.signed(),
            self.d.signed()
        )
    }
}

impl fmt::Debug for Mat2<Fp2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Signed-entry rendering, e.g. `[[0,1],[-1,2]]`.
pub fn display_signed(m: &Mat2<Fp>) -> String {
    format!("{m:?}")
}

/// The conjugation `X ↦ P X P⁻¹` with `P = [[1, g], [1, g^p]]`, carrying
/// `SL₂(F_p)` onto its elliptic copy inside `SL₂(F_p²)`.
pub fn el2_embed(m: &Mat2<Fp>, field: &PrimeField) -> Mat2<Fp2> {
    let g = field.ext_generator();
    let one = field.embed(field.one());
    let p = Mat2::new(one, g, one, g.frobenius());
    let pi = p.general_inverse().expect("g is not in F_p");
    p * m.lift(field) * pi
}

/// Order of `±M` in `PSL₂`: the least `h ≥ 1` with `M^h = ±I`.
pub fn psl2_order<S: Scalar>(m: &Mat2<S>) -> u64 {
    let mut acc = *m;
    let mut h = 1;
    while !acc.is_central() {
        acc = acc * *m;
        h += 1;
    }
    h
}

/// An ordered pair `(A, B)` of matrices over the same field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairAB<S> {
    pub first: Mat2<S>,
    pub second: Mat2<S>,
}

impl<S> fmt::Debug for PairAB<S>
where
    Mat2<S>: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.first, self.second)
    }
}

impl<S: Scalar> PairAB<S> {
    pub fn new(first: Mat2<S>, second: Mat2<S>) -> Self {
        PairAB { first, second }
    }

    pub fn try_new(first: Mat2<S>, second: Mat2<S>) -> Result<Self> {
        if first.field_id() != second.field_id() {
            return Err(Error::MixedField);
        }
        Ok(PairAB { first, second })
    }

    /// `(tr A, tr B, tr AB)`.
    pub fn traces(&self) -> (S, S, S) {
        (
            self.first.trace(),
            self.second.trace(),
            (self.first * self.second).trace(),
        )
    }

    pub fn commutator_trace(&self) -> S {
        self.first.commutator(&self.second).trace()
    }

    /// `r(A, B) = (B, A)`.
    pub fn nielsen_r(&self) -> Self {
        PairAB::new(self.second, self.first)
    }

    /// `s(A, B) = (A⁻¹, AB)`.
    pub fn nielsen_s(&self) -> Self {
        PairAB::new(self.first.inverse(), self.first * self.second)
    }

    /// `t(A, B) = (A⁻¹, B)`.
    pub fn nielsen_t(&self) -> Self {
        PairAB::new(self.first.inverse(), self.second)
    }

    /// `(X⁻¹AX, X⁻¹BX)`.
    pub fn conjugate_by(&self, x: &Mat2<S>) -> Self {
        PairAB::new(self.first.conjugate_by(x), self.second.conjugate_by(x))
    }
}

impl PairAB<Fp> {
    /// The trace map `(A, B) ↦ (tr A, tr B, tr AB)`.
    pub fn trace_map(&self) -> Triple {
        let (x, y, z) = self.traces();
        Triple::new(x, y, z)
    }
}
