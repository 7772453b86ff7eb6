use super::{Mat2, PairAB};
use crate::error::Result;
use crate::ff::{Fp, Fp2, PrimeField, Scalar, TraceRoot};

/// A pair conjugated so that its first matrix is diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// Hyperbolic first matrix: `(D_u, C)` over `F_p`, conjugated by an
    /// element of `SL₂(F_p)`.
    Split {
        pair: PairAB<Fp>,
        conjugator: Mat2<Fp>,
    },
    /// Elliptic first matrix: `(D_v, C)` inside the elliptic copy of
    /// `SL₂(F_p)` in `SL₂(F_p²)`.
    Elliptic {
        pair: PairAB<Fp2>,
        conjugator: Mat2<Fp2>,
    },
}

impl NormalForm {
    /// `b·c` for the second matrix. In the elliptic case `c = b^p`, so the
    /// product is the norm of `b` and lies in `F_p`.
    pub fn off_diagonal_product(&self) -> Fp {
        match self {
            NormalForm::Split { pair, .. } => pair.second.b * pair.second.c,
            NormalForm::Elliptic { pair, .. } => {
                let bc = pair.second.b * pair.second.c;
                debug_assert!(bc.is_base());
                bc.re()
            }
        }
    }

    /// Trace of the first (diagonal) matrix, in `F_p`.
    pub fn first_trace(&self) -> Fp {
        match self {
            NormalForm::Split { pair, .. } => pair.first.trace(),
            NormalForm::Elliptic { pair, .. } => pair.first.trace().re(),
        }
    }

    pub fn commutator_trace(&self) -> Fp {
        match self {
            NormalForm::Split { pair, .. } => pair.commutator_trace(),
            NormalForm::Elliptic { pair, .. } => pair.commutator_trace().re(),
        }
    }
}

/// Eigenvector of `m` for the eigenvalue `lambda`, as a column `(x, y)`.
fn eigenvector<S: Scalar>(m: &Mat2<S>, lambda: S) -> (S, S) {
    let (zero, one) = (lambda.zero_like(), lambda.one_like());
    if !m.b.is_zero() {
        (m.b, lambda - m.a)
    } else if !m.c.is_zero() {
        (lambda - m.d, m.c)
    } else if m.a == lambda {
        (one, zero)
    } else {
        (zero, one)
    }
}

/// Conjugates `(A, B)` to `(D_u, C)` with `D_u = diag(u, u⁻¹)`, where `u` is
/// the canonical root of `tr A = u + u⁻¹`.
///
/// The conjugator `Q` (result is `Q⁻¹ M Q`) has the eigenvectors of `A` as
/// columns. A pair whose first matrix already equals `D_u` gets `Q = I`.
pub fn normal_form(pair: &PairAB<Fp>, field: &PrimeField) -> Result<NormalForm> {
    let (a, b) = (pair.first, pair.second);
    match field.trace_split(a.trace())? {
        TraceRoot::Hyperbolic(u) => {
            let ui = u.inv().expect("u is a unit");
            let w1 = eigenvector(&a, u);
            let w2 = eigenvector(&a, ui);
            let det = w1.0 * w2.1 - w2.0 * w1.1;
            let s = det.inv().expect("eigenvectors are independent");
            let q = Mat2::new(w1.0, w2.0 * s, w1.1, w2.1 * s);
            Ok(NormalForm::Split {
                pair: PairAB::new(a.conjugate_by(&q), b.conjugate_by(&q)),
                conjugator: q,
            })
        }
        TraceRoot::Elliptic(v) => {
            let (a2, b2) = (a.lift(field), b.lift(field));
            let w = eigenvector(&a2, v);
            let q = Mat2::new(w.0, w.0.frobenius(), w.1, w.1.frobenius());
            Ok(NormalForm::Elliptic {
                pair: PairAB::new(a2.conjugate_by(&q), b2.conjugate_by(&q)),
                conjugator: q,
            })
        }
    }
}
