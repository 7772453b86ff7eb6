//! Counting formulas and divisibility checks on level reports.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField, TraceClass, TraceRoot};
use crate::surface::{LevelReport, OrbitClass, Triple};

/// `p² + (3 + (k+2 | p))·(k−2 | p)·p + 1`.
pub fn count_formula(field: &PrimeField, k: Fp) -> u64 {
    let p = field.p() as i64;
    let two = field.elem(2);
    let a = (k + two).legendre() as i64;
    let b = (k - two).legendre() as i64;
    (p * p + (3 + a) * b * p + 1) as u64
}

/// Order in `SL₂(F_p)` of a non-central element of trace `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HK {
    pub k: Fp,
    pub h: u64,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `h` with `is_one(h)`, given that `is_one(n)` holds.
fn order_dividing(n: u64, is_one: impl Fn(u64) -> bool) -> u64 {
    let mut h = n;
    for q in prime_factors(n) {
        while h.is_multiple_of(q) && is_one(h / q) {
            h /= q;
        }
    }
    h
}

pub fn compute_hk(field: &PrimeField, k: Fp) -> HK {
    let p = field.p() as u64;
    let h = if k == field.elem(2) {
        p
    } else if k == field.elem(-2) {
        2 * p
    } else {
        match field.trace_split(k).expect("non-parabolic") {
            TraceRoot::Hyperbolic(u) => order_dividing(p - 1, |e| u.pow(e) == field.one()),
            TraceRoot::Elliptic(u) => {
                let one = field.embed(field.one());
                order_dividing(p + 1, |e| u.pow(e) == one)
            }
        }
    };
    HK { k, h }
}

/// One orbit-size divisibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityVerdict {
    pub p: u32,
    pub k: u32,
    pub representative: Triple,
    /// Member with at least two non-zero coordinates that made the orbit
    /// eligible (any member qualifies the whole orbit).
    pub witness: Triple,
    pub size: usize,
    /// `(k² − 4 | p)`.
    pub case: i8,
    pub modulus: u64,
    /// The test is on `2·size` rather than `size`.
    pub doubled: bool,
    pub holds: bool,
}

fn field_of(report: &LevelReport) -> (PrimeField, Fp) {
    let field = PrimeField::new(report.p as u64).expect("report built from a valid field");
    let k = field.elem(report.k as i64);
    (field, k)
}

/// Orbit-size divisibility at a level `k ≠ 2`, for every orbit with a
/// member having two non-zero coordinates.
///
/// With `h = h_k`: if `k² − 4 = 0` then `p | size`; otherwise
/// `2·size ≡ 0 mod h / gcd(h, 4(p ∓ 1)/h)` with the sign given by the
/// Legendre symbol of `k² − 4`. Empty at `k = 2`.
pub fn chen_check(report: &LevelReport) -> Vec<DivisibilityVerdict> {
    if report.is_singular() {
        return Vec::new();
    }
    let (field, k) = field_of(report);
    let p = report.p as u64;
    let case = (k * k - field.elem(4)).legendre();
    let (modulus, doubled) = match case {
        0 => (p, false),
        _ => {
            let h = compute_hk(&field, k).h;
            let group = if case == 1 { p - 1 } else { p + 1 };
            (h / h.gcd(&(4 * group / h)), true)
        }
    };
    report
        .orbits
        .iter()
        .filter_map(|o| {
            let witness = o.witness?;
            let n = if doubled {
                2 * o.size as u64
            } else {
                o.size as u64
            };
            Some(DivisibilityVerdict {
                p: report.p,
                k: report.k,
                representative: o.representative,
                witness,
                size: o.size,
                case,
                modulus,
                doubled,
                holds: n % modulus == 0,
            })
        })
        .collect()
}

/// A level is generic when it is not singular and hosts no `A4`, `S4` or
/// `A5` orbit: `k ∉ {0, 1, 2}` and `k` is not a root of `k² = k + 1`.
pub fn is_generic_level(field: &PrimeField, k: Fp) -> bool {
    let (zero, one) = (field.zero(), field.one());
    k != zero && k != one && k != field.elem(2) && k * k != k + one
}

/// `size ≡ 0 mod p − (k² − 4 | p)` for every cage orbit at a generic
/// level. Failures are returned as data.
pub fn conjecture_check(report: &LevelReport) -> Result<Vec<DivisibilityVerdict>> {
    let (field, k) = field_of(report);
    if !is_generic_level(&field, k) {
        return Err(Error::NotGeneric {
            p: report.p,
            k: report.k,
        });
    }
    let case = (k * k - field.elem(4)).legendre();
    let modulus = (report.p as i64 - case as i64) as u64;
    Ok(report
        .orbits
        .iter()
        .filter(|o| o.class == OrbitClass::Cage)
        .map(|o| DivisibilityVerdict {
            p: report.p,
            k: report.k,
            representative: o.representative,
            witness: o.witness.unwrap_or(o.representative),
            size: o.size,
            case,
            modulus,
            doubled: false,
            holds: (o.size as u64).is_multiple_of(modulus),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeylCount {
    pub p: u32,
    pub k: u32,
    pub count: u64,
    /// `16·count ≥ p`.
    pub pass: bool,
}

/// Triples at level `k` with `x`, `y` hyperbolic and `z = xy/2` (so the
/// Vieta move in `z` fixes them). Requires `2 − k` to be a non-zero square.
pub fn weyl_count(field: &PrimeField, k: Fp) -> Result<WeylCount> {
    if (field.elem(2) - k).legendre() != 1 {
        return Err(Error::HypothesisFailed {
            p: field.p(),
            k: k.value(),
        });
    }
    let hyperbolic: Vec<Fp> = field
        .elements()
        .filter(|t| field.classify_trace(*t) == TraceClass::Hyperbolic)
        .collect();
    let half = field.half();
    let mut count = 0u64;
    for &x in &hyperbolic {
        for &y in &hyperbolic {
            if Triple::new(x, y, x * y * half).level() == k {
                count += 1;
            }
        }
    }
    Ok(WeylCount {
        p: field.p(),
        k: k.value(),
        count,
        pass: 16 * count >= field.p() as u64,
    })
}

/// Square-count statements over all admissible parameters at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSquareReport {
    pub p: u32,
    /// Values `c ≠ 0` for which `x² + c = y²` does not have `p − 1`
    /// solutions.
    pub lemma_failures: Vec<u32>,
    /// Largest `|N − (p − 3)|` over distinct non-zero `a, b`.
    pub max_deviation: u64,
    /// Pairs `(a, b)` with `(N − (p − 3))² > 4p`.
    pub hasse_failures: Vec<(u32, u32)>,
    /// Values `c` with fewer than `(p − 1)/2` values of `x` making `x² + c`
    /// a non-zero square.
    pub single_square_shortfalls: Vec<u32>,
    /// Pairs `(a, b)` with fewer than `(p − 3 − 2√p)/4` values of `x` making
    /// both `x² + a` and `x² + b` non-zero squares.
    pub double_square_shortfalls: Vec<(u32, u32)>,
}

impl PairSquareReport {
    /// The two exact statements: the pair count and the Hasse-type bound.
    pub fn ok(&self) -> bool {
        self.lemma_failures.is_empty() && self.hasse_failures.is_empty()
    }
}

/// `4·count ≥ p − 3 − 2√p`, in integers.
fn meets_quarter_bound(count: u64, p: u64) -> bool {
    let lhs = 4 * count as i64 - (p as i64 - 3);
    lhs >= 0 || lhs * lhs <= 4 * p as i64
}

pub fn pair_square_counts(field: &PrimeField) -> PairSquareReport {
    let p = field.p();
    let q = p as usize;
    // roots[v] = number of y with y² = v
    let mut roots = vec![0u64; q];
    for y in field.elements() {
        roots[(y * y).value() as usize] += 1;
    }
    let xsq: Vec<Fp> = field.elements().map(|x| x * x).collect();
    let nonzero_square = |v: Fp| v.legendre() == 1;

    let mut report = PairSquareReport {
        p,
        lemma_failures: Vec::new(),
        max_deviation: 0,
        hasse_failures: Vec::new(),
        single_square_shortfalls: Vec::new(),
        double_square_shortfalls: Vec::new(),
    };
    for c in field.elements().skip(1) {
        let pairs: u64 = xsq.iter().map(|&s| roots[(s + c).value() as usize]).sum();
        if pairs != p as u64 - 1 {
            report.lemma_failures.push(c.value());
        }
        let good = xsq.iter().filter(|&&s| nonzero_square(s + c)).count() as u64;
        if 2 * good < p as u64 - 1 {
            report.single_square_shortfalls.push(c.value());
        }
    }
    for a in field.elements().skip(1) {
        for b in field.elements().skip(1) {
            if a == b {
                continue;
            }
            let mut n = 0u64;
            let mut both = 0u64;
            for &s in &xsq {
                n += roots[(s + a).value() as usize] * roots[(s + b).value() as usize];
                both += (nonzero_square(s + a) && nonzero_square(s + b)) as u64;
            }
            let dev = (n as i64 - (p as i64 - 3)).unsigned_abs();
            report.max_deviation = report.max_deviation.max(dev);
            if dev * dev > 4 * p as u64 {
                report.hasse_failures.push((a.value(), b.value()));
            }
            if !meets_quarter_bound(both, p as u64) {
                report.double_square_shortfalls.push((a.value(), b.value()));
            }
        }
    }
    report
}
