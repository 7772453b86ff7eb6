use std::collections::HashSet;

use super::{Mat2, PairAB};
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};

/// Largest prime for which whole towers are enumerated.
const ENUMERATE_MAX_P: u32 = 13;

/// A pair `(A, B)` with trace triple `(x, y, z)`.
///
/// `A = [[0, 1], [−1, x]]` and `B = [[y − d, dx + c − z], [c, d]]`, where
/// `(c, d)` is the first solution of `d² + (xc − y)d + c² − zc + 1 = 0`
/// found by scanning `c = 0, 1, …` and taking the smaller root in `d`.
///
/// Two cases need something else:
/// - every coordinate is `±2`: the explicit solution `(c, d) = (z/2, 0)` is
///   used, so `(2, 2, 2)` gets a non-commuting lift rather than `(A, I)`;
/// - `x = ±2` and the scan finds nothing: the conic is then singular, so a
///   permuted triple with a non-parabolic first coordinate is solved and
///   the matching Nielsen move carries the pair back. In that case `A` is
///   not of the form above.
pub fn tower_witness(field: &PrimeField, x: Fp, y: Fp, z: Fp) -> PairAB<Fp> {
    let two = field.elem(2);
    let parabolic = |t: Fp| t == two || t == -two;
    if parabolic(x) && parabolic(y) && parabolic(z) {
        let a = Mat2::new(field.zero(), field.one(), -field.one(), x);
        let d = field.zero();
        let c = z * field.half();
        return PairAB::new(a, Mat2::new(y - d, d * x + c - z, c, d));
    }
    if let Some(pair) = scan_witness(field, x, y, z) {
        return pair;
    }
    if !parabolic(y) {
        // r(y, x, z) = (x, y, z)
        let w = scan_witness(field, y, x, z).expect("non-parabolic first trace");
        return w.nielsen_r();
    }
    // s(r(z, x, y)) = s(x, z, y) = (x, y, z)
    let w = scan_witness(field, z, x, y).expect("non-parabolic first trace");
    w.nielsen_r().nielsen_s()
}

fn scan_witness(field: &PrimeField, x: Fp, y: Fp, z: Fp) -> Option<PairAB<Fp>> {
    let (zero, one, half) = (field.zero(), field.one(), field.half());
    let a = Mat2::new(zero, one, -one, x);
    for c in field.elements() {
        // monic in d: d² + βd + γ
        let beta = x * c - y;
        let gamma = c * c - z * c + one;
        let Some(r) = field.sqrt(beta * beta - field.elem(4) * gamma) else {
            continue;
        };
        let d = ((-beta + r) * half).min((-beta - r) * half);
        return Some(PairAB::new(a, Mat2::new(y - d, d * x + c - z, c, d)));
    }
    None
}

/// All of `SL₂(F_p)`, in lexicographic order of entries.
pub fn sl2_elements(field: &PrimeField) -> Vec<Mat2<Fp>> {
    let one = field.one();
    let mut out = Vec::with_capacity(field.p() as usize * (field.p() as usize).pow(2));
    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                match a.inv() {
                    Some(ai) => out.push(Mat2::new(a, b, c, (one + b * c) * ai)),
                    // a = 0 forces bc = −1 and leaves d free
                    None if b * c == -one => {
                        out.extend(field.elements().map(|d| Mat2::new(a, b, c, d)))
                    }
                    None => {}
                }
            }
        }
    }
    out.sort();
    out
}

/// The whole fibre of the trace map over `(x, y, z)`.
pub fn tower_enumerate(field: &PrimeField, x: Fp, y: Fp, z: Fp) -> Result<Vec<PairAB<Fp>>> {
    if field.p() > ENUMERATE_MAX_P {
        return Err(Error::TooLarge {
            p: field.p() as u64,
            max: ENUMERATE_MAX_P as u64,
        });
    }
    let all = sl2_elements(field);
    let firsts: Vec<_> = all.iter().filter(|m| m.trace() == x).collect();
    let seconds: Vec<_> = all.iter().filter(|m| m.trace() == y).collect();
    let mut out = Vec::new();
    for a in &firsts {
        for b in &seconds {
            if (**a * **b).trace() == z {
                out.push(PairAB::new(**a, **b));
            }
        }
    }
    Ok(out)
}

/// Number of orbits of `SL₂(F_p)` acting on `pairs` by simultaneous
/// conjugation. The list is assumed closed under that action.
pub fn sl2_conjugacy_class_count(pairs: &[PairAB<Fp>], field: &PrimeField) -> usize {
    let group = sl2_elements(field);
    let mut unseen: HashSet<PairAB<Fp>> = pairs.iter().copied().collect();
    let mut classes = 0;
    for pair in pairs {
        if !unseen.remove(pair) {
            continue;
        }
        classes += 1;
        for x in &group {
            unseen.remove(&pair.conjugate_by(x));
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::psl2_order;
    use crate::surface::Triple;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn witness_at_222_is_the_explicit_solution() {
        let k = f(7);
        let pair = tower_witness(&k, k.elem(2), k.elem(2), k.elem(2));
        assert_eq!(pair.first, Mat2::from_ints(&k, 0, 1, -1, 2));
        assert_eq!(pair.second, Mat2::from_ints(&k, 2, -1, 1, 0));
    }

    #[test]
    fn witness_over_singular_conics() {
        // x = ±2 with no solution for the fixed first matrix at p = 11
        let k = f(11);
        for t in [(2, 0, 0), (2, 1, 1), (9, 5, 6), (2, 2, 0), (9, 2, 9)] {
            let (x, y, z) = (k.elem(t.0), k.elem(t.1), k.elem(t.2));
            let pair = tower_witness(&k, x, y, z);
            assert_eq!(pair.trace_map(), Triple::new(x, y, z), "{t:?}");
        }
    }

    #[test]
    fn witness_at_origin() {
        let k = f(7);
        let pair = tower_witness(&k, k.zero(), k.zero(), k.zero());
        assert_eq!(pair.trace_map(), Triple::from_ints(&k, 0, 0, 0));
        assert_eq!(pair.second.det(), k.one());
    }

    #[test]
    fn witness_is_exhaustively_surjective_at_p11() {
        let k = f(11);
        let mut n = 0;
        for x in k.elements() {
            for y in k.elements() {
                for z in k.elements() {
                    let pair = tower_witness(&k, x, y, z);
                    assert_eq!(pair.first.det(), k.one());
                    assert_eq!(pair.second.det(), k.one());
                    assert_eq!(pair.trace_map(), Triple::new(x, y, z));
                    n += 1;
                }
            }
        }
        assert_eq!(n, 1331);
    }

    #[test]
    fn sl2_has_the_right_order() {
        for p in [7u64, 11, 13] {
            let k = f(p);
            let all = sl2_elements(&k);
            assert_eq!(all.len() as u64, p * (p * p - 1));
            assert!(all.iter().all(|m| m.det() == k.one()));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn tower_over_203_at_p7() {
        let k = f(7);
        let (x, y, z) = (k.elem(2), k.zero(), k.elem(3));
        let pairs = tower_enumerate(&k, x, y, z).unwrap();
        assert_eq!(pairs.len(), 336);
        assert!(pairs.iter().all(|q| q.trace_map() == Triple::new(x, y, z)));
        assert_eq!(sl2_conjugacy_class_count(&pairs, &k), 2);
    }

    #[test]
    fn tower_sizes_for_all_nonsingular_triples_at_p7() {
        let k = f(7);
        let two = k.elem(2);
        for t in [
            (0, 0, 0),
            (1, 1, 0),
            (3, 0, 0),
            (1, 2, 3),
            (5, 6, 4),
            (2, 2, 3),
        ] {
            let (x, y, z) = (k.elem(t.0), k.elem(t.1), k.elem(t.2));
            if Triple::new(x, y, z).level() == two {
                continue;
            }
            let pairs = tower_enumerate(&k, x, y, z).unwrap();
            assert_eq!(pairs.len(), 336, "{t:?}");
            assert_eq!(sl2_conjugacy_class_count(&pairs, &k), 2, "{t:?}");
        }
    }

    #[test]
    fn enumerate_rejects_large_p() {
        let k = f(17);
        assert!(matches!(
            tower_enumerate(&k, k.zero(), k.zero(), k.zero()),
            Err(Error::TooLarge { p: 17, .. })
        ));
    }

    #[test]
    fn equal_nonparabolic_traces_are_conjugate_at_p7() {
        let k = f(7);
        let all = sl2_elements(&k);
        for t in k.elements() {
            let with_trace: Vec<_> = all
                .iter()
                .filter(|m| m.trace() == t)
                .map(|m| PairAB::new(*m, *m))
                .collect();
            let classes = sl2_conjugacy_class_count(&with_trace, &k);
            if t == k.elem(2) || t == k.elem(-2) {
                // ±I plus two unipotent-type classes
                assert_eq!(classes, 3, "t={t}");
            } else {
                assert_eq!(classes, 1, "t={t}");
            }
        }
    }

    #[test]
    fn order_determines_trace() {
        for p in [11u64, 13] {
            let k = f(p);
            let r2 = k.sqrt(k.elem(2));
            let r5 = k.sqrt(k.elem(5));
            for m in sl2_elements(&k) {
                let t = m.trace();
                match psl2_order(&m) {
                    2 => assert_eq!(t, k.zero()),
                    3 => assert!(t == k.one() || t == -k.one()),
                    4 => {
                        let r = r2.expect("order 4 needs √2");
                        assert!(t == r || t == -r);
                    }
                    5 => {
                        let r = r5.expect("order 5 needs √5");
                        let h = k.half();
                        let allowed = [(k.one() + r) * h, (k.one() - r) * h];
                        assert!(allowed.contains(&t) || allowed.contains(&-t));
                    }
                    _ => {}
                }
            }
        }
    }
}
