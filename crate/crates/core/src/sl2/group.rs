//! Subgroups of `PSL₂(F_p)` generated by a pair, and their class.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{Mat2, PairAB};
use crate::error::{Error, Result};
use crate::ff::Fp;

/// Pairs at primes up to this bound also get the exact size of an affine
/// closure; above it only the early-exit closure is run.
pub const CLOSURE_FULL_MAX_P: u32 = 113;

/// Largest early-exit bound we are willing to hold in memory.
const CLOSURE_MEMORY_CAP: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupClass {
    Affine,
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Projective,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::Dihedral(n) => write!(f, "Dihedral({n})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupClassification {
    pub class: GroupClass,
    /// Size of the computed closure in `PSL₂`. For a projective pair this
    /// is the size at which the early exit fired (or the full group); for
    /// an affine pair it is only computed when `p ≤ CLOSURE_FULL_MAX_P`.
    pub closure_size: Option<usize>,
}

/// Elements of the subgroup of `PSL₂(F_p)` generated by some matrices,
/// stored by their canonical sign.
#[derive(Clone, Debug)]
pub struct Closure {
    pub elements: Vec<Mat2<Fp>>,
    /// The search stopped because it grew past the requested bound.
    pub exceeded: bool,
}

/// Breadth-first closure of `gens` in `PSL₂(F_p)`, stopping as soon as
/// more than `limit` elements are known.
pub fn psl2_closure(gens: &[Mat2<Fp>], limit: usize) -> Closure {
    let Some(first) = gens.first() else {
        return Closure {
            elements: Vec::new(),
            exceeded: false,
        };
    };
    let id = first.identity_like();
    let gens: Vec<Mat2<Fp>> = gens.iter().map(Mat2::psl_canonical).collect();
    let mut seen = HashSet::from([id]);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = (g * *s).psl_canonical();
            if seen.insert(h) {
                elements.push(h);
                if elements.len() > limit {
                    return Closure {
                        elements,
                        exceeded: true,
                    };
                }
                queue.push_back(h);
            }
        }
    }
    Closure {
        elements,
        exceeded: false,
    }
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

/// PSL₂-order of `m`, given that it divides `group_order`.
fn order_in_group(m: &Mat2<Fp>, group_order: u64, factors: &[u64]) -> u64 {
    let mut n = group_order;
    for &q in factors {
        while n.is_multiple_of(q) && m.pow(n / q).is_central() {
            n /= q;
        }
    }
    n
}

/// Identifies a finite subgroup of `PSL₂(F_p)` that is neither affine nor
/// the whole group, from its order and element orders.
fn classify_exceptional(elements: &[Mat2<Fp>]) -> Option<GroupClass> {
    let size = elements.len() as u64;
    if size == 2 {
        return Some(GroupClass::Dihedral(1));
    }
    let factors = prime_factors(size);
    let orders: Vec<u64> = elements
        .iter()
        .map(|m| order_in_group(m, size, &factors))
        .collect();
    let max = orders.iter().copied().max().unwrap_or(1);
    let within = |allowed: &[u64]| orders.iter().all(|o| allowed.contains(o));
    if size >= 4 && size.is_multiple_of(2) && max == size / 2 {
        return Some(GroupClass::Dihedral((size / 2) as u32));
    }
    match size {
        12 if within(&[1, 2, 3]) => Some(GroupClass::Tetrahedral),
        24 if within(&[1, 2, 3, 4]) && orders.contains(&4) => Some(GroupClass::Octahedral),
        60 if within(&[1, 2, 3, 5]) => Some(GroupClass::Icosahedral),
        _ => None,
    }
}

/// Class of the subgroup of `PSL₂(F_p)` generated by the pair.
///
/// A commutator of trace 2 means the pair is affine. Otherwise the
/// subgroup is exceptional (order at most `max(60, 2(p+1))`) or all of
/// `PSL₂(F_p)`, so a closure that outgrows that bound is projective.
pub fn classify_pair(pair: &PairAB<Fp>) -> Result<GroupClassification> {
    let p = pair.first.a.modulus();
    let two = Fp::new(2, p);
    let gens = [pair.first, pair.second];
    if pair.commutator_trace() == two {
        let closure_size =
            (p <= CLOSURE_FULL_MAX_P).then(|| psl2_closure(&gens, usize::MAX).elements.len());
        return Ok(GroupClassification {
            class: GroupClass::Affine,
            closure_size,
        });
    }
    let bound = 60usize.max(2 * (p as usize + 1));
    if bound > CLOSURE_MEMORY_CAP {
        return Err(Error::TooLarge {
            p: p as u64,
            max: (CLOSURE_MEMORY_CAP / 2) as u64,
        });
    }
    let closure = psl2_closure(&gens, bound);
    let size = closure.elements.len();
    let psl_order = p as usize * (p as usize * p as usize - 1) / 2;
    if closure.exceeded || size == psl_order {
        return Ok(GroupClassification {
            class: GroupClass::Projective,
            closure_size: Some(size),
        });
    }
    let class = classify_exceptional(&closure.elements).ok_or(Error::Unclassified(size))?;
    Ok(GroupClassification {
        class,
        closure_size: Some(size),
    })
}
