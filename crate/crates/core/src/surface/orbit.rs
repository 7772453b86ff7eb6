use std::collections::HashSet;

use bitvec::vec::BitVec;

use super::{Budget, Triple};
use crate::error::Result;
use crate::ff::PrimeField;

/// Above this prime the visited set is hashed instead of a `p³`-bit map.
const BITMAP_MAX_P: u32 = 256;

/// One orbit of `{r, s, t}`, found by breadth-first search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically smallest member.
    pub representative: Triple,
    pub size: usize,
    /// Smallest member with at least two non-zero coordinates.
    pub witness: Option<Triple>,
}

enum Visited {
    Bits(BitVec),
    Hashed(HashSet<usize>),
}

impl Visited {
    fn insert(&mut self, code: usize) -> bool {
        match self {
            Visited::Bits(b) => !b.replace(code, true),
            Visited::Hashed(h) => h.insert(code),
        }
    }
}

pub fn orbit_of(field: &PrimeField, start: Triple, budget: &Budget) -> Result<Orbit> {
    let p = field.p();
    budget.check(p)?;
    let mut visited = if p <= BITMAP_MAX_P {
        Visited::Bits(BitVec::repeat(false, (p as usize).pow(3)))
    } else {
        Visited::Hashed(HashSet::new())
    };
    visited.insert(start.pack());
    let mut frontier = vec![start];
    let mut orbit = Orbit {
        representative: start,
        size: 0,
        witness: None,
    };
    while let Some(t) = frontier.pop() {
        orbit.size += 1;
        orbit.representative = orbit.representative.min(t);
        if t.nonzero_coordinates() >= 2 && orbit.witness.is_none_or(|w| t < w) {
            orbit.witness = Some(t);
        }
        for m in t.moves() {
            if visited.insert(m.pack()) {
                frontier.push(m);
            }
        }
    }
    Ok(orbit)
}
