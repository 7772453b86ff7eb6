use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::{enumerate_level, exceptional_set, Budget, OrbitClass, Triple};
use crate::analytics::count_formula;
use crate::error::Result;
use crate::ff::{Fp, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub representative: Triple,
    pub size: usize,
    pub class: OrbitClass,
    /// Smallest member with at least two non-zero coordinates, if any.
    pub witness: Option<Triple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub p: u32,
    pub k: u32,
    pub total: usize,
    pub orbits: Vec<OrbitRecord>,
    pub exceptional_total: usize,
    pub strong_approx_ok: bool,
    pub count_formula_ok: bool,
}

impl LevelReport {
    pub fn cage_orbits(&self) -> impl Iterator<Item = &OrbitRecord> {
        self.orbits.iter().filter(|o| o.class == OrbitClass::Cage)
    }

    pub fn cage_size(&self) -> usize {
        self.cage_orbits().map(|o| o.size).sum()
    }

    pub fn is_singular(&self) -> bool {
        self.k == 2
    }
}

/// Splits the level into orbits and tags each one.
///
/// An orbit is exceptional when it contains the generator of a finite orbit
/// at this level; at `k = 2` every orbit is tagged `SingularLevel` and the
/// strong-approximation verdict is false by convention. An empty cage
/// passes.
pub fn decompose_level(field: &PrimeField, k: Fp, budget: &Budget) -> Result<LevelReport> {
    let set = enumerate_level(field, k, budget)?;
    let n = set.len();
    let mut uf = UnionFind::<u32>::new(n);
    for (i, t) in set.iter().enumerate() {
        for m in t.moves() {
            let j = set.index_of(&m).expect("moves preserve the level");
            uf.union(i as u32, j as u32);
        }
    }

    // indices follow lexicographic order, so the first member seen is the
    // representative
    let labels = uf.into_labeling();
    let mut slot = vec![u32::MAX; n];
    let mut orbits: Vec<OrbitRecord> = Vec::new();
    for (i, t) in set.iter().enumerate() {
        let root = labels[i] as usize;
        if slot[root] == u32::MAX {
            slot[root] = orbits.len() as u32;
            orbits.push(OrbitRecord {
                representative: t,
                size: 0,
                class: OrbitClass::Cage,
                witness: None,
            });
        }
        let o = &mut orbits[slot[root] as usize];
        o.size += 1;
        if o.witness.is_none() && t.nonzero_coordinates() >= 2 {
            o.witness = Some(t);
        }
    }

    let singular = k == field.elem(2);
    let mut table_matches = true;
    if singular {
        for o in &mut orbits {
            o.class = OrbitClass::SingularLevel;
        }
    } else {
        for rec in exceptional_set(field, k, budget)? {
            let i = set.index_of(&rec.representative).expect("on this level");
            let o = &mut orbits[slot[labels[i] as usize] as usize];
            table_matches &= o.class == OrbitClass::Cage
                && o.representative == rec.representative
                && o.size == rec.size;
            o.class = rec.class;
        }
    }
    orbits.sort_by_key(|o| (o.class, o.representative));

    let cages = orbits
        .iter()
        .filter(|o| o.class == OrbitClass::Cage)
        .count();
    let exceptional_total = orbits
        .iter()
        .filter(|o| o.class != OrbitClass::Cage)
        .map(|o| o.size)
        .sum();
    Ok(LevelReport {
        p: field.p(),
        k: k.value(),
        total: n,
        orbits,
        exceptional_total,
        strong_approx_ok: !singular && cages <= 1 && table_matches,
        count_formula_ok: n as u64 == count_formula(field, k),
    })
}
