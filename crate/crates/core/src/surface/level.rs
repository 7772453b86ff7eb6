use super::{Budget, Triple};
use crate::error::Result;
use crate::ff::{Fp, PrimeField};

/// All triples at one level, in lexicographic order.
///
/// Stored column-wise: for each `(x, y)` the at most two `z` values sit in
/// `zs[offsets[x·p + y] .. offsets[x·p + y + 1]]`, so the position of a
/// triple in the sorted list is found without searching.
#[derive(Clone, Debug)]
pub struct LevelSet {
    p: u32,
    k: Fp,
    offsets: Vec<u32>,
    zs: Vec<u32>,
}

/// Solves `z² − xy·z + (x² + y² − 2 − k) = 0` for every `(x, y)`.
pub fn enumerate_level(field: &PrimeField, k: Fp, budget: &Budget) -> Result<LevelSet> {
    let p = field.p();
    budget.check(p)?;
    let q = p as usize;
    let mut offsets = Vec::with_capacity(q * q + 1);
    let mut zs = Vec::with_capacity(q * q + q);
    let (two, four, half) = (field.elem(2), field.elem(4), field.half());
    offsets.push(0);
    for x in field.elements() {
        for y in field.elements() {
            let b = x * y;
            let c = x * x + y * y - two - k;
            let disc = b * b - four * c;
            if let Some(r) = field.sqrt(disc) {
                if r.is_zero() {
                    zs.push((b * half).value());
                } else {
                    let z1 = ((b - r) * half).value();
                    let z2 = ((b + r) * half).value();
                    zs.push(z1.min(z2));
                    zs.push(z1.max(z2));
                }
            }
            offsets.push(zs.len() as u32);
        }
    }
    Ok(LevelSet { p, k, offsets, zs })
}

impl LevelSet {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> Fp {
        self.k
    }

    pub fn len(&self) -> usize {
        self.zs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zs.is_empty()
    }

    /// Position of `t` in the sorted list, if it lies on this level.
    pub fn index_of(&self, t: &Triple) -> Option<usize> {
        let cell = t.x.value() as usize * self.p as usize + t.y.value() as usize;
        let (lo, hi) = (self.offsets[cell] as usize, self.offsets[cell + 1] as usize);
        (lo..hi).find(|&i| self.zs[i] == t.z.value())
    }

    pub fn get(&self, i: usize) -> Triple {
        // the cell containing i is the last offset ≤ i
        let cell = self.offsets.partition_point(|&o| o as usize <= i) - 1;
        let q = self.p as usize;
        let f = |v: usize| Fp::new(v as i64, self.p);
        Triple::new(f(cell / q), f(cell % q), f(self.zs[i] as usize))
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        let q = self.p as usize;
        let f = move |v: usize| Fp::new(v as i64, self.p);
        self.offsets
            .windows(2)
            .enumerate()
            .flat_map(move |(cell, w)| {
                (w[0] as usize..w[1] as usize)
                    .map(move |i| Triple::new(f(cell / q), f(cell % q), f(self.zs[i] as usize)))
            })
    }
}
