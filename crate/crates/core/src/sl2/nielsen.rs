//! Nielsen classes of pairs at a fixed level, by breadth-first search over
//! all of `SL₂(F_p)²`.

use std::collections::VecDeque;

use super::{classify_pair, sl2_elements, GroupClass, Mat2, PairAB};
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};

/// Largest prime for which the pair space is searched.
pub const TABLE_MAX_P: u32 = 13;

/// `SL₂(F_p)` with a dense multiplication table.
pub struct Sl2Table {
    field: PrimeField,
    elements: Vec<Mat2<Fp>>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u32>,
}

impl Sl2Table {
    pub fn new(field: &PrimeField) -> Result<Sl2Table> {
        let p = field.p();
        if p > TABLE_MAX_P {
            return Err(Error::TooLarge {
                p: p as u64,
                max: TABLE_MAX_P as u64,
            });
        }
        let elements = sl2_elements(field);
        let n = elements.len();
        let key = |m: &Mat2<Fp>| {
            let p = p as usize;
            ((m.a.value() as usize * p + m.b.value() as usize) * p + m.c.value() as usize) * p
                + m.d.value() as usize
        };
        let mut dense = vec![u16::MAX; (p as usize).pow(4)];
        for (i, m) in elements.iter().enumerate() {
            dense[key(m)] = i as u16;
        }
        let mut mul = vec![0u16; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mul[i * n + j] = dense[key(&(*x * *y))];
            }
        }
        let inv = elements.iter().map(|m| dense[key(&m.inverse())]).collect();
        let trace = elements.iter().map(|m| m.trace().value()).collect();
        Ok(Sl2Table {
            field: field.clone(),
            elements,
            mul,
            inv,
            trace,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> Mat2<Fp> {
        self.elements[i]
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elements.len() + j] as usize
    }

    fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    fn commutator_trace(&self, i: usize, j: usize) -> u32 {
        let ab = self.mul(i, j);
        let aibi = self.mul(self.inv(i), self.inv(j));
        self.trace[self.mul(ab, aibi)]
    }

    /// Neighbours of the pair `(i, j)` under `r`, `s` and `t`.
    fn moves(&self, i: usize, j: usize) -> [(usize, usize); 3] {
        let ai = self.inv(i);
        [(j, i), (ai, self.mul(i, j)), (ai, j)]
    }
}

/// One Nielsen class at a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NielsenClass {
    pub representative: PairAB<Fp>,
    pub size: usize,
    pub group: GroupClass,
}

/// All Nielsen classes of pairs at one level.
#[derive(Clone, Debug)]
pub struct NielsenCensus {
    pub p: u32,
    pub k: u32,
    pub total_pairs: usize,
    pub classes: Vec<NielsenClass>,
}

impl NielsenCensus {
    /// The generated subgroup is a Nielsen invariant, so classifying one
    /// representative per class decides it for the whole class.
    pub fn compute(table: &Sl2Table, k: Fp) -> Result<NielsenCensus> {
        let n = table.len();
        let k = k.value();
        let mut at_level = vec![false; n * n];
        let mut total_pairs = 0;
        for i in 0..n {
            for j in 0..n {
                if table.commutator_trace(i, j) == k {
                    at_level[i * n + j] = true;
                    total_pairs += 1;
                }
            }
        }
        // at_level doubles as the unvisited set
        let mut classes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n * n {
            if !at_level[start] {
                continue;
            }
            at_level[start] = false;
            queue.push_back((start / n, start % n));
            let mut size = 0;
            while let Some((i, j)) = queue.pop_front() {
                size += 1;
                for (a, b) in table.moves(i, j) {
                    let idx = a * n + b;
                    if at_level[idx] {
                        at_level[idx] = false;
                        queue.push_back((a, b));
                    }
                }
            }
            let representative = PairAB::new(table.element(start / n), table.element(start % n));
            classes.push(NielsenClass {
                representative,
                size,
                group: classify_pair(&representative)?.class,
            });
        }
        Ok(NielsenCensus {
            p: table.field().p(),
            k,
            total_pairs,
            classes,
        })
    }

    /// Classes whose pairs generate `SL₂(F_p)`.
    pub fn generating(&self) -> impl Iterator<Item = &NielsenClass> {
        self.classes
            .iter()
            .filter(|c| c.group == GroupClass::Projective)
    }
}

/// Number of Nielsen classes of generating pairs `(A, B)` with
/// `tr [A, B] = k`.
pub fn nielsen_class_count(field: &PrimeField, k: Fp) -> Result<usize> {
    let table = Sl2Table::new(field)?;
    Ok(NielsenCensus::compute(&table, k)?.generating().count())
}
