use std::fmt;

use serde::Serialize;

use super::{orbit_of, Budget, OrbitRecord, Triple};
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrbitClass {
    Origin,
    Dihedral,
    A4,
    S4,
    A5_72,
    A5_40a,
    A5_40b,
    Cage,
    SingularLevel,
}

impl OrbitClass {
    /// Orbit size of an exceptional class; `None` for `Cage` and
    /// `SingularLevel`.
    pub fn expected_size(self) -> Option<usize> {
        match self {
            OrbitClass::Origin => Some(1),
            OrbitClass::Dihedral => Some(6),
            OrbitClass::A4 => Some(16),
            OrbitClass::S4 => Some(36),
            OrbitClass::A5_72 => Some(72),
            OrbitClass::A5_40a | OrbitClass::A5_40b => Some(40),
            OrbitClass::Cage | OrbitClass::SingularLevel => None,
        }
    }

    pub fn is_exceptional(self) -> bool {
        self.expected_size().is_some()
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite orbit instantiated at a given prime: its class, generator and
/// level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceptionalRow {
    pub class: OrbitClass,
    pub generator: Triple,
    pub level: Fp,
}

/// Every finite orbit admissible at `p`, over all levels.
///
/// The dihedral row appears once for each level `k ≠ −2` with `k + 2` a
/// square; the generator `(t, 0, 0)` uses the canonical root `t`.
pub fn exceptional_rows(field: &PrimeField) -> Vec<ExceptionalRow> {
    let (zero, one, two) = (field.zero(), field.one(), field.elem(2));
    let row = |class, generator: Triple| ExceptionalRow {
        class,
        generator,
        level: generator.level(),
    };
    let mut rows = vec![row(OrbitClass::Origin, Triple::new(zero, zero, zero))];
    for k in field.elements() {
        let shifted = k + two;
        if shifted.legendre() == 1 {
            let t = field.sqrt(shifted).expect("square");
            rows.push(row(OrbitClass::Dihedral, Triple::new(t, zero, zero)));
        }
    }
    rows.push(row(OrbitClass::A4, Triple::new(one, one, zero)));
    if let Some(r2) = field.sqrt(two) {
        rows.push(row(OrbitClass::S4, Triple::new(r2, one, zero)));
    }
    if let Some(r5) = field.sqrt(field.elem(5)) {
        let phi = (one + r5) * field.half();
        let phibar = (one - r5) * field.half();
        rows.push(row(OrbitClass::A5_72, Triple::new(phi, phibar, zero)));
        let (lo, hi) = if phi < phibar {
            (phi, phibar)
        } else {
            (phibar, phi)
        };
        rows.push(row(OrbitClass::A5_40a, Triple::new(lo, one, zero)));
        rows.push(row(OrbitClass::A5_40b, Triple::new(hi, one, zero)));
    }
    rows
}

/// The finite orbits at level `k`, each checked against its expected size.
pub fn exceptional_set(field: &PrimeField, k: Fp, budget: &Budget) -> Result<Vec<OrbitRecord>> {
    let mut out = Vec::new();
    for row in exceptional_rows(field).into_iter().filter(|r| r.level == k) {
        let orbit = orbit_of(field, row.generator, budget)?;
        let expected = row.class.expected_size().expect("exceptional class");
        if orbit.size != expected {
            return Err(Error::SizeMismatch {
                class: row.class,
                expected,
                found: orbit.size,
            });
        }
        out.push(OrbitRecord {
            representative: orbit.representative,
            size: orbit.size,
            class: row.class,
            witness: orbit.witness,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(p: u64, k: i64) -> Vec<(OrbitClass, usize)> {
        let f = PrimeField::new(p).unwrap();
        exceptional_set(&f, f.elem(k), &Budget::default())
            .unwrap()
            .into_iter()
            .map(|r| (r.class, r.size))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(
            classes(7, 0),
            vec![(OrbitClass::Dihedral, 6), (OrbitClass::A4, 16)]
        );
        assert_eq!(
            classes(11, 1),
            vec![(OrbitClass::Dihedral, 6), (OrbitClass::A5_72, 72)]
        );
        assert_eq!(classes(7, 4), vec![]);
        // 5 ≡ −2 (mod 7) is the origin's level
        assert_eq!(classes(7, 5), vec![(OrbitClass::Origin, 1)]);
    }

    #[test]
    fn a5_40_labels_follow_level_order() {
        for p in [11u64, 19, 29, 31, 41] {
            let f = PrimeField::new(p).unwrap();
            let rows = exceptional_rows(&f);
            let a = rows.iter().find(|r| r.class == OrbitClass::A5_40a).unwrap();
            let b = rows.iter().find(|r| r.class == OrbitClass::A5_40b).unwrap();
            assert!(a.level < b.level);
            // the level of (φ, 1, 0) is φ itself
            assert_eq!(a.level, a.generator.x);
            assert_eq!(b.level, b.generator.x);
        }
    }

    #[test]
    fn admissibility() {
        let has = |p: u64, c: OrbitClass| {
            let f = PrimeField::new(p).unwrap();
            exceptional_rows(&f).iter().any(|r| r.class == c)
        };
        // √2 ∈ F_p iff p ≡ ±1 (mod 8); √5 ∈ F_p iff p ≡ ±1 (mod 5)
        for p in [7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            assert_eq!(has(p, OrbitClass::S4), p % 8 == 1 || p % 8 == 7, "p={p}");
            assert_eq!(has(p, OrbitClass::A5_72), p % 5 == 1 || p % 5 == 4, "p={p}");
            assert!(has(p, OrbitClass::A4) && has(p, OrbitClass::Origin));
        }
    }

    #[test]
    fn all_rows_have_table_sizes_up_to_100() {
        for p in (7u64..=100).filter(|&p| crate::ff::is_prime(p)) {
            let f = PrimeField::new(p).unwrap();
            for row in exceptional_rows(&f) {
                let o = orbit_of(&f, row.generator, &Budget::default()).unwrap();
                assert_eq!(Some(o.size), row.class.expected_size(), "p={p} {row:?}");
            }
        }
    }
}
