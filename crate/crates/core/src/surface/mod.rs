//! Triples on the surfaces `x² + y² + z² − xyz − 2 = k`, their orbits
//! under `{r, s, t}` and the exceptional orbit table.

mod decompose;
mod exceptional;
mod level;
mod orbit;

use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::ff::{Fp, PrimeField};

pub use decompose::{decompose_level, LevelReport, OrbitRecord};
pub use exceptional::{exceptional_rows, exceptional_set, ExceptionalRow, OrbitClass};
pub use level::{enumerate_level, LevelSet};
pub use orbit::{orbit_of, Orbit};

/// Default cap on `p` for whole-level work (about `10⁷` triples).
pub const DEFAULT_MAX_LEVEL_P: u32 = 3000;

/// Resource limits for level enumeration and orbit search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_level_p: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_level_p: DEFAULT_MAX_LEVEL_P,
        }
    }
}

impl Budget {
    pub(crate) fn check(&self, p: u32) -> crate::error::Result<()> {
        if p > self.max_level_p {
            return Err(crate::error::Error::TooLarge {
                p: p as u64,
                max: self.max_level_p as u64,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub x: Fp,
    pub y: Fp,
    pub z: Fp,
}

impl Triple {
    pub fn new(x: Fp, y: Fp, z: Fp) -> Triple {
        Triple { x, y, z }
    }

    pub fn from_ints(field: &PrimeField, x: i64, y: i64, z: i64) -> Triple {
        Triple::new(field.elem(x), field.elem(y), field.elem(z))
    }

    pub fn level(&self) -> Fp {
        let Triple { x, y, z } = *self;
        x * x + y * y + z * z - x * y * z - Fp::new(2, x.modulus())
    }

    pub fn r(&self) -> Triple {
        Triple::new(self.y, self.x, self.z)
    }

    pub fn s(&self) -> Triple {
        Triple::new(self.x, self.z, self.y)
    }

    /// The Vieta involution in the last coordinate.
    pub fn t_vieta(&self) -> Triple {
        Triple::new(self.x, self.y, self.x * self.y - self.z)
    }

    pub fn moves(&self) -> [Triple; 3] {
        [self.r(), self.s(), self.t_vieta()]
    }

    /// `x + p·y + p²·z`.
    pub fn pack(&self) -> usize {
        let p = self.x.modulus() as usize;
        self.x.value() as usize + p * (self.y.value() as usize + p * self.z.value() as usize)
    }

    pub fn unpack(code: usize, p: u32) -> Triple {
        let q = p as usize;
        let f = |v: usize| Fp::new((v % q) as i64, p);
        Triple::new(f(code), f(code / q), f(code / (q * q)))
    }

    pub fn nonzero_coordinates(&self) -> usize {
        [self.x, self.y, self.z]
            .iter()
            .filter(|c| !c.is_zero())
            .count()
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.serialize_element(&self.z)?;
        t.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn level_examples() {
        let k = f(7);
        assert_eq!(Triple::from_ints(&k, 0, 0, 0).level(), k.elem(-2));
        assert_eq!(Triple::from_ints(&k, 1, 1, 0).level(), k.zero());
        assert_eq!(Triple::from_ints(&k, 3, 3, 3).level(), k.elem(-2));
    }

    #[test]
    fn move_examples() {
        let k = f(7);
        let t = Triple::from_ints(&k, 1, 1, 0);
        assert_eq!(t.t_vieta(), Triple::from_ints(&k, 1, 1, 1));
        assert_eq!(t.t_vieta().level(), k.zero());
        let u = Triple::from_ints(&k, 2, 0, 3);
        assert_eq!(u.s().r(), Triple::from_ints(&k, 3, 2, 0));
    }

    #[test]
    fn moves_are_level_preserving_involutions_on_f7() {
        for code in 0..343 {
            let t = Triple::unpack(code, 7);
            assert_eq!(t.pack(), code);
            for m in t.moves() {
                assert_eq!(m.level(), t.level());
            }
            assert_eq!(t.r().r(), t);
            assert_eq!(t.s().s(), t);
            assert_eq!(t.t_vieta().t_vieta(), t);
        }
    }

    fn closure(start: Triple, gens: &[fn(&Triple) -> Triple]) -> HashSet<Triple> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for g in gens {
                let u = g(&t);
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }

    #[test]
    fn rst_generate_the_full_symmetry_group() {
        let vx: fn(&Triple) -> Triple = |t| Triple::new(t.y * t.z - t.x, t.y, t.z);
        let vy: fn(&Triple) -> Triple = |t| Triple::new(t.x, t.x * t.z - t.y, t.z);
        let rotate: fn(&Triple) -> Triple = |t| Triple::new(t.y, t.z, t.x);
        let full = [Triple::r, Triple::s, rotate, Triple::t_vieta, vx, vy];
        let small = [Triple::r, Triple::s, Triple::t_vieta];
        for code in 0..343 {
            let t = Triple::unpack(code, 7);
            assert_eq!(closure(t, &small), closure(t, &full));
        }
    }

    #[test]
    fn singular_triples_never_mix_hyperbolic_and_elliptic() {
        use crate::ff::TraceClass::{Elliptic, Hyperbolic};
        for p in [7u64, 11, 13, 17, 19, 23, 29, 31] {
            let k = f(p);
            let set = enumerate_level(&k, k.elem(2), &Budget::default()).unwrap();
            for t in set.iter() {
                let classes: Vec<_> = [t.x, t.y, t.z]
                    .iter()
                    .map(|c| k.classify_trace(*c))
                    .collect();
                assert!(
                    !(classes.contains(&Hyperbolic) && classes.contains(&Elliptic)),
                    "p={p} {t:?}"
                );
            }
        }
    }

    #[test]
    fn serializes_as_array() {
        let k = f(7);
        let t = Triple::from_ints(&k, 1, 2, 3);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[1,2,3]");
    }

    proptest! {
        #[test]
        fn moves_preserve_level(x in 0i64..101, y in 0i64..101, z in 0i64..101) {
            let k = f(101);
            let t = Triple::from_ints(&k, x, y, z);
            for m in t.moves() {
                prop_assert_eq!(m.level(), t.level());
            }
        }
    }
}
