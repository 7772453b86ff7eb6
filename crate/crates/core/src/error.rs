use thiserror::Error;

use crate::surface::OrbitClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The modulus is not an odd prime above 5.
    #[error("p must be prime > 5 (got {0})")]
    InvalidModulus(u64),

    #[error("p = {p} exceeds the supported bound {max}")]
    TooLarge { p: u64, max: u64 },

    #[error("trace {0} is parabolic (t = ±2)")]
    ParabolicInput(u32),

    #[error("operands live over different fields")]
    MixedField,

    #[error("{class} orbit has size {found}, table value is {expected}")]
    SizeMismatch {
        class: OrbitClass,
        expected: usize,
        found: usize,
    },

    #[error("level {k} is not generic at p = {p}")]
    NotGeneric { p: u32, k: u32 },

    #[error("hypothesis failed: legendre(2 - k) != 1 at p = {p}, k = {k}")]
    HypothesisFailed { p: u32, k: u32 },

    /// A closure of the given size matched none of the subgroup classes.
    #[error("subgroup of order {0} does not match any class")]
    Unclassified(usize),
}
