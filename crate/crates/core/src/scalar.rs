//! Integer scalars for the lattice part of group elements.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Coordinate type of the rank-n lattice `Z^X`.
///
/// Every fixed-width signed integer and `num_bigint::BigInt` qualify. All
/// arithmetic goes through the checked operations, so a fixed-width
/// instantiation reports overflow instead of wrapping.
pub trait Coord:
    Signed + CheckedAdd + CheckedSub + FromPrimitive + ToPrimitive + Clone + Ord + Hash + Debug + Display + Send + Sync
{
    fn checked_negate(&self) -> Option<Self> {
        Self::zero().checked_sub(self)
    }
}

impl<T> Coord for T where
    T: Signed
        + CheckedAdd
        + CheckedSub
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Ord
        + Hash
        + Debug
        + Display
        + Send
        + Sync
{
}
