//! Ground sets and bitmask subsets.
//!
//! Points are numbered 1..=n and a subset stores point k in bit k-1 of one
//! machine word. The numeric order on masks coincides with the weight order
//! used by the enumeration (the weight of a subset is twice its mask value),
//! so sorting by mask is all the ordering machinery we ever need.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The point set {1, .., n} a structure lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    /// Subsets are single machine words, so 64 points is the hard ceiling.
    pub const MAX_POINTS: u32 = 64;

    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > Self::MAX_POINTS {
            return Err(Error::InvalidGroundSize { n });
        }
        Ok(GroundSet { n })
    }

    pub fn size(self) -> u32 {
        self.n
    }

    /// The whole point set as a subset.
    pub fn full(self) -> Subset {
        Subset {
            mask: full_mask(self.n),
        }
    }

    pub fn contains(self, subset: Subset) -> bool {
        subset.mask & !full_mask(self.n) == 0
    }

    pub(crate) fn check(self, subset: Subset) -> Result<()> {
        let excess = subset.mask & !full_mask(self.n);
        if excess == 0 {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element: excess.trailing_zeros() + 1,
                limit: self.n,
            })
        }
    }

    pub fn singletons(self) -> impl Iterator<Item = Subset> {
        (0..self.n).map(|k| Subset { mask: 1 << k })
    }
}

fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A nonempty set of points, stored as a bitmask (bit k-1 holds point k).
///
/// The derived `Ord` compares masks numerically, which is exactly the weight
/// order on subsets; all sorted collections in this crate rely on that.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset {
    mask: u64,
}

impl Subset {
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(Error::EmptySet);
        }
        Ok(Subset { mask })
    }

    pub fn from_elements<I>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut mask = 0u64;
        for e in elements {
            if e == 0 || e > GroundSet::MAX_POINTS {
                return Err(Error::OutOfRange {
                    element: e,
                    limit: GroundSet::MAX_POINTS,
                });
            }
            mask |= 1 << (e - 1);
        }
        Self::from_mask(mask)
    }

    pub fn singleton(element: u32) -> Result<Self> {
        Self::from_elements([element])
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    // subsets are never empty, so there is no is_empty to pair with len
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_singleton(self) -> bool {
        self.len() == 1
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=GroundSet::MAX_POINTS).contains(&element) && self.mask >> (element - 1) & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset {
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(self, other: Subset) -> Option<Subset> {
        match self.mask & other.mask {
            0 => None,
            mask => Some(Subset { mask }),
        }
    }

    pub fn overlaps(self, other: Subset) -> bool {
        self.mask & other.mask != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.mask != other.mask && self.is_subset_of(other)
    }

    /// Points of `self` outside `other`, or None when there are none.
    pub fn difference(self, other: Subset) -> Option<Subset> {
        match self.mask & !other.mask {
            0 => None,
            mask => Some(Subset { mask }),
        }
    }

    pub fn min_element(self) -> u32 {
        self.mask.trailing_zeros() + 1
    }

    /// Sum of 2^k over the points k. Strictly monotone in the mask value
    /// (it is twice the mask), so mask comparisons realize this order.
    pub fn weight(self) -> u128 {
        (self.mask as u128) << 1
    }

    pub fn elements(self) -> Elements {
        Elements { mask: self.mask }
    }
}

pub struct Elements {
    mask: u64,
}

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.mask == 0 {
            return None;
        }
        let e = self.mask.trailing_zeros() + 1;
        self.mask &= self.mask - 1;
        Some(e)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Parses comma-separated elements: "1,2,5".
    fn from_str(s: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let e: u32 = part
                .parse()
                .map_err(|_| Error::Schema(format!("invalid element '{part}'")))?;
            elements.push(e);
        }
        Self::from_elements(elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(65).is_err());
        assert_eq!(GroundSet::new(64).unwrap().full().len(), 64);
        assert_eq!(GroundSet::new(3).unwrap().full().mask(), 0b111);
    }

    #[test]
    fn subset_rejects_empty() {
        assert_eq!(Subset::from_mask(0), Err(Error::EmptySet));
        assert_eq!(Subset::from_elements([]), Err(Error::EmptySet));
    }

    #[test]
    fn weight_is_twice_the_mask() {
        for mask in 1u64..200 {
            let s = Subset::from_mask(mask).unwrap();
            assert_eq!(s.weight(), 2 * mask as u128);
        }
    }

    #[test]
    fn mask_order_matches_weight_order() {
        for a in 1u64..100 {
            for b in 1u64..100 {
                let sa = Subset::from_mask(a).unwrap();
                let sb = Subset::from_mask(b).unwrap();
                assert_eq!(sa.cmp(&sb), sa.weight().cmp(&sb.weight()));
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let s = Subset::from_elements([2, 1, 5]).unwrap();
        assert_eq!(s.to_string(), "{1,2,5}");
        assert_eq!("1, 2,5".parse::<Subset>().unwrap(), s);
        assert!("1,x".parse::<Subset>().is_err());
        assert_eq!("".parse::<Subset>(), Err(Error::EmptySet));
    }

    #[test]
    fn element_range_checks() {
        assert_eq!(
            Subset::from_elements([1, 65]),
            Err(Error::OutOfRange {
                element: 65,
                limit: 64
            })
        );
        let g = GroundSet::new(3).unwrap();
        let s = Subset::from_elements([1, 4]).unwrap();
        assert_eq!(
            g.check(s),
            Err(Error::OutOfRange {
                element: 4,
                limit: 3
            })
        );
    }
}
