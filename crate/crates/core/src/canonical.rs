//! Canonical labeling by brute force over all point permutations.
//!
//! Small ground sets only (n <= 8): the canonical form is the relabeling
//! whose sorted connected family is lexicographically least. On a fixed
//! orbit all candidates have the same number of sets, so the least sorted
//! list is found by looking at the smallest mask where two families differ.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::space::Subset;
use crate::structure::ConnectivityStructure;

pub(crate) const CANONICAL_MAX_POINTS: u32 = 8;

/// Relabeling tables for all n! permutations, in lexicographic permutation
/// order (the identity first). Entry `table(p)[m]` is the image of mask m.
pub(crate) struct Relabelings {
    tables: Vec<Vec<u16>>,
}

impl Relabelings {
    pub(crate) fn new(n: u32) -> Self {
        assert!(n <= CANONICAL_MAX_POINTS);
        let size = 1usize << n;
        let tables = (1..=n)
            .permutations(n as usize)
            .map(|perm| {
                let mut table = vec![0u16; size];
                for (m, slot) in table.iter_mut().enumerate() {
                    let mut bits = m;
                    let mut out = 0u16;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        out |= 1 << (perm[b] - 1);
                        bits &= bits - 1;
                    }
                    *slot = out;
                }
                table
            })
            .collect();
        Relabelings { tables }
    }

    pub(crate) fn len(&self) -> usize {
        self.tables.len()
    }

    pub(crate) fn table(&self, i: usize) -> &[u16] {
        &self.tables[i]
    }
}

/// A family of subsets over a small ground set, one bit per possible mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct FamilyBits(pub(crate) [u64; 4]);

impl FamilyBits {
    pub(crate) const EMPTY: FamilyBits = FamilyBits([0; 4]);

    pub(crate) fn insert(&mut self, mask: u16) {
        self.0[(mask >> 6) as usize] |= 1 << (mask & 63);
    }

    pub(crate) fn from_sets(sets: &[Subset]) -> Self {
        let mut bits = Self::EMPTY;
        for s in sets {
            bits.insert(s.mask() as u16);
        }
        bits
    }

    pub(crate) fn to_sets(self) -> Vec<Subset> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                out.push(Subset::from_mask((w as u64) * 64 + b as u64).unwrap());
            }
        }
        out
    }

    pub(crate) fn relabel(self, table: &[u16]) -> FamilyBits {
        let mut out = Self::EMPTY;
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                out.insert(table[w * 64 + b as usize]);
            }
        }
        out
    }

    /// True when self comes before other in the sorted-list lexicographic
    /// order. Only meaningful for families with the same number of sets,
    /// where the list with the smaller first-divergent mask wins.
    pub(crate) fn precedes(&self, other: &FamilyBits) -> bool {
        for w in 0..4 {
            let diff = self.0[w] ^ other.0[w];
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return self.0[w] >> bit & 1 == 1;
            }
        }
        false
    }
}

impl ConnectivityStructure {
    /// The relabeling of the structure whose sorted connected family is
    /// lexicographically least over all n! point permutations. Invariant
    /// under relabeling of the input.
    pub fn canonicalize(&self) -> Result<Self> {
        let n = self.size();
        if n > CANONICAL_MAX_POINTS {
            return Err(Error::TooLarge {
                what: "canonicalization",
                n,
                limit: CANONICAL_MAX_POINTS,
            });
        }
        Ok(self.canonical_with(&Relabelings::new(n)))
    }

    pub(crate) fn canonical_with(&self, relabelings: &Relabelings) -> Self {
        let bits = FamilyBits::from_sets(self.sets());
        let mut best = bits;
        for i in 1..relabelings.len() {
            let candidate = bits.relabel(relabelings.table(i));
            if candidate.precedes(&best) {
                best = candidate;
            }
        }
        ConnectivityStructure::from_parts_unchecked(self.ground(), best.to_sets())
    }
}
