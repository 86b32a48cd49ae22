//! Integral connectivity structures on a finite ground set.
//!
//! A structure stores only its connected subsets with two or more points,
//! strictly sorted by mask; singletons are connected by convention and never
//! stored. The defining axiom is closure under unions of overlapping
//! members, which for finite families is equivalent to the closure under
//! unions of arbitrary subfamilies with a common point.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::space::{GroundSet, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectivityStructure {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl ConnectivityStructure {
    /// Validates `sets` as the connected family of a structure on `ground`.
    ///
    /// Singleton inputs are dropped (they are implicit), duplicates are
    /// merged, and the first overlapping pair whose union is missing is
    /// reported as an `AxiomViolation`.
    pub fn new(ground: GroundSet, sets: &[Subset]) -> Result<Self> {
        let sets = normalize(ground, sets)?;
        // singletons never violate the axiom: {x} with x in K unions to K
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if a.overlaps(b) && sets.binary_search(&a.union(b)).is_err() {
                    return Err(Error::AxiomViolation { a, b });
                }
            }
        }
        Ok(ConnectivityStructure { ground, sets })
    }

    /// The smallest integral structure whose connected family contains all
    /// `generators`: the fixpoint of adding unions of overlapping pairs.
    pub fn generate(ground: GroundSet, generators: &[Subset]) -> Result<Self> {
        let seeds = normalize(ground, generators)?;
        Ok(Self::close(ground, seeds))
    }

    fn close(ground: GroundSet, seeds: Vec<Subset>) -> Self {
        let mut members: Vec<u64> = Vec::new();
        let mut seen: HashSet<u64> = HashSet::new();
        let mut work: Vec<u64> = seeds.iter().map(|s| s.mask()).collect();
        close_worklist(&mut members, &mut seen, &mut work);
        members.sort_unstable();
        let sets = members
            .into_iter()
            .map(|m| Subset::from_mask(m).unwrap())
            .collect();
        ConnectivityStructure { ground, sets }
    }

    /// Structure whose only connected parts are the singletons.
    pub fn discrete(ground: GroundSet) -> Self {
        ConnectivityStructure {
            ground,
            sets: Vec::new(),
        }
    }

    /// The one-point space.
    pub fn point() -> Self {
        Self::discrete(GroundSet::new(1).unwrap())
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn size(&self) -> u32 {
        self.ground.size()
    }

    /// The stored connected subsets: two or more points each, mask-sorted.
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    /// Every connected subset, singletons included, mask-sorted.
    pub fn all_connected(&self) -> Vec<Subset> {
        let mut all: Vec<Subset> = self
            .ground
            .singletons()
            .chain(self.sets.iter().copied())
            .collect();
        all.sort_unstable();
        all
    }

    pub fn is_connected(&self, part: Subset) -> Result<bool> {
        self.ground.check(part)?;
        Ok(part.is_singleton() || self.sets.binary_search(&part).is_ok())
    }

    /// Maximal connected parts of the space, mask-sorted. They partition the
    /// ground set.
    pub fn components(&self) -> Vec<Subset> {
        self.components_within(self.ground.full())
            .expect("full set is in range")
    }

    /// Maximal connected parts of the subspace induced on `within`,
    /// mask-sorted.
    pub fn components_within(&self, within: Subset) -> Result<Vec<Subset>> {
        self.ground.check(within)?;
        let inside: Vec<u64> = self
            .sets
            .iter()
            .map(|k| k.mask())
            .filter(|m| m & !within.mask() == 0)
            .collect();
        let mut remaining = within.mask();
        let mut out = Vec::new();
        while remaining != 0 {
            // grow from the lowest unplaced point: unioning overlapping
            // connected sets stays connected, so the fixpoint is maximal
            let mut comp = remaining & remaining.wrapping_neg();
            loop {
                let before = comp;
                for &m in &inside {
                    if m & comp != 0 {
                        comp |= m;
                    }
                }
                if comp == before {
                    break;
                }
            }
            out.push(Subset::from_mask(comp).unwrap());
            remaining &= !comp;
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Extends the connected family with `set` and recloses, reusing the
    /// already-closed family instead of starting over.
    pub fn extend_with(&self, set: Subset) -> Result<Self> {
        self.ground.check(set)?;
        if set.is_singleton() || self.sets.binary_search(&set).is_ok() {
            return Ok(self.clone());
        }
        let mut members: Vec<u64> = self.sets.iter().map(|s| s.mask()).collect();
        let mut seen: HashSet<u64> = members.iter().copied().collect();
        let mut work = vec![set.mask()];
        close_worklist(&mut members, &mut seen, &mut work);
        members.sort_unstable();
        let sets = members
            .into_iter()
            .map(|m| Subset::from_mask(m).unwrap())
            .collect();
        Ok(ConnectivityStructure {
            ground: self.ground,
            sets,
        })
    }

    /// Applies a permutation to every point: point k becomes `perm[k-1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        let n = self.size();
        check_permutation(n, perm)?;
        let mut sets: Vec<Subset> = self.sets.iter().map(|s| relabel_subset(*s, perm)).collect();
        sets.sort_unstable();
        Ok(ConnectivityStructure {
            ground: self.ground,
            sets,
        })
    }

    /// Substructure induced on `within`, with the surviving points
    /// renumbered 1..k in increasing original order.
    pub fn subspace(&self, within: Subset) -> Result<Self> {
        self.ground.check(within)?;
        let elements: Vec<u32> = within.elements().collect();
        let ground = GroundSet::new(elements.len() as u32)?;
        let sets: Vec<Subset> = self
            .sets
            .iter()
            .filter(|k| k.is_subset_of(within))
            .map(|k| {
                let mut mask = 0u64;
                for (new, &old) in elements.iter().enumerate() {
                    if k.contains(old) {
                        mask |= 1 << new;
                    }
                }
                Subset::from_mask(mask).unwrap()
            })
            .collect();
        // bit extraction is monotone on subsets of a fixed support
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        Ok(ConnectivityStructure { ground, sets })
    }

    /// Builds a structure from an already sorted, already closed family.
    pub(crate) fn from_parts_unchecked(ground: GroundSet, sets: Vec<Subset>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(sets
            .iter()
            .all(|s| !s.is_singleton() && ground.contains(*s)));
        ConnectivityStructure { ground, sets }
    }
}

fn close_worklist(members: &mut Vec<u64>, seen: &mut HashSet<u64>, work: &mut Vec<u64>) {
    while let Some(m) = work.pop() {
        if !seen.insert(m) {
            continue;
        }
        for &v in members.iter() {
            if v & m != 0 {
                let w = v | m;
                if !seen.contains(&w) {
                    work.push(w);
                }
            }
        }
        members.push(m);
    }
}

/// Checks range, drops singletons, sorts, and deduplicates.
fn normalize(ground: GroundSet, sets: &[Subset]) -> Result<Vec<Subset>> {
    let mut out = Vec::with_capacity(sets.len());
    for &s in sets {
        ground.check(s)?;
        if !s.is_singleton() {
            out.push(s);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub(crate) fn relabel_subset(set: Subset, perm: &[u32]) -> Subset {
    let mut mask = 0u64;
    for e in set.elements() {
        mask |= 1 << (perm[(e - 1) as usize] - 1);
    }
    Subset::from_mask(mask).unwrap()
}

pub(crate) fn check_permutation(n: u32, perm: &[u32]) -> Result<()> {
    if perm.len() != n as usize {
        return Err(Error::Schema(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen = 0u64;
    for &p in perm {
        if p == 0 || p > n {
            return Err(Error::OutOfRange {
                element: p,
                limit: n,
            });
        }
        seen |= 1 << (p - 1);
    }
    if seen.count_ones() != n {
        return Err(Error::Schema("not a permutation".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subs(sets: &[&[u32]]) -> Vec<Subset> {
        sets.iter()
            .map(|s| Subset::from_elements(s.iter().copied()).unwrap())
            .collect()
    }

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn valid_family_is_accepted() {
        let s = ConnectivityStructure::new(g(3), &subs(&[&[1, 2], &[2, 3], &[1, 2, 3]])).unwrap();
        assert_eq!(s.sets(), &subs(&[&[1, 2], &[2, 3], &[1, 2, 3]])[..]);
    }

    #[test]
    fn empty_family_is_discrete() {
        let s = ConnectivityStructure::new(g(3), &[]).unwrap();
        assert!(s.sets().is_empty());
        assert_eq!(s, ConnectivityStructure::discrete(g(3)));
    }

    #[test]
    fn missing_union_is_reported() {
        let err = ConnectivityStructure::new(g(3), &subs(&[&[1, 2], &[2, 3]])).unwrap_err();
        assert_eq!(
            err,
            Error::AxiomViolation {
                a: Subset::from_elements([1, 2]).unwrap(),
                b: Subset::from_elements([2, 3]).unwrap(),
            }
        );
    }

    #[test]
    fn generate_closes_overlapping_pairs() {
        let s = ConnectivityStructure::generate(g(3), &subs(&[&[1, 2], &[2, 3]])).unwrap();
        assert_eq!(s.sets(), &subs(&[&[1, 2], &[2, 3], &[1, 2, 3]])[..]);
    }

    #[test]
    fn generate_reaches_the_fixpoint_through_new_unions() {
        let s = ConnectivityStructure::generate(g(4), &subs(&[&[1, 2], &[2, 3], &[1, 2, 3, 4]]))
            .unwrap();
        assert_eq!(
            s.sets(),
            &subs(&[&[1, 2], &[2, 3], &[1, 2, 3], &[1, 2, 3, 4]])[..]
        );
    }

    #[test]
    fn generate_of_nothing_is_discrete() {
        let s = ConnectivityStructure::generate(g(5), &[]).unwrap();
        assert_eq!(s, ConnectivityStructure::discrete(g(5)));
    }

    #[test]
    fn connectivity_queries() {
        let s = ConnectivityStructure::new(g(3), &subs(&[&[1, 2, 3]])).unwrap();
        assert!(s
            .is_connected(Subset::from_elements([1, 2, 3]).unwrap())
            .unwrap());
        assert!(!s
            .is_connected(Subset::from_elements([1, 2]).unwrap())
            .unwrap());
        assert!(s.is_connected(Subset::singleton(2).unwrap()).unwrap());
        assert!(s
            .is_connected(Subset::from_elements([1, 4]).unwrap())
            .is_err());
    }

    #[test]
    fn components_split_off_isolated_points() {
        let s = ConnectivityStructure::new(g(3), &subs(&[&[1, 2]])).unwrap();
        assert_eq!(s.components(), subs(&[&[1, 2], &[3]]));
    }

    #[test]
    fn components_of_a_connected_space() {
        let s = ConnectivityStructure::new(g(3), &subs(&[&[1, 2, 3]])).unwrap();
        assert_eq!(s.components(), subs(&[&[1, 2, 3]]));
    }

    #[test]
    fn components_within_a_subset() {
        let s = ConnectivityStructure::discrete(g(4));
        let within = Subset::from_elements([2, 4]).unwrap();
        assert_eq!(s.components_within(within).unwrap(), subs(&[&[2], &[4]]));
    }

    #[test]
    fn extend_with_matches_regeneration() {
        let s = ConnectivityStructure::generate(g(4), &subs(&[&[1, 2], &[3, 4]])).unwrap();
        let extended = s
            .extend_with(Subset::from_elements([2, 3]).unwrap())
            .unwrap();
        let direct =
            ConnectivityStructure::generate(g(4), &subs(&[&[1, 2], &[3, 4], &[2, 3]])).unwrap();
        assert_eq!(extended, direct);
    }

    #[test]
    fn relabel_permutes_points() {
        let s = ConnectivityStructure::new(g(3), &subs(&[&[2, 3]])).unwrap();
        let r = s.relabel(&[2, 1, 3]).unwrap();
        assert_eq!(r.sets(), &subs(&[&[1, 3]])[..]);
        assert!(s.relabel(&[1, 1, 2]).is_err());
    }

    #[test]
    fn subspace_renumbers_points() {
        let s = ConnectivityStructure::new(g(4), &subs(&[&[2, 4]])).unwrap();
        let sub = s
            .subspace(Subset::from_elements([2, 3, 4]).unwrap())
            .unwrap();
        assert_eq!(sub.size(), 3);
        assert_eq!(sub.sets(), &subs(&[&[1, 3]])[..]);
    }
}
