//! Irreducible connected parts and the covering diagram they form.
//!
//! A connected part is reducible when it is the union of two proper
//! connected subsets with a common point. The irreducible parts (singletons
//! included) determine a finite structure completely: closing them under
//! overlapping unions gives back every connected set.

use crate::error::{Error, Result};
use crate::space::{GroundSet, Subset};
use crate::structure::ConnectivityStructure;

/// Covering diagram of the irreducible connected parts.
///
/// Vertices are mask-sorted. An edge (a, b) means vertex a strictly contains
/// vertex b with no other vertex strictly between; since supersets have
/// larger masks, edges always point from a higher index to a lower one, so
/// the graph is acyclic by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGraph {
    vertices: Vec<Subset>,
    edges: Vec<(usize, usize)>,
    orders: Vec<u32>,
}

impl GenericGraph {
    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    /// Covering edges as (container, contained) index pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Per-vertex order: 0 on the singletons, one more than the largest
    /// order among covered vertices otherwise.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn space_order(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(0)
    }

    pub fn children(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |(a, _)| *a == vertex)
            .map(|&(_, b)| b)
    }
}

impl ConnectivityStructure {
    /// True when `part` is the union of two proper connected subsets with a
    /// common point. `part` itself must be connected.
    pub fn is_reducible(&self, part: Subset) -> Result<bool> {
        if !self.is_connected(part)? {
            return Err(Error::NotConnected { part });
        }
        if part.is_singleton() {
            return Ok(false);
        }
        // A singleton half would force the other half to be all of `part`,
        // so only stored sets can witness a split.
        let inside: Vec<Subset> = self
            .sets()
            .iter()
            .copied()
            .filter(|k| k.is_proper_subset_of(part))
            .collect();
        for &k1 in &inside {
            let rest = part.mask() & !k1.mask();
            for &k2 in &inside {
                // k2 covers everything k1 misses and still meets k1, so
                // their union is exactly `part`
                if rest & !k2.mask() == 0 && k2.overlaps(k1) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// All irreducible connected parts, singletons included, mask-sorted.
    pub fn irreducibles(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self.ground().singletons().collect();
        for &k in self.sets() {
            if !self.is_reducible(k).expect("stored sets are connected") {
                out.push(k);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn generic_graph(&self) -> GenericGraph {
        let vertices = self.irreducibles();
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if !b.is_proper_subset_of(a) {
                    continue;
                }
                let covered = vertices
                    .iter()
                    .any(|&c| b.is_proper_subset_of(c) && c.is_proper_subset_of(a));
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        // contained vertices come first in mask order, so one ascending
        // pass sees every child before its parents
        let mut orders = vec![0u32; vertices.len()];
        for i in 0..vertices.len() {
            let mut deepest = None;
            for &(a, b) in &edges {
                if a == i {
                    deepest = Some(deepest.map_or(orders[b], |d: u32| d.max(orders[b])));
                }
            }
            orders[i] = deepest.map_or(0, |d| d + 1);
        }
        GenericGraph {
            vertices,
            edges,
            orders,
        }
    }

    /// Order of the space: the largest order of an irreducible part.
    pub fn order(&self) -> u32 {
        self.generic_graph().space_order()
    }

    /// Rebuilds a structure from a family of vertices covering the ground
    /// set, by closing them under overlapping unions. Applied to the
    /// irreducibles of a structure this is the identity.
    pub fn reconstruct(ground: GroundSet, vertices: &[Subset]) -> Result<ConnectivityStructure> {
        let mut covered = 0u64;
        for v in vertices {
            ground.check(*v)?;
            covered |= v.mask();
        }
        let full = ground.full().mask();
        if covered != full {
            return Err(Error::CoverageGap {
                missing: Subset::from_mask(full & !covered).unwrap(),
            });
        }
        ConnectivityStructure::generate(ground, vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brunnian::brunnian_space;

    fn subs(sets: &[&[u32]]) -> Vec<Subset> {
        sets.iter()
            .map(|s| Subset::from_elements(s.iter().copied()).unwrap())
            .collect()
    }

    fn g(n: u32) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn sub(es: &[u32]) -> Subset {
        Subset::from_elements(es.iter().copied()).unwrap()
    }

    /// Four points with {1,2}, {2,3}, {1,2,3} and the full set connected.
    fn chain_cycle_space() -> ConnectivityStructure {
        ConnectivityStructure::new(g(4), &subs(&[&[1, 2], &[2, 3], &[1, 2, 3], &[1, 2, 3, 4]]))
            .unwrap()
    }

    #[test]
    fn union_of_two_proper_parts_is_reducible() {
        let s = chain_cycle_space();
        assert!(s.is_reducible(sub(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn brunnian_full_set_is_irreducible() {
        let s = brunnian_space(3).unwrap();
        assert!(!s.is_reducible(sub(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn singletons_are_irreducible() {
        let s = brunnian_space(3).unwrap();
        assert!(!s.is_reducible(sub(&[1])).unwrap());
    }

    #[test]
    fn reducibility_needs_a_connected_part() {
        let s = brunnian_space(3).unwrap();
        assert_eq!(
            s.is_reducible(sub(&[1, 2])),
            Err(Error::NotConnected { part: sub(&[1, 2]) })
        );
    }

    #[test]
    fn irreducibles_of_the_brunnian_space() {
        let s = brunnian_space(3).unwrap();
        assert_eq!(s.irreducibles(), subs(&[&[1], &[2], &[3], &[1, 2, 3]]));
    }

    #[test]
    fn irreducibles_drop_reducible_sets() {
        let s = chain_cycle_space();
        assert_eq!(
            s.irreducibles(),
            subs(&[&[1], &[2], &[1, 2], &[3], &[2, 3], &[4], &[1, 2, 3, 4]])
        );
    }

    #[test]
    fn irreducibles_of_a_discrete_space() {
        let s = ConnectivityStructure::discrete(g(2));
        assert_eq!(s.irreducibles(), subs(&[&[1], &[2]]));
    }

    #[test]
    fn brunnian_graph_is_a_star() {
        let graph = brunnian_space(3).unwrap().generic_graph();
        assert_eq!(graph.vertices(), &subs(&[&[1], &[2], &[3], &[1, 2, 3]])[..]);
        assert_eq!(graph.edges(), &[(3, 0), (3, 1), (3, 2)]);
        assert_eq!(graph.orders(), &[0, 0, 0, 1]);
    }

    #[test]
    fn chain_cycle_graph_has_a_cycle_through_the_shared_point() {
        let graph = chain_cycle_space().generic_graph();
        // vertices: {1} {2} {1,2} {3} {2,3} {4} X
        assert_eq!(
            graph.vertices(),
            &subs(&[&[1], &[2], &[1, 2], &[3], &[2, 3], &[4], &[1, 2, 3, 4]])[..]
        );
        assert_eq!(
            graph.edges(),
            &[(2, 0), (2, 1), (4, 1), (4, 3), (6, 2), (6, 4), (6, 5)]
        );
        // {2} is covered twice: the diagram is not a tree
        assert_eq!(graph.orders(), &[0, 0, 1, 0, 1, 0, 2]);
    }

    #[test]
    fn discrete_graph_has_no_edges() {
        let graph = ConnectivityStructure::discrete(g(3)).generic_graph();
        assert_eq!(graph.vertices().len(), 3);
        assert!(graph.edges().is_empty());
        assert_eq!(graph.space_order(), 0);
    }

    #[test]
    fn orders_of_reference_spaces() {
        assert_eq!(brunnian_space(3).unwrap().order(), 1);
        assert_eq!(ConnectivityStructure::discrete(g(5)).order(), 0);
        assert_eq!(chain_cycle_space().order(), 2);
    }

    #[test]
    fn reconstruct_is_generate_under_a_coverage_check() {
        let s = brunnian_space(3).unwrap();
        assert_eq!(
            ConnectivityStructure::reconstruct(g(3), &s.irreducibles()).unwrap(),
            s
        );
        let t = chain_cycle_space();
        assert_eq!(
            ConnectivityStructure::reconstruct(g(4), &t.irreducibles()).unwrap(),
            t
        );
        let singles = subs(&[&[1], &[2], &[3], &[4]]);
        assert_eq!(
            ConnectivityStructure::reconstruct(g(4), &singles).unwrap(),
            ConnectivityStructure::discrete(g(4))
        );
    }

    #[test]
    fn reconstruct_requires_coverage() {
        let err = ConnectivityStructure::reconstruct(g(4), &subs(&[&[1, 2]])).unwrap_err();
        assert_eq!(
            err,
            Error::CoverageGap {
                missing: sub(&[3, 4])
            }
        );
    }
}
