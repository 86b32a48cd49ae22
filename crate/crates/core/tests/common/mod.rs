//! Shared helpers for the integration suites: independent brute-force
//! oracles, exhaustive generators, and seeded randomness.

#![allow(dead_code)]

use std::collections::HashSet;
use std::ops::ControlFlow;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use connective::{
    enumerate_free, BrunnianTree, ConnectivityStructure, FreeFamily, GroundSet, Subset,
};

pub fn ground(n: u32) -> GroundSet {
    GroundSet::new(n).unwrap()
}

pub fn subset(elements: &[u32]) -> Subset {
    Subset::from_elements(elements.iter().copied()).unwrap()
}

pub fn subsets(sets: &[&[u32]]) -> Vec<Subset> {
    sets.iter().map(|s| subset(s)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform nonempty subset of {1..n} with at least `min_card` points.
pub fn random_subset(rng: &mut ChaCha8Rng, n: u32, min_card: u32) -> Subset {
    assert!(
        n >= min_card,
        "no subsets of {n} points with {min_card} elements"
    );
    loop {
        let mask = rng.gen_range(1..(1u64 << n));
        if mask.count_ones() >= min_card {
            return Subset::from_mask(mask).unwrap();
        }
    }
}

pub fn random_generators(rng: &mut ChaCha8Rng, n: u32, max_count: usize) -> Vec<Subset> {
    if n < 2 {
        return Vec::new();
    }
    let count = rng.gen_range(0..=max_count);
    (0..count).map(|_| random_subset(rng, n, 2)).collect()
}

/// The literal closure axiom: every subfamily of the connected family
/// (singletons included) with a common point has its union in the family.
/// Exponential in the family size; independent of the library's pairwise
/// validator.
pub fn brute_axiom_holds(n: u32, sets: &[Subset]) -> bool {
    let mut family: Vec<u64> = (0..n).map(|k| 1u64 << k).collect();
    family.extend(
        sets.iter()
            .map(|s| s.mask())
            .filter(|m| m.count_ones() >= 2),
    );
    family.sort_unstable();
    family.dedup();
    assert!(family.len() <= 20, "brute-force axiom check blew up");
    for choice in 1u64..(1 << family.len()) {
        let mut inter = u64::MAX;
        let mut uni = 0u64;
        let mut bits = choice;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            inter &= family[i];
            uni |= family[i];
        }
        if inter != 0 && family.binary_search(&uni).is_err() {
            return false;
        }
    }
    true
}

/// One application of the union-building operator: all unions of
/// subfamilies with a common point. Computed per point as the set of
/// OR-combinations of the members holding that point, which is the same
/// set of unions without enumerating subfamilies.
pub fn union_operator_step(n: u32, family: &HashSet<u64>) -> HashSet<u64> {
    let mut out = HashSet::new();
    for x in 0..n {
        let holders: Vec<u64> = family.iter().copied().filter(|m| m >> x & 1 == 1).collect();
        let mut spans: HashSet<u64> = HashSet::new();
        for &h in &holders {
            let mut next: Vec<u64> = vec![h];
            for &sp in &spans {
                next.push(sp | h);
            }
            spans.extend(next);
        }
        out.extend(spans);
    }
    out
}

/// Same operator computed the slow way, straight off the definition.
pub fn union_operator_step_brute(family: &[u64]) -> HashSet<u64> {
    assert!(family.len() <= 16);
    let mut out = HashSet::new();
    for choice in 1u64..(1 << family.len()) {
        let mut inter = u64::MAX;
        let mut uni = 0u64;
        let mut bits = choice;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            inter &= family[i];
            uni |= family[i];
        }
        if inter != 0 {
            out.insert(uni);
        }
    }
    out
}

/// Iterates the union-building operator from generators plus singletons
/// until stationary; returns the stored (non-singleton) sets, sorted.
pub fn union_operator_fixpoint(n: u32, generators: &[Subset]) -> Vec<u64> {
    let mut family: HashSet<u64> = (0..n).map(|k| 1u64 << k).collect();
    family.extend(generators.iter().map(|s| s.mask()));
    loop {
        let next = union_operator_step(n, &family);
        if next == family {
            break;
        }
        family = next;
    }
    let mut out: Vec<u64> = family.into_iter().filter(|m| m.count_ones() >= 2).collect();
    out.sort_unstable();
    out
}

/// Every structure on n points, via the enumeration walk.
pub fn all_structures(n: u32) -> Vec<ConnectivityStructure> {
    let mut out = Vec::new();
    enumerate_free(ground(n), |family| {
        out.push(family.to_structure());
        ControlFlow::Continue(())
    })
    .unwrap();
    out
}

/// Every free family on n points, in visit order.
pub fn all_free_families(n: u32) -> Vec<FreeFamily> {
    let mut out = Vec::new();
    enumerate_free(ground(n), |family| {
        out.push(family.clone());
        ControlFlow::Continue(())
    })
    .unwrap();
    out
}

/// Every candidate family over the subsets of {1..n} with two or more
/// points, valid or not. Exponential: n <= 3 only.
pub fn all_candidate_families(n: u32) -> Vec<Vec<Subset>> {
    let pool: Vec<Subset> = (3..(1u64 << n))
        .filter(|m| m.count_ones() >= 2)
        .map(|m| Subset::from_mask(m).unwrap())
        .collect();
    assert!(pool.len() <= 16);
    (0..(1u64 << pool.len()))
        .map(|choice| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, s)| *s)
                .collect()
        })
        .collect()
}

/// All Brunnian trees with exactly `leaves` leaves, including reorderings.
pub fn ordered_trees(leaves: u32) -> Vec<BrunnianTree> {
    if leaves == 1 {
        return vec![BrunnianTree::Leaf];
    }
    let mut out = Vec::new();
    for split in compositions(leaves, 2) {
        let child_choices: Vec<Vec<BrunnianTree>> =
            split.iter().map(|&part| ordered_trees(part)).collect();
        cartesian(&child_choices, &mut Vec::new(), &mut |children| {
            out.push(BrunnianTree::Node(children.to_vec()));
        });
    }
    out
}

/// Trees with at most `max_leaves` leaves, deduplicated up to child order.
pub fn trees_up_to_reordering(max_leaves: u32) -> Vec<BrunnianTree> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for leaves in 1..=max_leaves {
        for tree in ordered_trees(leaves) {
            if seen.insert(canonical_tree_form(&tree)) {
                out.push(tree);
            }
        }
    }
    out
}

/// Order-insensitive fingerprint of a tree: children sorted recursively.
pub fn canonical_tree_form(tree: &BrunnianTree) -> String {
    match tree {
        BrunnianTree::Leaf => ".".to_string(),
        BrunnianTree::Node(children) => {
            let mut parts: Vec<String> = children.iter().map(canonical_tree_form).collect();
            parts.sort();
            format!("({})", parts.join(","))
        }
    }
}

/// Ordered ways to write `total` as a sum of at least `min_parts` positive
/// integers.
fn compositions(total: u32, min_parts: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, min_parts: u32) {
        if rest == 0 {
            if current.len() >= min_parts as usize {
                out.push(current.clone());
            }
            return;
        }
        for first in 1..=rest {
            current.push(first);
            rec(rest - first, current, out, min_parts);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, &mut Vec::new(), &mut out, min_parts);
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>], current: &mut Vec<T>, emit: &mut impl FnMut(&[T])) {
    match choices.split_first() {
        None => emit(current),
        Some((first, rest)) => {
            for item in first {
                current.push(item.clone());
                cartesian(rest, current, emit);
                current.pop();
            }
        }
    }
}

/// A random free family grown by right-completion: each step appends a
/// random subset that lies outside the closure and above every member.
/// Such extensions always preserve freeness, so this samples the
/// enumeration tree.
pub fn random_free_family(rng: &mut ChaCha8Rng, n: u32, max_members: usize) -> Vec<Subset> {
    let g = ground(n);
    let mut members: Vec<Subset> = Vec::new();
    let target = rng.gen_range(0..=max_members);
    while members.len() < target {
        let closure = ConnectivityStructure::generate(g, &members).unwrap();
        let floor = members.last().map_or(0, |m| m.mask());
        let candidates: Vec<Subset> = (floor.max(3)..(1u64 << n))
            .filter(|m| m.count_ones() >= 2)
            .map(|m| Subset::from_mask(m).unwrap())
            .filter(|s| !closure.is_connected(*s).unwrap())
            .collect();
        let Some(next) = candidates.choose(rng) else {
            break;
        };
        members.push(*next);
    }
    members
}
