//! Exhaustive walk over the free families on {1..n}.
//!
//! Families grow by appending subsets in increasing mask order, so every
//! free family is produced exactly once: strip the largest member and you
//! get its unique parent. A subset qualifies as an extension when its mask
//! is not below the last member and it is not already connected in the
//! closure of the family; the extended family is then free automatically.
//! The closure travels along and is only ever extended incrementally.
//!
//! The counting entry points drop the member lists entirely and keep the
//! closure as a flat bitset over all 2^n masks, which is what makes the
//! larger runs (n = 6 and up) tractable.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::canonical::Relabelings;
use crate::error::{Error, Result};
use crate::free::FreeFamily;
use crate::space::{GroundSet, Subset};
use crate::structure::ConnectivityStructure;

/// Hard bound for the exhaustive walks: 2^n masks must stay enumerable.
pub const ENUM_MAX_POINTS: u32 = 8;
/// Bound for isomorphism-class counting; n = 6 is already a long run.
pub const ISO_MAX_POINTS: u32 = 6;

/// Aggregate counts over one enumeration run.
///
/// `total` counts free families, equivalently structures; `connected` those
/// whose full point set is connected; `irreducibly_connected` those whose
/// full point set is itself a member, i.e. an irreducible connected part.
/// `irreducibly_connected` always equals `total - connected`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub total: u64,
    pub connected: u64,
    pub irreducibly_connected: u64,
    pub max_family_size: u32,
    /// Entry i counts the families with exactly i members.
    pub size_histogram: Vec<u64>,
    /// Set when a visitor stopped the walk early.
    pub partial: bool,
}

impl EnumStats {
    fn record(&mut self, size: u32, connected: bool, full_member: bool) {
        self.total += 1;
        if connected {
            self.connected += 1;
        }
        if full_member {
            self.irreducibly_connected += 1;
        }
        if size > self.max_family_size {
            self.max_family_size = size;
        }
        let idx = size as usize;
        if self.size_histogram.len() <= idx {
            self.size_histogram.resize(idx + 1, 0);
        }
        self.size_histogram[idx] += 1;
    }

    pub fn merge(&mut self, other: &EnumStats) {
        self.total += other.total;
        self.connected += other.connected;
        self.irreducibly_connected += other.irreducibly_connected;
        self.max_family_size = self.max_family_size.max(other.max_family_size);
        if self.size_histogram.len() < other.size_histogram.len() {
            self.size_histogram.resize(other.size_histogram.len(), 0);
        }
        for (i, &c) in other.size_histogram.iter().enumerate() {
            self.size_histogram[i] += c;
        }
        self.partial |= other.partial;
    }
}

/// One node of the enumeration tree: a free family, the structure it
/// generates, and the weight of its last member (0 for the empty family).
#[derive(Debug, Clone)]
pub struct SearchNode {
    family: FreeFamily,
    closure: ConnectivityStructure,
    last_weight: u128,
}

impl SearchNode {
    pub fn root(ground: GroundSet) -> Result<Self> {
        check_enum_bound(ground, "enumeration")?;
        Ok(SearchNode {
            family: FreeFamily::empty(ground),
            closure: ConnectivityStructure::discrete(ground),
            last_weight: 0,
        })
    }

    pub fn family(&self) -> &FreeFamily {
        &self.family
    }

    pub fn closure(&self) -> &ConnectivityStructure {
        &self.closure
    }

    pub fn last_weight(&self) -> u128 {
        self.last_weight
    }

    /// Subsets that may extend the family on the right: two or more points,
    /// weight not below the last member, not already connected. Ascending.
    pub fn candidates(&self) -> Vec<Subset> {
        let ground = self.family.ground();
        let full = ground.full().mask();
        let start = ((self.last_weight >> 1) as u64).max(3);
        let mut out = Vec::new();
        for mask in start..=full {
            if mask.count_ones() < 2 {
                continue;
            }
            let s = Subset::from_mask(mask).unwrap();
            if !self.closure.is_connected(s).unwrap() {
                out.push(s);
            }
        }
        out
    }

    /// Child node for `candidate`, which must come from `candidates()`.
    /// The extended family is free again: the candidate lies outside the
    /// closure, so nothing in the new closure reduces it or any old member.
    pub fn child(&self, candidate: Subset) -> SearchNode {
        debug_assert!(candidate.weight() >= self.last_weight);
        debug_assert!(!self.closure.is_connected(candidate).unwrap());
        let family = self.family.extended(candidate);
        let closure = self
            .closure
            .extend_with(candidate)
            .expect("candidate is within the ground set");
        debug_assert!(
            crate::free::is_free(family.ground(), family.members()).unwrap(),
            "extension must preserve freeness"
        );
        SearchNode {
            family,
            closure,
            last_weight: candidate.weight(),
        }
    }

    fn record_into(&self, stats: &mut EnumStats) {
        let full = self.family.ground().full();
        let connected = self.closure.is_connected(full).unwrap();
        let full_member = self.family.members().last() == Some(&full);
        stats.record(self.family.len() as u32, connected, full_member);
    }
}

fn check_enum_bound(ground: GroundSet, what: &'static str) -> Result<()> {
    if ground.size() > ENUM_MAX_POINTS {
        return Err(Error::TooLarge {
            what,
            n: ground.size(),
            limit: ENUM_MAX_POINTS,
        });
    }
    Ok(())
}

/// Depth-first walk of every free family on `ground`, smallest extensions
/// first. The visitor sees each family exactly once; returning
/// `ControlFlow::Break(())` stops the walk and marks the stats partial.
pub fn enumerate_free<F>(ground: GroundSet, mut visitor: F) -> Result<EnumStats>
where
    F: FnMut(&FreeFamily) -> ControlFlow<()>,
{
    let root = SearchNode::root(ground)?;
    let mut stats = EnumStats::default();
    if walk(&root, &mut stats, &mut visitor).is_break() {
        stats.partial = true;
    }
    Ok(stats)
}

fn walk<F>(node: &SearchNode, stats: &mut EnumStats, visitor: &mut F) -> ControlFlow<()>
where
    F: FnMut(&FreeFamily) -> ControlFlow<()>,
{
    node.record_into(stats);
    visitor(node.family())?;
    for candidate in node.candidates() {
        walk(&node.child(candidate), stats, visitor)?;
    }
    ControlFlow::Continue(())
}

/// Same stats as `enumerate_free`, computed without materializing families.
/// Work is split into one task per single-member family; per-task stats
/// merge associatively, so the result does not depend on `jobs`.
pub fn count_stats(ground: GroundSet, jobs: usize) -> Result<EnumStats> {
    count_stats_with_progress(ground, jobs, |_, _| {})
}

/// `count_stats` with a task-completion callback receiving
/// (completed, total) counts of first-level branches.
pub fn count_stats_with_progress<P>(
    ground: GroundSet,
    jobs: usize,
    progress: P,
) -> Result<EnumStats>
where
    P: Fn(u64, u64) + Sync,
{
    assert!(jobs >= 1, "jobs must be positive");
    check_enum_bound(ground, "counting")?;
    let n = ground.size();
    match dense_words(n) {
        1 => run_count::<1, P>(n, jobs, progress),
        2 => run_count::<2, P>(n, jobs, progress),
        _ => run_count::<4, P>(n, jobs, progress),
    }
}

fn dense_words(n: u32) -> usize {
    match n {
        0..=6 => 1,
        7 => 2,
        _ => 4,
    }
}

/// Closure of a family as one bit per mask; fits in 1, 2 or 4 words for
/// n <= 6, 7, 8.
#[derive(Clone, Copy, PartialEq, Eq)]
struct DenseFamily<const W: usize> {
    words: [u64; W],
}

impl<const W: usize> DenseFamily<W> {
    const EMPTY: Self = DenseFamily { words: [0; W] };

    #[inline]
    fn contains(&self, mask: u32) -> bool {
        self.words[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    #[inline]
    fn insert(&mut self, mask: u32) {
        self.words[(mask >> 6) as usize] |= 1 << (mask & 63);
    }

    #[inline]
    fn take_lowest(&mut self) -> Option<u32> {
        for w in 0..W {
            if self.words[w] != 0 {
                let bit = self.words[w].trailing_zeros();
                self.words[w] &= self.words[w] - 1;
                return Some((w as u32) * 64 + bit);
            }
        }
        None
    }

    /// Adds `mask` and recloses under unions of overlapping members. The
    /// pending set doubles as a deduplicating worklist.
    fn insert_closed(&mut self, mask: u32) {
        let mut pending = Self::EMPTY;
        pending.insert(mask);
        while let Some(m) = pending.take_lowest() {
            if self.contains(m) {
                continue;
            }
            self.insert(m);
            for w in 0..W {
                let mut word = self.words[w];
                while word != 0 {
                    let v = (w as u32) * 64 + word.trailing_zeros();
                    word &= word - 1;
                    if v & m != 0 {
                        let u = v | m;
                        if !self.contains(u) {
                            pending.insert(u);
                        }
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
struct CountContext<const W: usize> {
    /// Masks with two or more points, as a bitset.
    extendable: [u64; W],
    full: u32,
    single_point: bool,
}

impl<const W: usize> CountContext<W> {
    fn new(n: u32) -> Self {
        let full = ((1u64 << n) - 1) as u32;
        let mut extendable = [0u64; W];
        for m in 3..=full {
            if m.count_ones() >= 2 {
                extendable[(m >> 6) as usize] |= 1 << (m & 63);
            }
        }
        CountContext {
            extendable,
            full,
            single_point: n == 1,
        }
    }
}

fn count_rec<const W: usize>(
    ctx: &CountContext<W>,
    family: &DenseFamily<W>,
    size: u32,
    start: u32,
    added_full: bool,
    stats: &mut EnumStats,
) {
    stats.record(
        size,
        ctx.single_point || family.contains(ctx.full),
        added_full,
    );
    let mut w = (start >> 6) as usize;
    let mut low = start & 63;
    while w < W {
        let mut word = ctx.extendable[w] & !family.words[w];
        if low != 0 {
            word &= !0u64 << low;
            low = 0;
        }
        while word != 0 {
            let m = (w as u32) * 64 + word.trailing_zeros();
            word &= word - 1;
            let mut child = *family;
            child.insert_closed(m);
            count_rec(ctx, &child, size + 1, m + 1, m == ctx.full, stats);
        }
        w += 1;
    }
}

fn run_count<const W: usize, P>(n: u32, jobs: usize, progress: P) -> Result<EnumStats>
where
    P: Fn(u64, u64) + Sync,
{
    let ctx = CountContext::<W>::new(n);
    let branches: Vec<u32> = (3..=ctx.full).filter(|m| m.count_ones() >= 2).collect();
    let total = branches.len() as u64;
    let done = AtomicU64::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let mut stats = pool.install(|| {
        branches
            .par_iter()
            .map(|&m| {
                let mut family = DenseFamily::<W>::EMPTY;
                family.insert_closed(m);
                let mut stats = EnumStats::default();
                count_rec(&ctx, &family, 1, m + 1, m == ctx.full, &mut stats);
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
                stats
            })
            .reduce(EnumStats::default, |mut a, b| {
                a.merge(&b);
                a
            })
    });
    // the root: the empty family, whose structure is discrete
    stats.record(0, n == 1, false);
    Ok(stats)
}

/// Number of structures on `ground` up to relabeling of the points.
///
/// Through n = 5 every canonical form is kept in a hash set. At n = 6 the
/// forms cannot be stored; instead the walk counts the structures that
/// already equal their own canonical form, which counts each class once.
pub fn count_isomorphism_classes(ground: GroundSet, jobs: usize) -> Result<u64> {
    assert!(jobs >= 1, "jobs must be positive");
    let n = ground.size();
    if n > ISO_MAX_POINTS {
        return Err(Error::TooLarge {
            what: "isomorphism counting",
            n,
            limit: ISO_MAX_POINTS,
        });
    }
    let relabelings = Relabelings::new(n);
    let tables: Vec<&[u16]> = (0..relabelings.len())
        .map(|i| relabelings.table(i))
        .collect();
    let ctx = CountContext::<1>::new(n);
    let branches: Vec<u32> = (3..=ctx.full).filter(|m| m.count_ones() >= 2).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    if n <= 5 {
        let mut forms = pool.install(|| {
            branches
                .par_iter()
                .map(|&m| {
                    let mut family = DenseFamily::<1>::EMPTY;
                    family.insert_closed(m);
                    let mut forms = HashSet::new();
                    collect_canonical(&ctx, &family, m + 1, &tables, &mut forms);
                    forms
                })
                .reduce(HashSet::new, |a, b| {
                    if a.len() < b.len() {
                        reduce_into(b, a)
                    } else {
                        reduce_into(a, b)
                    }
                })
        });
        forms.insert(0); // the discrete structure
        Ok(forms.len() as u64)
    } else {
        let mut count = pool.install(|| {
            branches
                .par_iter()
                .map(|&m| {
                    let mut family = DenseFamily::<1>::EMPTY;
                    family.insert_closed(m);
                    let mut count = 0u64;
                    count_canonical(&ctx, &family, m + 1, &tables, &mut count);
                    count
                })
                .sum::<u64>()
        });
        count += 1; // the discrete structure is canonical
        Ok(count)
    }
}

fn reduce_into(mut a: HashSet<u64>, b: HashSet<u64>) -> HashSet<u64> {
    a.extend(b);
    a
}

fn collect_canonical(
    ctx: &CountContext<1>,
    family: &DenseFamily<1>,
    start: u32,
    tables: &[&[u16]],
    forms: &mut HashSet<u64>,
) {
    forms.insert(canonical_word(family.words[0], tables));
    for_each_extension(ctx, family, start, |child, next| {
        collect_canonical(ctx, &child, next, tables, forms)
    });
}

fn count_canonical(
    ctx: &CountContext<1>,
    family: &DenseFamily<1>,
    start: u32,
    tables: &[&[u16]],
    count: &mut u64,
) {
    if is_canonical_word(family.words[0], tables) {
        *count += 1;
    }
    for_each_extension(ctx, family, start, |child, next| {
        count_canonical(ctx, &child, next, tables, count)
    });
}

fn for_each_extension<F>(ctx: &CountContext<1>, family: &DenseFamily<1>, start: u32, mut f: F)
where
    F: FnMut(DenseFamily<1>, u32),
{
    if start > 63 {
        return;
    }
    let mut word = ctx.extendable[0] & !family.words[0] & (!0u64 << start);
    while word != 0 {
        let m = word.trailing_zeros();
        word &= word - 1;
        let mut child = *family;
        child.insert_closed(m);
        f(child, m + 1);
    }
}

/// Relabels a one-word family (n <= 6) through a permutation table.
fn relabel_word(family: u64, table: &[u16]) -> u64 {
    let mut bits = family;
    let mut out = 0u64;
    while bits != 0 {
        let m = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << table[m];
    }
    out
}

/// Sorted-list lexicographic comparison for equal-sized families: the side
/// holding the smallest divergent mask comes first.
fn word_precedes(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 1
}

fn canonical_word(family: u64, tables: &[&[u16]]) -> u64 {
    let mut best = family;
    for table in &tables[1..] {
        let candidate = relabel_word(family, table);
        if word_precedes(candidate, best) {
            best = candidate;
        }
    }
    best
}

fn is_canonical_word(family: u64, tables: &[&[u16]]) -> bool {
    tables[1..]
        .iter()
        .all(|table| !word_precedes(relabel_word(family, table), family))
}

/// Largest prime dividing `value`, by trial division.
pub fn largest_prime_factor(value: u64) -> Result<u64> {
    if value < 2 {
        return Err(Error::OutOfDomain { value });
    }
    let mut rest = value;
    let mut best = 1u64;
    while rest.is_multiple_of(2) {
        best = 2;
        rest /= 2;
    }
    let mut d = 3u64;
    while d * d <= rest {
        while rest.is_multiple_of(d) {
            best = d;
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        best = rest;
    }
    Ok(best)
}
