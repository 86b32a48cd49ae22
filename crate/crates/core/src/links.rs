//! Symbolic link expressions and their connectivity semantics.
//!
//! An expression describes how link components sit together: a lone knot, a
//! separable side-by-side placement, or a necklace that makes exactly the
//! whole collection inseparable while every proper sub-collection falls
//! apart. Those are the constructions known to exist for every shape the
//! grammar can write down, so the associated structure is computed purely
//! symbolically: splits are disjoint unions, necklaces are Brunnian unions.

use std::fmt;
use std::str::FromStr;

use crate::brunnian::{brunnian_union, disjoint_union};
use crate::error::{Error, Result};
use crate::space::Subset;
use crate::structure::ConnectivityStructure;

/// Grammar: expr := "." | "S(" expr ("," expr)* ")" | "N(" expr "," expr ("," expr)* ")"
///
/// Leaves are link components, numbered 1..n left to right. A `Split` may
/// hold a single child (it is then a no-op); a `Necklace` needs at least
/// two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkExpression {
    Point,
    Split(Vec<LinkExpression>),
    Necklace(Vec<LinkExpression>),
}

impl LinkExpression {
    pub fn leaf_count(&self) -> u32 {
        match self {
            LinkExpression::Point => 1,
            LinkExpression::Split(cs) | LinkExpression::Necklace(cs) => {
                cs.iter().map(LinkExpression::leaf_count).sum()
            }
        }
    }

    /// Nesting depth of the expression tree.
    pub fn height(&self) -> u32 {
        match self {
            LinkExpression::Point => 0,
            LinkExpression::Split(cs) | LinkExpression::Necklace(cs) => {
                1 + cs.iter().map(LinkExpression::height).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for LinkExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, children) = match self {
            LinkExpression::Point => return write!(f, "."),
            LinkExpression::Split(cs) => ("S", cs),
            LinkExpression::Necklace(cs) => ("N", cs),
        };
        write!(f, "{tag}(")?;
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for LinkExpression {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_link_expr(text)
    }
}

/// Parses the expression grammar; whitespace is ignored everywhere.
pub fn parse_link_expr(text: &str) -> Result<LinkExpression> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let expr = parse_expr(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::Syntax {
            position: pos,
            expected: "end of input".into(),
        });
    }
    Ok(expr)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

fn parse_expr(bytes: &[u8], pos: &mut usize) -> Result<LinkExpression> {
    skip_ws(bytes, pos);
    let necklace = match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            return Ok(LinkExpression::Point);
        }
        Some(b'S') => false,
        Some(b'N') => true,
        _ => {
            return Err(Error::Syntax {
                position: *pos,
                expected: "'.', 'S', or 'N'".into(),
            })
        }
    };
    *pos += 1;
    skip_ws(bytes, pos);
    if bytes.get(*pos) != Some(&b'(') {
        return Err(Error::Syntax {
            position: *pos,
            expected: "'('".into(),
        });
    }
    *pos += 1;
    let mut children = vec![parse_expr(bytes, pos)?];
    loop {
        skip_ws(bytes, pos);
        match bytes.get(*pos) {
            Some(b',') => {
                *pos += 1;
                children.push(parse_expr(bytes, pos)?);
            }
            Some(b')') => {
                *pos += 1;
                break;
            }
            _ => {
                return Err(Error::Syntax {
                    position: *pos,
                    expected: "',' or ')'".into(),
                })
            }
        }
    }
    if necklace {
        if children.len() < 2 {
            return Err(Error::BadArity {
                context: "necklace",
                min: 2,
            });
        }
        Ok(LinkExpression::Necklace(children))
    } else {
        Ok(LinkExpression::Split(children))
    }
}

/// Connectivity structure of the link the expression denotes, over the
/// left-to-right leaf numbering. A point is the one-point space; a split
/// leaves its children side by side; a necklace additionally makes the full
/// point set connected.
pub fn link_structure(expr: &LinkExpression) -> Result<ConnectivityStructure> {
    match expr {
        LinkExpression::Point => Ok(ConnectivityStructure::point()),
        LinkExpression::Split(children) => {
            if children.is_empty() {
                return Err(Error::BadArity {
                    context: "split",
                    min: 1,
                });
            }
            let parts = children
                .iter()
                .map(link_structure)
                .collect::<Result<Vec<_>>>()?;
            disjoint_union(&parts)
        }
        LinkExpression::Necklace(children) => {
            if children.len() < 2 {
                return Err(Error::BadArity {
                    context: "necklace",
                    min: 2,
                });
            }
            let parts = children
                .iter()
                .map(link_structure)
                .collect::<Result<Vec<_>>>()?;
            brunnian_union(&parts)
        }
    }
}

/// Order of the structure the expression denotes.
pub fn link_order(expr: &LinkExpression) -> Result<u32> {
    Ok(link_structure(expr)?.order())
}

/// Why a structure has no expression in this algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotRealizable {
    /// Two irreducible parts overlap without one containing the other, so
    /// the irreducibles form no hierarchy.
    Overlap { first: Subset, second: Subset },
    /// The irreducible parts regenerate a different structure; `witness` is
    /// the smallest set on which the two disagree.
    Mismatch { witness: Subset },
}

impl fmt::Display for NotRealizable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotRealizable::Overlap { first, second } => {
                write!(
                    f,
                    "irreducible parts {first} and {second} overlap without nesting"
                )
            }
            NotRealizable::Mismatch { witness } => {
                write!(
                    f,
                    "irreducible parts do not regenerate the structure at {witness}"
                )
            }
        }
    }
}

/// Expression denoting `s`, together with the original point carried by
/// each leaf, in leaf order.
///
/// Succeeds exactly when the non-singleton irreducibles of `s` form a
/// hierarchy (any two nested or disjoint), i.e. when every component of `s`
/// is an iterated Brunnian space. The returned structure matches `s` after
/// renaming leaf i to the i-th returned point; whenever that renaming is
/// the identity (in particular for every space built by iterated Brunnian
/// unions) the expression reproduces `s` exactly.
pub fn realize_labeled(
    s: &ConnectivityStructure,
) -> std::result::Result<(LinkExpression, Vec<u32>), NotRealizable> {
    let irreducibles: Vec<Subset> = s
        .irreducibles()
        .into_iter()
        .filter(|v| !v.is_singleton())
        .collect();
    for (i, &a) in irreducibles.iter().enumerate() {
        for &b in &irreducibles[i + 1..] {
            if a.overlaps(b) && !a.is_subset_of(b) && !b.is_subset_of(a) {
                return Err(NotRealizable::Overlap {
                    first: a,
                    second: b,
                });
            }
        }
    }
    let rebuilt = ConnectivityStructure::generate(s.ground(), &irreducibles)
        .expect("irreducibles are valid subsets");
    if rebuilt != *s {
        return Err(NotRealizable::Mismatch {
            witness: family_divergence(s.sets(), rebuilt.sets()),
        });
    }
    let mut components = s.components();
    components.sort_by_key(|c| c.min_element());
    let mut leaves = Vec::new();
    let mut exprs: Vec<LinkExpression> = components
        .iter()
        .map(|c| build_expr(*c, &irreducibles, &mut leaves))
        .collect();
    let expr = if exprs.len() == 1 {
        exprs.pop().unwrap()
    } else {
        LinkExpression::Split(exprs)
    };
    Ok((expr, leaves))
}

/// Expression-only variant of `realize_labeled`.
pub fn realize(s: &ConnectivityStructure) -> std::result::Result<LinkExpression, NotRealizable> {
    realize_labeled(s).map(|(expr, _)| expr)
}

fn build_expr(set: Subset, irreducibles: &[Subset], leaves: &mut Vec<u32>) -> LinkExpression {
    if set.is_singleton() {
        leaves.push(set.min_element());
        return LinkExpression::Point;
    }
    // maximal irreducibles strictly inside `set`, then the loose points
    let mut children: Vec<Subset> = irreducibles
        .iter()
        .copied()
        .filter(|&c| {
            c.is_proper_subset_of(set)
                && !irreducibles
                    .iter()
                    .any(|&d| c.is_proper_subset_of(d) && d.is_proper_subset_of(set))
        })
        .collect();
    let covered = children.iter().fold(0u64, |acc, c| acc | c.mask());
    for e in set.elements() {
        if covered >> (e - 1) & 1 == 0 {
            children.push(Subset::singleton(e).unwrap());
        }
    }
    children.sort_by_key(|c| c.min_element());
    // a strict child never covers everything, so there are at least two
    debug_assert!(children.len() >= 2);
    LinkExpression::Necklace(
        children
            .into_iter()
            .map(|c| build_expr(c, irreducibles, leaves))
            .collect(),
    )
}

/// Smallest set present in exactly one of two sorted families.
fn family_divergence(a: &[Subset], b: &[Subset]) -> Subset {
    let mut ia = a.iter();
    let mut ib = b.iter();
    loop {
        match (ia.clone().next(), ib.clone().next()) {
            (Some(&x), Some(&y)) if x == y => {
                ia.next();
                ib.next();
            }
            (Some(&x), Some(&y)) => return x.min(y),
            (Some(&x), None) => return x,
            (None, Some(&y)) => return y,
            (None, None) => unreachable!("families differ"),
        }
    }
}
