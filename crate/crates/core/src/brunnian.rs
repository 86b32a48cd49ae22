//! Brunnian unions and iterated Brunnian spaces.
//!
//! The Brunnian union glues disjoint spaces by making exactly the full new
//! point set one extra connected part. Iterating the construction from
//! one-point spaces yields precisely the spaces whose covering diagram is a
//! rooted tree, and the order of the space equals the height of that tree.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generic::GenericGraph;
use crate::space::{GroundSet, Subset};
use crate::structure::ConnectivityStructure;

/// Shape of an iterated Brunnian construction: leaves are points, every
/// internal node glues the spaces of at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BrunnianTree {
    Leaf,
    Node(Vec<BrunnianTree>),
}

impl BrunnianTree {
    pub fn node(children: Vec<BrunnianTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::BadArity {
                context: "brunnian tree node",
                min: 2,
            });
        }
        Ok(BrunnianTree::Node(children))
    }

    pub fn height(&self) -> u32 {
        match self {
            BrunnianTree::Leaf => 0,
            BrunnianTree::Node(children) => {
                1 + children.iter().map(BrunnianTree::height).max().unwrap_or(0)
            }
        }
    }

    pub fn leaf_count(&self) -> u32 {
        match self {
            BrunnianTree::Leaf => 1,
            BrunnianTree::Node(children) => children.iter().map(BrunnianTree::leaf_count).sum(),
        }
    }
}

impl fmt::Display for BrunnianTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrunnianTree::Leaf => write!(f, "."),
            BrunnianTree::Node(children) => {
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for BrunnianTree {
    type Err = Error;

    /// Grammar: tree := "." | "(" tree ("," tree)+ ")", whitespace ignored.
    fn from_str(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let tree = parse_tree(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::Syntax {
                position: pos,
                expected: "end of input".into(),
            });
        }
        Ok(tree)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<BrunnianTree> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(BrunnianTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let mut children = vec![parse_tree(bytes, pos)?];
            loop {
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    Some(b',') => {
                        *pos += 1;
                        children.push(parse_tree(bytes, pos)?);
                    }
                    Some(b')') => {
                        *pos += 1;
                        return BrunnianTree::node(children);
                    }
                    _ => {
                        return Err(Error::Syntax {
                            position: *pos,
                            expected: "',' or ')'".into(),
                        })
                    }
                }
            }
        }
        _ => Err(Error::Syntax {
            position: *pos,
            expected: "'.' or '('".into(),
        }),
    }
}

/// Disjoint union of spaces; the points of each space are renumbered into
/// consecutive blocks, in list order.
pub fn disjoint_union(spaces: &[ConnectivityStructure]) -> Result<ConnectivityStructure> {
    if spaces.is_empty() {
        return Err(Error::EmptyList);
    }
    let total: u32 = spaces.iter().map(ConnectivityStructure::size).sum();
    let ground = GroundSet::new(total)?;
    let mut sets = Vec::new();
    let mut offset = 0u32;
    for s in spaces {
        for k in s.sets() {
            sets.push(Subset::from_mask(k.mask() << offset).unwrap());
        }
        offset += s.size();
    }
    // blocks occupy increasing bit ranges, so the concatenation stays sorted
    Ok(ConnectivityStructure::from_parts_unchecked(ground, sets))
}

/// Disjoint union plus the full new point set as one extra connected part.
pub fn brunnian_union(spaces: &[ConnectivityStructure]) -> Result<ConnectivityStructure> {
    let base = disjoint_union(spaces)?;
    let full = base.ground().full();
    if full.is_singleton() {
        // a one-point union: the full set is a singleton, already connected
        return Ok(base);
    }
    let mut sets = base.sets().to_vec();
    if sets.last() != Some(&full) {
        sets.push(full);
    }
    Ok(ConnectivityStructure::from_parts_unchecked(
        base.ground(),
        sets,
    ))
}

/// The n-point space whose only stored connected part is the full set.
pub fn brunnian_space(n: u32) -> Result<ConnectivityStructure> {
    let ground = GroundSet::new(n)?;
    if n == 1 {
        return Ok(ConnectivityStructure::point());
    }
    Ok(ConnectivityStructure::from_parts_unchecked(
        ground,
        vec![ground.full()],
    ))
}

/// Space built by taking Brunnian unions along the tree, leaves becoming
/// one-point spaces. Its order equals the height of the tree.
pub fn iterated_brunnian(tree: &BrunnianTree) -> Result<ConnectivityStructure> {
    match tree {
        BrunnianTree::Leaf => Ok(ConnectivityStructure::point()),
        BrunnianTree::Node(children) => {
            if children.len() < 2 {
                return Err(Error::BadArity {
                    context: "brunnian tree node",
                    min: 2,
                });
            }
            let spaces = children
                .iter()
                .map(iterated_brunnian)
                .collect::<Result<Vec<_>>>()?;
            brunnian_union(&spaces)
        }
    }
}

/// Recovers the construction tree of an iterated Brunnian space, or None
/// when the covering diagram is not a rooted tree.
pub fn brunnian_tree(s: &ConnectivityStructure) -> Option<BrunnianTree> {
    let graph = s.generic_graph();
    let count = graph.vertices().len();
    let mut indegree = vec![0u32; count];
    for &(_, b) in graph.edges() {
        indegree[b] += 1;
    }
    let mut root = None;
    for (v, &d) in indegree.iter().enumerate() {
        match d {
            0 if root.is_none() => root = Some(v),
            0 => return None, // two roots
            1 => {}
            _ => return None, // a vertex covered twice
        }
    }
    // one root and in-degree one elsewhere: parent chains strictly grow,
    // so they all reach the root and the diagram is a tree
    Some(build_tree(&graph, root?))
}

fn build_tree(graph: &GenericGraph, vertex: usize) -> BrunnianTree {
    let children: Vec<BrunnianTree> = graph
        .children(vertex)
        .map(|c| build_tree(graph, c))
        .collect();
    if children.is_empty() {
        BrunnianTree::Leaf
    } else {
        debug_assert!(children.len() >= 2);
        BrunnianTree::Node(children)
    }
}
