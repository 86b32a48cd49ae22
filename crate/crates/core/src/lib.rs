//! Finite connectivity spaces.
//!
//! A connectivity space is a point set with a family of "connected" subsets
//! closed under unions of subfamilies sharing a point; every singleton is
//! connected. This crate covers the finite, integral case end to end:
//!
//! - validation and generation of structures ([`ConnectivityStructure`]);
//! - connected components, reducibility, irreducible parts, and the
//!   covering diagram of generic points ([`GenericGraph`]);
//! - free generator families and their bijection with structures
//!   ([`FreeFamily`]);
//! - Brunnian unions and iterated Brunnian spaces ([`BrunnianTree`]);
//! - exhaustive enumeration with exact labeled and unlabeled counts
//!   ([`count_stats`], [`count_isomorphism_classes`]);
//! - a symbolic link-expression algebra with realization of tree-shaped
//!   structures as expressions ([`LinkExpression`], [`realize`]).

pub mod brunnian;
mod canonical;
pub mod dot;
pub mod enumeration;
pub mod error;
pub mod free;
pub mod generic;
pub mod json;
pub mod links;
pub mod space;
pub mod structure;

pub use brunnian::{
    brunnian_space, brunnian_tree, brunnian_union, disjoint_union, iterated_brunnian, BrunnianTree,
};
pub use enumeration::{
    count_isomorphism_classes, count_stats, count_stats_with_progress, enumerate_free,
    largest_prime_factor, EnumStats, SearchNode, ENUM_MAX_POINTS, ISO_MAX_POINTS,
};
pub use error::{Error, Result};
pub use free::{free_violation, is_free, FreeFamily};
pub use generic::GenericGraph;
pub use links::{
    link_order, link_structure, parse_link_expr, realize, realize_labeled, LinkExpression,
    NotRealizable,
};
pub use space::{GroundSet, Subset};
pub use structure::ConnectivityStructure;
