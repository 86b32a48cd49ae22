//! Free families: generator sets that stay irreducible in their own closure.
//!
//! A family of subsets (each with two or more points) is free when every
//! member is an irreducible connected part of the structure the family
//! generates. Free families and structures are in bijection: a structure
//! maps to its non-singleton irreducibles, a family to its closure.

use crate::error::{Error, Result};
use crate::space::{GroundSet, Subset};
use crate::structure::ConnectivityStructure;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeFamily {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl FreeFamily {
    /// Validates and sorts `members`, rejecting the first one that comes
    /// out reducible in the generated structure.
    pub fn new(ground: GroundSet, members: &[Subset]) -> Result<Self> {
        if let Some(member) = free_violation(ground, members)? {
            return Err(Error::NotFree { member });
        }
        Ok(FreeFamily {
            ground,
            members: check_members(ground, members)?,
        })
    }

    pub fn empty(ground: GroundSet) -> Self {
        FreeFamily {
            ground,
            members: Vec::new(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Members in strictly increasing mask order.
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The structure generated by the members.
    pub fn to_structure(&self) -> ConnectivityStructure {
        ConnectivityStructure::generate(self.ground, &self.members).expect("members were validated")
    }

    /// Appends a member larger than everything present. The caller
    /// guarantees freeness (any subset outside the closure qualifies).
    pub(crate) fn extended(&self, subset: Subset) -> FreeFamily {
        debug_assert!(self.members.last().is_none_or(|last| *last < subset));
        let mut members = Vec::with_capacity(self.members.len() + 1);
        members.extend_from_slice(&self.members);
        members.push(subset);
        FreeFamily {
            ground: self.ground,
            members,
        }
    }
}

fn check_members(ground: GroundSet, members: &[Subset]) -> Result<Vec<Subset>> {
    let mut out = Vec::with_capacity(members.len());
    for &m in members {
        ground.check(m)?;
        if m.is_singleton() {
            return Err(Error::SingletonMember { member: m });
        }
        out.push(m);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// First member (in mask order) that is reducible in the generated
/// structure, or None when the family is free.
pub fn free_violation(ground: GroundSet, members: &[Subset]) -> Result<Option<Subset>> {
    let sorted = check_members(ground, members)?;
    let s = ConnectivityStructure::generate(ground, &sorted)?;
    for &m in &sorted {
        if s.is_reducible(m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn is_free(ground: GroundSet, members: &[Subset]) -> Result<bool> {
    Ok(free_violation(ground, members)?.is_none())
}
