//! The five compact-group families that parameterize every calculator.

use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupTag {
    Unitary,
    SpecialUnitary,
    Orthogonal,
    SpecialOrthogonal,
    Spin,
}

impl GroupTag {
    pub fn short(self) -> &'static str {
        match self {
            GroupTag::Unitary => "U",
            GroupTag::SpecialUnitary => "SU",
            GroupTag::Orthogonal => "O",
            GroupTag::SpecialOrthogonal => "SO",
            GroupTag::Spin => "Spin",
        }
    }

    pub fn parse(s: &str) -> Option<GroupTag> {
        match s {
            "U" => Some(GroupTag::Unitary),
            "SU" => Some(GroupTag::SpecialUnitary),
            "O" => Some(GroupTag::Orthogonal),
            "SO" => Some(GroupTag::SpecialOrthogonal),
            "Spin" => Some(GroupTag::Spin),
            _ => None,
        }
    }

    /// O, SO and Spin share the orthogonal-type windows and Betti sums.
    pub fn orthogonal_type(self) -> bool {
        matches!(
            self,
            GroupTag::Orthogonal | GroupTag::SpecialOrthogonal | GroupTag::Spin
        )
    }

    /// Matrix models with real entries (the orthogonal-type families).
    pub fn real_entries(self) -> bool {
        self.orthogonal_type()
    }

    /// Families whose matrix models are constrained to determinant one.
    pub fn det_one(self) -> bool {
        matches!(
            self,
            GroupTag::SpecialUnitary | GroupTag::SpecialOrthogonal | GroupTag::Spin
        )
    }
}

/// A compact group family member, e.g. `U(3)`.  The rank is at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupFamily {
    tag: GroupTag,
    n: u32,
}

impl GroupFamily {
    pub fn new(tag: GroupTag, n: u32) -> Option<GroupFamily> {
        if n >= 1 {
            Some(GroupFamily { tag, n })
        } else {
            None
        }
    }

    pub fn tag(self) -> GroupTag {
        self.tag
    }

    pub fn n(self) -> u32 {
        self.n
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.tag.short(), self.n)
    }
}
