//! Elementary abelian 2-groups `(Z₂)^k`, the index set of a grading.
//!
//! Elements are bit vectors; the group law is XOR. For the Klein group
//! (`k = 2`) the fixed encoding is `e = 00`, `a = 01`, `b = 10`, `c = 11`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const MAX_RANK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    bits: u32,
    rank: u8,
}

impl GroupElement {
    pub const E: GroupElement = GroupElement { bits: 0b00, rank: 2 };
    pub const A: GroupElement = GroupElement { bits: 0b01, rank: 2 };
    pub const B: GroupElement = GroupElement { bits: 0b10, rank: 2 };
    pub const C: GroupElement = GroupElement { bits: 0b11, rank: 2 };

    pub fn new(bits: u32, rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidRank(rank));
        }
        Ok(Self {
            bits: bits & ((1u32 << rank) - 1),
            rank: rank as u8,
        })
    }

    pub fn identity(rank: usize) -> Result<Self> {
        Self::new(0, rank)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    /// Group product: bitwise addition mod 2.
    pub fn product(self, other: GroupElement) -> Result<GroupElement> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(GroupElement {
            bits: self.bits ^ other.bits,
            rank: self.rank,
        })
    }

    /// Parses `"e"`, `"a"`, `"b"`, `"c"` (rank 2) or a bit string such as `"011"`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "e" => return Ok(Self::E),
            "a" => return Ok(Self::A),
            "b" => return Ok(Self::B),
            "c" => return Ok(Self::C),
            _ => {}
        }
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::UnknownComponent(s.to_string()));
        }
        let bits = u32::from_str_radix(s, 2).map_err(|_| Error::UnknownComponent(s.to_string()))?;
        Self::new(bits, s.len())
    }
}

/// All `2^k` elements in lexicographic bit order, identity first.
pub fn enumerate(k: usize) -> Result<Vec<GroupElement>> {
    GroupElement::identity(k)?;
    Ok((0..(1u32 << k))
        .map(|bits| GroupElement { bits, rank: k as u8 })
        .collect())
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 2 {
            let label = ["e", "a", "b", "c"][self.bits as usize];
            return f.write_str(label);
        }
        write!(f, "{:0width$b}", self.bits, width = self.rank as usize)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
