use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};
use crate::universe::Universe;

/// A set of element indices into a universe, stored as a 64-bit mask.
///
/// A block carries no universe handle of its own; operations that need the
/// universe size (complement, display) take it as an argument.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(u64);

impl Block {
    pub const EMPTY: Block = Block(0);

    /// The block `{0, ..., n-1}`.
    pub fn full(n: usize) -> Block {
        debug_assert!(n <= 64);
        if n == 64 {
            Block(u64::MAX)
        } else {
            Block((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Block {
        assert!(index < 64);
        Block(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Block {
        let mut mask = 0u64;
        for i in indices {
            assert!(i < 64);
            mask |= 1 << i;
        }
        Block(mask)
    }

    pub(crate) fn from_mask(mask: u64) -> Block {
        Block(mask)
    }

    pub(crate) fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Block) -> bool {
        self.0 & other.0 != 0
    }

    pub fn complement(self, n: usize) -> Block {
        Block(!self.0 & Block::full(n).0)
    }

    /// Smallest element index, or `None` for the empty block.
    pub fn min_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// Renders the block as `{a,b}` against the universe's element names.
    pub fn display<'a>(&self, universe: &'a Universe) -> BlockDisplay<'a> {
        BlockDisplay {
            block: *self,
            universe,
        }
    }

    /// Parses the set text form `{a,b,c}`. `{}` is the empty block.
    pub fn parse(text: &str, universe: &Universe) -> Result<Block> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                what: "set",
                msg: format!("expected `{{...}}`, got `{text}`"),
            })?;
        let mut block = Block::EMPTY;
        for name in inner.split(',') {
            let name = name.trim();
            if name.is_empty() {
                continue;
            }
            let index = universe
                .index_of(name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
            block = block | Block::singleton(index);
        }
        Ok(block)
    }

    pub(crate) fn check_bounds(self, universe: &Universe) -> Result<()> {
        if self.is_subset_of(universe.full_block()) {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds {
                index: 63 - self.0.leading_zeros() as usize,
                n: universe.len(),
            })
        }
    }
}

impl BitOr for Block {
    type Output = Block;
    fn bitor(self, rhs: Block) -> Block {
        Block(self.0 | rhs.0)
    }
}

impl BitAnd for Block {
    type Output = Block;
    fn bitand(self, rhs: Block) -> Block {
        Block(self.0 & rhs.0)
    }
}

impl Sub for Block {
    type Output = Block;
    fn sub(self, rhs: Block) -> Block {
        Block(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Block{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

pub struct BlockDisplay<'a> {
    block: Block,
    universe: &'a Universe,
}

impl fmt::Display for BlockDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.block.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.universe.name(i))?;
        }
        write!(f, "}}")
    }
}
