use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::universe::Universe;

/// Outcome of comparing two granules under the coarse-fine relation.
///
/// `Finer` means the left operand is strictly finer than the right one
/// (its relation is strictly contained in the right one's).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Finer,
    Coarser,
    Incomparable,
}

/// A family of pairwise-disjoint nonempty blocks over a subset of a universe.
///
/// By construction every granule is an equivalence granule of its carrier:
/// the blocks partition the union they span. The empty granule (no blocks)
/// is a first-class value. Blocks are kept sorted by smallest member, so
/// equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Granule {
    universe: Arc<Universe>,
    blocks: Vec<Block>,
}

impl Hash for Granule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.len().hash(state);
        self.blocks.hash(state);
    }
}

impl Granule {
    /// Validates and canonicalizes a block family.
    pub fn new(universe: Arc<Universe>, mut blocks: Vec<Block>) -> Result<Self> {
        let mut seen = Block::EMPTY;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            block.check_bounds(&universe)?;
            if seen.intersects(*block) {
                let clash = (seen & *block).min_index().unwrap();
                return Err(Error::Overlap(universe.name(clash).to_string()));
            }
            seen = seen | *block;
        }
        blocks.sort_by_key(|b| b.min_index());
        Ok(Granule { universe, blocks })
    }

    /// The empty granule.
    pub fn empty(universe: Arc<Universe>) -> Self {
        Granule {
            universe,
            blocks: Vec::new(),
        }
    }

    /// The quotient granule `{X}` with a single block covering the universe.
    pub fn top(universe: Arc<Universe>) -> Self {
        let full = universe.full_block();
        Granule {
            universe,
            blocks: vec![full],
        }
    }

    /// The finest quotient granule: every element in its own block.
    pub fn discrete(universe: Arc<Universe>) -> Self {
        let blocks = (0..universe.len()).map(Block::singleton).collect();
        Granule { universe, blocks }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of all blocks: the subset of the universe this granule partitions.
    pub fn carrier(&self) -> Block {
        self.blocks
            .iter()
            .fold(Block::EMPTY, |acc, b| acc | *b)
    }

    /// A quotient granule partitions the whole universe.
    pub fn is_quotient(&self) -> bool {
        self.carrier() == self.universe.full_block()
    }

    /// The equivalence relation with this granule's blocks as classes:
    /// all pairs of elements sharing a block.
    pub fn relation(&self) -> Relation {
        let mut pairs = Vec::new();
        for block in &self.blocks {
            for x in block.iter() {
                for y in block.iter() {
                    pairs.push((x, y));
                }
            }
        }
        Relation::new(Arc::clone(&self.universe), pairs).expect("indices validated at construction")
    }

    fn check_same_universe(&self, other: &Granule) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Greatest lower bound under the coarse-fine relation: all nonempty
    /// pairwise block intersections. For equivalence granules the quotient
    /// meet coincides with the meet.
    pub fn meet(&self, other: &Granule) -> Result<Granule> {
        self.check_same_universe(other)?;
        let mut blocks = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                let i = *a & *b;
                if !i.is_empty() {
                    blocks.push(i);
                }
            }
        }
        Granule::new(Arc::clone(&self.universe), blocks)
    }

    /// Union of the two relations, returned at relation level: the union of
    /// equivalence relations is generally not an equivalence relation.
    pub fn join_relation(&self, other: &Granule) -> Result<Relation> {
        self.check_same_universe(other)?;
        self.relation().union(&other.relation())
    }

    /// Least upper bound under the coarse-fine relation: the granule of the
    /// transitive closure of the relation union, computed by merging blocks
    /// that share elements.
    pub fn quotient_join(&self, other: &Granule) -> Result<Granule> {
        self.check_same_universe(other)?;
        let n = self.universe.len();
        let mut parent: Vec<usize> = (0..n).collect();

        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }

        for granule in [self, other] {
            for block in &granule.blocks {
                let mut iter = block.iter();
                let first = iter.next().expect("blocks are nonempty");
                for x in iter {
                    let (rx, rf) = (find(&mut parent, x), find(&mut parent, first));
                    if rx != rf {
                        parent[rx] = rf;
                    }
                }
            }
        }

        let carrier = self.carrier() | other.carrier();
        let mut components: Vec<(usize, Block)> = Vec::new();
        for x in carrier.iter() {
            let root = find(&mut parent, x);
            match components.iter_mut().find(|(r, _)| *r == root) {
                Some((_, block)) => *block = *block | Block::singleton(x),
                None => components.push((root, Block::singleton(x))),
            }
        }
        Granule::new(
            Arc::clone(&self.universe),
            components.into_iter().map(|(_, b)| b).collect(),
        )
    }

    /// `self` ⪯ `other`: every block of `self` lies inside a block of
    /// `other`. Equivalent to inclusion of the corresponding relations.
    pub fn refines(&self, other: &Granule) -> Result<bool> {
        self.check_same_universe(other)?;
        Ok(self
            .blocks
            .iter()
            .all(|a| other.blocks.iter().any(|b| a.is_subset_of(*b))))
    }

    /// Coarse-fine comparison of the two granules.
    pub fn compare(&self, other: &Granule) -> Result<Comparison> {
        let le = self.refines(other)?;
        let ge = other.refines(self)?;
        Ok(match (le, ge) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Finer,
            (false, true) => Comparison::Coarser,
            (false, false) => Comparison::Incomparable,
        })
    }

    /// Parses the canonical text form `{{a,b},{c}}`; `{}` is the empty
    /// granule.
    pub fn parse(text: &str, universe: &Arc<Universe>) -> Result<Self> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                what: "granule",
                msg: format!("expected `{{{{...}},...}}`, got `{text}`"),
            })?;
        let mut blocks = Vec::new();
        let mut rest = inner.trim_start();
        while !rest.is_empty() {
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
            if rest.is_empty() {
                break;
            }
            let end = rest.find('}').ok_or_else(|| Error::Parse {
                what: "granule",
                msg: "unterminated block".to_string(),
            })?;
            let block_text = &rest[..=end];
            let block = Block::parse(block_text, universe)?;
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            blocks.push(block);
            rest = rest[end + 1..].trim_start();
        }
        Granule::new(Arc::clone(universe), blocks)
    }
}

impl fmt::Display for Granule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", block.display(&self.universe))?;
        }
        write!(f, "}}")
    }
}
