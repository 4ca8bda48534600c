use std::collections::BTreeSet;
use std::sync::Arc;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::granule::Granule;
use crate::universe::Universe;

/// A set of ordered element pairs over a universe.
///
/// Equivalence relations over subsets of the universe correspond one-to-one
/// to granules; [`Relation::to_granule`] and [`Granule::relation`] convert
/// between the two representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    universe: Arc<Universe>,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new<I>(universe: Arc<Universe>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = universe.len();
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(x, y) in &pairs {
            if x >= n || y >= n {
                return Err(Error::IndexOutOfBounds {
                    index: x.max(y),
                    n,
                });
            }
        }
        Ok(Relation { universe, pairs })
    }

    pub fn empty(universe: Arc<Universe>) -> Self {
        Relation {
            universe,
            pairs: BTreeSet::new(),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// Every element that appears in some pair.
    pub fn field(&self) -> Block {
        let mut f = Block::EMPTY;
        for &(x, y) in &self.pairs {
            f = f | Block::singleton(x) | Block::singleton(y);
        }
        f
    }

    pub fn is_subset_of(&self, other: &Relation) -> Result<bool> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.pairs.is_subset(&other.pairs))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(Relation {
            universe: Arc::clone(&self.universe),
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    /// Smallest transitive superset, by reachability over the pair graph.
    pub fn transitive_closure(&self) -> Relation {
        let n = self.universe.len();
        let mut succ = vec![0u64; n];
        for &(x, y) in &self.pairs {
            succ[x] |= 1 << y;
        }
        for k in 0..n {
            for x in 0..n {
                if succ[x] & (1 << k) != 0 {
                    succ[x] |= succ[k];
                }
            }
        }
        let mut pairs = BTreeSet::new();
        for x in 0..n {
            for y in Block::from_mask(succ[x]).iter() {
                pairs.insert((x, y));
            }
        }
        Relation {
            universe: Arc::clone(&self.universe),
            pairs,
        }
    }

    /// Reflexive on its field, symmetric, and transitive.
    pub fn is_equivalence(&self) -> bool {
        self.equivalence_defect().is_none()
    }

    fn equivalence_defect(&self) -> Option<&'static str> {
        for i in self.field().iter() {
            if !self.contains(i, i) {
                return Some("missing a reflexive pair");
            }
        }
        for &(x, y) in &self.pairs {
            if !self.contains(y, x) {
                return Some("missing a symmetric pair");
            }
        }
        for &(x, y) in &self.pairs {
            for &(y2, z) in self.pairs.range((y, 0)..=(y, usize::MAX)) {
                debug_assert_eq!(y, y2);
                if !self.contains(x, z) {
                    return Some("missing a transitive pair");
                }
            }
        }
        None
    }

    /// The granule whose blocks are this relation's equivalence classes.
    pub fn to_granule(&self) -> Result<Granule> {
        if let Some(defect) = self.equivalence_defect() {
            return Err(Error::NotEquivalence(defect));
        }
        let mut remaining = self.field();
        let mut blocks = Vec::new();
        while let Some(x) = remaining.min_index() {
            let mut class = Block::EMPTY;
            for y in remaining.iter() {
                if self.contains(x, y) {
                    class = class | Block::singleton(y);
                }
            }
            remaining = remaining - class;
            blocks.push(class);
        }
        Granule::new(Arc::clone(&self.universe), blocks)
    }
}
