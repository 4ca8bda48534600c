//! Micro and macro knowledge spaces induced by an information system, with
//! set and granule approximations.
//!
//! The micro side works in the subset lattice: the definable sets generated
//! by the attribute granules bracket an arbitrary subset from below and
//! above. The macro side works in the coarsening lattice above the base
//! granule: definable granules bracket an arbitrary granule under the
//! coarse-fine relation.

mod hasse;

pub use hasse::{macro_hasse_dot, micro_hasse_dot};

use std::sync::Arc;

use serde::Serialize;

use crate::block::Block;
use crate::error::{BoundSide, Error, Result};
use crate::granule::Granule;
use crate::oracle::set_partitions;
use crate::universe::Universe;

/// Default cap on the size of a definable-set family.
pub const DEFAULT_DEFINABLE_CAP: usize = 1 << 16;

/// A named attribute inducing an equivalence granule on the subset of the
/// universe where it is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub name: String,
    pub granule: Granule,
}

/// A universe together with named attribute granules.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationSystem {
    universe: Arc<Universe>,
    attributes: Vec<Attribute>,
}

impl InformationSystem {
    pub fn new<I, S>(universe: Arc<Universe>, attributes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Granule)>,
        S: Into<String>,
    {
        let mut out: Vec<Attribute> = Vec::new();
        for (name, granule) in attributes {
            let name = name.into();
            if granule.universe() != &universe {
                return Err(Error::UniverseMismatch);
            }
            if out.iter().any(|a| a.name == name) {
                return Err(Error::DuplicateAttribute(name));
            }
            out.push(Attribute { name, granule });
        }
        Ok(InformationSystem {
            universe,
            attributes: out,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    /// Every attribute granule covers the whole universe.
    pub fn is_complete(&self) -> bool {
        self.attributes
            .iter()
            .all(|a| a.granule.is_quotient())
    }

    /// Iterated meet of all attribute granules; its carrier is the
    /// intersection of the attribute carriers.
    pub fn base_granule(&self) -> Result<Granule> {
        let mut iter = self.attributes.iter();
        let first = iter.next().ok_or(Error::NoAttributes)?;
        let mut base = first.granule.clone();
        for attr in iter {
            base = base.meet(&attr.granule)?;
        }
        Ok(base)
    }
}

/// How the definable-set family is generated.
///
/// `PaperLiteral` takes all nonempty unions of base-granule blocks.
/// `AttributeGenerated` closes the blocks of every attribute granule under
/// union and intersection; on incomplete systems this keeps sets that the
/// base granule alone cannot express. The two agree on complete systems
/// with a single attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefinableMode {
    PaperLiteral,
    AttributeGenerated,
}

impl DefinableMode {
    /// Paper-literal for complete systems, attribute-generated otherwise.
    pub fn default_for(system: &InformationSystem) -> DefinableMode {
        if system.is_complete() {
            DefinableMode::PaperLiteral
        } else {
            DefinableMode::AttributeGenerated
        }
    }
}

/// Pawlak-style classification of a set against its approximation pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Definable,
    RoughlyDefinable,
    InternallyUndefinable,
    ExternallyUndefinable,
    TotallyUndefinable,
}

/// The paper-level two-way split of the undefinable sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RoughSplit {
    Definable,
    RoughlyDefinable,
    RoughlyOrTotallyUndefinable,
}

impl Category {
    pub fn rough_split(self) -> RoughSplit {
        match self {
            Category::Definable => RoughSplit::Definable,
            Category::RoughlyDefinable => RoughSplit::RoughlyDefinable,
            _ => RoughSplit::RoughlyOrTotallyUndefinable,
        }
    }
}

/// Lower and upper approximations of a set, with its classification.
///
/// `upper` is absent when no definable set contains the target, which can
/// happen in incomplete systems where the universe itself is not definable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetApproximation {
    pub lower: Block,
    pub upper: Option<Block>,
    pub category: Category,
}

/// The definable-set family of an information system.
#[derive(Debug, Clone)]
pub struct MicroSpace {
    base: Granule,
    mode: DefinableMode,
    definables: Vec<Block>,
}

impl MicroSpace {
    /// Generates the definable family; `cap` bounds its size.
    pub fn build(system: &InformationSystem, mode: DefinableMode, cap: usize) -> Result<Self> {
        let base = system.base_granule()?;
        let definables = match mode {
            DefinableMode::PaperLiteral => {
                let k = base.block_count();
                if k < usize::BITS as usize && (1usize << k) - 1 > cap {
                    return Err(Error::CapExceeded {
                        what: "definable-set family",
                        cap,
                        needed: (1usize << k) - 1,
                    });
                }
                let mut sets = Vec::with_capacity((1usize << k).saturating_sub(1));
                for mask in 1u64..(1u64 << k) {
                    let mut set = Block::EMPTY;
                    for (i, block) in base.blocks().iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            set = set | *block;
                        }
                    }
                    sets.push(set);
                }
                sets.sort();
                sets.dedup();
                sets
            }
            DefinableMode::AttributeGenerated => {
                let mut sets: Vec<Block> = Vec::new();
                for attr in system.attributes() {
                    for block in attr.granule.blocks() {
                        if !sets.contains(block) {
                            sets.push(*block);
                        }
                    }
                }
                // close under union and intersection
                let mut frontier = sets.clone();
                while let Some(next) = frontier.pop() {
                    let mut discovered = Vec::new();
                    for &existing in &sets {
                        for candidate in [next | existing, next & existing] {
                            if !candidate.is_empty() && !sets.contains(&candidate) {
                                sets.push(candidate);
                                discovered.push(candidate);
                                if sets.len() > cap {
                                    return Err(Error::CapExceeded {
                                        what: "definable-set family",
                                        cap,
                                        needed: sets.len(),
                                    });
                                }
                            }
                        }
                    }
                    frontier.extend(discovered);
                }
                sets.sort();
                sets
            }
        };
        Ok(MicroSpace {
            base,
            mode,
            definables,
        })
    }

    /// Builds with the mode derived from the system and the default cap.
    pub fn for_system(system: &InformationSystem) -> Result<Self> {
        MicroSpace::build(
            system,
            DefinableMode::default_for(system),
            DEFAULT_DEFINABLE_CAP,
        )
    }

    pub fn base(&self) -> &Granule {
        &self.base
    }

    pub fn mode(&self) -> DefinableMode {
        self.mode
    }

    /// The nonempty definable sets, in canonical order.
    pub fn definables(&self) -> &[Block] {
        &self.definables
    }

    /// Membership in the family with the empty set adjoined.
    pub fn is_definable(&self, set: Block) -> bool {
        set.is_empty() || self.definables.binary_search(&set).is_ok()
    }

    /// Greatest definable set inside `target` and least definable set
    /// containing it, with the Pawlak category.
    pub fn approximate(&self, target: Block) -> SetApproximation {
        let lower = self
            .definables
            .iter()
            .filter(|d| d.is_subset_of(target))
            .fold(Block::EMPTY, |acc, d| acc | *d);
        let upper = self
            .definables
            .iter()
            .filter(|d| target.is_subset_of(**d))
            .copied()
            .reduce(|acc, d| acc & d);
        let upper = if target.is_empty() {
            Some(Block::EMPTY)
        } else {
            upper
        };
        let full = self.base.universe().full_block();
        let category = if upper == Some(lower) && lower == target {
            Category::Definable
        } else {
            match (lower.is_empty(), upper.map_or(true, |u| u == full)) {
                (false, false) => Category::RoughlyDefinable,
                (true, false) => Category::InternallyUndefinable,
                (false, true) => Category::ExternallyUndefinable,
                (true, true) => Category::TotallyUndefinable,
            }
        };
        SetApproximation {
            lower,
            upper,
            category,
        }
    }
}

/// Lower and upper granule approximations under the coarse-fine relation.
#[derive(Debug, Clone, PartialEq)]
pub struct GranuleApproximation {
    pub lower: Granule,
    pub upper: Granule,
}

/// The definable-granule family of an information system: every merge of
/// base-granule blocks strictly coarser than the base.
#[derive(Debug, Clone)]
pub struct MacroSpace {
    base: Granule,
    definables: Vec<Granule>,
}

/// Cap on the number of base blocks for macro enumeration (Bell growth).
pub const MACRO_BLOCK_CAP: usize = 8;

impl MacroSpace {
    pub fn build(system: &InformationSystem, block_cap: usize) -> Result<Self> {
        let base = system.base_granule()?;
        let k = base.block_count();
        if k > block_cap || k > MACRO_BLOCK_CAP {
            return Err(Error::CapExceeded {
                what: "definable-granule family",
                cap: block_cap.min(MACRO_BLOCK_CAP),
                needed: k,
            });
        }
        let universe = Arc::clone(base.universe());
        let block_indices: Vec<usize> = (0..k).collect();
        let mut definables = Vec::new();
        for grouping in set_partitions(&block_indices) {
            let blocks: Vec<Block> = grouping
                .iter()
                .map(|group| {
                    group
                        .iter()
                        .fold(Block::EMPTY, |acc, i| acc | base.blocks()[i])
                })
                .collect();
            let granule = Granule::new(Arc::clone(&universe), blocks)?;
            if granule != base {
                definables.push(granule);
            }
        }
        Ok(MacroSpace { base, definables })
    }

    pub fn for_system(system: &InformationSystem) -> Result<Self> {
        MacroSpace::build(system, MACRO_BLOCK_CAP)
    }

    pub fn base(&self) -> &Granule {
        &self.base
    }

    /// The strictly coarser definable granules.
    pub fn definables(&self) -> &[Granule] {
        &self.definables
    }

    /// The family with the base granule adjoined.
    pub fn family(&self) -> impl Iterator<Item = &Granule> {
        std::iter::once(&self.base).chain(self.definables.iter())
    }

    /// Greatest family member below `target` and least member above it.
    pub fn approximate(&self, target: &Granule) -> Result<GranuleApproximation> {
        if target.universe() != self.base.universe() {
            return Err(Error::UniverseMismatch);
        }
        let mut lower: Option<Granule> = None;
        let mut upper: Option<Granule> = None;
        for member in self.family() {
            if member.refines(target)? {
                lower = Some(match lower {
                    None => member.clone(),
                    Some(acc) => acc.quotient_join(member)?,
                });
            }
            if target.refines(member)? {
                upper = Some(match upper {
                    None => member.clone(),
                    Some(acc) => acc.meet(member)?,
                });
            }
        }
        let lower = lower.ok_or(Error::NoBound(BoundSide::Lower))?;
        let upper = upper.ok_or(Error::NoBound(BoundSide::Upper))?;
        Ok(GranuleApproximation { lower, upper })
    }
}

/// The closed-form approximation for complete systems: lower `A ∧ P`,
/// upper `A ∨ₜ P`. Kept separate from [`MacroSpace::approximate`] so the
/// two can be compared instance by instance; they disagree in general.
pub fn complete_shortcut(
    target: &Granule,
    system: &InformationSystem,
) -> Result<GranuleApproximation> {
    if !system.is_complete() {
        return Err(Error::IncompleteSystem);
    }
    let base = system.base_granule()?;
    Ok(GranuleApproximation {
        lower: target.meet(&base)?,
        upper: target.quotient_join(&base)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize) -> Arc<Universe> {
        Universe::numbered(n).unwrap()
    }

    fn g(text: &str, universe: &Arc<Universe>) -> Granule {
        Granule::parse(text, universe).unwrap()
    }

    fn system(attrs: &[&str], universe: &Arc<Universe>) -> InformationSystem {
        InformationSystem::new(
            Arc::clone(universe),
            attrs
                .iter()
                .enumerate()
                .map(|(i, text)| (format!("p{}", i + 1), g(text, universe))),
        )
        .unwrap()
    }

    #[test]
    fn base_granule_examples() {
        let u4 = u(4);
        let single = system(&["{{1,2},{3,4}}"], &u4);
        assert_eq!(single.base_granule().unwrap(), g("{{1,2},{3,4}}", &u4));

        let two = system(&["{{1,2},{3,4}}", "{{1},{2,3,4}}"], &u4);
        assert_eq!(two.base_granule().unwrap(), g("{{1},{2},{3,4}}", &u4));

        let disjoint = system(&["{{1,2}}", "{{3,4}}"], &u4);
        assert!(disjoint.base_granule().unwrap().is_empty());

        let empty = InformationSystem::new(u4, Vec::<(String, Granule)>::new()).unwrap();
        assert_eq!(empty.base_granule(), Err(Error::NoAttributes));
    }

    #[test]
    fn completeness_flag() {
        let u3 = u(3);
        assert!(system(&["{{1,2},{3}}"], &u3).is_complete());
        assert!(!system(&["{{1,2}}"], &u3).is_complete());
    }

    #[test]
    fn paper_literal_definables() {
        let u4 = u(4);
        let sys = system(&["{{1},{2},{3,4}}"], &u4);
        let space = MicroSpace::build(&sys, DefinableMode::PaperLiteral, 1024).unwrap();
        assert_eq!(space.definables().len(), 7); // 2^3 - 1 unions
        assert!(space.is_definable(Block::EMPTY));
        assert!(space.is_definable(Block::from_indices([0, 2, 3])));
        assert!(!space.is_definable(Block::from_indices([2])));
    }

    #[test]
    fn modes_agree_on_single_attribute_systems() {
        let u4 = u(4);
        let sys = system(&["{{1,2},{3,4}}"], &u4);
        let literal = MicroSpace::build(&sys, DefinableMode::PaperLiteral, 1024).unwrap();
        let generated = MicroSpace::build(&sys, DefinableMode::AttributeGenerated, 1024).unwrap();
        assert_eq!(literal.definables(), generated.definables());
    }

    #[test]
    fn incomplete_system_modes_differ() {
        let u3 = u(3);
        let sys = system(&["{{1,2}}", "{{2,3}}"], &u3);
        assert_eq!(DefinableMode::default_for(&sys), DefinableMode::AttributeGenerated);

        let literal = MicroSpace::build(&sys, DefinableMode::PaperLiteral, 1024).unwrap();
        assert_eq!(literal.base(), &g("{{2}}", &u3));
        assert_eq!(literal.definables(), &[Block::singleton(1)]);

        let generated = MicroSpace::build(&sys, DefinableMode::AttributeGenerated, 1024).unwrap();
        let expected: Vec<Block> = vec![
            Block::from_indices([1]),
            Block::from_indices([0, 1]),
            Block::from_indices([1, 2]),
            Block::from_indices([0, 1, 2]),
        ];
        let mut want = expected;
        want.sort();
        assert_eq!(generated.definables(), &want[..]);
    }

    #[test]
    fn definable_family_is_closed() {
        let u4 = u(4);
        for sys in [
            system(&["{{1,2},{3,4}}", "{{1},{2,3,4}}"], &u4),
            system(&["{{1,2}}", "{{2,3}}"], &u4),
        ] {
            for mode in [DefinableMode::PaperLiteral, DefinableMode::AttributeGenerated] {
                let space = MicroSpace::build(&sys, mode, 4096).unwrap();
                for &a in space.definables() {
                    for &b in space.definables() {
                        assert!(space.is_definable(a | b), "{a:?} | {b:?}");
                        assert!(space.is_definable(a & b), "{a:?} & {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn approximate_set_examples() {
        let u4 = u(4);
        let sys = system(&["{{1,2},{3,4}}"], &u4);
        let space = MicroSpace::for_system(&sys).unwrap();

        // definable target
        let def = space.approximate(Block::from_indices([0, 1]));
        assert_eq!(def.lower, Block::from_indices([0, 1]));
        assert_eq!(def.upper, Some(Block::from_indices([0, 1])));
        assert_eq!(def.category, Category::Definable);

        // {1,2,3}: lower {1,2}, upper X
        let rough = space.approximate(Block::from_indices([0, 1, 2]));
        assert_eq!(rough.lower, Block::from_indices([0, 1]));
        assert_eq!(rough.upper, Some(Block::full(4)));
        assert_eq!(rough.category, Category::ExternallyUndefinable);
        assert_eq!(
            rough.category.rough_split(),
            RoughSplit::RoughlyOrTotallyUndefinable
        );

        // empty target
        let empty = space.approximate(Block::EMPTY);
        assert_eq!(empty.lower, Block::EMPTY);
        assert_eq!(empty.upper, Some(Block::EMPTY));
        assert_eq!(empty.category, Category::Definable);
    }

    #[test]
    fn upper_is_absent_when_nothing_contains_the_target() {
        let u3 = u(3);
        let sys = system(&["{{1,2}}"], &u3); // incomplete: carrier {1,2}
        let space = MicroSpace::build(&sys, DefinableMode::PaperLiteral, 1024).unwrap();
        let report = space.approximate(Block::from_indices([2]));
        assert_eq!(report.lower, Block::EMPTY);
        assert_eq!(report.upper, None);
        assert_eq!(report.category, Category::TotallyUndefinable);
    }

    #[test]
    fn macro_family_sizes() {
        let u4 = u(4);
        let three_blocks = system(&["{{1},{2},{3,4}}"], &u4);
        let space = MacroSpace::for_system(&three_blocks).unwrap();
        assert_eq!(space.definables().len(), 4); // Bell(3) - 1

        let top = system(&["{{1,2,3,4}}"], &u4);
        assert!(MacroSpace::for_system(&top).unwrap().definables().is_empty());

        let two_blocks = system(&["{{1,2},{3,4}}"], &u4);
        let merged = MacroSpace::for_system(&two_blocks).unwrap();
        assert_eq!(merged.definables(), &[g("{{1,2,3,4}}", &u4)]);
    }

    #[test]
    fn approximate_granule_examples() {
        let u4 = u(4);
        // full partition lattice: every quotient granule is definable
        let discrete = system(&["{{1},{2},{3},{4}}"], &u4);
        let space = MacroSpace::for_system(&discrete).unwrap();
        let a = g("{{1,2},{3},{4}}", &u4);
        let approx = space.approximate(&a).unwrap();
        assert_eq!(approx.lower, a);
        assert_eq!(approx.upper, a);

        // the base approximates itself
        let base_approx = space.approximate(space.base()).unwrap();
        assert_eq!(base_approx.lower, *space.base());
        assert_eq!(base_approx.upper, *space.base());
    }

    #[test]
    fn no_lower_bound_when_target_does_not_cover_base() {
        let u4 = u(4);
        let sys = system(&["{{1,2},{3,4}}"], &u4);
        let space = MacroSpace::for_system(&sys).unwrap();
        let incomparable = g("{{1},{2},{3,4}}", &u4);
        assert_eq!(
            space.approximate(&incomparable),
            Err(Error::NoBound(BoundSide::Lower))
        );
    }

    #[test]
    fn shortcut_examples() {
        let u4 = u(4);
        let sys = system(&["{{1},{2,3},{4}}"], &u4);
        let a = g("{{1,2},{3,4}}", &u4);
        let shortcut = complete_shortcut(&a, &sys).unwrap();
        assert_eq!(shortcut.lower, g("{{1},{2},{3},{4}}", &u4));
        assert_eq!(shortcut.upper, g("{{1,2,3,4}}", &u4));

        let base = sys.base_granule().unwrap();
        let self_shortcut = complete_shortcut(&base, &sys).unwrap();
        assert_eq!(self_shortcut.lower, base);
        assert_eq!(self_shortcut.upper, base);

        let incomplete = system(&["{{1,2}}"], &u4);
        assert_eq!(
            complete_shortcut(&a, &incomplete),
            Err(Error::IncompleteSystem)
        );
    }

    #[test]
    fn shortcut_upper_matches_family_but_lower_can_differ() {
        let u4 = u(4);
        let sys = system(&["{{1},{2},{3,4}}"], &u4);
        let space = MacroSpace::for_system(&sys).unwrap();
        let coarser = g("{{1,2},{3,4}}", &u4);
        let formula = space.approximate(&coarser).unwrap();
        let shortcut = complete_shortcut(&coarser, &sys).unwrap();
        assert_eq!(formula.upper, shortcut.upper);
        assert_eq!(formula.lower, coarser); // coarser is itself definable
        assert_eq!(shortcut.lower, *space.base()); // meet collapses to the base
        assert_ne!(formula.lower, shortcut.lower);
    }
}
