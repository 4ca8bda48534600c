//! DOT export of the subset and coarsening lattices as Hasse diagrams.

use std::fmt::Write;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::rough::{MacroSpace, MicroSpace};

/// Cap on universe size for the subset-lattice diagram.
pub const MICRO_HASSE_CAP: usize = 5;
/// Cap on base-block count for the coarsening-lattice diagram.
pub const MACRO_HASSE_CAP: usize = 6;

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('"', "\\\""))
}

/// Hasse diagram of the full subset lattice, definable sets filled.
/// Edges run from each set to its covers (one element added).
pub fn micro_hasse_dot(space: &MicroSpace) -> Result<String> {
    let universe = space.base().universe();
    let n = universe.len();
    if n > MICRO_HASSE_CAP {
        return Err(Error::CapExceeded {
            what: "subset-lattice diagram",
            cap: MICRO_HASSE_CAP,
            needed: n,
        });
    }
    let mut dot = String::new();
    writeln!(dot, "digraph micro {{").unwrap();
    writeln!(dot, "  rankdir=BT;").unwrap();
    writeln!(dot, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for mask in 0..(1u64 << n) {
        let set = Block::from_mask(mask);
        let label = set.display(universe).to_string();
        let style = if space.is_definable(set) {
            " [style=filled, fillcolor=lightgrey]"
        } else {
            ""
        };
        writeln!(dot, "  {}{};", quote(&label), style).unwrap();
    }
    for mask in 0..(1u64 << n) {
        let set = Block::from_mask(mask);
        let from = set.display(universe).to_string();
        for i in 0..n {
            if !set.contains(i) {
                let cover = set | Block::singleton(i);
                let to = cover.display(universe).to_string();
                writeln!(dot, "  {} -> {};", quote(&from), quote(&to)).unwrap();
            }
        }
    }
    writeln!(dot, "}}").unwrap();
    Ok(dot)
}

/// Hasse diagram of the coarsening lattice above the base granule.
/// Nodes are the base and every definable granule; covers merge exactly two
/// blocks. Definable nodes are filled, the base is double-bordered.
pub fn macro_hasse_dot(space: &MacroSpace) -> Result<String> {
    let k = space.base().block_count();
    if k > MACRO_HASSE_CAP {
        return Err(Error::CapExceeded {
            what: "coarsening-lattice diagram",
            cap: MACRO_HASSE_CAP,
            needed: k,
        });
    }
    let mut dot = String::new();
    writeln!(dot, "digraph macro {{").unwrap();
    writeln!(dot, "  rankdir=BT;").unwrap();
    writeln!(dot, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for member in space.family() {
        let label = member.to_string();
        let style = if member == space.base() {
            " [peripheries=2]"
        } else {
            " [style=filled, fillcolor=lightgrey]"
        };
        writeln!(dot, "  {}{};", quote(&label), style).unwrap();
    }
    let family: Vec<_> = space.family().collect();
    for a in &family {
        for b in &family {
            if a.block_count() == b.block_count() + 1 && a.refines(b)? {
                writeln!(dot, "  {} -> {};", quote(&a.to_string()), quote(&b.to_string()))
                    .unwrap();
            }
        }
    }
    writeln!(dot, "}}").unwrap();
    Ok(dot)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::granule::Granule;
    use crate::rough::{DefinableMode, InformationSystem};
    use crate::universe::Universe;

    fn singleton_system(n: usize) -> InformationSystem {
        let u = Universe::numbered(n).unwrap();
        let discrete = Granule::discrete(Arc::clone(&u));
        InformationSystem::new(u, [("id".to_string(), discrete)]).unwrap()
    }

    fn count_edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    #[test]
    fn micro_sizes() {
        let sys1 = singleton_system(1);
        let space = MicroSpace::build(&sys1, DefinableMode::PaperLiteral, 64).unwrap();
        let dot = micro_hasse_dot(&space).unwrap();
        assert_eq!(count_edges(&dot), 1); // {} -> {1}
        assert!(dot.contains("\"{}\""));
        assert!(dot.contains("\"{1}\""));

        let sys2 = singleton_system(2);
        let space2 = MicroSpace::build(&sys2, DefinableMode::PaperLiteral, 64).unwrap();
        let dot2 = micro_hasse_dot(&space2).unwrap();
        assert_eq!(count_edges(&dot2), 4); // Boolean diamond
    }

    #[test]
    fn macro_partition_lattice() {
        let sys = singleton_system(3);
        let space = crate::rough::MacroSpace::for_system(&sys).unwrap();
        let dot = macro_hasse_dot(&space).unwrap();
        // Bell(3) = 5 nodes; partition lattice over 3 blocks has 6 covers
        let nodes = dot
            .lines()
            .filter(|l| l.trim_start().starts_with('"') && !l.contains("->"))
            .count();
        assert_eq!(nodes, 5);
        assert_eq!(count_edges(&dot), 6);
        assert!(dot.contains("peripheries=2"));
    }

    #[test]
    fn micro_cap_enforced() {
        let sys = singleton_system(6);
        let space = MicroSpace::build(&sys, DefinableMode::PaperLiteral, 1 << 10).unwrap();
        assert!(matches!(
            micro_hasse_dot(&space),
            Err(Error::CapExceeded { .. })
        ));
    }
}
