use std::sync::Arc;

use crate::block::Block;
use crate::error::{Error, Result};

/// Hard cap on universe size; blocks are stored as 64-bit masks.
pub const MAX_UNIVERSE: usize = 64;

/// An ordered finite set of named elements.
///
/// Every index-valued type in this crate (blocks, relations, granules) is
/// interpreted against a universe. Universes are shared by `Arc` handle and
/// compared by content, so two independently built universes with the same
/// element list are interchangeable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    elements: Vec<String>,
}

impl Universe {
    /// Builds a universe from element names. Names must be distinct and the
    /// count must be in `1..=64`.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = names.into_iter().map(Into::into).collect();
        if elements.is_empty() || elements.len() > MAX_UNIVERSE {
            return Err(Error::UniverseSize {
                got: elements.len(),
                max: MAX_UNIVERSE,
            });
        }
        for (i, name) in elements.iter().enumerate() {
            if elements[..i].contains(name) {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        Ok(Arc::new(Universe { elements }))
    }

    /// Universe with elements named `"1"`, `"2"`, ..., `"n"`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction n >= 1
    }

    pub fn name(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// The block containing every element.
    pub fn full_block(&self) -> Block {
        Block::full(self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_oversized() {
        assert!(matches!(
            Universe::new(Vec::<String>::new()),
            Err(Error::UniverseSize { got: 0, .. })
        ));
        assert!(Universe::numbered(64).is_ok());
        assert!(Universe::numbered(65).is_err());
    }

    #[test]
    fn rejects_duplicates() {
        assert_eq!(
            Universe::new(["a", "b", "a"]),
            Err(Error::DuplicateElement("a".into()))
        );
    }

    #[test]
    fn index_lookup() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        assert_eq!(u.index_of("b"), Some(1));
        assert_eq!(u.index_of("z"), None);
        assert_eq!(u.name(2), "c");
        assert_eq!(u.len(), 3);
    }
}
