use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::transform::Transformation;

/// A finite set of transformations of one chain, kept sorted
/// lexicographically by image tuple and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemigroupSet {
    n: usize,
    elements: Vec<Transformation>,
}

impl SemigroupSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            elements: Vec::new(),
        }
    }

    /// Collects, sorts and deduplicates. Every element must live on the chain of size `n`.
    pub fn from_elements(
        n: usize,
        elements: impl IntoIterator<Item = Transformation>,
    ) -> Result<Self> {
        let mut elements: Vec<Transformation> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|t| t.n() != n) {
            return Err(Error::DomainMismatch {
                left: n,
                right: bad.n(),
            });
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(Self { n, elements })
    }

    /// Caller guarantees sorted, deduplicated input on a chain of size `n`.
    pub(crate) fn from_sorted(n: usize, elements: Vec<Transformation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|t| t.n() == n));
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.elements.binary_search(t).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Transformation> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn into_vec(self) -> Vec<Transformation> {
        self.elements
    }

    /// Inserts `t`; returns whether it was new.
    pub fn insert(&mut self, t: Transformation) -> Result<bool> {
        if t.n() != self.n {
            return Err(Error::DomainMismatch {
                left: self.n,
                right: t.n(),
            });
        }
        match self.elements.binary_search(&t) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.elements.insert(pos, t);
                Ok(true)
            }
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.iter().all(|t| other.contains(t))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_chain(other)?;
        let merged: BTreeSet<&Transformation> = self.iter().chain(other.iter()).collect();
        Ok(Self::from_sorted(
            self.n,
            merged.into_iter().cloned().collect(),
        ))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_chain(other)?;
        Ok(Self::from_sorted(
            self.n,
            self.iter()
                .filter(|t| !other.contains(t))
                .cloned()
                .collect(),
        ))
    }

    pub fn without(&self, t: &Transformation) -> Self {
        Self::from_sorted(self.n, self.iter().filter(|&x| x != t).cloned().collect())
    }

    pub fn with(&self, t: Transformation) -> Result<Self> {
        let mut out = self.clone();
        out.insert(t)?;
        Ok(out)
    }

    fn check_same_chain(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DomainMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a SemigroupSet {
    type Item = &'a Transformation;
    type IntoIter = std::slice::Iter<'a, Transformation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}
