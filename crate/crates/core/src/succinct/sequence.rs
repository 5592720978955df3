use std::collections::HashMap;

use crate::automaton::Label;
use crate::error::{Error, Result};

/// Sequence of labels of one fixed length with access, rank and select.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSequence {
    width: usize,
    items: Vec<Label>,
    /// 1-based positions of every distinct label.
    occurrences: HashMap<Label, Vec<usize>>,
}

impl LabelSequence {
    pub fn new(width: usize, items: Vec<Label>) -> Result<Self> {
        let mut occurrences: HashMap<Label, Vec<usize>> = HashMap::new();
        for (k, item) in items.iter().enumerate() {
            if item.len() != width {
                return Err(Error::Domain(format!("label {item} does not have length {width}")));
            }
            occurrences.entry(item.clone()).or_default().push(k + 1);
        }
        Ok(LabelSequence { width, items, occurrences })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Label] {
        &self.items
    }

    fn check_width(&self, rho: &Label) -> Result<()> {
        if rho.len() == self.width {
            Ok(())
        } else {
            Err(Error::Domain(format!("query {rho} does not have length {}", self.width)))
        }
    }

    pub fn access(&self, k: usize) -> Result<&Label> {
        k.checked_sub(1)
            .and_then(|p| self.items.get(p))
            .ok_or_else(|| Error::Query(format!("position {k} outside 1..{}", self.len())))
    }

    /// Occurrences of `rho` among the first `k` items.
    pub fn rank(&self, k: usize, rho: &Label) -> Result<usize> {
        self.check_width(rho)?;
        if k > self.len() {
            return Err(Error::Query(format!("rank position {k} beyond length {}", self.len())));
        }
        Ok(self.occurrences.get(rho).map_or(0, |occ| occ.partition_point(|&p| p <= k)))
    }

    /// Total occurrences of `rho`.
    pub fn count(&self, rho: &Label) -> Result<usize> {
        self.rank(self.len(), rho)
    }

    /// Position of the `j`-th occurrence of `rho`.
    pub fn select(&self, j: usize, rho: &Label) -> Result<usize> {
        self.check_width(rho)?;
        j.checked_sub(1)
            .and_then(|i| self.occurrences.get(rho).and_then(|occ| occ.get(i)))
            .copied()
            .ok_or_else(|| Error::Query(format!("select({j}, {rho}) out of range")))
    }
}
