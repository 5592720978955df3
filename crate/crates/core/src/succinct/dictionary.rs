use std::cmp::Ordering;

use crate::automaton::{Alphabet, Label};
use crate::error::{Error, Result};

/// Co-lex sorted set of distinct labels of one length.
///
/// Queries may have any length and are compared with the co-lex order on
/// mixed lengths, where a proper suffix precedes its extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelDictionary {
    width: usize,
    alphabet: Alphabet,
    members: Vec<Label>,
}

impl LabelDictionary {
    pub fn new(width: usize, alphabet: &Alphabet, labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut members: Vec<Label> = labels.into_iter().collect();
        for m in &members {
            if m.len() != width {
                return Err(Error::Domain(format!("label {m} does not have length {width}")));
            }
            alphabet.check(m.as_bytes())?;
        }
        members.sort_by(|a, b| alphabet.colex_cmp(a.as_bytes(), b.as_bytes()));
        members.dedup();
        Ok(LabelDictionary { width, alphabet: alphabet.clone(), members })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Label] {
        &self.members
    }

    fn cmp(&self, a: &Label, b: &Label) -> Ordering {
        self.alphabet.colex_cmp(a.as_bytes(), b.as_bytes())
    }

    /// Members strictly below `q`.
    fn below(&self, q: &Label) -> usize {
        self.members.partition_point(|m| self.cmp(m, q) == Ordering::Less)
    }

    /// Members at most `q`.
    fn at_most(&self, q: &Label) -> usize {
        self.members.partition_point(|m| self.cmp(m, q) != Ordering::Greater)
    }

    pub fn member(&self, q: &Label) -> bool {
        self.at_most(q) > self.below(q)
    }

    /// 1-based position of a member.
    pub fn rank(&self, q: &Label) -> Option<usize> {
        self.member(q).then(|| self.at_most(q))
    }

    pub fn select(&self, j: usize) -> Result<&Label> {
        j.checked_sub(1)
            .and_then(|i| self.members.get(i))
            .ok_or_else(|| Error::Query(format!("select({j}) in a dictionary of {}", self.len())))
    }

    /// Largest member `⪯ q`.
    pub fn pred(&self, q: &Label) -> Option<&Label> {
        self.at_most(q).checked_sub(1).map(|i| &self.members[i])
    }

    /// Largest member `≺ q`.
    pub fn pred_strict(&self, q: &Label) -> Option<&Label> {
        self.below(q).checked_sub(1).map(|i| &self.members[i])
    }

    /// Smallest member `⪰ q`.
    pub fn succ_or_equal(&self, q: &Label) -> Option<&Label> {
        self.members.get(self.below(q))
    }

    /// Smallest member `≻ q`.
    pub fn succ_strict(&self, q: &Label) -> Option<&Label> {
        self.members.get(self.at_most(q))
    }
}
