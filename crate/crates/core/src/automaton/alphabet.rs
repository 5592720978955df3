use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A string over the alphabet, stored as raw ASCII bytes.
///
/// The derived `Ord` is plain byte order and is only meant for storage in
/// ordered collections. Co-lexicographic comparisons go through
/// [`Alphabet::colex_cmp`], which honours the declared character order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Vec<u8>);

impl Label {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Label(bytes.into())
    }

    pub fn epsilon() -> Self {
        Label(Vec::new())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strict_prefix_of(&self, other: &Label) -> bool {
        self.len() < other.len() && other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &[u8]) -> bool {
        other.ends_with(&self.0)
    }

    pub fn concat(&self, other: &[u8]) -> Label {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Label(v)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.as_bytes().to_vec())
    }
}

impl From<&[u8]> for Label {
    fn from(s: &[u8]) -> Self {
        Label(s.to_vec())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("\"\"")
        } else {
            f.write_str(&String::from_utf8_lossy(&self.0))
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

const ABSENT: u8 = u8::MAX;

/// Sentinel reserved for the membership construction; never an alphabet member.
pub const SENTINEL: u8 = b'#';

/// Ordered set of characters. Order is declaration order.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<u8>,
    rank: [u8; 256],
}

impl Alphabet {
    pub fn new(chars: &[u8]) -> Result<Self> {
        let mut rank = [ABSENT; 256];
        for (i, &c) in chars.iter().enumerate() {
            if !Self::is_allowed(c) {
                return Err(Error::Alphabet(format!("character {:?} is not allowed", c as char)));
            }
            if rank[c as usize] != ABSENT {
                return Err(Error::Alphabet(format!("duplicate character {:?}", c as char)));
            }
            rank[c as usize] = i as u8;
        }
        Ok(Alphabet { chars: chars.to_vec(), rank })
    }

    /// Alphabet of the given characters in byte order (duplicates ignored).
    pub fn from_chars_sorted(chars: impl IntoIterator<Item = u8>) -> Result<Self> {
        let mut v: Vec<u8> = chars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::new(&v)
    }

    /// Printable ASCII without whitespace, the sentinel `#` and the quote used for `""`.
    pub fn is_allowed(c: u8) -> bool {
        c.is_ascii_graphic() && c != SENTINEL && c != b'"'
    }

    pub fn chars(&self) -> &[u8] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn contains(&self, c: u8) -> bool {
        self.rank[c as usize] != ABSENT
    }

    pub fn rank_of(&self, c: u8) -> Option<u8> {
        let r = self.rank[c as usize];
        (r != ABSENT).then_some(r)
    }

    pub fn char_at(&self, rank: u8) -> u8 {
        self.chars[rank as usize]
    }

    /// Largest character in alphabet order.
    pub fn max_char(&self) -> Option<u8> {
        self.chars.last().copied()
    }

    pub fn check(&self, s: &[u8]) -> Result<()> {
        match s.iter().find(|&&c| !self.contains(c)) {
            Some(&c) => Err(Error::ForeignChar(c as char)),
            None => Ok(()),
        }
    }

    /// Maps characters to their ranks.
    pub fn encode(&self, s: &[u8]) -> Result<Vec<u8>> {
        s.iter()
            .map(|&c| self.rank_of(c).ok_or(Error::ForeignChar(c as char)))
            .collect()
    }

    pub fn decode(&self, ranks: &[u8]) -> Label {
        Label(ranks.iter().map(|&r| self.char_at(r)).collect())
    }

    /// Co-lex comparison of strings already known to be over this alphabet.
    pub fn colex_cmp(&self, a: &[u8], b: &[u8]) -> Ordering {
        let ra = a.iter().rev().map(|&c| self.rank[c as usize]);
        let rb = b.iter().rev().map(|&c| self.rank[c as usize]);
        ra.cmp(rb)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", String::from_utf8_lossy(&self.chars))
    }
}

/// Co-lexicographic comparison: `a` precedes `b` when the reverse of `a` is
/// lexicographically smaller than the reverse of `b`.
pub fn colex_compare(alphabet: &Alphabet, a: &Label, b: &Label) -> Result<Ordering> {
    alphabet.check(a.as_bytes())?;
    alphabet.check(b.as_bytes())?;
    Ok(alphabet.colex_cmp(a.as_bytes(), b.as_bytes()))
}

/// Co-lex order on rank-encoded strings.
pub fn colex_cmp_ranks(a: &[u8], b: &[u8]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}
