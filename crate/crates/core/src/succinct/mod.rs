//! Bitvectors, label sequences and label dictionaries.

mod bitvector;
mod dictionary;
mod sequence;

pub use bitvector::RankSelectBitVector;
pub use dictionary::LabelDictionary;
pub use sequence::LabelSequence;
