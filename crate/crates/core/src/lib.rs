pub mod automaton;
mod bitset;
pub mod error;
pub mod fixtures;
pub mod fm_index;
pub mod gbwt;
pub mod myhill_nerode;
pub mod oracle;
pub mod random;
pub mod succinct;
pub mod wheeler;

pub use automaton::{Alphabet, Edge, Gnfa, Label};
pub use bitset::BitSet;
pub use error::{Error, Result};
