//! Automaton representation, parsing, classification and expansion.

pub mod alphabet;
pub mod classify;
pub mod expand;
pub mod gnfa;
pub mod language;
pub mod text;

pub use alphabet::{colex_compare, Alphabet, Label, SENTINEL};
pub use classify::{classify, AutomatonClass, Classification, Violation};
pub use expand::{expand, Expansion};
pub use gnfa::{Edge, Gnfa};
pub use language::{
    kernel, kernel_at, language_equiv, language_member_naive, reachable_states, w_language_automaton,
    w_language_equiv, w_strings, Simulator,
};
pub use text::{parse_state_name, state_name};
