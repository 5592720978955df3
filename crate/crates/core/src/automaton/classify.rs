use std::fmt;

use super::alphabet::Label;
use super::gnfa::Gnfa;

/// Which restrictions of the general model an automaton satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutomatonClass {
    pub has_epsilon_edge: bool,
    /// Every label has length exactly one.
    pub is_nfa: bool,
    pub is_gdfa: bool,
    pub is_dfa: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EpsilonEdge { state: usize },
    DuplicateLabel { state: usize, label: Label },
    /// `shorter` is a strict prefix of `longer`, both leaving `state`.
    PrefixConflict { state: usize, shorter: Label, longer: Label },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EpsilonEdge { state } => write!(f, "state u{}: epsilon edge", state + 1),
            Violation::DuplicateLabel { state, label } => {
                write!(f, "state u{}: label {label} leaves on several edges", state + 1)
            }
            Violation::PrefixConflict { state, shorter, longer } => {
                write!(f, "state u{}: {shorter} is a prefix of {longer}", state + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: AutomatonClass,
    pub violations: Vec<Violation>,
}

pub fn classify(g: &Gnfa) -> Classification {
    let mut violations = Vec::new();
    for u in 0..g.num_states() {
        let mut labels: Vec<&Label> = g.out_edges(u).map(|e| &e.label).collect();
        if labels.iter().any(|l| l.is_empty()) {
            violations.push(Violation::EpsilonEdge { state: u });
        }
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::DuplicateLabel { state: u, label: w[0].clone() });
            }
        }
        labels.dedup();
        // In byte order a prefix sorts before all its extensions, so a prefix
        // conflict shows up between `x` and some later label starting with `x`.
        for (i, x) in labels.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for y in &labels[i + 1..] {
                if !y.as_bytes().starts_with(x.as_bytes()) {
                    break;
                }
                violations.push(Violation::PrefixConflict {
                    state: u,
                    shorter: (*x).clone(),
                    longer: (*y).clone(),
                });
            }
        }
    }
    let has_epsilon_edge = g.has_epsilon_edge();
    let is_nfa = g.edges().iter().all(|e| e.label.len() == 1);
    let is_gdfa = violations.is_empty();
    Classification {
        class: AutomatonClass { has_epsilon_edge, is_nfa, is_gdfa, is_dfa: is_gdfa && is_nfa },
        violations,
    }
}

impl Gnfa {
    pub fn class(&self) -> AutomatonClass {
        classify(self).class
    }

    pub fn is_gdfa(&self) -> bool {
        self.class().is_gdfa
    }

    pub fn is_dfa(&self) -> bool {
        self.class().is_dfa
    }
}
