use std::collections::{BTreeSet, HashSet, VecDeque};

use super::alphabet::{Alphabet, Label};
use crate::error::{Error, Result};

/// A string-labeled edge between 0-based state ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Label,
}

impl Edge {
    pub fn new(src: usize, dst: usize, label: impl Into<Label>) -> Self {
        Edge { src, dst, label: label.into() }
    }
}

/// Generalized nondeterministic finite automaton with string-labeled edges.
///
/// States are `0..n`; the text format and user-facing names are 1-based.
/// NFAs, GDFAs and DFAs are restrictions of this type, see
/// [`classify`](super::classify).
#[derive(Clone, Debug)]
pub struct Gnfa {
    alphabet: Alphabet,
    n: usize,
    initial: usize,
    finals: Vec<bool>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Gnfa {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        if initial >= n {
            return Err(Error::Contract(format!("initial state {} out of range", initial + 1)));
        }
        let mut final_flags = vec![false; n];
        for f in finals {
            if f >= n {
                return Err(Error::Contract(format!("final state {} out of range", f + 1)));
            }
            final_flags[f] = true;
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.src >= n || e.dst >= n {
                return Err(Error::Contract(format!(
                    "edge {} -> {} references a state outside 1..{n}",
                    e.src + 1,
                    e.dst + 1
                )));
            }
            alphabet.check(e.label.as_bytes())?;
            if !seen.insert(e) {
                return Err(Error::Contract(format!(
                    "duplicate edge {} {} {}",
                    e.src + 1,
                    e.dst + 1,
                    e.label
                )));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
            inc[e.dst].push(i);
        }
        Ok(Gnfa { alphabet, n, initial, finals: final_flags, edges, out, inc })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, u: usize) -> bool {
        self.finals[u]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&u| self.finals[u])
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.out[u].iter().map(|&i| &self.edges[i])
    }

    pub fn in_edges(&self, u: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.inc[u].iter().map(|&i| &self.edges[i])
    }

    /// Longest edge label.
    pub fn max_label_len(&self) -> usize {
        self.edges.iter().map(|e| e.label.len()).max().unwrap_or(0)
    }

    pub fn has_epsilon_edge(&self) -> bool {
        self.edges.iter().any(|e| e.label.is_empty())
    }

    /// No final state at all; such automata are representable but most
    /// operations refuse them.
    pub fn language_is_empty(&self) -> bool {
        self.trim_mask().is_none()
    }

    /// Same automaton with states renamed: old state `u` becomes `perm[u]`.
    pub fn renumbered(&self, perm: &[usize]) -> Result<Gnfa> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { src: perm[e.src], dst: perm[e.dst], label: e.label.clone() })
            .collect();
        Gnfa::new(
            self.alphabet.clone(),
            self.n,
            perm[self.initial],
            self.finals().map(|f| perm[f]),
            edges,
        )
    }

    /// States both reachable and co-reachable, or `None` if the initial
    /// state is not co-reachable.
    fn trim_mask(&self) -> Option<Vec<bool>> {
        let mut fwd = vec![false; self.n];
        let mut queue = VecDeque::from([self.initial]);
        fwd[self.initial] = true;
        while let Some(u) = queue.pop_front() {
            for e in self.out_edges(u) {
                if !fwd[e.dst] {
                    fwd[e.dst] = true;
                    queue.push_back(e.dst);
                }
            }
        }
        let mut bwd = self.finals.clone();
        let mut queue: VecDeque<usize> = self.finals().collect();
        while let Some(u) = queue.pop_front() {
            for e in self.in_edges(u) {
                if !bwd[e.src] {
                    bwd[e.src] = true;
                    queue.push_back(e.src);
                }
            }
        }
        let keep: Vec<bool> = fwd.iter().zip(&bwd).map(|(&a, &b)| a && b).collect();
        keep[self.initial].then_some(keep)
    }

    pub fn is_trim(&self) -> bool {
        matches!(self.trim_mask(), Some(mask) if mask.iter().all(|&k| k))
    }

    /// Restricts to reachable and co-reachable states, keeping their relative order.
    pub fn trim(&self) -> Result<Gnfa> {
        let keep = self.trim_mask().ok_or(Error::EmptyLanguage)?;
        let mut new_id = vec![usize::MAX; self.n];
        let mut next = 0;
        for u in 0..self.n {
            if keep[u] {
                new_id[u] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.src] && keep[e.dst])
            .map(|e| Edge { src: new_id[e.src], dst: new_id[e.dst], label: e.label.clone() })
            .collect();
        Gnfa::new(
            self.alphabet.clone(),
            next,
            new_id[self.initial],
            self.finals().filter(|&f| keep[f]).map(|f| new_id[f]),
            edges,
        )
    }

    /// Labels of the edges leaving `u`.
    pub fn out_labels(&self, u: usize) -> BTreeSet<Label> {
        self.out_edges(u).map(|e| e.label.clone()).collect()
    }
}

/// Automata are equal when they have the same alphabet, states, initial
/// state, finals and edge set (edge order is irrelevant).
impl PartialEq for Gnfa {
    fn eq(&self, other: &Self) -> bool {
        let edges = |g: &Gnfa| g.edges.iter().cloned().collect::<BTreeSet<_>>();
        self.alphabet == other.alphabet
            && self.n == other.n
            && self.initial == other.initial
            && self.finals == other.finals
            && edges(self) == edges(other)
    }
}

impl Eq for Gnfa {}
