use std::collections::BTreeMap;

use super::alphabet::Label;
use super::gnfa::{Edge, Gnfa};
use crate::error::Result;

/// Character-labeled automaton obtained by splitting string labels.
///
/// Original state `u` keeps id `u`; the fresh intermediate states are
/// numbered from `original_states` upwards.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub nfa: Gnfa,
    pub original_states: usize,
}

impl Expansion {
    /// Expanded id of an original state.
    pub fn map(&self, u: usize) -> usize {
        u
    }

    pub fn is_original(&self, v: usize) -> bool {
        v < self.original_states
    }
}

/// Splits every label of length `k > 1` into `k` single-character edges.
///
/// GDFAs get one trie per state, so labels sharing a prefix share the
/// intermediate states and the result is a DFA. Other automata get one
/// chain per edge. Empty labels are kept as ε-edges.
pub fn expand(g: &Gnfa) -> Expansion {
    if g.is_gdfa() {
        expand_trie(g)
    } else {
        expand_chains(g)
    }
}

fn expand_chains(g: &Gnfa) -> Expansion {
    let n = g.num_states();
    let mut next = n;
    let mut edges = Vec::new();
    for e in g.edges() {
        let bytes = e.label.as_bytes();
        if bytes.len() <= 1 {
            edges.push(e.clone());
            continue;
        }
        let mut prev = e.src;
        for (i, &c) in bytes.iter().enumerate() {
            let dst = if i + 1 == bytes.len() {
                e.dst
            } else {
                next += 1;
                next - 1
            };
            edges.push(Edge { src: prev, dst, label: Label::new(vec![c]) });
            prev = dst;
        }
    }
    finish(g, next, edges)
}

fn expand_trie(g: &Gnfa) -> Expansion {
    let n = g.num_states();
    let mut next = n;
    let mut edges = Vec::new();
    for u in 0..n {
        let mut nodes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        let mut out: Vec<&Edge> = g.out_edges(u).collect();
        out.sort_by(|a, b| a.label.cmp(&b.label));
        for e in out {
            let bytes = e.label.as_bytes();
            let mut prev = u;
            for k in 1..=bytes.len() {
                let c = Label::new(vec![bytes[k - 1]]);
                if k == bytes.len() {
                    edges.push(Edge { src: prev, dst: e.dst, label: c });
                } else if let Some(&node) = nodes.get(&bytes[..k]) {
                    prev = node;
                } else {
                    nodes.insert(bytes[..k].to_vec(), next);
                    edges.push(Edge { src: prev, dst: next, label: c });
                    prev = next;
                    next += 1;
                }
            }
        }
    }
    finish(g, next, edges)
}

fn finish(g: &Gnfa, states: usize, edges: Vec<Edge>) -> Expansion {
    let nfa = build(g, states, edges, g.finals().collect()).expect("expansion is well formed");
    Expansion { nfa, original_states: g.num_states() }
}

pub(crate) fn build(g: &Gnfa, states: usize, edges: Vec<Edge>, finals: Vec<usize>) -> Result<Gnfa> {
    Gnfa::new(g.alphabet().clone(), states, g.initial(), finals, edges)
}
