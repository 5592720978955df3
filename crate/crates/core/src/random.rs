//! Seeded generators for automata and patterns.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, Edge, Gnfa, Label};
use crate::error::{Error, Result};
use crate::wheeler::{gdfa_wheeler_order, WheelerVerdict};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a generated automaton.
#[derive(Clone, Debug)]
pub struct GenParams {
    pub states: usize,
    pub max_label: usize,
    pub alphabet: Alphabet,
    /// Number of attempts to add edges beyond the spanning tree.
    pub extra_edges: usize,
    pub final_prob: f64,
}

impl GenParams {
    pub fn new(states: usize, max_label: usize, chars: &[u8]) -> Result<Self> {
        if states == 0 || max_label == 0 {
            return Err(Error::Domain("need at least one state and label length 1".into()));
        }
        Ok(GenParams {
            states,
            max_label,
            alphabet: Alphabet::new(chars)?,
            extra_edges: 3 * states,
            final_prob: 0.3,
        })
    }

    pub fn with_extra_edges(mut self, extra: usize) -> Self {
        self.extra_edges = extra;
        self
    }
}

fn random_label(rng: &mut GenRng, chars: &[u8], max_len: usize) -> Label {
    let len = rng.gen_range(1..=max_len);
    Label::new((0..len).map(|_| *chars.choose(rng).unwrap()).collect::<Vec<_>>())
}

/// True if `label` can leave a state with `out` without breaking determinism.
fn fits(out: &[Label], label: &Label) -> bool {
    out.iter().all(|l| {
        let (a, b) = (l.as_bytes(), label.as_bytes());
        !a.starts_with(b) && !b.starts_with(a)
    })
}

struct Builder {
    n: usize,
    out: Vec<Vec<Label>>,
    edges: Vec<Edge>,
    /// Leaves of the spanning tree; they stay final so every state is co-reachable.
    leaves: Vec<bool>,
}

impl Builder {
    fn spanning_tree(rng: &mut GenRng, p: &GenParams) -> Self {
        let chars = p.alphabet.chars();
        let mut b = Builder { n: p.states, out: vec![Vec::new(); p.states], edges: Vec::new(), leaves: Vec::new() };
        for v in 1..p.states {
            let placed = (0..8).any(|_| {
                let parent = rng.gen_range(0..v);
                let label = random_label(rng, chars, p.max_label);
                b.try_push(parent, v, label)
            });
            if !placed {
                // The previous state is still a leaf.
                let label = random_label(rng, chars, p.max_label);
                b.try_push(v - 1, v, label);
            }
        }
        b.leaves = b.out.iter().map(Vec::is_empty).collect();
        b
    }

    fn try_push(&mut self, u: usize, v: usize, label: Label) -> bool {
        if !fits(&self.out[u], &label) {
            return false;
        }
        self.out[u].push(label.clone());
        self.edges.push(Edge { src: u, dst: v, label });
        true
    }

    fn pop(&mut self) {
        let e = self.edges.pop().unwrap();
        self.out[e.src].pop();
    }

    fn finish(&self, rng: &mut GenRng, p: &GenParams) -> Gnfa {
        let finals: Vec<usize> = (0..self.n)
            .filter(|&u| self.leaves[u] || rng.gen_bool(p.final_prob))
            .collect();
        Gnfa::new(p.alphabet.clone(), self.n, 0, finals, self.edges.clone()).expect("generated automaton is valid")
    }
}

/// A trimmed GDFA: a random spanning tree plus random deterministic edges.
pub fn random_gdfa(rng: &mut GenRng, p: &GenParams) -> Gnfa {
    let mut b = Builder::spanning_tree(rng, p);
    for _ in 0..p.extra_edges {
        let (u, v) = (rng.gen_range(0..p.states), rng.gen_range(0..p.states));
        let label = random_label(rng, p.alphabet.chars(), p.max_label);
        b.try_push(u, v, label);
    }
    b.finish(rng, p)
}

/// A trimmed Wheeler GDFA.
///
/// Starts from a spanning tree, which is always Wheeler, and keeps each
/// candidate extra edge only if the result is still Wheeler.
pub fn random_wheeler_gdfa(rng: &mut GenRng, p: &GenParams) -> Gnfa {
    let mut b = Builder::spanning_tree(rng, p);
    let finals: Vec<usize> = (0..p.states).collect();
    for _ in 0..p.extra_edges {
        let (u, v) = (rng.gen_range(0..p.states), rng.gen_range(0..p.states));
        // Reusing a label that already enters `v` is accepted far more often.
        let entering: Vec<&Label> = b.edges.iter().filter(|e| e.dst == v).map(|e| &e.label).collect();
        let label = match entering.choose(rng) {
            Some(&l) if rng.gen_bool(0.6) => l.clone(),
            _ => random_label(rng, p.alphabet.chars(), p.max_label),
        };
        if !b.try_push(u, v, label) {
            continue;
        }
        // Finality does not affect the order; all-final keeps the probe trim.
        let probe = Gnfa::new(p.alphabet.clone(), p.states, 0, finals.clone(), b.edges.clone()).unwrap();
        if !matches!(gdfa_wheeler_order(&probe), Ok(WheelerVerdict::Wheeler(_))) {
            b.pop();
        }
    }
    b.finish(rng, p)
}

/// A trimmed character NFA with `edges` random transitions.
pub fn random_nfa(rng: &mut GenRng, states: usize, chars: &[u8], edges: usize) -> Result<Gnfa> {
    let alphabet = Alphabet::new(chars)?;
    loop {
        let mut list: Vec<Edge> = (0..edges)
            .map(|_| Edge {
                src: rng.gen_range(0..states),
                dst: rng.gen_range(0..states),
                label: Label::new(vec![*chars.choose(rng).unwrap()]),
            })
            .collect();
        list.sort();
        list.dedup();
        let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.3)).collect();
        if let Ok(g) = Gnfa::new(alphabet.clone(), states, 0, finals, list)?.trim() {
            return Ok(g);
        }
    }
}

/// Splits a random non-initial state in two.
///
/// Incoming edges are divided between the copies, outgoing edges are
/// duplicated. Both languages are unchanged.
pub fn unroll(rng: &mut GenRng, g: &Gnfa) -> Gnfa {
    let n = g.num_states();
    let candidates: Vec<usize> = (0..n).filter(|&u| u != g.initial()).collect();
    let Some(&v) = candidates.choose(rng) else {
        return g.clone();
    };
    let copy = n;
    let mut incoming: Vec<usize> = (0..g.edges().len()).filter(|&i| g.edges()[i].dst == v).collect();
    incoming.shuffle(rng);
    let mut to_copy = vec![false; g.edges().len()];
    for (k, &i) in incoming.iter().enumerate() {
        to_copy[i] = k == 1 || (k > 1 && rng.gen_bool(0.5));
    }
    let mut edges = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let dst = if to_copy[i] { copy } else { e.dst };
        edges.push(Edge { src: e.src, dst, label: e.label.clone() });
        if e.src == v {
            let dst = if e.dst == v && rng.gen_bool(0.5) { copy } else { e.dst };
            edges.push(Edge { src: copy, dst, label: e.label.clone() });
        }
    }
    edges.sort();
    edges.dedup();
    let mut finals: Vec<usize> = g.finals().collect();
    if g.is_final(v) {
        finals.push(copy);
    }
    Gnfa::new(g.alphabet().clone(), n + 1, g.initial(), finals, edges).expect("unrolled automaton is valid")
}

/// A mix of query patterns up to `max_len`.
///
/// Includes ε, every single character, substrings of random walks (which
/// occur), uniform random strings and strings with a foreign character.
pub fn random_patterns(rng: &mut GenRng, g: &Gnfa, count: usize, max_len: usize) -> Vec<Label> {
    let chars = g.alphabet().chars();
    let foreign = (b'!'..=b'~').find(|&c| Alphabet::is_allowed(c) && !g.alphabet().contains(c)).unwrap();
    let mut out = vec![Label::epsilon()];
    out.extend(chars.iter().map(|&c| Label::new(vec![c])));
    while out.len() < count {
        let len = rng.gen_range(0..=max_len);
        let pattern = match rng.gen_range(0..10) {
            0..=5 => random_walk_string(rng, g, len),
            6..=8 => (0..len).map(|_| *chars.choose(rng).unwrap()).collect(),
            _ => {
                let mut s: Vec<u8> = (0..len.max(1)).map(|_| *chars.choose(rng).unwrap()).collect();
                let at = rng.gen_range(0..s.len());
                s[at] = foreign;
                s
            }
        };
        out.push(Label::new(pattern));
    }
    out.truncate(count);
    out
}

/// A substring of length at most `len` of the string spelled by a random walk.
pub fn random_walk_string(rng: &mut GenRng, g: &Gnfa, len: usize) -> Vec<u8> {
    let mut u = rng.gen_range(0..g.num_states());
    let mut spelled = Vec::new();
    for _ in 0..2 * len + 2 {
        let out: Vec<&Edge> = g.out_edges(u).collect();
        let Some(e) = out.choose(rng) else { break };
        spelled.extend_from_slice(e.label.as_bytes());
        u = e.dst;
    }
    let len = len.min(spelled.len());
    let start = rng.gen_range(0..=spelled.len() - len);
    spelled[start..start + len].to_vec()
}
