//! Right-invariant refinement, quotients and the unique minimal W-GDFA.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::automaton::{Edge, Gnfa, Label, Simulator};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A partition of the states `0..n`. Blocks are numbered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePartition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl StatePartition {
    /// Groups states by key; states with equal keys share a block.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut block_of = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (u, k) in keys.into_iter().enumerate() {
            let next = blocks.len();
            let b = *ids.entry(k).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(u);
            block_of.push(b);
        }
        StatePartition { block_of, blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_keys(0..n)
    }

    /// Finals versus non-finals.
    pub fn by_finality(g: &Gnfa) -> Self {
        Self::from_keys((0..g.num_states()).map(|u| g.is_final(u)))
    }

    pub fn block_of(&self, u: usize) -> usize {
        self.block_of[u]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }
}

fn require_gdfa(g: &Gnfa) -> Result<()> {
    if g.is_gdfa() {
        Ok(())
    } else {
        Err(Error::Domain("operation needs a GDFA".into()))
    }
}

/// Outgoing (label, successor block) pairs in label order.
fn out_signature(g: &Gnfa, u: usize, p: &StatePartition) -> Vec<(Label, usize)> {
    let mut sig: Vec<(Label, usize)> = g.out_edges(u).map(|e| (e.label.clone(), p.block_of(e.dst))).collect();
    sig.sort();
    sig
}

/// Coarsest right-invariant partition refining `initial`.
///
/// States of one block end up with identical outgoing label sets, and the
/// edges with a shared label lead into one block.
pub fn refine_partition(g: &Gnfa, initial: &StatePartition) -> Result<StatePartition> {
    require_gdfa(g)?;
    if initial.num_states() != g.num_states() {
        return Err(Error::Contract("partition does not cover the automaton".into()));
    }
    let mut p = initial.clone();
    loop {
        let next = StatePartition::from_keys(
            (0..g.num_states()).map(|u| (p.block_of(u), out_signature(g, u, &p))),
        );
        if next.num_blocks() == p.num_blocks() {
            return Ok(next);
        }
        p = next;
    }
}

/// One state per block, edges taken from each block's first member.
pub fn quotient(g: &Gnfa, p: &StatePartition) -> Result<Gnfa> {
    require_gdfa(g)?;
    if p.num_states() != g.num_states() {
        return Err(Error::Contract("partition does not cover the automaton".into()));
    }
    for block in p.blocks() {
        let rep = block[0];
        if block.iter().any(|&u| g.is_final(u) != g.is_final(rep)) {
            return Err(Error::Contract(format!(
                "block of u{} mixes final and non-final states",
                rep + 1
            )));
        }
        let sig = out_signature(g, rep, p);
        if block.iter().any(|&u| out_signature(g, u, p) != sig) {
            return Err(Error::Contract(format!("block of u{} is not right-invariant", rep + 1)));
        }
    }
    let edges = p
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(b, block)| {
            g.out_edges(block[0])
                .map(move |e| Edge { src: b, dst: p.block_of(e.dst), label: e.label.clone() })
        })
        .collect();
    let finals = (0..p.num_blocks()).filter(|&b| g.is_final(p.blocks()[b][0]));
    Gnfa::new(g.alphabet().clone(), p.num_blocks(), p.block_of(g.initial()), finals, edges)
}

/// The unique minimal GDFA with the same language and the same W-language.
pub fn minimize(g: &Gnfa) -> Result<Gnfa> {
    require_gdfa(g)?;
    let g = g.trim()?;
    let p = refine_partition(&g, &StatePartition::by_finality(&g))?;
    quotient(&g, &p)
}

/// Renaming-invariant description of a GDFA: states numbered in BFS order
/// from the initial state, siblings visited in co-lex label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub states: usize,
    pub finals: Vec<usize>,
    pub edges: Vec<(usize, usize, Label)>,
}

pub fn canonical_form(g: &Gnfa) -> Result<CanonicalForm> {
    require_gdfa(g)?;
    let n = g.num_states();
    let mut id = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    id[g.initial()] = 0;
    order.push(g.initial());
    let mut queue = VecDeque::from([g.initial()]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        let mut out: Vec<&Edge> = g.out_edges(u).collect();
        out.sort_by(|a, b| a.label.as_bytes().iter().rev().cmp(b.label.as_bytes().iter().rev()));
        for e in out {
            if id[e.dst] == usize::MAX {
                id[e.dst] = order.len();
                order.push(e.dst);
                queue.push_back(e.dst);
            }
            edges.push((id[u], id[e.dst], e.label.clone()));
        }
    }
    edges.sort();
    let mut finals: Vec<usize> = g.finals().filter(|&f| id[f] != usize::MAX).map(|f| id[f]).collect();
    finals.sort_unstable();
    Ok(CanonicalForm { states: order.len(), finals, edges })
}

/// Equality up to state renaming. Unreachable states make the automata differ.
pub fn gdfa_isomorphic(a: &Gnfa, b: &Gnfa) -> Result<bool> {
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    Ok(a.num_states() == b.num_states() && ca == cb)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightInvariance {
    /// No violation among strings of W up to the given length.
    HoldsUpToBound(usize),
    /// `I_α = I_β`, yet `αφ` and `βφ` disagree on membership in W or reach
    /// different states.
    Counterexample { alpha: Label, beta: Label, phi: Label },
}

/// Searches for a violation of right-invariance of the relation `I_α = I_β`.
///
/// Pairs are drawn from W up to `max_len`; the extension `φ` is found by an
/// unbounded search, so a reported counterexample is exact.
pub fn check_right_invariance(g: &Gnfa, max_len: usize) -> Result<RightInvariance> {
    if g.has_epsilon_edge() {
        return Err(Error::Domain("automaton has epsilon edges".into()));
    }
    let sim = Simulator::language(g);
    let chars = g.alphabet().chars();
    // Shortlex walk over W with the full expanded frontier of every string.
    let mut reps: BTreeMap<BTreeSet<usize>, (Label, BitSet)> = BTreeMap::new();
    let mut checked: HashSet<(BitSet, BitSet)> = HashSet::new();
    let mut level = vec![(Vec::<u8>::new(), sim.start())];
    for len in 0..=max_len {
        let mut next = Vec::new();
        for (word, set) in level {
            let class = sim.originals_in(&set);
            if !class.is_empty() {
                match reps.get(&class) {
                    None => {
                        reps.insert(class, (Label::new(word.clone()), set.clone()));
                    }
                    Some((rep, rep_set)) => {
                        if rep_set != &set && checked.insert((rep_set.clone(), set.clone())) {
                            if let Some(phi) = diverging_extension(&sim, chars, rep_set, &set) {
                                return Ok(RightInvariance::Counterexample {
                                    alpha: rep.clone(),
                                    beta: Label::new(word),
                                    phi,
                                });
                            }
                        }
                    }
                }
            }
            if len < max_len {
                for &c in chars {
                    let s = sim.step(&set, c);
                    if !s.is_empty() {
                        let mut w = word.clone();
                        w.push(c);
                        next.push((w, s));
                    }
                }
            }
        }
        level = next;
    }
    Ok(RightInvariance::HoldsUpToBound(max_len))
}

type Pair = (BitSet, BitSet);

/// Shortest `φ` after which the two frontiers reach different sets of
/// original states.
fn diverging_extension(sim: &Simulator, chars: &[u8], a: &BitSet, b: &BitSet) -> Option<Label> {
    let mut parent: HashMap<Pair, Option<(Pair, u8)>> = HashMap::new();
    let start = (a.clone(), b.clone());
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if sim.originals_in(&pair.0) != sim.originals_in(&pair.1) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(Some((prev, c))) = parent.get(&cur).cloned() {
                word.push(c);
                cur = prev;
            }
            word.reverse();
            return Some(Label::new(word));
        }
        for &c in chars {
            let next = (sim.step(&pair.0, c), sim.step(&pair.1, c));
            if next.0.is_empty() && next.1.is_empty() {
                continue;
            }
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((pair.clone(), c)));
                queue.push_back(next);
            }
        }
    }
    None
}
