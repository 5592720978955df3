//! Brute-force reference implementations for cross-checking.
//!
//! Nothing here uses the index, the Wheeler machinery or the minimizer.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automaton::{expand, Edge, Gnfa, Label};
use crate::error::{Error, Result};
use crate::wheeler::StateOrder;

/// Default enumeration length for bounded checks.
pub const DEFAULT_BOUND: usize = 12;

/// Character-level frontier simulation on the expansion.
struct Frontier {
    originals: usize,
    delta: HashMap<(usize, u8), Vec<usize>>,
    states: usize,
}

impl Frontier {
    fn new(g: &Gnfa) -> Self {
        let x = expand(g);
        let mut delta: HashMap<(usize, u8), Vec<usize>> = HashMap::new();
        for e in x.nfa.edges() {
            if let [c] = e.label.as_bytes() {
                delta.entry((e.src, *c)).or_default().push(e.dst);
            }
        }
        Frontier { originals: g.num_states(), delta, states: x.nfa.num_states() }
    }

    fn advance(&self, from: BTreeSet<usize>, s: &[u8]) -> BTreeSet<usize> {
        s.iter().fold(from, |cur, c| {
            cur.iter()
                .flat_map(|&u| self.delta.get(&(u, *c)).into_iter().flatten().copied())
                .collect()
        })
    }
}

/// States reached by some path whose spelled string ends with `alpha`.
pub fn naive_smlg(g: &Gnfa, alpha: &Label) -> BTreeSet<usize> {
    let f = Frontier::new(g);
    let reached = f.advance((0..f.states).collect(), alpha.as_bytes());
    reached.into_iter().filter(|&u| u < f.originals).collect()
}

/// States from which every reaching string is co-lexicographically below `alpha`.
///
/// Set recursion over the prefixes of `alpha`: a state qualifies when its
/// largest incoming label is below the prefix and every edge labeled by a
/// proper suffix of the prefix comes from a qualifying state of the
/// remaining prefix. A state without incoming edges counts as reached by ε.
pub fn naive_g_prec(g: &Gnfa, alpha: &Label) -> BTreeSet<usize> {
    let a = g.alphabet();
    let n = g.num_states();
    let max_in: Vec<Label> = (0..n)
        .map(|u| {
            g.in_edges(u)
                .map(|e| e.label.clone())
                .max_by(|x, y| a.colex_cmp(x.as_bytes(), y.as_bytes()))
                .unwrap_or_default()
        })
        .collect();
    let bytes = alpha.as_bytes();
    let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for m in 1..=bytes.len() {
        let prefix = &bytes[..m];
        let set = (0..n)
            .filter(|&u| a.colex_cmp(max_in[u].as_bytes(), prefix).is_lt())
            .filter(|&u| {
                g.in_edges(u).all(|e| {
                    let k = e.label.len();
                    !(0 < k && k < m && prefix.ends_with(e.label.as_bytes())) || sets[m - k].contains(&e.src)
                })
            })
            .collect();
        sets.push(set);
    }
    sets.pop().unwrap()
}

/// Every state's reaching strings up to `max_len`, by walking whole edges.
pub fn enumerate_i(g: &Gnfa, max_len: usize) -> Vec<BTreeSet<Label>> {
    let mut out = vec![BTreeSet::new(); g.num_states()];
    let mut seen: HashSet<(usize, Vec<u8>)> = HashSet::new();
    let mut queue = VecDeque::from([(g.initial(), Vec::new())]);
    seen.insert((g.initial(), Vec::new()));
    while let Some((u, word)) = queue.pop_front() {
        out[u].insert(Label::new(word.clone()));
        for e in g.out_edges(u) {
            if word.len() + e.label.len() > max_len {
                continue;
            }
            let mut w = word.clone();
            w.extend_from_slice(e.label.as_bytes());
            if seen.insert((e.dst, w.clone())) {
                queue.push_back((e.dst, w));
            }
        }
    }
    out
}

/// Textbook Moore minimization of a trimmed character DFA.
pub fn moore_minimize_dfa(d: &Gnfa) -> Result<Gnfa> {
    let n = d.num_states();
    let chars = d.alphabet().chars().to_vec();
    let mut delta: HashMap<(usize, u8), usize> = HashMap::new();
    for e in d.edges() {
        let [c] = e.label.as_bytes() else {
            return Err(Error::Domain("Moore minimization needs a character DFA".into()));
        };
        if delta.insert((e.src, *c), e.dst).is_some() {
            return Err(Error::Domain("Moore minimization needs a character DFA".into()));
        }
    }
    let mut class: Vec<usize> = (0..n).map(|u| usize::from(d.is_final(u))).collect();
    let mut count = class.iter().collect::<HashSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|u| {
                let sig: Vec<Option<usize>> = chars.iter().map(|&c| delta.get(&(u, c)).map(|&v| class[v])).collect();
                let fresh = ids.len();
                *ids.entry((class[u], sig)).or_insert(fresh)
            })
            .collect();
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut edges: Vec<Edge> = delta
        .iter()
        .map(|(&(u, c), &v)| Edge { src: class[u], dst: class[v], label: Label::new(vec![c]) })
        .collect();
    edges.sort();
    edges.dedup();
    let finals: BTreeSet<usize> = d.finals().map(|f| class[f]).collect();
    Gnfa::new(d.alphabet().clone(), count, class[d.initial()], finals, edges)
}

/// Classic forward search on a Wheeler DFA with a known order.
///
/// Starts from all states (or the initial state when `anchored`) and maps
/// the current interval through each character. Returns 1-based rank
/// bounds, or `None` for an empty result.
pub fn wheeler_dfa_search(d: &Gnfa, order: &StateOrder, alpha: &Label, anchored: bool) -> Option<(usize, usize)> {
    let n = d.num_states();
    let mut lo = if anchored { order.position(d.initial()) + 1 } else { 1 };
    let mut hi = if anchored { lo } else { n };
    for &c in alpha.as_bytes() {
        let targets = d
            .edges()
            .iter()
            .filter(|e| e.label.as_bytes() == [c])
            .filter(|e| (lo..=hi).contains(&(order.position(e.src) + 1)))
            .map(|e| order.position(e.dst) + 1);
        let (mut new_lo, mut new_hi) = (usize::MAX, 0);
        for p in targets {
            new_lo = new_lo.min(p);
            new_hi = new_hi.max(p);
        }
        if new_hi == 0 {
            return None;
        }
        (lo, hi) = (new_lo, new_hi);
    }
    Some((lo, hi))
}
