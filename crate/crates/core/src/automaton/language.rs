use std::collections::{BTreeSet, HashMap, VecDeque};

use super::alphabet::Label;
use super::expand::{expand, Expansion};
use super::gnfa::Gnfa;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Subset simulation over the character expansion of an automaton.
#[derive(Clone, Debug)]
pub struct Simulator {
    originals: usize,
    states: usize,
    initial: usize,
    delta: Vec<Vec<(u8, usize)>>,
    eps: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Simulator {
    /// Accepts exactly `L(g)`.
    pub fn language(g: &Gnfa) -> Self {
        let finals: Vec<usize> = g.finals().collect();
        Self::from_expansion(&expand(g), &finals)
    }

    /// Accepts exactly `W(g)`: every original state is accepting.
    pub fn w_language(g: &Gnfa) -> Self {
        let all: Vec<usize> = (0..g.num_states()).collect();
        Self::from_expansion(&expand(g), &all)
    }

    fn from_expansion(x: &Expansion, accepting_originals: &[usize]) -> Self {
        let nfa = &x.nfa;
        let states = nfa.num_states();
        let mut delta = vec![Vec::new(); states];
        let mut eps = vec![Vec::new(); states];
        for e in nfa.edges() {
            match e.label.as_bytes() {
                [] => eps[e.src].push(e.dst),
                [c] => delta[e.src].push((*c, e.dst)),
                _ => unreachable!("expansion leaves labels of length at most one"),
            }
        }
        let mut accepting = vec![false; states];
        for &u in accepting_originals {
            accepting[u] = true;
        }
        Simulator { originals: x.original_states, states, initial: nfa.initial(), delta, eps, accepting }
    }

    pub fn originals(&self) -> usize {
        self.originals
    }

    fn close(&self, set: &mut BitSet) {
        let mut stack: Vec<usize> = set.iter().filter(|&u| !self.eps[u].is_empty()).collect();
        while let Some(u) = stack.pop() {
            for &v in &self.eps[u] {
                if set.insert(v) {
                    stack.push(v);
                }
            }
        }
    }

    pub fn start(&self) -> BitSet {
        let mut s = BitSet::new(self.states);
        s.insert(self.initial);
        self.close(&mut s);
        s
    }

    /// All expanded states, the starting frontier for suffix matching.
    pub fn everything(&self) -> BitSet {
        let mut s = BitSet::new(self.states);
        for u in 0..self.states {
            s.insert(u);
        }
        s
    }

    pub fn step(&self, set: &BitSet, c: u8) -> BitSet {
        let mut out = BitSet::new(self.states);
        for u in set.iter() {
            for &(d, v) in &self.delta[u] {
                if d == c {
                    out.insert(v);
                }
            }
        }
        self.close(&mut out);
        out
    }

    pub fn run(&self, s: &[u8]) -> BitSet {
        s.iter().fold(self.start(), |set, &c| self.step(&set, c))
    }

    pub fn accepts_set(&self, set: &BitSet) -> bool {
        set.iter().any(|u| self.accepting[u])
    }

    pub fn accepts(&self, s: &[u8]) -> bool {
        self.accepts_set(&self.run(s))
    }

    /// Original states in `set`.
    pub fn originals_in(&self, set: &BitSet) -> BTreeSet<usize> {
        set.iter().take_while(|&u| u < self.originals).collect()
    }
}

/// `I_α`: states reached from the initial state by paths spelling exactly `α`
/// as a concatenation of whole edge labels.
pub fn reachable_states(g: &Gnfa, alpha: &Label) -> BTreeSet<usize> {
    let sim = Simulator::language(g);
    sim.originals_in(&sim.run(alpha.as_bytes()))
}

pub fn language_member_naive(g: &Gnfa, alpha: &Label) -> bool {
    Simulator::language(g).accepts(alpha.as_bytes())
}

/// Character NFA recognizing `W(g)`.
pub fn w_language_automaton(g: &Gnfa) -> Gnfa {
    let x = expand(g);
    let nfa = &x.nfa;
    Gnfa::new(
        nfa.alphabet().clone(),
        nfa.num_states(),
        nfa.initial(),
        0..x.original_states,
        nfa.edges().to_vec(),
    )
    .expect("expansion is well formed")
}

/// Prefix-free kernel: members with no strict prefix in the set.
pub fn kernel(set: &BTreeSet<Label>) -> BTreeSet<Label> {
    set.iter()
        .filter(|x| !(0..x.len()).any(|k| set.contains(&Label::from(&x.as_bytes()[..k]))))
        .cloned()
        .collect()
}

/// `K(T_α)` of a GDFA: the labels leaving the unique state of `I_α`.
pub fn kernel_at(g: &Gnfa, alpha: &Label) -> Result<BTreeSet<Label>> {
    if !g.is_gdfa() {
        return Err(Error::Domain("kernel_at needs a GDFA".into()));
    }
    let reached = reachable_states(g, alpha);
    match reached.iter().next() {
        Some(&u) => Ok(g.out_labels(u)),
        None => Err(Error::Domain(format!("{alpha} is not in W"))),
    }
}

type Pair = (BitSet, BitSet);

/// Shortest string accepted by exactly one simulator, if any.
///
/// Breadth-first over pairs of subsets with characters in byte order, so the
/// witness is also the least among the shortest ones.
pub fn distinguishing_string(a: &Simulator, b: &Simulator, chars: &[u8]) -> Option<Label> {
    let mut chars = chars.to_vec();
    chars.sort_unstable();
    chars.dedup();
    let start = (a.start(), b.start());
    let mut parent: HashMap<Pair, Option<(Pair, u8)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if a.accepts_set(&pair.0) != b.accepts_set(&pair.1) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(Some((prev, c))) = parent.get(&cur).cloned() {
                word.push(c);
                cur = prev;
            }
            word.reverse();
            return Some(Label::new(word));
        }
        for &c in &chars {
            let next = (a.step(&pair.0, c), b.step(&pair.1, c));
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((pair.clone(), c)));
                queue.push_back(next);
            }
        }
    }
    None
}

fn union_chars(a: &Gnfa, b: &Gnfa) -> Vec<u8> {
    a.alphabet().chars().iter().chain(b.alphabet().chars()).copied().collect()
}

/// `Ok(())` when `L(a) = L(b)`, otherwise a shortest distinguishing string.
pub fn language_equiv(a: &Gnfa, b: &Gnfa) -> std::result::Result<(), Label> {
    match distinguishing_string(&Simulator::language(a), &Simulator::language(b), &union_chars(a, b)) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// `Ok(())` when `W(a) = W(b)`, otherwise a shortest distinguishing string.
pub fn w_language_equiv(a: &Gnfa, b: &Gnfa) -> std::result::Result<(), Label> {
    match distinguishing_string(&Simulator::w_language(a), &Simulator::w_language(b), &union_chars(a, b)) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Members of `W(g)` up to `max_len`, in shortlex order, each with its `I_α`.
pub fn w_strings(g: &Gnfa, max_len: usize) -> Vec<(Label, BTreeSet<usize>)> {
    let sim = Simulator::language(g);
    let chars = g.alphabet().chars();
    let mut out = Vec::new();
    let mut level = vec![(Vec::new(), sim.start())];
    for len in 0..=max_len {
        let mut next = Vec::new();
        for (word, set) in level {
            let reached = sim.originals_in(&set);
            if !reached.is_empty() {
                out.push((Label::new(word.clone()), reached));
            }
            if len == max_len {
                continue;
            }
            for &c in chars {
                let s = sim.step(&set, c);
                if !s.is_empty() {
                    let mut w = word.clone();
                    w.push(c);
                    next.push((w, s));
                }
            }
        }
        level = next;
    }
    out
}
