//! Co-lex orders and Wheeler orders.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::{expand, parse_state_name, state_name, w_strings, Gnfa, Label};
use crate::error::{Error, Result};

/// A total order on states; `sequence[0]` is the least state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl StateOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (i, &u) in sequence.iter().enumerate() {
            if u >= n || position[u] != usize::MAX {
                return Err(Error::Contract("order is not a permutation of the states".into()));
            }
            position[u] = i;
        }
        Ok(StateOrder { sequence, position })
    }

    pub fn identity(n: usize) -> Self {
        StateOrder { sequence: (0..n).collect(), position: (0..n).collect() }
    }

    /// Parses whitespace-separated state names (`u3` or `3`).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let seq = text
            .split_whitespace()
            .map(|t| parse_state_name(t, n))
            .collect::<Result<Vec<_>>>()?;
        if seq.len() != n {
            return Err(Error::Contract(format!("order names {} states, automaton has {n}", seq.len())));
        }
        Self::new(seq)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// 0-based rank of `u`.
    pub fn position(&self, u: usize) -> usize {
        self.position[u]
    }

    pub fn state_at(&self, pos: usize) -> usize {
        self.sequence[pos]
    }
}

impl fmt::Display for StateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.sequence.iter().map(|&u| state_name(u)).collect();
        f.write_str(&names.join(" "))
    }
}

/// A strict partial order on `0..n`, stored as a dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialOrderRelation {
    n: usize,
    less: Vec<bool>,
}

impl PartialOrderRelation {
    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn less(&self, u: usize, v: usize) -> bool {
        self.less[u * self.n + v]
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        u == v || self.less(u, v) || self.less(v, u)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (0..self.n).filter(move |&v| self.less(u, v)).map(move |v| (u, v)))
    }

    pub fn is_strict_partial_order(&self) -> bool {
        let n = self.n;
        (0..n).all(|u| !self.less(u, u))
            && self.pairs().all(|(u, v)| !self.less(v, u))
            && self.pairs().all(|(u, v)| (0..n).all(|w| !self.less(v, w) || self.less(u, w)))
    }

    /// First incomparable pair `(u, v)` with `u < v` by id, if any.
    pub fn incomparable_pair(&self, states: impl Iterator<Item = usize> + Clone) -> Option<(usize, usize)> {
        for u in states.clone() {
            for v in states.clone() {
                if u < v && !self.comparable(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

impl fmt::Debug for PartialOrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// The co-lex relation `u ≺ v` (every string reaching `u` precedes every
/// string reaching `v`) of a character DFA.
///
/// Greatest fixpoint: start from all pairs and delete `(u, v)` when `v` is
/// initial, when some character entering `u` exceeds some character entering
/// `v`, or when equal characters come from an already deleted pair.
pub fn dfa_colex_order(d: &Gnfa) -> Result<PartialOrderRelation> {
    if !d.is_dfa() {
        return Err(Error::Domain("co-lex order needs a DFA".into()));
    }
    let n = d.num_states();
    let alphabet = d.alphabet();
    let sigma = alphabet.len();
    // Incoming character ranks, with -1 standing for ε at the initial state.
    let mut min_in = vec![i32::MAX; n];
    let mut max_in = vec![i32::MIN; n];
    let mut delta = vec![usize::MAX; n * sigma];
    let s = d.initial();
    min_in[s] = -1;
    max_in[s] = -1;
    for e in d.edges() {
        let c = alphabet.rank_of(e.label.as_bytes()[0]).expect("checked on construction") as usize;
        min_in[e.dst] = min_in[e.dst].min(c as i32);
        max_in[e.dst] = max_in[e.dst].max(c as i32);
        delta[e.src * sigma + c] = e.dst;
    }
    let mut alive = vec![true; n * n];
    let mut stack = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || v == s || max_in[u] > min_in[v] {
                alive[u * n + v] = false;
                if u != v {
                    stack.push((u, v));
                }
            }
        }
    }
    while let Some((u, v)) = stack.pop() {
        for c in 0..sigma {
            let (x, y) = (delta[u * sigma + c], delta[v * sigma + c]);
            if x != usize::MAX && y != usize::MAX && x != y && alive[x * n + y] {
                alive[x * n + y] = false;
                stack.push((x, y));
            }
        }
    }
    Ok(PartialOrderRelation { n, less: alive })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WheelerVerdict {
    Wheeler(StateOrder),
    /// Two states the co-lex relation cannot compare.
    NotWheeler { u: usize, v: usize },
}

fn colex_relation_on_originals(g: &Gnfa) -> Result<PartialOrderRelation> {
    let x = expand(g);
    let full = dfa_colex_order(&x.nfa)?;
    let n = g.num_states();
    let mut less = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            less[u * n + v] = full.less(x.map(u), x.map(v));
        }
    }
    Ok(PartialOrderRelation { n, less })
}

/// Decides whether a trimmed GDFA is Wheeler and returns its order.
pub fn gdfa_wheeler_order(g: &Gnfa) -> Result<WheelerVerdict> {
    if !g.is_gdfa() {
        return Err(Error::Domain("Wheeler test needs a GDFA".into()));
    }
    if !g.is_trim() {
        return Err(Error::Contract("automaton must be trim".into()));
    }
    let rel = colex_relation_on_originals(g)?;
    let n = g.num_states();
    if let Some((u, v)) = rel.incomparable_pair(0..n) {
        return Ok(WheelerVerdict::NotWheeler { u, v });
    }
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by(|&u, &v| {
        if u == v {
            Ordering::Equal
        } else if rel.less(u, v) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });
    Ok(WheelerVerdict::Wheeler(StateOrder::new(seq)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyStatus {
    Holds,
    /// No violation among strings up to the given length.
    HoldsUpToBound(usize),
    Fails(String),
}

impl PropertyStatus {
    pub fn fails(&self) -> bool {
        matches!(self, PropertyStatus::Fails(_))
    }
}

impl fmt::Display for PropertyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyStatus::Holds => f.write_str("holds"),
            PropertyStatus::HoldsUpToBound(b) => write!(f, "holds up to length {b}"),
            PropertyStatus::Fails(why) => write!(f, "fails: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub initial_first: bool,
    /// `u ≤ v` implies every string reaching `u` precedes those reaching `v`
    /// (strings reaching both excepted).
    pub property1: PropertyStatus,
    /// Edge labels entering earlier states precede those entering later
    /// states, unless the later label is a strict suffix of the earlier one.
    pub property2: PropertyStatus,
    /// Equal labels preserve the order of their sources.
    pub property3: PropertyStatus,
}

impl OrderReport {
    pub fn is_wheeler(&self) -> bool {
        self.initial_first && !self.property1.fails() && !self.property2.fails() && !self.property3.fails()
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.property1, PropertyStatus::HoldsUpToBound(_))
    }
}

fn edge_str(src: usize, dst: usize, label: &Label) -> String {
    format!("({}, {}, {label})", state_name(src), state_name(dst))
}

fn check_properties_2_3(g: &Gnfa, order: &StateOrder) -> (PropertyStatus, PropertyStatus) {
    let alphabet = g.alphabet();
    let mut p2 = PropertyStatus::Holds;
    let mut p3 = PropertyStatus::Holds;
    for e in g.edges() {
        for f in g.edges() {
            if order.position(e.dst) >= order.position(f.dst) {
                continue;
            }
            let (rho, rho2) = (e.label.as_bytes(), f.label.as_bytes());
            let strict_suffix = rho2.len() < rho.len() && rho.ends_with(rho2);
            if !p2.fails() && !strict_suffix && alphabet.colex_cmp(rho, rho2) == Ordering::Greater {
                p2 = PropertyStatus::Fails(format!(
                    "{} enters an earlier state than {}",
                    edge_str(e.src, e.dst, &e.label),
                    edge_str(f.src, f.dst, &f.label)
                ));
            }
            if !p3.fails() && rho == rho2 && order.position(e.src) > order.position(f.src) {
                p3 = PropertyStatus::Fails(format!(
                    "{} and {} cross",
                    edge_str(e.src, e.dst, &e.label),
                    edge_str(f.src, f.dst, &f.label)
                ));
            }
        }
    }
    (p2, p3)
}

/// Property 1 against the strings of length at most `bound`.
fn check_property1_bounded(g: &Gnfa, order: &StateOrder, bound: usize) -> PropertyStatus {
    let alphabet = g.alphabet();
    let n = g.num_states();
    let mut reach: Vec<BTreeSet<Label>> = vec![BTreeSet::new(); n];
    for (alpha, states) in w_strings(g, bound) {
        for u in states {
            reach[u].insert(alpha.clone());
        }
    }
    let cmp = |a: &Label, b: &Label| alphabet.colex_cmp(a.as_bytes(), b.as_bytes());
    let max = |xs: &mut dyn Iterator<Item = &Label>| xs.max_by(|a, b| cmp(a, b)).cloned();
    let min = |xs: &mut dyn Iterator<Item = &Label>| xs.min_by(|a, b| cmp(a, b)).cloned();
    for i in 0..n {
        for j in i + 1..n {
            let (u, v) = (order.state_at(i), order.state_at(j));
            let (a, b) = (&reach[u], &reach[v]);
            let only_a = max(&mut a.iter().filter(|x| !b.contains(*x)));
            let only_b = min(&mut b.iter().filter(|x| !a.contains(*x)));
            let violation = match (&only_a, min(&mut b.iter())) {
                (Some(x), Some(y)) if cmp(x, &y) != Ordering::Less => Some((x.clone(), y)),
                _ => None,
            }
            .or_else(|| match (max(&mut a.iter()), &only_b) {
                (Some(x), Some(y)) if cmp(&x, y) != Ordering::Less => Some((x, y.clone())),
                _ => None,
            });
            if let Some((x, y)) = violation {
                return PropertyStatus::Fails(format!(
                    "{x} reaches {} and {y} reaches {}, but {x} does not precede {y}",
                    state_name(u),
                    state_name(v)
                ));
            }
        }
    }
    PropertyStatus::HoldsUpToBound(bound)
}

/// Checks a proposed Wheeler order on an ε-free automaton.
///
/// Properties 2 and 3 are checked exactly. Property 1 is exact on trim GDFAs
/// and on character NFAs that satisfy the other properties; otherwise it is
/// checked on strings up to length `bound`.
pub fn check_wheeler_order(g: &Gnfa, order: &StateOrder, bound: usize) -> Result<OrderReport> {
    if g.has_epsilon_edge() {
        return Err(Error::Domain("automaton has epsilon edges".into()));
    }
    if order.len() != g.num_states() {
        return Err(Error::Contract("order does not cover the automaton".into()));
    }
    let initial_first = order.state_at(0) == g.initial();
    let (property2, property3) = check_properties_2_3(g, order);
    let class = g.class();
    let property1 = if class.is_gdfa && g.is_trim() {
        let rel = colex_relation_on_originals(g)?;
        let seq = order.sequence();
        let bad = (0..seq.len())
            .flat_map(|i| (i + 1..seq.len()).map(move |j| (seq[i], seq[j])))
            .find(|&(u, v)| !rel.less(u, v));
        match bad {
            None => PropertyStatus::Holds,
            Some((u, v)) => PropertyStatus::Fails(format!(
                "{} is placed before {} but does not precede it co-lexicographically",
                state_name(u),
                state_name(v)
            )),
        }
    } else if class.is_nfa && initial_first && !property2.fails() && !property3.fails() {
        PropertyStatus::Holds
    } else {
        check_property1_bounded(g, order, bound)
    };
    Ok(OrderReport { initial_first, property1, property2, property3 })
}

/// Restricts a Wheeler order of the expansion to the original states.
pub fn induced_gnfa_order(g: &Gnfa, nfa_order: &StateOrder) -> Result<StateOrder> {
    let x = expand(g);
    if nfa_order.len() != x.nfa.num_states() {
        return Err(Error::Contract("order does not cover the expanded automaton".into()));
    }
    let report = check_wheeler_order(&x.nfa, nfa_order, 0)?;
    if !report.is_wheeler() {
        return Err(Error::Contract("order is not a Wheeler order of the expansion".into()));
    }
    let seq = nfa_order.sequence().iter().copied().filter(|&v| x.is_original(v)).collect();
    StateOrder::new(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Gnfa {
        s.parse().unwrap()
    }

    fn fig4() -> Gnfa {
        parse(
            "states 3\ninitial 1\nfinal 2 3\nedge 1 2 ab\nedge 1 2 b\nedge 1 3 ac\nedge 1 3 c\n\
             edge 2 2 b\nedge 3 3 bc\n",
        )
    }

    fn fig5_left() -> Gnfa {
        parse("alphabet abc\nstates 4\ninitial 1\nfinal 2 3\nedge 1 2 ba\nedge 1 4 c\nedge 4 3 a\n")
    }

    fn order(seq: &[usize]) -> StateOrder {
        StateOrder::new(seq.to_vec()).unwrap()
    }

    #[test]
    fn fig4_order() {
        assert_eq!(gdfa_wheeler_order(&fig4()).unwrap(), WheelerVerdict::Wheeler(order(&[0, 1, 2])));
        let rel = dfa_colex_order(&expand(&fig4()).nfa).unwrap();
        assert!(rel.is_strict_partial_order());
        assert!(rel.less(0, 1) && rel.less(1, 2));
    }

    #[test]
    fn fig5_verdicts() {
        assert_eq!(gdfa_wheeler_order(&fig5_left()).unwrap(), WheelerVerdict::Wheeler(order(&[0, 1, 2, 3])));
        let right = parse("states 3\ninitial 1\nfinal 2 3\nedge 1 2 ac\nedge 1 2 b\nedge 1 3 c\n");
        assert_eq!(gdfa_wheeler_order(&right).unwrap(), WheelerVerdict::NotWheeler { u: 1, v: 2 });
    }

    #[test]
    fn aa_loop_is_wheeler_but_its_expansion_is_not() {
        let aa = parse("states 1\ninitial 1\nfinal 1\nedge 1 1 aa\n");
        assert_eq!(gdfa_wheeler_order(&aa).unwrap(), WheelerVerdict::Wheeler(order(&[0])));
        let x = expand(&aa).nfa;
        let rel = dfa_colex_order(&x).unwrap();
        assert!(!rel.comparable(0, 1));
        assert_eq!(gdfa_wheeler_order(&x).unwrap(), WheelerVerdict::NotWheeler { u: 0, v: 1 });
    }

    #[test]
    fn single_state_has_empty_relation() {
        let g = parse("states 1\ninitial 1\nfinal 1\nedge 1 1 a\n");
        assert_eq!(dfa_colex_order(&g).unwrap().pairs().count(), 0);
    }

    #[test]
    fn fig5_left_properties_hold() {
        let r = check_wheeler_order(&fig5_left(), &order(&[0, 1, 2, 3]), 6).unwrap();
        assert!(r.is_wheeler() && r.is_exact());
    }

    #[test]
    fn fig7_center_fails_2_and_3() {
        let g = parse(
            "states 5\ninitial 1\nfinal 4 5\nedge 1 2 a\nedge 1 2 b\nedge 1 3 a\nedge 1 3 b\n\
             edge 2 5 c\nedge 3 4 c\n",
        );
        let r = check_wheeler_order(&g, &StateOrder::identity(5), 8).unwrap();
        assert!(r.initial_first);
        assert_eq!(r.property1, PropertyStatus::HoldsUpToBound(8));
        assert!(r.property2.fails() && r.property3.fails());
    }

    #[test]
    fn fig7_right_fails_1_only() {
        let g = parse("states 4\ninitial 1\nfinal 3 4\nedge 1 2 b\nedge 2 3 c\nedge 1 4 ac\n");
        let r = check_wheeler_order(&g, &StateOrder::identity(4), 8).unwrap();
        assert!(r.initial_first);
        assert_eq!(r.property2, PropertyStatus::Holds);
        assert_eq!(r.property3, PropertyStatus::Holds);
        assert!(r.property1.fails());
    }

    #[test]
    fn induced_orders() {
        let g = fig4();
        let x = expand(&g).nfa;
        let WheelerVerdict::Wheeler(full) = gdfa_wheeler_order(&x).unwrap() else { panic!() };
        assert_eq!(induced_gnfa_order(&g, &full).unwrap(), order(&[0, 1, 2]));
        let nfa = parse("states 3\ninitial 1\nfinal 3\nedge 1 2 a\nedge 1 3 b\nedge 2 3 b\n");
        let id = StateOrder::identity(3);
        assert_eq!(induced_gnfa_order(&nfa, &id).unwrap(), id);
        assert!(induced_gnfa_order(&g, &StateOrder::identity(3)).is_err());
    }

    #[test]
    fn order_text() {
        let o = StateOrder::parse("u2 1 u3", 3).unwrap();
        assert_eq!(o.to_string(), "u2 u1 u3");
        assert!(StateOrder::parse("u1 u1 u2", 3).is_err());
        assert!(StateOrder::parse("u1 u2", 3).is_err());
    }
}
