//! Generalized Burrows–Wheeler transform of Wheeler automata.

use std::fmt;
use std::str::FromStr;

use log::{info, warn};

use crate::automaton::{Alphabet, Edge, Gnfa, Label};
use crate::error::{Error, Result};
use crate::succinct::{LabelDictionary, LabelSequence, RankSelectBitVector};
use crate::wheeler::{check_wheeler_order, StateOrder};

/// Strings up to this length are used when Property 1 can only be checked by enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 8;

/// Unary degree strings and label sequences per label length, plus `FIN`.
///
/// Component `i - 1` of each vector describes the edges whose label has length `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedBwt {
    alphabet: Alphabet,
    n: usize,
    out: Vec<RankSelectBitVector>,
    inc: Vec<RankSelectBitVector>,
    lab: Vec<LabelSequence>,
    fin: RankSelectBitVector,
}

impl GeneralizedBwt {
    /// Assembles and validates the components.
    pub fn from_parts(
        alphabet: Alphabet,
        n: usize,
        out: Vec<RankSelectBitVector>,
        inc: Vec<RankSelectBitVector>,
        lab: Vec<LabelSequence>,
        fin: RankSelectBitVector,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Format("a BWT needs at least one state".into()));
        }
        if out.len() != inc.len() || out.len() != lab.len() {
            return Err(Error::Format("OUT, IN and LAB disagree on r".into()));
        }
        for i in 1..=out.len() {
            let (o, c, l) = (&out[i - 1], &inc[i - 1], &lab[i - 1]);
            if o.count_ones() != n || c.count_ones() != n {
                return Err(Error::Format(format!("OUT{i} and IN{i} must contain {n} ones")));
            }
            if o.count(false) != l.len() || c.count(false) != l.len() {
                return Err(Error::Format(format!("degree sums of length {i} disagree with LAB{i}")));
            }
            if l.width() != i {
                return Err(Error::Format(format!("LAB{i} holds labels of another length")));
            }
            for item in l.items() {
                alphabet.check(item.as_bytes()).map_err(|e| Error::Format(e.to_string()))?;
            }
        }
        if fin.len() != n {
            return Err(Error::Format(format!("FIN has length {}, expected {n}", fin.len())));
        }
        if fin.count_ones() == 0 {
            return Err(Error::Format("FIN marks no final state".into()));
        }
        Ok(GeneralizedBwt { alphabet, n, out, inc, lab, fin })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    /// Longest label length.
    pub fn r(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, i: usize) -> &RankSelectBitVector {
        &self.out[i - 1]
    }

    pub fn inc(&self, i: usize) -> &RankSelectBitVector {
        &self.inc[i - 1]
    }

    pub fn lab(&self, i: usize) -> &LabelSequence {
        &self.lab[i - 1]
    }

    pub fn fin(&self) -> &RankSelectBitVector {
        &self.fin
    }

    /// Number of edges with labels of length `i`.
    pub fn edges_of_len(&self, i: usize) -> usize {
        self.lab[i - 1].len()
    }

    pub fn num_edges(&self) -> usize {
        self.lab.iter().map(|l| l.len()).sum()
    }

    /// Total length of all labels.
    pub fn total_label_len(&self) -> usize {
        self.lab.iter().map(|l| l.len() * l.width()).sum()
    }

    /// Bits of the plain encoding: labels at `⌈log₂ σ⌉` bits per character
    /// plus the four bit-string families.
    pub fn payload_bits(&self) -> usize {
        let sigma = self.alphabet.len().max(2);
        let per_char = usize::BITS as usize - (sigma - 1).leading_zeros() as usize;
        let degrees: usize = self.out.iter().chain(&self.inc).map(|b| b.len()).sum();
        self.total_label_len() * per_char + degrees + self.fin.len()
    }
}

/// BWT of `g` with states ranked by `order`.
///
/// The order must be a Wheeler order. Property 1 is verified exactly on
/// GDFAs and character NFAs, otherwise on strings up to [`DEFAULT_ORDER_BOUND`].
pub fn build_bwt(g: &Gnfa, order: &StateOrder) -> Result<GeneralizedBwt> {
    if g.has_epsilon_edge() {
        return Err(Error::Domain("automaton has epsilon edges".into()));
    }
    let report = check_wheeler_order(g, order, DEFAULT_ORDER_BOUND)?;
    if !report.is_wheeler() {
        return Err(Error::Contract(format!(
            "not a Wheeler order (initial first: {}, property 1 {}, property 2 {}, property 3 {})",
            report.initial_first, report.property1, report.property2, report.property3
        )));
    }
    if !report.is_exact() {
        warn!("property 1 confirmed only up to length {DEFAULT_ORDER_BOUND}");
    }
    let bwt = build_unchecked(g, order)?;
    let bound = bwt.total_label_len() * per_char_bits(g.alphabet()) + 2 * (bwt.num_edges() + bwt.r() * bwt.n) + bwt.n;
    info!(
        "gbwt: n={} r={} e={} total label length={} payload={} bits (reference {} bits)",
        bwt.n,
        bwt.r(),
        bwt.num_edges(),
        bwt.total_label_len(),
        bwt.payload_bits(),
        bound
    );
    Ok(bwt)
}

fn per_char_bits(a: &Alphabet) -> usize {
    let sigma = a.len().max(2);
    usize::BITS as usize - (sigma - 1).leading_zeros() as usize
}

pub(crate) fn build_unchecked(g: &Gnfa, order: &StateOrder) -> Result<GeneralizedBwt> {
    let n = g.num_states();
    let r = g.max_label_len();
    let alphabet = g.alphabet();
    let pos = |u: usize| order.position(u);
    let unary = |degrees: &[usize]| {
        RankSelectBitVector::from_bits(degrees.iter().flat_map(|&d| std::iter::repeat_n(false, d).chain([true])))
    };
    let (mut out, mut inc, mut lab) = (Vec::new(), Vec::new(), Vec::new());
    for i in 1..=r {
        let mut edges: Vec<&Edge> = g.edges().iter().filter(|e| e.label.len() == i).collect();
        edges.sort_by(|a, b| {
            pos(a.src)
                .cmp(&pos(b.src))
                .then_with(|| alphabet.colex_cmp(a.label.as_bytes(), b.label.as_bytes()))
        });
        let mut outdeg = vec![0; n];
        let mut indeg = vec![0; n];
        for e in &edges {
            outdeg[pos(e.src)] += 1;
            indeg[pos(e.dst)] += 1;
        }
        out.push(unary(&outdeg));
        inc.push(unary(&indeg));
        lab.push(LabelSequence::new(i, edges.iter().map(|e| e.label.clone()).collect())?);
    }
    let fin = RankSelectBitVector::from_bits((0..n).map(|p| g.is_final(order.state_at(p))));
    GeneralizedBwt::from_parts(alphabet.clone(), n, out, inc, lab, fin)
}

/// Per-length data derived from the BWT for querying.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexAux {
    aux: Vec<RankSelectBitVector>,
    dicts: Vec<LabelDictionary>,
}

impl IndexAux {
    /// Run starts of the labels sorted by target state.
    pub fn aux(&self, i: usize) -> &RankSelectBitVector {
        &self.aux[i - 1]
    }

    /// Distinct labels of length `i`.
    pub fn dict(&self, i: usize) -> &LabelDictionary {
        &self.dicts[i - 1]
    }
}

/// Labels of length `i` in the order of their target states.
///
/// In a Wheeler automaton this is the co-lex sorted multiset of `LAB_i`.
fn labels_by_target(b: &GeneralizedBwt, i: usize) -> Vec<Label> {
    let mut items = b.lab(i).items().to_vec();
    let a = b.alphabet();
    items.sort_by(|x, y| a.colex_cmp(x.as_bytes(), y.as_bytes()));
    items
}

pub fn derive_aux(b: &GeneralizedBwt) -> IndexAux {
    let mut aux = Vec::with_capacity(b.r());
    let mut dicts = Vec::with_capacity(b.r());
    for i in 1..=b.r() {
        let sorted = labels_by_target(b, i);
        aux.push(RankSelectBitVector::from_bits(
            (0..sorted.len()).map(|k| k == 0 || sorted[k] != sorted[k - 1]),
        ));
        dicts.push(LabelDictionary::new(i, b.alphabet(), sorted).expect("labels were validated"));
    }
    IndexAux { aux, dicts }
}

/// Unary string to per-state counts.
fn degrees(bits: &RankSelectBitVector) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0;
    for b in bits.iter() {
        if b {
            out.push(run);
            run = 0;
        } else {
            run += 1;
        }
    }
    out
}

/// Rebuilds the automaton. State `p` of the result is the state at rank
/// `p`, so the returned order is the identity.
pub fn decode_bwt(b: &GeneralizedBwt) -> Result<(Gnfa, StateOrder)> {
    let n = b.num_states();
    let mut edges = Vec::new();
    for i in 1..=b.r() {
        let outdeg = degrees(b.out(i));
        let indeg = degrees(b.inc(i));
        let mut sources: Vec<(Label, usize)> = Vec::new();
        let mut items = b.lab(i).items().iter();
        for (p, &d) in outdeg.iter().enumerate() {
            for _ in 0..d {
                sources.push((items.next().expect("degree sums checked").clone(), p));
            }
        }
        let mut targets: Vec<(Label, usize)> = Vec::new();
        let mut sorted = labels_by_target(b, i).into_iter();
        for (p, &d) in indeg.iter().enumerate() {
            for _ in 0..d {
                targets.push((sorted.next().expect("degree sums checked"), p));
            }
        }
        // The j-th edge labeled ρ by source rank is the j-th by target rank.
        sources.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        targets.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        for ((label, src), (_, dst)) in sources.into_iter().zip(targets) {
            edges.push(Edge { src, dst, label });
        }
    }
    let finals = (1..=n).filter(|&p| b.fin().get(p).unwrap_or(false)).map(|p| p - 1);
    let g = Gnfa::new(b.alphabet().clone(), n, 0, finals, edges).map_err(|e| Error::Format(e.to_string()))?;
    Ok((g, StateOrder::identity(n)))
}

impl fmt::Display for GeneralizedBwt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gbwt v1")?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "r {}", self.r())?;
        writeln!(f, "alphabet {}", String::from_utf8_lossy(self.alphabet.chars()))?;
        for i in 1..=self.r() {
            writeln!(f, "OUT{i} {}", self.out(i))?;
            writeln!(f, "IN{i} {}", self.inc(i))?;
            write!(f, "LAB{i}")?;
            for l in self.lab(i).items() {
                write!(f, " {l}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "FIN {}", self.fin)
    }
}

impl FromStr for GeneralizedBwt {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_gbwt(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }
}

/// Parses the `gbwt v1` lines, ignoring blank lines and unknown trailing keys
/// handled by the caller.
pub(crate) fn parse_gbwt<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<GeneralizedBwt> {
    let mut header = false;
    let (mut n, mut r, mut alphabet) = (None, None, None);
    let (mut out, mut inc, mut lab): (Vec<Option<_>>, Vec<Option<_>>, Vec<Option<_>>) = (vec![], vec![], vec![]);
    let mut fin = None;
    for (line_no, line) in lines {
        let mut tokens = line.split_whitespace();
        let Some(key) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        let err = |m: &str| Error::parse(line_no, m.to_string());
        if !header {
            if key != "gbwt" || rest != ["v1"] {
                return Err(err("expected header `gbwt v1`"));
            }
            header = true;
            continue;
        }
        let single = || match rest[..] {
            [x] => Ok(x),
            [] => Ok(""),
            _ => Err(err("expected one value")),
        };
        let number = |s: &str| s.parse::<usize>().map_err(|_| err("expected a number"));
        let bits = |s: &str| s.parse::<RankSelectBitVector>().map_err(|e| Error::parse(line_no, e.to_string()));
        let slot = |key: &str, prefix: &str, r: Option<usize>| -> Result<Option<usize>> {
            match key.strip_prefix(prefix) {
                None => Ok(None),
                Some(digits) => {
                    let i = number(digits)?;
                    let r = r.ok_or_else(|| err("`r` must precede per-length lines"))?;
                    if i == 0 || i > r {
                        return Err(err("label length outside 1..r"));
                    }
                    Ok(Some(i - 1))
                }
            }
        };
        match key {
            "n" => n = Some(number(single()?)?),
            "r" => {
                let v = number(single()?)?;
                r = Some(v);
                out = vec![None; v];
                inc = vec![None; v];
                lab = vec![None; v];
            }
            "alphabet" => {
                alphabet = Some(Alphabet::new(rest.concat().as_bytes()).map_err(|e| err(&e.to_string()))?)
            }
            "FIN" => fin = Some(bits(single()?)?),
            _ => {
                if let Some(i) = slot(key, "OUT", r)? {
                    out[i] = Some(bits(single()?)?);
                } else if let Some(i) = slot(key, "IN", r)? {
                    inc[i] = Some(bits(single()?)?);
                } else if let Some(i) = slot(key, "LAB", r)? {
                    let items = rest.iter().map(|&s| Label::from(s)).collect();
                    lab[i] = Some(LabelSequence::new(i + 1, items).map_err(|e| err(&e.to_string()))?);
                } else {
                    return Err(err(&format!("unknown key {key:?}")));
                }
            }
        }
    }
    let missing = |what: &str| Error::Format(format!("missing {what}"));
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    r.ok_or_else(|| missing("r"))?;
    fn take<T>(v: Vec<Option<T>>, what: &str) -> Result<Vec<T>> {
        v.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| Error::Format(format!("missing {what}{}", i + 1))))
            .collect()
    }
    GeneralizedBwt::from_parts(
        alphabet,
        n,
        take(out, "OUT")?,
        take(inc, "IN")?,
        take(lab, "LAB")?,
        fin.ok_or_else(|| missing("FIN"))?,
    )
}
