//! Interval-based pattern matching on the generalized BWT.

use std::fmt;
use std::str::FromStr;

use crate::automaton::{Gnfa, Label};
use crate::error::{Error, Result};
use crate::gbwt::{build_bwt, derive_aux, parse_gbwt, GeneralizedBwt, IndexAux};
use crate::wheeler::StateOrder;

/// Positions `lo..=hi` in the Wheeler order, 1-based; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateInterval {
    pub lo: usize,
    pub hi: usize,
}

impl StateInterval {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi + 1).saturating_sub(self.lo)
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// `a` counts the states reached only by strings below the prefix, `b`
/// additionally counts those reached by a string ending with the prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GCounts {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// States reached by some path ending with the pattern.
    Suffix,
    /// States reached from the initial state by the whole pattern.
    Anchored,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmIndex {
    bwt: GeneralizedBwt,
    aux: IndexAux,
    order: StateOrder,
}

impl FmIndex {
    /// `order` maps ranks back to the caller's state ids.
    pub fn new(bwt: GeneralizedBwt, order: StateOrder) -> Result<Self> {
        if order.len() != bwt.num_states() {
            return Err(Error::Format("order and BWT disagree on the number of states".into()));
        }
        let aux = derive_aux(&bwt);
        Ok(FmIndex { bwt, aux, order })
    }

    pub fn build(g: &Gnfa, order: &StateOrder) -> Result<Self> {
        Self::new(build_bwt(g, order)?, order.clone())
    }

    pub fn bwt(&self) -> &GeneralizedBwt {
        &self.bwt
    }

    pub fn order(&self) -> &StateOrder {
        &self.order
    }

    fn n(&self) -> usize {
        self.bwt.num_states()
    }

    fn r(&self) -> usize {
        self.bwt.r()
    }

    /// Caller's id of the state at 1-based rank `pos`.
    pub fn state_at(&self, pos: usize) -> usize {
        self.order.state_at(pos - 1)
    }

    /// Edges labeled `rho` leaving the first `k` states.
    pub fn op1_out_prefix(&self, k: usize, rho: &Label) -> Result<usize> {
        if k > self.n() {
            return Err(Error::Query(format!("prefix length {k} beyond {} states", self.n())));
        }
        let i = rho.len();
        if k == 0 || i == 0 || i > self.r() {
            return Ok(0);
        }
        let out = self.bwt.out(i);
        let d = out.rank(out.select(k, true)?, false)?;
        self.bwt.lab(i).rank(d, rho)
    }

    /// Largest `k` such that at most `h` edges labeled `rho` enter the first `k` states.
    pub fn op2_max_prefix_with_in_at_most(&self, rho: &Label, h: usize) -> usize {
        let i = rho.len();
        if i == 0 || i > self.r() {
            return self.n();
        }
        let lab = self.bwt.lab(i);
        let total = lab.count(rho).expect("width matches");
        if total <= h {
            return self.n();
        }
        let rank = self.aux.dict(i).rank(rho).expect("label occurs");
        let g = self.aux.aux(i).select(rank, true).expect("run exists") + h;
        let inc = self.bwt.inc(i);
        let f = inc.rank(inc.select(g, false).expect("edge exists"), true).expect("in range") + 1;
        f - 1
    }

    /// Smallest `t` such that at least `z` edges labeled `rho` enter the first `t` states.
    pub fn op3_min_prefix_with_in_at_least(&self, rho: &Label, z: usize) -> Option<usize> {
        debug_assert!(z >= 1);
        let k = self.op2_max_prefix_with_in_at_most(rho, z - 1);
        (k < self.n()).then_some(k + 1)
    }

    /// Largest `h` such that every length-`i` label entering the first `h`
    /// states is below `q` (or at most `q` when `inclusive`).
    fn max_prefix_incoming_below(&self, i: usize, q: &Label, inclusive: bool) -> usize {
        let dict = self.aux.dict(i);
        let y = if inclusive { dict.succ_strict(q) } else { dict.succ_or_equal(q) };
        match y {
            None => self.n(),
            Some(y) => self.op2_max_prefix_with_in_at_most(y, 0),
        }
    }

    /// Largest `h` such that every length-`i` label entering the first `h`
    /// states is co-lexicographically below `q`.
    pub fn op4_max_prefix_all_incoming_below(&self, i: usize, q: &Label) -> usize {
        if i == 0 || i > self.r() {
            return self.n();
        }
        self.max_prefix_incoming_below(i, q, false)
    }

    /// Largest `h` such that the state at rank `h` has an incoming length-`i`
    /// label ending with `alpha`; 0 if there is none.
    pub fn op5_max_state_with_incoming_suffixed(&self, i: usize, alpha: &Label) -> usize {
        if i == 0 || i > self.r() || alpha.len() > i {
            return 0;
        }
        let Some(c) = self.bwt.alphabet().max_char() else { return 0 };
        let mut padded = vec![c; i - alpha.len()];
        padded.extend_from_slice(alpha.as_bytes());
        match self.aux.dict(i).pred(&Label::new(padded)) {
            Some(a) if alpha.is_suffix_of(a.as_bytes()) => {
                let d = self.bwt.lab(i).count(a).expect("width matches");
                self.op3_min_prefix_with_in_at_least(a, d).expect("label occurs")
            }
            _ => 0,
        }
    }

    fn counts(&self, alpha: &[u8], mode: Mode) -> Vec<GCounts> {
        let n = self.n();
        let r = self.r();
        let start = match mode {
            Mode::Suffix => GCounts { a: 0, b: n },
            Mode::Anchored => GCounts { a: 0, b: 1 },
        };
        let mut steps = vec![start];
        for m in 1..=alpha.len() {
            let prefix = Label::from(&alpha[..m]);
            // Suffix lengths taking part in the recursion.
            let k_max = match mode {
                Mode::Suffix => r.min(m - 1),
                Mode::Anchored => r.min(m),
            };
            let mut a = n;
            let mut fg = Vec::with_capacity(k_max);
            for k in 1..=k_max {
                let rho = Label::from(&alpha[m - k..m]);
                let prev = steps[m - k];
                let f = self.op1_out_prefix(prev.a, &rho).expect("counts stay in range");
                let g = self.op1_out_prefix(prev.b, &rho).expect("counts stay in range");
                debug_assert!(g >= f, "g_k < f_k");
                a = a.min(self.op2_max_prefix_with_in_at_most(&rho, f));
                fg.push((rho, f, g));
            }
            for i in 1..=r {
                let bound = match mode {
                    Mode::Suffix => self.op4_max_prefix_all_incoming_below(i, &prefix),
                    Mode::Anchored => self.max_prefix_incoming_below(i, &prefix, true),
                };
                a = a.min(bound);
            }
            let mut b = a;
            if mode == Mode::Suffix {
                for i in m..=r {
                    b = b.max(self.op5_max_state_with_incoming_suffixed(i, &prefix));
                }
            }
            for (rho, f, g) in fg {
                if g > f {
                    b = b.max(self.op3_min_prefix_with_in_at_least(&rho, g).unwrap_or(0));
                }
            }
            steps.push(GCounts { a, b });
        }
        steps
    }

    /// Counts for every prefix of `alpha`, starting with the empty prefix.
    pub fn g_counts(&self, alpha: &Label) -> Vec<GCounts> {
        self.counts(alpha.as_bytes(), Mode::Suffix)
    }

    /// Counts of the anchored recursion used by [`FmIndex::member`].
    pub fn g_counts_anchored(&self, alpha: &Label) -> Vec<GCounts> {
        self.counts(alpha.as_bytes(), Mode::Anchored)
    }

    fn interval(&self, alpha: &Label, mode: Mode) -> StateInterval {
        if self.bwt.alphabet().check(alpha.as_bytes()).is_err() {
            return StateInterval { lo: 1, hi: 0 };
        }
        let last = *self.counts(alpha.as_bytes(), mode).last().expect("at least the start");
        StateInterval { lo: last.a + 1, hi: last.b }
    }

    /// Ranks of the states reached by some path whose label ends with `alpha`.
    pub fn smlg(&self, alpha: &Label) -> StateInterval {
        self.interval(alpha, Mode::Suffix)
    }

    /// Ranks of the states reached from the initial state by paths spelling `alpha`.
    pub fn reached(&self, alpha: &Label) -> StateInterval {
        self.interval(alpha, Mode::Anchored)
    }

    pub fn member(&self, alpha: &Label) -> bool {
        let iv = self.reached(alpha);
        if iv.is_empty() {
            return false;
        }
        let fin = self.bwt.fin();
        fin.rank(iv.hi, true).expect("in range") > fin.rank(iv.lo - 1, true).expect("in range")
    }

    /// Caller's state ids for an interval.
    pub fn states(&self, iv: StateInterval) -> Vec<usize> {
        iv.positions().map(|p| self.state_at(p)).collect()
    }
}

/// Index file: the `gbwt v1` payload followed by an `order` line.
impl fmt::Display for FmIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bwt)?;
        writeln!(f, "order {}", self.order)
    }
}

impl FromStr for FmIndex {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut order_line = None;
        let mut payload = Vec::new();
        for (i, line) in text.lines().enumerate() {
            match line.trim_start().strip_prefix("order") {
                Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
                    order_line = Some(rest.to_string())
                }
                _ => payload.push((i + 1, line)),
            }
        }
        let bwt = parse_gbwt(payload.into_iter())?;
        let order = match order_line {
            Some(line) => StateOrder::parse(&line, bwt.num_states())?,
            None => StateOrder::identity(bwt.num_states()),
        };
        Self::new(bwt, order)
    }
}
