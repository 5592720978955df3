//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p gwheel-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use gwheel::automaton::{expand, language_equiv, language_member_naive, w_language_automaton, w_language_equiv};
use gwheel::fixtures::{self, load};
use gwheel::fm_index::FmIndex;
use gwheel::gbwt::{build_bwt, decode_bwt};
use gwheel::myhill_nerode::{check_right_invariance, gdfa_isomorphic, minimize, RightInvariance};
use gwheel::oracle::{moore_minimize_dfa, naive_g_prec, naive_smlg, wheeler_dfa_search};
use gwheel::random::{self, GenParams, GenRng};
use gwheel::succinct::{LabelDictionary, LabelSequence, RankSelectBitVector};
use gwheel::wheeler::{dfa_colex_order, gdfa_wheeler_order, StateOrder, WheelerVerdict};
use gwheel::{Alphabet, Gnfa, Label};

const SEED: u64 = 0x5eed_0001;
const CORPUS: usize = 500;
const PATTERNS: usize = 200;
const LONG_PATTERNS: usize = 4;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Instance {
    g: Gnfa,
    order: StateOrder,
}

fn wheeler_order(g: &Gnfa) -> Result<StateOrder, String> {
    match gdfa_wheeler_order(g).map_err(|e| e.to_string())? {
        WheelerVerdict::Wheeler(o) => Ok(o),
        WheelerVerdict::NotWheeler { u, v } => Err(format!("generator produced a non-Wheeler GDFA ({u}, {v})")),
    }
}

fn wheeler_corpus(rng: &mut GenRng) -> Result<Vec<Instance>, String> {
    const CHARS: &[u8] = b"abcd";
    (0..CORPUS)
        .map(|_| {
            let n = rng.gen_range(1..=30);
            let r = rng.gen_range(1..=4);
            let sigma = rng.gen_range(1..=4);
            let p = GenParams::new(n, r, &CHARS[..sigma]).unwrap();
            let g = random::random_wheeler_gdfa(rng, &p);
            let order = wheeler_order(&g)?;
            Ok(Instance { g, order })
        })
        .collect()
}

fn patterns(rng: &mut GenRng, g: &Gnfa) -> Vec<Label> {
    let mut out = random::random_patterns(rng, g, PATTERNS - LONG_PATTERNS, 12);
    for _ in 0..LONG_PATTERNS {
        let len = rng.gen_range(30..=40);
        out.push(Label::new(random::random_walk_string(rng, g, len)));
    }
    out
}

fn positions(order: &StateOrder, states: &BTreeSet<usize>) -> Vec<usize> {
    let mut p: Vec<usize> = states.iter().map(|&u| order.position(u) + 1).collect();
    p.sort_unstable();
    p
}

fn criterion_1() -> Outcome {
    let g = load(fixtures::FIG4);
    let order = StateOrder::identity(3);
    let b = build_bwt(&g, &order).map_err(|e| e.to_string())?;
    let bits = |v: &RankSelectBitVector| v.to_bit_string();
    let labs = |i: usize| b.lab(i).items().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
    ensure!(bits(b.out(1)) == "001011", "OUT1 = {}", bits(b.out(1)));
    ensure!(bits(b.out(2)) == "001101", "OUT2 = {}", bits(b.out(2)));
    ensure!(bits(b.inc(1)) == "100101", "IN1 = {}", bits(b.inc(1)));
    ensure!(bits(b.inc(2)) == "101001", "IN2 = {}", bits(b.inc(2)));
    ensure!(labs(1) == "b c b", "LAB1 = {}", labs(1));
    ensure!(labs(2) == "ab ac bc", "LAB2 = {}", labs(2));
    ensure!(bits(b.fin()) == "011", "FIN = {}", bits(b.fin()));
    ensure!(b.to_string() == fixtures::FIG4_GBWT, "serialized form differs from the golden file");
    Ok(format!("bit-exact, payload {} bits", b.payload_bits()))
}

fn round_trip(g: &Gnfa, order: &StateOrder) -> Result<(), String> {
    let b = build_bwt(g, order).map_err(|e| e.to_string())?;
    let (decoded, recovered) = decode_bwt(&b).map_err(|e| e.to_string())?;
    ensure!(gdfa_isomorphic(&decoded, g).map_err(|e| e.to_string())?, "decoded automaton is not isomorphic");
    // Decoded state i is the i-th state of the input order.
    let mut perm = vec![0; order.len()];
    for (i, &u) in order.sequence().iter().enumerate() {
        perm[i] = u;
    }
    let renamed = decoded.renumbered(&perm).map_err(|e| e.to_string())?;
    ensure!(renamed == *g, "decoded automaton does not follow the input order");
    ensure!(recovered == StateOrder::identity(order.len()), "recovered order is not the input order");
    Ok(())
}

fn criterion_2(corpus: &[Instance]) -> Outcome {
    let mut fixtures_done = 0;
    for (name, g) in fixtures::all() {
        if !g.is_gdfa() || !g.is_trim() {
            continue;
        }
        if let WheelerVerdict::Wheeler(order) = gdfa_wheeler_order(&g).map_err(|e| e.to_string())? {
            round_trip(&g, &order).map_err(|e| format!("{name}: {e}"))?;
            fixtures_done += 1;
        }
    }
    for (k, inst) in corpus.iter().enumerate() {
        round_trip(&inst.g, &inst.order).map_err(|e| format!("random #{k}: {e}"))?;
    }
    Ok(format!("{fixtures_done} Wheeler fixtures and {} random GDFAs round-trip", corpus.len()))
}

fn criteria_3_and_4(corpus: &[Instance], rng: &mut GenRng) -> (Outcome, Outcome) {
    let mut queries = 0usize;
    let mut occurring = 0usize;
    let mut failure3 = None;
    let mut failure4 = None;
    for (k, inst) in corpus.iter().enumerate() {
        let idx = match FmIndex::build(&inst.g, &inst.order) {
            Ok(idx) => idx,
            Err(e) => return (Err(format!("random #{k}: {e}")), Err("index build failed".into())),
        };
        for alpha in patterns(rng, &inst.g) {
            queries += 1;
            let expected = naive_smlg(&inst.g, &alpha);
            let got: BTreeSet<usize> = idx.states(idx.smlg(&alpha)).into_iter().collect();
            occurring += usize::from(!expected.is_empty());
            if failure3.is_none() && got != expected {
                failure3 = Some(format!("random #{k}, smlg({alpha}): index {got:?}, oracle {expected:?}"));
            }
            let member = idx.member(&alpha);
            if failure3.is_none() && member != language_member_naive(&inst.g, &alpha) {
                failure3 = Some(format!("random #{k}, member({alpha}) = {member}"));
            }
            if failure4.is_none() {
                failure4 = g_set_structure(&inst.order, &inst.g, &alpha).err().map(|e| format!("random #{k}, {alpha}: {e}"));
            }
        }
    }
    let ok = format!("{queries} queries on {} automata, {occurring} occurring", corpus.len());
    (failure3.map_or(Ok(ok.clone()), Err), failure4.map_or(Ok(ok), Err))
}

fn g_set_structure(order: &StateOrder, g: &Gnfa, alpha: &Label) -> Result<(), String> {
    let ends = positions(order, &naive_smlg(g, alpha));
    let below = positions(order, &naive_g_prec(g, alpha));
    if let (Some(&first), Some(&last)) = (ends.first(), ends.last()) {
        ensure!(last - first + 1 == ends.len(), "G-suffix positions {ends:?} are not contiguous");
    }
    ensure!(below.iter().enumerate().all(|(i, &p)| p == i + 1), "G-below positions {below:?} are not a prefix");
    ensure!(ends.iter().all(|p| !below.contains(p)), "G-suffix and G-below intersect");
    Ok(())
}

fn criterion_5() -> Outcome {
    let verdict = |text: &str| gdfa_wheeler_order(&load(text)).map_err(|e| e.to_string());
    let order = |seq: &[usize]| StateOrder::new(seq.to_vec()).unwrap();
    ensure!(verdict(fixtures::FIG4)? == WheelerVerdict::Wheeler(order(&[0, 1, 2])), "FIG4 verdict");
    ensure!(verdict(fixtures::FIG5_LEFT)? == WheelerVerdict::Wheeler(order(&[0, 1, 2, 3])), "FIG5-left verdict");
    ensure!(verdict(fixtures::FIG5_RIGHT)? == WheelerVerdict::NotWheeler { u: 1, v: 2 }, "FIG5-right verdict");
    ensure!(verdict(fixtures::AA)? == WheelerVerdict::Wheeler(order(&[0])), "AA verdict");
    let x = expand(&load(fixtures::AA)).nfa;
    ensure!(x.is_dfa() && x.num_states() == 2, "AA expansion is not a 2-state DFA");
    let rel = dfa_colex_order(&x).map_err(|e| e.to_string())?;
    ensure!(!rel.comparable(0, 1), "AA expansion states are comparable");
    ensure!(matches!(gdfa_wheeler_order(&x), Ok(WheelerVerdict::NotWheeler { .. })), "AA expansion verdict");
    Ok("FIG4, FIG5-left, FIG5-right, AA and its expansion".into())
}

fn gdfa_corpus(rng: &mut GenRng, count: usize) -> Vec<Gnfa> {
    const CHARS: &[u8] = b"abc";
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=12);
            let r = rng.gen_range(1..=3);
            let sigma = rng.gen_range(1..=3);
            let p = GenParams::new(n, r, &CHARS[..sigma]).unwrap().with_extra_edges(n);
            random::random_gdfa(rng, &p)
        })
        .collect()
}

fn nfa_corpus(rng: &mut GenRng, count: usize) -> Vec<Gnfa> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=7);
            let edges = rng.gen_range(n..=3 * n);
            random::random_nfa(rng, n, b"ab", edges).unwrap()
        })
        .collect()
}

fn criterion_6(corpus: &[Gnfa], rng: &mut GenRng) -> Outcome {
    let iso = |a: &Gnfa, b: &Gnfa| gdfa_isomorphic(a, b).map_err(|e| e.to_string());
    let min = |g: &Gnfa| minimize(g).map_err(|e| e.to_string());
    let mut shrunk = 0;
    for (k, g) in corpus.iter().enumerate() {
        let m = min(g)?;
        let u = random::unroll(rng, g);
        ensure!(iso(&min(&u)?, &m)?, "random #{k}: unrolled variant minimizes differently");
        ensure!(iso(&min(&m)?, &m)?, "random #{k}: minimize is not idempotent");
        ensure!(language_equiv(g, &m).is_ok(), "random #{k}: language changed");
        ensure!(w_language_equiv(g, &m).is_ok(), "random #{k}: W-language changed");
        shrunk += usize::from(m.num_states() < g.num_states());
    }
    let left = load(fixtures::FIG2_LEFT);
    let right = load(fixtures::FIG2_RIGHT);
    ensure!(iso(&min(&left)?, &left)?, "FIG2-left is not minimal");
    ensure!(iso(&min(&right)?, &right)?, "FIG2-right is not minimal");
    ensure!(language_equiv(&left, &right).is_ok(), "FIG2 languages differ");
    ensure!(w_language_equiv(&left, &right).is_err(), "FIG2 W-languages agree");
    let aaa = Label::from("aaa");
    let in_left = language_member_naive(&w_language_automaton(&left), &aaa);
    let in_right = language_member_naive(&w_language_automaton(&right), &aaa);
    ensure!(in_left != in_right, "aaa does not separate the FIG2 W-languages");
    ensure!(!iso(&left, &right)?, "FIG2 automata are isomorphic");
    Ok(format!("{} random GDFAs ({shrunk} not minimal), FIG2 pair", corpus.len()))
}

fn criterion_7(gdfas: &[Gnfa], nfas: &[Gnfa]) -> Outcome {
    let fig3 = check_right_invariance(&load(fixtures::FIG3), 3).map_err(|e| e.to_string())?;
    let expected = RightInvariance::Counterexample { alpha: "a".into(), beta: "b".into(), phi: "c".into() };
    ensure!(fig3 == expected, "FIG3 gave {fig3:?}");
    for (kind, corpus) in [("GDFA", gdfas), ("NFA", nfas)] {
        for (k, g) in corpus.iter().enumerate() {
            let r = check_right_invariance(g, 8).map_err(|e| e.to_string())?;
            ensure!(r == RightInvariance::HoldsUpToBound(8), "random {kind} #{k}: {r:?}");
        }
    }
    Ok(format!("FIG3 counterexample, {} GDFAs and {} NFAs clean to length 8", gdfas.len(), nfas.len()))
}

fn criterion_8(rng: &mut GenRng) -> Outcome {
    const CHARS: &[u8] = b"abcd";
    let mut queries = 0;
    for k in 0..100 {
        let n = rng.gen_range(1..=30);
        let sigma = rng.gen_range(1..=4);
        let p = GenParams::new(n, 1, &CHARS[..sigma]).unwrap();
        let d = random::random_wheeler_gdfa(rng, &p);
        ensure!(d.is_dfa(), "random #{k} is not a DFA");
        let m = minimize(&d).map_err(|e| e.to_string())?;
        let moore = moore_minimize_dfa(&d).map_err(|e| e.to_string())?;
        ensure!(gdfa_isomorphic(&m, &moore).map_err(|e| e.to_string())?, "random #{k}: minimizers disagree");
        let order = wheeler_order(&d)?;
        let idx = FmIndex::build(&d, &order).map_err(|e| e.to_string())?;
        for alpha in random::random_patterns(rng, &d, 50, 12) {
            queries += 1;
            for anchored in [false, true] {
                let iv = if anchored { idx.reached(&alpha) } else { idx.smlg(&alpha) };
                let got = (!iv.is_empty()).then_some((iv.lo, iv.hi));
                let expected = wheeler_dfa_search(&d, &order, &alpha, anchored);
                ensure!(got == expected, "random #{k}, {alpha} (anchored {anchored}): {got:?} vs {expected:?}");
            }
        }
    }
    Ok(format!("100 Wheeler DFAs, {queries} patterns"))
}

fn colex(a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn criterion_9(rng: &mut GenRng) -> Outcome {
    const QUERIES: usize = 100_000;
    // Bit vector.
    let len = 10_000;
    let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.3)).collect();
    let bv = RankSelectBitVector::from_bits(bits.iter().copied());
    let ones: Vec<usize> = (1..=len).filter(|&i| bits[i - 1]).collect();
    let zeros: Vec<usize> = (1..=len).filter(|&i| !bits[i - 1]).collect();
    for _ in 0..QUERIES {
        let bit = rng.gen_bool(0.5);
        let i = rng.gen_range(0..=len);
        let naive = bits[..i].iter().filter(|&&b| b == bit).count();
        ensure!(bv.rank(i, bit).ok() == Some(naive), "bitvector rank({i}, {bit})");
        let list = if bit { &ones } else { &zeros };
        let j = rng.gen_range(0..=list.len() + 1);
        let naive = (j >= 1).then(|| list.get(j - 1).copied()).flatten();
        ensure!(bv.select(j, bit).ok() == naive, "bitvector select({j}, {bit})");
    }
    // Label sequence.
    let alphabet = Alphabet::new(b"abc").unwrap();
    let width = 2;
    let random_label = |rng: &mut GenRng, w: usize| {
        Label::new((0..w).map(|_| alphabet.chars()[rng.gen_range(0..3)]).collect::<Vec<u8>>())
    };
    let items: Vec<Label> = (0..len).map(|_| random_label(rng, width)).collect();
    let seq = LabelSequence::new(width, items.clone()).unwrap();
    for _ in 0..QUERIES {
        let rho = random_label(rng, width);
        let k = rng.gen_range(0..=len);
        let naive = items[..k].iter().filter(|l| **l == rho).count();
        ensure!(seq.rank(k, &rho).ok() == Some(naive), "sequence rank({k}, {rho})");
        let hits: Vec<usize> = (1..=len).filter(|&i| items[i - 1] == rho).collect();
        let j = rng.gen_range(1..=hits.len() + 1);
        ensure!(seq.select(j, &rho).ok() == hits.get(j - 1).copied(), "sequence select({j}, {rho})");
        let a = rng.gen_range(1..=len);
        ensure!(seq.access(a).ok() == Some(&items[a - 1]), "sequence access({a})");
    }
    // Dictionary over mixed-length queries.
    let width = 3;
    let members: Vec<Label> = (0..12).map(|_| random_label(rng, width)).collect();
    let dict = LabelDictionary::new(width, &alphabet, members.clone()).unwrap();
    let mut sorted = members;
    sorted.sort_by(|a, b| colex(a.as_bytes(), b.as_bytes()));
    sorted.dedup();
    for _ in 0..QUERIES {
        let w = rng.gen_range(0..=5);
        let q = random_label(rng, w);
        let qb = q.as_bytes();
        let le = sorted.iter().rev().find(|m| colex(m.as_bytes(), qb).is_le());
        let lt = sorted.iter().rev().find(|m| colex(m.as_bytes(), qb).is_lt());
        let ge = sorted.iter().find(|m| colex(m.as_bytes(), qb).is_ge());
        let gt = sorted.iter().find(|m| colex(m.as_bytes(), qb).is_gt());
        ensure!(dict.pred(&q) == le, "dictionary pred({q})");
        ensure!(dict.pred_strict(&q) == lt, "dictionary pred_strict({q})");
        ensure!(dict.succ_or_equal(&q) == ge, "dictionary succ_or_equal({q})");
        ensure!(dict.succ_strict(&q) == gt, "dictionary succ_strict({q})");
        let rank = sorted.iter().position(|m| *m == q).map(|i| i + 1);
        ensure!(dict.rank(&q) == rank, "dictionary rank({q})");
        let j = rng.gen_range(1..=sorted.len() + 1);
        ensure!(dict.select(j).ok() == sorted.get(j - 1), "dictionary select({j})");
    }
    Ok(format!("{QUERIES} queries per structure"))
}

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, id: u32, name: &str, budget: Option<Duration>, elapsed: Duration, outcome: Outcome) {
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:.0?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {name} ({detail}; {elapsed:.2?})"),
            Err(why) => {
                self.failures += 1;
                println!("FAIL criterion {id}: {name}: {why}");
            }
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let mut rng = random::rng(SEED);
    let secs = |s| Some(Duration::from_secs(s));

    let (o, t) = timed(criterion_1);
    report.record(1, "Golden BWT of FIG4", secs(1), t, o);

    let (corpus, t_gen) = timed(|| wheeler_corpus(&mut rng));
    if let Ok(c) = &corpus {
        let edges: usize = c.iter().map(|i| i.g.edges().len()).sum();
        let states: usize = c.iter().map(|i| i.g.num_states()).sum();
        println!("generated {CORPUS} random Wheeler GDFAs ({states} states, {edges} edges) in {t_gen:.2?}");
    }
    let corpus = match corpus {
        Ok(c) => c,
        Err(e) => {
            for (id, name) in [(2, "BWT losslessness"), (3, "FM-index oracle equivalence"), (4, "G-set structure")] {
                report.record(id, name, None, Duration::ZERO, Err(e.clone()));
            }
            Vec::new()
        }
    };
    if !corpus.is_empty() {
        let (o, t) = timed(|| criterion_2(&corpus));
        report.record(2, "BWT losslessness", secs(30), t, o);
        let ((o3, o4), t) = timed(|| criteria_3_and_4(&corpus, &mut rng));
        report.record(3, "FM-index oracle equivalence", secs(120), t, o3);
        report.record(4, "G-set structure", None, t, o4);
    }

    let (o, t) = timed(criterion_5);
    report.record(5, "Wheelerness verdicts", None, t, o);

    let gdfas = gdfa_corpus(&mut rng, 200);
    let nfas = nfa_corpus(&mut rng, 100);
    let (o, t) = timed(|| criterion_6(&gdfas, &mut rng));
    report.record(6, "Myhill-Nerode uniqueness", None, t, o);
    let (o, t) = timed(|| criterion_7(&gdfas, &nfas));
    report.record(7, "Right-invariance diagnostics", None, t, o);

    let (o, t) = timed(|| criterion_8(&mut rng));
    report.record(8, "Degeneration to Wheeler DFAs", None, t, o);
    let (o, t) = timed(|| criterion_9(&mut rng));
    report.record(9, "Succinct-structure conformance", None, t, o);

    println!("{} of 9 criteria passed", 9 - report.failures);
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
