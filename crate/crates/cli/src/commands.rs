use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use log::info;
use serde_json::json;

use gwheel::automaton::{classify, expand, language_member_naive, state_name};
use gwheel::fm_index::FmIndex;
use gwheel::gbwt::{build_bwt, decode_bwt, GeneralizedBwt};
use gwheel::myhill_nerode::{gdfa_isomorphic, minimize};
use gwheel::oracle::naive_smlg;
use gwheel::random::{self, GenParams};
use gwheel::wheeler::{check_wheeler_order, gdfa_wheeler_order, StateOrder, WheelerVerdict};
use gwheel::{Gnfa, Label};

use crate::{BwtCommand, Command, GenArgs, IndexCommand, QueryArgs};

const XCHECK_RANDOM_PATTERNS: usize = 200;
const XCHECK_MAX_LEN: usize = 12;

/// Maps an error to the process exit code.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<gwheel::Error>() {
        Some(gwheel::Error::Domain(_) | gwheel::Error::EmptyLanguage) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_gnfa(path: &Path) -> Result<Gnfa> {
    let text = read(path)?;
    text.parse::<Gnfa>().with_context(|| format!("parsing {}", path.display()))
}

fn load_order(path: &Path, n: usize) -> Result<StateOrder> {
    StateOrder::parse(&read(path)?, n).with_context(|| format!("parsing order {}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs one subcommand; `Ok(false)` is a negative verdict.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Trim { input, output } => {
            write(&output, &load_gnfa(&input)?.trim()?.to_string())?;
            Ok(true)
        }
        Command::Expand { input, output } => {
            write(&output, &expand(&load_gnfa(&input)?).nfa.to_string())?;
            Ok(true)
        }
        Command::Minimize { input, output } => {
            let g = load_gnfa(&input)?;
            let m = minimize(&g)?;
            info!("minimized {} states to {}", g.num_states(), m.num_states());
            write(&output, &m.to_string())?;
            Ok(true)
        }
        Command::Iso { a, b } => {
            let same = gdfa_isomorphic(&load_gnfa(&a)?, &load_gnfa(&b)?)?;
            println!("{}", if same { "isomorphic" } else { "not isomorphic" });
            Ok(same)
        }
        Command::Wheeler { input, emit_order } => wheeler(&input, emit_order.as_deref()),
        Command::CheckOrder { input, order, bound } => {
            let g = load_gnfa(&input)?;
            let order = load_order(&order, g.num_states())?;
            let report = check_wheeler_order(&g, &order, bound)?;
            println!("initial first: {}", yes_no(report.initial_first));
            println!("property 1: {}", report.property1);
            println!("property 2: {}", report.property2);
            println!("property 3: {}", report.property3);
            println!("wheeler: {}", yes_no(report.is_wheeler()));
            Ok(report.is_wheeler())
        }
        Command::Bwt(BwtCommand::Build { input, order, output }) => {
            let g = load_gnfa(&input)?;
            let order = load_order(&order, g.num_states())?;
            let b = build_bwt(&g, &order)?;
            info!("payload {} bits", b.payload_bits());
            write(&output, &b.to_string())?;
            Ok(true)
        }
        Command::Bwt(BwtCommand::Decode { input, output }) => {
            let b: GeneralizedBwt = read(&input)?.parse()?;
            let (g, _) = decode_bwt(&b)?;
            write(&output, &g.to_string())?;
            Ok(true)
        }
        Command::Index(IndexCommand::Build { input, order, output }) => {
            let g = load_gnfa(&input)?;
            let order = match order {
                Some(path) => load_order(&path, g.num_states())?,
                None => match computed_order(&g)? {
                    Some(o) => o,
                    None => return Ok(false),
                },
            };
            write(&output, &FmIndex::build(&g, &order)?.to_string())?;
            Ok(true)
        }
        Command::Query(args) => query(args),
        Command::Xcheck { input, patterns, seed } => xcheck(&input, &patterns, seed),
        Command::Gen(args) => gen(args),
    }
}

fn validate(path: &Path) -> Result<bool> {
    let g = load_gnfa(path)?;
    let c = classify(&g);
    println!("states {}", g.num_states());
    println!("edges {}", g.edges().len());
    println!("max label {}", g.max_label_len());
    println!("gdfa {}", yes_no(c.class.is_gdfa));
    println!("dfa {}", yes_no(c.class.is_dfa));
    println!("trim {}", yes_no(g.is_trim()));
    for v in &c.violations {
        println!("violation: {v}");
    }
    Ok(c.class.is_gdfa)
}

fn order_line(order: &StateOrder) -> String {
    order.to_string()
}

/// The Wheeler order of a GDFA, or `None` after reporting why there is none.
fn computed_order(g: &Gnfa) -> Result<Option<StateOrder>> {
    match gdfa_wheeler_order(g)? {
        WheelerVerdict::Wheeler(order) => Ok(Some(order)),
        WheelerVerdict::NotWheeler { u, v } => {
            println!("not Wheeler: {} and {} are incomparable", state_name(u), state_name(v));
            Ok(None)
        }
    }
}

fn wheeler(input: &Path, emit: Option<&Path>) -> Result<bool> {
    let g = load_gnfa(input)?;
    let Some(order) = computed_order(&g)? else { return Ok(false) };
    println!("{}", order_line(&order));
    if let Some(path) = emit {
        write(path, &format!("{}\n", order_line(&order)))?;
    }
    Ok(true)
}

fn read_patterns(path: &Path) -> Result<Vec<Label>> {
    Ok(read(path)?
        .lines()
        .map(|l| if l == "\"\"" { Label::epsilon() } else { Label::from(l) })
        .collect())
}

fn query(args: QueryArgs) -> Result<bool> {
    let idx: FmIndex = read(&args.index)?.parse().context("parsing index")?;
    let patterns = match (args.source.pattern, args.source.patterns) {
        (Some(p), _) => vec![Label::from(p.as_str())],
        (None, Some(path)) => read_patterns(&path)?,
        (None, None) => bail!("no pattern given"),
    };
    let mut all_members = true;
    for alpha in patterns {
        let iv = idx.smlg(&alpha);
        let states: Vec<String> = idx.states(iv).into_iter().map(state_name).collect();
        let member = args.member.then(|| idx.member(&alpha));
        all_members &= member.unwrap_or(true);
        let text = String::from_utf8_lossy(alpha.as_bytes()).into_owned();
        if args.json {
            let mut obj = json!({
                "pattern": text,
                "interval": (!iv.is_empty()).then_some([iv.lo, iv.hi]),
                "states": states,
                "count": iv.len(),
            });
            if let Some(m) = member {
                obj["member"] = json!(m);
            }
            println!("{obj}");
        } else if let Some(m) = member {
            println!("{alpha}\t{m}");
        } else if iv.is_empty() {
            println!("{alpha}\t-");
        } else {
            println!("{alpha}\t[{}, {}]\t{}", iv.lo, iv.hi, states.join(" "));
        }
    }
    Ok(all_members)
}

fn xcheck(input: &Path, patterns: &Path, seed: Option<u64>) -> Result<bool> {
    let g = load_gnfa(input)?;
    let Some(order) = computed_order(&g)? else { return Ok(false) };
    let idx = FmIndex::build(&g, &order)?;
    let mut all = read_patterns(patterns)?;
    if let Some(seed) = seed {
        let mut rng = random::rng(seed);
        all.extend(random::random_patterns(&mut rng, &g, XCHECK_RANDOM_PATTERNS, XCHECK_MAX_LEN));
    }
    let mut disagreements = 0;
    for alpha in &all {
        let got: BTreeSet<usize> = idx.states(idx.smlg(alpha)).into_iter().collect();
        let expected = naive_smlg(&g, alpha);
        if got != expected {
            disagreements += 1;
            println!("smlg mismatch on {alpha}: index {got:?}, simulation {expected:?}");
        }
        if idx.member(alpha) != language_member_naive(&g, alpha) {
            disagreements += 1;
            println!("membership mismatch on {alpha}");
        }
    }
    println!("{} patterns, {disagreements} disagreements", all.len());
    Ok(disagreements == 0)
}

fn gen(args: GenArgs) -> Result<bool> {
    let p = GenParams::new(args.states, args.max_label, args.alphabet.as_bytes())?;
    let g = random::random_wheeler_gdfa(&mut random::rng(args.seed), &p);
    let header = format!(
        "# gen states={} max-label={} alphabet={} seed={}\n",
        args.states, args.max_label, args.alphabet, args.seed
    );
    write(&args.output, &format!("{header}{g}"))?;
    Ok(true)
}
