use gwheel::automaton::{classify, language_equiv, language_member_naive, w_language_automaton, Violation};
use gwheel::fixtures::{self, load};
use gwheel::fm_index::FmIndex;
use gwheel::gbwt::{decode_bwt, GeneralizedBwt};
use gwheel::myhill_nerode::{gdfa_isomorphic, minimize};
use gwheel::oracle::naive_smlg;
use gwheel::wheeler::{check_wheeler_order, gdfa_wheeler_order, PropertyStatus, StateOrder, WheelerVerdict};
use gwheel::{Error, Gnfa, Label};

fn index(text: &str) -> FmIndex {
    let g = load(text);
    let WheelerVerdict::Wheeler(order) = gdfa_wheeler_order(&g).unwrap() else {
        panic!("fixture is not Wheeler");
    };
    FmIndex::build(&g, &order).unwrap()
}

#[test]
fn fig1_is_not_a_gdfa() {
    let c = classify(&load(fixtures::FIG1));
    assert!(!c.class.is_gdfa);
    assert_eq!(
        c.violations,
        vec![Violation::PrefixConflict { state: 0, shorter: "a".into(), longer: "ab".into() }]
    );
}

#[test]
fn fig2_pair_shares_language_not_w() {
    let left = load(fixtures::FIG2_LEFT);
    let right = load(fixtures::FIG2_RIGHT);
    assert!(language_equiv(&left, &right).is_ok());
    let aaa = Label::from("aaa");
    assert!(language_member_naive(&w_language_automaton(&left), &aaa));
    assert!(!language_member_naive(&w_language_automaton(&right), &aaa));
    assert!(gdfa_isomorphic(&minimize(&left).unwrap(), &left).unwrap());
    assert!(!gdfa_isomorphic(&left, &right).unwrap());
}

#[test]
fn diamond_minimizes_to_three_states() {
    let m = minimize(&load(fixtures::DIAMOND)).unwrap();
    let expected: Gnfa = "states 3\ninitial 1\nfinal 3\nedge 1 2 a\nedge 1 2 b\nedge 2 3 c\n".parse().unwrap();
    assert!(gdfa_isomorphic(&m, &expected).unwrap());
}

#[test]
fn golden_bwt_decodes_to_fig4() {
    let b: GeneralizedBwt = fixtures::FIG4_GBWT.parse().unwrap();
    let (g, order) = decode_bwt(&b).unwrap();
    assert_eq!(g, load(fixtures::FIG4));
    assert_eq!(order, StateOrder::identity(3));
}

#[test]
fn fig4_queries() {
    let idx = index(fixtures::FIG4);
    assert!(idx.member(&"abb".into()));
    assert!(!idx.member(&"a".into()));
    assert!(!idx.member(&Label::epsilon()));
    assert!(idx.member(&"cbc".into()));
    let iv = idx.smlg(&"b".into());
    assert_eq!(idx.states(iv), vec![1]);
    assert_eq!(idx.states(idx.smlg(&"c".into())), vec![2]);
    assert!(idx.smlg(&"z".into()).is_empty());
    assert!(index(fixtures::AA).member(&Label::epsilon()));
    assert!(!index(fixtures::AA).member(&"aaa".into()));
    assert!(index(fixtures::AA).member(&"aaaa".into()));
}

#[test]
fn smlg_matches_oracle_on_all_wheeler_fixtures() {
    for (name, g) in fixtures::all() {
        let Ok(WheelerVerdict::Wheeler(order)) = gdfa_wheeler_order(&g) else { continue };
        let idx = FmIndex::build(&g, &order).unwrap();
        for p in ["", "a", "b", "c", "ab", "ba", "bc", "cb", "aa", "aaa", "abc", "bcbc", "x"] {
            let alpha = Label::from(p);
            let got: std::collections::BTreeSet<usize> = idx.states(idx.smlg(&alpha)).into_iter().collect();
            assert_eq!(got, naive_smlg(&g, &alpha), "{name} {p}");
            assert_eq!(idx.member(&alpha), language_member_naive(&g, &alpha), "{name} {p}");
        }
    }
}

#[test]
fn fig7_property_reports() {
    let center = check_wheeler_order(&load(fixtures::FIG7_CENTER), &StateOrder::identity(5), 8).unwrap();
    assert!(!center.property1.fails());
    assert!(center.property2.fails() && center.property3.fails());
    let right = check_wheeler_order(&load(fixtures::FIG7_RIGHT), &StateOrder::identity(4), 8).unwrap();
    assert_eq!((right.property2, right.property3), (PropertyStatus::Holds, PropertyStatus::Holds));
    assert!(right.property1.fails());
    let literal = check_wheeler_order(&load(fixtures::FIG7_RIGHT_LITERAL), &StateOrder::identity(4), 8).unwrap();
    assert!(literal.is_wheeler());
}

#[test]
fn malformed_inputs_are_reported() {
    let dup = "states 2\ninitial 1\nfinal 2\nedge 1 2 a\nedge 1 2 a\n".parse::<Gnfa>();
    assert!(matches!(dup, Err(Error::Parse { line: 5, .. })));
    let empty: Gnfa = "states 2\ninitial 1\nedge 1 2 a\n".parse().unwrap();
    assert!(matches!(empty.trim(), Err(Error::EmptyLanguage)));
    assert!(matches!(gdfa_wheeler_order(&load(fixtures::FIG1)), Err(Error::Domain(_))));
}
