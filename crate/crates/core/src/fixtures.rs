//! Small automata used in tests, benchmarks and the acceptance suite.

use crate::automaton::Gnfa;

macro_rules! fixtures {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(pub const $name: &str = include_str!(concat!("../fixtures/", $file));)*

        /// Every fixture as `(file stem, text)`.
        pub const ALL: &[(&str, &str)] = &[$((stem($file), $name)),*];
    };
}

const fn stem(file: &'static str) -> &'static str {
    let bytes = file.as_bytes();
    let mut end = bytes.len();
    while end > 0 && bytes[end - 1] != b'.' {
        end -= 1;
    }
    match std::str::from_utf8(bytes.split_at(end - 1).0) {
        Ok(s) => s,
        Err(_) => panic!("fixture name is not UTF-8"),
    }
}

fixtures! {
    FIG1 => "fig1.gnfa",
    FIG2_LEFT => "fig2_left.gnfa",
    FIG2_RIGHT => "fig2_right.gnfa",
    FIG3 => "fig3.gnfa",
    FIG4 => "fig4.gnfa",
    FIG5_LEFT => "fig5_left.gnfa",
    FIG5_RIGHT => "fig5_right.gnfa",
    FIG7_CENTER => "fig7_center.gnfa",
    FIG7_RIGHT => "fig7_right.gnfa",
    FIG7_RIGHT_LITERAL => "fig7_right_literal.gnfa",
    AA => "aa.gnfa",
    DIAMOND => "diamond.gnfa",
}

pub const FIG4_GBWT: &str = include_str!("../fixtures/fig4.gbwt");

/// Parses a fixture; panics on malformed text.
pub fn load(text: &str) -> Gnfa {
    text.parse().expect("fixture parses")
}

/// All fixtures parsed.
pub fn all() -> Vec<(&'static str, Gnfa)> {
    ALL.iter().map(|&(name, text)| (name, load(text))).collect()
}
