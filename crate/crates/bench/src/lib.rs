//! Workloads shared by the benchmarks.

use gwheel::random::{self, GenParams};
use gwheel::wheeler::{gdfa_wheeler_order, StateOrder, WheelerVerdict};
use gwheel::{Gnfa, Label};

/// A seeded Wheeler GDFA together with its order.
pub fn wheeler_workload(states: usize, max_label: usize, seed: u64) -> (Gnfa, StateOrder) {
    let p = GenParams::new(states, max_label, b"abcd").expect("valid parameters");
    let g = random::random_wheeler_gdfa(&mut random::rng(seed), &p);
    match gdfa_wheeler_order(&g).expect("generated automaton is a trim GDFA") {
        WheelerVerdict::Wheeler(order) => (g, order),
        WheelerVerdict::NotWheeler { .. } => unreachable!("generator keeps the automaton Wheeler"),
    }
}

/// A seeded GDFA that is usually not minimal: a random GDFA with one state split.
pub fn minimize_workload(states: usize, max_label: usize, seed: u64) -> Gnfa {
    let p = GenParams::new(states, max_label, b"abc").expect("valid parameters");
    let mut rng = random::rng(seed);
    let g = random::random_gdfa(&mut rng, &p);
    random::unroll(&mut rng, &g)
}

pub fn patterns(g: &Gnfa, count: usize, seed: u64) -> Vec<Label> {
    random::random_patterns(&mut random::rng(seed), g, count, 12)
}
