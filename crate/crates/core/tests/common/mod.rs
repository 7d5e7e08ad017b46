#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use fuzzy_semiprime::enumerate::random_ordered_groupoid;
use fuzzy_semiprime::{FiniteOrderedGroupoid, FuzzySubset, Grade};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_dir().join(name)).unwrap()
}

/// Runs the binary from inside the data directory so file inputs echo as bare names.
pub fn fsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsemi"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("spawn fsemi")
}

/// k/d with d in 1..=12.
pub fn random_grade<R: Rng>(rng: &mut R) -> Grade {
    let d = rng.gen_range(1..=12u64);
    Grade::new(rng.gen_range(0..=d), d).unwrap()
}

pub fn random_fuzzy<R: Rng>(rng: &mut R, s: &Arc<FiniteOrderedGroupoid>) -> FuzzySubset {
    let grades = (0..s.len()).map(|_| random_grade(rng)).collect();
    FuzzySubset::new(s.clone(), grades).unwrap()
}

pub fn random_structure<R: Rng>(rng: &mut R, max_n: usize) -> Arc<FiniteOrderedGroupoid> {
    let n = rng.gen_range(1..=max_n);
    Arc::new(random_ordered_groupoid(rng, n))
}

pub fn pointwise_max(f: &FuzzySubset, g: &FuzzySubset) -> FuzzySubset {
    let grades = f.grades().iter().zip(g.grades()).map(|(a, b)| *a.max(b)).collect();
    FuzzySubset::new(f.structure().clone(), grades).unwrap()
}

/// The golden CLI invocations, run from the data directory, with the file
/// holding the expected stdout and the expected exit code.
pub const GOLDEN: &[(&[&str], &str, i32)] = &[
    (&["check", "chain.fsg", "--fuzzy", "f", "--json"], "check_chain_f.json", 0),
    (&["check", "theorem4_window.fsg", "--fuzzy", "f", "--json"], "check_theorem4_window_f.json", 1),
    (&["check", "converse.fsg", "--fuzzy", "f", "--oracle", "0,1", "--json"], "check_converse_f.json", 0),
    (&["compose", "chain.fsg", "--left", "f", "--right", "f", "--json"], "compose_chain_f_f.json", 0),
    (&["crisp", "converse.fsg", "--set", "T", "--json"], "crisp_converse_T.json", 1),
    (&["validate", "theorem4_window.fsg", "--json"], "validate_theorem4_window.json", 0),
    (&["paper", "--remark6", "--json"], "paper_remark6.json", 0),
    (&["search", "--max-n", "2", "--grid", "0,1", "--goal", "def2-not-def1", "--json"], "search_converse.jsonl", 0),
];

pub const DSL_FILES: &[&str] = &["chain.fsg", "theorem4_window.fsg", "converse.fsg"];
