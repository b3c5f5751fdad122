//! Replays the checked-in fuzz corpus under plain `cargo test`, plus cheap
//! deterministic mutations of every seed.

#[path = "../../../fuzz/src/lib.rs"]
mod harness;

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Target = fn(&[u8]);

const TARGETS: [(&str, Target); 9] = [
    ("field_elem", harness::field_elem),
    ("quadratic_elem", harness::quadratic_elem),
    ("cubic_elem", harness::cubic_elem),
    ("octonion", harness::octonion),
    ("matrix", harness::matrix),
    ("scenario_config", harness::scenario_config),
    ("run_report", harness::run_report),
    ("algebra_descriptor", harness::algebra_descriptor),
    ("witness_record", harness::witness_record),
];

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files.iter().map(|p| std::fs::read(p).unwrap()).collect()
}

fn mutate(seed: &[u8], rng: &mut ChaCha8Rng) -> Vec<u8> {
    let mut out = seed.to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let at = rng.gen_range(0..=out.len());
        match rng.gen_range(0..3) {
            0 if at < out.len() => {
                out.remove(at);
            }
            1 if at < out.len() => out[at] = *b"0123456789-+*/,;|[]()gt{}\":x\n ".get(rng.gen_range(0..30)).unwrap(),
            _ => out.insert(at, rng.gen()),
        }
    }
    out
}

#[test]
fn every_target_has_seeds() {
    for (name, _) in TARGETS {
        assert!(seeds(name).len() >= 3, "{name}");
    }
}

#[test]
fn corpus_replays_cleanly() {
    for (name, run) in TARGETS {
        for seed in seeds(name) {
            run(&seed);
        }
    }
}

#[test]
fn mutated_seeds_never_panic() {
    let mut rng = ChaCha8Rng::seed_from_u64(std::env::var("FUZZ_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(17));
    for (name, run) in TARGETS {
        let rounds = if name == "run_report" || name == "algebra_descriptor" { 300 } else { 3000 };
        for seed in seeds(name) {
            for i in 0..=seed.len().min(64) {
                run(&seed[..i]);
            }
            for _ in 0..rounds {
                run(&mutate(&seed, &mut rng));
            }
        }
    }
}
