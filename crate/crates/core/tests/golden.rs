//! Golden regression test: variable counts, relation counts, and residual
//! shapes for every stratum with m in {1,2}, n <= 5. The residual shape after
//! elimination is implementation-defined (the substitution order determines
//! which coordinates survive), so it is pinned here against accidental drift
//! rather than derived from any external source.
//!
//! Regenerate with: UPDATE_GOLDEN=1 cargo test -p hilbert-strata --test golden

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use hilbert_strata::config::CountingConfig;
use hilbert_strata::partitions::enumerate_partitions;
use hilbert_strata::stratum::{stratum_class, ClassOutcome};
use hilbert_strata::relations::StratumSystem;

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct GoldenRow {
    m: usize,
    n: u32,
    lambda: String,
    variables: usize,
    relations: usize,
    affine: bool,
    residual_relations: usize,
    residual_vars: usize,
    eliminated: usize,
    pure_free: usize,
    class: String,
}

fn compute_rows() -> Vec<GoldenRow> {
    let cfg = CountingConfig::default();
    let mut rows = Vec::new();
    for m in [1usize, 2] {
        for n in 0..=5u32 {
            for lambda in enumerate_partitions(m, n) {
                let system = StratumSystem::new(&lambda);
                let relations = system.commutator_relations();
                let result = stratum_class(&lambda, &cfg).unwrap();
                let class = match &result.outcome {
                    ClassOutcome::Polynomial(p) => p.render(),
                    ClassOutcome::NotPolynomial(e) => format!("not polynomial: {}", e.reason),
                };
                rows.push(GoldenRow {
                    m,
                    n,
                    lambda: lambda.canonical_string(),
                    variables: relations.variables.len(),
                    relations: relations.relations.len(),
                    affine: result.is_affine(),
                    residual_relations: result.residual.residual_relations.len(),
                    residual_vars: result.residual.residual_vars.len(),
                    eliminated: result.residual.eliminated_count(),
                    pure_free: result.residual.pure_free.len(),
                    class,
                });
            }
        }
    }
    rows
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/strata_shapes.jsonl")
}

#[test]
fn strata_shapes_match_golden_file() {
    let rows = compute_rows();
    let mut text = String::new();
    for row in &rows {
        writeln!(text, "{}", serde_json::to_string(row).unwrap()).unwrap();
    }
    let path = golden_path();
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let recorded = std::fs::read_to_string(&path)
        .expect("golden file missing; run with UPDATE_GOLDEN=1 to create it");
    let recorded_rows: Vec<GoldenRow> = recorded
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("golden line parses"))
        .collect();
    assert_eq!(recorded_rows.len(), rows.len(), "stratum count changed");
    for (got, want) in rows.iter().zip(recorded_rows.iter()) {
        assert_eq!(got, want, "golden mismatch for {}", want.lambda);
    }
}
