//! Acceptance suite: one test per exit criterion, each printing a pass/fail
//! line. Criterion 9 (the SVG plot) lives in the CLI crate's acceptance
//! tests, next to the command that produces the file.

use lislab::embedding::build_embedding;
use lislab::model::{boolean_matvec, maxplus_product, BitVector, Matrix};
use lislab::reduction::{maxplus_via_lis, run_online, OmvSession, VectorSupplier};
use lislab::verify::{
    expansion_sweep, formula_sweep, fuzz_dynamic, random_matrix, CheckRecord, FormulaSweepConfig,
    FuzzConfig, structure_sweep,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn assert_all_pass(criterion: &str, records: &[CheckRecord]) {
    let failures: Vec<&CheckRecord> = records.iter().filter(|r| !r.pass).collect();
    if let Some(first) = failures.first() {
        println!("FAIL {criterion}: {} of {} checks failed", failures.len(), records.len());
        panic!("{criterion}: first failure: {}", first.describe());
    }
    println!("PASS {criterion}: {} checks", records.len());
}

#[test]
fn criterion_1_embedding_cardinality() {
    for n in 1..=12 {
        let emb = build_embedding(&Matrix::zero(n, 1), &vec![0; n], 1).unwrap();
        assert_eq!(
            emb.points().len(),
            3 * n * n + 3 * n,
            "point count for n={n}"
        );
    }
    println!("PASS criterion 1 (embedding cardinality): n = 1..=12");
}

#[test]
fn criterion_2_structural_validation() {
    let records = structure_sweep(8, 20, &[1, 5], 0).unwrap();
    assert_all_pass("criterion 2 (structural validation)", &records);
}

#[test]
fn criterion_3_closed_form_reproduction() {
    let records = formula_sweep(&FormulaSweepConfig {
        max_n: 6,
        instances_per_n: 10,
        multipliers: vec![1],
        seed: 0,
        inject_fault: false,
    })
    .unwrap();
    assert_all_pass("criterion 3 (Boolean closed-form reproduction)", &records);
}

#[test]
fn criterion_4_weighted_closed_form_reproduction() {
    let records = formula_sweep(&FormulaSweepConfig {
        max_n: 6,
        instances_per_n: 10,
        multipliers: vec![2, 5, 10],
        seed: 0,
        inject_fault: false,
    })
    .unwrap();
    assert_all_pass("criterion 4 (weighted closed-form reproduction)", &records);
}

#[test]
fn criterion_5_maxplus_end_to_end() {
    let mut runs = 0;
    for n in 1..=8 {
        for bound in [1, 3, 8] {
            for seed in 0..10u64 {
                let mut rng = StdRng::seed_from_u64(seed ^ (n as u64) << 8 ^ (bound as u64) << 16);
                let a = random_matrix(&mut rng, n, bound);
                let b = random_matrix(&mut rng, n, bound);
                let (c, report) = maxplus_via_lis(&a, &b, bound).unwrap();
                assert_eq!(
                    c,
                    maxplus_product(&a, &b).unwrap(),
                    "n={n} M={bound} seed={seed}"
                );
                assert!(report.agree);
                let nn = (n * n) as u64;
                assert_eq!(report.counts.updates, nn, "post-build weight updates");
                assert_eq!(report.counts.queries, nn, "range queries");
                assert_eq!(report.counts.deletes, 0);
                runs += 1;
            }
        }
    }
    println!("PASS criterion 5 (maxplus end-to-end): {runs} runs, n^2 updates and n^2 queries each");
}

#[test]
fn criterion_6_omv_end_to_end() {
    let mut runs = 0;
    for m in [1usize, 4, 9, 16] {
        for seed in 0..5u64 {
            let mut rng = StdRng::seed_from_u64(seed ^ (m as u64) << 8);
            let a = random_matrix(&mut rng, m, 1);
            let vectors: Vec<BitVector> = (0..m)
                .map(|_| BitVector::new((0..m).map(|_| rng.gen_range(0..=1u8)).collect()).unwrap())
                .collect();
            let mut session = OmvSession::new(&a).unwrap();
            let mut supplier = VectorSupplier::new(vectors.clone());
            let outputs = run_online(&mut session, &mut supplier).unwrap();
            assert!(
                supplier.is_strictly_online(),
                "vector k+1 fetched before output k was emitted"
            );
            for (v, u) in vectors.iter().zip(&outputs) {
                assert_eq!(u, &boolean_matvec(&a, v).unwrap(), "m={m} seed={seed}");
            }
            runs += 1;
        }
    }
    println!("PASS criterion 6 (omv end-to-end): {runs} online sessions, strict online discipline");
}

#[test]
fn criterion_7_expansion_equivalence() {
    let records = expansion_sweep(200, 12, 6, 0).unwrap();
    assert_eq!(records.len(), 200);
    assert_all_pass("criterion 7 (expansion equivalence)", &records);
}

#[test]
fn criterion_8_dynamic_structure_fuzz() {
    let records = fuzz_dynamic(&FuzzConfig {
        scripts: 20,
        steps_per_script: 1000,
        ..FuzzConfig::default()
    })
    .unwrap();
    assert_all_pass("criterion 8 (dynamic-structure fuzz)", &records);
}
