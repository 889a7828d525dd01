//! Randomized verification sweeps: closed-form-vs-oracle over all index
//! tuples, structural validation across sizes, expansion equivalence, and the
//! dynamic-structure fuzzer. The CLI `verify` command and the acceptance
//! suite both drive these.

use crate::chain::{
    closed_form_c, column_query_range, max_weight_chain, max_weight_chain_between,
    max_weight_chain_in_xrange, FormulaCase,
};
use crate::dynseq::DynamicSequence;
use crate::embedding::{build_embedding, expand_unweighted, validate_structure, Family, PointLabel};
use crate::error::Result;
use crate::model::{Matrix, WeightedPoint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// One checked tuple: predicted value, oracle value, verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub n: usize,
    pub multiplier: i64,
    pub instance: u64,
    pub case: String,
    pub predicted: i64,
    pub oracle: i64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn describe(&self) -> String {
        format!(
            "{} n={} M={} instance={} {}: predicted {} oracle {}",
            self.check, self.n, self.multiplier, self.instance, self.case, self.predicted, self.oracle
        )
    }
}

pub fn random_matrix(rng: &mut StdRng, n: usize, bound: i64) -> Matrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=bound)).collect())
        .collect();
    Matrix::new(n, bound, rows).expect("generated entries are in range")
}

pub fn random_vector(rng: &mut StdRng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..=bound)).collect()
}

#[derive(Debug, Clone)]
pub struct FormulaSweepConfig {
    pub max_n: usize,
    pub instances_per_n: u64,
    /// multipliers beyond 1 exercise only the start-to-end form
    pub multipliers: Vec<i64>,
    pub seed: u64,
    /// perturbs one turn-point weight in the oracle's view, to prove the
    /// sweep can fail
    pub inject_fault: bool,
}

impl Default for FormulaSweepConfig {
    fn default() -> Self {
        FormulaSweepConfig {
            max_n: 6,
            instances_per_n: 10,
            multipliers: vec![1, 2, 5, 10],
            seed: 0,
            inject_fault: false,
        }
    }
}

/// Checks every closed form against the brute-force oracle on random
/// instances, for all valid index tuples, plus the range-equals-endpoints and
/// chain-through-middle properties.
pub fn formula_sweep(cfg: &FormulaSweepConfig) -> Result<Vec<CheckRecord>> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut records = Vec::new();
    for &multiplier in &cfg.multipliers {
        for n in 1..=cfg.max_n {
            for instance in 0..cfg.instances_per_n {
                let a = random_matrix(&mut rng, n, multiplier);
                let b = random_vector(&mut rng, n, multiplier);
                let emb = build_embedding(&a, &b, multiplier)?;
                let mut oracle_points = emb.points().to_vec();
                if cfg.inject_fault {
                    let turn = oracle_points
                        .iter_mut()
                        .find(|p| p.label.map(|l| l.family) == Some(Family::Lp))
                        .expect("embedding has turn points");
                    turn.w += 1;
                }
                let pts = &oracle_points;

                let check = |records: &mut Vec<CheckRecord>,
                                 check_name: &str,
                                 case: String,
                                 predicted: i64,
                                 oracle: i64| {
                    records.push(CheckRecord {
                        check: check_name.to_string(),
                        n,
                        multiplier,
                        instance,
                        case,
                        predicted,
                        oracle,
                        pass: predicted == oracle,
                    });
                };

                if multiplier == 1 {
                    // Boolean forms, all valid tuples
                    for j in 0..n {
                        for i2 in 0..n {
                            for i in 0..=i2 {
                                let cases = [
                                    (FormulaCase::GridToMiddle { i, j, i2 }, Family::L),
                                    (FormulaCase::TurnToMiddle { i, j, i2 }, Family::Lp),
                                ];
                                for (case, family) in cases {
                                    let start = emb.special_point(PointLabel::grid(family, i, j))?;
                                    let end = emb.special_point(PointLabel::middle(i2))?;
                                    let predicted = closed_form_c(&emb, case)?;
                                    let oracle = max_weight_chain_between(pts, start, end)?;
                                    check(
                                        &mut records,
                                        "formula-grid",
                                        format!("{case:?}"),
                                        predicted,
                                        oracle,
                                    );
                                }
                            }
                        }
                    }
                    for j in 0..n {
                        for i in 0..n {
                            let start = emb.special_point(PointLabel::start(j))?;
                            let mid = emb.special_point(PointLabel::middle(i))?;
                            let end = emb.special_point(PointLabel::end(j))?;
                            let case = FormulaCase::StartToMiddle { j, i };
                            check(
                                &mut records,
                                "formula-start-to-middle",
                                format!("{case:?}"),
                                closed_form_c(&emb, case)?,
                                max_weight_chain_between(pts, start, mid)?,
                            );
                            let case = FormulaCase::MiddleToEnd { i, j };
                            check(
                                &mut records,
                                "formula-middle-to-end",
                                format!("{case:?}"),
                                closed_form_c(&emb, case)?,
                                max_weight_chain_between(pts, mid, end)?,
                            );
                        }
                    }
                }

                for j in 0..n {
                    let start = emb.special_point(PointLabel::start(j))?;
                    let end = emb.special_point(PointLabel::end(j))?;
                    let case = FormulaCase::StartToEnd { j };
                    let endpoint_oracle = max_weight_chain_between(pts, start, end)?;
                    check(
                        &mut records,
                        "formula-start-to-end",
                        format!("{case:?}"),
                        closed_form_c(&emb, case)?,
                        endpoint_oracle,
                    );

                    let (xlo, xhi) = column_query_range(&emb, j)?;
                    check(
                        &mut records,
                        "range-equals-endpoints",
                        format!("j={j}"),
                        max_weight_chain_in_xrange(pts, xlo, xhi)?,
                        endpoint_oracle,
                    );

                    // some optimal chain passes through a middle point
                    let through_middle = (0..n)
                        .map(|i| {
                            let mid = emb.special_point(PointLabel::middle(i))?;
                            Ok(max_weight_chain_between(pts, start, mid)?
                                + max_weight_chain_between(pts, mid, end)?
                                - mid.w)
                        })
                        .collect::<Result<Vec<i64>>>()?
                        .into_iter()
                        .max()
                        .expect("n >= 1");
                    check(
                        &mut records,
                        "chain-through-middle",
                        format!("j={j}"),
                        through_middle,
                        endpoint_oracle,
                    );
                }
            }
        }
    }
    Ok(records)
}

/// Structural validation across sizes and random instances.
pub fn structure_sweep(
    max_n: usize,
    instances_per_n: u64,
    multipliers: &[i64],
    seed: u64,
) -> Result<Vec<CheckRecord>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut records = Vec::new();
    for &multiplier in multipliers {
        for n in 1..=max_n {
            for instance in 0..instances_per_n {
                let a = random_matrix(&mut rng, n, multiplier);
                let b = random_vector(&mut rng, n, multiplier);
                let emb = build_embedding(&a, &b, multiplier)?;
                let report = validate_structure(&emb);
                for check in &report.checks {
                    records.push(CheckRecord {
                        check: "structure".into(),
                        n,
                        multiplier,
                        instance,
                        case: check.name.clone(),
                        predicted: check.passed as i64,
                        oracle: 1,
                        pass: check.passed,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Random weighted sets: longest chain of the unweighted expansion must equal
/// the weighted oracle value.
pub fn expansion_sweep(sets: u64, max_points: usize, max_weight: i64, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut records = Vec::new();
    for instance in 0..sets {
        let count = rng.gen_range(0..=max_points);
        // distinct coordinates by sampling without replacement
        let mut xs: Vec<i64> = (0..(4 * max_points as i64)).collect();
        let mut ys = xs.clone();
        let pts: Vec<WeightedPoint> = (0..count)
            .map(|_| {
                let x = xs.swap_remove(rng.gen_range(0..xs.len()));
                let y = ys.swap_remove(rng.gen_range(0..ys.len()));
                WeightedPoint::new(x, y, rng.gen_range(0..=max_weight))
            })
            .collect();
        let expanded = expand_unweighted(&pts)?;
        let unweighted = max_weight_chain(&expanded);
        let weighted = max_weight_chain(&pts);
        records.push(CheckRecord {
            check: "expansion-equivalence".into(),
            n: count,
            multiplier: max_weight,
            instance,
            case: format!("{count} points"),
            predicted: unweighted,
            oracle: weighted,
            pass: unweighted == weighted,
        });
    }
    Ok(records)
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub scripts: u64,
    pub steps_per_script: u64,
    /// x and y coordinates are multiples of 4 below this bound, which keeps
    /// every sentinel slot free for the ranges the fuzzer issues
    pub universe: i64,
    pub max_weight: i64,
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            scripts: 20,
            steps_per_script: 1000,
            universe: 300,
            max_weight: 50,
            seed: 0,
        }
    }
}

/// Replays random operation scripts against a `DynamicSequence`, checking
/// every query answer against the quadratic oracle on a mirror of the point
/// set, and the sentinel route against the direct range route.
pub fn fuzz_dynamic(cfg: &FuzzConfig) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for script in 0..cfg.scripts {
        let mut rng = StdRng::seed_from_u64(cfg.seed.wrapping_add(script));
        let mut seq = DynamicSequence::new();
        let mut mirror: Vec<(crate::dynseq::Handle, WeightedPoint)> = Vec::new();
        let check = |records: &mut Vec<CheckRecord>, case: String, got: i64, want: i64| {
            records.push(CheckRecord {
                check: "fuzz".into(),
                n: cfg.universe as usize,
                multiplier: cfg.max_weight,
                instance: script,
                case,
                predicted: got,
                oracle: want,
                pass: got == want,
            });
        };
        for step in 0..cfg.steps_per_script {
            let roll = rng.gen_range(0u32..100);
            if roll < 40 {
                // insert at a free multiple-of-4 slot
                let x = 4 * rng.gen_range(0..cfg.universe / 4);
                let y = 4 * rng.gen_range(0..cfg.universe / 4);
                let w = rng.gen_range(0..=cfg.max_weight);
                let p = WeightedPoint::new(x, y, w);
                match seq.insert(p) {
                    Ok(h) => mirror.push((h, p)),
                    Err(_) => {
                        // occupied slot; the mirror must agree it is occupied
                        let occupied = mirror.iter().any(|(_, q)| q.x == x || q.y == y);
                        check(&mut records, format!("step {step} collision"), occupied as i64, 1);
                    }
                }
            } else if roll < 55 && !mirror.is_empty() {
                let idx = rng.gen_range(0..mirror.len());
                let (h, p) = mirror.swap_remove(idx);
                let removed = seq.delete(h)?;
                check(&mut records, format!("step {step} delete"), removed.w, p.w);
            } else if roll < 70 && !mirror.is_empty() {
                let idx = rng.gen_range(0..mirror.len());
                let w = rng.gen_range(0..=cfg.max_weight);
                let old = seq.update_weight(mirror[idx].0, w)?;
                check(&mut records, format!("step {step} update"), old, mirror[idx].1.w);
                mirror[idx].1.w = w;
            } else if roll < 80 {
                let points: Vec<WeightedPoint> = mirror.iter().map(|&(_, p)| p).collect();
                check(
                    &mut records,
                    format!("step {step} global"),
                    seq.query_global(),
                    max_weight_chain(&points),
                );
            } else {
                // range endpoints at 2 mod 4 and 0 mod 4 keep both sentinel
                // slots off the point lattice
                let a = 4 * rng.gen_range(0..cfg.universe / 4) + 2;
                let b = 4 * rng.gen_range(0..cfg.universe / 4);
                let (xlo, xhi) = (a.min(b), a.max(b));
                let points: Vec<WeightedPoint> = mirror.iter().map(|&(_, p)| p).collect();
                let want = max_weight_chain_in_xrange(&points, xlo, xhi)?;
                let direct = seq.query_range(xlo, xhi)?;
                check(&mut records, format!("step {step} range"), direct, want);
                let sentinel = seq.query_range_via_sentinels(xlo, xhi)?;
                check(&mut records, format!("step {step} sentinel"), sentinel, direct);
            }
        }
    }
    Ok(records)
}
