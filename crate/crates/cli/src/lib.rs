//! Command implementations behind the `lislab` binary. Each command returns
//! the process exit code: 0 success, 1 check failure, 2 usage or input error.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use lislab::chain::{closed_form_c, FormulaCase};
use lislab::embedding::build_embedding;
use lislab::model::{BitVector, Matrix};
use lislab::reduction::{maxplus_via_lis, omv_run, OmvSession};
use lislab::render::{render_embedding, RenderOptions};
use lislab::verify::{
    expansion_sweep, formula_sweep, fuzz_dynamic, random_matrix, CheckRecord, FormulaSweepConfig,
    FuzzConfig, structure_sweep,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "lislab", version, about = "Dominance-chain embedding laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SharedOpts {
    /// Seed for all randomness in the command
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for report and artifact files
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also print the report to stdout as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the formula-vs-oracle, structure, expansion and fuzz suites
    Verify {
        #[command(flatten)]
        shared: SharedOpts,
        /// Largest embedding side for the formula sweep
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Random instances per size
        #[arg(long, default_value_t = 10)]
        instances: u64,
        /// Fuzz scripts to run
        #[arg(long, default_value_t = 20)]
        fuzz_scripts: u64,
        /// Steps per fuzz script
        #[arg(long, default_value_t = 1000)]
        fuzz_steps: u64,
        /// Perturb one turn-point weight so the sweep must fail
        #[arg(long)]
        inject_fault: bool,
    },
    /// Compute a (max,+)-product through the dynamic-LIS reduction
    Maxplus {
        #[command(flatten)]
        shared: SharedOpts,
        /// Left matrix file (`n M` header, then n rows)
        #[arg(long, required_unless_present = "random")]
        a: Option<PathBuf>,
        /// Right matrix file
        #[arg(long, required_unless_present = "random")]
        b: Option<PathBuf>,
        /// Generate a random instance of this dimension instead
        #[arg(long)]
        random: Option<usize>,
        /// Entry bound for generated instances
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Skip the oracle comparison
        #[arg(long)]
        no_oracle: bool,
    },
    /// Run online Boolean matrix-vector multiplication through the reduction
    Omv {
        #[command(flatten)]
        shared: SharedOpts,
        /// Boolean matrix file
        #[arg(long, required_unless_present = "random")]
        a: Option<PathBuf>,
        /// Vector file, one vector per line
        #[arg(long, required_unless_present = "random")]
        vectors: Option<PathBuf>,
        /// Generate a random instance of this dimension instead
        #[arg(long)]
        random: Option<usize>,
        /// Number of generated online vectors (defaults to the dimension)
        #[arg(long)]
        count: Option<usize>,
    },
    /// Render an embedding as SVG
    Plot {
        #[command(flatten)]
        shared: SharedOpts,
        /// Embedding side
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Weight multiplier
        #[arg(long, default_value_t = 1)]
        multiplier: i64,
        /// Highlight the optimal chain for this column
        #[arg(long)]
        chain: Option<usize>,
        /// Canvas size in pixels
        #[arg(long, default_value_t = 900)]
        canvas: u32,
        /// Skip per-point weight labels
        #[arg(long)]
        no_weights: bool,
        /// Allow sides beyond the readability guard of 16
        #[arg(long)]
        force: bool,
    },
    /// Time builds, updates and queries across instance sizes
    Bench {
        #[command(flatten)]
        shared: SharedOpts,
        /// Comma-separated instance sizes
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Which reduction to time
        #[arg(long, default_value = "maxplus")]
        problem: String,
        /// Entry bound for maxplus instances
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
}

/// Writes via a temp file in the same directory, then renames into place.
pub fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|f| f.to_str()).unwrap_or("artifact")
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    write_atomic(path, &format!("{}\n", serde_json::to_string_pretty(value)?))
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    total: usize,
    failed: usize,
    failures: Vec<CheckRecord>,
}

pub fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Verify {
            shared,
            max_n,
            instances,
            fuzz_scripts,
            fuzz_steps,
            inject_fault,
        } => {
            let mut records = formula_sweep(&FormulaSweepConfig {
                max_n,
                instances_per_n: instances,
                multipliers: vec![1, 2, 5, 10],
                seed: shared.seed,
                inject_fault,
            })?;
            records.extend(structure_sweep(
                max_n.min(8),
                instances.max(20),
                &[1, 5],
                shared.seed,
            )?);
            records.extend(expansion_sweep(200, 12, 6, shared.seed)?);
            records.extend(fuzz_dynamic(&FuzzConfig {
                scripts: fuzz_scripts,
                steps_per_script: fuzz_steps,
                seed: shared.seed,
                ..FuzzConfig::default()
            })?);

            let failures: Vec<CheckRecord> =
                records.iter().filter(|r| !r.pass).cloned().collect();
            let report = VerifyReport {
                seed: shared.seed,
                total: records.len(),
                failed: failures.len(),
                failures,
            };
            write_json(&shared.out.join("verify.json"), &report)?;
            if shared.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
            if report.failed > 0 {
                for failure in report.failures.iter().take(20) {
                    eprintln!("FAIL {}", failure.describe());
                }
                eprintln!("{} of {} checks failed", report.failed, report.total);
                return Ok(EXIT_CHECK_FAILED);
            }
            println!("all {} checks passed", report.total);
            Ok(EXIT_OK)
        }

        Command::Maxplus { shared, a, b, random, bound, no_oracle } => {
            let (a, b) = match random {
                Some(n) => {
                    let mut rng = StdRng::seed_from_u64(shared.seed);
                    (
                        random_matrix(&mut rng, n, bound),
                        random_matrix(&mut rng, n, bound),
                    )
                }
                None => {
                    let read = |path: &PathBuf| -> anyhow::Result<Matrix> {
                        let text = fs::read_to_string(path)
                            .with_context(|| format!("reading {}", path.display()))?;
                        Ok(Matrix::parse(&text)?)
                    };
                    (read(&a.expect("required by clap"))?, read(&b.expect("required by clap"))?)
                }
            };
            let bound = bound.max(a.bound()).max(b.bound());
            let (c, mut report) = maxplus_via_lis(&a, &b, bound)?;
            report.seeds = vec![shared.seed];
            write_atomic(&shared.out.join("product.txt"), &c.to_text())?;
            write_json(&shared.out.join("maxplus.json"), &report)?;
            if shared.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
            if !no_oracle && !report.agree {
                eprintln!("reduction output disagrees with the reference oracle");
                return Ok(EXIT_CHECK_FAILED);
            }
            Ok(EXIT_OK)
        }

        Command::Omv { shared, a, vectors, random, count } => {
            let (a, vectors) = match random {
                Some(m) => {
                    let mut rng = StdRng::seed_from_u64(shared.seed);
                    let a = random_matrix(&mut rng, m, 1);
                    let k = count.unwrap_or(m);
                    let vectors: Vec<BitVector> = (0..k)
                        .map(|_| {
                            BitVector::new((0..m).map(|_| rng.gen_range(0..=1u8)).collect())
                                .expect("bits in range")
                        })
                        .collect();
                    (a, vectors)
                }
                None => {
                    let a_path = a.expect("required by clap");
                    let text = fs::read_to_string(&a_path)
                        .with_context(|| format!("reading {}", a_path.display()))?;
                    let a = Matrix::parse(&text)?;
                    let v_path = vectors.expect("required by clap");
                    let text = fs::read_to_string(&v_path)
                        .with_context(|| format!("reading {}", v_path.display()))?;
                    let vectors = text
                        .lines()
                        .enumerate()
                        .filter(|(_, l)| !l.trim().is_empty())
                        .map(|(idx, l)| {
                            let v = BitVector::parse(l)
                                .map_err(|e| anyhow!("vector line {}: {e}", idx + 1))?;
                            if v.len() != a.n() {
                                return Err(anyhow!(
                                    "vector line {}: length {} does not match dimension {}",
                                    idx + 1,
                                    v.len(),
                                    a.n()
                                ));
                            }
                            Ok(v)
                        })
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    (a, vectors)
                }
            };

            // stream each output as soon as it is computed
            let mut session = OmvSession::new(&a)?;
            let mut lines = String::new();
            let stdout = std::io::stdout();
            for v in &vectors {
                let u = session.apply(v)?;
                let line = u.to_text();
                let mut lock = stdout.lock();
                writeln!(lock, "{line}")?;
                lock.flush()?;
                lines.push_str(&line);
                lines.push('\n');
            }
            let agree = vectors
                .iter()
                .zip(lines.lines())
                .all(|(v, line)| {
                    lislab::model::boolean_matvec(&a, v)
                        .map(|u| u.to_text() == line)
                        .unwrap_or(false)
                });
            let mut report = session.report(agree);
            report.seeds = vec![shared.seed];
            write_atomic(&shared.out.join("outputs.txt"), &lines)?;
            write_json(&shared.out.join("omv.json"), &report)?;
            if shared.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
            if !agree {
                eprintln!("online outputs disagree with the reference oracle");
                return Ok(EXIT_CHECK_FAILED);
            }
            Ok(EXIT_OK)
        }

        Command::Plot { shared, n, multiplier, chain, canvas, no_weights, force } => {
            if n > 16 && !force {
                anyhow::bail!("side {n} exceeds the readability guard of 16; pass --force to override");
            }
            let mut rng = StdRng::seed_from_u64(shared.seed);
            let a = random_matrix(&mut rng, n, multiplier);
            let b = lislab::verify::random_vector(&mut rng, n, multiplier);
            let emb = build_embedding(&a, &b, multiplier)?;
            let opts = RenderOptions {
                width: canvas,
                height: canvas,
                show_weights: !no_weights,
                highlight_column: chain,
            };
            let svg = render_embedding(&emb, &opts)?;
            let path = shared.out.join("embedding.svg");
            write_atomic(&path, &svg)?;
            if let Some(j) = chain {
                let weight = closed_form_c(&emb, FormulaCase::StartToEnd { j })?;
                println!("chain column {j} weight {weight}");
            }
            println!("wrote {}", path.display());
            Ok(EXIT_OK)
        }

        Command::Bench { shared, sizes, problem, bound } => {
            #[derive(Serialize)]
            struct BenchRow {
                size: usize,
                points: u64,
                build_ms: f64,
                update_ms: f64,
                query_ms: f64,
                agree: bool,
            }
            let mut rows = Vec::new();
            let mut rng = StdRng::seed_from_u64(shared.seed);
            for &size in &sizes {
                let row = match problem.as_str() {
                    "maxplus" => {
                        let a = random_matrix(&mut rng, size, bound);
                        let b = random_matrix(&mut rng, size, bound);
                        let (_, report) = maxplus_via_lis(&a, &b, bound)?;
                        BenchRow {
                            size,
                            points: report.counts.inserts,
                            build_ms: report.timings_ms.build,
                            update_ms: report.timings_ms.update,
                            query_ms: report.timings_ms.query,
                            agree: report.agree,
                        }
                    }
                    "omv" => {
                        let a = random_matrix(&mut rng, size, 1);
                        let vectors: Vec<BitVector> = (0..size)
                            .map(|_| {
                                BitVector::new((0..size).map(|_| rng.gen_range(0..=1u8)).collect())
                                    .expect("bits in range")
                            })
                            .collect();
                        let (_, report) = omv_run(&a, &vectors)?;
                        BenchRow {
                            size,
                            points: report.counts.inserts,
                            build_ms: report.timings_ms.build,
                            update_ms: report.timings_ms.update,
                            query_ms: report.timings_ms.query,
                            agree: report.agree,
                        }
                    }
                    other => anyhow::bail!("unknown problem `{other}` (expected maxplus or omv)"),
                };
                rows.push(row);
            }
            let mut table = String::from("size points build_ms update_ms query_ms agree\n");
            for r in &rows {
                table.push_str(&format!(
                    "{} {} {:.3} {:.3} {:.3} {}\n",
                    r.size, r.points, r.build_ms, r.update_ms, r.query_ms, r.agree
                ));
            }
            print!("{table}");
            write_atomic(&shared.out.join("bench.txt"), &table)?;
            write_json(&shared.out.join("bench.json"), &rows)?;
            let all_agree = rows.iter().all(|r| r.agree);
            Ok(if all_agree { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}
