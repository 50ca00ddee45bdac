use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ybgroup::census::{self, CensusEntry};
use ybgroup::format::{self, CensusManifest, WitnessCertificate};
use ybgroup::frozen::{self, coxeter_like_quotient, frozen_data};
use ybgroup::orders::{self, LexConvention, OrderOracle};
use ybgroup::presentation::emit_presentation;
use ybgroup::solution::{is_decomposable, retract_tower, Decomposition, TowerStatus};
use ybgroup::{Error, Representation, Solution, ValidationError, Word};

#[derive(Parser)]
#[command(name = "ybg", version, about = "Structure groups of involutive Yang-Baxter solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the solution axioms.
    Validate { file: PathBuf },
    /// Print the defining relations of the structure group.
    Present { file: PathBuf },
    /// Decomposability, retract tower, frozen class and presentation digest.
    Classify { file: PathBuf },
    /// Frozen pairs, frozen elements and the conjugation check.
    Frozen { file: PathBuf },
    /// Produce a generalized-torsion certificate.
    Witness {
        file: PathBuf,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate written by `witness`.
    WitnessCheck { certificate: PathBuf },
    /// Order of the finite quotient W by BFS.
    QuotientW {
        file: PathBuf,
        #[arg(long, default_value_t = 65536)]
        cap: usize,
    },
    /// Left-order oracle for retractable solutions.
    Order {
        #[command(subcommand)]
        action: OrderCommand,
    },
    /// Enumerate all solutions of size n up to isomorphism.
    Census {
        n: usize,
        /// Directory for per-entry solution files and manifest.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow n = 5 (pruned search).
        #[arg(long)]
        budget: bool,
    },
    /// Look for a uniquely factorizable product in A·B.
    UpCheck {
        file: PathBuf,
        /// Word in A (repeatable), e.g. --a "1 -2".
        #[arg(long = "a", required = true, allow_hyphen_values = true)]
        a: Vec<String>,
        /// Word in B (repeatable).
        #[arg(long = "b", required = true, allow_hyphen_values = true)]
        b: Vec<String>,
    },
}

#[derive(Args)]
struct LexArgs {
    /// Coordinate order for the base-level lexicographic tie-break, e.g. "2 1 3".
    #[arg(long, allow_hyphen_values = true)]
    lex_perm: Option<String>,
    /// Per-coordinate signs, e.g. "+ - +".
    #[arg(long, allow_hyphen_values = true)]
    lex_signs: Option<String>,
}

#[derive(Subcommand)]
enum OrderCommand {
    /// Compare two words: prints less, equal or greater.
    Compare {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        word1: String,
        #[arg(allow_hyphen_values = true)]
        word2: String,
        #[command(flatten)]
        lex: LexArgs,
    },
    /// Run the sampling property suite.
    Test {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[command(flatten)]
        lex: LexArgs,
    },
}

/// Exit 1: mathematical refusal or failed check. Exit 2: bad input.
enum Failure {
    Refusal(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::MalformedPermutation(_)
            | Error::IndexOutOfRange { .. }
            | Error::DimensionMismatch { .. } => Failure::Input(e.to_string()),
            _ => Failure::Refusal(e.to_string()),
        }
    }
}

impl From<ValidationError> for Failure {
    fn from(e: ValidationError) -> Self {
        match e {
            ValidationError::Malformed(_) => Failure::Input(e.to_string()),
            ValidationError::Axioms(_) => Failure::Refusal(format!("invalid: {e}")),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Solution, Failure> {
    Ok(format::parse_solution(&read(path)?)?)
}

fn word(text: &str) -> Result<Word, Failure> {
    Ok(text.parse()?)
}

fn lex_convention(args: &LexArgs, n: usize) -> Result<LexConvention, Failure> {
    let order = match &args.lex_perm {
        None => (0..n).collect(),
        Some(text) => text
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(c) if c >= 1 => Ok(c - 1),
                _ => Err(Failure::Input(format!("bad --lex-perm entry {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let negate = match &args.lex_signs {
        None => vec![false; n],
        Some(text) => text
            .split_whitespace()
            .map(|t| match t {
                "+" => Ok(false),
                "-" => Ok(true),
                _ => Err(Failure::Input(format!("bad --lex-signs entry {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(LexConvention::new(order, negate)?)
}

fn describe_tower(s: &Solution) -> Result<String, Failure> {
    let tower = retract_tower(s)?;
    let sizes: Vec<String> = (0..=tower.depth())
        .map(|j| tower.solution(j).size().to_string())
        .collect();
    Ok(match tower.status {
        TowerStatus::Retractable { level: 0 } => "retractable, level 0 (already cyclic)".into(),
        TowerStatus::Retractable { level } => {
            format!("retractable, level {level} (sizes {})", sizes.join(" -> "))
        }
        TowerStatus::NonRetractable { stuck_size } => {
            format!("non-retractable (retract stuck at size {stuck_size})")
        }
    })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { file } => {
            let s = load(&file)?;
            println!("valid: non-degenerate, involutive, braided (n = {})", s.size());
        }
        Command::Present { file } => {
            let s = load(&file)?;
            print!("{}", emit_presentation(&s));
        }
        Command::Classify { file } => {
            let s = load(&file)?;
            let entry = census::classify(&s)?;
            println!("n: {}", s.size());
            match is_decomposable(&s)? {
                Decomposition::Decomposable { part, complement } => {
                    let show = |v: &[usize]| {
                        v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
                    };
                    println!("decomposable: {{{}}} | {{{}}}", show(&part), show(&complement));
                }
                Decomposition::Indecomposable => println!("indecomposable"),
            }
            println!("retract tower: {}", describe_tower(&s)?);
            println!("frozen class m: {}", entry.class);
            println!("presentation digest: {}", entry.presentation_digest);
        }
        Command::Frozen { file } => {
            let s = load(&file)?;
            let fd = frozen_data(&s)?;
            println!("pred: {}", fd.pred);
            println!(
                "class m: {} (cycle lcm {}, multiple {})",
                fd.class,
                fd.cycle_lcm,
                fd.class / fd.cycle_lcm
            );
            for (x, w) in fd.theta.iter().enumerate() {
                println!("theta_{} = {}", x + 1, w.pretty());
            }
            let report = frozen::conjugation_check(&s, &fd)?;
            let failed: Vec<_> = report.iter().filter(|e| !e.holds).collect();
            println!(
                "conjugation check x_k theta_i x_k^-1 = theta_(f_k^-1(i)): {}/{} pass",
                report.len() - failed.len(),
                report.len()
            );
            if !failed.is_empty() {
                for e in failed {
                    println!("  FAIL k = {}, i = {}", e.k + 1, e.i + 1);
                }
                return Err(Failure::Refusal("conjugation check failed".into()));
            }
        }
        Command::Witness { file, out } => {
            let s = load(&file)?;
            let w = frozen::torsion_witness(&s)?;
            let cert = WitnessCertificate::new(&s, &w);
            println!("k = {}, i = {}, p = {}", cert.k, cert.i, cert.p);
            println!("commutator: {}", cert.commutator);
            for (j, h) in cert.conjugators.iter().enumerate() {
                println!("conjugator {}: [{}]", j + 1, h);
            }
            println!("verified: commutator non-trivial, conjugate product trivial");
            if let Some(out) = out {
                let text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
                fs::write(&out, text)
                    .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            }
        }
        Command::WitnessCheck { certificate } => {
            let cert: WitnessCertificate = serde_json::from_str(&read(&certificate)?)
                .map_err(|e| Failure::Input(format!("certificate: {e}")))?;
            let check = cert.verify()?;
            println!("commutator non-trivial: {}", check.commutator_nontrivial);
            println!("conjugate product trivial: {}", check.product_trivial);
            if !check.passed() {
                return Err(Failure::Refusal("certificate rejected".into()));
            }
            println!("certificate accepted");
        }
        Command::QuotientW { file, cap } => {
            let s = load(&file)?;
            let fd = frozen_data(&s)?;
            let q = coxeter_like_quotient(&s, &fd, cap)?;
            println!(
                "m = {}, m^n = {}, verified order = {}",
                q.class, q.expected_order, q.order
            );
        }
        Command::Order { action } => run_order(action)?,
        Command::Census { n, out, budget } => {
            let entries = census::enumerate(n, budget)?;
            let counts = census::counts(&entries);
            println!("n = {n}: {} solutions up to isomorphism", counts.total);
            println!("decomposable: {}", counts.decomposable);
            for (level, c) in &counts.retractable_by_level {
                println!("retractable level {level}: {c}");
            }
            println!(
                "non-retractable: {} ({} indecomposable)",
                counts.non_retractable, counts.non_retractable_indecomposable
            );
            if let Some(dir) = out {
                write_census(&dir, n, &entries, &counts)?;
                println!("wrote {} entries to {}", entries.len(), dir.display());
            }
        }
        Command::UpCheck { file, a, b } => {
            let s = load(&file)?;
            let rep = Representation::<i64>::new(&s);
            let a = a.iter().map(|t| word(t)).collect::<Result<Vec<_>, _>>()?;
            let b = b.iter().map(|t| word(t)).collect::<Result<Vec<_>, _>>()?;
            let report = orders::unique_product_check(&rep, &a, &b)?;
            for (x, y, c) in &report.repeated {
                println!("repeated: [{x}]*[{y}] has {c} factorizations");
            }
            match report.witness {
                Some((x, y)) => println!("unique product: [{x}]*[{y}]"),
                None => return Err(Failure::Refusal("no unique product for this (A, B)".into())),
            }
        }
    }
    Ok(())
}

fn run_order(action: OrderCommand) -> CmdResult {
    let refuse = |e: Error| match e {
        Error::NonRetractable { .. } => Failure::Refusal(format!(
            "{e}; unique-product checks (up-check) still apply"
        )),
        other => other.into(),
    };
    match action {
        OrderCommand::Compare {
            file,
            word1,
            word2,
            lex,
        } => {
            let s = load(&file)?;
            let lex = lex_convention(&lex, s.size())?;
            let o = OrderOracle::<i64>::with_lex(&s, lex).map_err(refuse)?;
            let verdict = match o.compare(&word(&word1)?, &word(&word2)?)? {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            };
            println!("{verdict}");
        }
        OrderCommand::Test {
            file,
            seed,
            samples,
            radius,
            lex,
        } => {
            let s = load(&file)?;
            let lex = lex_convention(&lex, s.size())?;
            let o = OrderOracle::<i64>::with_lex(&s, lex.clone()).map_err(refuse)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut reports = vec![
                orders::test_left_invariance(&o, samples, radius, &mut rng)?,
                orders::test_sign_well_defined(&o, samples, radius, &mut rng)?,
                orders::test_conradian(&o, samples, radius, 4, &mut rng)?,
            ];
            if s.all_f_equal() {
                reports.push(orders::test_kernel_convexity(&o, samples, radius, &mut rng)?);
                reports.push(orders::test_level_one_agreement(
                    &o, &lex, samples, radius, &mut rng,
                )?);
            }
            let mut ok = true;
            for r in &reports {
                ok &= r.passed();
                println!(
                    "{} {}: {} checked of {} samples",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.property,
                    r.checked,
                    r.samples
                );
                if !r.histogram.is_empty() {
                    let h: Vec<String> =
                        r.histogram.iter().map(|(k, c)| format!("n={k}: {c}")).collect();
                    println!("  minimal exponent histogram: {}", h.join(", "));
                }
                for f in &r.failures {
                    println!("  counterexample: {f}");
                }
            }
            let cap = samples.max(10_000);
            match orders::falsify_right_invariance(&o, cap, radius, &mut rng)? {
                Some((g, h, f)) => println!(
                    "right invariance violated: g = [{g}] < h = [{h}] but not g*f < h*f for f = [{f}]"
                ),
                None if s.is_trivial() => {
                    println!("right invariance: no violation (trivial solution, bi-orderable)")
                }
                None => println!("right invariance: inconclusive after {cap} samples"),
            }
            if !ok {
                return Err(Failure::Refusal("order property test failed".into()));
            }
        }
    }
    Ok(())
}

fn write_census(
    dir: &Path,
    n: usize,
    entries: &[CensusEntry],
    counts: &census::CensusCounts,
) -> CmdResult {
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for (i, e) in entries.iter().enumerate() {
        fs::write(
            dir.join(format::entry_file_name(n, i)),
            format::render_solution(&e.solution),
        )
        .map_err(io)?;
    }
    let manifest = CensusManifest::new(n, entries, counts);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join("manifest.json"), text + "\n").map_err(io)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refusal(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
