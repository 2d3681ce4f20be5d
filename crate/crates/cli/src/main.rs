use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use braidqm::flow::{self, FlowSpec, Hamiltonian, MIN_SEPARATION};
use braidqm::invariants::{
    link_determinant, s_bounds, s_positive, sign_omega_link, tau_bounds, tau_positive, Angle, KAPPA, PIVOT_TOL,
};
use braidqm::quasimorphism::{
    basis_matrix, coxeter_omega_tilde, defect_scan, eta_omega_tilde, homogenize, torus_omega_tilde, HomogenizationReport,
    QuasiMorphism, RandomBraids, DEFAULT_SEED,
};
use braidqm::reeb::{
    asym_bound, asym_ratio, asymptotics_csv, asymptotics_table, calabi, calabi_by_parts, gg_integral, reeb_from_grid,
    sign_gg_closed, Grid, MeasureSpec, RadialProfile, ReebTree,
};
use braidqm::BraidWord;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "braidqm", version, about = "Braid quasi-morphisms and their Gambaudo-Ghys averages")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Phi {
    Lk,
    Sign,
    Omega,
    S,
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MeasureKind {
    Lk,
    Sign,
    Omega,
}

#[derive(Args, Debug)]
struct BraidArgs {
    /// Braid word: signed generator indices, e.g. "1 -2 1".
    #[arg(long, allow_hyphen_values = true)]
    braid: String,
    /// Strand count; defaults to one more than the largest index.
    #[arg(long)]
    n: Option<usize>,
}

impl BraidArgs {
    fn word(&self) -> Result<BraidWord> {
        Ok(BraidWord::parse(&self.braid, self.n)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature, ω-signature, determinant, s and τ of a braid closure.
    Invariant {
        #[command(flatten)]
        braid: BraidArgs,
        /// ω = e^{2πiθ}, given as "p/q".
        #[arg(long, default_value = "1/2")]
        theta: Angle,
        /// Relative pivot tolerance for the ω-signature.
        #[arg(long, default_value_t = PIVOT_TOL)]
        tol: f64,
    },
    /// Estimate φ̃(β) = φ(β^p)/p with its bracket.
    Homogenize {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, value_enum)]
        phi: Phi,
        #[arg(long, default_value = "1/2")]
        theta: Angle,
        #[arg(long)]
        p: u32,
    },
    /// Largest observed |φ(ab) − φ(a) − φ(b)| over random pairs.
    Defect {
        #[arg(long, value_enum)]
        phi: Phi,
        #[arg(long, default_value = "1/2")]
        theta: Angle,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Maximum word length.
        #[arg(long, default_value_t = 12)]
        len: usize,
        /// Sample positive words only.
        #[arg(long)]
        positive: bool,
        #[arg(long, env = "BRAIDQM_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Homogenized ω-signatures of η_{i,i}, Δ²_i and σ₁…σ_{i−1}.
    EtaTable {
        /// A single row; otherwise rows 2..=n.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        theta: Angle,
    },
    /// Matrix of the ω-signature basis evaluated on η_{2,n}, …, η_{n,n}.
    Basis {
        #[arg(long)]
        n: usize,
    },
    /// Integral formulas on a Reeb tree read from JSON.
    GgIntegrate {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MeasureKind::Sign)]
        phi: MeasureKind,
        #[arg(long, default_value = "1/2")]
        theta: Angle,
    },
    /// Large-n ratio against the Calabi invariant.
    Asymptotics {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Monte-Carlo average of φ over loop braids of a simulated flow.
    Simulate {
        #[command(flatten)]
        hamiltonian: HamiltonianArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Phi::Lk)]
        phi: Phi,
        #[arg(long, default_value = "1/2")]
        theta: Angle,
        /// Number of configurations.
        #[arg(long = "samples", short = 'N')]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, env = "BRAIDQM_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Reeb tree of a Hamiltonian sampled on a grid file.
    ReebExtract {
        #[arg(long)]
        grid: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct HamiltonianArgs {
    /// Radial profile JSON.
    #[arg(long)]
    radial: Option<PathBuf>,
    /// Grid file.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Battery ℏ(J) = a(1/2 − J).
    #[arg(long, allow_hyphen_values = true)]
    battery: Option<f64>,
}

impl HamiltonianArgs {
    fn load(&self) -> Result<Hamiltonian> {
        if let Some(path) = &self.radial {
            let h: RadialProfile = serde_json::from_str(&read(path)?).context("radial profile JSON")?;
            h.validate()?;
            Ok(Hamiltonian::Radial(h))
        } else if let Some(path) = &self.grid {
            Ok(Hamiltonian::Grid(Grid::parse(&read(path)?)?))
        } else if let Some(a) = self.battery {
            Ok(Hamiltonian::Radial(RadialProfile::linear(a)?))
        } else {
            bail!("one of --radial, --grid, --battery is required")
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn quasimorphism(phi: Phi, theta: Angle, n: usize) -> QuasiMorphism {
    match phi {
        Phi::Lk => QuasiMorphism::lk(),
        Phi::Sign => QuasiMorphism::sign_hat(Angle::half(), n),
        Phi::Omega => QuasiMorphism::sign_hat(theta, n),
        Phi::S => QuasiMorphism::s_hat(),
        Phi::Tau => QuasiMorphism::two_tau_hat(),
    }
}

fn rat(q: Rational64) -> Value {
    Value::String(q.to_string())
}

/// Flat JSON object as `key,value` rows.
fn object_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(m) = v {
        for (k, x) in m {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let s = if s.contains(',') { format!("\"{}\"", s.replace('"', "\"\"")) } else { s };
            writeln!(out, "{k},{s}").expect("string write");
        }
    }
    out
}

fn emit(format: Format, v: &Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("value serializes") + "\n",
        Format::Csv => object_csv(v),
    }
}

fn run(cli: Cli) -> Result<String> {
    let format = cli.format;
    match cli.command {
        Command::Invariant { braid, theta, tol } => {
            let b = braid.word()?;
            let sig = sign_omega_link(&b, Angle::half());
            let s = braidqm::invariants::omega_signature_with_tol(
                &braidqm::diagram::seifert_matrix(&b).matrix,
                theta,
                tol,
            );
            let knot = b.cycle_count() == 1;
            let v = json!({
                "braid": b.to_string(),
                "strands": b.strands(),
                "components": b.cycle_count(),
                "writhe": b.lk(),
                "kappa": KAPPA,
                "signature": sig.signature,
                "determinant": link_determinant(&b).to_string(),
                "theta": theta.to_string(),
                "omega_signature": KAPPA * s.signature,
                "nullity": s.nullity,
                "degenerate": s.degenerate,
                "pivot_tol": tol,
                "s": s_positive(&b).ok(),
                "tau": tau_positive(&b).ok().map(rat),
                "s_bounds": if knot { s_bounds(&b).ok().map(|i| json!([i.lo, i.hi])) } else { None },
                "tau_bounds": if knot { tau_bounds(&b).ok().map(|i| json!([rat(i.lo), rat(i.hi)])) } else { None },
            });
            Ok(emit(format, &v))
        }
        Command::Homogenize { braid, phi, theta, p } => {
            let b = braid.word()?;
            let q = quasimorphism(phi, theta, b.strands());
            let est = homogenize(&q, &b, p)?;
            let report = HomogenizationReport::new(&q, &b, &est);
            Ok(emit(format, &serde_json::to_value(report)?))
        }
        Command::Defect { phi, theta, n_min, n_max, pairs, len, positive, seed } => {
            if n_min > n_max {
                bail!("n_min = {n_min} exceeds n_max = {n_max}");
            }
            let q = quasimorphism(phi, theta, n_max);
            let mut sampler = RandomBraids::new(n_min..=n_max, len);
            if positive {
                sampler = sampler.positive();
            }
            let scan = defect_scan(&q, &sampler, pairs, seed)?;
            let mut v = serde_json::to_value(&scan)?;
            v["defect_bound"] = json!(q.defect_bound());
            v["kappa"] = json!(KAPPA);
            Ok(emit(format, &v))
        }
        Command::EtaTable { i, n, theta } => {
            let rows: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (2..=n).collect(),
            };
            let t = theta.value();
            let mut table = Vec::new();
            for i in rows {
                table.push((i, eta_omega_tilde(i, t)?, torus_omega_tilde(i, t)?, coxeter_omega_tilde(i, t)?));
            }
            match format {
                Format::Csv => {
                    let mut out = String::from("i,theta,eta,full_twist,coxeter\n");
                    for (i, e, f, c) in table {
                        writeln!(out, "{i},{theta},{e},{f},{c}").expect("string write");
                    }
                    Ok(out)
                }
                Format::Json => {
                    let rows: Vec<Value> = table
                        .into_iter()
                        .map(|(i, e, f, c)| json!({"i": i, "eta": rat(e), "full_twist": rat(f), "coxeter": rat(c)}))
                        .collect();
                    Ok(emit(format, &json!({"theta": theta.to_string(), "kappa": KAPPA, "rows": rows})))
                }
            }
        }
        Command::Basis { n } => {
            let m = basis_matrix(n)?;
            match format {
                Format::Csv => {
                    let mut out = String::new();
                    for row in &m {
                        let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
                        writeln!(out, "{}", cells.join(",")).expect("string write");
                    }
                    Ok(out)
                }
                Format::Json => {
                    let rows: Vec<Vec<Value>> = m.iter().map(|r| r.iter().copied().map(rat).collect()).collect();
                    Ok(emit(format, &json!({"n": n, "kappa": KAPPA, "rows": "eta_i, i = 2..n", "columns": "B_k, k = 2..n", "matrix": rows})))
                }
            }
        }
        Command::GgIntegrate { tree, n, phi, theta } => {
            let t = ReebTree::from_json(&read(&tree)?)?;
            let m = match phi {
                MeasureKind::Lk => MeasureSpec::lk(n)?,
                MeasureKind::Sign => MeasureSpec::signature(n)?,
                MeasureKind::Omega => MeasureSpec::omega_signature(n, theta.value())?,
            };
            let mut v = json!({
                "n": n,
                "phi": format!("{phi:?}").to_lowercase(),
                "gg_integral": gg_integral(&t, &m),
                "total_mass": m.total_mass(),
                "calabi": calabi(&t),
                "calabi_by_parts": calabi_by_parts(&t),
            });
            if phi == MeasureKind::Omega {
                v["theta"] = json!(theta.to_string());
            }
            if phi == MeasureKind::Sign {
                v["sign_gg_closed"] = json!(sign_gg_closed(&t, n));
            }
            if n >= 2 {
                v["asym_ratio"] = json!(asym_ratio(&t, n));
                v["asym_bound"] = json!(asym_bound(&t, n)?);
            }
            Ok(emit(format, &v))
        }
        Command::Asymptotics { tree, n_min, n_max } => {
            let t = ReebTree::from_json(&read(&tree)?)?;
            let rows = asymptotics_table(&t, n_min..=n_max)?;
            match format {
                Format::Csv => Ok(asymptotics_csv(&rows)),
                Format::Json => Ok(emit(format, &serde_json::to_value(rows)?)),
            }
        }
        Command::Simulate { hamiltonian, n, phi, theta, samples, p, dt, seed } => {
            let spec = FlowSpec::new(hamiltonian.load()?, dt, p)?;
            let q = quasimorphism(phi, theta, n);
            let run = flow::monte_carlo_run(&spec, &q, n, samples, seed)?;
            match format {
                Format::Csv => Ok(flow::samples_csv(&run.samples)),
                Format::Json => {
                    let mut v = serde_json::to_value(&run.estimate)?;
                    v["dt"] = json!(spec.dt);
                    v["min_separation"] = json!(MIN_SEPARATION);
                    v["eps_cross"] = json!(flow::EPS_CROSS);
                    Ok(emit(format, &v))
                }
            }
        }
        Command::ReebExtract { grid } => {
            let g = Grid::parse(&read(&grid)?)?;
            let t = reeb_from_grid(&g)?;
            Ok(t.to_json() + "\n")
        }
    }
}

fn error_kind(e: &anyhow::Error) -> String {
    if let Some(b) = e.downcast_ref::<braidqm::Error>() {
        let dbg = format!("{b:?}");
        let name: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
        let mut snake = String::new();
        for (k, c) in name.chars().enumerate() {
            if c.is_uppercase() && k > 0 {
                snake.push('_');
            }
            snake.push(c.to_ascii_lowercase());
        }
        snake
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        "io".into()
    } else if e.downcast_ref::<serde_json::Error>().is_some() {
        "parse".into()
    } else {
        "invalid_argument".into()
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({"error": kind, "message": message}));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return fail("usage", &first, 2);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&error_kind(&e), &format!("{e:#}"), 1),
    }
}
