use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sl2torus::bgg::simple_character;
use sl2torus::generators::{cyclic_generator, mlde_solve};
use sl2torus::mtc::{self, MtcLevelData};
use sl2torus::rational::{fmt_rational, parse_rational, Rational};
use sl2torus::rep;
use sl2torus::series::{eisenstein, eta_power, j_inverse, QExpansion};
use sl2torus::sl2;
use sl2torus::verify::{self, Suite, VerifyConfig};
use sl2torus::Error;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sl2torus", version, about = "Torus 1-point functions of affine sl(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Eisenstein,
    Eta,
    Jinv,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of the cyclic generator for k − λ ∈ {0, 1, 2}
    Expand {
        #[arg(short = 'k', long)]
        level: u32,
        #[arg(short = 'l', long)]
        lambda: u32,
        #[arg(short = 'n', long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Dimension, exponents, ρ(T), irreducibility, congruence and holomorphy data
    Classify {
        #[arg(short = 'k', long)]
        level: u32,
        #[arg(short = 'l', long)]
        lambda: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Residuals of the modular differential equation for the rescaled generator
    Mlde {
        #[arg(short = 'k', long)]
        level: u32,
        #[arg(short = 'l', long)]
        lambda: u32,
        #[arg(short = 'n', long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// BGG character of L(k, λ) graded by L_0 and h_0
    Character {
        #[arg(short = 'k', long)]
        level: u32,
        #[arg(short = 'l', long)]
        lambda: u32,
        #[arg(short = 'n', long, default_value_t = 6)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Conformal weights, central charge and fusion rules at level k
    Fusion {
        #[arg(short = 'k', long)]
        level: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Eisenstein series, η powers or J^{-1}
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        /// Weight of the Eisenstein series
        #[arg(long, default_value_t = 4)]
        weight: u32,
        /// Exponent r of η^r, as "num/den" or "num"
        #[arg(long, default_value = "1", value_parser = parse_rational_arg)]
        power: Rational,
        #[arg(short = 'n', long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Categorical pair (S^(p), T^(p)) with relation residuals and probes
    Mtc {
        #[arg(short = 'k', long)]
        level: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = mtc::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = mtc::DEFAULT_MAX_LEVEL)]
        max_level: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a verification suite; exit status 1 if any check fails
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = mtc::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Highest level swept by the categorical checks (default 10)
        #[arg(long)]
        max_level: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

enum Failure {
    Lib(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::UnsupportedDimension(_) | Error::Unsupported(_) | Error::Refused(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn print_series(label: &str, s: &QExpansion, format: Format) {
    match format {
        Format::Json => print_json(s),
        Format::Table => println!("{label}{s}"),
    }
}

fn cplx(z: num_complex::Complex64) -> String {
    format!("{:+.4}{:+.4}i", z.re, z.im)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Expand { level, lambda, order, format } => {
            let g = cyclic_generator(level, lambda, order)?;
            match format {
                Format::Json => print_json(&g),
                Format::Table => {
                    println!("k = {level}, lambda = {lambda}, weight {}", g.form_weight);
                    for c in &g.components {
                        println!("mu = {}: {}", c.mu, c.series);
                    }
                }
            }
        }
        Command::Classify { level, lambda, format } => classify(level, lambda, format)?,
        Command::Mlde { level, lambda, order, format } => {
            let r = mlde_solve(level, lambda, order)?;
            match format {
                Format::Json => print_json(&r),
                Format::Table => {
                    println!("weight {}, exponents [{}]", r.weight, rats(&r.exponents).join(", "));
                    println!("kappa = [{}]", rats(&r.kappa).join(", "));
                    for c in &r.residuals {
                        println!("mu = {}: residual {}", c.mu, if c.series.is_zero() { "zero".to_string() } else { c.series.to_string() });
                    }
                }
            }
            if !r.all_zero() {
                return Err(Failure::Verification);
            }
        }
        Command::Character { level, lambda, order, format } => {
            let c = simple_character(level, lambda, order)?;
            match format {
                Format::Json => print_json(&c),
                Format::Table => {
                    for (n, row) in c.rows().iter().enumerate() {
                        let terms: Vec<String> = row.iter().rev().map(|(z, v)| format!("{v} z^{z}")).collect();
                        println!("q^{n}: {}", terms.join(" + "));
                    }
                }
            }
        }
        Command::Fusion { level, format } => {
            let data = sl2::LevelData::new(level);
            let mut table = Vec::new();
            for a in 0..=level {
                for b in 0..=level {
                    let row: Vec<u32> = (0..=level).filter(|&c| sl2::fusion_coefficient(level, a, b, c) == Ok(1)).collect();
                    table.push(json!({"lambda": a, "mu": b, "products": row}));
                }
            }
            match format {
                Format::Json => print_json(&json!({"level_data": data, "fusion": table})),
                Format::Table => {
                    println!("k = {level}, c = {}", data.central_charge);
                    for (mu, h) in data.weights.iter().enumerate() {
                        println!("h_{mu} = {h}");
                    }
                    for t in &table {
                        println!("{} x {} = {}", t["lambda"], t["mu"], t["products"]);
                    }
                }
            }
        }
        Command::Series { kind, weight, power, order, format } => {
            let s = match kind {
                SeriesKind::Eisenstein => eisenstein(weight, order)?,
                SeriesKind::Eta => eta_power(&power, order),
                SeriesKind::Jinv => j_inverse(order)?,
            };
            print_series("", &s, format);
        }
        Command::Mtc { level, p, tolerance, max_level, format } => {
            let data = MtcLevelData::with_max_level(level, max_level)?;
            let pair = data.gen_modular_pair(p, tolerance)?;
            let h = sl2::conformal_weight(level, p);
            let probe = mtc::irreducibility_probe(&pair, &h, tolerance)?;
            let (_, verdict) = mtc::certified_congruence(level, p, tolerance)?;
            let one_dim = if p == level { Some(mtc::one_dimensional_report(level)?) } else { None };
            match format {
                Format::Json => print_json(&json!({
                    "pair": pair,
                    "irreducibility": probe,
                    "congruence": verdict,
                    "one_dimensional": one_dim,
                })),
                Format::Table => {
                    println!("k = {level}, p = {p}, basis {:?}", pair.basis);
                    println!("S^(p):");
                    for row in pair.s_matrix.row_iter() {
                        let cells: Vec<String> = row.iter().map(|z| cplx(*z)).collect();
                        println!("  {}", cells.join("  "));
                    }
                    let diag: Vec<String> = (0..pair.basis.len()).map(|i| cplx(pair.t_matrix[(i, i)])).collect();
                    println!("T^(p) diagonal: {}", diag.join("  "));
                    println!(
                        "residuals: (ST)^3 - S^2 {:.2e}, S^4 - theta_p^-1 {:.2e}",
                        pair.residuals.st_cubed_minus_s_squared, pair.residuals.s_fourth_minus_twist
                    );
                    println!("irreducibility probe: {probe:?}");
                    println!("congruence: {:?} ({})", verdict.status, verdict.basis);
                    if let Some(r) = one_dim {
                        println!(
                            "S^(k) = {}, e(-3k/32) = {}, e(-3k/16) = {}; T^(k) = {}, e(k/16) = {}",
                            cplx(r.s_computed),
                            cplx(r.s_candidate_half),
                            cplx(r.s_candidate_multiplier),
                            cplx(r.t_computed),
                            cplx(r.t_expected)
                        );
                    }
                }
            }
        }
        Command::Verify { suite, tolerance, max_level, format } => {
            let config = VerifyConfig { tolerance, mtc_max_level: max_level.unwrap_or(10) };
            let checks = verify::run(suite, &config);
            let failed = checks.iter().filter(|c| !c.passed).count();
            match format {
                Format::Json => print_json(&json!({"checks": checks, "failed": failed})),
                Format::Table => {
                    for c in &checks {
                        println!("{} [{}] {} {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail);
                    }
                    println!("{} checks, {failed} failed", checks.len());
                }
            }
            if failed > 0 {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn classify(k: u32, lambda: u32, format: Format) -> Result<(), Failure> {
    let r = rep::classify(k, lambda)?;
    let verdict = &r.congruence;
    let note = (verdict.status == rep::CongruenceStatus::Undetermined && verdict.basis.starts_with("thm-prime-power"))
        .then(|| format!("irreducibility can be certified categorically: sl2torus mtc -k {k} --p {lambda}"));
    let mut report = serde_json::to_value(&r).expect("serialisable");
    report["note"] = json!(note);
    match format {
        Format::Json => print_json(&report),
        Format::Table => {
            println!("k = {k}, lambda = {lambda}, dimension {}", r.dimension);
            println!("labels            {:?}", r.labels);
            println!("leading exponents [{}]", rats(&r.leading_exponents).join(", "));
            println!("rho(T) exponents  [{}]", rats(&r.t_exponents).join(", "));
            println!("order of rho(T)   {}", r.t_order);
            println!("irreducibility    {:?}", r.irreducibility);
            match verdict.congruence_level {
                Some(n) => println!("congruence        {:?}, level {n} ({})", verdict.status, verdict.basis),
                None => println!("congruence        {:?} ({})", verdict.status, verdict.basis),
            }
            println!("holomorphy        {}", r.holomorphy);
            println!("saturated         {}", r.saturated);
            if let Some(n) = note {
                println!("note              {n}");
            }
        }
    }
    Ok(())
}
