//! Command definitions and dispatch.
//!
//! Exit-code convention: 0 for success (or a positive verdict), 1 when the
//! mathematics answers "no" to a check (not simple, not maximal, a replay
//! that does not reach 1, a golden mismatch), 2 for usage errors (bad
//! flags, bad config, parse errors).

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ore_algebra::ore::{pi_map, AlgebraSpec, OrePoly};
use ore_algebra::simplicity::{
    self, CertProvider, CertStep, Simplicity, SimplicityCertificate, WitnessOutcome,
};
use ore_algebra::structure::{self, TruncationBound};

use crate::config::AlgebraConfig;
use crate::corpus;
use crate::parse::{parse_ore_expr, parse_ring_element};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "ore",
    about = "Exact computations in Ore extension rings R[x; sigma, delta]",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args)]
pub struct ConfigArg {
    /// Path to the algebra configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(clap::Args)]
pub struct BoundArgs {
    /// Maximum Ore degree of candidates (default from the config).
    #[arg(long)]
    pub xdeg: Option<usize>,
    /// Maximum coefficient degree / prefix length (default from the config).
    #[arg(long)]
    pub ydeg: Option<usize>,
    /// Sample count for rings without finite generating sets.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for sampled constraint sets.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl BoundArgs {
    fn resolve(&self, base: TruncationBound) -> TruncationBound {
        let mut b = base;
        if let Some(n) = self.xdeg {
            b.x_degree = n;
        }
        if let Some(m) = self.ydeg {
            b.coeff_degree = m;
        }
        if let Some(s) = self.samples {
            b.samples = s;
        }
        b
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Multiply two Ore polynomials.
    Mul {
        #[command(flatten)]
        config: ConfigArg,
        lhs: String,
        rhs: String,
    },
    /// Commutator [P, Q] = PQ - QP.
    Commutator {
        #[command(flatten)]
        config: ConfigArg,
        lhs: String,
        rhs: String,
    },
    /// Apply the expansion map pi(m, n) to a coefficient element.
    Pi {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
        element: String,
    },
    /// Centralizer of the coefficient ring up to the bound.
    Centralizer {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Center of the extension up to the bound.
    Center {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Kernel of the derivation inside the coefficient ring.
    Constants {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Maximal-commutativity check (exit 1 when a witness exists).
    Maxcomm {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Invariant-ideal simplicity of the coefficient ring (exit 1 when
    /// not simple).
    DeltaSimple {
        #[command(flatten)]
        config: ConfigArg,
        /// Degree bound for the exhaustive sweep over F_p.
        #[arg(long, default_value_t = 4)]
        degree_bound: usize,
    },
    /// Construct a simplicity certificate for the ideal generated by an
    /// element (exit 1 on a stall, which exposes a central witness).
    Witness {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        element: String,
    },
    /// Independently replay a certificate (exit 1 unless it reaches 1).
    Replay {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Inner-derivation witness over the rational-function field.
    InnerWitness {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0xA11CE)]
        seed: u64,
    },
    /// Combined simplicity report for differential specs (exit 1 when not
    /// simple).
    TheoremReport {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Re-run the construction-time law checks with extra samples.
    VerifyLaws {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0xA11CE)]
        seed: u64,
    },
    /// Run the bundled worked examples and diff them against the stored
    /// golden artifacts (exit 1 on any mismatch).
    Examples {
        /// "all" or one example name.
        #[arg(long, default_value = "all")]
        run: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Rewrite the stored golden files with the computed artifacts
        /// (development only).
        #[arg(long, hide = true)]
        bless: bool,
    },
}

pub(crate) struct Usage(pub(crate) String);

impl From<crate::parse::ParseError> for Usage {
    fn from(e: crate::parse::ParseError) -> Usage {
        Usage(e.to_string())
    }
}

impl From<crate::config::ConfigError> for Usage {
    fn from(e: crate::config::ConfigError) -> Usage {
        Usage(e.to_string())
    }
}

impl From<ore_algebra::OreError> for Usage {
    fn from(e: ore_algebra::OreError) -> Usage {
        Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Usage {
    fn from(e: serde_json::Error) -> Usage {
        Usage(e.to_string())
    }
}

fn load(config: &ConfigArg) -> Result<(Arc<AlgebraSpec>, TruncationBound), Usage> {
    let text = fs::read_to_string(&config.config)
        .map_err(|e| Usage(format!("cannot read {}: {e}", config.config.display())))?;
    let cfg = AlgebraConfig::from_json(&text)?;
    Ok(cfg.build()?)
}

fn emit(json_mode: bool, value: &Value, text: &str) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Usage> {
    match cli.command {
        Command::Mul { config, lhs, rhs } => {
            let (spec, _) = load(&config)?;
            let p = parse_ore_expr(&lhs, &spec)?;
            let q = parse_ore_expr(&rhs, &spec)?;
            let product = &p * &q;
            emit(
                config.json,
                &json!({"product": product.to_string(),
                        "terms": ore_algebra::ore::ore_poly_to_json(&product)}),
                &product.to_string(),
            );
            Ok(EXIT_OK)
        }
        Command::Commutator { config, lhs, rhs } => {
            let (spec, _) = load(&config)?;
            let p = parse_ore_expr(&lhs, &spec)?;
            let q = parse_ore_expr(&rhs, &spec)?;
            let c = p.commutator(&q);
            emit(
                config.json,
                &json!({"commutator": c.to_string(),
                        "terms": ore_algebra::ore::ore_poly_to_json(&c)}),
                &c.to_string(),
            );
            Ok(EXIT_OK)
        }
        Command::Pi { config, m, n, element } => {
            let (spec, _) = load(&config)?;
            let r = parse_ring_element(&element, &spec)?;
            let image = pi_map(&spec, m, n, &r);
            emit(
                config.json,
                &json!({"m": m, "n": n, "element": r.to_string(), "image": image.to_string()}),
                &image.to_string(),
            );
            Ok(EXIT_OK)
        }
        Command::Centralizer { config, bounds } => {
            let (spec, base) = load(&config)?;
            let bound = bounds.resolve(base);
            let seed = bounds.seed.unwrap_or(structure::DEFAULT_SAMPLE_SEED);
            let report = structure::centralizer_of_r_seeded(&spec, &bound, seed)?;
            let text = render_subspace("centralizer of R", &report);
            emit(config.json, &report.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::Center { config, bounds } => {
            let (spec, base) = load(&config)?;
            let bound = bounds.resolve(base);
            let seed = bounds.seed.unwrap_or(structure::DEFAULT_SAMPLE_SEED);
            let report = structure::center_seeded(&spec, &bound, seed)?;
            let text = render_subspace("center", &report);
            emit(config.json, &report.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::Constants { config, bounds } => {
            let (spec, base) = load(&config)?;
            let bound = bounds.resolve(base);
            let report = structure::constants(&spec, &bound)?;
            let mut text = render_subspace("constants", &report.report);
            text.push_str(&format!("\nconstants form a field: {}", report.constants_form_field));
            emit(config.json, &report.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::Maxcomm { config, bounds } => {
            let (spec, base) = load(&config)?;
            let bound = bounds.resolve(base);
            let seed = bounds.seed.unwrap_or(structure::DEFAULT_SAMPLE_SEED);
            let report = structure::is_maximal_commutative_seeded(&spec, &bound, seed)?;
            let verdict = if report.maximal_up_to_bound {
                "maximal-commutative up to bound".to_string()
            } else {
                format!(
                    "not maximal commutative; witness {}",
                    report.witness.as_ref().expect("witness accompanies a negative")
                )
            };
            let fired: Vec<String> = report.fired.iter().map(|c| c.to_string()).collect();
            let text = format!("{verdict}\nsufficient conditions fired: {fired:?}");
            emit(config.json, &report.to_json(), &text);
            Ok(if report.maximal_up_to_bound { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::DeltaSimple { config, degree_bound } => {
            let (spec, _) = load(&config)?;
            let verdict = simplicity::is_delta_simple(&spec, degree_bound);
            let mut text = format!("verdict: {}", verdict.simplicity);
            if let Some(w) = &verdict.witness {
                text.push_str(&format!("\nwitness ideal: {w}"));
            }
            text.push_str(&format!("\ndetail: {}", verdict.detail));
            emit(config.json, &verdict.to_json(), &text);
            Ok(match verdict.simplicity {
                Simplicity::NotSimple => EXIT_NEGATIVE,
                _ => EXIT_OK,
            })
        }
        Command::Witness { config, element } => {
            let (spec, _) = load(&config)?;
            let b = parse_ore_expr(&element, &spec)?;
            let provider = CertProvider::for_spec(&spec)
                .ok_or_else(|| Usage("no certificate provider for this spec".into()))?;
            match simplicity::simplicity_witness(&spec, &b, provider)? {
                WitnessOutcome::Certificate(cert) => {
                    let replayed = simplicity::replay(&cert);
                    assert!(replayed.is_one(), "internal: certificate must replay to 1");
                    emit(
                        config.json,
                        &cert.to_json(),
                        &format!("certificate with {} steps; replay = 1", cert.steps.len()),
                    );
                    Ok(EXIT_OK)
                }
                WitnessOutcome::Stall { central } => {
                    emit(
                        config.json,
                        &json!({"stall": true, "central_witness": central.to_string()}),
                        &format!("stalled: central element {central} generates a proper ideal"),
                    );
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Replay { config, certificate } => {
            let (spec, _) = load(&config)?;
            let text = fs::read_to_string(&certificate)
                .map_err(|e| Usage(format!("cannot read {}: {e}", certificate.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Usage(e.to_string()))?;
            let cert = certificate_from_json(&value, &spec)?;
            let replayed = simplicity::replay(&cert);
            let ok = replayed.is_one();
            emit(
                config.json,
                &json!({"replayed": replayed.to_string(), "reaches_one": ok}),
                &format!("replay = {replayed}; reaches 1: {ok}"),
            );
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::InnerWitness { config, alpha, samples, seed } => {
            let (spec, _) = load(&config)?;
            let a = parse_ring_element(&alpha, &spec)?;
            let witness = simplicity::inner_derivation_witness(&spec, &a, samples, seed)?;
            let text = format!(
                "a = {}\nverified on {} samples\n{}",
                witness.element, witness.verified_samples, witness.note
            );
            emit(config.json, &witness.to_json(), &text);
            Ok(EXIT_OK)
        }
        Command::TheoremReport { config, bounds } => {
            let (spec, base) = load(&config)?;
            let bound = bounds.resolve(base);
            let report = simplicity::main_theorem_report(&spec, &bound)?;
            let text = format!(
                "conclusion: {}\napplied criterion: {}\ncertified: {}",
                report.conclusion,
                report
                    .applied
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "none".into()),
                report.certified
            );
            emit(config.json, &report.to_json(), &text);
            Ok(match report.conclusion {
                Simplicity::NotSimple => EXIT_NEGATIVE,
                _ => EXIT_OK,
            })
        }
        Command::VerifyLaws { config, samples, seed } => {
            let (spec, _) = load(&config)?;
            let report = verify_laws(&spec, samples, seed);
            let ok = report["ok"].as_bool().expect("flag");
            emit(
                config.json,
                &report,
                &format!(
                    "laws verified on {} extra pairs: {}",
                    samples,
                    if ok { "ok" } else { "VIOLATION" }
                ),
            );
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Examples { run, json, bless } => corpus::run_examples(&run, json, bless),
    }
}

fn render_subspace(title: &str, report: &structure::SubspaceReport) -> String {
    let mut out = format!(
        "{title} up to (x_degree={}, coeff_degree={}): verdict {}",
        report.bound.x_degree, report.bound.coeff_degree, report.verdict
    );
    if report.sampled {
        out.push_str(" [sampled constraints]");
    }
    out.push_str("\nbasis:");
    for b in &report.basis {
        out.push_str(&format!("\n  {b}"));
    }
    if let Some(w) = &report.witness {
        out.push_str(&format!("\nwitness outside R: {w}"));
    }
    out
}

/// Extra randomized law checking on top of the construction-time
/// validation.
fn verify_laws(spec: &Arc<AlgebraSpec>, samples: usize, seed: u64) -> Value {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let ring = spec.ring();
    let one = ring.one();
    let sigma_fixes_one = spec.sigma().apply(&one) == one;
    let delta_kills_one = spec.delta().apply(&one).is_zero();
    let mut ok = sigma_fixes_one && delta_kills_one;
    let mut checked = 0usize;
    for _ in 0..samples {
        let a = ring.sample(&mut rng, 3);
        let b = ring.sample(&mut rng, 3);
        let hom = spec.sigma().apply(&(&a * &b))
            == &spec.sigma().apply(&a) * &spec.sigma().apply(&b)
            && spec.sigma().apply(&(&a + &b)) == &spec.sigma().apply(&a) + &spec.sigma().apply(&b);
        let leibniz = spec.delta().apply(&(&a * &b))
            == &(&spec.sigma().apply(&a) * &spec.delta().apply(&b))
                + &(&spec.delta().apply(&a) * &b);
        ok &= hom && leibniz;
        checked += 1;
    }
    json!({
        "sigma_fixes_one": sigma_fixes_one,
        "delta_kills_one": delta_kills_one,
        "pairs_checked": checked,
        "seed": seed,
        "ok": ok,
    })
}

/// Rebuilds a certificate from its JSON form, parsing each element string
/// under the given spec.
pub(crate) fn certificate_from_json(
    value: &Value,
    spec: &Arc<AlgebraSpec>,
) -> Result<SimplicityCertificate, Usage> {
    let input_text = value
        .get("input")
        .and_then(Value::as_str)
        .ok_or_else(|| Usage("certificate is missing \"input\"".into()))?;
    let input = parse_ore_expr(input_text, spec)?;
    let steps_value = value
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| Usage("certificate is missing \"steps\"".into()))?;
    let mut steps = Vec::with_capacity(steps_value.len());
    for s in steps_value {
        let op = s
            .get("op")
            .and_then(Value::as_str)
            .ok_or_else(|| Usage("step is missing \"op\"".into()))?;
        let arg_poly = |key: &str| -> Result<OrePoly, Usage> {
            let text = s
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| Usage(format!("step is missing {key:?}")))?;
            Ok(parse_ore_expr(text, spec)?)
        };
        let step = match op {
            "left_mul" => CertStep::LeftMul(arg_poly("arg")?),
            "right_mul" => CertStep::RightMul(arg_poly("arg")?),
            "commutator_with" => CertStep::CommutatorWith(arg_poly("arg")?),
            "linear_combination" => {
                let terms = s
                    .get("terms")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Usage("linear_combination is missing \"terms\"".into()))?;
                let mut parsed = Vec::with_capacity(terms.len());
                for t in terms {
                    let pair = t
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Usage("each term must be a [left, right] pair".into()))?;
                    let l = pair[0]
                        .as_str()
                        .ok_or_else(|| Usage("term sides must be strings".into()))?;
                    let r = pair[1]
                        .as_str()
                        .ok_or_else(|| Usage("term sides must be strings".into()))?;
                    parsed.push((parse_ore_expr(l, spec)?, parse_ore_expr(r, spec)?));
                }
                CertStep::LinearCombination(parsed)
            }
            other => return Err(Usage(format!("unknown certificate op {other:?}"))),
        };
        steps.push(step);
    }
    Ok(SimplicityCertificate { input, steps })
}
