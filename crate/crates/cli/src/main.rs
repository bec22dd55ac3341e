//! `charcalc`: construct root systems, compute and combine formal
//! characters, run obstruction checks and tensor-closedness sweeps.
//!
//! Output is deterministic; `--json` switches to the stable machine
//! interface. Exit codes: 0 success, 1 domain error, 2 usage or parse error.

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use charcalc::category_o::{
    char_dimension, is_finite_dim_char, kostant_p, satisfies_o_necessary, simple_character,
    tensor_obstruction, verma_character, verma_decomposition, weyl_character, TensorVerdict,
};
use charcalc::char_ring::{LaurentPoly, RationalChar};
use charcalc::json as cjson;
use charcalc::oracles::{freudenthal_multiplicity, kostant_partition_count, weyl_dimension};
use charcalc::root_system::{RootSystem, Weight};
use charcalc::Error;

#[derive(Parser)]
#[command(name = "charcalc", version, about = "Exact formal-character calculus for category O")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Weyl-group enumeration cap (also via CHARCALC_CAP; default 1000000).
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Args)]
struct RsArg {
    /// Root system: a label like A2, B2, G2, an x-separated direct sum like
    /// A1xA1, or a JSON Cartan matrix {"cartan": [[2,-1],[-1,2]]}.
    #[arg(long, value_name = "SPEC")]
    rs: String,
}

/// Exactly one way of naming a character.
#[derive(Args)]
struct CharSource {
    /// Verma character with this highest weight.
    #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
    verma: Option<String>,
    /// Finite-dimensional character with this dominant integral highest weight.
    #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
    weyl: Option<String>,
    /// Simple character (dominant integral, or rank-1 with zero torsion).
    #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
    simple: Option<String>,
    /// The Kostant element p = 1/prod(1 - e^{-beta}).
    #[arg(long)]
    p: bool,
    /// Read a character from a JSON file ('-' for stdin).
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
}

impl CharSource {
    fn build(&self, rs: &Arc<RootSystem>) -> Result<RationalChar, Error> {
        let mut picked: Vec<&str> = Vec::new();
        if self.verma.is_some() {
            picked.push("--verma");
        }
        if self.weyl.is_some() {
            picked.push("--weyl");
        }
        if self.simple.is_some() {
            picked.push("--simple");
        }
        if self.p {
            picked.push("--p");
        }
        if self.input.is_some() {
            picked.push("--input");
        }
        if picked.len() != 1 {
            return Err(Error::Parse(format!(
                "exactly one character source required (--verma, --weyl, --simple, --p, --input); got {}",
                if picked.is_empty() { "none".to_string() } else { picked.join(" ") }
            )));
        }
        if let Some(w) = &self.verma {
            return Ok(verma_character(rs, &rs.parse_weight(w)?));
        }
        if let Some(w) = &self.weyl {
            return weyl_character(rs, &rs.parse_weight(w)?);
        }
        if let Some(w) = &self.simple {
            return simple_character(rs, &rs.parse_weight(w)?);
        }
        if self.p {
            return Ok(kostant_p(rs));
        }
        let path = self.input.as_ref().unwrap();
        let text = read_input(path)?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("invalid character JSON: {e}")))?;
        cjson::rational_char_from_json(rs, &value)
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read '{path}': {e}")))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a root system and print its data.
    Rootsys {
        #[command(flatten)]
        rs: RsArg,
    },
    /// Compute a single character.
    Char {
        #[command(flatten)]
        rs: RsArg,
        #[command(flatten)]
        source: CharSource,
    },
    /// Multiply characters and test the tensor obstruction.
    Tensor {
        #[command(flatten)]
        rs: RsArg,
        /// Verma factor (repeatable).
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        verma: Vec<String>,
        /// Finite-dimensional factor (repeatable).
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        weyl: Vec<String>,
        /// Simple factor (repeatable).
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        simple: Vec<String>,
        /// Verma character of one direct-sum component, pulled back to the
        /// product: BLOCK:WEIGHT with a 1-based block index (repeatable).
        #[arg(long = "pull-verma", value_name = "BLOCK:WEIGHT", allow_hyphen_values = true)]
        pull_verma: Vec<String>,
    },
    /// Canonically reduce a character read from JSON.
    Reduce {
        #[command(flatten)]
        rs: RsArg,
        /// Character JSON file ('-' for stdin).
        #[arg(long, value_name = "FILE")]
        input: String,
    },
    /// Expand a character into exact weight multiplicities.
    Expand {
        #[command(flatten)]
        rs: RsArg,
        #[command(flatten)]
        source: CharSource,
        /// Truncation depth in root height below each coset representative.
        #[arg(long, default_value_t = 10)]
        depth: u32,
    },
    /// Run the category-O membership checks on a character.
    Check {
        #[command(flatten)]
        rs: RsArg,
        #[command(flatten)]
        source: CharSource,
    },
    /// Decompose a character in the Verma-character basis.
    Decompose {
        #[command(flatten)]
        rs: RsArg,
        #[command(flatten)]
        source: CharSource,
    },
    /// Test linkage and the standard partial order for two weights.
    Linkage {
        #[command(flatten)]
        rs: RsArg,
        /// First weight.
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        a: String,
        /// Second weight.
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        b: String,
    },
    /// Sweep weights through the finite-dimensionality/obstruction test.
    Sweep {
        #[command(flatten)]
        rs: RsArg,
        /// Weight to test (repeatable).
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true, required = true)]
        weight: Vec<String>,
    },
    /// Query the brute-force oracles.
    Oracle {
        #[command(flatten)]
        rs: RsArg,
        /// Kostant partition count of this root-lattice vector (simple-root
        /// coordinates, comma-separated).
        #[arg(long, value_name = "GAMMA", allow_hyphen_values = true)]
        partition: Option<String>,
        /// Weyl dimension of the simple module with this highest weight.
        #[arg(long = "weyl-dim", value_name = "WEIGHT", allow_hyphen_values = true)]
        weyl_dim: Option<String>,
        /// Freudenthal multiplicity: requires --lam and --mu.
        #[arg(long)]
        freudenthal: bool,
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        lam: Option<String>,
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        mu: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.cap.or_else(|| {
        std::env::var("CHARCALC_CAP")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    match run(&cli.cmd, cap, cli.json) {
        Ok(output) => {
            println!("{output}");
            ExitCode::from(0)
        }
        Err(e) => {
            if e.is_parse() {
                eprintln!("error: {e}");
                ExitCode::from(2)
            } else {
                if cli.json {
                    let v = json!({ "error": e.to_string(), "kind": error_kind(&e) });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                } else {
                    eprintln!("error: {e}");
                }
                ExitCode::from(1)
            }
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::NotFiniteType(_) => "not_finite_type",
        Error::MismatchedRootSystems => "mismatched_root_systems",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::NotPositiveRoot(_) => "not_positive_root",
        Error::NotDominantIntegral => "not_dominant_integral",
        Error::SimpleNeedsKlData => "needs_kl_data",
        Error::DenominatorNotCleared(_) => "denominator_not_cleared",
        Error::InfiniteDimensional => "infinite_dimensional",
        Error::NegativeCoefficient(_) => "negative_coefficient",
    }
}

fn parse_rs(spec: &str, cap: Option<usize>) -> Result<Arc<RootSystem>, Error> {
    let rs = RootSystem::parse(spec)?;
    Ok(match cap {
        Some(c) => rs.set_enum_cap(c),
        None => rs,
    })
}

fn run(cmd: &Cmd, cap: Option<usize>, as_json: bool) -> Result<String, Error> {
    match cmd {
        Cmd::Rootsys { rs } => rootsys(&parse_rs(&rs.rs, cap)?, as_json),
        Cmd::Char { rs, source } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let chi = source.build(&rs)?;
            Ok(render_char(&chi, as_json))
        }
        Cmd::Tensor { rs, verma, weyl, simple, pull_verma } => {
            let rs = parse_rs(&rs.rs, cap)?;
            tensor(&rs, verma, weyl, simple, pull_verma, as_json)
        }
        Cmd::Reduce { rs, input } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let text = read_input(input)?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("invalid character JSON: {e}")))?;
            let chi = cjson::rational_char_from_json(&rs, &value)?;
            Ok(render_char(&chi.reduce(), as_json))
        }
        Cmd::Expand { rs, source, depth } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let chi = source.build(&rs)?;
            let window = expand(&chi, *depth);
            if as_json {
                Ok(pretty(&cjson::series_window_to_json(&window)))
            } else {
                let mut lines: Vec<String> = Vec::new();
                for (w, c) in window.iter() {
                    lines.push(format!("{w}: {c}"));
                }
                Ok(format!("depth {depth}\n{}", lines.join("\n")))
            }
        }
        Cmd::Check { rs, source } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let chi = source.build(&rs)?;
            let reduced = chi.reduce();
            let o_necessary = satisfies_o_necessary(&reduced);
            let finite = is_finite_dim_char(&reduced);
            // Dimension only when defined: finite dimensional with
            // non-negative coefficients.
            let dimension = if finite { char_dimension(&reduced).ok() } else { None };
            if as_json {
                let mut m = serde_json::Map::new();
                m.insert("o_necessary".into(), Value::Bool(o_necessary));
                m.insert("finite_dim".into(), Value::Bool(finite));
                if let Some(d) = &dimension {
                    m.insert(
                        "dimension".into(),
                        serde_json::from_str(&d.to_string()).unwrap(),
                    );
                }
                m.insert(
                    "denominator_roots".into(),
                    Value::Array(
                        reduced
                            .denominator_roots()
                            .iter()
                            .map(|(coords, n)| json!({ "beta": coords, "n": n }))
                            .collect(),
                    ),
                );
                Ok(pretty(&Value::Object(m)))
            } else {
                let mut out = format!(
                    "o_necessary: {o_necessary}\nfinite_dim: {finite}"
                );
                if let Some(d) = dimension {
                    out.push_str(&format!("\ndimension: {d}"));
                }
                Ok(out)
            }
        }
        Cmd::Decompose { rs, source } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let chi = source.build(&rs)?;
            let dec = verma_decomposition(&chi)?;
            if as_json {
                Ok(pretty(&cjson::verma_decomposition_to_json(&dec)))
            } else {
                Ok(dec.to_string())
            }
        }
        Cmd::Linkage { rs, a, b } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let wa = rs.parse_weight(a)?;
            let wb = rs.parse_weight(b)?;
            let linked = rs.are_linked(&wa, &wb)?;
            let leq_ab = rs.leq(&wa, &wb);
            let leq_ba = rs.leq(&wb, &wa);
            if as_json {
                Ok(pretty(&json!({
                    "linked": linked,
                    "leq_ab": leq_ab,
                    "leq_ba": leq_ba,
                })))
            } else {
                Ok(format!(
                    "linked: {linked}\n{a} <= {b}: {leq_ab}\n{b} <= {a}: {leq_ba}"
                ))
            }
        }
        Cmd::Sweep { rs, weight } => {
            let rs = parse_rs(&rs.rs, cap)?;
            let weights: Result<Vec<Weight>, Error> =
                weight.iter().map(|w| rs.parse_weight(w)).collect();
            let report = run_sweep(&rs, &weights?)?;
            if as_json {
                Ok(pretty(&cjson::sweep_report_to_json(&rs, &report)))
            } else {
                let mut lines = Vec::new();
                for e in &report.entries {
                    let verdict = if e.obstructed {
                        let names: Vec<String> = e
                            .witnesses
                            .iter()
                            .map(|w| root_name(&rs, w))
                            .collect();
                        format!("obstructed: {} squared", names.join(", "))
                    } else {
                        "no obstruction found".to_string()
                    };
                    let dim = match &e.dimension {
                        Some(d) => format!("finite dimensional (dim {d})"),
                        None => "infinite dimensional".to_string(),
                    };
                    lines.push(format!("{}: {dim}; {verdict}", e.weight));
                }
                lines.push(format!("violations: {}", report.violations()));
                Ok(lines.join("\n"))
            }
        }
        Cmd::Oracle { rs, partition, weyl_dim, freudenthal, lam, mu } => {
            let rs = parse_rs(&rs.rs, cap)?;
            oracle(&rs, partition, weyl_dim, *freudenthal, lam, mu, as_json)
        }
    }
}

#[cfg(feature = "parallel")]
fn run_sweep(
    rs: &Arc<RootSystem>,
    weights: &[Weight],
) -> Result<charcalc::category_o::SweepReport, Error> {
    charcalc::category_o::par_theorem_sweep(rs, weights)
}

#[cfg(not(feature = "parallel"))]
fn run_sweep(
    rs: &Arc<RootSystem>,
    weights: &[Weight],
) -> Result<charcalc::category_o::SweepReport, Error> {
    charcalc::category_o::theorem_sweep(rs, weights)
}

#[cfg(feature = "parallel")]
fn expand(chi: &RationalChar, depth: u32) -> charcalc::char_ring::SeriesWindow {
    chi.par_series_expand(depth)
}

#[cfg(not(feature = "parallel"))]
fn expand(chi: &RationalChar, depth: u32) -> charcalc::char_ring::SeriesWindow {
    chi.series_expand(depth)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON rendering cannot fail")
}

fn render_char(chi: &RationalChar, as_json: bool) -> String {
    if as_json {
        pretty(&cjson::rational_char_to_json(chi))
    } else {
        chi.to_string()
    }
}

fn root_name(rs: &RootSystem, coords: &[i64]) -> String {
    match rs.find_posroot(coords) {
        Some(idx) => rs.posroots()[idx].name(),
        None => format!("{coords:?}"),
    }
}

fn rootsys(rs: &Arc<RootSystem>, as_json: bool) -> Result<String, Error> {
    let weyl_order = rs.weyl_elements(rs.enum_cap()).map(|els| els.len());
    if as_json {
        let mut m = serde_json::Map::new();
        m.insert("label".into(), Value::String(rs.label().to_string()));
        m.insert("rank".into(), json!(rs.rank()));
        m.insert("cartan".into(), json!(rs.cartan()));
        m.insert(
            "d".into(),
            Value::Array(
                rs.symmetrizer()
                    .iter()
                    .map(|d| Value::String(d.to_string()))
                    .collect(),
            ),
        );
        m.insert(
            "posroots".into(),
            Value::Array(
                rs.posroots()
                    .iter()
                    .map(|r| json!(r.coords()))
                    .collect(),
            ),
        );
        m.insert("rho".into(), Value::String(rs.rho().to_string()));
        match weyl_order {
            Ok(n) => {
                m.insert("weyl_order".into(), json!(n));
            }
            Err(_) => {
                m.insert("weyl_order".into(), Value::Null);
            }
        }
        Ok(pretty(&Value::Object(m)))
    } else {
        let mut out = format!("{}\n", rs);
        out.push_str("cartan:\n");
        for row in rs.cartan() {
            out.push_str(&format!("  {row:?}\n"));
        }
        let ds: Vec<String> = rs.symmetrizer().iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("d: [{}]\n", ds.join(", ")));
        out.push_str("positive roots:\n");
        for r in rs.posroots() {
            out.push_str(&format!("  {}\n", r.name()));
        }
        out.push_str(&format!("rho: {}\n", rs.rho()));
        match weyl_order {
            Ok(n) => out.push_str(&format!("weyl order: {n}")),
            Err(e) => out.push_str(&format!("weyl order: not enumerated ({e})")),
        }
        Ok(out)
    }
}

fn pulled_back_verma(rs: &Arc<RootSystem>, spec: &str) -> Result<RationalChar, Error> {
    let (block_str, weight_str) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("--pull-verma wants BLOCK:WEIGHT, got '{spec}'")))?;
    let block_no: usize = block_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid block index '{block_str}'")))?;
    if block_no == 0 || block_no > rs.blocks().len() {
        return Err(Error::Parse(format!(
            "block index {block_no} out of range (system has {} blocks)",
            rs.blocks().len()
        )));
    }
    let block = &rs.blocks()[block_no - 1];
    let coords = Weight::parse(block.len(), weight_str)?;
    let mut real = vec![charcalc::rat::rat(0); rs.rank()];
    let mut torsion = vec![charcalc::rat::rat(0); rs.rank()];
    for (k, &i) in block.iter().enumerate() {
        real[i] = coords.real()[k].clone();
        torsion[i] = coords.torsion()[k].clone();
    }
    let lam = Weight::with_torsion(real, torsion);
    // Denominator: the positive roots supported inside this block.
    let denom: Vec<(Vec<i64>, u32)> = rs
        .posroots()
        .iter()
        .filter(|r| {
            r.coords()
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || block.contains(&i))
        })
        .map(|r| (r.coords().to_vec(), 1))
        .collect();
    RationalChar::new(rs, vec![(lam, LaurentPoly::one(rs.rank()))], denom)
}

fn tensor(
    rs: &Arc<RootSystem>,
    verma: &[String],
    weyl: &[String],
    simple: &[String],
    pull_verma: &[String],
    as_json: bool,
) -> Result<String, Error> {
    let mut factors: Vec<RationalChar> = Vec::new();
    for w in verma {
        factors.push(verma_character(rs, &rs.parse_weight(w)?));
    }
    for w in weyl {
        factors.push(weyl_character(rs, &rs.parse_weight(w)?)?);
    }
    for w in simple {
        factors.push(simple_character(rs, &rs.parse_weight(w)?)?);
    }
    for spec in pull_verma {
        factors.push(pulled_back_verma(rs, spec)?);
    }
    if factors.len() < 2 {
        return Err(Error::Parse(
            "tensor needs at least two factors (--verma/--weyl/--simple/--pull-verma)".into(),
        ));
    }
    // Fold all but the last factor, then run the pairwise obstruction test.
    let mut acc = factors[0].clone();
    for f in &factors[1..factors.len() - 1] {
        acc = acc.mul(f)?;
    }
    let last = &factors[factors.len() - 1];
    let verdict = tensor_obstruction(&acc, last)?;
    let product = acc.mul(last)?;

    if as_json {
        let (obstructed, witnesses) = match &verdict {
            TensorVerdict::Obstructed { witnesses } => (true, witnesses.clone()),
            TensorVerdict::Unobstructed => (false, Vec::new()),
        };
        Ok(pretty(&json!({
            "obstructed": obstructed,
            "witnesses": witnesses,
            "product": cjson::rational_char_to_json(&product),
        })))
    } else {
        match &verdict {
            TensorVerdict::Obstructed { witnesses } => {
                let names: Vec<String> = witnesses.iter().map(|w| root_name(rs, w)).collect();
                Ok(format!("obstructed: {} squared", names.join(", ")))
            }
            TensorVerdict::Unobstructed => {
                let mut msg = "unobstructed; no obstruction found".to_string();
                if let Some(lam) = verma_shape(rs, &product) {
                    msg.push_str(&format!("; equals Verma character of {lam}"));
                }
                Ok(msg)
            }
        }
    }
}

/// Recognize `e^lambda / prod_{beta > 0}(1 - e^{-beta})`.
fn verma_shape(rs: &RootSystem, chi: &RationalChar) -> Option<Weight> {
    if chi.terms().len() != 1 || !chi.terms()[0].1.is_one() {
        return None;
    }
    let full: Vec<(Vec<i64>, u32)> = rs
        .posroots()
        .iter()
        .map(|r| (r.coords().to_vec(), 1))
        .collect();
    if chi.denom() == full {
        Some(chi.terms()[0].0.clone())
    } else {
        None
    }
}

fn oracle(
    rs: &Arc<RootSystem>,
    partition: &Option<String>,
    weyl_dim: &Option<String>,
    freudenthal: bool,
    lam: &Option<String>,
    mu: &Option<String>,
    as_json: bool,
) -> Result<String, Error> {
    let chosen =
        partition.is_some() as u8 + weyl_dim.is_some() as u8 + freudenthal as u8;
    if chosen != 1 {
        return Err(Error::Parse(
            "pick exactly one oracle: --partition, --weyl-dim, or --freudenthal".into(),
        ));
    }
    if let Some(gamma_str) = partition {
        let parts: Vec<&str> = gamma_str.split(',').collect();
        if parts.len() != rs.rank() {
            return Err(Error::Parse(format!(
                "gamma needs {} comma-separated integers",
                rs.rank()
            )));
        }
        let mut gamma = Vec::new();
        for p in parts {
            let v: i64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid integer '{p}'")))?;
            if v < 0 {
                return Err(Error::Parse("gamma must be component-wise non-negative".into()));
            }
            gamma.push(v);
        }
        let count = kostant_partition_count(rs, &gamma);
        return Ok(if as_json {
            pretty(&json!({ "oracle": "partition", "gamma": gamma, "count": jint(&count) }))
        } else {
            format!("partition count: {count}")
        });
    }
    if let Some(w) = weyl_dim {
        let lam = rs.parse_weight(w)?;
        let dim = weyl_dimension(rs, &lam)?;
        return Ok(if as_json {
            pretty(&json!({ "oracle": "weyl_dim", "lam": lam.to_string(), "dimension": jint(&dim) }))
        } else {
            format!("dimension: {dim}")
        });
    }
    let (Some(lam_str), Some(mu_str)) = (lam, mu) else {
        return Err(Error::Parse("--freudenthal needs --lam and --mu".into()));
    };
    let lam = rs.parse_weight(lam_str)?;
    let mu = rs.parse_weight(mu_str)?;
    let mult = freudenthal_multiplicity(rs, &lam, &mu)?;
    Ok(if as_json {
        pretty(&json!({
            "oracle": "freudenthal",
            "lam": lam.to_string(),
            "mu": mu.to_string(),
            "multiplicity": jint(&mult),
        }))
    } else {
        format!("multiplicity: {mult}")
    })
}

fn jint(c: &num_bigint::BigInt) -> Value {
    serde_json::from_str(&c.to_string()).expect("integer literal is valid JSON")
}
