//! Job specification, dispatch and report assembly for the `frobcheck` binary.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use frobcheck::fcriteria::{
    self, Certificate, ExpansionConfig, FedderOptions, GlassbrennerOptions, Verdict, DEFAULT_TERM_CAP,
};
use frobcheck::ideal::is_regular_sequence;
use frobcheck::linkage::{self, LinkPresentation};
use frobcheck::text::{format_ideal_text, parse_ideal_text, parse_polynomial};
use frobcheck::{GroebnerConfig, Ideal, Polynomial, Ring};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEGREE_CAP_ENV: &str = "FROBCHECK_DEGREE_CAP";
pub const TERM_CAP_ENV: &str = "FROBCHECK_TERM_CAP";

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;

/// One invocation of the tool.
#[derive(Debug, Clone, Parser)]
#[command(name = "frobcheck", version, about = "Groebner bases, colon ideals and Frobenius-splitting certificates over F_p")]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
    /// Abort Groebner computations above this basis degree.
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    /// Abort explicit expansions above this many terms.
    #[arg(long, global = true)]
    pub term_cap: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderName {
    Lex,
    Grevlex,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Reduced Groebner basis of an ideal file.
    Gb {
        input: PathBuf,
        /// Order to use instead of the file's header order.
        #[arg(long, value_enum)]
        order: Option<OrderName>,
    },
    /// Colon ideal I : J of two ideal files over the same ring.
    Colon { left: PathBuf, right: PathBuf },
    /// Intersection of two ideal files over the same ring.
    Intersect { left: PathBuf, right: PathBuf },
    /// Bracket power I^[q].
    Bracket {
        input: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Height and dimension of an ideal file.
    Height { input: PathBuf },
    /// Maximal minors of a generic t×n matrix.
    DetIdeal {
        #[command(flatten)]
        shape: Shape,
        /// Minor size (defaults to t).
        #[arg(long)]
        size: Option<usize>,
        /// Also write the ideal in the file format.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generic link of an ideal file, or of I_t(X) with --det.
    Genlink {
        input: Option<PathBuf>,
        #[arg(long)]
        det: bool,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Compare the colon a : I with a + I_n(U) (full variable ideals only).
        #[arg(long)]
        check_remark52: bool,
        /// Compute J = a : I.
        #[arg(long)]
        compute_j: bool,
    },
    /// Generic s-residual intersection of an ideal file, or of (x_1..x_n) with --maximal.
    Resint {
        input: Option<PathBuf>,
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        check_remark52: bool,
        #[arg(long)]
        compute_j: bool,
    },
    /// Fedder's criterion at exponent e for an ideal file.
    Fedder {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Treat the generators as a complete intersection (decisive test).
        #[arg(long)]
        ci: bool,
    },
    /// Glassbrenner's condition (2) for an ideal file and an element s.
    Glassbrenner {
        input: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Explicit expansion checks of the initial-monomial lemmas.
    VerifyLemma {
        #[command(subcommand)]
        lemma: Lemma,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Shape {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Lemma {
    /// x_{1,n}([1,t]…[n-t+1,n])^{p-1} ∉ m^[p].
    Det(Shape),
    /// x_1(Δ_1…Δ_{s-n+1})^{p-1}∏(U x)_i^{p-1} ∉ n^[p].
    Residual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// x_{1,n}(a_1…a_{n-t+1})^{p-1} ∉ m^[p] for the generic link of I_t(X).
    Genlink(Shape),
}

/// A failure with its diagnostic code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl From<frobcheck::Error> for CliError {
    fn from(e: frobcheck::Error) -> Self {
        CliError { code: e.code(), message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: "E_USAGE", message: msg.into() }
}

/// The finished report and the process exit code it implies.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Caps after applying flags over environment overrides over defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub degree_cap: u32,
    pub term_cap: usize,
}

fn env_value<T: std::str::FromStr>(name: &str) -> Result<Option<T>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{name} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

pub fn resolve_caps(job: &JobSpec) -> Result<Caps, CliError> {
    let degree_cap = match job.degree_cap {
        Some(c) => c,
        None => env_value(DEGREE_CAP_ENV)?.unwrap_or(GroebnerConfig::default().degree_cap),
    };
    let term_cap = match job.term_cap {
        Some(c) => c,
        None => env_value(TERM_CAP_ENV)?.unwrap_or(DEFAULT_TERM_CAP),
    };
    Ok(Caps { degree_cap, term_cap })
}

fn read_ideal(path: &PathBuf, caps: &Caps) -> Result<Ideal, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError {
        code: "E_IO",
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let file = parse_ideal_text(&src)?;
    Ok(file.ideal.with_config(GroebnerConfig { degree_cap: caps.degree_cap }))
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if !frobcheck::field::is_prime(p) || p >= 1 << 32 {
        return Err(usage(format!("p = {p} is not a prime below 2^32")));
    }
    Ok(())
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|g| g.to_string()).collect()
}

fn ring_json(ring: &Ring) -> Value {
    json!({
        "p": ring.characteristic(),
        "nvars": ring.nvars(),
        "vars": ring.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "order": ring.default_order().name(),
    })
}

/// Canonical generator list: the reduced basis under the ring's order.
fn canonical(ideal: &Ideal) -> Result<Vec<String>, CliError> {
    Ok(strings(ideal.gb()?.generators()))
}

fn certificate_json(cert: &Certificate) -> Value {
    serde_json::to_value(cert.report()).expect("report serializes")
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Established | Verdict::WitnessFound => EXIT_OK,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::Refuted => EXIT_REFUTED,
    }
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

struct Body {
    command: &'static str,
    inputs: Value,
    status: String,
    result: Value,
    exit_code: i32,
}

impl Body {
    fn computed(command: &'static str, inputs: Value, result: Value) -> Body {
        Body { command, inputs, status: "result-computed".into(), result, exit_code: EXIT_OK }
    }

    fn certificate(command: &'static str, inputs: Value, cert: &Certificate) -> Body {
        Body {
            command,
            inputs,
            status: verdict_name(cert.verdict),
            result: json!({ "certificate": certificate_json(cert), "revalidated": cert.revalidate() }),
            exit_code: verdict_exit(cert.verdict),
        }
    }

    fn check(command: &'static str, inputs: Value, result: Value, ok: bool) -> Body {
        Body {
            command,
            inputs,
            status: if ok { "result-computed".into() } else { "check-failed".into() },
            result,
            exit_code: if ok { EXIT_OK } else { EXIT_REFUTED },
        }
    }
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn link_json(link: &LinkPresentation, compute_j: bool, check: bool) -> Result<(Value, bool), CliError> {
    let u = link.matrix();
    let mut out = Map::new();
    out.insert("base_ring".into(), ring_json(link.base_ring()));
    out.insert("ring".into(), ring_json(link.ring()));
    out.insert("u_shape".into(), json!([u.rows(), u.cols()]));
    out.insert("a".into(), json!(strings(link.a_generators())));
    out.insert("a_regular_sequence".into(), json!(link.a_is_regular_sequence()?));
    out.insert("full_variable_ideal".into(), json!(link.is_full_variable_ideal()));
    out.insert("assertions".into(), json!(link.assertions()));
    let mut ok = true;
    if check {
        let eq = link.check_closed_form()?;
        ok &= eq;
        out.insert("closed_form_equal".into(), json!(eq));
    }
    if compute_j || check {
        let j = link.j()?;
        out.insert("j".into(), json!(canonical(j)?));
        out.insert("j_height".into(), json!(j.height()?));
    }
    Ok((Value::Object(out), ok))
}

fn dispatch(job: &JobSpec, caps: &Caps) -> Result<Body, CliError> {
    let gcfg = GroebnerConfig { degree_cap: caps.degree_cap };
    let ecfg = ExpansionConfig { term_cap: caps.term_cap };
    match &job.command {
        Command::Gb { input, order } => {
            let i = read_ideal(input, caps)?;
            let ring = i.ring().clone();
            let ord = match order {
                Some(OrderName::Lex) => frobcheck::MonomialOrder::lex_natural(ring.nvars()),
                Some(OrderName::Grevlex) => frobcheck::MonomialOrder::grevlex_natural(ring.nvars()),
                None => ring.default_order().clone(),
            };
            let gb = i.groebner(&ord)?;
            let inputs = json!({ "input": path_str(input), "order": ord.name() });
            Ok(Body::computed(
                "gb",
                inputs,
                json!({ "ring": ring_json(&ring), "groebner_basis": strings(gb.generators()), "unit": gb.is_unit() }),
            ))
        }
        Command::Colon { left, right } | Command::Intersect { left, right } => {
            let a = read_ideal(left, caps)?;
            let b = read_ideal(right, caps)?;
            let (name, r) = match &job.command {
                Command::Colon { .. } => ("colon", a.colon(&b)?),
                _ => ("intersect", a.intersect(&b)?),
            };
            let inputs = json!({ "left": path_str(left), "right": path_str(right) });
            Ok(Body::computed(name, inputs, json!({ "ring": ring_json(a.ring()), "generators": canonical(&r)? })))
        }
        Command::Bracket { input, q } => {
            let i = read_ideal(input, caps)?;
            let b = i.bracket_power(*q)?;
            let inputs = json!({ "input": path_str(input), "q": q });
            Ok(Body::computed(
                "bracket",
                inputs,
                json!({ "ring": ring_json(i.ring()), "generators": strings(b.generators()) }),
            ))
        }
        Command::Height { input } => {
            let i = read_ideal(input, caps)?;
            let dim = i.dimension()?;
            let inputs = json!({ "input": path_str(input) });
            let height = i.height()?;
            Ok(Body::computed("height", inputs, json!({ "height": height, "dimension": dim, "nvars": i.ring().nvars() })))
        }
        Command::DetIdeal { shape, size, emit } => {
            check_shape(shape)?;
            let (x, _) = fcriteria::maximal_minor_ideal(shape.t, shape.n, shape.p)?;
            let k = size.unwrap_or(shape.t);
            let i = x.det_ideal(k)?.with_config(gcfg);
            let text = format_ideal_text(&i);
            if let Some(path) = emit {
                std::fs::write(path, &text).map_err(|e| CliError { code: "E_IO", message: e.to_string() })?;
            }
            let inputs = json!({ "t": shape.t, "n": shape.n, "p": shape.p, "size": k });
            let mut result = json!({ "ring": ring_json(i.ring()), "generators": strings(i.generators()), "ideal_text": text });
            if k == shape.t {
                let stairs = x.staircase_minors();
                result["staircase"] = json!(strings(&stairs));
                result["staircase_regular"] = json!(is_regular_sequence(&stairs)?);
                result["height"] = json!(i.height()?);
            }
            Ok(Body::computed("det-ideal", inputs, result))
        }
        Command::Genlink { input, det, t, n, p, check_remark52, compute_j } => {
            let (i, inputs) = if *det {
                let (t, n) = (t.ok_or_else(|| usage("--det needs --t"))?, n.ok_or_else(|| usage("--det needs --n"))?);
                check_shape(&Shape { t, n, p: *p })?;
                let (_, i) = fcriteria::maximal_minor_ideal(t, n, *p)?;
                (i.with_config(gcfg), json!({ "det": true, "t": t, "n": n, "p": p }))
            } else {
                let path = input.as_ref().ok_or_else(|| usage("genlink needs an input file or --det"))?;
                (read_ideal(path, caps)?, json!({ "input": path_str(path) }))
            };
            let link = linkage::generic_link(&i)?;
            let (result, ok) = link_json(&link, *compute_j, *check_remark52)?;
            Ok(Body::check("genlink", inputs, result, ok))
        }
        Command::Resint { input, maximal, n, s, p, check_remark52, compute_j } => {
            let (link, inputs) = if *maximal {
                let n = n.ok_or_else(|| usage("--maximal needs --n"))?;
                check_prime(*p)?;
                (linkage::maximal_presentation(n, *s, *p)?, json!({ "maximal": true, "n": n, "s": s, "p": p }))
            } else {
                let path = input.as_ref().ok_or_else(|| usage("resint needs an input file or --maximal"))?;
                let i = read_ideal(path, caps)?;
                (linkage::generic_residual_intersection(&i, *s)?, json!({ "input": path_str(path), "s": s }))
            };
            let (result, ok) = link_json(&link, *compute_j, *check_remark52)?;
            Ok(Body::check("resint", inputs, result, ok))
        }
        Command::Fedder { input, e, ci } => {
            let i = read_ideal(input, caps)?;
            let inputs = json!({ "input": path_str(input), "e": e, "ci": ci });
            let cert = if *ci {
                if *e != 1 {
                    return Err(usage("the complete-intersection test runs at e = 1"));
                }
                fcriteria::fedder_ci_fast(i.generators(), i.ring().characteristic() as u64)?
            } else {
                let m = Ideal::maximal(i.ring());
                fcriteria::fedder_fpure_with(&i, &m, *e, &FedderOptions::default())?
            };
            Ok(Body::certificate("fedder", inputs, &cert))
        }
        Command::Glassbrenner { input, s, e } => {
            let i = read_ideal(input, caps)?;
            let sp = parse_polynomial(i.ring(), s)?;
            let m = Ideal::maximal(i.ring());
            let cert = fcriteria::glassbrenner_witness_with(&i, &sp, &m, *e, &GlassbrennerOptions::default())?;
            let inputs = json!({ "input": path_str(input), "s": sp.to_string(), "e": e });
            Ok(Body::certificate("glassbrenner", inputs, &cert))
        }
        Command::VerifyLemma { lemma } => {
            let (inputs, cert) = match lemma {
                Lemma::Det(sh) => {
                    check_shape(sh)?;
                    (json!({ "lemma": "det", "t": sh.t, "n": sh.n, "p": sh.p }), fcriteria::lemma_check_det(sh.t, sh.n, sh.p, &ecfg)?)
                }
                Lemma::Residual { n, s, p } => {
                    check_prime(*p)?;
                    (json!({ "lemma": "residual", "n": n, "s": s, "p": p }), fcriteria::lemma_check_residual(*n, *s, *p, &ecfg)?)
                }
                Lemma::Genlink(sh) => {
                    check_shape(sh)?;
                    (json!({ "lemma": "genlink", "t": sh.t, "n": sh.n, "p": sh.p }), fcriteria::lemma_check_genlink(sh.t, sh.n, sh.p, &ecfg)?)
                }
            };
            Ok(Body::certificate("verify-lemma", inputs, &cert))
        }
    }
}

fn check_shape(sh: &Shape) -> Result<(), CliError> {
    check_prime(sh.p)?;
    if sh.t == 0 || sh.n < sh.t {
        return Err(usage(format!("need n ≥ t ≥ 1, got t = {}, n = {}", sh.t, sh.n)));
    }
    Ok(())
}

/// Runs a job. Identical jobs give identical reports apart from `timing`.
pub fn run(job: &JobSpec) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let caps = resolve_caps(job)?;
    let body = dispatch(job, &caps)?;
    let report = json!({
        "tool": "frobcheck",
        "version": VERSION,
        "command": body.command,
        "inputs": body.inputs,
        "caps": { "degree_cap": caps.degree_cap, "term_cap": caps.term_cap },
        "status": body.status,
        "result": body.result,
        "timing": { "wall_ms": start.elapsed().as_secs_f64() * 1000.0 },
    });
    Ok(Outcome { report, exit_code: body.exit_code })
}

/// The report with timing fields removed, for comparisons.
pub fn without_timing(report: &Value) -> Value {
    let mut r = report.clone();
    if let Value::Object(map) = &mut r {
        map.remove("timing");
    }
    r
}
