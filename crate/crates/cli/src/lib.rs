//! The `hypineq` command line: argument grammar, profile parsing and report
//! emission. Every number printed comes straight from a library call.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use hypineq::functionals::{self, CknParams, Denominator, InequalityReport};
use hypineq::geometry::{alpha_beta, sharp_constant_b};
use hypineq::profile::{moser_profile, test_family, MOSER_DEFAULT_MESH};
use hypineq::report::{format_number, json_number, Table};
use hypineq::sharp::{self, Objective, OptimizerConfig};
use hypineq::special::{critical_map, CriticalDirection};
use hypineq::{Error, ModelParams, ProfileSpec, RadialProfile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Relative `--out` paths are resolved against this directory when it is set.
pub const OUT_DIR_ENV: &str = "HYPINEQ_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "hypineq", version, about = "Sharp Hardy, Trudinger–Moser and CKN inequalities on hyperbolic space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plotdata,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 32)]
    knots: usize,
    #[arg(long, default_value_t = 5.0)]
    support: f64,
    #[arg(long, default_value_t = 8)]
    starts: usize,
    #[arg(long, default_value_t = 3000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-10)]
    simplex_tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30.0)]
    grading_span: f64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            knot_count: self.knots,
            support_radius: self.support,
            multistarts: self.starts,
            max_iters: self.max_iters,
            simplex_tol: self.simplex_tol,
            seed: self.seed,
            grading_span: self.grading_span,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sphere area, α_β and the asymptotic Hardy constant B.
    Constants {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        /// Also map a Hardy constant C to its critical exponent 1/(n' e C^{n'}).
        #[arg(long)]
        c: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate one inequality on one profile.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Moser sequence table: normalization, decay and Trudinger–Moser ratio.
    Moser {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        beta1: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta2: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// α as a multiple of α_{β₁}.
        #[arg(long, conflicts_with = "alpha")]
        alpha_frac: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        j: Vec<f64>,
        #[arg(long, default_value_t = MOSER_DEFAULT_MESH)]
        mesh: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximize one ratio over profiles.
    Optimize {
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[arg(long)]
        q: f64,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        /// Also write the witness in the radial-profile text format.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimize over an ascending q grid and compare with B.
    Sweep {
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Hardy,
    Gn,
    Gn3,
}

#[derive(Args, Debug, Clone, Copy)]
struct ObjectiveArgs {
    #[arg(long, value_enum, default_value_t = Family::Hardy)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Weight of the Hardy and gn3 objectives.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    beta1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta2: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Hardy objective with the full W^{1,n} norm in the denominator.
    #[arg(long)]
    sobolev: bool,
}

impl ObjectiveArgs {
    fn objective(&self, q: f64) -> Objective {
        match self.family {
            Family::Hardy => Objective::Hardy {
                q,
                beta: self.beta,
                denominator: if self.sobolev { Denominator::FullSobolev } else { Denominator::GradientOnly },
            },
            Family::Gn => Objective::Gn { q, beta1: self.beta1, beta2: self.beta2, delta: self.delta },
            Family::Gn3 => Objective::Gn3 { q, beta: self.beta },
        }
    }
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// ‖f/ρ^{β/q}‖_q against q^{1-1/n}‖∇f‖_n.
    Hardy {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        sobolev: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-weight (or, with --denominated, denominated) Trudinger–Moser ratio.
    Tm {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "alpha")]
        alpha_frac: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        beta1: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta2: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long)]
        denominated: bool,
        #[arg(long)]
        profile: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Explicit CKN inequality with Ĉ₃ built from C₂.
    Ckn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p2: f64,
        #[arg(long)]
        p3: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        profile: String,
        /// Empirical Hardy constant; estimated by the optimizer when omitted.
        #[arg(long)]
        c2: Option<f64>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-weight interpolation ratio, in q or (with --t) in the t variable.
    Gn {
        #[arg(long)]
        n: usize,
        #[arg(long, required_unless_present = "t", conflicts_with = "t")]
        q: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        beta1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta2: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long)]
        profile: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Denominated interpolation ratio.
    Gn3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long)]
        profile: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Uncertainty principle with constant C₂.
    Uncertainty {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        c2: Option<f64>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_NUMERICAL };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_VALIDATION, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// What a command produced, before formatting.
enum Output {
    Report { report: InequalityReport, extra: Vec<(String, String)> },
    Pairs(Vec<(String, f64)>),
    Table { table: Table, json: Value, xy: (&'static str, &'static str) },
}

fn execute(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Constants { n, beta, c, output } => {
            let p = ModelParams::new(n)?;
            let mut pairs = vec![
                ("n".to_string(), n as f64),
                ("beta".to_string(), beta),
                ("omega".to_string(), p.omega()),
                ("n_prime".to_string(), p.n_prime()),
                ("alpha_beta".to_string(), alpha_beta(&p, beta)?),
                ("B".to_string(), sharp_constant_b(&p, beta)?),
            ];
            if let Some(c) = c {
                pairs.push(("C".to_string(), c));
                pairs.push(("alpha_star".to_string(), critical_map(c, n, CriticalDirection::ConstantToAlpha)?));
            }
            emit(&Output::Pairs(pairs), &output, stdout)
        }
        Command::Verify { which } => verify(which, stdout),
        Command::Moser { n, beta1, beta2, delta, alpha_frac, alpha, j, mesh, output } => {
            let p = ModelParams::new(n)?;
            let alpha = resolve_alpha(&p, beta1, alpha, alpha_frac)?;
            let d = sharp::moser_blowup_diagnostic(&j, alpha, beta1, beta2.unwrap_or(beta1), delta, &p, mesh)?;
            let table = d.to_table();
            let json = table.to_json();
            emit(&Output::Table { table, json, xy: ("j", "tm_ratio") }, &output, stdout)
        }
        Command::Optimize { objective, q, optimizer, witness_out, output } => {
            let p = ModelParams::new(objective.n)?;
            let obj = objective.objective(q);
            let est = sharp::estimate_sup_ratio(&obj, &optimizer.config(), &p)?;
            if let Some(path) = witness_out {
                write_file(&resolve_out(&path), &est.witness.to_text(objective.n))?;
            }
            let mut table = Table::new(&["rho", "value"])
                .meta("family", obj.family().as_str())
                .meta("q", format_number(q))
                .meta("constant", format_number(est.constant))
                .meta("profile_id", est.profile_id.clone())
                .meta("iterations", est.iterations.to_string());
            for (k, v) in est.witness.knots().iter().zip(est.witness.values()) {
                table.push(vec![*k, *v]);
            }
            let mut json = Map::new();
            json.insert("family".into(), Value::String(obj.family().as_str().into()));
            json.insert("params".into(), objective_params(&obj, objective.n));
            json.insert("constant".into(), json_number(est.constant));
            json.insert("profile_id".into(), Value::String(est.profile_id.clone()));
            json.insert("iterations".into(), Value::from(est.iterations));
            json.insert("witness".into(), table.to_json()["rows"].clone());
            emit(&Output::Table { table, json: Value::Object(json), xy: ("rho", "value") }, &output, stdout)
        }
        Command::Sweep { objective, q, optimizer, output } => {
            let p = ModelParams::new(objective.n)?;
            let obj = objective.objective(q.first().copied().unwrap_or(f64::NAN));
            let s = sharp::constant_sweep(&q, &obj, &optimizer.config(), &p)?;
            let table = s.to_table();
            let json = s.to_json();
            emit(&Output::Table { table, json, xy: ("q", "estimate") }, &output, stdout)
        }
    }
}

fn objective_params(obj: &Objective, n: usize) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), Value::from(n));
    match *obj {
        Objective::Hardy { q, beta, denominator } => {
            m.insert("q".into(), json_number(q));
            m.insert("beta".into(), json_number(beta));
            m.insert("denominator".into(), Value::String(denominator.as_str().into()));
        }
        Objective::Gn { q, beta1, beta2, delta } => {
            m.insert("q".into(), json_number(q));
            m.insert("beta1".into(), json_number(beta1));
            m.insert("beta2".into(), json_number(beta2));
            m.insert("delta".into(), json_number(delta));
        }
        Objective::Gn3 { q, beta } => {
            m.insert("q".into(), json_number(q));
            m.insert("beta".into(), json_number(beta));
        }
    }
    Value::Object(m)
}

fn resolve_alpha(p: &ModelParams, beta1: f64, alpha: Option<f64>, frac: Option<f64>) -> CliResult<f64> {
    match (alpha, frac) {
        (Some(a), _) => Ok(a),
        (None, Some(f)) => Ok(f * alpha_beta(p, beta1)?),
        (None, None) => Err(invalid("one of --alpha or --alpha-frac is required")),
    }
}

/// Hardy constant for the composition steps: `--c2` as given, or the
/// optimizer's estimate of the Hardy ratio supremum at `(q, β)`.
fn hardy_constant(
    c2: Option<f64>,
    q: f64,
    beta: f64,
    p: &ModelParams,
    optimizer: &OptimizerArgs,
) -> CliResult<(f64, Vec<(String, String)>)> {
    match c2 {
        Some(c) => Ok((c, vec![("c2_source".into(), "argument".into())])),
        None => {
            let obj = Objective::Hardy { q, beta, denominator: Denominator::GradientOnly };
            let est = sharp::estimate_sup_ratio(&obj, &optimizer.config(), p)?;
            Ok((
                est.constant,
                vec![
                    ("c2_source".into(), "optimize".into()),
                    ("c2_profile_id".into(), est.profile_id),
                ],
            ))
        }
    }
}

fn verify(which: Verify, stdout: &mut dyn Write) -> CliResult<()> {
    let (report, output, extra) = match which {
        Verify::Hardy { n, beta, q, profile, sobolev, output } => {
            let p = ModelParams::new(n)?;
            let f = parse_profile(&profile, &p, beta)?;
            let den = if sobolev { Denominator::FullSobolev } else { Denominator::GradientOnly };
            (functionals::hardy_ratio(&f, q, beta, &p, den)?, output, vec![])
        }
        Verify::Tm { n, alpha_frac, alpha, beta1, beta2, delta, denominated, profile, output } => {
            let p = ModelParams::new(n)?;
            let a = resolve_alpha(&p, beta1, alpha, alpha_frac)?;
            let f = parse_profile(&profile, &p, beta1)?;
            let r = if denominated {
                functionals::tm_denominated_ratio(&f, a, beta1, &p)?
            } else {
                functionals::tm_weighted_ratio(&f, a, beta1, beta2.unwrap_or(beta1), delta, &p)?
            };
            (r, output, vec![])
        }
        Verify::Ckn { n, p2, p3, b, c, delta, profile, c2, optimizer, output } => {
            let p = ModelParams::new(n)?;
            let ck = CknParams::new(p2, p3, b, c, delta, n)?;
            let f = parse_profile(&profile, &p, 0.0)?;
            let (c2, extra) = hardy_constant(c2, ck.hardy_exponent(), ck.hardy_beta(), &p, &optimizer)?;
            (functionals::ckn_explicit(&f, &ck, c2, &p)?, output, extra)
        }
        Verify::Gn { n, q, t, beta1, beta2, delta, profile, output } => {
            let p = ModelParams::new(n)?;
            let f = parse_profile(&profile, &p, beta1)?;
            let r = match (q, t) {
                (_, Some(t)) => functionals::gn_t_form(&f, t, beta1, beta2, delta, &p)?,
                (Some(q), None) => functionals::gn_ratio(&f, q, beta1, beta2, delta, &p)?,
                (None, None) => return Err(invalid("one of --q or --t is required")),
            };
            (r, output, vec![])
        }
        Verify::Gn3 { n, q, beta, profile, output } => {
            let p = ModelParams::new(n)?;
            let f = parse_profile(&profile, &p, beta)?;
            (functionals::gn3_ratio(&f, q, beta, &p)?, output, vec![])
        }
        Verify::Uncertainty { n, q, beta, profile, c2, optimizer, output } => {
            let p = ModelParams::new(n)?;
            let f = parse_profile(&profile, &p, beta)?;
            let (c2, extra) = hardy_constant(c2, q, beta, &p, &optimizer)?;
            (functionals::uncertainty_check(&f, q, beta, c2, &p)?, output, extra)
        }
    };
    emit(&Output::Report { report, extra }, &output, stdout)
}

/// `tent:R`, `plateau:r:R`, `random:seed:m:R`, `moser:j`, or a profile file.
///
/// Moser profiles use the weight `beta` of the command and the default mesh.
pub fn parse_profile(spec: &str, params: &ModelParams, beta: f64) -> std::result::Result<RadialProfile, String> {
    parse_profile_inner(spec, params, beta).map_err(|f| f.message)
}

fn parse_profile_inner(spec: &str, params: &ModelParams, beta: f64) -> CliResult<RadialProfile> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> CliResult<f64> {
        s.parse::<f64>().map_err(|_| invalid(format!("profile '{spec}': '{s}' is not a number")))
    };
    let int = |s: &str| -> CliResult<u64> {
        s.parse::<u64>().map_err(|_| invalid(format!("profile '{spec}': '{s}' is not an integer")))
    };
    let family = match (parts[0], parts.len()) {
        ("tent", 2) => Some(ProfileSpec::Tent { radius: num(parts[1])? }),
        ("plateau", 3) => Some(ProfileSpec::Plateau { inner: num(parts[1])?, radius: num(parts[2])? }),
        ("random", 4) => Some(ProfileSpec::Random {
            seed: int(parts[1])?,
            segments: int(parts[2])? as usize,
            radius: num(parts[3])?,
        }),
        ("moser", 2) => {
            let (f, _) = moser_profile(num(parts[1])?, beta, params, MOSER_DEFAULT_MESH)?;
            return Ok(f);
        }
        ("tent" | "plateau" | "random" | "moser", _) => {
            return Err(invalid(format!("profile '{spec}' has the wrong number of fields")))
        }
        _ => None,
    };
    if let Some(family) = family {
        return Ok(test_family(family)?);
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| invalid(format!("profile '{spec}' is neither an inline family nor a readable file: {e}")))?;
    let (f, n) = RadialProfile::from_text(&text)?;
    if n != params.n() {
        return Err(invalid(format!("profile file {spec} is for n = {n}, but --n is {}", params.n())));
    }
    Ok(f)
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        invalid(message)
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot create {}: {e}", parent.display()),
        })?;
    }
    fs::write(path, content).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn report_json(report: &InequalityReport, extra: &[(String, String)]) -> Value {
    let mut v = report.to_json();
    if let Value::Object(m) = &mut v {
        for (k, s) in extra {
            m.insert(k.clone(), Value::String(s.clone()));
        }
    }
    v
}

/// `name value` pairs of a report, in emission order.
fn report_fields(report: &InequalityReport) -> Vec<(String, f64)> {
    let mut v = vec![
        ("lhs".to_string(), report.lhs),
        ("rhs".to_string(), report.rhs),
        ("ratio".to_string(), report.ratio),
        ("quad_error".to_string(), report.quad_error),
    ];
    v.extend(report.params.iter().map(|(k, x)| (format!("params.{k}"), *x)));
    v.extend(report.details.iter().map(|(k, x)| (format!("details.{k}"), *x)));
    v
}

fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Report { report, extra }, Format::Json) => pretty(&report_json(report, extra)),
        (Output::Report { report, extra }, Format::Csv) => {
            let mut rows = vec![
                vec!["kind".to_string(), report.kind.clone()],
                vec!["bound".to_string(), report.bound.as_str().to_string()],
                vec!["degenerate".to_string(), report.degenerate.to_string()],
            ];
            rows.extend(extra.iter().map(|(k, v)| vec![k.clone(), v.clone()]));
            rows.extend(report_fields(report).into_iter().map(|(k, x)| vec![k, format_number(x)]));
            csv_text(&["field".into(), "value".into()], &rows)
        }
        (Output::Report { report, .. }, Format::Plotdata) => plot_pairs(&report_fields(report)),
        (Output::Pairs(p), Format::Json) => {
            let m: Map<String, Value> = p.iter().map(|(k, x)| (k.clone(), json_number(*x))).collect();
            pretty(&Value::Object(m))
        }
        (Output::Pairs(p), Format::Csv) => {
            let rows: Vec<Vec<String>> = p.iter().map(|(k, x)| vec![k.clone(), format_number(*x)]).collect();
            csv_text(&["name".into(), "value".into()], &rows)
        }
        (Output::Pairs(p), Format::Plotdata) => plot_pairs(p),
        (Output::Table { json, .. }, Format::Json) => pretty(json),
        (Output::Table { table, .. }, Format::Csv) => {
            let rows: Vec<Vec<String>> =
                table.rows.iter().map(|r| r.iter().map(|x| format_number(*x)).collect()).collect();
            csv_text(&table.columns, &rows)
        }
        (Output::Table { table, xy, .. }, Format::Plotdata) => table.to_plotdata(Some(*xy)),
    }
}

fn plot_pairs(p: &[(String, f64)]) -> String {
    p.iter().map(|(k, x)| format!("{k} {}\n", format_number(*x))).collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(out: &Output, args: &OutputArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let text = render(out, args.format);
    match &args.out {
        Some(path) => write_file(&resolve_out(path), &text),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write to stdout: {e}"),
        }),
    }
}
