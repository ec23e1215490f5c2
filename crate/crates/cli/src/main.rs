use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qelliptic::angle::{big_u_cf, theta_angle, theta_angle_deriv, u0_cf, DerivMode};
use qelliptic::elliptic::{alpha, singular_modulus, EllipticContext};
use qelliptic::harness::{registry, run_suite, select, RunConfig};
use qelliptic::jacobi::{self, FourierKind};
use qelliptic::qseries::{lambert_sum, qpochhammer, ArithmeticFunctionSpec};
use qelliptic::series::take_term_count;
use qelliptic::theta::{agile, general_theta, rogers_ramanujan, Sign};
use qelliptic::{with_jobs, Error, Nome, SeriesValue, TruncationPolicy, C64};

const ENV_MAX_TERMS: &str = "QELLIPTIC_MAX_TERMS";

#[derive(Parser)]
#[command(name = "qelliptic", version, about = "Evaluate q-series and elliptic identities and verify them numerically")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run registry cases and report residuals
    Verify {
        /// Case id or glob
        #[arg(long)]
        id: Option<String>,
        /// Run every case (same as --id '*')
        #[arg(long)]
        all: bool,
        /// Record wall time per sample
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// Evaluate one function
    Eval {
        function: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Tabulate one function over a sweep
    Table {
        function: String,
        /// NAME=V1,V2,... or NAME=LO:HI:N
        #[arg(long)]
        sweep: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// List registry cases
    List {
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u: Option<f64>,
    /// Imaginary part of u (eval only)
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_terms: Option<usize>,
    /// Worker threads; 0 uses the default pool
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

impl Opts {
    fn overrides(&self) -> BTreeMap<String, f64> {
        let named = [
            ("q", self.q),
            ("r", self.r),
            ("u", self.u),
            ("v", self.v),
            ("a", self.a),
            ("b", self.b),
            ("p", self.p),
            ("x", self.x),
            ("y", self.y),
        ];
        named.into_iter().filter_map(|(n, v)| v.map(|v| (n.to_string(), v))).collect()
    }

    fn policy(&self) -> Result<TruncationPolicy, Error> {
        let mut pol = TruncationPolicy::default();
        if let Ok(s) = std::env::var(ENV_MAX_TERMS) {
            let n: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{ENV_MAX_TERMS} must be a positive integer, got `{s}`")))?;
            pol = pol.with_max_terms(n);
        }
        if let Some(n) = self.max_terms {
            pol = pol.with_max_terms(n);
        }
        if pol.max_terms == 0 {
            return Err(Error::Config("max terms must be positive".into()));
        }
        Ok(pol)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify { id, all, timing, opts } => {
            let pattern = match (all, id) {
                (true, Some(_)) => return Err(Error::Config("use either --all or --id, not both".into())),
                (_, Some(p)) => p,
                _ => "*".into(),
            };
            let policy = opts.policy()?;
            with_jobs(opts.jobs, || verify(&pattern, timing, &opts, policy))?
        }
        Command::Eval { function, opts } => {
            let policy = opts.policy()?;
            let out = with_jobs(opts.jobs, || evaluate(&function, &opts, &policy))??;
            print_eval(&function, &out, opts.format);
            Ok(0)
        }
        Command::Table { function, sweep, opts } => {
            let policy = opts.policy()?;
            with_jobs(opts.jobs, || table(&function, sweep.as_deref(), &opts, &policy))??;
            Ok(0)
        }
        Command::List { id, opts } => list(id.as_deref().unwrap_or("*"), opts.format),
    }
}

fn verify(pattern: &str, timing: bool, opts: &Opts, policy: TruncationPolicy) -> Result<u8, Error> {
    if let Some(t) = opts.tol {
        if !(t > 0.0) {
            return Err(Error::Config(format!("--tol must be positive, got {t}")));
        }
    }
    let cases = select(registry(), pattern)?;
    let overrides = opts.overrides();
    let cfg = RunConfig { overrides: overrides.clone(), tolerance: opts.tol, policy, timing, ..RunConfig::default() };
    let rep = run_suite(&cases, &cfg)?;
    if !overrides.is_empty() {
        if let Some(r) = rep.records.iter().find(|r| r.precondition) {
            return Err(Error::Config(format!(
                "{}: precondition violated at {:?}: {}",
                r.id,
                r.params,
                r.error.as_deref().unwrap_or("")
            )));
        }
    }
    match opts.format {
        Format::Text => print!("{}", rep.to_text()),
        Format::Json => println!("{}", rep.to_json()),
        Format::Csv => print!("{}", rep.to_csv()),
    }
    let s = &rep.summary;
    if opts.format != Format::Text {
        eprintln!("ACTIVE {}/{} passed, {} quarantined", s.active_passed, s.active_records, s.quarantined.len());
    }
    Ok(if s.gate_passed() { 0 } else { 1 })
}

struct EvalOut {
    params: Vec<(&'static str, f64)>,
    value: C64,
    terms_used: usize,
    est_tail: Option<f64>,
}

fn need(v: Option<f64>, name: &str, f: &str) -> Result<f64, Error> {
    v.ok_or_else(|| Error::Config(format!("{f} needs --{name}")))
}

fn context(o: &Opts, f: &str) -> Result<(EllipticContext, (&'static str, f64)), Error> {
    let pol = TruncationPolicy::default();
    match (o.q, o.r) {
        (Some(q), None) => Ok((EllipticContext::new(Nome::from_real(q)?, &pol)?, ("q", q))),
        (None, Some(r)) => Ok((EllipticContext::from_r(r, &pol)?, ("r", r))),
        _ => Err(Error::Config(format!("{f} needs exactly one of --q and --r"))),
    }
}

const FUNCTIONS: &[&str] = &[
    "sn", "cn", "cn1", "sd", "cc", "cd", "dd", "cd1", "ss", "dn", "nd", "modulus", "big-k", "kr", "alpha",
    "theta-angle", "theta-angle-deriv", "ghost-sum", "rr", "rr-g", "rr-h", "u0", "big-u", "qpoch", "theta3",
    "theta4", "agile-minus", "agile-plus",
];

fn series_out(params: Vec<(&'static str, f64)>, s: SeriesValue) -> EvalOut {
    EvalOut { params, value: s.value, terms_used: 0, est_tail: Some(s.est_tail) }
}

fn evaluate(f: &str, o: &Opts, pol: &TruncationPolicy) -> Result<EvalOut, Error> {
    take_term_count();
    let mut out = evaluate_inner(f, o, pol)?;
    out.terms_used = take_term_count();
    Ok(out)
}

fn evaluate_inner(f: &str, o: &Opts, pol: &TruncationPolicy) -> Result<EvalOut, Error> {
    let plain = |params, value| EvalOut { params, value, terms_used: 0, est_tail: None };
    if let Some(kind) = FourierKind::parse(f) {
        let (ctx, nq) = context(o, f)?;
        let u = need(o.u, "u", f)?;
        let v = o.v.unwrap_or(0.0);
        let s = jacobi::fourier(kind, &ctx, C64::new(u, v), pol)?;
        let mut params = vec![nq, ("u", u)];
        if v != 0.0 {
            params.push(("v", v));
        }
        return Ok(series_out(params, s));
    }
    match f {
        "dn" | "nd" => {
            let (ctx, nq) = context(o, f)?;
            let u = need(o.u, "u", f)?;
            let w = C64::new(u, o.v.unwrap_or(0.0));
            let val = if f == "dn" { jacobi::dn(&ctx, w, pol)? } else { jacobi::nd(&ctx, w, pol)? };
            Ok(plain(vec![nq, ("u", u)], val))
        }
        "modulus" => {
            let (ctx, nq) = context(o, f)?;
            Ok(plain(vec![nq], ctx.k))
        }
        "big-k" => {
            let (ctx, nq) = context(o, f)?;
            Ok(plain(vec![nq], ctx.big_k))
        }
        "kr" => {
            let r = need(o.r, "r", f)?;
            Ok(plain(vec![("r", r)], C64::new(singular_modulus(r, pol)?, 0.0)))
        }
        "alpha" => {
            let r = need(o.r, "r", f)?;
            Ok(plain(vec![("r", r)], C64::new(alpha(r, pol)?, 0.0)))
        }
        "theta-angle" => {
            let (q, x) = (need(o.q, "q", f)?, need(o.x, "x", f)?);
            Ok(series_out(vec![("q", q), ("x", x)], theta_angle(&Nome::from_real(q)?, x, pol)?))
        }
        "theta-angle-deriv" => {
            let (q, a) = (need(o.q, "q", f)?, need(o.a, "a", f)?);
            let d = theta_angle_deriv(&Nome::from_real(q)?, a, DerivMode::Series, pol)?;
            Ok(plain(vec![("q", q), ("a", a)], d))
        }
        "ghost-sum" => {
            let x = need(o.x, "x", f)?;
            if !(x > 0.0) {
                return Err(Error::domain(format!("ghost-sum needs x > 0, got {x}")));
            }
            let s = lambert_sum(&ArithmeticFunctionSpec::Constant, &Nome::from_real((-x).exp())?, pol)?;
            Ok(series_out(vec![("x", x)], s))
        }
        "rr" | "rr-g" | "rr-h" => {
            let q = need(o.q, "q", f)?;
            let rr = rogers_ramanujan(&Nome::from_real(q)?, pol)?;
            let val = match f {
                "rr" => rr.r,
                "rr-g" => rr.g,
                _ => rr.h,
            };
            Ok(plain(vec![("q", q)], val))
        }
        "u0" => {
            let (a, q) = (need(o.a, "a", f)?, need(o.q, "q", f)?);
            let cf = u0_cf(C64::new(a, 0.0), &Nome::from_real(q)?, pol)?;
            Ok(plain(vec![("a", a), ("q", q)], cf.value))
        }
        "big-u" => {
            let (a, b, q) = (need(o.a, "a", f)?, need(o.b, "b", f)?, need(o.q, "q", f)?);
            let cf = big_u_cf(C64::new(a, 0.0), C64::new(b, 0.0), &Nome::from_real(q)?, pol)?;
            Ok(plain(vec![("a", a), ("b", b), ("q", q)], cf.value))
        }
        "qpoch" => {
            let (a, q) = (need(o.a, "a", f)?, need(o.q, "q", f)?);
            Ok(series_out(vec![("a", a), ("q", q)], qpochhammer(C64::new(a, 0.0), &Nome::from_real(q)?, pol)?))
        }
        "theta3" | "theta4" => {
            let (a, b, q) = (need(o.a, "a", f)?, need(o.b, "b", f)?, need(o.q, "q", f)?);
            let sign = if f == "theta3" { Sign::Plus } else { Sign::Minus };
            Ok(series_out(vec![("a", a), ("b", b), ("q", q)], general_theta(sign, a, b, &Nome::from_real(q)?, pol)?))
        }
        "agile-minus" | "agile-plus" => {
            let (a, p, q) = (need(o.a, "a", f)?, need(o.p, "p", f)?, need(o.q, "q", f)?);
            let sign = if f == "agile-minus" { Sign::Minus } else { Sign::Plus };
            Ok(series_out(vec![("a", a), ("p", p), ("q", q)], agile(a, p, sign, &Nome::from_real(q)?, pol)?))
        }
        _ => Err(Error::Config(format!("unknown function `{f}`; known: {}", FUNCTIONS.join(", ")))),
    }
}

fn fmt_params(p: &[(&str, f64)]) -> String {
    p.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ")
}

fn cplx(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn params_json(p: &[(&str, f64)]) -> Value {
    Value::Object(p.iter().map(|(n, v)| (n.to_string(), json!(v))).collect())
}

fn print_eval(f: &str, out: &EvalOut, format: Format) {
    match format {
        Format::Text => {
            println!("{f}({}) = {} {:+}i", fmt_params(&out.params), out.value.re, out.value.im);
            println!("terms_used = {}", out.terms_used);
            match out.est_tail {
                Some(t) => println!("est_tail = {t:e}"),
                None => println!("est_tail = -"),
            }
        }
        Format::Json => {
            let v = json!({
                "function": f,
                "params": params_json(&out.params),
                "value": cplx(out.value),
                "terms_used": out.terms_used,
                "est_tail": out.est_tail,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            let mut head: Vec<String> = vec!["function".into()];
            head.extend(out.params.iter().map(|(n, _)| n.to_string()));
            head.extend(["value_re", "value_im", "terms_used", "est_tail"].map(String::from));
            let mut row = vec![f.to_string()];
            row.extend(out.params.iter().map(|(_, v)| v.to_string()));
            row.push(out.value.re.to_string());
            row.push(out.value.im.to_string());
            row.push(out.terms_used.to_string());
            row.push(out.est_tail.map(|t| format!("{t:e}")).unwrap_or_default());
            let _ = w.write_record(&head);
            let _ = w.write_record(&row);
            let _ = w.flush();
        }
    }
}

fn default_sweep(f: &str) -> Option<(&'static str, Vec<f64>)> {
    match f {
        "ghost-sum" => Some(("x", vec![PI, 2.0 * PI, 3.0 * PI])),
        "kr" => Some(("r", vec![1.0, 2.0, 3.0, 4.0])),
        "rr" => Some(("q", vec![0.05, 0.1, 0.15])),
        _ => None,
    }
}

fn parse_sweep(spec: &str) -> Result<(String, Vec<f64>), Error> {
    let bad = || Error::Config(format!("malformed --sweep `{spec}`; expected NAME=V1,V2,... or NAME=LO:HI:N"));
    let (name, body) = spec.split_once('=').ok_or_else(bad)?;
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let values = if body.contains(':') {
        let parts: Vec<&str> = body.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if n < 2 || !(lo < hi) {
            return Err(Error::Config(format!("sweep range needs LO < HI and N >= 2, got `{body}`")));
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    } else {
        body.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok((name.trim().to_string(), values))
}

fn set_param(o: &mut Opts, name: &str, v: f64) -> Result<(), Error> {
    let slot = match name {
        "q" => &mut o.q,
        "r" => &mut o.r,
        "u" => &mut o.u,
        "v" => &mut o.v,
        "a" => &mut o.a,
        "b" => &mut o.b,
        "p" => &mut o.p,
        "x" => &mut o.x,
        "y" => &mut o.y,
        _ => return Err(Error::Config(format!("cannot sweep unknown parameter `{name}`"))),
    };
    *slot = Some(v);
    Ok(())
}

fn table(f: &str, sweep: Option<&str>, o: &Opts, pol: &TruncationPolicy) -> Result<(), Error> {
    let (name, values) = match sweep {
        Some(s) => parse_sweep(s)?,
        None => {
            let (n, v) = default_sweep(f).ok_or_else(|| Error::Config(format!("table {f} needs --sweep")))?;
            (n.to_string(), v)
        }
    };
    let mut points = Vec::new();
    for &v in &values {
        let mut p = o.clone();
        set_param(&mut p, &name, v)?;
        points.push(p);
    }
    let rows = qelliptic::par_map(&points, |p| evaluate(f, p, pol));
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    match o.format {
        Format::Text => {
            println!("{:<32} {:>24} {:>24} {:>10}", "params", "value_re", "value_im", "terms_used");
            for r in &rows {
                println!("{:<32} {:>24} {:>24} {:>10}", fmt_params(&r.params), r.value.re, r.value.im, r.terms_used);
            }
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "params": params_json(&r.params), "value": cplx(r.value), "terms_used": r.terms_used }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&arr).expect("json"));
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            if let Some(first) = rows.first() {
                let mut head: Vec<String> = first.params.iter().map(|(n, _)| n.to_string()).collect();
                head.extend(["value_re", "value_im", "terms_used"].map(String::from));
                let _ = w.write_record(&head);
            }
            for r in &rows {
                let mut row: Vec<String> = r.params.iter().map(|(_, v)| v.to_string()).collect();
                row.extend([r.value.re.to_string(), r.value.im.to_string(), r.terms_used.to_string()]);
                let _ = w.write_record(&row);
            }
            let _ = w.flush();
        }
    }
    Ok(())
}

fn list(pattern: &str, format: Format) -> Result<u8, Error> {
    let cases = select(registry(), pattern)?;
    match format {
        Format::Text => {
            for c in &cases {
                println!("{:<16} {:<11} [{}] {}", c.id, c.status.to_string(), c.labels.join(","), c.description);
            }
        }
        Format::Json => {
            let arr: Vec<Value> = cases
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "status": c.status,
                        "section": c.section,
                        "labels": c.labels,
                        "params": c.domain.iter().map(|d| d.name).collect::<Vec<_>>(),
                        "samples": c.samples.len(),
                        "mode": c.mode,
                        "tolerance": c.tolerance,
                        "description": c.description,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&arr).expect("json"));
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            let _ = w.write_record(["id", "status", "section", "labels", "samples", "tolerance", "description"]);
            for c in &cases {
                let _ = w.write_record([
                    c.id.to_string(),
                    c.status.to_string(),
                    c.section.to_string(),
                    c.labels.join(";"),
                    c.samples.len().to_string(),
                    format!("{:e}", c.tolerance),
                    c.description.to_string(),
                ]);
            }
            let _ = w.flush();
        }
    }
    Ok(0)
}
