//! Command-line front end.
//!
//! Exit status: 0 on success, 2 on usage errors, 1 when an internal
//! invariant fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blockform::component_block_forms;
use crate::euler::{component_euler_factors, render_factors};
use crate::flagint::{FlagIntegrator, Lambda};
use crate::mirror::Localizer;
use crate::partitions::{
    all_components, distinguished_components, hilbert_poly, quot_dim, FixedComponent, PartitionSeq,
};
use crate::symalg::{AlphaSeries, Style};
use crate::weights::{cardinality_check, full_weight_system, wt1, wt1_via_generating_function, zero_multiplicity_check};
use crate::{Error, Result};

/// Environment variable holding the worker count for `--parallel`.
pub const THREADS_ENV: &str = "QUOTLOC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "quotloc", version, about = "Fixed components, weights and localization integrals on Quot schemes of P^1 -> Gr_r(C^n)")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// List fixed components of degree d
    Components(CommonArgs),
    /// Tangent weight systems Wt1, Wt2, Wt3
    Weights(CommonArgs),
    /// Weight block forms of distinguished components
    Blockform(CommonArgs),
    /// Euler-class factors of the normal bundle
    Euler(CommonArgs),
    /// Localization integral of each distinguished component
    Integral(CommonArgs),
    /// Sum of the component integrals of degree d
    Total(CommonArgs),
    /// Degree totals for d = 0..=d
    Series(CommonArgs),
    /// Self-checks: zero multiplicity, cardinality, generating function, duality
    Check(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<u64>,
    /// Comma-separated non-negative integers
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated non-negative integers; defaults to zeros
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    /// Evaluate components on a thread pool (size from QUOTLOC_THREADS)
    #[arg(long)]
    parallel: bool,
    /// Integration tuple override, comma-separated distinct integers
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Only components with beta = 0 (components command)
    #[arg(long)]
    distinguished: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Components,
    Weights,
    Blockform,
    Euler,
    Integral,
    Total,
    Series,
    Check,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: usize,
    pub r: Option<usize>,
    pub d: Option<u64>,
    pub alpha: Option<PartitionSeq>,
    pub beta: Option<PartitionSeq>,
    pub format: OutputFormat,
    pub parallel: bool,
    pub lambda: Option<Vec<i64>>,
    pub distinguished: bool,
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::usage(format!("--{flag}: cannot parse {t:?} in {s:?}")))
        })
        .collect()
}

fn parse_seq(flag: &str, s: &str, warnings: &mut Vec<String>) -> Result<PartitionSeq> {
    let (seq, reordered) = PartitionSeq::from_unsorted(parse_list(flag, s)?);
    if reordered {
        warnings.push(format!("warning: --{flag} reordered to ascending {seq}"));
    }
    Ok(seq)
}

impl RunConfig {
    fn from_cli(cli: Cli, warnings: &mut Vec<String>) -> Result<Self> {
        let (command, a) = match cli.command {
            CliCommand::Components(a) => (CommandKind::Components, a),
            CliCommand::Weights(a) => (CommandKind::Weights, a),
            CliCommand::Blockform(a) => (CommandKind::Blockform, a),
            CliCommand::Euler(a) => (CommandKind::Euler, a),
            CliCommand::Integral(a) => (CommandKind::Integral, a),
            CliCommand::Total(a) => (CommandKind::Total, a),
            CliCommand::Series(a) => (CommandKind::Series, a),
            CliCommand::Check(a) => (CommandKind::Check, a),
        };
        let alpha = a.alpha.as_deref().map(|s| parse_seq("alpha", s, warnings)).transpose()?;
        let beta = a.beta.as_deref().map(|s| parse_seq("beta", s, warnings)).transpose()?;
        let lambda = a.lambda.as_deref().map(|s| parse_list("lambda", s)).transpose()?;
        let config = RunConfig {
            command,
            n: a.n,
            r: a.r,
            d: a.d,
            alpha,
            beta,
            format: a.format,
            parallel: a.parallel,
            lambda,
            distinguished: a.distinguished,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.beta.is_some() && self.alpha.is_none() {
            return Err(Error::usage("--beta requires --alpha"));
        }
        if let Some(alpha) = &self.alpha {
            let r = alpha.len();
            if self.r.is_some_and(|given| given != r) {
                return Err(Error::usage(format!(
                    "--r {} is inconsistent with --alpha of length {r}",
                    self.r.unwrap()
                )));
            }
            if let Some(beta) = &self.beta {
                if beta.len() != r {
                    return Err(Error::usage(format!(
                        "--beta has length {} but --alpha has length {r}",
                        beta.len()
                    )));
                }
            }
            let degree = alpha.sum() + self.beta.as_ref().map_or(0, PartitionSeq::sum);
            if self.d.is_some_and(|given| given != degree) {
                return Err(Error::usage(format!(
                    "--d {} is inconsistent with the sequences, which sum to {degree}",
                    self.d.unwrap()
                )));
            }
        }
        if let Some(l) = &self.lambda {
            Lambda::explicit(l.clone())?;
        }
        Ok(())
    }

    fn r(&self) -> Result<usize> {
        self.r
            .or_else(|| self.alpha.as_ref().map(PartitionSeq::len))
            .ok_or_else(|| Error::usage("--r (or --alpha) is required"))
    }

    fn d(&self) -> Result<u64> {
        self.d
            .or_else(|| {
                self.alpha
                    .as_ref()
                    .map(|a| a.sum() + self.beta.as_ref().map_or(0, PartitionSeq::sum))
            })
            .ok_or_else(|| Error::usage("--d (or --alpha) is required"))
    }

    /// The explicit component, or every component of degree `d`.
    fn targets(&self, distinguished_only: bool) -> Result<(Vec<FixedComponent>, bool)> {
        if let Some(alpha) = &self.alpha {
            let beta = self.beta.clone().unwrap_or_else(|| PartitionSeq::zeros(alpha.len()));
            return Ok((vec![FixedComponent::new(alpha.clone(), beta, self.n)?], true));
        }
        let (r, d) = (self.r()?, self.d()?);
        let comps = if distinguished_only {
            distinguished_components(self.n, r, d)?
        } else {
            all_components(self.n, r, d)?
        };
        Ok((comps, false))
    }

    fn localizer(&self) -> Result<Localizer> {
        let lambda = match &self.lambda {
            Some(l) => Lambda::explicit(l.clone())?,
            None => Lambda::Primary,
        };
        Ok(Localizer::new(FlagIntegrator::new(lambda)).parallel(self.parallel))
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut warnings = Vec::new();
    let result = RunConfig::from_cli(cli, &mut warnings).and_then(|config| {
        for w in &warnings {
            let _ = writeln!(err, "{w}");
        }
        execute_with_pool(&config, out)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "quotloc: {e}");
            e.exit_code()
        }
    }
}

fn execute_with_pool(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    if !config.parallel {
        return execute(config, out);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::usage(format!("{THREADS_ENV}={v:?} is not a thread count")))?;
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invariant(format!("cannot start thread pool: {e}")))?;
    let mut buf = Vec::new();
    let result = pool.install(|| execute(config, &mut buf));
    out.write_all(&buf).map_err(io_err)?;
    result
}

fn io_err(e: std::io::Error) -> Error {
    Error::invariant(format!("write failed: {e}"))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("serializable")).map_err(io_err)
}

fn latex_label(c: &FixedComponent) -> String {
    format!("F_{{{};{}}}", c.alpha(), c.beta())
}

fn series_text(s: &AlphaSeries, format: OutputFormat) -> String {
    match format {
        OutputFormat::Latex => s.to_latex(),
        _ => s.to_plain(),
    }
}

/// Runs a validated configuration, writing to `out`.
pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let fmt = config.format;
    match config.command {
        CommandKind::Components => {
            let (comps, _) = config.targets(config.distinguished)?;
            match fmt {
                OutputFormat::Json => {
                    let v: Vec<_> = comps.iter().map(FixedComponent::record).collect();
                    emit_json(out, &serde_json::to_value(v).expect("serializable"))?;
                }
                OutputFormat::Plain => {
                    let (r, d) = (config.r()?, config.d()?);
                    let (slope, constant) = hilbert_poly(config.n, r, d)?;
                    writeln!(
                        out,
                        "Quot P(t)={slope}t+{constant}, n={} r={r} d={d}, dim={}, {} components",
                        config.n,
                        quot_dim(config.n, r, d)?,
                        comps.len()
                    )
                    .map_err(io_err)?;
                    for c in &comps {
                        let blocks: Vec<String> = c.flag_blocks().iter().map(usize::to_string).collect();
                        writeln!(out, "{} dim={} flag=({})", c.label(), c.dimension(), blocks.join(",")).map_err(io_err)?;
                    }
                }
                OutputFormat::Latex => {
                    for c in &comps {
                        writeln!(out, "{},\\ \\dim={}", latex_label(c), c.dimension()).map_err(io_err)?;
                    }
                }
            }
        }
        CommandKind::Weights => {
            let (comps, single) = config.targets(false)?;
            if fmt == OutputFormat::Json {
                let systems: Vec<Value> = comps
                    .iter()
                    .map(|c| {
                        let ws = serde_json::to_value(full_weight_system(c)).expect("serializable");
                        if single {
                            ws
                        } else {
                            let mut obj = json!({"alpha": c.alpha().parts(), "beta": c.beta().parts()});
                            obj.as_object_mut().unwrap().extend(ws.as_object().unwrap().clone());
                            obj
                        }
                    })
                    .collect();
                let v = if single { systems[0].clone() } else { Value::Array(systems) };
                return emit_json(out, &v);
            }
            for c in &comps {
                let ws = full_weight_system(c);
                let show = |m: &crate::weights::WeightMultiset| match fmt {
                    OutputFormat::Latex => m.to_latex(),
                    _ => m.to_plain(),
                };
                let label = if fmt == OutputFormat::Latex { latex_label(c) } else { c.label() };
                writeln!(out, "{label}").map_err(io_err)?;
                writeln!(out, "  wt1: {}", show(&ws.wt1)).map_err(io_err)?;
                writeln!(out, "  wt2: {}", show(&ws.wt2)).map_err(io_err)?;
                writeln!(out, "  wt3: {}", show(&ws.wt3)).map_err(io_err)?;
                writeln!(
                    out,
                    "  zero multiplicity {} / dim {}",
                    ws.total().multiplicity(0),
                    c.dimension()
                )
                .map_err(io_err)?;
            }
        }
        CommandKind::Blockform => {
            let (comps, single) = config.targets(true)?;
            let sets = comps.iter().map(component_block_forms).collect::<Result<Vec<_>>>()?;
            match fmt {
                OutputFormat::Json => {
                    let v: Vec<Value> = sets
                        .iter()
                        .map(|s| serde_json::to_value(s.forms()).expect("serializable"))
                        .collect();
                    let v = if single {
                        v[0].clone()
                    } else {
                        Value::Array(
                            comps
                                .iter()
                                .zip(v)
                                .map(|(c, f)| json!({"alpha": c.alpha().parts(), "forms": f}))
                                .collect(),
                        )
                    };
                    emit_json(out, &v)?;
                }
                OutputFormat::Plain => {
                    for (c, s) in comps.iter().zip(&sets) {
                        writeln!(out, "{}\n{}", c.label(), s.render_ascii()).map_err(io_err)?;
                    }
                }
                OutputFormat::Latex => {
                    for (c, s) in comps.iter().zip(&sets) {
                        writeln!(out, "{}", latex_label(c)).map_err(io_err)?;
                        for f in s.forms() {
                            let cells: Vec<String> = f.cells.iter().map(|(i, j)| format!("({i},{j})")).collect();
                            writeln!(out, "\\Delta_{{{}}} = \\{{{}\\}}", f.w, cells.join(",")).map_err(io_err)?;
                        }
                    }
                }
            }
        }
        CommandKind::Euler => {
            let (comps, single) = config.targets(true)?;
            let lists = comps.iter().map(component_euler_factors).collect::<Result<Vec<_>>>()?;
            if fmt == OutputFormat::Json {
                let v: Vec<Value> = lists.iter().map(|l| serde_json::to_value(l).expect("serializable")).collect();
                let v = if single {
                    v[0].clone()
                } else {
                    Value::Array(
                        comps
                            .iter()
                            .zip(v)
                            .map(|(c, f)| json!({"alpha": c.alpha().parts(), "factors": f}))
                            .collect(),
                    )
                };
                return emit_json(out, &v);
            }
            let style = if fmt == OutputFormat::Latex { Style::Latex } else { Style::Plain };
            for (c, l) in comps.iter().zip(&lists) {
                let text = render_factors(l, style);
                if single {
                    writeln!(out, "{text}").map_err(io_err)?;
                } else {
                    let label = if style == Style::Latex { latex_label(c) } else { c.label() };
                    writeln!(out, "{label}: {text}").map_err(io_err)?;
                }
            }
        }
        CommandKind::Integral => {
            let (comps, single) = config.targets(true)?;
            if let Some(c) = comps.iter().find(|c| !c.is_distinguished()) {
                return Err(Error::usage(format!(
                    "integrals need a distinguished component (beta = 0), got {}",
                    c.label()
                )));
            }
            let loc = config.localizer()?;
            let values = if single {
                vec![loc.component_integral(comps[0].alpha(), config.n, comps[0].r())?]
            } else {
                loc.component_integrals(config.n, config.r()?, config.d()?)?
            };
            if fmt == OutputFormat::Json {
                let v: Vec<Value> = values.iter().map(|ci| ci.to_json()).collect();
                let v = if single { v[0].clone() } else { Value::Array(v) };
                return emit_json(out, &v);
            }
            for ci in &values {
                let text = series_text(&ci.value, fmt);
                if single {
                    writeln!(out, "{text}").map_err(io_err)?;
                } else {
                    let label = if fmt == OutputFormat::Latex {
                        latex_label(&ci.component)
                    } else {
                        ci.component.label()
                    };
                    writeln!(out, "{label}: {text}").map_err(io_err)?;
                }
            }
        }
        CommandKind::Total => {
            let (r, d) = (config.r()?, config.d()?);
            let total = config.localizer()?.degree_total(config.n, r, d)?;
            if fmt == OutputFormat::Json {
                return emit_json(out, &json!({"n": config.n, "r": r, "d": d, "total": total.to_json()}));
            }
            writeln!(out, "{}", series_text(&total, fmt)).map_err(io_err)?;
        }
        CommandKind::Series => {
            let (r, d) = (config.r()?, config.d()?);
            let table = config.localizer()?.euler_series_table(config.n, r, d)?;
            if fmt == OutputFormat::Json {
                let v: Vec<Value> = table
                    .iter()
                    .map(|(d, s)| json!({"d": d, "total": s.to_json()}))
                    .collect();
                return emit_json(out, &Value::Array(v));
            }
            for (d, s) in &table {
                writeln!(out, "d={d}: {}", series_text(s, fmt)).map_err(io_err)?;
            }
        }
        CommandKind::Check => check(config, out)?,
    }
    Ok(())
}

fn check(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let n = config.n;
    let d_max = config.d()?;
    let ranks: Vec<usize> = match config.r {
        Some(r) => vec![r],
        None => (1..n).collect(),
    };
    let mut failures = Vec::new();
    let mut components = 0usize;
    for &r in &ranks {
        for d in 0..=d_max {
            for c in all_components(n, r, d)? {
                components += 1;
                if !zero_multiplicity_check(&c) {
                    failures.push(format!("zero multiplicity != dim for {} (n={n})", c.label()));
                }
                if !cardinality_check(&c) {
                    failures.push(format!("weight count != dn+(n-r)r for {} (n={n})", c.label()));
                }
                if c.is_distinguished() && wt1_via_generating_function(c.alpha()) != wt1(c.alpha()).nonzero_part() {
                    failures.push(format!("generating function disagrees with intervals for {}", c.label()));
                }
            }
        }
    }
    let loc = config.localizer()?;
    let mut dualities = 0usize;
    for &r in ranks.iter().filter(|&&r| r >= 1 && r < n && r <= n - r) {
        for d in 0..=d_max {
            dualities += 1;
            if !loc.duality_check(n, r, d)? {
                failures.push(format!("Gr_{r}(C^{n}) and Gr_{}(C^{n}) totals differ at d={d}", n - r));
            }
        }
    }
    if failures.is_empty() {
        writeln!(
            out,
            "ok: {components} components passed zero-multiplicity, cardinality and generating-function checks; {dualities} duality checks passed"
        )
        .map_err(io_err)?;
        Ok(())
    } else {
        for f in &failures {
            writeln!(out, "FAIL {f}").map_err(io_err)?;
        }
        Err(Error::invariant(format!("{} self-checks failed", failures.len())))
    }
}
