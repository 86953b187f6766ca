use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use qlower_core::harness::{build_report, builtin_target, equivalence_check, ReportRow, TargetFunction, BUILTIN_NAMES};
use qlower_core::indicator::format::{bundle_from_json_str, bundle_to_json_string, BundleFile};
use qlower_core::indicator::{
    build_approximator, build_approximator_at, BuildOptions, HolderFunctionSpec, Materialize, DEFAULT_SELECTOR_CAP,
};
use qlower_core::lowering::{
    binarize, ternarize, theorem_bounds, to_unit_weights, to_unit_weights_scaled_activation, TheoremBoundParams,
};
use qlower_core::net::format::{read_network, write_network};
use qlower_core::{EvalMode, RationalScalar};

use crate::error::CliError;
use crate::{
    ApproxArgs, BoundsArgs, Cli, Command, EquivArgs, EvalArgs, LowerArgs, LowerMode, ReportArgs, RescaleArgs,
};

/// What a successful command prints, plus a validation failure to report after it.
pub struct Outcome {
    pub stdout: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, failure: None }
    }

    fn check(stdout: String, pass: bool, message: impl FnOnce() -> String) -> Self {
        Outcome {
            stdout,
            failure: (!pass).then(|| CliError::validation(message())),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Approx(a) => approx(a, pretty),
        Command::Lower(a) => lower(a, pretty),
        Command::Rescale(a) => rescale(a, pretty),
        Command::Eval(a) => eval(a, pretty),
        Command::Equiv(a) => equiv(a, pretty),
        Command::Bounds(a) => bounds(a, pretty),
        Command::Report(a) => report(a, pretty),
    }
}

fn emit(value: &impl Serialize, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("output serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}

/// Selector size limit, overridable through `QLOWER_CAP`.
fn build_options() -> Result<BuildOptions, CliError> {
    let selector_cap = match std::env::var("QLOWER_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("QLOWER_CAP must be a non-negative integer, got `{v}`")))?,
        Err(_) => DEFAULT_SELECTOR_CAP,
    };
    Ok(BuildOptions { selector_cap, materialize: Materialize::Auto })
}

fn target(name: &str, d: usize) -> Result<TargetFunction, CliError> {
    if !BUILTIN_NAMES.contains(&name) {
        return Err(CliError::usage(format!(
            "unknown target `{name}` (expected one of {})",
            BUILTIN_NAMES.join(", ")
        )));
    }
    if d == 0 {
        return Err(CliError::usage("--d must be positive"));
    }
    Ok(builtin_target(name, d)?)
}

fn approx(a: &ApproxArgs, pretty: bool) -> Result<Outcome, CliError> {
    let opts = build_options()?;
    let mut t = target(&a.target, a.d)?;
    if a.beta.is_some() || a.k.is_some() || a.f.is_some() {
        let spec = HolderFunctionSpec::new(
            a.d,
            a.beta.unwrap_or(t.spec.beta),
            a.k.unwrap_or(t.spec.k),
            a.f.unwrap_or(t.spec.f_bound),
            t.spec.evaluator.clone(),
        )?;
        t = TargetFunction::register(t.name.clone(), spec, "user-supplied Hölder data", 0)?;
    }
    let bundle = match a.m {
        Some(m) => build_approximator_at(&t.spec, a.eps, m, opts)?,
        None => build_approximator(&t.spec, a.eps, opts)?,
    };
    write_file(&a.out, &bundle_to_json_string(&bundle))?;
    let cert = bundle.certificate();
    if let Some(path) = &a.cert {
        write_file(path, &cert.to_json_string())?;
    }
    let out = json!({
        "certificate": cert,
        "materialized": bundle.is_materialized(),
        "depth": bundle.depth(),
        "widths": bundle.widths(),
        "sparsity": bundle.sparsity(),
    });
    Ok(Outcome::check(emit(&out, pretty), cert.certified, || {
        format!("bound {:?} does not certify epsilon = {}", cert.bound, cert.epsilon)
    }))
}

fn lower(a: &LowerArgs, pretty: bool) -> Result<Outcome, CliError> {
    let net = read_network(&a.input)?;
    let (lowered, cert) = match a.mode {
        LowerMode::Ternary => ternarize(&net)?,
        LowerMode::Binary => binarize(&net)?,
    };
    write_network(&lowered, &a.out)?;
    if let Some(path) = &a.cert {
        write_file(path, &cert.to_json_string())?;
    }
    Ok(Outcome::check(emit(&cert, pretty), cert.pass, || "lowered network violates its accounting bounds".into()))
}

fn rescale(a: &RescaleArgs, pretty: bool) -> Result<Outcome, CliError> {
    let net = read_network(&a.input)?;
    let out = if a.scaled_activation {
        to_unit_weights_scaled_activation(&net)?
    } else {
        to_unit_weights(&net)?
    };
    write_network(&out, &a.out)?;
    let summary = json!({
        "activation": out.activation().name(),
        "output_scale": out.output_scale().to_string(),
        "depth": out.depth(),
        "widths": out.widths(),
        "sparsity": out.sparsity().total_nonzero,
    });
    Ok(Outcome::ok(emit(&summary, pretty)))
}

fn parse_point(s: &str) -> Result<Vec<RationalScalar>, CliError> {
    s.split(',')
        .map(|c| {
            RationalScalar::parse_decimal(c).map_err(|e| CliError::usage(format!("invalid coordinate `{}`: {e}", c.trim())))
        })
        .collect()
}

fn eval(a: &EvalArgs, pretty: bool) -> Result<Outcome, CliError> {
    let x = parse_point(&a.x)?;
    let file = bundle_from_json_str(&read_file(&a.net)?)?;
    let xf: Vec<f64> = x.iter().map(RationalScalar::to_f64).collect();
    let output: Value = if a.implicit {
        let readout = file.to_readout()?;
        if a.exact {
            json!([readout.eval_exact(&x)?.to_string()])
        } else {
            json!([readout.eval_f64(&xf)?])
        }
    } else {
        let BundleFile::Network(net) = file else {
            return Err(CliError::usage("readout-only approximator files need --implicit"));
        };
        if a.exact {
            json!(net.eval_exact(&x)?.iter().map(ToString::to_string).collect::<Vec<_>>())
        } else {
            json!(net.eval_f64(&xf)?)
        }
    };
    let out = json!({
        "x": x.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "mode": if a.exact { "exact" } else { "float" },
        "implicit": a.implicit,
        "output": output,
    });
    Ok(Outcome::ok(emit(&out, pretty)))
}

fn equiv(a: &EquivArgs, pretty: bool) -> Result<Outcome, CliError> {
    let tol = a.tol.unwrap_or(if a.exact { 0.0 } else { 1e-12 });
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::usage("--tol must be non-negative"));
    }
    let (na, nb) = (read_network(&a.a)?, read_network(&a.b)?);
    let mode = if a.exact { EvalMode::Exact } else { EvalMode::Float };
    let rep = equivalence_check(&na, &nb, a.samples, a.seed, mode)?;
    let pass = if tol == 0.0 { rep.is_exact_match() } else { rep.max_diff_f64 <= tol };
    let mut out = serde_json::to_value(&rep).expect("report serializes");
    out["tol"] = json!(tol);
    out["pass"] = json!(pass);
    Ok(Outcome::check(emit(&out, pretty), pass, || {
        format!("max difference {} exceeds tolerance {tol}", rep.max_diff)
    }))
}

fn bounds(a: &BoundsArgs, pretty: bool) -> Result<Outcome, CliError> {
    let params = TheoremBoundParams { m: a.m, n: a.n, beta: a.beta, d: a.d, k: a.k };
    Ok(Outcome::ok(emit(&theorem_bounds(&params)?, pretty)))
}

fn table(rows: &[ReportRow]) -> String {
    let header = ["target", "d", "eps", "M", "sparsity", "sup_error", "bound", "pass"];
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.target.clone(),
                r.d.to_string(),
                r.epsilon.to_string(),
                r.m.to_string(),
                r.sparsity.to_string(),
                format!("{:.6e}", r.sup_error),
                format!("{:.6e}", r.bound),
                r.pass.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cols: &[&str]| {
        let mut s = cols
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&header);
    for c in &cells {
        out.push_str(&line(&c.iter().map(String::as_str).collect::<Vec<_>>()));
    }
    out
}

fn report(a: &ReportArgs, pretty: bool) -> Result<Outcome, CliError> {
    if a.grid < 2 {
        return Err(CliError::usage("--grid must be at least 2"));
    }
    let opts = build_options()?;
    let targets = a.targets.iter().map(|n| target(n.trim(), a.d)).collect::<Result<Vec<_>, _>>()?;
    let rows = build_report(&targets, &a.eps_list, a.grid, opts)?;
    let file = File::create(&a.csv).map_err(|e| CliError::io(format!("cannot write {}: {e}", a.csv.display())))?;
    qlower_core::harness::write_csv(&rows, BufWriter::new(file))?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    let stdout = if pretty { table(&rows) } else { emit(&rows, false) };
    Ok(Outcome::check(stdout, failed == 0, || format!("{failed} rows exceed their bound")))
}
