//! Front end for `digitsum`: argument parsing, dispatch to the core library
//! and report serialization.
//!
//! Exit status is 0 when every checked relation holds (or a plain
//! computation succeeds), 1 when a violation is found, and 2 on bad input.

pub mod args;
pub mod render;

use std::io::{self, Write};

use clap::Parser;
use serde_json::{json, Value as Json};

use digitsum::explorer::{
    fluctuation_series, optimality_counterexample, p_gt_one_divergence, sweep, verification_suite,
    ScanOptions, ScanReport, ScanRequest, VERIFIED,
};
use digitsum::inequalities::variation_partial_defect;
use digitsum::{
    allaart_p_defect, base3_defect, bio_defect, bit_count_below, carry_identity_check, digit_sum,
    factorial_valuation, graham_defect, partial_tuple_defect, pattern_count,
    scaling_identity_check, subadditivity_defect, summatory_digit_sum, summatory_digit_sum_oracle,
    symmetric_defect, to_digits, valuation, variation_defect, Base, DefectReport, DigitWord, Error,
    InequalityId, Nat, Value, WeightSequence,
};

pub use args::{Cli, Command, Format};
use args::{ComputeArgs, FluctuationArgs, ScanArgs, SearchCommand, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// A fully parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub parallelism: usize,
    pub oracle_cap: u64,
    pub violation_cap: usize,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let default_format = match cli.command {
            Command::Compute(_) => Format::Plain,
            _ => Format::Json,
        };
        RunConfig {
            format: cli.global.format.unwrap_or(default_format),
            parallelism: cli.global.parallelism as usize,
            oracle_cap: cli.global.oracle_cap,
            violation_cap: cli.global.violation_cap,
            command: cli.command,
        }
    }

    pub fn try_parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(Self::from_cli)
    }

    fn scan_options(&self) -> ScanOptions {
        ScanOptions {
            parallelism: self.parallelism,
            violation_cap: self.violation_cap,
        }
    }
}

/// Runs one command, writing a single document to `out`. Returns the exit
/// status: 0 when everything checked holds, 1 when a violation was found.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    match &config.command {
        Command::Compute(a) => compute(config, a, out),
        Command::Verify(a) => verify(config, a, out),
        Command::Search(s) => search(config, s, out),
        Command::Scan(a) => scan_cmd(config, a, out),
        Command::Fluctuation(a) => fluctuation(config, a, out),
    }
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn need<T: Clone>(x: &Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    x.clone()
        .ok_or_else(|| CliError::Usage(format!("`{what}` needs --{flag}")))
}

fn parse_id(s: &str) -> Result<InequalityId, CliError> {
    Ok(s.parse::<InequalityId>()?)
}

/// A single computed value, rendered as its bare text in plain mode.
struct Scalar {
    quantity: String,
    params: Vec<(&'static str, Json)>,
    value: Json,
    text: String,
}

fn write_scalar(config: &RunConfig, s: &Scalar, out: &mut dyn Write) -> Result<(), CliError> {
    match config.format {
        Format::Plain => writeln!(out, "{}", s.text)?,
        Format::Json => {
            let mut m = serde_json::Map::new();
            m.insert("quantity".into(), s.quantity.clone().into());
            for (k, v) in &s.params {
                m.insert((*k).into(), v.clone());
            }
            m.insert("value".into(), s.value.clone());
            render::write_json(out, &Json::Object(m))?;
        }
        Format::Csv => {
            let mut w = render::csv_writer(out);
            let mut header = vec!["quantity".to_string()];
            header.extend(s.params.iter().map(|(k, _)| k.to_string()));
            header.push("value".into());
            w.write_record(&header).map_err(io::Error::from)?;
            let cell = |v: &Json| match v {
                Json::String(s) => s.clone(),
                other => other.to_string(),
            };
            let mut row = vec![s.quantity.clone()];
            row.extend(s.params.iter().map(|(_, v)| cell(v)));
            row.push(s.text.clone());
            w.write_record(&row).map_err(io::Error::from)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_report(
    config: &RunConfig,
    r: &DefectReport<Value>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match config.format {
        Format::Json => render::write_json(out, &render::report_json(r))?,
        Format::Plain => render::write_report_plain(out, r)?,
        Format::Csv => render::write_report_csv(out, r)?,
    }
    Ok(())
}

fn weights_from(a: &ComputeArgs) -> Result<WeightSequence<f64>, CliError> {
    match (a.p, a.weights.is_empty()) {
        (Some(p), true) => Ok(WeightSequence::power(p)?),
        (None, false) => Ok(WeightSequence::explicit(a.weights.clone())?),
        (Some(_), false) => Err(CliError::Usage(
            "give either --p or --weights, not both".into(),
        )),
        (None, true) => Err(CliError::Usage(
            "weighted sums need --p or --weights".into(),
        )),
    }
}

fn compute(config: &RunConfig, a: &ComputeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let q = a.quantity.as_str();
    let base = || -> Result<Base, CliError> { Ok(Base::new(need(&a.base, "base", q)?)?) };
    let n = || need(&a.n, "n", q);
    let scalar = |value: Json, text: String, params: Vec<(&'static str, Json)>| Scalar {
        quantity: q.to_string(),
        params,
        value,
        text,
    };
    let int = |v: Nat| (Json::String(v.to_string()), v.to_string());
    let real = |x: f64| (render::real_json(x), Value::Real(x).to_string());
    let bn = |b: Base, n: &Nat| vec![("base", json!(b.get())), ("n", json!(n.to_string()))];

    let s = match q {
        "s" | "S" | "S-oracle" | "valuation" | "factorial-valuation" | "digits" => {
            let (b, n) = (base()?, n()?);
            let (value, text) = match q {
                "s" => int(digit_sum(&n, b)),
                "S" => int(summatory_digit_sum(&n, b)),
                "S-oracle" => int(summatory_digit_sum_oracle(&n, b, config.oracle_cap)?),
                "valuation" => int(Nat::from(valuation(&n, b)?)),
                "factorial-valuation" => int(factorial_valuation(&n, b)?),
                _ => {
                    let d = to_digits(&n, b);
                    let mut msf: Vec<u32> = d.digits().to_vec();
                    msf.reverse();
                    (json!(msf), d.to_string())
                }
            };
            scalar(value, text, bn(b, &n))
        }
        "pattern-count" => {
            let (b, n) = (base()?, n()?);
            let word = DigitWord::parse(&need(&a.pattern, "pattern", q)?, b)?;
            let (value, text) = int(Nat::from(pattern_count(&n, b, &word)?));
            let mut params = bn(b, &n);
            params.push(("pattern", json!(word.to_string())));
            scalar(value, text, params)
        }
        "bit-count" => {
            let (n, i) = (n()?, need(&a.i, "i", q)?);
            let (value, text) = int(bit_count_below(&n, i));
            scalar(
                value,
                text,
                vec![("n", json!(n.to_string())), ("i", json!(i))],
            )
        }
        "w" | "W" => {
            let n = n()?;
            let weights = weights_from(a)?;
            let x = if q == "w" {
                digitsum::weighted_digit_sum(&n, &weights)
            } else {
                digitsum::weighted_summatory(&n, &weights)
            };
            let (value, text) = real(x);
            let mut params = vec![("n", json!(n.to_string()))];
            match a.p {
                Some(p) => params.push(("p", render::real_json(p))),
                None => params.push(("weights", json!(a.weights))),
            }
            scalar(value, text, params)
        }
        other => {
            let id = other.parse::<InequalityId>().map_err(|_| {
                CliError::Usage(format!("unknown quantity or inequality `{other}`"))
            })?;
            let report = compute_inequality(a, id)?;
            let ok = report.holds;
            write_report(config, &report, out)?;
            return Ok(status(ok));
        }
    };
    write_scalar(config, &s, out)?;
    Ok(0)
}

fn arity(a: &ComputeArgs, id: InequalityId, k: usize) -> Result<&[Nat], CliError> {
    if a.values.len() != k {
        return Err(CliError::Usage(format!(
            "`{id}` takes exactly {k} values, got {}",
            a.values.len()
        )));
    }
    Ok(&a.values)
}

fn compute_inequality(a: &ComputeArgs, id: InequalityId) -> Result<DefectReport<Value>, CliError> {
    use InequalityId as I;
    let base = || -> Result<Base, CliError> { Ok(Base::new(need(&a.base, "base", id.as_str())?)?) };
    let values = || -> Result<&[Nat], CliError> {
        if a.values.is_empty() {
            return Err(CliError::Usage(format!("`{id}` needs --values")));
        }
        Ok(&a.values)
    };
    Ok(match id {
        I::Graham => {
            let v = arity(a, id, 2)?;
            graham_defect(&v[0], &v[1])?.into_values()
        }
        I::Bio => bio_defect(base()?, values()?)?.into_values(),
        I::PartialTuple => partial_tuple_defect(base()?, values()?)?.into_values(),
        I::Variation => variation_defect(base()?, values()?)?.into_values(),
        I::VariationPartial => variation_partial_defect(base()?, values()?)?.into_values(),
        I::Base3 => {
            let v = arity(a, id, 3)?;
            base3_defect(&v[0], &v[1], &v[2])?.into_values()
        }
        I::Symmetric => {
            let v = arity(a, id, 2)?;
            symmetric_defect(base()?, &v[0], &v[1], !a.loose)?.into_values()
        }
        I::Allaart => {
            let v = arity(a, id, 2)?;
            let p = need(&a.p, "p", id.as_str())?;
            allaart_p_defect::<Nat, f64>(p, &v[0], &v[1])?.into_values()
        }
        I::Subadditivity => {
            let v = arity(a, id, 2)?;
            subadditivity_defect(base()?, &v[0], &v[1]).into_values()
        }
        I::CarryIdentity => {
            let v = arity(a, id, 2)?;
            carry_identity_check(base()?, &v[0], &v[1])?.into_values()
        }
        I::Scaling => {
            let n = match (&a.n, a.values.as_slice()) {
                (Some(n), []) => n.clone(),
                (None, [n]) => n.clone(),
                _ => return Err(CliError::Usage("`scaling` needs --n".into())),
            };
            scaling_identity_check(&n, need(&a.x, "x", "scaling")?, base()?)?.into_values()
        }
        I::Optimality | I::Divergence | I::Block => {
            return Err(CliError::Usage(format!("use `search {id}` for this probe")))
        }
    })
}

fn verify(config: &RunConfig, a: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let ids: Vec<InequalityId> = if a.target == "all" {
        VERIFIED.to_vec()
    } else {
        vec![parse_id(&a.target)?]
    };
    let mut requests = Vec::new();
    for id in ids {
        requests.extend(verification_suite(id, a.max)?);
    }
    let opts = config.scan_options();
    let mut reports = Vec::with_capacity(requests.len());
    for req in &requests {
        reports.push(sweep(req)?.run(&opts));
    }
    let ok = reports.iter().all(ScanReport::all_hold);
    match config.format {
        Format::Json => {
            let doc = json!({
                "suite": a.target,
                "max": a.max,
                "grids": reports.len(),
                "instances_checked": reports.iter().map(|r| r.instances_checked).sum::<u64>(),
                "all_hold": ok,
                "reports": reports.iter().map(render::scan_json).collect::<Vec<_>>(),
            });
            render::write_json(out, &doc)?;
        }
        Format::Plain => {
            for r in &reports {
                writeln!(out, "{}", render::scan_summary_plain(r))?;
            }
            writeln!(out, "all hold: {ok}")?;
        }
        Format::Csv => render::write_scan_summaries_csv(out, &reports)?,
    }
    Ok(status(ok))
}

fn run_sweep(config: &RunConfig, req: &ScanRequest, out: &mut dyn Write) -> Result<u8, CliError> {
    let sw = sweep(req)?;
    if config.format == Format::Csv {
        // per-point rows; the exit status still reflects the whole grid
        render::write_sweep_csv(out, &sw)?;
        let mut ok = true;
        sw.visit(|r| ok &= r.holds);
        return Ok(status(ok));
    }
    let report = sw.run(&config.scan_options());
    match config.format {
        Format::Json => render::write_json(out, &render::scan_json(&report))?,
        _ => render::write_scan_plain(out, &report)?,
    }
    Ok(status(report.all_hold()))
}

fn scan_cmd(config: &RunConfig, a: &ScanArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut req = ScanRequest::new(parse_id(&a.id)?, a.max);
    req.base = a.base;
    req.r = a.r;
    req.p = a.p;
    req.x_max = a.x_max;
    req.pattern = a.pattern.clone();
    req.coefficient = a.coefficient;
    req.sharp = !a.loose;
    req.dominated = a.dominated;
    run_sweep(config, &req, out)
}

fn search(config: &RunConfig, s: &SearchCommand, out: &mut dyn Write) -> Result<u8, CliError> {
    match s {
        SearchCommand::Optimality { base, r, x } => {
            let w = optimality_counterexample::<Nat>(Base::new(*base)?, *r, *x)?;
            match config.format {
                Format::Json => render::write_json(out, &render::witness_json(&w))?,
                Format::Plain => render::write_witness_plain(out, &w)?,
                Format::Csv => render::write_witness_csv(out, &w)?,
            }
            Ok(status(!w.is_violation()))
        }
        SearchCommand::Divergence { p, k } => {
            let r = p_gt_one_divergence(*p, *k)?.into_values();
            write_report(config, &r, out)?;
            Ok(status(!r.holds))
        }
        SearchCommand::Block {
            pattern,
            base,
            coefficient,
            max,
        } => {
            let mut req = ScanRequest::new(InequalityId::Block, *max).base(*base);
            req.pattern = Some(pattern.clone());
            req.coefficient = *coefficient;
            run_sweep(config, &req, out)
        }
    }
}

fn fluctuation(
    config: &RunConfig,
    a: &FluctuationArgs,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let series = fluctuation_series::<f64>(Base::new(a.base)?, a.n)?;
    match config.format {
        Format::Csv => render::write_series_csv(out, &series)?,
        Format::Plain => {
            for (n, v) in &series {
                writeln!(out, "{n} {}", Value::Real(*v))?;
            }
        }
        Format::Json => {
            let points: Vec<Json> = series
                .iter()
                .map(|(n, v)| json!({"n": n, "residual": render::real_json(*v)}))
                .collect();
            render::write_json(out, &json!({"base": a.base, "n": a.n, "series": points}))?;
        }
    }
    Ok(0)
}
