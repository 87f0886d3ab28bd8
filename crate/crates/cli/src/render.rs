//! Serializers for reports. Integers and ratios become decimal strings in
//! JSON; reals are rounded to 12 significant digits everywhere.

use std::io::{self, Write};

use serde_json::{json, Map, Value as Json};

use digitsum::explorer::{AnySweep, CounterexampleWitness, GridSpec, ScanReport};
use digitsum::report::round_significant;
use digitsum::{DefectReport, Nat, Relation, Value};

pub fn value_json(v: &Value) -> Json {
    match v {
        Value::Int(_) | Value::Ratio(_) => Json::String(v.to_string()),
        Value::Real(x) => real_json(*x),
    }
}

pub fn real_json(x: f64) -> Json {
    serde_json::Number::from_f64(round_significant(x)).map_or(Json::Null, Json::Number)
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::AtMost => "at-most",
        Relation::Identity => "identity",
        Relation::Violation => "violation",
    }
}

fn named_values(xs: &[(digitsum::report::Label, Value)]) -> Json {
    Json::Object(
        xs.iter()
            .map(|(k, v)| (k.to_string(), value_json(v)))
            .collect(),
    )
}

pub fn report_json(r: &DefectReport<Value>) -> Json {
    let mut m = Map::new();
    m.insert("inequality_id".into(), r.id.as_str().into());
    m.insert("base".into(), r.base.map_or(Json::Null, Json::from));
    m.insert("inputs".into(), named_values(&r.inputs));
    m.insert("lhs".into(), value_json(&r.lhs));
    m.insert("rhs".into(), value_json(&r.rhs));
    m.insert("defect".into(), value_json(&r.defect));
    m.insert("relation".into(), relation_name(r.relation).into());
    m.insert("holds".into(), r.holds.into());
    m.insert("guaranteed".into(), r.guaranteed.into());
    if !r.extras.is_empty() {
        m.insert("extras".into(), named_values(&r.extras));
    }
    Json::Object(m)
}

pub fn grid_json(g: &GridSpec) -> Json {
    let mut m = Map::new();
    m.insert("bound".into(), g.bound.into());
    if let Some(b) = g.base {
        m.insert("base".into(), b.into());
    }
    if let Some(r) = g.r {
        m.insert("r".into(), r.into());
    }
    if let Some(p) = g.p {
        m.insert("p".into(), real_json(p));
    }
    if let Some(s) = g.sharp {
        m.insert("sharp".into(), s.into());
    }
    if let Some(d) = g.dominated {
        m.insert("dominated".into(), d.into());
    }
    if let Some(x) = g.x_max {
        m.insert("x_max".into(), x.into());
    }
    if let Some(p) = &g.pattern {
        m.insert("pattern".into(), p.clone().into());
    }
    if let Some(c) = &g.coefficient {
        m.insert("coefficient".into(), c.clone().into());
    }
    Json::Object(m)
}

fn tuple_json(w: &[Value]) -> Json {
    Json::Array(w.iter().map(value_json).collect())
}

pub fn scan_json(r: &ScanReport<Value>) -> Json {
    json!({
        "inequality_id": r.id.as_str(),
        "grid": grid_json(&r.grid),
        "instances_checked": r.instances_checked,
        "min_defect": r.min_defect.as_ref().map_or(Json::Null, value_json),
        "argmin_witness": r.argmin_witness.as_deref().map_or(Json::Null, tuple_json),
        "witness_names": r.witness_names,
        "equality_count": r.equality_count,
        "violation_count": r.violation_count,
        "violations": r.violations.iter().map(|w| tuple_json(w)).collect::<Vec<_>>(),
        "all_hold": r.all_hold(),
    })
}

pub fn witness_json(w: &CounterexampleWitness<Nat>) -> Json {
    json!({
        "inequality_id": "optimality",
        "base": w.base.get(),
        "r": w.r,
        "x": w.x,
        "ns": w.ns.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "lhs": w.lhs.to_string(),
        "rhs": w.rhs.to_string(),
        "margin": w.margin.to_string(),
        "violation": w.is_violation(),
    })
}

pub fn write_json(out: &mut dyn Write, doc: &Json) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

fn grid_plain(g: &GridSpec) -> String {
    let mut parts = vec![format!("bound={}", g.bound)];
    if let Some(b) = g.base {
        parts.push(format!("base={b}"));
    }
    if let Some(r) = g.r {
        parts.push(format!("r={r}"));
    }
    if let Some(p) = g.p {
        parts.push(format!("p={}", round_significant(p)));
    }
    if let Some(s) = g.sharp {
        parts.push(format!("sharp={s}"));
    }
    if let Some(d) = g.dominated {
        parts.push(format!("dominated={d}"));
    }
    if let Some(x) = g.x_max {
        parts.push(format!("x_max={x}"));
    }
    if let Some(p) = &g.pattern {
        parts.push(format!("pattern={p}"));
    }
    if let Some(c) = &g.coefficient {
        parts.push(format!("coefficient={c}"));
    }
    parts.join(" ")
}

fn tuple_plain(w: &[Value]) -> String {
    let items: Vec<String> = w.iter().map(Value::to_string).collect();
    format!("({})", items.join(", "))
}

fn pairs_plain(xs: &[(digitsum::report::Label, Value)]) -> String {
    xs.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_report_plain(out: &mut dyn Write, r: &DefectReport<Value>) -> io::Result<()> {
    writeln!(out, "inequality: {}", r.id)?;
    if let Some(b) = r.base {
        writeln!(out, "base: {b}")?;
    }
    writeln!(out, "inputs: {}", pairs_plain(&r.inputs))?;
    writeln!(out, "lhs: {}", r.lhs)?;
    writeln!(out, "rhs: {}", r.rhs)?;
    writeln!(out, "defect: {}", r.defect)?;
    writeln!(out, "relation: {}", relation_name(r.relation))?;
    writeln!(out, "holds: {}", r.holds)?;
    writeln!(out, "guaranteed: {}", r.guaranteed)?;
    if !r.extras.is_empty() {
        writeln!(out, "extras: {}", pairs_plain(&r.extras))?;
    }
    Ok(())
}

pub fn write_scan_plain(out: &mut dyn Write, r: &ScanReport<Value>) -> io::Result<()> {
    writeln!(out, "inequality: {}", r.id)?;
    writeln!(out, "grid: {}", grid_plain(&r.grid))?;
    writeln!(out, "instances checked: {}", r.instances_checked)?;
    match (&r.min_defect, &r.argmin_witness) {
        (Some(d), Some(w)) => writeln!(out, "min defect: {d} at {}", tuple_plain(w))?,
        _ => writeln!(out, "min defect: none")?,
    }
    writeln!(out, "equalities: {}", r.equality_count)?;
    writeln!(out, "violations: {}", r.violation_count)?;
    for w in &r.violations {
        writeln!(out, "  {}", tuple_plain(w))?;
    }
    Ok(())
}

/// One line per grid: id, grid, counts and the minimum defect.
pub fn scan_summary_plain(r: &ScanReport<Value>) -> String {
    let min = r
        .min_defect
        .as_ref()
        .map_or_else(|| "none".to_string(), Value::to_string);
    format!(
        "{} [{}] instances={} min_defect={} equalities={} violations={} {}",
        r.id,
        grid_plain(&r.grid),
        r.instances_checked,
        min,
        r.equality_count,
        r.violation_count,
        if r.all_hold() { "ok" } else { "FAIL" }
    )
}

pub fn write_witness_plain(out: &mut dyn Write, w: &CounterexampleWitness<Nat>) -> io::Result<()> {
    let ns: Vec<String> = w.ns.iter().map(|n| n.to_string()).collect();
    writeln!(out, "base: {} r: {} x: {}", w.base, w.r, w.x)?;
    writeln!(out, "ns: [{}]", ns.join(", "))?;
    writeln!(out, "lhs: {}", w.lhs)?;
    writeln!(out, "rhs: {}", w.rhs)?;
    writeln!(out, "margin: {}", w.margin)
}

pub fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

const SCAN_SUMMARY_HEADER: [&str; 15] = [
    "inequality_id",
    "bound",
    "base",
    "r",
    "p",
    "sharp",
    "dominated",
    "x_max",
    "pattern",
    "coefficient",
    "instances_checked",
    "min_defect",
    "equality_count",
    "violation_count",
    "all_hold",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, ToString::to_string)
}

pub fn write_scan_summaries_csv(
    out: &mut dyn Write,
    reports: &[ScanReport<Value>],
) -> io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(SCAN_SUMMARY_HEADER)?;
    for r in reports {
        let g = &r.grid;
        w.write_record([
            r.id.to_string(),
            g.bound.to_string(),
            opt(&g.base),
            opt(&g.r),
            opt(&g.p.map(round_significant)),
            opt(&g.sharp),
            opt(&g.dominated),
            opt(&g.x_max),
            opt(&g.pattern),
            opt(&g.coefficient),
            r.instances_checked.to_string(),
            opt(&r.min_defect),
            r.equality_count.to_string(),
            r.violation_count.to_string(),
            r.all_hold().to_string(),
        ])?;
    }
    w.flush()
}

/// One row per grid point: the inputs, both sides, the defect and `holds`.
pub fn write_sweep_csv(out: &mut dyn Write, sweep: &AnySweep) -> io::Result<()> {
    let mut w = csv_writer(out);
    let mut failure = None;
    let mut header_written = false;
    sweep.visit(|r| {
        if failure.is_some() {
            return;
        }
        let res = (|| {
            if !header_written {
                let mut header: Vec<String> = r.inputs.iter().map(|(k, _)| k.to_string()).collect();
                header.extend(["lhs", "rhs", "defect", "holds"].map(String::from));
                w.write_record(&header)?;
                header_written = true;
            }
            let mut row: Vec<String> = r.inputs.iter().map(|(_, v)| v.to_string()).collect();
            row.extend([
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.defect.to_string(),
                r.holds.to_string(),
            ]);
            w.write_record(&row)
        })();
        if let Err(e) = res {
            failure = Some(e);
        }
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    w.flush()
}

pub fn write_report_csv(out: &mut dyn Write, r: &DefectReport<Value>) -> io::Result<()> {
    let mut w = csv_writer(out);
    let mut header: Vec<String> = r.inputs.iter().map(|(k, _)| k.to_string()).collect();
    header.extend(["lhs", "rhs", "defect", "holds", "guaranteed"].map(String::from));
    header.extend(r.extras.iter().map(|(k, _)| k.to_string()));
    w.write_record(&header)?;
    let mut row: Vec<String> = r.inputs.iter().map(|(_, v)| v.to_string()).collect();
    row.extend([
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.defect.to_string(),
        r.holds.to_string(),
        r.guaranteed.to_string(),
    ]);
    row.extend(r.extras.iter().map(|(_, v)| v.to_string()));
    w.write_record(&row)?;
    w.flush()
}

pub fn write_witness_csv(out: &mut dyn Write, wit: &CounterexampleWitness<Nat>) -> io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["base", "r", "x", "ns", "lhs", "rhs", "margin"])?;
    let ns: Vec<String> = wit.ns.iter().map(|n| n.to_string()).collect();
    w.write_record([
        wit.base.to_string(),
        wit.r.to_string(),
        wit.x.to_string(),
        ns.join(" "),
        wit.lhs.to_string(),
        wit.rhs.to_string(),
        wit.margin.to_string(),
    ])?;
    w.flush()
}

pub fn write_series_csv(out: &mut dyn Write, series: &[(u64, f64)]) -> io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["n", "residual"])?;
    for (n, v) in series {
        w.write_record([n.to_string(), round_significant(*v).to_string()])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn big_integers_are_strings_and_reals_are_rounded() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(
            value_json(&Value::Int(big)),
            json!("123456789012345678901234567890")
        );
        assert_eq!(value_json(&Value::Real(0.1 + 0.2)), json!(0.3));
        assert_eq!(value_json(&Value::Real(f64::NAN)), Json::Null);
    }

    #[test]
    fn grid_omits_unset_fields() {
        let g = GridSpec {
            bound: 16,
            base: Some(2),
            ..Default::default()
        };
        assert_eq!(grid_json(&g), json!({"bound": 16, "base": 2}));
    }

    #[test]
    fn series_csv_has_header_and_rows() {
        let mut buf = Vec::new();
        write_series_csv(&mut buf, &[(1, 0.0), (2, 0.5)]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,residual\n1,0\n2,0.5\n");
    }
}
