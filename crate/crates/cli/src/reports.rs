//! Report structures with stable field layout, plus the table / JSON / CSV
//! renderers. JSON field order is fixed by struct declaration so identical
//! inputs serialize to identical bytes.

use chaincode_core::analysis::{DualSearchReport, MinimalityReport};
use chaincode_core::codes::CodeSummary;
use chaincode_core::theory::{BoundsReport, Prediction, PredictionKind};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Serialize)]
pub struct ParamsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    pub p: u64,
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nprime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Serialize)]
pub struct WeightRow {
    pub weight: u64,
    pub frequency: u64,
}

#[derive(Clone, Copy, Serialize)]
pub struct DiffRow {
    pub weight: u64,
    pub enumerated: u64,
    pub predicted: u64,
}

#[derive(Serialize)]
pub struct RatioJson {
    pub numerator: i64,
    pub denominator: i64,
    pub approx: f64,
}

#[derive(Serialize)]
pub struct BoundsJson {
    pub lower: RatioJson,
    pub upper: RatioJson,
    pub max_weight_count: u64,
}

#[derive(Serialize)]
pub struct PredictedJson {
    pub applicable: bool,
    pub kind: &'static str,
    pub reason: String,
    pub length: u64,
    pub dimension: u32,
    pub weights: Vec<WeightRow>,
    pub bounds: Option<BoundsJson>,
}

#[derive(Serialize)]
pub struct GrayJson {
    pub length: u64,
    pub dimension: u32,
    pub min_distance: u64,
    pub code_size: u64,
}

#[derive(Serialize)]
pub struct WeightsReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub params: ParamsEcho,
    pub enumerated: Vec<WeightRow>,
    pub predicted: PredictedJson,
    pub gray: GrayJson,
    #[serde(rename = "match")]
    pub matched: bool,
    pub diffs: Vec<DiffRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub check: String,
    pub params: ParamsEcho,
    pub claimed: Value,
    pub computed: Value,
    pub ok: bool,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct MatrixCell {
    pub name: String,
    pub params: ParamsEcho,
    pub status: &'static str,
    pub detail: Value,
}

#[derive(Serialize)]
pub struct MatrixReport {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub cells: Vec<MatrixCell>,
    pub all_pass: bool,
}

fn kind_name(kind: PredictionKind) -> &'static str {
    match kind {
        PredictionKind::TwoWeight => "two_weight",
        PredictionKind::ThreeWeight => "three_weight",
        PredictionKind::BoundsOnly => "bounds_only",
        PredictionKind::NotApplicable => "not_applicable",
    }
}

fn ratio_json(r: &num_rational::Ratio<i128>) -> RatioJson {
    RatioJson {
        numerator: *r.numer() as i64,
        denominator: *r.denom() as i64,
        approx: *r.numer() as f64 / *r.denom() as f64,
    }
}

fn bounds_json(b: &BoundsReport) -> BoundsJson {
    BoundsJson {
        lower: ratio_json(&b.lower),
        upper: ratio_json(&b.upper),
        max_weight_count: b.max_weight_count,
    }
}

pub fn predicted_json(p: &Prediction) -> PredictedJson {
    PredictedJson {
        applicable: p.applicable,
        kind: kind_name(p.kind),
        reason: p.reason.clone(),
        length: p.length,
        dimension: p.dimension,
        weights: p
            .weights
            .iter()
            .map(|&(weight, frequency)| WeightRow { weight, frequency })
            .collect(),
        bounds: p.bounds.as_ref().map(bounds_json),
    }
}

pub fn gray_json(s: &CodeSummary) -> GrayJson {
    GrayJson {
        length: s.gray_length,
        dimension: s.gray_dimension,
        min_distance: s.min_distance,
        code_size: s.code_size,
    }
}

/// Assemble the verification report for the `weights` command.
pub fn weights_report(
    params: ParamsEcho,
    summary: &CodeSummary,
    prediction: &Prediction,
    timing_ms: Option<u64>,
) -> WeightsReport {
    let enumerated: Vec<WeightRow> = summary
        .enumerator
        .pairs()
        .iter()
        .map(|&(weight, frequency)| WeightRow { weight, frequency })
        .collect();
    let nonzero = summary.enumerator.nonzero_pairs();
    let matched = prediction.applicable && nonzero == prediction.weights;
    let mut diffs = Vec::new();
    if prediction.applicable && !matched {
        let mut weights: Vec<u64> = nonzero.iter().map(|&(w, _)| w).collect();
        for &(w, _) in &prediction.weights {
            if !weights.contains(&w) {
                weights.push(w);
            }
        }
        weights.sort_unstable();
        for w in weights {
            let e = summary.enumerator.frequency_of(w);
            let p = prediction
                .weights
                .iter()
                .find(|&&(pw, _)| pw == w)
                .map_or(0, |&(_, f)| f);
            if e != p {
                diffs.push(DiffRow {
                    weight: w,
                    enumerated: e,
                    predicted: p,
                });
            }
        }
    }
    WeightsReport {
        schema_version: SCHEMA_VERSION,
        kind: "weights",
        params,
        enumerated,
        predicted: predicted_json(prediction),
        gray: gray_json(summary),
        matched,
        diffs,
        timing_ms,
    }
}

pub fn dual_details(report: &DualSearchReport) -> Value {
    serde_json::to_value(report).expect("serializable")
}

pub fn minimality_details(report: &MinimalityReport) -> Value {
    serde_json::to_value(report).expect("serializable")
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn params_line(p: &ParamsEcho) -> String {
    let mut s = String::from("parameters:");
    if let Some(set) = &p.set {
        s.push_str(&format!(" set={set}"));
    }
    s.push_str(&format!(" p={} m={}", p.p, p.m));
    if let Some(k) = p.k {
        s.push_str(&format!(" k={k}"));
    }
    if let Some(n) = p.nprime {
        s.push_str(&format!(" nprime={n}"));
    }
    if let Some(t) = p.threads {
        s.push_str(&format!(" threads={t}"));
    }
    s
}

pub fn weights_table(r: &WeightsReport) -> String {
    let mut out = String::new();
    out.push_str(&params_line(&r.params));
    out.push('\n');
    out.push_str(&format!(
        "gray image: [{}, {}, {}] over F_{}, {} codewords\n",
        r.gray.length, r.gray.dimension, r.gray.min_distance, r.params.p, r.gray.code_size
    ));
    out.push_str(&format!(
        "prediction: {} ({}), {}\n",
        r.predicted.kind,
        r.predicted.reason,
        if r.predicted.applicable {
            "applicable"
        } else {
            "not applicable"
        }
    ));
    if let Some(b) = &r.predicted.bounds {
        out.push_str(&format!(
            "bounds: {}/{} <= d_hom <= {}/{}, at most {} nonzero weights\n",
            b.lower.numerator,
            b.lower.denominator,
            b.upper.numerator,
            b.upper.denominator,
            b.max_weight_count
        ));
    }
    out.push_str("weight      enumerated  predicted\n");
    for row in &r.enumerated {
        let predicted = if row.weight == 0 {
            ".".to_string()
        } else {
            r.predicted
                .weights
                .iter()
                .find(|p| p.weight == row.weight)
                .map_or("-".to_string(), |p| p.frequency.to_string())
        };
        out.push_str(&format!(
            "{:<11} {:<11} {}\n",
            row.weight, row.frequency, predicted
        ));
    }
    for p in &r.predicted.weights {
        if !r.enumerated.iter().any(|e| e.weight == p.weight) {
            out.push_str(&format!("{:<11} {:<11} {}\n", p.weight, 0, p.frequency));
        }
    }
    out.push_str(&format!("match: {}", r.matched));
    if let Some(ms) = r.timing_ms {
        out.push_str(&format!(" ({ms} ms)"));
    }
    out.push('\n');
    out
}

pub fn weights_csv(r: &WeightsReport) -> String {
    let mut out = String::from("weight,frequency,source\n");
    for row in &r.enumerated {
        out.push_str(&format!("{},{},enumerated\n", row.weight, row.frequency));
    }
    for row in &r.predicted.weights {
        out.push_str(&format!("{},{},predicted\n", row.weight, row.frequency));
    }
    out
}

pub fn check_table(r: &CheckReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("check: {}\n", r.check));
    out.push_str(&params_line(&r.params));
    out.push('\n');
    out.push_str(&format!("claimed:  {}\n", r.claimed));
    out.push_str(&format!("computed: {}\n", r.computed));
    out.push_str(&format!("ok: {}", r.ok));
    if let Some(ms) = r.timing_ms {
        out.push_str(&format!(" ({ms} ms)"));
    }
    out.push('\n');
    out
}

pub fn matrix_table(r: &MatrixReport) -> String {
    let mut out = String::new();
    for cell in &r.cells {
        out.push_str(&format!("{:<9} {}\n", cell.status.to_uppercase(), cell.name));
    }
    out.push_str(&format!(
        "{} of {} cells pass\n",
        r.cells.iter().filter(|c| c.status == "pass").count(),
        r.cells.len()
    ));
    out
}

/// Claimed-vs-computed envelope shared by the check subcommands.
pub fn check_report(
    check: &str,
    params: ParamsEcho,
    claimed: Value,
    computed: Value,
    ok: bool,
    details: Value,
    timing_ms: Option<u64>,
) -> CheckReport {
    CheckReport {
        schema_version: SCHEMA_VERSION,
        kind: "check",
        check: check.to_string(),
        params,
        claimed,
        computed,
        ok,
        details,
        timing_ms,
    }
}

pub fn complex_json(v: num_complex::Complex64) -> Value {
    json!({ "re": v.re, "im": v.im })
}
