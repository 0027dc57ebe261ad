//! JSON, CSV and plain-text renderings.
//!
//! Integers that can outgrow 2^53 (field orders, exponents, spectrum
//! entries, character sums, `M`) are emitted as decimal strings. Values
//! bounded by construction (`T_1`, `ω_3`, `ω_5`, `δ`, `p`, `n`, the curve
//! trace) stay numbers.

use serde::Serialize;

use diffspec::spectrum::{EtaProfile, Intermediates};
use diffspec::verify::VerifyReport;
use diffspec::{CharSign, SpectrumReport};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Envelope<R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: Params,
    pub result: R,
    pub timing_ms: u64,
}

#[derive(Serialize)]
pub struct Params {
    pub p: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
}

#[derive(Serialize)]
pub struct SpectrumJson {
    method: &'static str,
    order: String,
    omega: Vec<String>,
    delta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    intermediates: Option<IntermediatesJson>,
}

#[derive(Serialize)]
struct IntermediatesJson {
    curve_trace: Option<i64>,
    gamma: Option<String>,
    lambda1: String,
    lambda2: String,
    t1: u8,
    omega5: u8,
    omega3: u8,
    omega2: String,
    m: String,
    eta: EtaJson,
}

#[derive(Serialize)]
struct EtaJson {
    #[serde(rename = "2")]
    two: i64,
    #[serde(rename = "-7")]
    minus_seven: i64,
    #[serde(rename = "-1")]
    minus_one: i64,
    #[serde(rename = "-3")]
    minus_three: i64,
    #[serde(rename = "6")]
    six: i64,
    #[serde(rename = "-2")]
    minus_two: i64,
    #[serde(rename = "-1+2sqrt2")]
    sqrt2_shift: Option<i64>,
}

impl From<&EtaProfile> for EtaJson {
    fn from(e: &EtaProfile) -> Self {
        EtaJson {
            two: e.eta2.value(),
            minus_seven: e.etam7.value(),
            minus_one: e.etam1.value(),
            minus_three: e.etam3.value(),
            six: e.eta6.value(),
            minus_two: e.etam2.value(),
            sqrt2_shift: e.eta_sqrt2_shift.map(CharSign::value),
        }
    }
}

impl From<&Intermediates> for IntermediatesJson {
    fn from(i: &Intermediates) -> Self {
        IntermediatesJson {
            curve_trace: i.curve_trace,
            gamma: i.gamma.as_ref().map(ToString::to_string),
            lambda1: i.lambda1.to_string(),
            lambda2: i.lambda2.to_string(),
            t1: i.t1,
            omega5: i.omega5,
            omega3: i.omega3,
            omega2: i.omega2.to_string(),
            m: i.m.to_string(),
            eta: (&i.eta).into(),
        }
    }
}

impl From<&SpectrumReport> for SpectrumJson {
    fn from(r: &SpectrumReport) -> Self {
        SpectrumJson {
            method: r.method.name(),
            order: r.order.to_string(),
            omega: r.spectrum.omega().iter().map(ToString::to_string).collect(),
            delta: r.delta(),
            intermediates: r.intermediates.as_ref().map(Into::into),
        }
    }
}

#[derive(Serialize)]
pub struct BothJson {
    pub closed: SpectrumJson,
    pub brute: SpectrumJson,
    pub agree: bool,
}

#[derive(Serialize)]
pub struct ValueJson {
    pub which: &'static str,
    pub method: &'static str,
    pub value: String,
}

#[derive(Serialize)]
pub struct VerifyJson {
    passed: bool,
    checks: Vec<CheckJson>,
}

#[derive(Serialize)]
struct CheckJson {
    name: &'static str,
    passed: bool,
    detail: String,
}

impl From<&VerifyReport> for VerifyJson {
    fn from(r: &VerifyReport) -> Self {
        VerifyJson {
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name,
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

pub fn csv_header() -> &'static str {
    "method,p,n,omega_0,omega_1,omega_2,omega_3,omega_4,omega_5"
}

pub fn csv_row(r: &SpectrumReport) -> String {
    let omega: Vec<String> = (0..6).map(|i| r.omega(i).to_string()).collect();
    format!("{},{},{},{}", r.method.name(), r.p, r.n, omega.join(","))
}

pub fn pretty(r: &SpectrumReport) -> String {
    let mut out = format!(
        "{} spectrum of x^{} over F_{}^{} (q = {}):\n  {}\n  delta = {}\n",
        r.method.name(),
        r.d,
        r.p,
        r.n,
        r.order,
        r.spectrum,
        r.delta()
    );
    if let Some(i) = &r.intermediates {
        if let (Some(a), Some(g)) = (i.curve_trace, &i.gamma) {
            out += &format!("  a = {a}, Gamma = {g}\n");
        }
        out += &format!(
            "  lambda1 = {}, lambda2 = {}, T1 = {}, M = {}\n",
            i.lambda1, i.lambda2, i.t1, i.m
        );
    }
    out
}
