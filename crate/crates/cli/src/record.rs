use serde::{Deserialize, Serialize};
use twodist_core::algebraic::{decimal, AlgebraicReal};
use twodist_core::error::Result;
use twodist_core::graph::Graph;
use twodist_core::invariants::{profile_with, BetaStarSquared, RSquared, Settings, TwoDistanceProfile};
use twodist_core::join::{join_decompose_with, JoinFactorization};

const DIGITS: u32 = 15;

/// A tag string, a closed interval, or a number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Tag(String),
    Interval([f64; 2]),
    Number(f64),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Tag(s) => s.clone(),
            Value::Interval([lo, hi]) => format!("[{lo}, {hi}]"),
            Value::Number(x) => x.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub size: usize,
    /// `"I"`, `"II"`, or null for complete graphs.
    #[serde(rename = "type")]
    pub kind: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub input: String,
    pub n: usize,
    pub dim_e: usize,
    pub dim_s: usize,
    pub dim_j: Option<usize>,
    pub tau1: Value,
    pub mu: usize,
    pub r_squared: Value,
    pub beta_star: Option<Value>,
    pub factors: Vec<FactorSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub line: usize,
    pub input: String,
    pub error: String,
    pub exit_code: i32,
}

fn number(text: &str) -> f64 {
    text.parse().expect("decimal renders as a float")
}

pub fn round15(x: f64) -> f64 {
    number(&format!("{x:.14e}"))
}

fn enclosure(a: &AlgebraicReal) -> Value {
    Value::Interval([number(&decimal(a.lo(), DIGITS, false)), number(&decimal(a.hi(), DIGITS, true))])
}

impl AnalysisRecord {
    pub fn new(g: &Graph, p: &TwoDistanceProfile, fac: &JoinFactorization) -> Self {
        let tau1 = match &p.tau1 {
            None => Value::Tag("inf".into()),
            Some(t) => match t.rational_value() {
                Some(r) => Value::Interval([number(&decimal(&r, DIGITS, false)), number(&decimal(&r, DIGITS, true))]),
                None => enclosure(t),
            },
        };
        let r_squared = match &p.r_squared {
            RSquared::Half => Value::Tag("1/2".into()),
            RSquared::Infinite => Value::Tag("inf".into()),
            RSquared::Enclosure { lo, hi } => {
                Value::Interval([number(&decimal(lo, DIGITS, false)), number(&decimal(hi, DIGITS, true))])
            }
        };
        let beta_star = match &p.beta_star_squared {
            BetaStarSquared::TwiceTau1(_) => Some(Value::Tag("sqrt(2*tau1)".into())),
            BetaStarSquared::Numeric { value, .. } => Some(Value::Number(round15(value.sqrt()))),
            BetaStarSquared::Undefined => None,
        };
        let factors = fac
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| FactorSummary {
                size: f.vertices.len(),
                kind: (fac.k > 0).then(|| if i < fac.k { "I" } else { "II" }.to_string()),
            })
            .collect();
        AnalysisRecord {
            input: g.to_graph6(),
            n: p.n,
            dim_e: p.dim_e,
            dim_s: p.dim_s,
            dim_j: p.dim_j,
            tau1,
            mu: p.mu,
            r_squared,
            beta_star,
            factors,
        }
    }
}

pub fn analyze(g: &Graph, settings: &Settings) -> Result<AnalysisRecord> {
    let p = profile_with(g, settings)?;
    let fac = join_decompose_with(g, settings)?;
    Ok(AnalysisRecord::new(g, &p, &fac))
}

/// One flat CSV row; analysis and error records share the columns.
#[derive(Debug, Serialize)]
pub struct CsvRow {
    input: String,
    n: Option<usize>,
    dim_e: Option<usize>,
    dim_s: Option<usize>,
    dim_j: Option<usize>,
    tau1: String,
    mu: Option<usize>,
    r_squared: String,
    beta_star: String,
    factors: String,
    error: String,
}

impl From<&AnalysisRecord> for CsvRow {
    fn from(r: &AnalysisRecord) -> Self {
        CsvRow {
            input: r.input.clone(),
            n: Some(r.n),
            dim_e: Some(r.dim_e),
            dim_s: Some(r.dim_s),
            dim_j: r.dim_j,
            tau1: r.tau1.render(),
            mu: Some(r.mu),
            r_squared: r.r_squared.render(),
            beta_star: r.beta_star.as_ref().map_or(String::new(), Value::render),
            factors: r
                .factors
                .iter()
                .map(|f| format!("{}{}", f.size, f.kind.as_deref().map_or(String::new(), |k| format!(":{k}"))))
                .collect::<Vec<_>>()
                .join(" "),
            error: String::new(),
        }
    }
}

impl From<&ErrorRecord> for CsvRow {
    fn from(e: &ErrorRecord) -> Self {
        CsvRow {
            input: e.input.clone(),
            n: None,
            dim_e: None,
            dim_s: None,
            dim_j: None,
            tau1: String::new(),
            mu: None,
            r_squared: String::new(),
            beta_star: String::new(),
            factors: String::new(),
            error: e.error.clone(),
        }
    }
}
