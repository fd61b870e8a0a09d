//! Catalog filters such as `dim_e=2`, `dim_s=n-1` or `dim_j=n/2`.

use std::str::FromStr;

use crate::record::AnalysisRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    DimE,
    DimS,
    DimJ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Const(usize),
    /// `n − c`.
    MinusN(usize),
    HalfN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Filter {
    pub field: Field,
    pub target: Target,
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        let (lhs, rhs) = compact.split_once('=').ok_or_else(|| format!("filter {s:?} lacks '='"))?;
        let field = match lhs {
            "dim_e" => Field::DimE,
            "dim_s" => Field::DimS,
            "dim_j" => Field::DimJ,
            other => return Err(format!("unknown field {other:?}; expected dim_e, dim_s or dim_j")),
        };
        let bad = || format!("unsupported target {rhs:?}; expected K, n, n-K or n/2");
        let target = if rhs == "n" {
            Target::MinusN(0)
        } else if rhs == "n/2" {
            Target::HalfN
        } else if let Some(c) = rhs.strip_prefix("n-") {
            Target::MinusN(c.parse().map_err(|_| bad())?)
        } else {
            Target::Const(rhs.parse().map_err(|_| bad())?)
        };
        Ok(Filter { field, target })
    }
}

impl Filter {
    pub fn matches(&self, r: &AnalysisRecord) -> bool {
        let value = match self.field {
            Field::DimE => Some(r.dim_e),
            Field::DimS => Some(r.dim_s),
            Field::DimJ => r.dim_j,
        };
        let want = match self.target {
            Target::Const(k) => Some(k),
            Target::MinusN(c) => r.n.checked_sub(c),
            Target::HalfN => r.n.is_multiple_of(2).then_some(r.n / 2),
        };
        value.is_some() && value == want
    }
}
