//! Brute-force cross-checks of the exact pipeline, and probes of the
//! monotonicity and convexity of `F = −M/(2C)`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebraic::rational_to_f64;
use crate::error::{Error, Result};
use crate::geometry::{circumcenter, realize};
use crate::graph::{all_graphs, Graph};
use crate::invariants::{cm_polynomials, tau1_of, TwoDistanceProfile};
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub subject: String,
    pub checks: Vec<Check>,
    pub worst_residual: f64,
}

impl OracleReport {
    fn new(g: &Graph) -> Self {
        OracleReport { subject: g.to_graph6(), checks: Vec::new(), worst_residual: 0.0 }
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), pass, detail });
    }

    fn residual(&mut self, r: f64) {
        if r.is_finite() {
            self.worst_residual = self.worst_residual.max(r);
        } else {
            self.worst_residual = f64::INFINITY;
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn float_matrix(g: &Graph, t: f64, bordered: bool) -> DMatrix<f64> {
    let n = g.n();
    let off = usize::from(bordered);
    DMatrix::from_fn(n + off, n + off, |i, j| {
        if bordered && (i == 0 || j == 0) {
            return if i == j { 0.0 } else { 1.0 };
        }
        let (u, v) = (i - off, j - off);
        if u == v {
            0.0
        } else if g.has_edge(u, v) {
            1.0
        } else {
            t
        }
    })
}

/// Relative disagreement, measured against the value or the size of the
/// matrix entries, whichever is larger.
fn det_mismatch(m: DMatrix<f64>, exact: f64) -> f64 {
    let hadamard: f64 = m.row_iter().map(|r| r.norm().max(1.0)).product();
    let num = m.determinant();
    (num - exact).abs() / exact.abs().max(1e-6 * hadamard).max(1e-300)
}

/// Independent checks of a computed profile.
pub fn verify_profile(g: &Graph, p: &TwoDistanceProfile) -> OracleReport {
    let mut rep = OracleReport::new(g);
    let n = g.n();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ ((n as u64) << 32) ^ g.edge_count() as u64);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let t = BigRational::new(BigInt::from(rng.gen_range(1..=60)), BigInt::from(rng.gen_range(1..=12)));
        let tf = rational_to_f64(&t);
        worst = worst.max(det_mismatch(float_matrix(g, tf, true), rational_to_f64(&p.c.eval(&t))));
        worst = worst.max(det_mismatch(float_matrix(g, tf, false), rational_to_f64(&p.m.eval(&t))));
    }
    rep.residual(worst);
    rep.push("cayley_menger_numeric", worst <= 1e-8, format!("max relative mismatch {worst:e} over 10 rational t"));

    // Rank at τ₁ by the Gram route, never touching Sturm chains.
    let t_star = match &p.tau1 {
        Some(t) => {
            let a = t.refine(&BigRational::new(BigInt::from(1), BigInt::from(10).pow(14)));
            rational_to_f64(a.lo())
        }
        None => 2.0,
    };
    match realize(g, t_star.sqrt(), 1.0) {
        Ok(cfg) => {
            let res = cfg.distance_residual(g);
            rep.residual(res);
            rep.push(
                "euclidean_rank",
                cfg.rank == p.dim_e && p.dim_e + p.mu + 1 == n.max(1) && res < 1e-9,
                format!("rank {} at t = {t_star}, dim_e {}, distance residual {res:e}", cfg.rank, p.dim_e),
            );
            if n >= 2 && p.tau1.is_some() {
                let (_, r, dev) = circumcenter(&cfg.points);
                let rel = dev / r.max(1e-300);
                match p.r_squared.bounds_f64() {
                    Some((lo, hi)) => {
                        let miss = if r * r < lo { lo - r * r } else if r * r > hi { r * r - hi } else { 0.0 };
                        rep.residual(rel.max(miss));
                        rep.push(
                            "spherical_at_tau1",
                            rel <= 1e-7 && miss <= 1e-7,
                            format!("circumradius^2 {} vs [{lo}, {hi}], spread {rel:e}", r * r),
                        );
                    }
                    None => rep.push(
                        "nonspherical_at_tau1",
                        rel.is_nan() || rel > 1e-6,
                        format!("points spread {rel:e} about the best circumcentre"),
                    ),
                }
            }
        }
        Err(e) => rep.push("euclidean_rank", false, format!("realization at t = {t_star} failed: {e}")),
    }

    if let Some((lo, _)) = p.r_squared.bounds_f64() {
        rep.push("radius_at_least_half", lo >= 0.5, format!("lower bound {lo}"));
    }
    let cliques = g.is_disjoint_clique_union();
    rep.push(
        "full_dimension_iff_clique_union",
        (p.dim_e + 1 == n) == cliques,
        format!("dim_e {} on {n} vertices, clique union {cliques}", p.dim_e),
    );
    if n >= 2 {
        let (de, ds) = (p.dim_e, p.dim_s);
        rep.push(
            "cardinality_bounds",
            2 * n <= (de + 1) * (de + 2) && 2 * n <= ds * (ds + 3),
            format!("n {n}, dim_e {de}, dim_s {ds}"),
        );
    }
    let j_ok = p.dim_j.is_none_or(|j| 2 * j >= n && j < n && p.dim_s <= j);
    rep.push(
        "dimension_order",
        p.dim_e <= p.dim_s && p.dim_s < n.max(2) && j_ok && (p.dim_j.is_none() == g.is_complete()),
        format!("dim_e {}, dim_s {}, dim_j {:?}", p.dim_e, p.dim_s, p.dim_j),
    );
    rep
}

/// `C_Ḡ = sign · t^(n − 1 + offset) · C_G(1/t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalRule {
    pub sign: i32,
    pub offset: i32,
}

/// The rule fixed by [`calibrate_reciprocal`].
pub const RECIPROCAL_RULE: ReciprocalRule = ReciprocalRule { sign: 1, offset: 0 };

fn rules_for(g: &Graph) -> Vec<ReciprocalRule> {
    let n = g.n() as i32;
    let c = cm_polynomials(g).0;
    let cc = cm_polynomials(&g.complement()).0;
    let mut out = Vec::new();
    for offset in -2..=2 {
        let e = n - 1 + offset;
        if e < 0 || c.degree().is_some_and(|d| d as i32 > e) {
            continue;
        }
        let r = c.reciprocal(e as usize);
        for sign in [1, -1] {
            if r.scale(&BigInt::from(sign)) == cc {
                out.push(ReciprocalRule { sign, offset });
            }
        }
    }
    out
}

/// Rules consistent with every graph on at most `max_n` vertices.
pub fn calibrate_reciprocal(max_n: usize) -> Vec<ReciprocalRule> {
    let mut alive: Option<Vec<ReciprocalRule>> = None;
    for n in 1..=max_n {
        for g in all_graphs(n).expect("census size") {
            let rs = rules_for(&g);
            alive = Some(match alive {
                None => rs,
                Some(a) => a.into_iter().filter(|r| rs.contains(r)).collect(),
            });
        }
    }
    alive.unwrap_or_default()
}

pub fn reciprocal_check(g: &Graph) -> OracleReport {
    let mut rep = OracleReport::new(g);
    let n = g.n();
    let c = cm_polynomials(g).0;
    let cc = cm_polynomials(&g.complement()).0;
    let e = n as i32 - 1 + RECIPROCAL_RULE.offset;
    let ok = e >= 0
        && c.degree().is_none_or(|d| d as i32 <= e)
        && c.reciprocal(e as usize).scale(&BigInt::from(RECIPROCAL_RULE.sign)) == cc;
    rep.push("reciprocal_polynomial", ok, format!("C = {c}, complement C = {cc}"));
    rep
}

fn f_value(c: &IntPolynomial, m: &IntPolynomial, t: f64) -> f64 {
    -m.eval_f64(t) / (2.0 * c.eval_f64(t))
}

/// Samples `F` on `grid` interior points of `(1, τ₁)`; violations are
/// reported as failed checks but mean nothing beyond the observation.
pub fn probe_f_monotonicity(g: &Graph, grid: usize) -> Result<OracleReport> {
    let (c, m) = cm_polynomials(g);
    let Some(tau1) = tau1_of(&c).0 else {
        return Err(Error::OutOfRange("τ₁ is infinite, so (1, τ₁) is unbounded".into()));
    };
    let top = tau1.to_f64();
    let ts: Vec<f64> = (1..=grid).map(|i| 1.0 + (top - 1.0) * i as f64 / (grid + 1) as f64).collect();
    let fs: Vec<f64> = ts.iter().map(|&t| f_value(&c, &m, t)).collect();
    let mut rep = OracleReport::new(g);
    let mut worst_drop: f64 = 0.0;
    for w in fs.windows(2) {
        worst_drop = worst_drop.max(w[0] - w[1]);
    }
    let mut worst_bend: f64 = 0.0;
    for w in fs.windows(3) {
        worst_bend = worst_bend.max(-(w[0] - 2.0 * w[1] + w[2]));
    }
    rep.push("f_monotone", worst_drop <= 1e-9, format!("largest decrease {worst_drop:e} over {grid} samples"));
    rep.push("f_convex", worst_bend <= 1e-9, format!("largest negative second difference {worst_bend:e}"));
    rep.worst_residual = worst_drop.max(worst_bend);
    Ok(rep)
}
