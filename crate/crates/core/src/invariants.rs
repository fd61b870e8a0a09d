//! Cayley–Menger polynomials of a graph and the invariants read off them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebraic::{eval_interval, multiplicity_at, rational_to_f64, smallest_root_greater_than, AlgebraicReal};
use crate::error::{Error, Result};
use crate::geometry::{self, Tolerances};
use crate::graph::Graph;
use crate::poly::{det_poly_matrix, IntPolynomial};

/// Knobs shared by the exact and numeric parts of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    /// Target enclosure width `2^-precision_bits` for reported algebraic values.
    pub precision_bits: u32,
    /// Refinement stops here; comparisons still straddling are undecidable.
    pub max_precision_bits: u32,
    pub tol: Tolerances,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { precision_bits: 40, max_precision_bits: 2000, tol: Tolerances::default() }
    }
}

/// `F(τ₁)` where `F = −M/(2C)`, classified exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum RSquared {
    Half,
    Enclosure { lo: BigRational, hi: BigRational },
    Infinite,
}

impl RSquared {
    pub fn is_finite(&self) -> bool {
        !matches!(self, RSquared::Infinite)
    }

    pub fn is_half(&self) -> bool {
        matches!(self, RSquared::Half)
    }

    /// Double bounds; `Half` gives `(0.5, 0.5)`.
    pub fn bounds_f64(&self) -> Option<(f64, f64)> {
        match self {
            RSquared::Half => Some((0.5, 0.5)),
            RSquared::Enclosure { lo, hi } => Some((rational_to_f64(lo), rational_to_f64(hi))),
            RSquared::Infinite => None,
        }
    }
}

/// β*², exact when it is twice τ₁.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaStarSquared {
    TwiceTau1(AlgebraicReal),
    Numeric { value: f64, error_bound: f64 },
    Undefined,
}

impl BetaStarSquared {
    pub fn beta_star(&self) -> Option<f64> {
        match self {
            BetaStarSquared::TwiceTau1(t) => Some((2.0 * t.to_f64()).sqrt()),
            BetaStarSquared::Numeric { value, .. } => Some(value.sqrt()),
            BetaStarSquared::Undefined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoDistanceProfile {
    pub n: usize,
    pub c: IntPolynomial,
    pub m: IntPolynomial,
    /// `None` is τ₁ = ∞.
    pub tau1: Option<AlgebraicReal>,
    pub mu: usize,
    /// `None` is the zero marker (τ₁ of the complement is infinite).
    pub tau0: Option<AlgebraicReal>,
    /// τ₀ is only indicative when g or its complement is complete multipartite.
    pub tau0_advisory: bool,
    pub dim_e: usize,
    pub dim_s: usize,
    /// `None` for complete graphs.
    pub dim_j: Option<usize>,
    pub r_squared: RSquared,
    pub beta_star_squared: BetaStarSquared,
}

impl TwoDistanceProfile {
    pub fn tau1_f64(&self) -> f64 {
        self.tau1.as_ref().map_or(f64::INFINITY, AlgebraicReal::to_f64)
    }

    pub fn beta_star(&self) -> Option<f64> {
        self.beta_star_squared.beta_star()
    }

    /// The closed window `[τ₀, τ₁]` of realizable `t`, as doubles.
    pub fn feasible_interval(&self) -> (f64, f64) {
        (self.tau0.as_ref().map_or(0.0, AlgebraicReal::to_f64), self.tau1_f64())
    }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The bordered Cayley–Menger matrix (entries 0, 1, `t`) and the plain
/// squared-distance matrix of `g` with unit edges and `t` on non-edges.
pub fn cm_matrices(g: &Graph) -> (Vec<Vec<IntPolynomial>>, Vec<Vec<IntPolynomial>>) {
    let n = g.n();
    let entry = |i: usize, j: usize| {
        if i == j {
            IntPolynomial::zero()
        } else if g.has_edge(i, j) {
            IntPolynomial::constant(1)
        } else {
            IntPolynomial::t()
        }
    };
    let mut bordered = vec![vec![IntPolynomial::constant(1); n + 1]; n + 1];
    bordered[0][0] = IntPolynomial::zero();
    for i in 0..n {
        for j in 0..n {
            bordered[i + 1][j + 1] = entry(i, j);
        }
    }
    let plain = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    (bordered, plain)
}

/// `(C_G, M_G)`.
pub fn cm_polynomials(g: &Graph) -> (IntPolynomial, IntPolynomial) {
    let (b, p) = cm_matrices(g);
    (det_poly_matrix(&b), det_poly_matrix(&p))
}

/// Smallest root of `c` above 1 and its multiplicity; `(None, 0)` if none.
pub fn tau1_of(c: &IntPolynomial) -> (Option<AlgebraicReal>, usize) {
    if c.is_zero() {
        // Never happens for graphs: t = 1 gives the regular simplex.
        return (None, 0);
    }
    match smallest_root_greater_than(c, &BigRational::one()).expect("nonzero") {
        Some((r, k)) => (Some(r), k),
        None => (None, 0),
    }
}

pub fn tau1_mu(g: &Graph) -> (Option<AlgebraicReal>, usize) {
    tau1_of(&cm_polynomials(g).0)
}

/// Sign of `F(τ₁) − target` where the limit is finite, decided exactly on
/// equality and otherwise by refining an enclosure. Also returns the last
/// enclosure `(lo, hi)` of `F(τ₁)`.
///
/// `F = p/q` exactly iff `qM + 2pC` vanishes at τ₁ to order above `mu`.
fn compare_limit(
    c: &IntPolynomial,
    m: &IntPolynomial,
    tau1: &AlgebraicReal,
    mu: usize,
    target: &BigRational,
    min_bits: u32,
    settings: &Settings,
) -> Result<(Ordering, BigRational, BigRational)> {
    let p = IntPolynomial::constant(target.numer().clone());
    let qq = IntPolynomial::constant(target.denom().clone());
    let combo = &(&qq * m) + &(&(&p * c) * &IntPolynomial::constant(2));
    let exact = combo.is_zero() || multiplicity_at(&combo, tau1)? > mu;

    let cd = c.nth_derivative(mu);
    let md = m.nth_derivative(mu);
    let mut bits = settings.precision_bits.max(min_bits) + 8;
    loop {
        let a = tau1.refine_bits(bits);
        let (nlo, nhi) = eval_interval(&md, a.lo(), a.hi());
        let (dlo, dhi) = eval_interval(&cd, a.lo(), a.hi());
        if !(dlo.is_positive() || dhi.is_negative()) {
            bits += 16;
            if bits > settings.max_precision_bits {
                return Err(Error::Undecidable { lo: f64::NEG_INFINITY, hi: f64::INFINITY, target: rational_to_f64(target) });
            }
            continue;
        }
        let cands = [&nlo / &dlo, &nlo / &dhi, &nhi / &dlo, &nhi / &dhi];
        let qmin = cands.iter().min().unwrap();
        let qmax = cands.iter().max().unwrap();
        let two = q(2, 1);
        let lo = -(qmax / &two);
        let hi = -(qmin / &two);
        let width_ok = (&hi - &lo) <= BigRational::new(BigInt::one(), BigInt::one() << settings.precision_bits.max(min_bits));
        if exact {
            if width_ok {
                return Ok((Ordering::Equal, lo, hi));
            }
        } else if width_ok || bits >= settings.max_precision_bits {
            if hi < *target {
                return Ok((Ordering::Less, lo, hi));
            }
            if lo > *target {
                return Ok((Ordering::Greater, lo, hi));
            }
        }
        if bits >= settings.max_precision_bits {
            return Err(Error::Undecidable {
                lo: rational_to_f64(&lo),
                hi: rational_to_f64(&hi),
                target: rational_to_f64(target),
            });
        }
        bits = (bits + 16).min(settings.max_precision_bits);
    }
}

fn limit_is_infinite(m: &IntPolynomial, tau1: &AlgebraicReal, mu_c: usize) -> Result<bool> {
    Ok(!m.is_zero() && multiplicity_at(m, tau1)? < mu_c)
}

/// 𝓡² from precomputed pieces.
pub fn circumradius_from(
    c: &IntPolynomial,
    m: &IntPolynomial,
    tau1: Option<&AlgebraicReal>,
    mu: usize,
    settings: &Settings,
) -> Result<RSquared> {
    let Some(tau1) = tau1 else {
        return Ok(RSquared::Infinite);
    };
    if limit_is_infinite(m, tau1, mu)? {
        return Ok(RSquared::Infinite);
    }
    // Width below 1e-12 regardless of the configured precision.
    let (ord, lo, hi) = compare_limit(c, m, tau1, mu, &q(1, 2), 40, settings)?;
    Ok(match ord {
        Ordering::Equal => RSquared::Half,
        _ => RSquared::Enclosure { lo, hi },
    })
}

pub fn circumradius_invariant(g: &Graph) -> Result<RSquared> {
    circumradius_invariant_with(g, &Settings::default())
}

pub fn circumradius_invariant_with(g: &Graph, settings: &Settings) -> Result<RSquared> {
    let (c, m) = cm_polynomials(g);
    let (tau1, mu) = tau1_of(&c);
    circumradius_from(&c, &m, tau1.as_ref(), mu, settings)
}

pub fn profile(g: &Graph) -> Result<TwoDistanceProfile> {
    profile_with(g, &Settings::default())
}

pub fn profile_with(g: &Graph, settings: &Settings) -> Result<TwoDistanceProfile> {
    let n = g.n();
    let (c, m) = cm_polynomials(g);
    let (tau1, mu) = tau1_of(&c);
    let r_squared = circumradius_from(&c, &m, tau1.as_ref(), mu, settings)?;
    let dim_e = (n - 1).saturating_sub(mu);
    let dim_s = if r_squared.is_finite() { dim_e } else { n - 1 };
    let complete = g.is_complete();
    let dim_j = if complete {
        None
    } else if r_squared.is_half() {
        Some(dim_e)
    } else {
        Some(n - 1)
    };
    let beta_star_squared = if complete {
        BetaStarSquared::Undefined
    } else if dim_j < Some(n - 1) {
        let t = tau1.as_ref().expect("finite τ₁ when 𝓡² = 1/2").refine_bits(settings.precision_bits);
        BetaStarSquared::TwiceTau1(t)
    } else {
        let (x, err) = geometry::solve_phi_bracket(g, 1.0, tau1.as_ref(), &settings.tol)?;
        BetaStarSquared::Numeric { value: x * x, error_bound: 2.0 * x * err }
    };
    let co = g.complement();
    let (tau1_co, _) = tau1_of(&cm_polynomials(&co).0);
    let tau0 = tau1_co.and_then(|t| t.recip()).map(|t| t.refine_bits(settings.precision_bits));
    let tau0_advisory = g.is_complete_multipartite() || co.is_complete_multipartite();
    Ok(TwoDistanceProfile {
        n,
        c,
        m,
        tau1: tau1.map(|t| t.refine_bits(settings.precision_bits)),
        mu,
        tau0,
        tau0_advisory,
        dim_e,
        dim_s,
        dim_j,
        r_squared,
        beta_star_squared,
    })
}

/// Smallest dimension of a spherical representation with circumradius at
/// most `sqrt(r0_squared)`.
pub fn dim_s_bounded(g: &Graph, r0_squared: &BigRational) -> Result<usize> {
    dim_s_bounded_with(g, r0_squared, &Settings::default())
}

pub fn dim_s_bounded_with(g: &Graph, r0_squared: &BigRational, settings: &Settings) -> Result<usize> {
    let n = g.n();
    if g.is_complete() {
        return Err(Error::CompleteGraph(n));
    }
    if *r0_squared < q(1, 2) {
        return Err(Error::OutOfRange(format!("r0^2 = {r0_squared} is below 1/2")));
    }
    let (c, m) = cm_polynomials(g);
    let (tau1, mu) = tau1_of(&c);
    let Some(tau1) = tau1 else {
        return Ok(n - 1);
    };
    if limit_is_infinite(&m, &tau1, mu)? {
        return Ok(n - 1);
    }
    let (ord, _, _) = compare_limit(&c, &m, &tau1, mu, r0_squared, 0, settings)?;
    Ok(if ord == Ordering::Greater { n - 1 } else { n - mu - 1 })
}
