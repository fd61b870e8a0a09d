//! Join factors of a graph and the representation numbers of joins.

use std::cmp::Ordering;

use crate::algebraic::AlgebraicReal;
use crate::error::Result;
use crate::geometry::solve_phi_bracket;
use crate::graph::{Graph, MultipartiteSignature};
use crate::invariants::{circumradius_from, cm_polynomials, profile_with, tau1_of, Settings};

/// Numeric agreement that counts as a tie between two β* values.
pub const TIE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum BetaStar {
    /// `√(2τ₁)` with τ₁ held exactly.
    Exact(AlgebraicReal),
    Numeric(f64),
    /// Complete factors: no J-spherical representation.
    Infinite,
}

impl BetaStar {
    pub fn value(&self) -> f64 {
        match self {
            BetaStar::Exact(t) => (2.0 * t.to_f64()).sqrt(),
            BetaStar::Numeric(x) => *x,
            BetaStar::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, BetaStar::Infinite)
    }

    /// Equality, exact when both sides are exact.
    pub fn ties(&self, other: &BetaStar) -> bool {
        match (self, other) {
            (BetaStar::Infinite, BetaStar::Infinite) => true,
            (BetaStar::Infinite, _) | (_, BetaStar::Infinite) => false,
            (BetaStar::Exact(a), BetaStar::Exact(b)) => a.exact_eq(b),
            _ => (self.value() - other.value()).abs() <= TIE_TOLERANCE * self.value().max(1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JoinFactor {
    /// Vertices of the factor in the input graph.
    pub vertices: Vec<usize>,
    pub graph: Graph,
    pub beta_star: BetaStar,
    /// `None` for complete factors.
    pub dim_j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JoinFactorization {
    /// Ascending by β*, ties grouped at the front.
    pub factors: Vec<JoinFactor>,
    /// Size of the group attaining the minimal β*; 0 when every factor is complete.
    pub k: usize,
}

impl JoinFactorization {
    pub fn beta_star(&self) -> f64 {
        self.factors.first().map_or(f64::INFINITY, |f| f.beta_star.value())
    }
}

fn factor_beta(g: &Graph, settings: &Settings) -> Result<(BetaStar, Option<usize>)> {
    let n = g.n();
    if g.is_complete() {
        return Ok((BetaStar::Infinite, None));
    }
    let (c, m) = cm_polynomials(g);
    let (tau1, mu) = tau1_of(&c);
    let r = circumradius_from(&c, &m, tau1.as_ref(), mu, settings)?;
    if r.is_half() {
        let t = tau1.expect("finite τ₁ when 𝓡² = 1/2");
        return Ok((BetaStar::Exact(t), Some(n - mu - 1)));
    }
    let (x, _) = solve_phi_bracket(g, 1.0, tau1.as_ref(), &settings.tol)?;
    Ok((BetaStar::Numeric(x), Some(n - 1)))
}

pub fn join_decompose(g: &Graph) -> Result<JoinFactorization> {
    join_decompose_with(g, &Settings::default())
}

pub fn join_decompose_with(g: &Graph, settings: &Settings) -> Result<JoinFactorization> {
    let mut factors = Vec::new();
    for vertices in g.complement_component_vertices() {
        let graph = g.induced(&vertices);
        let (beta_star, dim_j) = factor_beta(&graph, settings)?;
        factors.push(JoinFactor { vertices, graph, beta_star, dim_j });
    }
    factors.sort_by(|a, b| a.beta_star.value().partial_cmp(&b.beta_star.value()).unwrap_or(Ordering::Equal));
    // Pull every factor tying with the minimum to the front, keeping order.
    let mut k = 0;
    if factors.first().is_some_and(|f| f.beta_star.is_finite()) {
        let first = factors[0].beta_star.clone();
        let (mut tie, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.beta_star.ties(&first));
        k = tie.len();
        tie.extend(rest);
        factors = tie;
    }
    Ok(JoinFactorization { factors, k })
}

/// The closed form `dim_j = Σ_{i≤k} dim_j(Gᵢ) + Σ_{i>k} |Gᵢ|`, `dim_s = dim_j`,
/// `dim_e = min(dim_j, n − 2)`. `None` with fewer than two factors or no
/// finite β*.
///
/// Only the `dim_j` part survives `k = 1`: the gem `P₄ + K₁` has a spherical
/// Euclidean representation of dimension 3, and on seven vertices `F?G^w`
/// has `dim_e = 4 < n − 2`.
pub fn closed_form_dims(fac: &JoinFactorization, n: usize) -> Option<(usize, usize, usize)> {
    if fac.factors.len() < 2 || fac.k == 0 {
        return None;
    }
    let dim_j: usize = fac
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| if i < fac.k { f.dim_j.expect("finite β*") } else { f.vertices.len() })
        .sum();
    Some((dim_j, dim_j, dim_j.min(n - 2)))
}

/// `(dim_j, dim_s, dim_e)` from the join structure. With a single minimal
/// factor only `dim_j` comes from the factors; the rest, like the one-factor
/// and complete cases, is computed directly.
pub fn dims_via_join(g: &Graph) -> Result<(Option<usize>, usize, usize)> {
    dims_via_join_with(g, &Settings::default())
}

pub fn dims_via_join_with(g: &Graph, settings: &Settings) -> Result<(Option<usize>, usize, usize)> {
    let n = g.n();
    let fac = join_decompose_with(g, settings)?;
    match closed_form_dims(&fac, n) {
        Some((dj, ds, de)) if fac.k >= 2 => Ok((Some(dj), ds, de)),
        Some((dj, _, _)) => {
            let p = profile_with(g, settings)?;
            Ok((Some(dj), p.dim_s, p.dim_e))
        }
        None => {
            let p = profile_with(g, settings)?;
            Ok((p.dim_j, p.dim_s, p.dim_e))
        }
    }
}

/// `(dim_e, dim_s, dim_j)` of the complete multipartite graph.
pub fn multipartite_dims(sig: &MultipartiteSignature) -> (usize, usize, Option<usize>) {
    let n = sig.total();
    let parts = sig.parts();
    if parts.iter().all(|&p| p == 1) {
        return (n - 1, n - 1, None);
    }
    if parts.len() == 1 {
        // Edgeless: the regular simplex.
        return (n - 1, n - 1, Some(n - 1));
    }
    let k = sig.max_multiplicity();
    ((n - k).min(n - 2), n - k, Some(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron() {
        let g = crate::graph::complete_multipartite(&MultipartiteSignature::new(&[2, 2, 2]).unwrap()).unwrap();
        let f = join_decompose(&g).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.k, 3);
        assert!((f.beta_star() - 2.0).abs() < 1e-12);
        assert_eq!(dims_via_join(&g).unwrap(), (Some(3), 3, 3));
    }

    #[test]
    fn path_three() {
        let g = Graph::path(3).unwrap();
        let f = join_decompose(&g).unwrap();
        assert_eq!(f.k, 1);
        assert_eq!(f.factors[0].vertices, vec![0, 2]);
        assert_eq!(f.factors[1].beta_star, BetaStar::Infinite);
        assert_eq!(dims_via_join(&g).unwrap(), (Some(2), 2, 1));
    }

    #[test]
    fn gem_breaks_the_closed_form() {
        let g = crate::graph::parse_graph6("DR{").unwrap();
        let f = join_decompose(&g).unwrap();
        assert_eq!(f.k, 1);
        assert_eq!(closed_form_dims(&f, 5), Some((4, 4, 3)));
        assert_eq!(dims_via_join(&g).unwrap(), (Some(4), 3, 3));
    }

    #[test]
    fn multipartite() {
        let s = |p: &[usize]| MultipartiteSignature::new(p).unwrap();
        assert_eq!(multipartite_dims(&s(&[2, 2])), (2, 2, Some(2)));
        assert_eq!(multipartite_dims(&s(&[3, 2])), (3, 4, Some(4)));
        assert_eq!(multipartite_dims(&s(&[1, 1, 1])), (2, 2, None));
        assert_eq!(multipartite_dims(&s(&[3, 1])), (2, 3, Some(3)));
    }
}
