//! Numerical two-distance configurations: realization from the squared
//! distance matrix, minimum enclosing balls, the Φ solver, J-spherical
//! embeddings and Type I/II decomposition of point sets.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebraic::{rational_to_f64, AlgebraicReal};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{circumradius_from, cm_polynomials, tau1_of, RSquared, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Gram eigenvalues below this fraction of the largest are dropped.
    pub eigen_cutoff: f64,
    /// Gram eigenvalues below `-feasibility * largest` make `t` infeasible.
    pub feasibility: f64,
    /// Slack on distances and on sphere membership.
    pub distance: f64,
    /// Slack of the convex-hull test in the Type I/II classification.
    pub hull: f64,
    /// Relative bracket width at which bisection stops.
    pub bisection: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eigen_cutoff: 1e-9, feasibility: 1e-9, distance: 1e-8, hull: 1e-8, bisection: 1e-12 }
    }
}

impl Tolerances {
    /// Defaults with the distance and hull slack replaced by `tol`.
    pub fn with_tol(tol: f64) -> Self {
        Tolerances { distance: tol, hull: tol, ..Tolerances::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub points: Vec<Vec<f64>>,
    pub a: f64,
    pub b: f64,
    pub rank: usize,
    pub tol: f64,
}

/// Serialized form of an embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coordinates {
    pub points: Vec<Vec<f64>>,
    pub a: f64,
    pub b: f64,
    pub rank: usize,
    pub radius: f64,
}

impl PointConfig {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn dist2(&self, i: usize, j: usize) -> f64 {
        dist2(&self.points[i], &self.points[j])
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist2(i, j).sqrt()
    }

    /// Largest `|d²_ij − target²_ij|` relative to `max(a², b²)`, where the
    /// target is `a` on edges of `g` and `b` elsewhere.
    pub fn distance_residual(&self, g: &Graph) -> f64 {
        let scale = (self.a * self.a).max(self.b * self.b);
        let mut worst: f64 = 0.0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let want = if g.has_edge(i, j) { self.a } else { self.b };
                worst = worst.max((self.dist2(i, j) - want * want).abs() / scale);
            }
        }
        worst
    }

    /// Largest `| |p| − 1 |`.
    pub fn sphere_deviation(&self) -> f64 {
        self.points.iter().map(|p| (norm2(p).sqrt() - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn min_distance(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                m = m.min(self.dist(i, j));
            }
        }
        m
    }

    pub fn coordinates(&self, radius: f64) -> Coordinates {
        Coordinates { points: self.points.clone(), a: self.a, b: self.b, rank: self.rank, radius }
    }
}

fn dist2(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn norm2(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

fn dot(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(x, y)| x * y).sum()
}

pub fn realize(g: &Graph, b: f64, a: f64) -> Result<PointConfig> {
    realize_with(g, b, a, &Tolerances::default())
}

/// Two-distance configuration with distance `a` on edges and `b` on
/// non-edges, from the double-centred squared-distance matrix.
pub fn realize_with(g: &Graph, b: f64, a: f64, tol: &Tolerances) -> Result<PointConfig> {
    if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
        return Err(Error::OutOfRange(format!("distances must be positive and finite, got a = {a}, b = {b}")));
    }
    let n = g.n();
    if n == 1 {
        return Ok(PointConfig { points: vec![vec![]], a, b, rank: 0, tol: tol.distance });
    }
    let d = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else if g.has_edge(i, j) {
            a * a
        } else {
            b * b
        }
    });
    let row: Vec<f64> = (0..n).map(|i| d.row(i).sum() / n as f64).collect();
    let all = row.iter().sum::<f64>() / n as f64;
    let gram = DMatrix::from_fn(n, n, |i, j| -0.5 * (d[(i, j)] - row[i] - row[j] + all));
    let eig = SymmetricEigen::new(gram);
    let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let low = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if low < -tol.feasibility * top {
        return Err(Error::Infeasible(format!(
            "(b/a)^2 = {} is outside the realizable window (Gram eigenvalue {low:e})",
            (b / a) * (b / a)
        )));
    }
    let mut keep: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > tol.eigen_cutoff * top).collect();
    keep.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let points = (0..n)
        .map(|i| keep.iter().map(|&k| eig.eigenvectors[(i, k)] * eig.eigenvalues[k].sqrt()).collect())
        .collect();
    Ok(PointConfig { points, a, b, rank: keep.len(), tol: tol.distance })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
    pub support: Vec<usize>,
    /// `r² − f(λ)` for the dual weights `λ` read off the support; the dual
    /// objective `f` is a lower bound on the optimal `r²`.
    pub duality_gap: f64,
}

/// Support stack of the pivoting move-to-front algorithm, kept affinely
/// independent by Gram–Schmidt.
struct Basis {
    d: usize,
    m: usize,
    q0: Vec<f64>,
    z: Vec<f64>,
    f: Vec<f64>,
    v: Vec<Vec<f64>>,
    c: Vec<Vec<f64>>,
    sqr_r: Vec<f64>,
    current: usize,
    current_sqr_r: f64,
}

impl Basis {
    fn new(d: usize) -> Self {
        Basis {
            d,
            m: 0,
            q0: vec![0.0; d],
            z: vec![0.0; d + 1],
            f: vec![0.0; d + 1],
            v: vec![vec![0.0; d]; d + 1],
            c: vec![vec![0.0; d]; d + 1],
            sqr_r: vec![0.0; d + 1],
            current: 0,
            current_sqr_r: -1.0,
        }
    }

    fn center(&self) -> &[f64] {
        &self.c[self.current]
    }

    fn excess(&self, p: &[f64]) -> f64 {
        dist2(p, self.center()) - self.current_sqr_r
    }

    fn push(&mut self, p: &[f64]) -> bool {
        let m = self.m;
        if m > self.d {
            return false;
        }
        if m == 0 {
            self.q0.copy_from_slice(p);
            self.c[0].copy_from_slice(p);
            self.sqr_r[0] = 0.0;
        } else {
            let mut vm: Vec<f64> = p.iter().zip(&self.q0).map(|(x, y)| x - y).collect();
            let coef: Vec<f64> = (1..m).map(|i| 2.0 * dot(&self.v[i], &vm) / self.z[i]).collect();
            for (i, a) in (1..m).zip(coef) {
                for (x, y) in vm.iter_mut().zip(&self.v[i]) {
                    *x -= a * y;
                }
            }
            let z = 2.0 * norm2(&vm);
            if z < 1e-20 * self.current_sqr_r.max(0.0) || z == 0.0 {
                return false;
            }
            let e = dist2(p, &self.c[m - 1]) - self.sqr_r[m - 1];
            self.z[m] = z;
            self.f[m] = e / z;
            let cm: Vec<f64> = self.c[m - 1].iter().zip(&vm).map(|(c, v)| c + self.f[m] * v).collect();
            self.c[m] = cm;
            self.sqr_r[m] = self.sqr_r[m - 1] + e * self.f[m] / 2.0;
            self.v[m] = vm;
        }
        self.current = m;
        self.current_sqr_r = self.sqr_r[m];
        self.m += 1;
        true
    }

    fn pop(&mut self) {
        self.m -= 1;
    }
}

struct Miniball<'a> {
    pts: &'a [Vec<f64>],
    list: Vec<usize>,
    /// Element bounding the support prefix of `list`; `None` is the end.
    support_end: Option<usize>,
    basis: Basis,
}

impl<'a> Miniball<'a> {
    fn position(&self, elem: Option<usize>) -> usize {
        match elem {
            None => self.list.len(),
            Some(e) => self.list.iter().position(|&x| x == e).unwrap(),
        }
    }

    fn move_to_front(&mut self, j: usize) {
        let e = self.list[j];
        if self.support_end == Some(e) {
            self.support_end = self.list.get(j + 1).copied();
        }
        self.list.remove(j);
        self.list.insert(0, e);
    }

    fn mtf(&mut self, end: usize) {
        self.support_end = self.list.first().copied();
        if self.basis.m == self.basis.d + 1 {
            return;
        }
        let mut k = 0;
        while k < end {
            let j = k;
            k += 1;
            let p = &self.pts[self.list[j]];
            if self.basis.excess(p) > 0.0 && self.basis.push(p) {
                self.mtf(j);
                self.basis.pop();
                self.move_to_front(j);
            }
        }
    }

    fn pivot(&mut self) {
        let n = self.list.len();
        let mut t = self.list.get(1).copied();
        self.mtf(1);
        loop {
            let mut max_e = 0.0;
            let mut pivot = None;
            for k in self.position(t)..n {
                let e = self.basis.excess(&self.pts[self.list[k]]);
                if e > max_e {
                    max_e = e;
                    pivot = Some(self.list[k]);
                }
            }
            let Some(pe) = pivot else { break };
            t = self.support_end;
            if t == Some(pe) {
                t = self.list.get(self.position(t) + 1).copied();
            }
            let old = self.basis.current_sqr_r;
            self.basis.push(&self.pts[pe]);
            let end = self.position(self.support_end);
            self.mtf(end);
            self.basis.pop();
            let pos = self.position(Some(pe));
            self.move_to_front(pos);
            if self.basis.current_sqr_r <= old {
                break;
            }
        }
    }
}

/// Smallest enclosing ball, by the pivoting move-to-front scheme. The dual
/// weights on the support give the recorded duality gap.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> Ball {
    assert!(!points.is_empty(), "enclosing ball of an empty set");
    let d = points[0].len();
    if d == 0 || points.len() == 1 {
        return Ball { center: points[0].clone(), radius: 0.0, support: vec![0], duality_gap: 0.0 };
    }
    let mut mb = Miniball { pts: points, list: (0..points.len()).collect(), support_end: None, basis: Basis::new(d) };
    mb.pivot();
    let pivoted = mb.basis.center().to_vec();
    let warm = min_enclosing_ball_frank_wolfe(points, 2000, 1e-12).center;
    // Every centre gives an upper bound, so keep the smallest.
    let mut candidates = vec![pivoted.clone()];
    candidates.extend(polish(points, &pivoted));
    candidates.extend(polish(points, &warm));
    candidates.push(warm);
    candidates
        .into_iter()
        .map(|c| finish_ball(points, c))
        .min_by(|a, b| a.radius.total_cmp(&b.radius))
        .unwrap()
}

/// Active-set refinement: circumcentre of the working set within its
/// affine hull, dropping negative weights and adding the farthest violator.
fn polish(points: &[Vec<f64>], start: &[f64]) -> Option<Vec<f64>> {
    let n = points.len();
    let d2: Vec<f64> = points.iter().map(|p| dist2(p, start)).collect();
    let r2 = d2.iter().cloned().fold(0.0, f64::max);
    let scale = r2.max(1e-300);
    let mut set: Vec<usize> = (0..n).filter(|&i| d2[i] >= r2 * (1.0 - 1e-4)).collect();
    for _ in 0..10 * n {
        let sub: Vec<Vec<f64>> = set.iter().map(|&i| points[i].clone()).collect();
        let (c, r, _) = circumcenter(&sub);
        let (w, _) = affine_weights(points, &set, &c);
        let (worst, wmin) = w.iter().enumerate().fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
        if wmin < -1e-13 && set.len() > 1 {
            set.remove(worst);
            continue;
        }
        let (far, fd) = points
            .iter()
            .map(|p| dist2(p, &c))
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if fd > r * r + 1e-14 * scale {
            if set.contains(&far) {
                return None;
            }
            set.push(far);
            continue;
        }
        return Some(c);
    }
    None
}

fn finish_ball(points: &[Vec<f64>], center: Vec<f64>) -> Ball {
    let d2: Vec<f64> = points.iter().map(|p| dist2(p, &center)).collect();
    let r2 = d2.iter().cloned().fold(0.0, f64::max);
    let radius = r2.sqrt();
    let support: Vec<usize> = (0..points.len()).filter(|&i| radius - d2[i].sqrt() <= 1e-9 * radius.max(1e-300)).collect();
    let w = barycentric(points, &support, &center);
    let duality_gap = (r2 - dual_value(points, &support, &w)).max(0.0);
    Ball { center, radius, support, duality_gap }
}

/// Least-squares affine weights of `x` on the given points; negative
/// entries are clipped and the rest renormalized.
fn barycentric(points: &[Vec<f64>], idx: &[usize], x: &[f64]) -> Vec<f64> {
    let (w, _) = affine_weights(points, idx, x);
    let clipped: Vec<f64> = w.iter().map(|v| v.max(0.0)).collect();
    let s: f64 = clipped.iter().sum();
    if s > 0.0 {
        clipped.iter().map(|v| v / s).collect()
    } else {
        vec![1.0 / idx.len() as f64; idx.len()]
    }
}

/// Weights `w` (summing to one) minimizing `|Σ wᵢ pᵢ − x|`, and that residual.
fn affine_weights(points: &[Vec<f64>], idx: &[usize], x: &[f64]) -> (Vec<f64>, f64) {
    let p0 = &points[idx[0]];
    let m = idx.len() - 1;
    if m == 0 {
        return (vec![1.0], dist2(p0, x).sqrt());
    }
    let d = p0.len();
    let q = DMatrix::from_fn(d, m, |r, c| points[idx[c + 1]][r] - p0[r]);
    let rhs = DVector::from_fn(d, |r, _| x[r] - p0[r]);
    let y = lstsq(q.clone(), &rhs);
    let resid = (&q * &y - &rhs).norm();
    let mut w = Vec::with_capacity(m + 1);
    w.push(1.0 - y.sum());
    w.extend(y.iter());
    (w, resid)
}

fn lstsq(a: DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let svd = SVD::new(a, true, true);
    let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.solve(b, 1e-10 * top.max(1e-300)).expect("both factors were computed")
}

fn dual_value(points: &[Vec<f64>], idx: &[usize], w: &[f64]) -> f64 {
    let d = points[0].len();
    let mut mean = vec![0.0; d];
    let mut sq = 0.0;
    for (&i, &wi) in idx.iter().zip(w) {
        sq += wi * norm2(&points[i]);
        for (m, x) in mean.iter_mut().zip(&points[i]) {
            *m += wi * x;
        }
    }
    sq - norm2(&mean)
}

/// Conditional-gradient iterations on the dual of the enclosing-ball
/// problem, stopping at relative gap `gap_tol`. Slower than
/// [`min_enclosing_ball`] but entirely independent of it.
pub fn min_enclosing_ball_frank_wolfe(points: &[Vec<f64>], max_iter: usize, gap_tol: f64) -> Ball {
    let n = points.len();
    let d = points[0].len();
    let mut lambda = vec![0.0; n];
    lambda[0] = 1.0;
    let mut c = points[0].clone();
    let scale = points.iter().map(|p| dist2(p, &points[0])).fold(0.0, f64::max).max(1e-300);
    let mut gap = f64::INFINITY;
    for _ in 0..max_iter {
        let d2: Vec<f64> = points.iter().map(|p| dist2(p, &c)).collect();
        let (j, &far) = d2.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).unwrap();
        let f: f64 = lambda.iter().zip(&d2).map(|(l, v)| l * v).sum();
        gap = far - f;
        if gap <= gap_tol * scale || far == 0.0 {
            break;
        }
        let step = (gap / (2.0 * far)).clamp(0.0, 1.0);
        for l in lambda.iter_mut() {
            *l *= 1.0 - step;
        }
        lambda[j] += step;
        for k in 0..d {
            c[k] = (1.0 - step) * c[k] + step * points[j][k];
        }
    }
    let r2 = points.iter().map(|p| dist2(p, &c)).fold(0.0, f64::max);
    let support = (0..n).filter(|&i| lambda[i] > 0.0).collect();
    Ball { center: c, radius: r2.sqrt(), support, duality_gap: gap.max(0.0) }
}

/// Centre of the sphere through all points within their affine hull, its
/// radius, and the largest deviation of a point distance from that radius.
pub fn circumcenter(points: &[Vec<f64>]) -> (Vec<f64>, f64, f64) {
    let n = points.len();
    let p0 = &points[0];
    if n == 1 {
        return (p0.clone(), 0.0, 0.0);
    }
    let d = p0.len();
    let m = n - 1;
    let q = DMatrix::from_fn(d, m, |r, c| points[c + 1][r] - p0[r]);
    let gram = q.transpose() * &q;
    let rhs = DVector::from_fn(m, |i, _| 0.5 * gram[(i, i)]);
    let y = lstsq(gram, &rhs);
    let off = &q * y;
    let center: Vec<f64> = (0..d).map(|r| p0[r] + off[r]).collect();
    let dists: Vec<f64> = points.iter().map(|p| dist2(p, &center).sqrt()).collect();
    let r = dists.iter().sum::<f64>() / n as f64;
    let dev = dists.iter().map(|x| (x - r).abs()).fold(0.0, f64::max);
    (center, r, dev)
}

/// Enclosing radius of the configuration with distances `√2` and `x`.
pub fn phi(g: &Graph, x: f64) -> Result<f64> {
    phi_with(g, x, &Tolerances::default())
}

pub fn phi_with(g: &Graph, x: f64, tol: &Tolerances) -> Result<f64> {
    let a = std::f64::consts::SQRT_2;
    if x.is_nan() || x < a * (1.0 - 1e-15) {
        return Err(Error::OutOfRange(format!("x = {x} is below sqrt(2)")));
    }
    let cfg = realize_with(g, x, a, tol)?;
    Ok(min_enclosing_ball(&cfg.points).radius)
}

/// The `x` with `Φ(x) = r`.
pub fn solve_phi(g: &Graph, r: f64) -> Result<f64> {
    if g.is_complete() {
        return Err(Error::CompleteGraph(g.n()));
    }
    let (tau1, _) = tau1_of(&cm_polynomials(g).0);
    Ok(solve_phi_bracket(g, r, tau1.as_ref(), &Tolerances::default())?.0)
}

/// Square root of `2t` for `t` a rational lower bound of τ₁ within 1e-14.
fn window_top(tau1: &AlgebraicReal) -> f64 {
    let a = tau1.refine(&BigRational::new(BigInt::from(1), BigInt::from(10).pow(14)));
    (2.0 * rational_to_f64(a.lo())).sqrt()
}

/// Bisection for `Φ(x) = r` given τ₁; returns the midpoint and half-width
/// of the final bracket.
pub fn solve_phi_bracket(g: &Graph, r: f64, tau1: Option<&AlgebraicReal>, tol: &Tolerances) -> Result<(f64, f64)> {
    let n = g.n();
    if g.is_complete() {
        return Err(Error::CompleteGraph(n));
    }
    let floor = ((n - 1) as f64 / n as f64).sqrt();
    if !(r > floor && r <= 1.0) {
        return Err(Error::OutOfRange(format!("radius {r} outside ({floor}, 1]")));
    }
    let mut lo = std::f64::consts::SQRT_2;
    let mut hi;
    match tau1 {
        Some(t) => {
            hi = window_top(t);
            if phi_with(g, hi, tol)? < r {
                return Ok((hi, 0.0));
            }
        }
        None => {
            hi = 2.0 * lo;
            let mut steps = 0;
            while phi_with(g, hi, tol)? < r {
                lo = hi;
                hi *= 2.0;
                steps += 1;
                if steps > 200 {
                    return Err(Error::Geometry("enclosing radius never reached the target".into()));
                }
            }
        }
    }
    while hi - lo > tol.bisection * hi {
        let mid = 0.5 * (lo + hi);
        if phi_with(g, mid, tol)? < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// `x` at which the configuration with distances `√2`, `x` has enclosing
/// radius one; for exact J-spherical graphs it is `√(2τ₁)`.
pub fn beta_star_numeric(g: &Graph) -> Result<f64> {
    beta_star_with(g, &Settings::default())
}

pub fn beta_star_with(g: &Graph, settings: &Settings) -> Result<f64> {
    if g.is_complete() {
        return Err(Error::CompleteGraph(g.n()));
    }
    let (c, m) = cm_polynomials(g);
    let (tau1, mu) = tau1_of(&c);
    let r = circumradius_from(&c, &m, tau1.as_ref(), mu, settings)?;
    if r == RSquared::Half {
        let t = tau1.expect("finite τ₁ when 𝓡² = 1/2");
        return Ok((2.0 * t.to_f64()).sqrt());
    }
    Ok(solve_phi_bracket(g, 1.0, tau1.as_ref(), &settings.tol)?.0)
}

/// The J-spherical representation: on the unit sphere about the origin,
/// short distance `√2`, long distance β*.
pub fn jspherical_embedding(g: &Graph) -> Result<PointConfig> {
    jspherical_embedding_with(g, &Settings::default())
}

pub fn jspherical_embedding_with(g: &Graph, settings: &Settings) -> Result<PointConfig> {
    let b = beta_star_with(g, settings)?;
    let mut cfg = realize_with(g, b, std::f64::consts::SQRT_2, &settings.tol)?;
    let ball = min_enclosing_ball(&cfg.points);
    for p in cfg.points.iter_mut() {
        for (x, c) in p.iter_mut().zip(&ball.center) {
            *x -= c;
        }
    }
    let dev = cfg.sphere_deviation();
    if dev > settings.tol.distance {
        return Err(Error::Geometry(format!("embedding deviates from the unit sphere by {dev:e}")));
    }
    Ok(cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorType {
    /// The origin lies in the convex hull.
    I,
    /// The origin lies off the affine hull.
    II,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFactor {
    pub indices: Vec<usize>,
    pub kind: FactorType,
    /// Dimension of the linear span.
    pub rank: usize,
    /// Affine weights of the projection of the origin.
    pub weights: Vec<f64>,
    /// Distance from the origin to the affine hull.
    pub residual: f64,
    /// The origin sits on the boundary of the hull (some weight ≈ 0).
    pub boundary_tie: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFactorization {
    pub factors: Vec<PointFactor>,
    /// Number of Type I factors.
    pub k: usize,
    /// Dimension of the linear span of the whole set.
    pub dimension: usize,
}

fn linear_rank(points: &[Vec<f64>], idx: &[usize], tol: f64) -> usize {
    let d = points[0].len();
    if d == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(idx.len(), d, |r, c| points[idx[r]][c]);
    let svd = SVD::new(m, false, false);
    svd.singular_values.iter().filter(|&&s| s > tol).count()
}

/// Split a spherical point set with minimum distance `√2` into orthogonal
/// join factors, labelled Type I or II.
pub fn kuperberg_decompose(cfg: &PointConfig) -> Result<PointFactorization> {
    let tol = cfg.tol;
    let n = cfg.n();
    let sqrt2 = std::f64::consts::SQRT_2;
    let dev = cfg.sphere_deviation();
    if dev > tol {
        return Err(Error::Geometry(format!("points deviate from the unit sphere by {dev:e}")));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = cfg.dist(i, j);
            if d < sqrt2 - tol {
                return Err(Error::Geometry(format!("distance {d} between points {i} and {j} is below sqrt(2)")));
            }
            if d <= sqrt2 + tol {
                edges.push((i, j));
            }
        }
    }
    let gamma = Graph::from_edges(n, &edges)?;
    let parts = gamma.complement_component_vertices();
    let pts = &cfg.points;
    for (a, pa) in parts.iter().enumerate() {
        for pb in &parts[a + 1..] {
            for &i in pa {
                for &j in pb {
                    let ip = dot(&pts[i], &pts[j]);
                    if ip.abs() > tol {
                        return Err(Error::Geometry(format!("points {i} and {j} lie in different factors but are not orthogonal ({ip:e})")));
                    }
                }
            }
        }
    }
    let origin = vec![0.0; cfg.dim()];
    let mut factors = Vec::with_capacity(parts.len());
    for idx in parts {
        let (weights, residual) = affine_weights(pts, &idx, &origin);
        let rank = linear_rank(pts, &idx, 1e-7);
        let (kind, boundary_tie) = if residual > tol {
            (FactorType::II, false)
        } else if weights.iter().all(|&w| w >= -tol) {
            (FactorType::I, weights.iter().any(|&w| w.abs() <= tol))
        } else {
            return Err(Error::Geometry(format!(
                "factor {idx:?} has the origin in its affine hull but outside its convex hull"
            )));
        };
        factors.push(PointFactor { indices: idx, kind, rank, weights, residual, boundary_tie });
    }
    let k = factors.iter().filter(|f| f.kind == FactorType::I).count();
    let all: Vec<usize> = (0..n).collect();
    let dimension = linear_rank(pts, &all, 1e-7);
    if n != dimension + k {
        return Err(Error::Geometry(format!("{n} points span dimension {dimension} with {k} Type I factors")));
    }
    Ok(PointFactorization { factors, k, dimension })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps
    }

    #[test]
    fn realize_examples() {
        let k3 = Graph::complete(3).unwrap();
        let c = realize(&k3, 5.0, 1.0).unwrap();
        assert_eq!(c.rank, 2);
        assert!(c.distance_residual(&k3) < 1e-12);
        let sq = Graph::cycle(4).unwrap();
        let c = realize(&sq, 2f64.sqrt(), 1.0).unwrap();
        assert_eq!(c.rank, 2);
        let p3 = Graph::path(3).unwrap();
        let c = realize(&p3, 2.0, 1.0).unwrap();
        assert_eq!(c.rank, 1);
        assert!(c.distance_residual(&p3) < 1e-12);
        assert!(matches!(realize(&p3, 2.5, 1.0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn ball_examples() {
        let s = 2f64.sqrt();
        let tri = vec![vec![0.0, 0.0], vec![s, 0.0], vec![s / 2.0, s * 3f64.sqrt() / 2.0]];
        assert!(close(min_enclosing_ball(&tri).radius, (2.0f64 / 3.0).sqrt(), 1e-12));
        let obtuse = vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![1.0, 1.0]];
        let b = min_enclosing_ball(&obtuse);
        assert!(close(b.radius, 2.0, 1e-12) && close(b.center[0], 2.0, 1e-12) && close(b.center[1], 0.0, 1e-12));
        assert_eq!(b.support, vec![0, 1]);
        let square = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        let b = min_enclosing_ball(&square);
        assert!(close(b.radius, 0.5f64.sqrt(), 1e-12));
        assert!(b.duality_gap < 1e-12);
    }

    #[test]
    fn phi_examples() {
        let p3 = Graph::path(3).unwrap();
        assert!(close(phi(&p3, 2f64.sqrt()).unwrap(), (2.0f64 / 3.0).sqrt(), 1e-12));
        assert!(close(phi(&p3, 2.0).unwrap(), 1.0, 1e-9));
        let e3 = Graph::empty(3).unwrap();
        assert!(close(phi(&e3, 3f64.sqrt()).unwrap(), 1.0, 1e-12));
        assert!(close(solve_phi(&e3, 1.0).unwrap(), 3f64.sqrt(), 1e-10));
        assert!(close(solve_phi(&Graph::cycle(4).unwrap(), 1.0).unwrap(), 2.0, 1e-10));
        assert!(close(beta_star_numeric(&p3).unwrap(), 2.0, 1e-10));
    }

    #[test]
    fn triangle_decomposition() {
        let cfg = PointConfig {
            points: vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]],
            a: 2f64.sqrt(),
            b: 2.0,
            rank: 2,
            tol: 1e-8,
        };
        let f = kuperberg_decompose(&cfg).unwrap();
        assert_eq!(f.k, 1);
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].indices, vec![0, 1]);
        assert_eq!(f.factors[0].kind, FactorType::I);
        assert_eq!(f.factors[1].kind, FactorType::II);
    }
}
