//! Exact univariate polynomials over the integers.
//!
//! [`IntPolynomial`] is the public value type. Division, gcd and the
//! squarefree decomposition run over the rationals ([`QPoly`]) and hand back
//! primitive integer polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::new(vec![c.into()])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `c t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        IntPolynomial::new(coeffs)
    }

    /// `t - r` scaled to integers: `q t - p` for `r = p/q`.
    pub fn linear_root(r: &BigRational) -> Self {
        IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    /// Sign at a rational point, via the homogenised integer evaluation
    /// `sum c_i p^i q^(d-i)` with `q > 0`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let (p, q) = (x.numer(), x.denom());
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for c in self.coeffs[..d].iter().rev() {
            qpow *= q;
            acc = acc * p + c * &qpow;
        }
        acc.cmp(&BigInt::zero())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPolynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPolynomial::constant(1), |acc, _| &acc * self)
    }

    /// `t^e p(1/t)`. Requires `deg p <= e`.
    pub fn reciprocal(&self, e: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= e), "degree exceeds reciprocal exponent");
        let mut coeffs = vec![BigInt::zero(); e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[e - i] = c.clone();
        }
        IntPolynomial::new(coeffs)
    }

    /// `p(k t)` for an integer `k`.
    pub fn rescale_argument(&self, k: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow *= k;
        }
        IntPolynomial::new(coeffs)
    }

    pub(crate) fn to_q(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().cloned().map(BigRational::from).collect())
    }

    /// Exact quotient when `d` divides `self` over the rationals, returned as
    /// a primitive integer polynomial (so only determined up to a constant).
    pub fn divide_up_to_constant(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.to_q().div_rem(&d.to_q());
        r.is_zero().then(|| q.to_primitive_int())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Rational polynomial used internally for exact division and gcds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub(crate) fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Sign of the leading coefficient (the sign at `+inf`).
    pub(crate) fn leading_sign(&self) -> Ordering {
        self.coeffs
            .last()
            .map_or(Ordering::Equal, |c| c.cmp(&BigRational::zero()))
    }

    pub(crate) fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub(crate) fn sub(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub(crate) fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub(crate) fn monic(&self) -> QPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => QPoly::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub(crate) fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (QPoly::new(Vec::new()), QPoly::new(Vec::new()));
        };
        if nd < dd {
            return (QPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub(crate) fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub(crate) fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clear denominators and content; leading coefficient positive.
    pub(crate) fn to_primitive_int(&self) -> IntPolynomial {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        IntPolynomial::new(ints).primitive_part()
    }
}

/// Monic-normalised gcd of two integer polynomials as a primitive integer
/// polynomial with positive leading coefficient.
pub fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a.to_q().gcd(&b.to_q()).to_primitive_int()
}

/// Squarefree decomposition by Yun's algorithm.
///
/// Returns `(factor, k)` pairs with pairwise coprime squarefree factors,
/// strictly increasing `k`, and `prod factor^k = p` up to a rational
/// constant. Each factor is primitive with positive leading coefficient.
/// A nonzero constant has the empty decomposition.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Result<Vec<(IntPolynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let f = p.to_q();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut k = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.to_primitive_int(), k));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        k += 1;
    }
    Ok(out)
}

/// Squarefree part `p / gcd(p, p')`, primitive.
pub fn squarefree_part(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = p.to_q();
    let g = f.gcd(&f.derivative());
    Ok(f.div_rem(&g).0.to_primitive_int())
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact determinant of a square matrix of integer polynomials.
///
/// The matrix is evaluated at `D + 1` integer points, where `D` is the sum of
/// the per-row maximal entry degrees (an a-priori bound on the degree of the
/// determinant); each integer determinant is computed by Bareiss elimination
/// and the results are interpolated exactly.
pub fn det_poly_matrix(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let bound: usize = m
        .iter()
        .map(|row| row.iter().filter_map(IntPolynomial::degree).max().unwrap_or(0))
        .sum();
    let xs: Vec<BigInt> = (0..=bound as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            let ints = m
                .iter()
                .map(|row| row.iter().map(|p| p.eval_int(x)).collect())
                .collect();
            bareiss_determinant(ints)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through integer points; the result must have integer
/// coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPolynomial {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    // Expand sum dd[i] * prod_{j<i} (t - x_j) by Horner from the top.
    let mut acc = QPoly::new(vec![dd[n - 1].clone()]);
    for i in (0..n - 1).rev() {
        let mut shifted = vec![BigRational::zero()];
        shifted.extend(acc.coeffs.iter().cloned());
        let xi = BigRational::from_integer(xs[i].clone());
        let scaled: Vec<BigRational> = acc.coeffs.iter().map(|c| c * &xi).collect();
        let mut coeffs = shifted;
        for (k, s) in scaled.into_iter().enumerate() {
            coeffs[k] -= s;
        }
        coeffs[0] += &dd[i];
        acc = QPoly::new(coeffs);
    }
    IntPolynomial::new(
        acc.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated determinant is not integral");
                c.to_integer()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_poly_matrix(&[vec![IntPolynomial::t()]]), IntPolynomial::t());
        let m = vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0])]];
        assert_eq!(det_poly_matrix(&m), p(&[-1]));
        // squared-distance matrix of the path on three vertices
        let t = IntPolynomial::t();
        let m = vec![
            vec![p(&[0]), p(&[1]), t.clone()],
            vec![p(&[1]), p(&[0]), p(&[1])],
            vec![t, p(&[1]), p(&[0])],
        ];
        assert_eq!(det_poly_matrix(&m), p(&[0, 2]));
    }

    #[test]
    fn bareiss_matches_small_cases() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(6));
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(bareiss_determinant(m), BigInt::from(-1));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decomposition(&p(&[0, -4, 1])).unwrap(), vec![(p(&[0, -4, 1]), 1)]);
        assert_eq!(squarefree_decomposition(&p(&[0, 0, 0, 1])).unwrap(), vec![(p(&[0, 1]), 3)]);
        // (t-2)^2 t^2
        let q = &p(&[0, -2, 1]) * &p(&[0, -2, 1]);
        assert_eq!(squarefree_decomposition(&q).unwrap(), vec![(p(&[0, -2, 1]), 2)]);
        // (t-1)(t+2)^3 scaled by -6
        let q = &(&p(&[-1, 1]) * &p(&[2, 1]).pow(3)) * &p(&[-6]);
        assert_eq!(
            squarefree_decomposition(&q).unwrap(),
            vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 3)]
        );
        assert_eq!(squarefree_decomposition(&p(&[5])).unwrap(), vec![]);
        assert_eq!(squarefree_decomposition(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_and_reciprocal() {
        assert_eq!(p(&[0, 8, -4]).to_string(), "-4t^2 + 8t");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(p(&[0, -4, 1]).reciprocal(2), p(&[1, -4]));
    }

    #[test]
    fn sign_at_rationals() {
        let q = p(&[-2, 0, 1]);
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(q.sign_at(&r(3, 2)), Ordering::Greater);
        assert_eq!(q.sign_at(&r(7, 5)), Ordering::Less);
        assert_eq!(q.sign_at(&r(2, 1)), Ordering::Greater);
        assert_eq!(p(&[-4, 0, 1]).sign_at(&r(2, 1)), Ordering::Equal);
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[-1, 1]) * &p(&[3, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 2]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(a.divide_up_to_constant(&p(&[3, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.divide_up_to_constant(&p(&[4, 1])), None);
    }
}
