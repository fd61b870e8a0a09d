//! Certified real algebraic numbers.
//!
//! An [`AlgebraicReal`] is a squarefree integer polynomial together with an
//! open rational interval holding exactly one of its real roots. Root
//! isolation uses Sturm sequences; refinement is bisection with exact sign
//! tests, so no floating point enters any decision made here.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{squarefree_decomposition, IntPolynomial, QPoly};

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut seq = vec![p.to_q()];
        let d = seq[0].derivative();
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let k = seq.len();
            let r = seq[k - 2].rem(&seq[k - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        SturmChain { seq }
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(QPoly::leading_sign))
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots in `(lo, +inf)`.
    pub fn count_roots_above(&self, lo: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// Cauchy bound: every real root has absolute value below the result.
pub fn root_bound(p: &IntPolynomial) -> BigRational {
    let lc = p.leading_coeff().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap_or_default();
    BigRational::from_integer(BigInt::one() + max / &lc + BigInt::one())
}

#[derive(Clone)]
pub struct AlgebraicReal {
    defining: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    /// Build from a squarefree polynomial and an isolating interval; the
    /// invariants are checked exactly.
    pub fn new(defining: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if defining.degree().unwrap_or(0) == 0 {
            return Err(Error::OutOfRange("defining polynomial must be nonconstant".into()));
        }
        if lo >= hi {
            return Err(Error::OutOfRange("isolating interval must have lo < hi".into()));
        }
        if defining.sign_at(&lo) == Ordering::Equal || defining.sign_at(&hi) == Ordering::Equal {
            return Err(Error::OutOfRange("interval endpoints must not be roots".into()));
        }
        let chain = SturmChain::new(&defining);
        if chain.count_roots(&lo, &hi) != 1 {
            return Err(Error::OutOfRange("interval must isolate exactly one root".into()));
        }
        Ok(AlgebraicReal { defining: defining.primitive_part(), lo, hi })
    }

    /// An exact rational as an algebraic number with a unit-width interval.
    pub fn from_rational(r: &BigRational) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        AlgebraicReal {
            defining: IntPolynomial::linear_root(r).primitive_part(),
            lo: r - &half,
            hi: r + &half,
        }
    }

    pub fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The value when it is rational (linear defining polynomial).
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.defining.degree() == Some(1)).then(|| {
            BigRational::new(-self.defining.coeff(0), self.defining.coeff(1))
        })
    }

    /// The value when it is rational, whatever the defining polynomial.
    ///
    /// A rational root `p/q` has `q` dividing the leading coefficient `L`,
    /// and two such fractions differ by at least `1/L²`; on an interval
    /// narrower than that the simplest fraction is the only candidate.
    pub fn rational_value(&self) -> Option<BigRational> {
        if let Some(r) = self.as_rational() {
            return Some(r);
        }
        let lead = self.defining.leading_coeff()?.abs();
        let narrow = BigRational::new(BigInt::one(), &lead * &lead * BigInt::from(2));
        let a = self.refine(&narrow);
        let r = simplest_between(&a.lo, &a.hi, 0)?;
        (r.denom() <= &lead && self.defining.sign_at(&r) == Ordering::Equal).then_some(r)
    }

    /// Same root, interval width at most `width`; endpoints stay non-roots.
    pub fn refine(&self, width: &BigRational) -> AlgebraicReal {
        assert!(width.is_positive(), "refinement width must be positive");
        if let Some(r) = self.as_rational() {
            return self.refine_rational(&r, width);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let lo_sign = self.defining.sign_at(&lo);
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            match self.defining.sign_at(&mid) {
                Ordering::Equal => {
                    // Hit the root exactly: recentre a small interval on it.
                    let r = mid;
                    let d = (&hi - &lo).min(width.clone()) / BigRational::from_integer(4.into());
                    return AlgebraicReal { defining: self.defining.clone(), lo: &r - &d, hi: &r + &d };
                }
                s if s == lo_sign => lo = mid,
                _ => hi = mid,
            }
        }
        AlgebraicReal { defining: self.defining.clone(), lo, hi }
    }

    fn refine_rational(&self, r: &BigRational, width: &BigRational) -> AlgebraicReal {
        if self.width() <= *width {
            return self.clone();
        }
        let four = BigRational::from_integer(4.into());
        let d = width.clone().min(self.width()) / four;
        AlgebraicReal { defining: self.defining.clone(), lo: r - &d, hi: r + &d }
    }

    /// Refine to width at most `2^-bits`.
    pub fn refine_bits(&self, bits: u32) -> AlgebraicReal {
        self.refine(&BigRational::new(BigInt::one(), BigInt::one() << bits))
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Double approximation (midpoint of a 2^-60 enclosure).
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return rational_to_f64(&r);
        }
        rational_to_f64(&self.refine_bits(60).midpoint())
    }

    pub fn enclosure_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }

    fn sign_change_in(&self, p: &IntPolynomial) -> bool {
        let a = p.sign_at(&self.lo);
        let b = p.sign_at(&self.hi);
        a != Ordering::Equal && b != Ordering::Equal && a != b
    }

    /// `1/x`, defined for nonzero values.
    pub fn recip(&self) -> Option<AlgebraicReal> {
        let zero = BigRational::zero();
        let mut a = self.clone();
        if self.defining.sign_at(&zero) == Ordering::Equal && self.contains_rational(&zero) {
            return None;
        }
        while a.lo <= zero && a.hi >= zero {
            a = a.refine(&(a.width() / BigRational::from_integer(2.into())));
        }
        let d = a.defining.degree().unwrap();
        let defining = a.defining.reciprocal(d).primitive_part();
        let (lo, hi) = (a.hi.recip(), a.lo.recip());
        Some(AlgebraicReal { defining, lo, hi })
    }

    /// Whether the rational `r` equals this number.
    pub fn equals_rational(&self, r: &BigRational) -> bool {
        self.contains_rational(r) && self.defining.sign_at(r) == Ordering::Equal
    }

    fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo < *r && *r < self.hi
    }

    /// Exact equality of two algebraic numbers.
    pub fn exact_eq(&self, other: &AlgebraicReal) -> bool {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        if lo >= hi {
            return false;
        }
        let g = crate::poly::gcd(&self.defining, &other.defining);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // g divides both defining polynomials, so its only possible root in
        // the intersection is the common value; endpoints are non-roots.
        SturmChain::new(&g).count_roots(&lo, &hi) == 1
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if self.exact_eq(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            let half = BigRational::from_integer(2.into());
            a = a.refine(&(a.width() / &half));
            b = b.refine(&(b.width() / &half));
        }
    }

    /// Rational enclosure of `p` at this number, via interval Horner on the
    /// isolating interval.
    pub fn eval_enclosure(&self, p: &IntPolynomial) -> (BigRational, BigRational) {
        eval_interval(p, &self.lo, &self.hi)
    }
}

/// Equality of the represented numbers, not of the enclosures.
impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.exact_eq(other)
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraicReal(root of {} in ({}, {}) ~ {})",
            self.defining,
            self.lo,
            self.hi,
            self.to_f64()
        )
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Scale huge numerators/denominators down before dividing.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// The fraction with the smallest denominator in the open interval `(lo, hi)`.
fn simplest_between(lo: &BigRational, hi: &BigRational, depth: usize) -> Option<BigRational> {
    if depth > 4096 {
        return None;
    }
    let fl = lo.floor();
    let next = &fl + BigRational::one();
    if &next < hi {
        return Some(next);
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    // Now fl < lo < hi ≤ fl + 1, or lo = fl.
    let inner = if frac_lo.is_zero() {
        (frac_hi.recip().floor()) + BigRational::one()
    } else {
        simplest_between(&frac_hi.recip(), &frac_lo.recip(), depth + 1)?
    };
    Some(fl + inner.recip())
}

/// Decimal with `digits` significant digits, rounded toward −∞ (`up =
/// false`) or +∞ (`up = true`), so `[decimal(lo, d, false), decimal(hi, d,
/// true)]` still encloses whatever `[lo, hi]` does.
pub fn decimal(r: &BigRational, digits: u32, up: bool) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let ten = BigRational::from_integer(BigInt::from(10));
    // `e` with 10^e ≤ |r| < 10^(e+1).
    let mag = r.abs();
    let mut e = (rational_to_f64(&mag).log10().floor() as i64).clamp(-100_000, 100_000);
    while pow10(&ten, e) > mag {
        e -= 1;
    }
    while pow10(&ten, e + 1) <= mag {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = r * pow10(&ten, shift);
    let mut m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let mut shift = shift;
    while !m.is_zero() && (&m % 10u32).is_zero() && shift > 0 {
        m /= 10u32;
        shift -= 1;
    }
    let neg = m.is_negative();
    let body = m.abs().to_string();
    let text = if shift <= 0 {
        format!("{body}{}", "0".repeat((-shift) as usize))
    } else if (shift as usize) < body.len() {
        let (a, b) = body.split_at(body.len() - shift as usize);
        format!("{a}.{b}")
    } else {
        format!("0.{}{body}", "0".repeat(shift as usize - body.len()))
    };
    if neg { format!("-{text}") } else { text }
}

fn pow10(ten: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(ten.clone(), e as usize)
    } else {
        num_traits::pow(ten.clone(), (-e) as usize).recip()
    }
}

/// Interval Horner evaluation over the closed rational interval `[lo, hi]`.
pub fn eval_interval(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let min = prods.iter().min().unwrap().clone();
        let max = prods.iter().max().unwrap().clone();
        let c = BigRational::from_integer(c.clone());
        a = min + &c;
        b = max + c;
    }
    (a, b)
}

/// Isolate the smallest root of the squarefree `f` strictly above `bound`,
/// returning an interval `(lo, hi)` with `bound < lo`, nonzero endpoints and
/// exactly one root inside.
fn smallest_isolated_root_above(f: &IntPolynomial, bound: &BigRational) -> Option<AlgebraicReal> {
    let chain = SturmChain::new(f);
    if chain.count_roots_above(bound) == 0 {
        return None;
    }
    let two = BigRational::from_integer(2.into());
    let mut lo = bound.clone();
    let mut hi = root_bound(f).max(bound + BigRational::one());
    while chain.count_roots(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if chain.count_roots(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    loop {
        if f.sign_at(&hi) == Ordering::Equal {
            // The root is exactly `hi`; widen to the right until clear.
            let left = (&hi - &lo) / &two;
            let mut right = left.clone();
            while chain.count_roots(&hi, &(&hi + &right)) != 0
                || f.sign_at(&(&hi + &right)) == Ordering::Equal
            {
                right /= &two;
            }
            return Some(AlgebraicReal { defining: f.clone(), lo: &hi - &left, hi: &hi + &right });
        }
        if lo > *bound && f.sign_at(&lo) != Ordering::Equal {
            return Some(AlgebraicReal { defining: f.clone(), lo, hi });
        }
        let mid = (&lo + &hi) / &two;
        if chain.count_roots(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Smallest real root of `p` strictly greater than `bound`, with its
/// multiplicity in `p`. The defining polynomial of the result is the
/// squarefree factor of `p` that carries the root. `None` when every real
/// root is at most `bound`.
pub fn smallest_root_greater_than(
    p: &IntPolynomial,
    bound: &BigRational,
) -> Result<Option<(AlgebraicReal, usize)>> {
    let factors = squarefree_decomposition(p)?;
    let mut best: Option<(AlgebraicReal, usize)> = None;
    for (f, k) in factors {
        let Some(root) = smallest_isolated_root_above(&f, bound) else {
            continue;
        };
        best = match best {
            None => Some((root, k)),
            Some((cur, ck)) => {
                // Factors are coprime, so the two roots differ.
                if root.cmp_exact(&cur) == Ordering::Less {
                    Some((root, k))
                } else {
                    Some((cur, ck))
                }
            }
        };
    }
    Ok(best)
}

/// Exact multiplicity of the algebraic number `a` as a root of `p`.
///
/// Repeatedly divides out `gcd(p, defining(a))` while that gcd still vanishes
/// on `a`'s isolating interval.
pub fn multiplicity_at(p: &IntPolynomial, a: &AlgebraicReal) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut cur = p.clone();
    let mut k = 0;
    loop {
        let g = crate::poly::gcd(&cur, a.defining());
        if g.degree().unwrap_or(0) == 0 || !a.sign_change_in(&g) {
            return Ok(k);
        }
        cur = cur
            .divide_up_to_constant(&g)
            .expect("gcd divides its argument");
        k += 1;
    }
}
