//! Arithmetic backends: exact Gaussian rationals and complex binary64 floats
//! behind one field-operations contract, so every formula in the crate runs
//! unchanged in both.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field-operations contract shared by the two backends.
///
/// `add`/`sub`/`mul`/`neg` are total and exposed through the operator traits;
/// `div`/`inv` fail on zero divisors. `abs_sqr` is exact in both backends
/// (no square roots); anything needing a real modulus goes through `to_c64`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for the exact backend: equality and zero tests are decidable.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// Build from rational real/imag parts given as (numer, denom) pairs.
    fn from_ratio(re: (i64, i64), im: (i64, i64)) -> Self;

    fn div(&self, rhs: &Self) -> Result<Self>;
    fn inv(&self) -> Result<Self>;
    fn conj(&self) -> Self;
    /// `x * conj(x)` as a scalar with zero imaginary part; exact in both backends.
    fn abs_sqr(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Parse the shared scalar grammar `[+-]p[/q]` with optional `[+-]r[/s]i`
    /// term ("1/2", "-2", "i/2", "0+1/2i"). The float backend additionally
    /// accepts decimal literals ("0.25", "1e-3+0.5i").
    fn parse(text: &str) -> Result<Self>;

    /// Approximate complex value; used for moduli, sampling, and diagnostics.
    fn to_c64(&self) -> Complex64;

    /// Zero test at tolerance: exact backend ignores `tol` and tests equality
    /// with zero; float backend tests `|x| < tol`.
    fn vanishes(&self, tol: f64) -> bool;

    /// Total order on |x|; exact in the exact backend (compares |x|^2 as
    /// rationals), float-total in the float backend.
    fn cmp_abs(&self, other: &Self) -> Ordering;

    /// True unless the float backend has overflowed to inf/NaN; exact values
    /// are always finite.
    fn is_finite_value(&self) -> bool {
        true
    }

    /// `x^n` by binary exponentiation; negative exponents invert first.
    fn powi(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one());
        }
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e == 0 {
                return Ok(acc);
            }
            sq = sq.clone() * sq;
        }
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }
}

/// `1 - x*y`, the building block of every Z-product.
pub fn one_minus_xy<S: Scalar>(x: &S, y: &S) -> S {
    S::one() - x.clone() * y.clone()
}

/// Relative closeness with absolute floor 1e-14, the shared float-comparison
/// rule: |x - y| <= tol * max(|x|, |y|, 1e-14 / tol... simplified to
/// |x - y| <= tol * max(|x|, |y|) + 1e-14.
pub fn approx_eq_c64(x: Complex64, y: Complex64, rel_tol: f64) -> bool {
    let scale = x.norm().max(y.norm());
    (x - y).norm() <= rel_tol * scale + 1e-14
}

// ---------------------------------------------------------------------------
// Shared scalar-string grammar
// ---------------------------------------------------------------------------

/// Split `text` into at most two signed terms (real, imaginary), identified
/// by a trailing/leading/embedded `i` in the imaginary term.
fn split_terms(text: &str) -> Result<(Option<String>, Option<String>)> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::ParseScalar(text.to_string()));
    }
    let chars: Vec<char> = compact.chars().collect();
    let mut pieces: Vec<String> = Vec::new();
    let mut start = 0usize;
    for (idx, &ch) in chars.iter().enumerate().skip(1) {
        if (ch == '+' || ch == '-') && chars[idx - 1] != 'e' && chars[idx - 1] != 'E' && chars[idx - 1] != '/' {
            pieces.push(chars[start..idx].iter().collect());
            start = idx;
        }
    }
    pieces.push(chars[start..].iter().collect());
    if pieces.len() > 2 {
        return Err(Error::ParseScalar(text.to_string()));
    }
    let mut real: Option<String> = None;
    let mut imag: Option<String> = None;
    for piece in pieces {
        if piece.contains('i') {
            if imag.is_some() {
                return Err(Error::ParseScalar(text.to_string()));
            }
            imag = Some(piece);
        } else {
            if real.is_some() {
                return Err(Error::ParseScalar(text.to_string()));
            }
            real = Some(piece);
        }
    }
    Ok((real, imag))
}

/// Strip the single `i` from an imaginary term, yielding its coefficient
/// string: "i" -> "1", "i/2" -> "1/2", "3i" -> "3", "-1/2i" -> "-1/2".
fn imag_coefficient(term: &str) -> Result<String> {
    if term.matches('i').count() != 1 {
        return Err(Error::ParseScalar(term.to_string()));
    }
    let stripped: String = term.chars().filter(|&c| c != 'i').collect();
    let (sign, body) = match stripped.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", stripped.strip_prefix('+').unwrap_or(&stripped)),
    };
    let body = if body.is_empty() {
        "1".to_string()
    } else if body.starts_with('/') {
        format!("1{body}")
    } else {
        body.to_string()
    };
    Ok(format!("{sign}{body}"))
}

fn parse_big_rational(text: &str) -> Result<BigRational> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n = BigInt::from_str(numer).map_err(|_| Error::ParseScalar(text.to_string()))?;
    let d = BigInt::from_str(denom).map_err(|_| Error::ParseScalar(text.to_string()))?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(n, d))
}

fn parse_f64_term(text: &str) -> Result<f64> {
    let value = match text.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.parse().map_err(|_| Error::ParseScalar(text.to_string()))?;
            let d: f64 = d.parse().map_err(|_| Error::ParseScalar(text.to_string()))?;
            if d == 0.0 {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            n / d
        }
        None => text.parse().map_err(|_| Error::ParseScalar(text.to_string()))?,
    };
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("parsing `{text}`")));
    }
    Ok(value)
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Complex number with arbitrary-precision rational real and imaginary parts.
/// `BigRational` keeps both parts in lowest terms with positive denominators,
/// so equality is exact structural equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    fn abs_sqr_rat(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = self.re.is_zero();
        let im_zero = self.im.is_zero();
        if im_zero {
            return write!(f, "{}", format_rational(&self.re));
        }
        let im_abs = format_rational(&self.im.abs());
        let im_term = if im_abs == "1" { "i".to_string() } else { format!("{im_abs}i") };
        if re_zero {
            if self.im.is_negative() {
                write!(f, "-{im_term}")
            } else {
                write!(f, "{im_term}")
            }
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{im_term}", format_rational(&self.re))
        }
    }
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussianRational::from_ints(0, 0)
    }

    fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }

    fn from_int(v: i64) -> Self {
        GaussianRational::from_ints(v, 0)
    }

    fn from_ratio(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn inv(&self) -> Result<Self> {
        let n = self.abs_sqr_rat();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    fn abs_sqr(&self) -> Self {
        GaussianRational::new(self.abs_sqr_rat(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn parse(text: &str) -> Result<Self> {
        let (real, imag) = split_terms(text)?;
        let re = match real {
            Some(t) => parse_big_rational(&t)?,
            None => BigRational::zero(),
        };
        let im = match imag {
            Some(t) => parse_big_rational(&imag_coefficient(&t)?)?,
            None => BigRational::zero(),
        };
        Ok(GaussianRational::new(re, im))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn vanishes(&self, _tol: f64) -> bool {
        Scalar::is_zero(self)
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs_sqr_rat().cmp(&other.abs_sqr_rat())
    }
}

/// Parse the shared grammar into an exact Gaussian rational.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    GaussianRational::parse(text)
}

// ---------------------------------------------------------------------------
// Float backend
// ---------------------------------------------------------------------------

/// Complex binary64 value. Arithmetic follows IEEE semantics; finiteness is
/// enforced at API boundaries (`div`/`inv`, matrix assembly, determinant and
/// term outputs) rather than per operation.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ComplexFloat(pub Complex64);

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexFloat(Complex64::new(re, im))
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn check_finite(&self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(*self)
        } else {
            Err(Error::NonFinite(what.to_string()))
        }
    }
}

impl From<Complex64> for ComplexFloat {
    fn from(z: Complex64) -> Self {
        ComplexFloat(z)
    }
}

impl Add for ComplexFloat {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexFloat(self.0 + rhs.0)
    }
}

impl Sub for ComplexFloat {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexFloat(self.0 - rhs.0)
    }
}

impl Mul for ComplexFloat {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ComplexFloat(self.0 * rhs.0)
    }
}

impl Neg for ComplexFloat {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexFloat(-self.0)
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.0.re, self.0.im);
        if im == 0.0 {
            write!(f, "{re}")
        } else if re == 0.0 {
            write!(f, "{im}i")
        } else if im < 0.0 {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Scalar for ComplexFloat {
    const EXACT: bool = false;

    fn zero() -> Self {
        ComplexFloat::new(0.0, 0.0)
    }

    fn one() -> Self {
        ComplexFloat::new(1.0, 0.0)
    }

    fn from_int(v: i64) -> Self {
        ComplexFloat::new(v as f64, 0.0)
    }

    fn from_ratio(re: (i64, i64), im: (i64, i64)) -> Self {
        ComplexFloat::new(re.0 as f64 / re.1 as f64, im.0 as f64 / im.1 as f64)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if Scalar::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        ComplexFloat(self.0 / rhs.0).check_finite("division result")
    }

    fn inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        ComplexFloat(self.0.inv()).check_finite("inverse")
    }

    fn conj(&self) -> Self {
        ComplexFloat(self.0.conj())
    }

    fn abs_sqr(&self) -> Self {
        ComplexFloat::new(self.0.norm_sqr(), 0.0)
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn parse(text: &str) -> Result<Self> {
        let (real, imag) = split_terms(text)?;
        let re = match real {
            Some(t) => parse_f64_term(&t)?,
            None => 0.0,
        };
        let im = match imag {
            Some(t) => parse_f64_term(&imag_coefficient(&t)?)?,
            None => 0.0,
        };
        Ok(ComplexFloat::new(re, im))
    }

    fn to_c64(&self) -> Complex64 {
        self.0
    }

    fn vanishes(&self, tol: f64) -> bool {
        self.0.norm() < tol
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.0.norm_sqr().total_cmp(&other.0.norm_sqr())
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}
