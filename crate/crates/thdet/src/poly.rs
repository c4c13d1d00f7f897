//! Dense univariate polynomials with ascending coefficients, just enough for
//! assembling numerators/denominators from linear factors, evaluation, and
//! long division. Trailing zeros are kept unless `trim` is called; `degree`
//! reports the trimmed degree.

use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S: Scalar> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![S::one()] }
    }

    pub fn constant(c: S) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// prod (z - r) over the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        let mut p = Poly::one();
        for r in roots {
            p = p.mul_linear_root(r);
        }
        p
    }

    /// prod (1 - p z) over the given parameters.
    pub fn from_one_minus(params: &[S]) -> Self {
        let mut p = Poly::one();
        for q in params {
            p = p.mul(&Poly::new(vec![S::one(), -q.clone()]));
        }
        p
    }

    /// Drop trailing coefficients that are exactly zero.
    pub fn trim(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    /// Degree after exact-zero trimming; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, z: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
            coeffs.push(a + b);
        }
        Poly { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly { coeffs }
    }

    /// Multiply by the linear factor (z - r).
    pub fn mul_linear_root(&self, r: &S) -> Self {
        self.mul(&Poly::new(vec![-r.clone(), S::one()]))
    }

    /// Long division: self = q * divisor + rem with deg rem < deg divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d_deg = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.coeffs[d_deg].clone();
        let mut rem = self.clone().trim();
        let n_deg = match rem.degree() {
            Some(d) if d >= d_deg => d,
            _ => return Ok((Poly::zero(), rem)),
        };
        let mut q = vec![S::zero(); n_deg - d_deg + 1];
        for k in (0..q.len()).rev() {
            let top = rem.coeffs.get(k + d_deg).cloned().unwrap_or_else(S::zero);
            if top.is_zero() {
                continue;
            }
            let coef = top.div(&lead)?;
            for (j, dc) in divisor.coeffs.iter().enumerate().take(d_deg + 1) {
                let idx = k + j;
                rem.coeffs[idx] = rem.coeffs[idx].clone() - coef.clone() * dc.clone();
            }
            q[k] = coef;
        }
        Ok((Poly::new(q).trim(), rem.trim()))
    }
}
