//! Rational symbols on the unit circle in the two product forms used
//! throughout the crate: the four-parameter-set form (sets A, B, C, D) and
//! the zeros/poles form (c0, r, rho, delta), plus conversion, evaluation,
//! Wiener-Hopf splitting, and exact Fourier coefficients by residues.

use std::cmp::Ordering;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalars::{one_minus_xy, Scalar};
use crate::tol;
use crate::zfun::ParamMultiset;

/// Symbol phi(e^{i theta}) = prod_i (1 - a_i e^{-i theta}) (1 - b_i e^{i theta})
/// / [(1 - c_i e^{-i theta}) (1 - d_i e^{i theta})], with independent set
/// sizes. The determinant formulas assume |c_i|, |d_i| < 1; a_i may have any
/// modulus (the determinant is polynomial in the a_i).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymbolBC<S: Scalar> {
    pub a: Vec<S>,
    pub b: Vec<S>,
    pub c: Vec<S>,
    pub d: Vec<S>,
}

/// Symbol phi(e^{i theta}) = c0 prod_j (e^{i theta} - r_j)
/// prod_j (1 - e^{i theta}/rho_j)^{-1} prod_j (e^{i theta} - delta_j)^{-1}
/// with |rho_j| > 1, |delta_j| < 1, distinct zeros r_j.
#[derive(Clone, Debug, PartialEq)]
pub struct DayForm<S: Scalar> {
    pub c0: S,
    pub r: Vec<S>,
    pub rho: Vec<S>,
    pub delta: Vec<S>,
}

/// One Wiener-Hopf half: value prod (1 - z_i w) / prod (1 - p_i w) where w is
/// e^{i theta} for the plus factor and e^{-i theta} for the minus factor.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfFactor<S: Scalar> {
    pub zeros: Vec<S>,
    pub poles: Vec<S>,
    /// False: w = z (plus factor). True: w = 1/z (minus factor).
    pub inverted_argument: bool,
}

/// Wiener-Hopf factorization phi = minus * plus; the plus factor has only
/// nonnegative Fourier coefficients, the minus factor only nonpositive ones.
#[derive(Clone, Debug, PartialEq)]
pub struct WHFactors<S: Scalar> {
    pub plus: HalfFactor<S>,
    pub minus: HalfFactor<S>,
}

/// Report-style validation outcome: empty `violations` means valid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            write!(f, "{}", self.violations.join("; "))
        }
    }
}

/// |x| >= 1, decided exactly in the exact backend via |x|^2.
fn modulus_at_least_one<S: Scalar>(x: &S) -> bool {
    x.cmp_abs(&S::one()) != Ordering::Less
}

/// Coincidence test: exact equality in the exact backend, distance below the
/// pinned tolerance in the float backend.
pub fn coincident<S: Scalar>(x: &S, y: &S) -> bool {
    if S::EXACT {
        x == y
    } else {
        (x.clone() - y.clone()).modulus() < tol::COINCIDENT
    }
}

fn report_within_coincidences<S: Scalar>(name: &str, set: &[S], report: &mut ValidationReport) {
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            if coincident(&set[i], &set[j]) {
                report
                    .violations
                    .push(format!("{name}[{i}] and {name}[{j}] coincide"));
            }
        }
    }
}

impl<S: Scalar> RationalSymbolBC<S> {
    pub fn new(a: Vec<S>, b: Vec<S>, c: Vec<S>, d: Vec<S>) -> Self {
        RationalSymbolBC { a, b, c, d }
    }

    /// Constant symbol phi = 1 (all sets empty).
    pub fn constant_one() -> Self {
        RationalSymbolBC { a: vec![], b: vec![], c: vec![], d: vec![] }
    }

    pub fn a_set(&self) -> ParamMultiset<S> {
        ParamMultiset::from_slice(&self.a)
    }

    pub fn b_set(&self) -> ParamMultiset<S> {
        ParamMultiset::from_slice(&self.b)
    }

    pub fn c_set(&self) -> ParamMultiset<S> {
        ParamMultiset::from_slice(&self.c)
    }

    pub fn d_set(&self) -> ParamMultiset<S> {
        ParamMultiset::from_slice(&self.d)
    }

    /// True when |A| = |B| = |C| = |D|; the square profile of the main
    /// theorems (some operations require it).
    pub fn is_square_profile(&self) -> bool {
        self.a.len() == self.b.len() && self.b.len() == self.c.len() && self.c.len() == self.d.len()
    }

    /// Check the formula preconditions: inside-circle poles (|c_i|, |d_i| < 1)
    /// and distinctness of the parameters entering denominators of the
    /// subset-sum expansion (within a, within b, within d, and a against d).
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (i, c) in self.c.iter().enumerate() {
            if modulus_at_least_one(c) {
                report.violations.push(format!("|c[{i}]| >= 1"));
            }
        }
        for (i, d) in self.d.iter().enumerate() {
            if modulus_at_least_one(d) {
                report.violations.push(format!("|d[{i}]| >= 1"));
            }
        }
        report_within_coincidences("a", &self.a, &mut report);
        report_within_coincidences("b", &self.b, &mut report);
        report_within_coincidences("d", &self.d, &mut report);
        for (i, x) in self.a.iter().enumerate() {
            for (j, y) in self.d.iter().enumerate() {
                if coincident(x, y) {
                    report.violations.push(format!("a[{i}] and d[{j}] coincide"));
                }
            }
        }
        report
    }

    /// phi(z) for z on (or near) the unit circle, z != 0.
    pub fn evaluate(&self, z: &S) -> Result<S> {
        if z.is_zero() {
            return Err(Error::PoleAt("0".into()));
        }
        let zinv = z.inv()?;
        let mut numer = S::one();
        for a in &self.a {
            numer = numer * one_minus_xy(a, &zinv);
        }
        for b in &self.b {
            numer = numer * one_minus_xy(b, z);
        }
        let mut denom = S::one();
        for c in &self.c {
            denom = denom * one_minus_xy(c, &zinv);
        }
        for d in &self.d {
            denom = denom * one_minus_xy(d, z);
        }
        if denom.is_zero() {
            return Err(Error::PoleAt(format!("{z}")));
        }
        numer.div(&denom)
    }

    /// phi(1/z): swaps the e^{i theta} and e^{-i theta} roles.
    pub fn reflected(&self) -> Self {
        RationalSymbolBC {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.d.clone(),
            d: self.c.clone(),
        }
    }

    /// Wiener-Hopf split: minus carries (A, C) in e^{-i theta}, plus carries
    /// (B, D) in e^{i theta}.
    pub fn wiener_hopf(&self) -> WHFactors<S> {
        WHFactors {
            plus: HalfFactor {
                zeros: self.b.clone(),
                poles: self.d.clone(),
                inverted_argument: false,
            },
            minus: HalfFactor {
                zeros: self.a.clone(),
                poles: self.c.clone(),
                inverted_argument: true,
            },
        }
    }

    /// psi = phi_minus phi_plus^{-1} reflected(phi_plus)^{-1}, again in the
    /// four-set product form: numerator factors (1 - a_i e^{-i theta})
    /// (1 - d_i e^{i theta})(1 - d_i e^{-i theta}), denominator
    /// (1 - c_i e^{-i theta})(1 - b_i e^{i theta})(1 - b_i e^{-i theta}).
    pub fn psi_of(&self) -> Self {
        let mut minus_zeros = self.a.clone();
        minus_zeros.extend_from_slice(&self.d);
        let mut minus_poles = self.c.clone();
        minus_poles.extend_from_slice(&self.b);
        RationalSymbolBC {
            a: minus_zeros,
            b: self.d.clone(),
            c: minus_poles,
            d: self.b.clone(),
        }
    }

    /// Winding number of phi around 0 by sampled argument accumulation.
    pub fn winding_number(&self, m: usize) -> Result<i64> {
        let sym = self.to_c64();
        winding_number_fn(|z| sym.evaluate_c64(z), m)
    }

    fn to_c64(&self) -> RationalSymbolBC<crate::scalars::ComplexFloat> {
        let conv = |v: &[S]| v.iter().map(|x| crate::scalars::ComplexFloat(x.to_c64())).collect();
        RationalSymbolBC {
            a: conv(&self.a),
            b: conv(&self.b),
            c: conv(&self.c),
            d: conv(&self.d),
        }
    }
}

impl RationalSymbolBC<crate::scalars::ComplexFloat> {
    fn evaluate_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        let zinv = 1.0 / z;
        for x in &self.a {
            acc *= 1.0 - x.0 * zinv;
        }
        for x in &self.b {
            acc *= 1.0 - x.0 * z;
        }
        for x in &self.c {
            acc /= 1.0 - x.0 * zinv;
        }
        for x in &self.d {
            acc /= 1.0 - x.0 * z;
        }
        acc
    }
}

/// Winding number of t -> f(e^{2 pi i t}) around 0 from m >= 256 samples,
/// accumulating principal-branch argument increments.
pub fn winding_number_fn(f: impl Fn(Complex64) -> Complex64, m: usize) -> Result<i64> {
    let m = m.max(tol::WINDING_SAMPLES);
    let mut total = 0.0f64;
    let mut prev = f(Complex64::new(1.0, 0.0));
    if prev.norm() < tol::WINDING_VANISH {
        return Err(Error::SymbolVanishes("at theta = 0".into()));
    }
    for t in 1..=m {
        let theta = 2.0 * std::f64::consts::PI * (t as f64) / (m as f64);
        let z = Complex64::new(theta.cos(), theta.sin());
        let cur = f(z);
        if cur.norm() < tol::WINDING_VANISH {
            return Err(Error::SymbolVanishes(format!("at theta = {theta:.6}")));
        }
        total += (cur / prev).arg();
        prev = cur;
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

impl<S: Scalar> HalfFactor<S> {
    pub fn evaluate(&self, z: &S) -> Result<S> {
        let w = if self.inverted_argument { z.inv()? } else { z.clone() };
        let mut numer = S::one();
        for zero in &self.zeros {
            numer = numer * one_minus_xy(zero, &w);
        }
        let mut denom = S::one();
        for pole in &self.poles {
            denom = denom * one_minus_xy(pole, &w);
        }
        if denom.is_zero() {
            return Err(Error::PoleAt(format!("{z}")));
        }
        numer.div(&denom)
    }
}

impl<S: Scalar> DayForm<S> {
    pub fn new(c0: S, r: Vec<S>, rho: Vec<S>, delta: Vec<S>) -> Self {
        DayForm { c0, r, rho, delta }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.c0.is_zero() {
            report.violations.push("c0 = 0".into());
        }
        for (i, rho) in self.rho.iter().enumerate() {
            if !modulus_at_least_one(rho) || coincident(&rho.abs_sqr(), &S::one()) {
                report.violations.push(format!("|rho[{i}]| <= 1"));
            }
        }
        for (i, delta) in self.delta.iter().enumerate() {
            if modulus_at_least_one(delta) {
                report.violations.push(format!("|delta[{i}]| >= 1"));
            }
        }
        report_within_coincidences("r", &self.r, &mut report);
        report
    }

    /// phi(z) = c0 prod (z - r_j) prod (1 - z/rho_j)^{-1} prod (z - delta_j)^{-1}.
    pub fn evaluate(&self, z: &S) -> Result<S> {
        let mut acc = self.c0.clone();
        for r in &self.r {
            acc = acc * (z.clone() - r.clone());
        }
        let mut denom = S::one();
        for rho in &self.rho {
            denom = denom * (S::one() - z.div(rho)?);
        }
        for delta in &self.delta {
            denom = denom * (z.clone() - delta.clone());
        }
        if denom.is_zero() {
            return Err(Error::PoleAt(format!("{z}")));
        }
        acc.div(&denom)
    }

    pub fn winding_number(&self, m: usize) -> Result<i64> {
        let c0 = self.c0.to_c64();
        let r: Vec<Complex64> = self.r.iter().map(|x| x.to_c64()).collect();
        let rho: Vec<Complex64> = self.rho.iter().map(|x| x.to_c64()).collect();
        let delta: Vec<Complex64> = self.delta.iter().map(|x| x.to_c64()).collect();
        winding_number_fn(
            |z| {
                let mut acc = c0;
                for x in &r {
                    acc *= z - x;
                }
                for x in &rho {
                    acc /= 1.0 - z / x;
                }
                for x in &delta {
                    acc /= z - x;
                }
                acc
            },
            m,
        )
    }
}

/// Convert the zeros/poles form to the four-set form: pick the k = |delta|
/// smallest-modulus zeros for the e^{-i theta} side, invert the rest, and
/// return the scalar `base` with D_n(day) = base^n * D_n(bc).
///
/// The pointwise identity behind it: (z - r)/(z - delta) =
/// (1 - r z^{-1})/(1 - delta z^{-1}) for the chosen zeros, and each unchosen
/// zero contributes (z - r_j) = (-r_j)(1 - z/r_j).
pub fn day_to_bc<S: Scalar>(day: &DayForm<S>) -> Result<(RationalSymbolBC<S>, S)> {
    if day.c0.is_zero() {
        return Err(Error::SymbolVanishes("c0 = 0".into()));
    }
    let p = day.r.len();
    let k = day.delta.len();
    if p < k {
        return Err(Error::FewerZerosThanInsidePoles { zeros: p, inside_poles: k });
    }
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&i, &j| day.r[i].cmp_abs(&day.r[j]).then(i.cmp(&j)));
    let chosen = &order[..k];
    let unchosen = &order[k..];
    let mut chosen_sorted: Vec<usize> = chosen.to_vec();
    chosen_sorted.sort_unstable();
    let mut unchosen_sorted: Vec<usize> = unchosen.to_vec();
    unchosen_sorted.sort_unstable();

    let a: Vec<S> = chosen_sorted.iter().map(|&i| day.r[i].clone()).collect();
    let mut b = Vec::with_capacity(p - k);
    let mut base = day.c0.clone();
    for &j in &unchosen_sorted {
        let r = &day.r[j];
        if r.is_zero() {
            return Err(Error::ZeroParameter(format!(
                "zero r[{j}] = 0 cannot be moved to the e^{{i theta}} side"
            )));
        }
        b.push(r.inv()?);
        base = base * -r.clone();
    }
    let mut d = Vec::with_capacity(day.rho.len());
    for (i, rho) in day.rho.iter().enumerate() {
        if rho.is_zero() {
            return Err(Error::ZeroParameter(format!("rho[{i}] = 0")));
        }
        d.push(rho.inv()?);
    }
    Ok((RationalSymbolBC::new(a, b, day.delta.clone(), d), base))
}

// ---------------------------------------------------------------------------
// Fourier coefficients by residues
// ---------------------------------------------------------------------------

/// Partial-fraction expansion of phi: write phi(z) = z^{|C|-|A|} N(z)/D(z)
/// with N = prod (z - a_i) prod (1 - b_i z), D = prod (z - c_i) prod
/// (1 - d_i z), split N/D into a polynomial part plus simple-pole terms at
/// the c_i (inside) and 1/d_i (outside), and read Laurent coefficients off
/// the geometric expansions valid on the unit circle.
#[derive(Clone, Debug)]
pub struct FourierExpansion<S: Scalar> {
    /// phi_j = r_{j + shift} in the N/D Laurent expansion.
    shift: i64,
    /// Polynomial part q of N/D (coefficient of z^m at index m).
    q: Vec<S>,
    /// Inside poles: (residue A_i, location c_i); contributes A_i c_i^{-m-1}
    /// to r_m for m <= -1 (with 0^0 = 1 covering c_i = 0).
    inside: Vec<(S, S)>,
    /// Outside poles: (coefficient -d_i B_i, rate d_i); contributes
    /// coeff * d_i^m to r_m for m >= 0. Parameters d_i = 0 contribute no pole.
    outside: Vec<(S, S)>,
}

impl<S: Scalar> FourierExpansion<S> {
    pub fn new(sym: &RationalSymbolBC<S>) -> Result<Self> {
        for (i, c) in sym.c.iter().enumerate() {
            if modulus_at_least_one(c) {
                return Err(Error::Unsupported(format!(
                    "fourier coefficients require |c[{i}]| < 1"
                )));
            }
        }
        for (i, d) in sym.d.iter().enumerate() {
            if modulus_at_least_one(d) {
                return Err(Error::Unsupported(format!(
                    "fourier coefficients require |d[{i}]| < 1"
                )));
            }
        }
        for i in 0..sym.c.len() {
            for j in (i + 1)..sym.c.len() {
                if coincident(&sym.c[i], &sym.c[j]) {
                    return Err(Error::CoincidentParameters(format!("c[{i}] and c[{j}]")));
                }
            }
        }
        for i in 0..sym.d.len() {
            for j in (i + 1)..sym.d.len() {
                if coincident(&sym.d[i], &sym.d[j]) {
                    return Err(Error::CoincidentParameters(format!("d[{i}] and d[{j}]")));
                }
            }
        }

        let numer = Poly::from_roots(&sym.a).mul(&Poly::from_one_minus(&sym.b));
        let denom = Poly::from_roots(&sym.c).mul(&Poly::from_one_minus(&sym.d));
        let (q, _) = numer.div_rem(&denom)?;

        // Residue at z = c_i: N(c_i) / D'(c_i) with
        // D'(c_i) = prod_{l != i}(c_i - c_l) * prod_l (1 - d_l c_i).
        let mut inside = Vec::with_capacity(sym.c.len());
        for (i, ci) in sym.c.iter().enumerate() {
            let mut dprime = S::one();
            for (l, cl) in sym.c.iter().enumerate() {
                if l != i {
                    dprime = dprime * (ci.clone() - cl.clone());
                }
            }
            for dl in &sym.d {
                dprime = dprime * one_minus_xy(dl, ci);
            }
            let res = numer.eval(ci).div(&dprime)?;
            inside.push((res, ci.clone()));
        }

        // Residue at z = 1/d_i (skipping d_i = 0): B_i = N(1/d_i)/D'(1/d_i),
        // D'(1/d_i) = -d_i * prod_l (1/d_i - c_l) * prod_{l != i} (1 - d_l/d_i);
        // the term B_i/(z - 1/d_i) expands to sum_m (-d_i B_i) d_i^m z^m.
        let mut outside = Vec::new();
        for (i, di) in sym.d.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            let di_inv = di.inv()?;
            let mut dprime = -di.clone();
            for cl in &sym.c {
                dprime = dprime * (di_inv.clone() - cl.clone());
            }
            for (l, dl) in sym.d.iter().enumerate() {
                if l != i {
                    dprime = dprime * (S::one() - dl.div(di)?);
                }
            }
            let res = numer.eval(&di_inv).div(&dprime)?;
            outside.push((-di.clone() * res, di.clone()));
        }

        Ok(FourierExpansion {
            shift: sym.a.len() as i64 - sym.c.len() as i64,
            q: q.coeffs,
            inside,
            outside,
        })
    }

    /// Laurent coefficient r_m of N/D on the unit circle.
    fn laurent(&self, m: i64) -> Result<S> {
        let mut acc = S::zero();
        if m >= 0 {
            if let Some(c) = self.q.get(m as usize) {
                acc = acc + c.clone();
            }
            for (coeff, rate) in &self.outside {
                acc = acc + coeff.clone() * rate.powi(m)?;
            }
        } else {
            let e = -m - 1;
            for (res, loc) in &self.inside {
                acc = acc + res.clone() * loc.powi(e)?;
            }
        }
        Ok(acc)
    }

    /// Fourier coefficient phi_j.
    pub fn coeff(&self, j: i64) -> Result<S> {
        self.laurent(j + self.shift)
    }
}

/// One-off Fourier coefficient; for many coefficients of the same symbol
/// build a [`FourierExpansion`] once.
pub fn fourier_coeff<S: Scalar>(sym: &RationalSymbolBC<S>, j: i64) -> Result<S> {
    FourierExpansion::new(sym)?.coeff(j)
}
