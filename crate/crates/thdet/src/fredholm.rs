//! The operator route to det(T_n + H_n): residue coefficients of the
//! Wiener-Hopf quotient psi, its Fourier coefficients, the kernel K in
//! closed form, the truncated Fredholm determinant det(I + Q_n K Q_n), the
//! generalized-Vandermonde determinants behind the expansion, the
//! Cauchy-type determinant identity, and the coefficient identity that makes
//! the cross terms vanish.

use crate::error::{Error, Result};
use crate::matrix_oracle::{det_lu, DenseMatrix};
use crate::scalars::{ComplexFloat, Scalar};
use crate::symbol::{coincident, FourierExpansion, RationalSymbolBC};
use crate::th_formula::e_th;
use crate::tol;

/// Residue coefficients of psi and psi^{-1}: alpha_b drives the positive
/// coefficients of psi, alpha_d_plus the positive coefficients of psi^{-1},
/// and alpha_d_minus with alpha_a the negative ones.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSet<S: Scalar> {
    pub alpha_b: Vec<S>,
    pub alpha_d_plus: Vec<S>,
    pub alpha_d_minus: Vec<S>,
    pub alpha_a: Vec<S>,
}

/// Which Fourier family to evaluate: psi, psi^{-1}, or the reflection
/// tilde{psi}^{-1} (whose j-th coefficient is psi^{-1}_{-j}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiKind {
    Psi,
    PsiInv,
    PsiTildeInv,
}

fn require_square<S: Scalar>(sym: &RationalSymbolBC<S>) -> Result<usize> {
    let k = sym.a.len();
    if sym.b.len() != k || sym.c.len() != k || sym.d.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "operator route needs equal set sizes, got a:{} b:{} c:{} d:{}",
            sym.a.len(),
            sym.b.len(),
            sym.c.len(),
            sym.d.len()
        )));
    }
    Ok(k)
}

fn is_trivial<S: Scalar>(sym: &RationalSymbolBC<S>) -> bool {
    sym.a.iter().chain(&sym.b).chain(&sym.c).chain(&sym.d).all(|x| x.is_zero())
}

fn nonzero_div<S: Scalar>(num: S, den: S, what: &str) -> Result<S> {
    if den.is_zero() || den.vanishes(tol::Z_POLE) {
        return Err(Error::ZeroDenominator(what.to_string()));
    }
    num.div(&den)
}

/// The four residue-coefficient families:
/// alpha_{b_j} = prod_i (1-a_i b_j)(1-d_i b_j)(b_j-d_i)
///            / [prod_i (1-c_i b_j)(1-b_i b_j) * prod_{i != j} (b_j-b_i)],
/// alpha_{d+_j} = prod_i (1-c_i d_j)(1-b_i d_j)(d_j-b_i)
///            / [prod_i (1-a_i d_j)(1-d_i d_j) * prod_{i != j} (d_j-d_i)],
/// alpha_{d-_j} = prod_i (1-b_i d_j)(d_j-c_i)(d_j-b_i)
///            / [prod_i (d_j-a_i)(1-d_j d_i) * prod_{i != j} (d_j-d_i)],
/// alpha_{a_j} = prod_i (1-a_j b_i)(a_j-c_i)(a_j-b_i)
///            / [prod_i (1-d_i a_j)(a_j-d_i) * prod_{i != j} (a_j-a_i)].
/// Zero a_i or d_i values are rejected: the j = 0 coefficient of psi^{-1}
/// and the alpha_{d-}/alpha_a denominators invert them.
pub fn alphas<S: Scalar>(sym: &RationalSymbolBC<S>) -> Result<AlphaSet<S>> {
    let k = require_square(sym)?;
    for (label, xs) in [("a", &sym.a), ("d", &sym.d)] {
        if let Some(i) = xs.iter().position(|x| x.is_zero()) {
            return Err(Error::ZeroParameter(format!(
                "{label}[{i}] = 0: the operator route inverts a and d parameters"
            )));
        }
    }
    for (label, xs) in [("a", &sym.a), ("b", &sym.b), ("d", &sym.d)] {
        for i in 0..k {
            for j in (i + 1)..k {
                if coincident(&xs[i], &xs[j]) {
                    return Err(Error::CoincidentParameters(format!(
                        "{label}[{i}] and {label}[{j}]"
                    )));
                }
            }
        }
    }
    for (i, a) in sym.a.iter().enumerate() {
        for (j, d) in sym.d.iter().enumerate() {
            if coincident(a, d) {
                return Err(Error::CoincidentParameters(format!("a[{i}] and d[{j}]")));
            }
        }
    }

    let one = S::one;
    let mut alpha_b = Vec::with_capacity(k);
    for j in 0..k {
        let bj = &sym.b[j];
        let mut num = S::one();
        let mut den = S::one();
        for i in 0..k {
            num = num
                * (one() - sym.a[i].clone() * bj.clone())
                * (one() - sym.d[i].clone() * bj.clone())
                * (bj.clone() - sym.d[i].clone());
            den = den
                * (one() - sym.c[i].clone() * bj.clone())
                * (one() - sym.b[i].clone() * bj.clone());
            if i != j {
                den = den * (bj.clone() - sym.b[i].clone());
            }
        }
        alpha_b.push(nonzero_div(num, den, "alpha_b denominator")?);
    }

    let mut alpha_d_plus = Vec::with_capacity(k);
    let mut alpha_d_minus = Vec::with_capacity(k);
    for j in 0..k {
        let dj = &sym.d[j];
        let mut p_num = S::one();
        let mut p_den = S::one();
        let mut m_num = S::one();
        let mut m_den = S::one();
        for i in 0..k {
            p_num = p_num
                * (one() - sym.c[i].clone() * dj.clone())
                * (one() - sym.b[i].clone() * dj.clone())
                * (dj.clone() - sym.b[i].clone());
            p_den = p_den
                * (one() - sym.a[i].clone() * dj.clone())
                * (one() - sym.d[i].clone() * dj.clone());
            m_num = m_num
                * (one() - sym.b[i].clone() * dj.clone())
                * (dj.clone() - sym.c[i].clone())
                * (dj.clone() - sym.b[i].clone());
            m_den = m_den * (dj.clone() - sym.a[i].clone()) * (one() - dj.clone() * sym.d[i].clone());
            if i != j {
                p_den = p_den * (dj.clone() - sym.d[i].clone());
                m_den = m_den * (dj.clone() - sym.d[i].clone());
            }
        }
        alpha_d_plus.push(nonzero_div(p_num, p_den, "alpha_d_plus denominator")?);
        alpha_d_minus.push(nonzero_div(m_num, m_den, "alpha_d_minus denominator")?);
    }

    let mut alpha_a = Vec::with_capacity(k);
    for j in 0..k {
        let aj = &sym.a[j];
        let mut num = S::one();
        let mut den = S::one();
        for i in 0..k {
            num = num
                * (one() - aj.clone() * sym.b[i].clone())
                * (aj.clone() - sym.c[i].clone())
                * (aj.clone() - sym.b[i].clone());
            den = den * (one() - sym.d[i].clone() * aj.clone()) * (aj.clone() - sym.d[i].clone());
            if i != j {
                den = den * (aj.clone() - sym.a[i].clone());
            }
        }
        alpha_a.push(nonzero_div(num, den, "alpha_a denominator")?);
    }

    Ok(AlphaSet { alpha_b, alpha_d_plus, alpha_d_minus, alpha_a })
}

/// Fourier coefficient of psi, psi^{-1}, or tilde{psi}^{-1} at index j.
/// Positive indices come from the residue series; psi^{-1} at j <= 0 from
/// the alpha_{d-}/alpha_a series and its j = 0 constant; psi itself at
/// j <= 0 falls back to the exact expansion of the assembled quotient
/// symbol. The constant symbol short-circuits to delta_{j,0}.
pub fn psi_fourier<S: Scalar>(sym: &RationalSymbolBC<S>, j: i64, which: PsiKind) -> Result<S> {
    require_square(sym)?;
    if is_trivial(sym) {
        return Ok(if j == 0 { S::one() } else { S::zero() });
    }
    match which {
        PsiKind::PsiTildeInv => psi_fourier(sym, -j, PsiKind::PsiInv),
        PsiKind::Psi => {
            if j >= 1 {
                let al = alphas(sym)?;
                let mut acc = S::zero();
                for (alpha, b) in al.alpha_b.iter().zip(&sym.b) {
                    acc = acc + alpha.clone() * b.powi(j - 1)?;
                }
                Ok(acc)
            } else {
                FourierExpansion::new(&sym.psi_of())?.coeff(j)
            }
        }
        PsiKind::PsiInv => {
            let al = alphas(sym)?;
            if j >= 1 {
                let mut acc = S::zero();
                for (alpha, d) in al.alpha_d_plus.iter().zip(&sym.d) {
                    acc = acc + alpha.clone() * d.powi(j - 1)?;
                }
                Ok(acc)
            } else if j == 0 {
                let mut acc = S::zero();
                for i in 0..sym.d.len() {
                    acc = acc
                        + al.alpha_d_minus[i].div(&sym.d[i])?
                        + al.alpha_a[i].div(&sym.a[i])?;
                }
                let mut prod = S::one();
                for i in 0..sym.a.len() {
                    let num = sym.c[i].clone() * sym.b[i].clone();
                    prod = prod * num.div(&(sym.a[i].clone() * sym.d[i].clone()))?;
                }
                Ok(acc + prod)
            } else {
                let mut acc = S::zero();
                for i in 0..sym.d.len() {
                    acc = acc
                        + al.alpha_d_minus[i].clone() * sym.d[i].powi(-j - 1)?
                        + al.alpha_a[i].clone() * sym.a[i].powi(-j - 1)?;
                }
                Ok(acc)
            }
        }
    }
}

/// The closed-form kernel: precomputed pair coefficients so that
/// entry(g,h) = sum_{i,j} c_minus[i][j] b_i^g d_j^h
///            + sum_{i,j} c_a[i][j] b_i^g a_j^h
/// with c_minus[i][j] = alpha_{b_i} alpha_{d-_j} (1+b_i)(1-d_j)
///                      / ((d_j-b_i)(1-b_i d_j))
/// and  c_a[i][j]     = alpha_{b_i} alpha_{a_j} (1+b_i)(1-a_j)
///                      / ((a_j-b_i)(1-b_i a_j)).
struct KernelClosedForm<S: Scalar> {
    b: Vec<S>,
    d: Vec<S>,
    a: Vec<S>,
    c_minus: Vec<Vec<S>>,
    c_a: Vec<Vec<S>>,
}

impl<S: Scalar> KernelClosedForm<S> {
    fn new(sym: &RationalSymbolBC<S>) -> Result<Self> {
        let k = require_square(sym)?;
        let al = alphas(sym)?;
        let one = S::one;
        let mut c_minus = Vec::with_capacity(k);
        let mut c_a = Vec::with_capacity(k);
        for i in 0..k {
            let bi = &sym.b[i];
            let mut row_minus = Vec::with_capacity(k);
            let mut row_a = Vec::with_capacity(k);
            for j in 0..k {
                let dj = &sym.d[j];
                let aj = &sym.a[j];
                let num_minus = al.alpha_b[i].clone()
                    * al.alpha_d_minus[j].clone()
                    * (one() + bi.clone())
                    * (one() - dj.clone());
                let den_minus =
                    (dj.clone() - bi.clone()) * (one() - bi.clone() * dj.clone());
                row_minus.push(nonzero_div(num_minus, den_minus, "kernel b-d denominator")?);
                let num_a = al.alpha_b[i].clone()
                    * al.alpha_a[j].clone()
                    * (one() + bi.clone())
                    * (one() - aj.clone());
                let den_a = (aj.clone() - bi.clone()) * (one() - bi.clone() * aj.clone());
                row_a.push(nonzero_div(num_a, den_a, "kernel b-a denominator")?);
            }
            c_minus.push(row_minus);
            c_a.push(row_a);
        }
        Ok(KernelClosedForm { b: sym.b.clone(), d: sym.d.clone(), a: sym.a.clone(), c_minus, c_a })
    }

    fn entry(&self, g: usize, h: usize) -> Result<S> {
        let mut acc = S::zero();
        for i in 0..self.b.len() {
            let bg = self.b[i].powi(g as i64)?;
            for j in 0..self.d.len() {
                acc = acc
                    + self.c_minus[i][j].clone() * bg.clone() * self.d[j].powi(h as i64)?
                    + self.c_a[i][j].clone() * bg.clone() * self.a[j].powi(h as i64)?;
            }
        }
        Ok(acc)
    }
}

/// Kernel entry K(g, h) for g, h >= 0 from the closed form.
pub fn k_entry<S: Scalar>(sym: &RationalSymbolBC<S>, g: usize, h: usize) -> Result<S> {
    require_square(sym)?;
    if is_trivial(sym) {
        return Ok(S::zero());
    }
    KernelClosedForm::new(sym)?.entry(g, h)
}

/// The M x M window of K starting at offset n: entry (g, h) = K(n+g, n+h).
#[derive(Clone, Debug)]
pub struct KMatrixWindow<S: Scalar> {
    pub offset: usize,
    pub size: usize,
    pub entries: DenseMatrix<S>,
}

/// Assemble the window, computing the residue coefficients once.
pub fn k_window<S: Scalar>(sym: &RationalSymbolBC<S>, n: usize, m: usize) -> Result<KMatrixWindow<S>> {
    require_square(sym)?;
    if is_trivial(sym) {
        return Ok(KMatrixWindow { offset: n, size: m, entries: DenseMatrix::zeros(m, m) });
    }
    let kernel = KernelClosedForm::new(sym)?;
    let mut entries = Vec::with_capacity(m * m);
    for g in 0..m {
        for h in 0..m {
            entries.push(kernel.entry(n + g, n + h)?);
        }
    }
    Ok(KMatrixWindow { offset: n, size: m, entries: DenseMatrix::new(m, m, entries)? })
}

/// det(T_n + H_n) by the identity det = G^n E(phi) det(I + Q_n K Q_n),
/// with G = 1, E from the displayed product, and the Fredholm determinant
/// truncated to an M x M window (adaptive M from the parameter moduli when
/// not supplied). Float-only: window sizing is a numerical notion.
pub fn be_det(
    sym: &RationalSymbolBC<ComplexFloat>,
    n: usize,
    trunc: Option<usize>,
) -> Result<ComplexFloat> {
    if n == 0 {
        return Err(Error::Unsupported("determinant order n must be >= 1".into()));
    }
    require_square(sym)?;
    if is_trivial(sym) {
        return Ok(ComplexFloat::one());
    }
    let mut q = 0.0f64;
    for x in sym.a.iter().chain(&sym.b).chain(&sym.d) {
        q = q.max(x.modulus());
    }
    if q >= 1.0 {
        return Err(Error::Unsupported(
            "Fredholm route needs all parameter moduli < 1".into(),
        ));
    }
    let m = match trunc {
        Some(m) => {
            if m == 0 || m > tol::TRUNCATION_CAP {
                return Err(Error::TruncationUnreachable {
                    needed: m.max(1),
                    cap: tol::TRUNCATION_CAP,
                });
            }
            m
        }
        None => crate::day_toeplitz::truncation_order(q)?,
    };
    let window = k_window(sym, n, m)?;
    let mut id_plus = window.entries;
    for i in 0..m {
        let bumped = id_plus.get(i, i).clone() + ComplexFloat::one();
        id_plus.set(i, i, bumped);
    }
    let fredholm = det_lu(&id_plus)?;
    (e_th(sym)? * fredholm).check_finite("Fredholm T+H determinant")
}

/// Single-parameter shortcut: K has rank one, so
/// det(I + Q_n K Q_n) = 1 + sum_{g >= n} K(g, g), and the diagonal sums are
/// geometric. Exact in both backends; equals the three-term closed form.
pub fn be_det_k1<S: Scalar>(sym: &RationalSymbolBC<S>, n: usize) -> Result<S> {
    if n == 0 {
        return Err(Error::Unsupported("determinant order n must be >= 1".into()));
    }
    let k = require_square(sym)?;
    if k != 1 {
        return Err(Error::DimensionMismatch(format!(
            "rank-one shortcut needs k = 1, got {k}"
        )));
    }
    if is_trivial(sym) {
        return Ok(S::one());
    }
    let kernel = KernelClosedForm::new(sym)?;
    let one = S::one;
    let bd = sym.b[0].clone() * sym.d[0].clone();
    let ba = sym.b[0].clone() * sym.a[0].clone();
    let tail_minus = kernel.c_minus[0][0].clone() * bd.powi(n as i64)?.div(&(one() - bd))?;
    let tail_a = kernel.c_a[0][0].clone() * ba.powi(n as i64)?.div(&(one() - ba))?;
    Ok(e_th(sym)? * (one() + tail_minus + tail_a))
}

/// Generalized-Vandermonde determinant: the l x l matrix with entry
/// (g, h) = t_h^{i_g} s_h^{i_h} (the s-power is constant down column h).
pub fn d_i_det<S: Scalar>(exponents: &[i64], t: &[S], s: &[S]) -> Result<S> {
    let l = exponents.len();
    if l == 0 || t.len() != l || s.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "need |I| = |T| = |S| >= 1, got {}, {}, {}",
            l,
            t.len(),
            s.len()
        )));
    }
    let mut entries = Vec::with_capacity(l * l);
    for g in 0..l {
        for h in 0..l {
            entries.push(t[h].powi(exponents[g])? * s[h].powi(exponents[h])?);
        }
    }
    det_lu(&DenseMatrix::new(l, l, entries)?)
}

/// Closed form for the tail sum of d_i_det over all exponent tuples with
/// every i_g >= n:
/// prod_j t_j^n s_j^n * prod_{i<j} (t_j - t_i)(s_j - s_i)
/// / prod_{i,j} (1 - t_i s_j).
/// Zero when two s values coincide, matching the cancellation lemma.
pub fn d_i_tail_sum<S: Scalar>(t: &[S], s: &[S], n: usize) -> Result<S> {
    let l = t.len();
    if l == 0 || s.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "need |T| = |S| >= 1, got {} and {}",
            l,
            s.len()
        )));
    }
    let mut num = S::one();
    for j in 0..l {
        num = num * t[j].powi(n as i64)? * s[j].powi(n as i64)?;
    }
    for i in 0..l {
        for j in (i + 1)..l {
            num = num * (t[j].clone() - t[i].clone()) * (s[j].clone() - s[i].clone());
        }
    }
    let mut den = S::one();
    for ti in t {
        for sj in s {
            den = den * (S::one() - ti.clone() * sj.clone());
        }
    }
    nonzero_div(num, den, "tail sum denominator 1 - t_i s_j")
}

/// Cauchy-type determinant: the matrix 1/((s_i - t_j)(1 - s_i t_j)) has
/// determinant prod_{i<j} (t_i-t_j)(s_j-s_i)(1-t_i t_j)(1-s_i s_j)
/// / prod_{i,j} (s_i-t_j)(1-t_i s_j). Returns (LU value, closed product).
pub fn cauchy_type_det<S: Scalar>(s: &[S], t: &[S]) -> Result<(S, S)> {
    let n = s.len();
    if n == 0 || t.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "need |S| = |T| >= 1, got {} and {}",
            n,
            t.len()
        )));
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let den = (s[i].clone() - t[j].clone()) * (S::one() - s[i].clone() * t[j].clone());
            entries.push(nonzero_div(S::one(), den, "matrix denominator (s_i-t_j)(1-s_i t_j)")?);
        }
    }
    let direct = det_lu(&DenseMatrix::new(n, n, entries)?)?;
    let mut num = S::one();
    for i in 0..n {
        for j in (i + 1)..n {
            num = num
                * (t[i].clone() - t[j].clone())
                * (s[j].clone() - s[i].clone())
                * (S::one() - t[i].clone() * t[j].clone())
                * (S::one() - s[i].clone() * s[j].clone());
        }
    }
    let mut den = S::one();
    for si in s {
        for tj in t {
            den = den * (si.clone() - tj.clone()) * (S::one() - tj.clone() * si.clone());
        }
    }
    let closed = nonzero_div(num, den, "closed product denominator")?;
    Ok((direct, closed))
}

/// The coefficient identity behind the vanishing cross terms:
/// b_i * sum_j ( -alpha_{d-_j}/(d_j (d_j - b_i))
///               -alpha_{a_j}/(a_j (a_j - b_i))
///               +alpha_{d+_j}/(1 - b_i d_j) )
/// + prod_j b_j c_j / (a_j d_j),
/// which is identically zero. Returns the evaluated left-hand side.
pub fn vanishing_residual<S: Scalar>(sym: &RationalSymbolBC<S>, i: usize) -> Result<S> {
    Ok(vanishing_residual_with_scale(sym, i)?.0)
}

/// As `vanishing_residual`, also reporting the largest summand modulus for
/// relative comparisons in float arithmetic.
pub fn vanishing_residual_with_scale<S: Scalar>(
    sym: &RationalSymbolBC<S>,
    i: usize,
) -> Result<(S, f64)> {
    let k = require_square(sym)?;
    if i >= k {
        return Err(Error::DimensionMismatch(format!("index {i} out of range {k}")));
    }
    let al = alphas(sym)?;
    let bi = &sym.b[i];
    let mut acc = S::zero();
    let mut scale = 0.0f64;
    let mut push = |acc: &mut S, term: S| {
        scale = scale.max(term.modulus());
        *acc = acc.clone() + term;
    };
    for j in 0..k {
        let dj = &sym.d[j];
        let aj = &sym.a[j];
        let t1 = -bi.clone()
            * nonzero_div(
                al.alpha_d_minus[j].clone(),
                dj.clone() * (dj.clone() - bi.clone()),
                "d_j (d_j - b_i)",
            )?;
        push(&mut acc, t1);
        let t2 = -bi.clone()
            * nonzero_div(
                al.alpha_a[j].clone(),
                aj.clone() * (aj.clone() - bi.clone()),
                "a_j (a_j - b_i)",
            )?;
        push(&mut acc, t2);
        let t3 = bi.clone()
            * nonzero_div(
                al.alpha_d_plus[j].clone(),
                S::one() - bi.clone() * dj.clone(),
                "1 - b_i d_j",
            )?;
        push(&mut acc, t3);
    }
    let mut prod = S::one();
    for j in 0..k {
        prod = prod
            * nonzero_div(
                sym.b[j].clone() * sym.c[j].clone(),
                sym.a[j].clone() * sym.d[j].clone(),
                "a_j d_j",
            )?;
    }
    push(&mut acc, prod);
    Ok((acc, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_oracle::{build_th, det_lu};
    use crate::scalars::{parse_scalar, GaussianRational};
    use crate::th_formula::{th_det, th_det_k1};

    fn s(t: &str) -> GaussianRational {
        parse_scalar(t).unwrap()
    }

    fn vecs(texts: &[&str]) -> Vec<GaussianRational> {
        texts.iter().map(|t| s(t)).collect()
    }

    fn example_51() -> RationalSymbolBC<GaussianRational> {
        RationalSymbolBC::new(vecs(&["1/2"]), vecs(&["1/3"]), vecs(&["1/4"]), vecs(&["1/5"]))
    }

    fn example_51_float() -> RationalSymbolBC<ComplexFloat> {
        RationalSymbolBC::new(
            vec![ComplexFloat::new(0.5, 0.0)],
            vec![ComplexFloat::new(1.0 / 3.0, 0.0)],
            vec![ComplexFloat::new(0.25, 0.0)],
            vec![ComplexFloat::new(0.2, 0.0)],
        )
    }

    fn trivial() -> RationalSymbolBC<GaussianRational> {
        RationalSymbolBC::new(vecs(&["0"]), vecs(&["0"]), vecs(&["0"]), vecs(&["0"]))
    }

    #[test]
    fn alphas_reference_single_parameter() {
        // Hand evaluation of the displayed products at a=1/2, b=1/3, c=1/4,
        // d=1/5.
        let al = alphas(&example_51()).unwrap();
        assert_eq!(al.alpha_b, vecs(&["7/55"]));
        let (a, b, c, d) = (s("1/2"), s("1/3"), s("1/4"), s("1/5"));
        let one = s("1");
        let d_plus = (one.clone() - c.clone() * d.clone())
            * (one.clone() - b.clone() * d.clone())
            * (d.clone() - b.clone());
        let d_plus = d_plus
            .div(&((one.clone() - a.clone() * d.clone()) * (one.clone() - d.clone() * d.clone())))
            .unwrap();
        assert_eq!(al.alpha_d_plus, vec![d_plus]);
        let d_minus = (one.clone() - b.clone() * d.clone())
            * (d.clone() - c.clone())
            * (d.clone() - b.clone());
        let d_minus = d_minus
            .div(&((d.clone() - a.clone()) * (one.clone() - d.clone() * d.clone())))
            .unwrap();
        assert_eq!(al.alpha_d_minus, vec![d_minus]);
        let a_co = (one.clone() - a.clone() * b.clone())
            * (a.clone() - c.clone())
            * (a.clone() - b.clone());
        let a_co = a_co
            .div(&((one.clone() - d.clone() * a.clone()) * (a.clone() - d.clone())))
            .unwrap();
        assert_eq!(al.alpha_a, vec![a_co]);
    }

    #[test]
    fn alphas_reject_zero_and_coincident() {
        let zero_a =
            RationalSymbolBC::new(vecs(&["0"]), vecs(&["1/3"]), vecs(&["1/4"]), vecs(&["1/5"]));
        assert!(matches!(alphas(&zero_a), Err(Error::ZeroParameter(_))));
        let cross =
            RationalSymbolBC::new(vecs(&["1/5"]), vecs(&["1/3"]), vecs(&["1/4"]), vecs(&["1/5"]));
        assert!(matches!(alphas(&cross), Err(Error::CoincidentParameters(_))));
    }

    #[test]
    fn psi_inverse_constant_matches_single_parameter_display() {
        // General j = 0 branch against (alpha_{d+} + b)/d.
        let sym = example_51();
        let al = alphas(&sym).unwrap();
        let expect = (al.alpha_d_plus[0].clone() + s("1/3")).div(&s("1/5")).unwrap();
        assert_eq!(psi_fourier(&sym, 0, PsiKind::PsiInv).unwrap(), expect);
    }

    #[test]
    fn psi_series_matches_exact_expansion() {
        let sym = example_51();
        let psi = sym.psi_of();
        let exp = FourierExpansion::new(&psi).unwrap();
        for j in 1..=8 {
            assert_eq!(
                psi_fourier(&sym, j, PsiKind::Psi).unwrap(),
                exp.coeff(j).unwrap(),
                "psi at {j}"
            );
        }
        // psi^{-1} swaps the inside/outside roles of the assembled symbol.
        let psi_inv = RationalSymbolBC::new(
            psi.c.clone(),
            psi.d.clone(),
            psi.a.clone(),
            psi.b.clone(),
        );
        let exp_inv = FourierExpansion::new(&psi_inv).unwrap();
        for j in -6..=6 {
            assert_eq!(
                psi_fourier(&sym, j, PsiKind::PsiInv).unwrap(),
                exp_inv.coeff(j).unwrap(),
                "psi^-1 at {j}"
            );
            assert_eq!(
                psi_fourier(&sym, j, PsiKind::PsiTildeInv).unwrap(),
                exp_inv.coeff(-j).unwrap(),
                "tilde psi^-1 at {j}"
            );
        }
    }

    #[test]
    fn psi_trivial_symbol_is_delta() {
        for j in -3..=3 {
            for which in [PsiKind::Psi, PsiKind::PsiInv, PsiKind::PsiTildeInv] {
                let v = psi_fourier(&trivial(), j, which).unwrap();
                assert_eq!(v, if j == 0 { s("1") } else { s("0") }, "{which:?} at {j}");
            }
        }
    }

    #[test]
    fn k_entry_trivial_symbol_vanishes() {
        for g in 0..=3 {
            for h in 0..=3 {
                assert_eq!(k_entry(&trivial(), g, h).unwrap(), s("0"));
            }
        }
    }

    #[test]
    fn k_entry_matches_series_definition() {
        // K(g,h) = sum_{l>=0} psi_{g+l+1} (psi^{-1}_{l-h} - psi^{-1}_{-l-h-1}),
        // truncated deep enough that the geometric tail is negligible.
        let sym = example_51_float();
        for g in 0..=5 {
            for h in 0..=5 {
                let closed = k_entry(&sym, g, h).unwrap();
                let mut series = ComplexFloat::zero();
                for l in 0..=400i64 {
                    let p = psi_fourier(&sym, g as i64 + l + 1, PsiKind::Psi).unwrap();
                    let q1 = psi_fourier(&sym, l - h as i64, PsiKind::PsiInv).unwrap();
                    let q2 = psi_fourier(&sym, -l - h as i64 - 1, PsiKind::PsiInv).unwrap();
                    series = series + p * (q1 - q2);
                }
                assert!(
                    (closed.0 - series.0).norm() < 1e-11,
                    "g={g} h={h}: closed {closed} vs series {series}"
                );
            }
        }
    }

    #[test]
    fn k_window_has_rank_one_for_single_parameter() {
        // Every 2x2 minor of the window vanishes exactly.
        let w = k_window(&example_51(), 2, 8).unwrap();
        for g1 in 0..8 {
            for g2 in (g1 + 1)..8 {
                for h1 in 0..8 {
                    for h2 in (h1 + 1)..8 {
                        let minor = w.entries.get(g1, h1).clone() * w.entries.get(g2, h2).clone()
                            - w.entries.get(g1, h2).clone() * w.entries.get(g2, h1).clone();
                        assert_eq!(minor, s("0"), "minor ({g1},{g2})x({h1},{h2})");
                    }
                }
            }
        }
    }

    #[test]
    fn be_det_trivial_symbol() {
        let sym = RationalSymbolBC::new(
            vec![ComplexFloat::zero()],
            vec![ComplexFloat::zero()],
            vec![ComplexFloat::zero()],
            vec![ComplexFloat::zero()],
        );
        let v = be_det(&sym, 4, None).unwrap();
        assert!((v.0.re - 1.0).abs() < 1e-14 && v.0.im.abs() < 1e-14);
    }

    #[test]
    fn be_det_reference_value() {
        let v = be_det(&example_51_float(), 5, Some(64)).unwrap();
        let expect = 51551341.0 / 57712500.0;
        assert!((v.0.re - expect).abs() < 1e-10, "{v} vs {expect}");
        assert!(v.0.im.abs() < 1e-12);
    }

    #[test]
    fn be_det_matches_subset_sum_two_parameters() {
        let sym = RationalSymbolBC::new(
            vec![ComplexFloat::new(0.4, 0.1), ComplexFloat::new(-0.3, 0.0)],
            vec![ComplexFloat::new(0.2, -0.2), ComplexFloat::new(0.5, 0.0)],
            vec![ComplexFloat::new(0.1, 0.0), ComplexFloat::new(0.0, 0.3)],
            vec![ComplexFloat::new(-0.2, 0.1), ComplexFloat::new(0.35, 0.0)],
        );
        for n in [1usize, 3, 6] {
            let fredholm = be_det(&sym, n, None).unwrap();
            let subset = th_det(&sym, n).unwrap().0;
            assert!(
                (fredholm.0 - subset.0).norm() < 1e-9 * subset.0.norm(),
                "n = {n}: {fredholm} vs {subset}"
            );
            let oracle = det_lu(&build_th(&sym, n).unwrap()).unwrap();
            assert!(
                (fredholm.0 - oracle.0).norm() < 1e-9 * oracle.0.norm(),
                "n = {n}: {fredholm} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn rank_one_shortcut_equals_closed_form_exactly() {
        let sym = example_51();
        for n in 1..=6 {
            let be = be_det_k1(&sym, n).unwrap();
            let closed = th_det_k1(&s("1/2"), &s("1/3"), &s("1/4"), &s("1/5"), n).unwrap();
            assert_eq!(be, closed, "n = {n}");
        }
        // One zero outside the unit circle: still an algebraic identity.
        let large =
            RationalSymbolBC::new(vecs(&["2"]), vecs(&["1/3"]), vecs(&["1/4"]), vecs(&["1/5"]));
        for n in 1..=4 {
            let be = be_det_k1(&large, n).unwrap();
            let closed = th_det_k1(&s("2"), &s("1/3"), &s("1/4"), &s("1/5"), n).unwrap();
            assert_eq!(be, closed, "large a, n = {n}");
        }
    }

    #[test]
    fn d_i_det_values() {
        assert_eq!(d_i_det(&[3], &[s("1/2")], &[s("1/3")]).unwrap(), s("1/216"));
        // Repeated t makes the columns proportional.
        let z = d_i_det(&[2, 5], &vecs(&["1/2", "1/2"]), &vecs(&["1/3", "1/7"])).unwrap();
        assert_eq!(z, s("0"));
        // 2x2 against the cofactor expansion.
        let (t, sv) = (vecs(&["1/2", "-1/3"]), vecs(&["1/5", "2/7"]));
        let got = d_i_det(&[1, 2], &t, &sv).unwrap();
        let expect = t[0].powi(1).unwrap() * sv[0].powi(1).unwrap()
            * t[1].powi(2).unwrap() * sv[1].powi(2).unwrap()
            - t[1].powi(1).unwrap() * sv[1].powi(2).unwrap()
                * t[0].powi(2).unwrap() * sv[0].powi(1).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn d_i_tail_sum_matches_truncated_numeric_sum() {
        let t = vec![ComplexFloat::new(0.5, 0.1), ComplexFloat::new(-0.4, 0.0)];
        let sv = vec![ComplexFloat::new(0.3, 0.0), ComplexFloat::new(0.2, -0.2)];
        let n = 2usize;
        let closed = d_i_tail_sum(&t, &sv, n).unwrap();
        let mut numeric = ComplexFloat::zero();
        for i1 in n as i64..150 {
            for i2 in n as i64..150 {
                numeric = numeric + d_i_det(&[i1, i2], &t, &sv).unwrap();
            }
        }
        assert!((closed.0 - numeric.0).norm() < 1e-12, "{closed} vs {numeric}");
    }

    #[test]
    fn d_i_tail_sum_vanishes_for_repeated_s() {
        let t = vecs(&["1/2", "-1/3"]);
        let sv = vecs(&["2/7", "2/7"]);
        assert_eq!(d_i_tail_sum(&t, &sv, 3).unwrap(), s("0"));
    }

    #[test]
    fn cauchy_determinant_identity() {
        let one = cauchy_type_det(&vecs(&["1/2"]), &vecs(&["1/3"])).unwrap();
        assert_eq!(one.0, one.1);
        let (direct, closed) =
            cauchy_type_det(&vecs(&["1/2", "-2/5"]), &vecs(&["1/3", "1/7"])).unwrap();
        assert_eq!(direct, closed);
        let sf: Vec<ComplexFloat> = [(0.5, 0.1), (-0.4, 0.2), (0.3, -0.3), (0.1, 0.6), (-0.2, -0.5)]
            .iter()
            .map(|&(re, im)| ComplexFloat::new(re, im))
            .collect();
        let tf: Vec<ComplexFloat> = [(0.2, -0.1), (0.6, 0.3), (-0.5, 0.1), (0.05, -0.4), (0.45, 0.15)]
            .iter()
            .map(|&(re, im)| ComplexFloat::new(re, im))
            .collect();
        let (direct, closed) = cauchy_type_det(&sf, &tf).unwrap();
        assert!(
            (direct.0 - closed.0).norm() <= 1e-10 * closed.0.norm(),
            "{direct} vs {closed}"
        );
    }

    #[test]
    fn residual_vanishes_exactly() {
        assert_eq!(vanishing_residual(&example_51(), 0).unwrap(), s("0"));
        let sym2 = RationalSymbolBC::new(
            vecs(&["1/2", "-1/3"]),
            vecs(&["1/5", "2/7"]),
            vecs(&["1/4", "-1/6"]),
            vecs(&["1/7", "-2/5"]),
        );
        for i in 0..2 {
            assert_eq!(vanishing_residual(&sym2, i).unwrap(), s("0"), "i = {i}");
        }
    }

    #[test]
    fn residual_vanishes_for_floats() {
        let sym = RationalSymbolBC::new(
            vec![
                ComplexFloat::new(0.4, 0.1),
                ComplexFloat::new(-0.3, 0.2),
                ComplexFloat::new(0.6, -0.1),
            ],
            vec![
                ComplexFloat::new(0.2, -0.2),
                ComplexFloat::new(0.5, 0.1),
                ComplexFloat::new(-0.45, 0.0),
            ],
            vec![
                ComplexFloat::new(0.1, 0.0),
                ComplexFloat::new(0.0, 0.3),
                ComplexFloat::new(-0.15, -0.25),
            ],
            vec![
                ComplexFloat::new(-0.2, 0.1),
                ComplexFloat::new(0.35, 0.0),
                ComplexFloat::new(0.1, 0.45),
            ],
        );
        for i in 0..3 {
            let (residual, scale) = vanishing_residual_with_scale(&sym, i).unwrap();
            assert!(
                residual.modulus() <= 1e-11 * scale.max(1.0),
                "i = {i}: residual {residual}, scale {scale}"
            );
        }
    }
}
