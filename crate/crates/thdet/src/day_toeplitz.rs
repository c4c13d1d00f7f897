//! Closed-form Toeplitz determinants for rational symbols: the zeros/poles
//! subset sum (Day's formula), the four-set subset sum, the Szego constants
//! G and E, and the Fredholm-determinant route through the Wiener-Hopf
//! quotient symbols.

use crate::error::{Error, Result};
use crate::matrix_oracle::{det_lu, DenseMatrix};
use crate::scalars::{ComplexFloat, Scalar};
use crate::symbol::{coincident, DayForm, FourierExpansion, RationalSymbolBC};
use crate::tol;
use crate::zfun::{parity_sign, pow_prod, surgery, z_composite};

/// One term of the zeros/poles subset sum: the chosen index set M, the
/// geometric base r_M = c0 * prod of unchosen zeros, and its coefficient A_M.
#[derive(Clone, Debug, PartialEq)]
pub struct DayTermRecord<S: Scalar> {
    pub m: Vec<usize>,
    pub r_m: S,
    pub a_m: S,
}

fn subsets_of_size(n_items: usize, size: usize) -> impl Iterator<Item = u32> {
    (0u32..(1u32 << n_items)).filter(move |mask| mask.count_ones() as usize == size)
}

fn mask_indices(mask: u32, n_items: usize) -> Vec<usize> {
    (0..n_items).filter(|&i| mask >> i & 1 == 1).collect()
}

fn require_positive_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Unsupported("determinant order n must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// D_n(phi) for a zeros/poles-form symbol with p zeros r_j, h poles rho_j
/// outside and k poles delta_j inside the circle:
/// zero when p < k, otherwise (-1)^{(p-k)n} times the sum of A_M r_M^n over
/// the k-element subsets M of the zeros.
///
/// The sign exponent is (p-k)*n: phi(z) = z - r (p=1, k=0) has
/// T_n lower bidiagonal with determinant (-r)^n while the subset sum gives
/// r^n, which forces (-1)^n and rules out the exponent (p-k)(n+1).
pub fn day_det<S: Scalar>(day: &DayForm<S>, n: usize) -> Result<(S, Vec<DayTermRecord<S>>)> {
    require_positive_n(n)?;
    let p = day.r.len();
    let k = day.delta.len();
    for i in 0..p {
        for j in (i + 1)..p {
            if coincident(&day.r[i], &day.r[j]) {
                return Err(Error::CoincidentParameters(format!("r[{i}] and r[{j}]")));
            }
        }
    }
    if p < k {
        return Ok((S::zero(), Vec::new()));
    }

    // Denominator factor common to every A_M: prod over outside poles and
    // inside poles of (rho_beta - delta_alpha).
    let mut common_denom = S::one();
    for rho in &day.rho {
        for delta in &day.delta {
            common_denom = common_denom * (rho.clone() - delta.clone());
        }
    }

    let mut records = Vec::new();
    let mut total = S::zero();
    for mask in subsets_of_size(p, k) {
        let m_idx = mask_indices(mask, p);
        let mc_idx: Vec<usize> = (0..p).filter(|&i| mask >> i & 1 == 0).collect();

        let mut r_m = day.c0.clone();
        for &j in &mc_idx {
            r_m = r_m * day.r[j].clone();
        }

        let mut numer = S::one();
        for &j in &mc_idx {
            for delta in &day.delta {
                numer = numer * (day.r[j].clone() - delta.clone());
            }
        }
        for rho in &day.rho {
            for &i in &m_idx {
                numer = numer * (rho.clone() - day.r[i].clone());
            }
        }
        let mut denom = common_denom.clone();
        for &j in &mc_idx {
            for &i in &m_idx {
                denom = denom * (day.r[j].clone() - day.r[i].clone());
            }
        }
        let a_m = numer.div(&denom)?;
        total = total + a_m.clone() * r_m.powi(n as i64)?;
        records.push(DayTermRecord { m: m_idx, r_m, a_m });
    }
    let signed = parity_sign::<S>((p - k) * n) * total;
    Ok((signed, records))
}

/// One term of the four-set Toeplitz subset sum: indices of S in A and of T
/// in B, and the term value S^n T^n Z(A-S+T^{-1}, B-T+S^{-1}; C, D).
#[derive(Clone, Debug, PartialEq)]
pub struct BcToeplitzTerm<S: Scalar> {
    pub s_idx: Vec<usize>,
    pub t_idx: Vec<usize>,
    pub value: S,
}

/// D_n(phi) for the four-set form: sum over S subset A, T subset B with
/// |S| = |T| of S^n T^n Z(A-S+T^{-1}, B-T+S^{-1}; C, D). Terms whose chosen
/// subset contains a zero parameter contribute 0 (the power S^n or T^n
/// vanishes for n >= 1) and are skipped so the inverse in the surgery never
/// touches them.
pub fn bc_toeplitz_det_with_terms<S: Scalar>(
    sym: &RationalSymbolBC<S>,
    n: usize,
) -> Result<(S, Vec<BcToeplitzTerm<S>>)> {
    require_positive_n(n)?;
    for i in 0..sym.a.len() {
        for j in (i + 1)..sym.a.len() {
            if coincident(&sym.a[i], &sym.a[j]) {
                return Err(Error::CoincidentParameters(format!("a[{i}] and a[{j}]")));
            }
        }
    }
    for i in 0..sym.b.len() {
        for j in (i + 1)..sym.b.len() {
            if coincident(&sym.b[i], &sym.b[j]) {
                return Err(Error::CoincidentParameters(format!("b[{i}] and b[{j}]")));
            }
        }
    }
    let a_set = sym.a_set();
    let b_set = sym.b_set();
    let c_set = sym.c_set();
    let d_set = sym.d_set();
    let ka = sym.a.len();
    let kb = sym.b.len();
    let mut total = S::zero();
    let mut terms = Vec::new();
    for s_mask in 0u32..(1u32 << ka) {
        let s_size = s_mask.count_ones() as usize;
        if s_size > kb {
            continue;
        }
        let s_idx = mask_indices(s_mask, ka);
        if s_idx.iter().any(|&i| sym.a[i].is_zero()) {
            continue;
        }
        let s_vals = a_set.select(&s_idx)?;
        let s_pow = pow_prod(&s_vals, n as i64)?;
        for t_mask in subsets_of_size(kb, s_size) {
            let t_idx = mask_indices(t_mask, kb);
            if t_idx.iter().any(|&i| sym.b[i].is_zero()) {
                continue;
            }
            let t_vals = b_set.select(&t_idx)?;
            let left = surgery(&a_set, &s_idx, &t_vals)?;
            let right = surgery(&b_set, &t_idx, &s_vals)?;
            let value =
                s_pow.clone() * pow_prod(&t_vals, n as i64)? * z_composite(&left, &right, &c_set, &d_set)?;
            total = total + value.clone();
            terms.push(BcToeplitzTerm { s_idx: s_idx.clone(), t_idx, value });
        }
    }
    Ok((total, terms))
}

/// Four-set Toeplitz determinant (value only).
pub fn bc_toeplitz_det<S: Scalar>(sym: &RationalSymbolBC<S>, n: usize) -> Result<S> {
    Ok(bc_toeplitz_det_with_terms(sym, n)?.0)
}

/// Geometric mean G(phi) = exp((log phi)_0). For a winding-zero four-set
/// symbol every log factor log(1 - x w) has vanishing mean, so G = 1; a
/// nonzero winding number is rejected.
pub fn szego_g<S: Scalar>(sym: &RationalSymbolBC<S>) -> Result<S> {
    let w = sym.winding_number(512)?;
    if w != 0 {
        return Err(Error::Unsupported(format!(
            "G(phi) needs winding number 0, got {w}"
        )));
    }
    Ok(S::one())
}

/// E(phi) = exp(sum_{k>=1} k (log phi)_k (log phi)_{-k}) in closed form:
/// Z(A, B; C, D). Exact in both backends.
pub fn szego_e_toeplitz<S: Scalar>(sym: &RationalSymbolBC<S>) -> Result<S> {
    z_composite(&sym.a_set(), &sym.b_set(), &sym.c_set(), &sym.d_set())
}

/// Truncated log-coefficient series for E(phi) with its geometric tail
/// bound: (log phi)_k = sum (d^k - b^k)/k and (log phi)_{-k} =
/// sum (c^k - a^k)/k, so the k-th term is the product of the bracketed sums
/// divided by k. Requires every parameter modulus < 1.
pub fn szego_e_series(
    sym: &RationalSymbolBC<ComplexFloat>,
    j_max: usize,
) -> Result<(ComplexFloat, f64)> {
    let mut q_plus = 0.0f64;
    let mut q_minus = 0.0f64;
    for x in sym.b.iter().chain(&sym.d) {
        q_plus = q_plus.max(x.modulus());
    }
    for x in sym.a.iter().chain(&sym.c) {
        q_minus = q_minus.max(x.modulus());
    }
    if q_plus >= 1.0 || q_minus >= 1.0 {
        return Err(Error::Unsupported(
            "log-coefficient series needs all parameter moduli < 1".into(),
        ));
    }
    let mut acc = num::complex::Complex64::new(0.0, 0.0);
    for k in 1..=j_max {
        let mut plus = num::complex::Complex64::new(0.0, 0.0);
        for d in &sym.d {
            plus += d.0.powu(k as u32);
        }
        for b in &sym.b {
            plus -= b.0.powu(k as u32);
        }
        let mut minus = num::complex::Complex64::new(0.0, 0.0);
        for c in &sym.c {
            minus += c.0.powu(k as u32);
        }
        for a in &sym.a {
            minus -= a.0.powu(k as u32);
        }
        acc += plus * minus / k as f64;
    }
    let q = q_plus * q_minus;
    let count = ((sym.b.len() + sym.d.len()) * (sym.a.len() + sym.c.len())) as f64;
    let tail = if q > 0.0 && q < 1.0 {
        count * q.powi(j_max as i32 + 1) / ((j_max as f64 + 1.0) * (1.0 - q))
    } else {
        0.0
    };
    let value = ComplexFloat(acc.exp());
    value.check_finite("E series")?;
    Ok((value, tail))
}

/// Truncation size giving tail below TRUNCATION_TARGET for decay rate q.
pub fn truncation_order(q: f64) -> Result<usize> {
    if q <= 0.0 {
        return Ok(1);
    }
    if q >= 1.0 {
        return Err(Error::TruncationUnreachable { needed: usize::MAX, cap: tol::TRUNCATION_CAP });
    }
    let needed = (tol::TRUNCATION_TARGET.ln() / q.ln()).ceil() as usize + 1;
    if needed > tol::TRUNCATION_CAP {
        return Err(Error::TruncationUnreachable { needed, cap: tol::TRUNCATION_CAP });
    }
    Ok(needed.max(1))
}

/// Fredholm-determinant route: D_n(phi) = G^n E(phi) det(I - H_1 H_2) where
/// H_1 = H(z^{-n} phi_minus phi_plus^{-1}) and H_2 = H(reflected(phi_minus)^{-1}
/// reflected(phi_plus) z^{-n}), truncated to an M x M window. The two
/// quotient symbols are again four-set symbols, so their Fourier
/// coefficients come from the exact residue expansion. Float-only:
/// truncation sizing depends on parameter moduli. `trunc` overrides the
/// automatic window size.
pub fn bocg_det_toeplitz(
    sym: &RationalSymbolBC<ComplexFloat>,
    n: usize,
    trunc: Option<usize>,
) -> Result<ComplexFloat> {
    require_positive_n(n)?;
    let mut q = 0.0f64;
    for x in sym.a.iter().chain(&sym.b).chain(&sym.c).chain(&sym.d) {
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
                return Err(Error::TruncationUnreachable { needed: m.max(1), cap: tol::TRUNCATION_CAP });
            }
            m
        }
        None => truncation_order(q)?,
    };

    // u = phi_minus phi_plus^{-1}; v = reflected(phi_minus)^{-1} reflected(phi_plus).
    let u_sym = RationalSymbolBC::new(sym.a.clone(), sym.d.clone(), sym.c.clone(), sym.b.clone());
    let v_sym = RationalSymbolBC::new(sym.b.clone(), sym.c.clone(), sym.d.clone(), sym.a.clone());
    let u_exp = FourierExpansion::new(&u_sym)?;
    let v_exp = FourierExpansion::new(&v_sym)?;
    let top = n as i64 + 2 * m as i64;
    let mut u_coeffs = Vec::with_capacity(2 * m);
    let mut v_coeffs = Vec::with_capacity(2 * m);
    for idx in (n as i64 + 1)..=top {
        u_coeffs.push(u_exp.coeff(idx)?);
        v_coeffs.push(v_exp.coeff(idx)?);
    }
    // K[i][j] = sum_l u_{n+i+l+1} v_{n+l+j+1}; I - K, then LU.
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = ComplexFloat::zero();
            for l in 0..m {
                acc = acc + u_coeffs[i + l].clone() * v_coeffs[l + j].clone();
            }
            let delta = if i == j { ComplexFloat::one() } else { ComplexFloat::zero() };
            entries.push(delta - acc);
        }
    }
    let fredholm = det_lu(&DenseMatrix::new(m, m, entries)?)?;
    let e = szego_e_toeplitz(sym)?;
    (e * fredholm).check_finite("Fredholm Toeplitz determinant")
}
