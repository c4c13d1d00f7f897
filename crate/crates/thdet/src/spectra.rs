//! Eigenvalue-locus analysis for the finite sections.
//!
//! For a rational symbol write phi = f/g with f, g polynomials. The zeros
//! z_i(lambda) of f - lambda*g, sorted by modulus, control whether the
//! determinant of the shifted section can vanish for large n: the Toeplitz
//! determinant is a signed sum of n-th powers of zero products, and a strict
//! modulus gap at the split position leaves a single dominating product, so
//! eigenvalues can only accumulate where the gap closes. The Toeplitz split
//! sits at k = number of poles of phi inside the unit circle; the T+H split
//! sits at 2k inside the 3k-element multiset {a_i(lambda), 1/b_i(lambda),
//! d_i}. Whether the fixed |d_i| actually attract T+H eigenvalues is an open
//! question; this module only reports where the two conditions differ.
//!
//! Everything here is float-only: roots come from companion-matrix
//! eigenvalues and clouds from the dense QR solver.

use crate::eigen::eigenvalues_raw;
use crate::error::{Error, Result};
use crate::matrix_oracle::{build_th, build_toeplitz, DenseMatrix};
use crate::poly::Poly;
use crate::scalars::{ComplexFloat, Scalar};
use crate::symbol::{DayForm, RationalSymbolBC};
use crate::tol;

type C = ComplexFloat;

/// Which finite section a locus condition or cloud refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    Toeplitz,
    Th,
}

/// Gap evaluation at one spectral parameter lambda.
#[derive(Clone, Debug)]
pub struct LocusSample {
    pub lambda: C,
    /// Nondecreasing moduli of the tested multiset (roots, plus |d_i| for
    /// the T+H kind). Roots lost to leading-coefficient cancellation appear
    /// as +infinity at the tail.
    pub sorted_moduli: Vec<f64>,
    /// moduli[split] - moduli[split-1]; +infinity when the tie channel is
    /// empty (no split position) or the straddle crosses a lost root.
    pub gap: f64,
    pub kind: SpectrumKind,
    /// gap below the locus threshold (a fraction of the local modulus scale).
    pub flagged: bool,
}

/// Zeros of f - lambda*g. `at_infinity` counts the degree drop against the
/// generic degree: those roots escaped to infinity and sort last by modulus.
#[derive(Clone, Debug)]
pub struct ShiftedRoots {
    pub roots: Vec<C>,
    pub at_infinity: usize,
}

/// Rectangle in the spectral plane, scanned at cell centers.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all = [re_min, re_max, im_min, im_max];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("locus window bounds".into()));
        }
        if re_min >= re_max || im_min >= im_max {
            return Err(Error::Unsupported(
                "locus window must have positive extent on both axes".into(),
            ));
        }
        Ok(Window { re_min, re_max, im_min, im_max })
    }

    /// Diagonal of one grid cell at the given per-axis resolution.
    pub fn cell_diameter(&self, resolution: usize) -> f64 {
        let dx = (self.re_max - self.re_min) / resolution as f64;
        let dy = (self.im_max - self.im_min) / resolution as f64;
        dx.hypot(dy)
    }
}

/// The k smallest-modulus roots continue the a parameters; the rest are the
/// reciprocal-b continuations and keep their root values.
#[derive(Clone, Debug)]
pub struct ThRootSplit {
    pub a_side: Vec<C>,
    pub b_side: Vec<C>,
    pub b_side_at_infinity: usize,
}

/// Maximum resolution per axis for `locus_scan` (the grid is resolution^2).
pub const MAX_SCAN_RESOLUTION: usize = 2048;

const CURVE_SAMPLES: usize = 4096;
const MAX_CLOUD_SIZE: usize = 400;

/// phi = z^(kc-ka) * N / D with N = prod(z - a_i) prod(1 - b_i z) and
/// D = prod(z - c_i) prod(1 - d_i z); the z power multiplies whichever side
/// keeps both factors polynomial.
fn bc_poly_pair(sym: &RationalSymbolBC<C>) -> (Poly<C>, Poly<C>) {
    let n = Poly::from_roots(&sym.a).mul(&Poly::from_one_minus(&sym.b));
    let d = Poly::from_roots(&sym.c).mul(&Poly::from_one_minus(&sym.d));
    let (ka, kc) = (sym.a.len(), sym.c.len());
    if kc >= ka {
        (shift_up(n, kc - ka), d)
    } else {
        (n, shift_up(d, ka - kc))
    }
}

fn shift_up(p: Poly<C>, power: usize) -> Poly<C> {
    if power == 0 {
        return p;
    }
    let mut coeffs = vec![C::zero(); power];
    coeffs.extend(p.coeffs);
    Poly::new(coeffs)
}

/// Roots of p via the companion matrix of p normalized monic.
fn companion_roots(p: &Poly<C>) -> Result<Vec<C>> {
    let deg = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(d) => d,
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p.coeffs[deg].clone();
    let mut entries = vec![C::zero(); deg * deg];
    for i in 1..deg {
        entries[i * deg + (i - 1)] = C::one();
    }
    for i in 0..deg {
        entries[i * deg + (deg - 1)] = -(p.coeffs[i].div(&lead)?);
    }
    let raw = eigenvalues_raw(&DenseMatrix::new(deg, deg, entries)?)?;
    Ok(raw.into_iter().map(ComplexFloat).collect())
}

fn roots_from_pair(f: &Poly<C>, g: &Poly<C>, lambda: C) -> Result<ShiftedRoots> {
    // Generic degree over lambda: the polynomial pencil f - lambda*g drops
    // below it only where leading coefficients cancel.
    let generic = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    let p = f.sub(&g.scale(&lambda)).trim();
    let deg = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(d) => d,
    };
    let roots = companion_roots(&p)?;
    Ok(ShiftedRoots { roots, at_infinity: generic - deg })
}

/// Zeros of phi(z) - lambda for a b/c-parametrized symbol.
pub fn shifted_roots(sym: &RationalSymbolBC<C>, lambda: C) -> Result<ShiftedRoots> {
    let (f, g) = bc_poly_pair(sym);
    roots_from_pair(&f, &g, lambda)
}

/// Zeros of phi(z) - lambda for a zero/pole-parametrized symbol:
/// f = c0 prod(z - r_j), g = prod(1 - z/rho_j) prod(z - delta_j).
pub fn shifted_roots_day(day: &DayForm<C>, lambda: C) -> Result<ShiftedRoots> {
    let f = Poly::from_roots(&day.r).scale(&day.c0);
    let mut rho_inv = Vec::with_capacity(day.rho.len());
    for rho in &day.rho {
        rho_inv.push(C::one().div(rho)?);
    }
    let g = Poly::from_one_minus(&rho_inv).mul(&Poly::from_roots(&day.delta));
    roots_from_pair(&f, &g, lambda)
}

fn sorted_moduli_of(rs: &ShiftedRoots) -> Vec<f64> {
    let mut m: Vec<f64> = rs.roots.iter().map(|z| z.modulus()).collect();
    m.extend(std::iter::repeat(f64::INFINITY).take(rs.at_infinity));
    m.sort_by(f64::total_cmp);
    m
}

/// Difference of a sorted straddle pair; two lost roots tie at infinity.
fn modulus_gap(lo: f64, hi: f64) -> f64 {
    if lo.is_infinite() && hi.is_infinite() {
        0.0
    } else {
        hi - lo
    }
}

fn flag_for(gap: f64, scale: f64, fraction: f64) -> bool {
    gap < fraction * scale.max(1e-9)
}

/// Poles of phi inside the unit circle: every c_i (they sit inside by the
/// symbol contract even when some |a_i| > 1), plus a pole at the origin of
/// order ka - kc when the a side outnumbers the c side. The b and d
/// parameters only contribute poles outside the circle.
fn toeplitz_split(sym: &RationalSymbolBC<C>) -> usize {
    sym.c.len() + sym.a.len().saturating_sub(sym.c.len())
}

fn sample_from_moduli(
    lambda: C,
    moduli: Vec<f64>,
    split: usize,
    kind: SpectrumKind,
    fraction: f64,
) -> LocusSample {
    if split == 0 {
        // No split position: a single product dominates for every lambda,
        // so this symbol has no tie channel at all.
        return LocusSample { lambda, sorted_moduli: moduli, gap: f64::INFINITY, kind, flagged: false };
    }
    let gap = modulus_gap(moduli[split - 1], moduli[split]);
    let flagged = flag_for(gap, moduli[split], fraction);
    LocusSample { lambda, sorted_moduli: moduli, gap, kind, flagged }
}

/// Gap at the Toeplitz split. A positive gap means det T_n(phi - lambda) is
/// eventually bounded away from zero, so Toeplitz eigenvalues can only
/// accumulate where this gap closes. Note the closure locus is generally a
/// system of arcs distinct from the image curve phi(T).
pub fn gap_toeplitz(sym: &RationalSymbolBC<C>, lambda: C) -> Result<LocusSample> {
    let rs = shifted_roots(sym, lambda)?;
    let moduli = sorted_moduli_of(&rs);
    let split = toeplitz_split(sym);
    if split > 0 && moduli.len() < split + 1 {
        return Err(Error::DegreeTooLow(format!(
            "f - lambda*g has {} zeros, too few for a modulus tie at position {}",
            moduli.len(),
            split + 1
        )));
    }
    Ok(sample_from_moduli(lambda, moduli, split, SpectrumKind::Toeplitz, tol::LOCUS_GAP_FRACTION))
}

/// Classify the 2k zeros of f - lambda*g for a square symbol: the k smallest
/// by modulus continue the a parameters, the rest are the reciprocal-b
/// continuations. Modulus ties are broken by argument so the split is
/// deterministic; the gap itself depends only on the moduli.
pub fn classify_th_roots(sym: &RationalSymbolBC<C>, lambda: C) -> Result<ThRootSplit> {
    let k = square_order(sym)?;
    let rs = shifted_roots(sym, lambda)?;
    let total = rs.roots.len() + rs.at_infinity;
    if total != 2 * k {
        return Err(Error::RootClassification(format!(
            "expected {} zeros of f - lambda*g, found {}; the a/b split is ambiguous",
            2 * k,
            total
        )));
    }
    if rs.at_infinity > k {
        return Err(Error::RootClassification(
            "more zeros escaped to infinity than the b side can absorb".into(),
        ));
    }
    let mut finite = rs.roots;
    finite.sort_by(|x, y| {
        f64::total_cmp(&x.modulus(), &y.modulus()).then(f64::total_cmp(&x.0.arg(), &y.0.arg()))
    });
    let b_side = finite.split_off(k);
    Ok(ThRootSplit { a_side: finite, b_side, b_side_at_infinity: rs.at_infinity })
}

fn square_order(sym: &RationalSymbolBC<C>) -> Result<usize> {
    let k = sym.a.len();
    if sym.b.len() != k || sym.c.len() != k || sym.d.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "the T+H locus condition needs equal parameter counts, got a:{} b:{} c:{} d:{}",
            sym.a.len(),
            sym.b.len(),
            sym.c.len(),
            sym.d.len()
        )));
    }
    Ok(k)
}

/// Gap at the T+H split: position 2k inside the sorted moduli of the
/// 3k-element multiset {a_i(lambda), 1/b_i(lambda), d_i}. The fixed |d_i|
/// can move the split even where the Toeplitz condition is far from a tie;
/// compare the two scans to see where that happens.
pub fn gap_th(sym: &RationalSymbolBC<C>, lambda: C) -> Result<LocusSample> {
    let k = square_order(sym)?;
    if k == 0 {
        let rs = shifted_roots(sym, lambda)?;
        let moduli = sorted_moduli_of(&rs);
        return Ok(sample_from_moduli(lambda, moduli, 0, SpectrumKind::Th, tol::LOCUS_GAP_FRACTION));
    }
    let split = classify_th_roots(sym, lambda)?;
    let mut moduli: Vec<f64> = split
        .a_side
        .iter()
        .chain(split.b_side.iter())
        .map(|z| z.modulus())
        .chain(sym.d.iter().map(|z| z.modulus()))
        .collect();
    moduli.extend(std::iter::repeat(f64::INFINITY).take(split.b_side_at_infinity));
    moduli.sort_by(f64::total_cmp);
    Ok(sample_from_moduli(lambda, moduli, 2 * k, SpectrumKind::Th, tol::LOCUS_GAP_FRACTION))
}

fn gap_of_kind(sym: &RationalSymbolBC<C>, kind: SpectrumKind, lambda: C) -> Result<LocusSample> {
    match kind {
        SpectrumKind::Toeplitz => gap_toeplitz(sym, lambda),
        SpectrumKind::Th => gap_th(sym, lambda),
    }
}

/// Evaluate the gap on a resolution x resolution grid of cell centers.
/// Cells where f - lambda*g collapses to the zero polynomial are flagged
/// with gap 0 (the shifted symbol vanishes identically, so every section is
/// singular there); other per-cell failures surface as unflagged samples
/// with an infinite gap. Cells are independent, so the scan could be
/// chunked across threads; it is sequential because even the largest grid
/// is subsecond work.
pub fn locus_scan(
    sym: &RationalSymbolBC<C>,
    kind: SpectrumKind,
    window: Window,
    resolution: usize,
    gap_fraction: Option<f64>,
) -> Result<Vec<LocusSample>> {
    if resolution == 0 || resolution > MAX_SCAN_RESOLUTION {
        return Err(Error::Unsupported(format!(
            "scan resolution must be in 1..={MAX_SCAN_RESOLUTION}, got {resolution}"
        )));
    }
    let fraction = gap_fraction.unwrap_or(tol::LOCUS_GAP_FRACTION);
    if kind == SpectrumKind::Th {
        square_order(sym)?;
    }
    let dx = (window.re_max - window.re_min) / resolution as f64;
    let dy = (window.im_max - window.im_min) / resolution as f64;
    let mut out = Vec::with_capacity(resolution * resolution);
    for iy in 0..resolution {
        let im = window.im_min + (iy as f64 + 0.5) * dy;
        for ix in 0..resolution {
            let lambda = C::new(window.re_min + (ix as f64 + 0.5) * dx, im);
            let sample = match gap_of_kind(sym, kind, lambda) {
                Ok(mut s) => {
                    let split = match kind {
                        SpectrumKind::Toeplitz => toeplitz_split(sym),
                        SpectrumKind::Th => 2 * sym.a.len(),
                    };
                    if split > 0 {
                        s.flagged = flag_for(s.gap, s.sorted_moduli[split], fraction);
                    }
                    s
                }
                Err(Error::ZeroPolynomial) => LocusSample {
                    lambda,
                    sorted_moduli: Vec::new(),
                    gap: 0.0,
                    kind,
                    flagged: true,
                },
                Err(e) => {
                    if out.is_empty() && ix == 0 && iy == 0 {
                        // Structural failures (degree too low, bad symbol)
                        // repeat at every cell; surface them once.
                        return Err(e);
                    }
                    LocusSample {
                        lambda,
                        sorted_moduli: Vec::new(),
                        gap: f64::INFINITY,
                        kind,
                        flagged: false,
                    }
                }
            };
            out.push(sample);
        }
    }
    Ok(out)
}

/// Toeplitz and T+H scans of the same grid, with the cells only one of the
/// two conditions flags. A nonempty difference is direct evidence that the
/// fixed |d_i| move the T+H condition; an empty one supports the reading
/// that both sections share a locus. Neither outcome is assumed.
#[derive(Clone, Debug)]
pub struct LocusComparison {
    pub toeplitz: Vec<LocusSample>,
    pub th: Vec<LocusSample>,
    pub only_toeplitz: Vec<usize>,
    pub only_th: Vec<usize>,
}

pub fn locus_compare(
    sym: &RationalSymbolBC<C>,
    window: Window,
    resolution: usize,
    gap_fraction: Option<f64>,
) -> Result<LocusComparison> {
    let toeplitz = locus_scan(sym, SpectrumKind::Toeplitz, window, resolution, gap_fraction)?;
    let th = locus_scan(sym, SpectrumKind::Th, window, resolution, gap_fraction)?;
    let mut only_toeplitz = Vec::new();
    let mut only_th = Vec::new();
    for (i, (t, h)) in toeplitz.iter().zip(&th).enumerate() {
        match (t.flagged, h.flagged) {
            (true, false) => only_toeplitz.push(i),
            (false, true) => only_th.push(i),
            _ => {}
        }
    }
    Ok(LocusComparison { toeplitz, th, only_toeplitz, only_th })
}

/// phi(e^(2 pi i j / m)) for j = 0..m-1.
pub fn image_curve(sym: &RationalSymbolBC<C>, m: usize) -> Result<Vec<C>> {
    if m < 16 {
        return Err(Error::Unsupported(format!(
            "image curve needs at least 16 samples, got {m}"
        )));
    }
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        out.push(sym.evaluate(&C::new(theta.cos(), theta.sin()))?);
    }
    Ok(out)
}

/// Eigenvalues of one finite section with distance diagnostics.
#[derive(Clone, Debug)]
pub struct EigCloud {
    pub eigenvalues: Vec<C>,
    /// Per-eigenvalue distance to the nearest image-curve sample.
    pub dist_curve: Vec<f64>,
    /// Per-eigenvalue distance to the nearest flagged locus cell; infinite
    /// when no locus was supplied or nothing was flagged.
    pub dist_locus: Vec<f64>,
    /// phi(1), where isolated T+H eigenvalues keep appearing: at
    /// lambda = phi(1) the shifted symbol has a zero at z = 1, and when that
    /// zero is the largest-modulus one the leading coefficient of the T+H
    /// expansion vanishes, a channel the modulus-tie gap does not see.
    pub special_point: C,
    pub min_dist_special: f64,
}

/// Eigenvalues of T_n or T_n + H_n plus distances to the image curve, to the
/// flagged locus cells, and to phi(1).
pub fn eig_cloud(
    sym: &RationalSymbolBC<C>,
    n: usize,
    which: SpectrumKind,
    locus: Option<&[LocusSample]>,
) -> Result<EigCloud> {
    if n == 0 || n > MAX_CLOUD_SIZE {
        return Err(Error::Unsupported(format!(
            "cloud size must be in 1..={MAX_CLOUD_SIZE}, got {n}"
        )));
    }
    let matrix = match which {
        SpectrumKind::Toeplitz => build_toeplitz(sym, n)?,
        SpectrumKind::Th => build_th(sym, n)?,
    };
    let eigs: Vec<C> = eigenvalues_raw(&matrix)?.into_iter().map(ComplexFloat).collect();
    let curve = image_curve(sym, CURVE_SAMPLES)?;
    let special_point = sym.evaluate(&C::one())?;
    let flagged: Vec<C> = locus
        .unwrap_or(&[])
        .iter()
        .filter(|s| s.flagged)
        .map(|s| s.lambda.clone())
        .collect();
    let dist_curve: Vec<f64> = eigs.iter().map(|e| min_distance(e, &curve)).collect();
    let dist_locus: Vec<f64> = eigs.iter().map(|e| min_distance(e, &flagged)).collect();
    let min_dist_special = eigs
        .iter()
        .map(|e| (e.clone() - special_point.clone()).modulus())
        .fold(f64::INFINITY, f64::min);
    Ok(EigCloud { eigenvalues: eigs, dist_curve, dist_locus, special_point, min_dist_special })
}

fn min_distance(z: &C, set: &[C]) -> f64 {
    set.iter()
        .map(|w| (z.clone() - w.clone()).modulus())
        .fold(f64::INFINITY, f64::min)
}
