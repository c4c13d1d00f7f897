//! Closed-form determinants of finite Toeplitz and Toeplitz-plus-Hankel
//! matrices with rational symbols.
//!
//! The crate is organized around one symbol type ([`RationalSymbolBC`]) whose
//! zeros and poles inside and outside the unit circle drive every formula:
//! subset-sum determinant expansions, Szego-type constants, Fredholm
//! determinant reductions of the same quantities, brute-force matrix oracles,
//! and eigenvalue-locus scans. Exact Gaussian-rational and complex-float
//! backends run the same generic code.

pub mod day_toeplitz;
pub mod eigen;
pub mod error;
pub mod fredholm;
pub mod io;
pub mod matrix_oracle;
pub mod poly;
pub mod sampling;
pub mod scalars;
pub mod spectra;
pub mod symbol;
pub mod th_formula;
pub mod tol;
pub mod zfun;

pub use day_toeplitz::{
    bc_toeplitz_det, bc_toeplitz_det_with_terms, bocg_det_toeplitz, day_det, szego_e_series,
    szego_e_toeplitz, szego_g, truncation_order, BcToeplitzTerm, DayTermRecord,
};
pub use error::{Error, Result};
pub use fredholm::{
    alphas, be_det, be_det_k1, cauchy_type_det, d_i_det, d_i_tail_sum, k_entry, k_window,
    psi_fourier, vanishing_residual, vanishing_residual_with_scale, AlphaSet, KMatrixWindow,
    PsiKind,
};
pub use io::{
    bc_terms_to_json, curve_to_csv, day_form_from_json, eigs_to_csv, locus_to_csv, matrix_to_csv,
    read_text, symbol_from_json, terms_to_json, write_text,
};
pub use matrix_oracle::{build_hankel, build_th, build_toeplitz, det_lu, DenseMatrix};
pub use sampling::{Sampler, SEPARATION};
pub use scalars::{parse_scalar, ComplexFloat, GaussianRational, Scalar};
pub use spectra::{
    classify_th_roots, eig_cloud, gap_th, gap_toeplitz, image_curve, locus_compare, locus_scan,
    shifted_roots, shifted_roots_day, EigCloud, LocusComparison, LocusSample, ShiftedRoots,
    SpectrumKind, ThRootSplit, Window,
};
pub use symbol::{day_to_bc, DayForm, FourierExpansion, RationalSymbolBC, ValidationReport, WHFactors};
pub use th_formula::{e_th, th_det, th_det_even, th_det_k1, SubsetTerm};
pub use zfun::ParamMultiset;
