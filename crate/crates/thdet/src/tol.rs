//! Pinned numeric thresholds used across the crate. Each constant is the
//! single source of truth for one class of comparison.

/// A factor `1 - a*b` inside a Z-product counts as a pole below this modulus
/// (float backend); the exact backend tests exact zero instead.
pub const Z_POLE: f64 = 1e-13;

/// Two parameters count as coincident (validation failure) below this
/// distance in the float backend; exact backend uses exact equality.
pub const COINCIDENT: f64 = 1e-10;

/// Relative tolerance for comparing two float determinant routes.
pub const ROUTE_REL: f64 = 1e-9;

/// Absolute floor added to every relative float comparison so that values
/// near zero do not demand impossible relative accuracy.
pub const ABS_FLOOR: f64 = 1e-14;

/// Target truncation error for Fredholm-determinant windows.
pub const TRUNCATION_TARGET: f64 = 1e-15;

/// Hard cap on Fredholm window size before reporting truncation failure.
pub const TRUNCATION_CAP: usize = 2048;

/// Relative residual bound certifying an eigenpair against the original
/// matrix: ||(M - lambda I) v|| <= EIG_RESIDUAL * ||M||_F with ||v|| = 1.
pub const EIG_RESIDUAL: f64 = 1e-8;

/// Minimum trapezoid samples for winding-number integration.
pub const WINDING_SAMPLES: usize = 256;

/// Guard on |phi| along the circle during winding integration; smaller
/// values mean the symbol (numerically) vanishes on the circle.
pub const WINDING_VANISH: f64 = 1e-9;

/// A locus cell flags as near-transition when the modulus gap falls below
/// this fraction of the local modulus scale.
pub const LOCUS_GAP_FRACTION: f64 = 1e-3;
