//! Benchmark-only crate; shared fixtures for the criterion targets.

use thdet::{ComplexFloat, GaussianRational, RationalSymbolBC, Scalar};

/// Float symbol with k zeros per side, spread over moduli 0.2..0.7, large
/// enough gaps that no route hits a coincidence guard.
pub fn float_symbol(k: usize) -> RationalSymbolBC<ComplexFloat> {
    spread_symbol(k)
}

/// The same parameter layout in exact arithmetic.
pub fn exact_symbol(k: usize) -> RationalSymbolBC<GaussianRational> {
    spread_symbol(k)
}

fn spread_symbol<S: Scalar>(k: usize) -> RationalSymbolBC<S> {
    // Rotating numerators keep all 4k parameters pairwise distinct.
    let param = |side: i64, j: i64| {
        S::from_ratio((2 + side, 10 + 3 * j), (1 + j, 20 + side))
    };
    let set = |side: i64| (0..k as i64).map(|j| param(side, j)).collect();
    RationalSymbolBC::new(set(0), set(1), set(2), set(3))
}
