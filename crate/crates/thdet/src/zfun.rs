//! Z-function combinatorics over parameter multisets: the pair products
//! Z(A,B), their composite quotient, the ordered/symmetric variants Z_O and
//! Z_S, multiset surgery A-U+T^{-1}, and power products U^n.

use crate::error::{Error, Result};
use crate::scalars::{one_minus_xy, Scalar};
use crate::tol;

/// Ordered list of parameters with multiset semantics: duplicates are kept
/// (surgery can create them) and every Z value is invariant under
/// permutation of the elements.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMultiset<S: Scalar> {
    pub elems: Vec<S>,
}

impl<S: Scalar> ParamMultiset<S> {
    pub fn new(elems: Vec<S>) -> Self {
        ParamMultiset { elems }
    }

    pub fn empty() -> Self {
        ParamMultiset { elems: Vec::new() }
    }

    pub fn from_slice(elems: &[S]) -> Self {
        ParamMultiset { elems: elems.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.elems.iter()
    }

    /// Disjoint union A+B; order of presentation is A's elements then B's.
    pub fn concat(&self, other: &Self) -> Self {
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        ParamMultiset { elems }
    }

    /// Elementwise inverses {1/a : a in A}; 0 elements are rejected.
    pub fn inverses(&self) -> Result<Self> {
        let mut elems = Vec::with_capacity(self.elems.len());
        for a in &self.elems {
            if a.is_zero() {
                return Err(Error::ZeroParameter("inverse of multiset element".into()));
            }
            elems.push(a.inv()?);
        }
        Ok(ParamMultiset { elems })
    }

    /// Subset of `self` selected by (distinct, in-range) indices.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut elems = Vec::with_capacity(indices.len());
        for &i in indices {
            let e = self.elems.get(i).ok_or_else(|| {
                Error::DimensionMismatch(format!("subset index {i} out of range {}", self.len()))
            })?;
            elems.push(e.clone());
        }
        Ok(ParamMultiset { elems })
    }
}

impl<S: Scalar> FromIterator<S> for ParamMultiset<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        ParamMultiset { elems: iter.into_iter().collect() }
    }
}

/// Reject a vanishing Z-product factor: exact zero in the exact backend,
/// modulus below the pole threshold in the float backend.
fn check_factor<S: Scalar>(f: &S, a: &S, b: &S) -> Result<()> {
    let singular = if S::EXACT { f.is_zero() } else { f.vanishes(tol::Z_POLE) };
    if singular {
        Err(Error::ZPole(format!("1 - ({a})({b}) vanishes")))
    } else {
        Ok(())
    }
}

/// Product of (1 - a*b) over all pairs, with pole detection per factor.
fn one_minus_pair_prod<S: Scalar>(a: &ParamMultiset<S>, b: &ParamMultiset<S>) -> Result<S> {
    let mut acc = S::one();
    for x in a.iter() {
        for y in b.iter() {
            let f = one_minus_xy(x, y);
            check_factor(&f, x, y)?;
            acc = acc * f;
        }
    }
    Ok(acc)
}

/// Z(A,B) = prod over pairs of (1 - a b)^{-1}; empty sets give 1.
pub fn z<S: Scalar>(a: &ParamMultiset<S>, b: &ParamMultiset<S>) -> Result<S> {
    one_minus_pair_prod(a, b)?.inv()
}

/// Z(A,B;C,D) = Z(A,B) Z(C,D) / (Z(A,D) Z(B,C)), computed as the single
/// quotient prod(1-ad)(1-bc) / prod(1-ab)(1-cd) so each factor appears once.
pub fn z_composite<S: Scalar>(
    a: &ParamMultiset<S>,
    b: &ParamMultiset<S>,
    c: &ParamMultiset<S>,
    d: &ParamMultiset<S>,
) -> Result<S> {
    let numer = one_minus_pair_prod(a, d)? * one_minus_pair_prod(b, c)?;
    let denom = one_minus_pair_prod(a, b)? * one_minus_pair_prod(c, d)?;
    numer.div(&denom)
}

/// Z_O(A) = prod over strict pairs i<j of (1 - a_i a_j)^{-1}.
pub fn z_o<S: Scalar>(a: &ParamMultiset<S>) -> Result<S> {
    let mut acc = S::one();
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let f = one_minus_xy(&a.elems[i], &a.elems[j]);
            check_factor(&f, &a.elems[i], &a.elems[j])?;
            acc = acc * f;
        }
    }
    acc.inv()
}

/// Z_S(A) = prod over pairs i<=j of (1 - a_i a_j)^{-1}; includes 1 - a_i^2.
pub fn z_s<S: Scalar>(a: &ParamMultiset<S>) -> Result<S> {
    let mut acc = S::one();
    for i in 0..a.len() {
        for j in i..a.len() {
            let f = one_minus_xy(&a.elems[i], &a.elems[j]);
            check_factor(&f, &a.elems[i], &a.elems[j])?;
            acc = acc * f;
        }
    }
    acc.inv()
}

/// Z_O(A;C) = Z_O(A) Z_S(C) / Z(A,C).
pub fn z_o_with<S: Scalar>(a: &ParamMultiset<S>, c: &ParamMultiset<S>) -> Result<S> {
    let over = z_o(a)? * z_s(c)?;
    Ok(over * one_minus_pair_prod(a, c)?)
}

/// Multiset surgery A - U + T^{-1}: drop the elements of A at the (distinct)
/// indices in `u`, then append the inverses of T's elements.
pub fn surgery<S: Scalar>(
    a: &ParamMultiset<S>,
    u: &[usize],
    t: &ParamMultiset<S>,
) -> Result<ParamMultiset<S>> {
    let mut drop = vec![false; a.len()];
    for &i in u {
        if i >= a.len() {
            return Err(Error::DimensionMismatch(format!(
                "surgery index {i} out of range {}",
                a.len()
            )));
        }
        if drop[i] {
            return Err(Error::DimensionMismatch(format!("surgery index {i} repeated")));
        }
        drop[i] = true;
    }
    let mut elems: Vec<S> = a
        .elems
        .iter()
        .zip(&drop)
        .filter(|(_, &d)| !d)
        .map(|(e, _)| e.clone())
        .collect();
    for t_el in t.iter() {
        if t_el.is_zero() {
            return Err(Error::ZeroParameter("surgery inverts a zero element".into()));
        }
        elems.push(t_el.inv()?);
    }
    Ok(ParamMultiset::new(elems))
}

/// U^n = prod over u in U of u^n; the empty product is 1.
pub fn pow_prod<S: Scalar>(u: &ParamMultiset<S>, n: i64) -> Result<S> {
    let mut acc = S::one();
    for x in u.iter() {
        if n < 0 && x.is_zero() {
            return Err(Error::ZeroParameter("power product of 0 with negative exponent".into()));
        }
        acc = acc * x.powi(n)?;
    }
    Ok(acc)
}

/// Parity sign (-1)^k as a scalar.
pub fn parity_sign<S: Scalar>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

// ---------------------------------------------------------------------------
// Two-sided identity checks (pair-product and inversion identities). Each
// returns (lhs, rhs) so callers decide the comparison discipline: exact
// equality or float relative error.
// ---------------------------------------------------------------------------

/// Z(A,B) vs Z(B,A).
pub fn identity_symmetry<S: Scalar>(a: &ParamMultiset<S>, b: &ParamMultiset<S>) -> Result<(S, S)> {
    Ok((z(a, b)?, z(b, a)?))
}

/// Z(A+B,C) vs Z(A,C) Z(B,C).
pub fn identity_additivity<S: Scalar>(
    a: &ParamMultiset<S>,
    b: &ParamMultiset<S>,
    c: &ParamMultiset<S>,
) -> Result<(S, S)> {
    Ok((z(&a.concat(b), c)?, z(a, c)? * z(b, c)?))
}

/// Z_O(A+B) vs Z_O(A) Z_O(B) Z(A,B).
pub fn identity_zo_factorization<S: Scalar>(
    a: &ParamMultiset<S>,
    b: &ParamMultiset<S>,
) -> Result<(S, S)> {
    Ok((z_o(&a.concat(b))?, z_o(a)? * z_o(b)? * z(a, b)?))
}

/// prod 1/(a-b) vs prod a^{-|B|} * Z(A^{-1}, B); needs a != b pairwise and
/// nonzero A.
pub fn identity_difference_product<S: Scalar>(
    a: &ParamMultiset<S>,
    b: &ParamMultiset<S>,
) -> Result<(S, S)> {
    let mut lhs = S::one();
    for x in a.iter() {
        for y in b.iter() {
            lhs = lhs * (x.clone() - y.clone()).inv()?;
        }
    }
    let rhs = pow_prod(a, -(b.len() as i64))? * z(&a.inverses()?, b)?;
    Ok((lhs, rhs))
}

/// Z(A,B) vs (-1)^{|A||B|} prod a^{-|B|} prod b^{-|A|} Z(A^{-1},B^{-1}).
pub fn identity_inversion_pair<S: Scalar>(
    a: &ParamMultiset<S>,
    b: &ParamMultiset<S>,
) -> Result<(S, S)> {
    let sign = parity_sign::<S>(a.len() * b.len());
    let rhs = sign
        * pow_prod(a, -(b.len() as i64))?
        * pow_prod(b, -(a.len() as i64))?
        * z(&a.inverses()?, &b.inverses()?)?;
    Ok((z(a, b)?, rhs))
}

/// Z_O(A) vs (-1)^{|A|(|A|-1)/2} prod a^{-|A|+1} Z_O(A^{-1}).
pub fn identity_inversion_ordered<S: Scalar>(a: &ParamMultiset<S>) -> Result<(S, S)> {
    let k = a.len();
    let sign = parity_sign::<S>(k * k.saturating_sub(1) / 2);
    let rhs = sign * pow_prod(a, -(k as i64) + 1)? * z_o(&a.inverses()?)?;
    Ok((z_o(a)?, rhs))
}
