//! Closed-form Ehrhart polynomials of the slice families, the flag Eulerian
//! closed formula and the classical Eulerian formula.
//!
//! Two binomial semantics are used and never mixed. The closed forms treat
//! `binom(L(t), n)` as the degree-`n` polynomial `L (L-1) ... (L-n+1) / n!`.
//! The constant-term oracles count with `binom(m, n) = 0` for `m < 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{binomial, binomial_counting, factorial, IntPolynomial, RatPolynomial};

/// `binom(slope * t + offset, n)` as a polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBinomial {
    pub slope: BigInt,
    pub offset: BigInt,
    pub n: usize,
}

impl PolyBinomial {
    pub fn new(slope: impl Into<BigInt>, offset: impl Into<BigInt>, n: usize) -> Self {
        Self {
            slope: slope.into(),
            offset: offset.into(),
            n,
        }
    }

    /// Falling-factorial expansion divided by `n!`.
    pub fn expand(&self) -> RatPolynomial {
        let slope = BigRational::from_integer(self.slope.clone());
        let mut acc = RatPolynomial::one();
        for i in 0..self.n {
            let factor = RatPolynomial::linear(
                slope.clone(),
                BigRational::from_integer(&self.offset - BigInt::from(i)),
            );
            acc = &acc * &factor;
        }
        acc.scale(&BigRational::new(BigInt::one(), factorial(self.n)))
    }
}

fn sign(j: usize) -> BigInt {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn check_level(n: usize, r: usize, k: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidColorModulus(r));
    }
    if n == 0 || k == 0 || k > r * n {
        return Err(Error::LevelOutOfRange { k, max: r * n });
    }
    Ok(())
}

/// `sum_{j <= (k-1)/r} (-1)^{j+1} binom(n,j) binom(lower_j) - sum_{j <= k/r} (-1)^{j+1} binom(n,j) binom(upper_j)`
/// where both inner binomials are degree-`n` polynomials in `t`.
fn two_sum_formula(
    n: usize,
    r: usize,
    k: usize,
    term: impl Fn(usize, bool) -> PolyBinomial,
) -> RatPolynomial {
    let mut acc = RatPolynomial::zero();
    for j in 0..=(k - 1) / r {
        let c = BigRational::from_integer(-sign(j) * binomial(n, j));
        acc = &acc + &term(j, true).expand().scale(&c);
    }
    for j in 0..=k / r {
        let c = BigRational::from_integer(sign(j) * binomial(n, j));
        acc = &acc + &term(j, false).expand().scale(&c);
    }
    acc
}

/// Ehrhart polynomial of `{v in [0,r)^n : k-1 <= sum v < k}`.
pub fn ehrhart_a_closed(n: usize, r: usize, k: usize) -> Result<RatPolynomial> {
    check_level(n, r, k)?;
    let (n_i, r_i, k_i) = (n as i64, r as i64, k as i64);
    Ok(two_sum_formula(n, r, k, |j, lower| {
        let j = j as i64;
        let slope = if lower {
            k_i - 1 - r_i * j
        } else {
            k_i - r_i * j
        };
        PolyBinomial::new(slope, n_i - 1, n)
    }))
}

/// Ehrhart polynomial of the multi-hypersimplex `B^(r)_{n,k}`.
pub fn ehrhart_b_closed(n: usize, r: usize, k: usize) -> Result<RatPolynomial> {
    check_level(n, r, k)?;
    let (n_i, r_i, k_i) = (n as i64, r as i64, k as i64);
    Ok(two_sum_formula(n, r, k, |j, lower| {
        let j = j as i64;
        let slope = if lower {
            k_i - 1 - r_i * j
        } else {
            k_i - r_i * j
        };
        PolyBinomial::new(slope, n_i - j - 1, n)
    }))
}

/// `A^(r)_{n,k}` from the leading-coefficient formula.
pub fn flag_eulerian_closed(n: usize, r: usize, k: usize) -> Result<BigInt> {
    check_level(n, r, k)?;
    let pow = |base: usize| BigInt::from(base).pow(n as u32);
    let mut acc = BigInt::zero();
    for j in 0..=(k - 1) / r {
        acc -= sign(j) * binomial(n, j) * pow(k - r * j - 1);
    }
    for j in 0..=k / r {
        acc += sign(j) * binomial(n, j) * pow(k - r * j);
    }
    Ok(acc)
}

/// Number of permutations of `1..=n` with `k - 1` descents.
pub fn eulerian_closed(n: usize, k: usize) -> Result<BigInt> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::LevelOutOfRange { k, max: n });
    }
    Ok((0..k)
        .map(|j| sign(j) * binomial(n + 1, j) * BigInt::from(k - j).pow(n as u32))
        .sum())
}

/// Which slice family a constant-term count refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceKind {
    A,
    B,
}

/// `[m]_q = 1 + q + ... + q^{m-1}`.
fn q_integer(m: usize) -> IntPolynomial {
    IntPolynomial::from_coeffs(vec![1; m])
}

/// Lattice points of the `t`-th dilate as the constant term of
/// `[m]_q^n ([kt]_{1/q} - [kt-t]_{1/q})`, with `m = rt` (A) or `rt + 1` (B).
///
/// The closed top slice `B^(r)_{n,rn}` additionally contains the apex `(rt, ..., rt)`.
pub fn count_by_constant_term(
    kind: SliceKind,
    n: usize,
    r: usize,
    k: usize,
    t: usize,
) -> Result<BigInt> {
    check_level(n, r, k)?;
    if t == 0 {
        return Err(Error::NonPositiveDilation);
    }
    let side = match kind {
        SliceKind::A => r * t,
        SliceKind::B => r * t + 1,
    };
    let numerator = q_integer(side).pow(n);
    // constant term of P(q) * sum_{i in window} q^{-i} is sum of [q^i] P over the window
    let upper = match kind {
        SliceKind::B if k == r * n => k * t + 1,
        _ => k * t,
    };
    Ok(((k - 1) * t..upper).map(|i| numerator.coeff(i)).sum())
}

/// The binomial sum obtained by expanding the constant term, evaluated with
/// counting binomials. Differs from the true count only on the closed top
/// slice `k = rn` of the B family, where the apex is not included.
pub fn count_by_truncated_binomials(
    kind: SliceKind,
    n: usize,
    r: usize,
    k: usize,
    t: usize,
) -> Result<BigInt> {
    check_level(n, r, k)?;
    if t == 0 {
        return Err(Error::NonPositiveDilation);
    }
    let (n_i, r_i, k_i, t_i) = (n as i64, r as i64, k as i64, t as i64);
    let mut acc = BigInt::zero();
    for j in 0..=n {
        let j_i = j as i64;
        let shift = match kind {
            SliceKind::A => 0,
            SliceKind::B => j_i,
        };
        let base = n_i - r_i * t_i * j_i - shift + k_i * t_i - 1;
        let diff = binomial_counting(&BigInt::from(base - t_i), n)
            - binomial_counting(&BigInt::from(base), n);
        acc += -sign(j) * binomial(n, j) * diff;
    }
    Ok(acc)
}
