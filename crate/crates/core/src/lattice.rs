//! Lattice-point counts of dilated cube slices, their Ehrhart polynomials
//! (by exact interpolation) and Ehrhart series.
//!
//! Slice counts go through a dynamic program over the running coordinate sum,
//! i.e. the coefficients of `(1 + q + ... + q^m)^n`. [`count_points_naive`]
//! walks every lattice point and is kept as an independent check.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bijections::std;
use crate::error::{Error, Result};
use crate::permstats::is_permutation;
use crate::poly::{factorial, IntPolynomial, RatPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RegionFamily {
    /// `{v in [0,r)^n : k-1 <= sum v < k}`.
    ASlice { k: usize },
    /// `{v in [0,r]^n : k-1 <= sum v < k}`, upper bound closed when `k = rn`.
    BSlice { k: usize },
    /// `[0,r]^n`.
    CubeClosed,
    /// `[0,r)^n`.
    CubeHalfOpen,
    /// `{v in [0,1]^n : std(v) = sigma}`.
    CellClosed(Vec<usize>),
    /// `{v in [0,1)^n : std(v) = sigma}`.
    CellHalfOpen(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceRegion {
    n: usize,
    r: usize,
    family: RegionFamily,
}

impl SliceRegion {
    pub fn new(n: usize, r: usize, family: RegionFamily) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColorModulus(r));
        }
        match &family {
            RegionFamily::ASlice { k } | RegionFamily::BSlice { k } => {
                if *k == 0 || *k > r * n {
                    return Err(Error::LevelOutOfRange { k: *k, max: r * n });
                }
            }
            RegionFamily::CellClosed(sigma) | RegionFamily::CellHalfOpen(sigma) => {
                if sigma.len() != n {
                    return Err(Error::CellDimension {
                        got: sigma.len(),
                        expected: n,
                    });
                }
                if !is_permutation(sigma) {
                    return Err(Error::InvalidPermutation(sigma.clone()));
                }
            }
            RegionFamily::CubeClosed | RegionFamily::CubeHalfOpen => {}
        }
        Ok(Self { n, r, family })
    }

    pub fn a_slice(n: usize, r: usize, k: usize) -> Result<Self> {
        Self::new(n, r, RegionFamily::ASlice { k })
    }

    pub fn b_slice(n: usize, r: usize, k: usize) -> Result<Self> {
        Self::new(n, r, RegionFamily::BSlice { k })
    }

    pub fn cube(n: usize, r: usize, closed: bool) -> Result<Self> {
        let family = if closed {
            RegionFamily::CubeClosed
        } else {
            RegionFamily::CubeHalfOpen
        };
        Self::new(n, r, family)
    }

    pub fn cell(sigma: Vec<usize>, closed: bool) -> Result<Self> {
        let n = sigma.len();
        let family = if closed {
            RegionFamily::CellClosed(sigma)
        } else {
            RegionFamily::CellHalfOpen(sigma)
        };
        Self::new(n, 1, family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn family(&self) -> &RegionFamily {
        &self.family
    }

    /// Largest coordinate and inclusive sum window of the `t`-th dilate, for
    /// the families described by a box and a sum constraint.
    fn box_window(&self, t: usize) -> Option<(usize, usize, usize)> {
        let (n, r) = (self.n, self.r);
        match self.family {
            RegionFamily::ASlice { k } => Some((r * t - 1, (k - 1) * t, k * t - 1)),
            RegionFamily::BSlice { k } => {
                let hi = if k == r * n { k * t } else { k * t - 1 };
                Some((r * t, (k - 1) * t, hi))
            }
            RegionFamily::CubeClosed => Some((r * t, 0, r * t * n)),
            RegionFamily::CubeHalfOpen => Some((r * t - 1, 0, r * t * n)),
            RegionFamily::CellClosed(_) | RegionFamily::CellHalfOpen(_) => None,
        }
    }
}

impl fmt::Display for SliceRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, r) = (self.n, self.r);
        match &self.family {
            RegionFamily::ASlice { k } => write!(f, "A-slice(n={n}, r={r}, k={k})"),
            RegionFamily::BSlice { k } => write!(f, "B-slice(n={n}, r={r}, k={k})"),
            RegionFamily::CubeClosed => write!(f, "[0,{r}]^{n}"),
            RegionFamily::CubeHalfOpen => write!(f, "[0,{r})^{n}"),
            RegionFamily::CellClosed(s) => write!(f, "closed cell {s:?}"),
            RegionFamily::CellHalfOpen(s) => write!(f, "half-open cell {s:?}"),
        }
    }
}

/// Coefficients of `(1 + q + ... + q^m)^n`: vectors in `{0..m}^n` by coordinate sum.
pub fn box_sum_counts(n: usize, m: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::one()];
    for _ in 0..n {
        let len = counts.len() + m;
        let mut prefix = Vec::with_capacity(counts.len() + 1);
        prefix.push(BigInt::zero());
        for c in &counts {
            let next = prefix.last().unwrap() + c;
            prefix.push(next);
        }
        let total = prefix.len() - 1;
        counts = (0..len)
            .map(|s| {
                let hi = (s + 1).min(total);
                let lo = s.saturating_sub(m);
                &prefix[hi] - &prefix[lo]
            })
            .collect();
    }
    counts
}

fn count_cell(sigma: &[usize], side: usize) -> BigInt {
    let n = sigma.len();
    let mut v = vec![0usize; n];
    let mut count = 0u64;
    loop {
        if std(&v) == sigma {
            count += 1;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return BigInt::from(count);
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] <= side {
                break;
            }
            v[pos] = 0;
        }
    }
}

/// Number of integer points in the `t`-th dilate of `region`.
pub fn count_points(region: &SliceRegion, t: usize) -> Result<BigInt> {
    if t == 0 {
        return Err(Error::NonPositiveDilation);
    }
    match &region.family {
        RegionFamily::CellClosed(sigma) => Ok(count_cell(sigma, t)),
        RegionFamily::CellHalfOpen(sigma) => Ok(count_cell(sigma, t - 1)),
        _ => {
            let (m, lo, hi) = region.box_window(t).expect("box family");
            let counts = box_sum_counts(region.n, m);
            Ok(counts
                .iter()
                .enumerate()
                .filter(|(s, _)| (lo..=hi).contains(s))
                .map(|(_, c)| c)
                .sum())
        }
    }
}

/// Brute-force count over every point of the bounding box.
pub fn count_points_naive(region: &SliceRegion, t: usize) -> Result<BigInt> {
    if t == 0 {
        return Err(Error::NonPositiveDilation);
    }
    let n = region.n;
    type Keep<'a> = Box<dyn Fn(&[usize]) -> bool + 'a>;
    let (side, keep): (usize, Keep<'_>) = match &region.family {
        RegionFamily::CellClosed(sigma) => (t, Box::new(move |v| std(v) == *sigma)),
        RegionFamily::CellHalfOpen(sigma) => (t - 1, Box::new(move |v| std(v) == *sigma)),
        _ => {
            let (m, lo, hi) = region.box_window(t).expect("box family");
            (m, Box::new(move |v| (lo..=hi).contains(&v.iter().sum())))
        }
    };
    let mut v = vec![0usize; n];
    let mut count = 0u64;
    loop {
        if keep(&v) {
            count += 1;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(BigInt::from(count));
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] <= side {
                break;
            }
            v[pos] = 0;
        }
    }
}

/// Degree-`<= n` interpolant of the counts at `t = 1..=n+1`, confirmed at `t = n+2`.
pub fn ehrhart_polynomial(region: &SliceRegion) -> Result<RatPolynomial> {
    let n = region.n;
    let points = (1..=n + 1)
        .map(|t| Ok((BigInt::from(t), count_points(region, t)?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = RatPolynomial::interpolate(&points);
    let check = n + 2;
    let not_poly = || Error::NotPolynomial {
        region: region.to_string(),
        degree: n,
    };
    if poly.eval_integer(check as i64) != Some(count_points(region, check)?) {
        return Err(not_poly());
    }
    let nf = factorial(n);
    if !(&nf % poly.common_denominator()).is_zero() {
        return Err(not_poly());
    }
    Ok(poly)
}

/// `(1 - z)^{dim + 1} sum_{t >= 0} E(t) z^t`, truncated after degree `dim + 1`.
///
/// `values` must hold `E(0), ..., E(dim + 1)`.
pub fn series_transform(values: &[BigRational], dim: usize) -> Option<IntPolynomial> {
    debug_assert!(values.len() >= dim + 2);
    let factor = IntPolynomial::binomial_power(1, -1, dim + 1).to_rational();
    let series = RatPolynomial::from_coeffs(values.iter().take(dim + 2).cloned());
    let product = &factor * &series;
    RatPolynomial::from_coeffs(product.coeffs().iter().take(dim + 2).cloned()).to_integer()
}

/// Ehrhart series of `region`; `E(0)` is read off the interpolated polynomial.
pub fn ehrhart_series(region: &SliceRegion) -> Result<IntPolynomial> {
    let poly = ehrhart_polynomial(region)?;
    let n = region.n;
    let values: Vec<BigRational> = (0..=n + 1)
        .map(|t| poly.eval(&BigRational::from_integer(t.into())))
        .collect();
    series_transform(&values, n).ok_or_else(|| Error::NonIntegralSeries(region.to_string()))
}

fn convention_polynomial(n: usize, r: usize, k: usize) -> Result<Option<IntPolynomial>> {
    if r == 0 {
        return Err(Error::InvalidColorModulus(r));
    }
    if k == 0 {
        return Ok(Some(if n == 0 {
            IntPolynomial::one()
        } else {
            IntPolynomial::zero()
        }));
    }
    if k > r * n {
        return Ok(Some(IntPolynomial::zero()));
    }
    Ok(None)
}

/// `A^(r)_{n,k}(z)`, the Ehrhart series of the half-open slice.
pub fn a_polynomial(n: usize, r: usize, k: usize) -> Result<IntPolynomial> {
    match convention_polynomial(n, r, k)? {
        Some(p) => Ok(p),
        None => ehrhart_series(&SliceRegion::a_slice(n, r, k)?),
    }
}

/// `B^(r)_{n,k}(z)`, the Ehrhart series of the multi-hypersimplex.
pub fn b_polynomial(n: usize, r: usize, k: usize) -> Result<IntPolynomial> {
    match convention_polynomial(n, r, k)? {
        Some(p) => Ok(p),
        None => ehrhart_series(&SliceRegion::b_slice(n, r, k)?),
    }
}
