//! Truncated power series in `(x, y, z)` with exact rational coefficients, and
//! the generating-function identities between the colored-permutation and
//! lattice-point generating functions.
//!
//! A series is either exponential in `x` (entry `(n, a, b)` is the coefficient
//! of `x^n/n! y^a z^b`) or ordinary (coefficient of `x^n y^a z^b`). Products
//! of exponential series carry the binomial factor `binom(n, j)` in the
//! `x`-convolution. Every operation is exact inside the truncation box.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::b_polynomial;
use crate::permstats::{enumerate, fdes, fdes_star, ides, joint_distribution, Statistic};
use crate::poly::{binomial, binomial_polynomial, factorial, IntPolynomial};
use crate::verdict::{Verdict, Witness};

/// Normalization of the `x` variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XScale {
    Exponential,
    Ordinary,
}

/// Truncation box: largest kept exponent of `x`, `y` and `z`.
pub type Orders = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    orders: Orders,
    scale: XScale,
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    pub fn zero(orders: Orders, scale: XScale) -> Self {
        let (nx, ny, nz) = orders;
        Self {
            orders,
            scale,
            coeffs: vec![BigRational::zero(); (nx + 1) * (ny + 1) * (nz + 1)],
        }
    }

    pub fn one(orders: Orders, scale: XScale) -> Self {
        Self::monomial(orders, scale, (0, 0, 0), BigRational::one())
    }

    /// `c x^n y^a z^b` (or `c x^n/n! ...`), dropped if outside the box.
    pub fn monomial(orders: Orders, scale: XScale, at: Orders, c: BigRational) -> Self {
        let mut s = Self::zero(orders, scale);
        s.add_term(at, &c);
        s
    }

    /// Finite sum of terms `((n, a, b), c)`; terms outside the box are dropped.
    pub fn from_terms(
        orders: Orders,
        scale: XScale,
        terms: impl IntoIterator<Item = (Orders, i64)>,
    ) -> Self {
        let mut s = Self::zero(orders, scale);
        for (at, c) in terms {
            s.add_term(at, &BigRational::from_integer(c.into()));
        }
        s
    }

    /// A polynomial in `y` only.
    pub fn from_y_polynomial(orders: Orders, scale: XScale, p: &IntPolynomial) -> Self {
        let mut s = Self::zero(orders, scale);
        for (a, c) in p.coeffs().iter().enumerate() {
            s.add_term((0, a, 0), &BigRational::from_integer(c.clone()));
        }
        s
    }

    pub fn orders(&self) -> Orders {
        self.orders
    }

    pub fn scale(&self) -> XScale {
        self.scale
    }

    fn index(&self, (n, a, b): Orders) -> Option<usize> {
        let (nx, ny, nz) = self.orders;
        (n <= nx && a <= ny && b <= nz).then(|| (n * (ny + 1) + a) * (nz + 1) + b)
    }

    fn position(&self, i: usize) -> Orders {
        let (_, ny, nz) = self.orders;
        let b = i % (nz + 1);
        let rest = i / (nz + 1);
        (rest / (ny + 1), rest % (ny + 1), b)
    }

    pub fn coeff(&self, at: Orders) -> BigRational {
        self.index(at)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Adds `c` at `at`; silently ignores positions outside the box.
    pub fn add_term(&mut self, at: Orders, c: &BigRational) {
        if let Some(i) = self.index(at) {
            self.coeffs[i] += c;
        }
    }

    pub fn set(&mut self, at: Orders, c: BigRational) {
        if let Some(i) = self.index(at) {
            self.coeffs[i] = c;
        }
    }

    /// Nonzero entries with their exponents.
    pub fn terms(&self) -> impl Iterator<Item = (Orders, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.position(i), c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.orders != other.orders {
            return Err(Error::OrderMismatch(self.orders, other.orders));
        }
        if self.scale != other.scale {
            return Err(Error::NormalizationMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, d) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c += d;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (c, d) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c -= d;
        }
        Ok(out)
    }

    pub fn scale_by(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|a| *a *= c);
        out
    }

    /// Weight of the `x`-convolution term pairing `x^i` with `x^{n-i}`.
    fn x_weight(&self, n: usize, i: usize) -> BigInt {
        match self.scale {
            XScale::Ordinary => BigInt::one(),
            XScale::Exponential => binomial(n, i),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.orders, self.scale);
        let lhs: Vec<_> = self.terms().collect();
        let rhs: Vec<_> = other.terms().collect();
        for &((n1, a1, b1), c1) in &lhs {
            for &((n2, a2, b2), c2) in &rhs {
                let at = (n1 + n2, a1 + a2, b1 + b2);
                if let Some(i) = out.index(at) {
                    let w = out.x_weight(n1 + n2, n1);
                    out.coeffs[i] += c1 * c2 * BigRational::from_integer(w);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::one(self.orders, self.scale);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    ///
    /// Solves `sum_{beta <= alpha} w u_beta v_{alpha - beta} = [alpha = 0]`
    /// in lexicographic order of `alpha`.
    pub fn inverse(&self) -> Result<Self> {
        let u0 = self.coeff((0, 0, 0));
        if u0.is_zero() {
            return Err(Error::NotAUnit(u0.to_string()));
        }
        let u0_inv = u0.recip();
        let unit_terms: Vec<_> = self.terms().filter(|(at, _)| *at != (0, 0, 0)).collect();
        let mut out = Self::zero(self.orders, self.scale);
        for i in 0..out.coeffs.len() {
            let alpha = out.position(i);
            let mut acc = if i == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for &((n, a, b), c) in &unit_terms {
                if n > alpha.0 || a > alpha.1 || b > alpha.2 {
                    continue;
                }
                let rest = out.coeff((alpha.0 - n, alpha.1 - a, alpha.2 - b));
                if rest.is_zero() {
                    continue;
                }
                let w = out.x_weight(alpha.0, n);
                acc -= c * rest * BigRational::from_integer(w);
            }
            out.coeffs[i] = acc * &u0_inv;
        }
        Ok(out)
    }

    /// Same coefficient array read with the other normalization of `x`:
    /// `sum a_n x^n/n!` becomes `sum a_n x^n` and vice versa.
    pub fn relabel(&self, scale: XScale) -> Self {
        Self {
            orders: self.orders,
            scale,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The same function written in ordinary normalization (divides entry `n` by `n!`).
    pub fn to_ordinary(&self) -> Self {
        if self.scale == XScale::Ordinary {
            return self.clone();
        }
        let mut out = self.relabel(XScale::Ordinary);
        for i in 0..out.coeffs.len() {
            let (n, _, _) = out.position(i);
            out.coeffs[i] /= BigRational::from_integer(factorial(n));
        }
        out
    }

    /// The same function written in exponential normalization (multiplies entry `n` by `n!`).
    pub fn to_exponential(&self) -> Self {
        if self.scale == XScale::Exponential {
            return self.clone();
        }
        let mut out = self.relabel(XScale::Exponential);
        for i in 0..out.coeffs.len() {
            let (n, _, _) = out.position(i);
            out.coeffs[i] *= BigRational::from_integer(factorial(n));
        }
        out
    }

    /// Multiplies by `z^shift`, dropping what leaves the box.
    pub fn shift_z(&self, shift: usize) -> Self {
        let mut out = Self::zero(self.orders, self.scale);
        for ((n, a, b), c) in self.terms() {
            out.add_term((n, a, b + shift), c);
        }
        out
    }

    /// The polynomial in `z` multiplying `x^n y^a`, if all its coefficients are integers.
    pub fn z_polynomial(&self, n: usize, a: usize) -> Option<IntPolynomial> {
        let (_, _, nz) = self.orders;
        (0..=nz)
            .map(|b| {
                let c = self.coeff((n, a, b));
                c.is_integer().then(|| c.to_integer())
            })
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::from_coeffs)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_counting(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Compares all coefficients with `x <= max.0`, `y <= max.1`, `z <= max.2`.
    pub fn compare_within(&self, other: &Self, max: Orders) -> Result<Verdict> {
        self.check_compatible(other)?;
        for i in 0..self.coeffs.len() {
            let (n, a, b) = self.position(i);
            if n > max.0 || a > max.1 || b > max.2 {
                continue;
            }
            if self.coeffs[i] != other.coeffs[i] {
                return Ok(Verdict::fail(Witness::new(
                    [("x", n as i64), ("y", a as i64), ("z", b as i64)],
                    &self.coeffs[i],
                    &other.coeffs[i],
                )));
            }
        }
        Ok(Verdict::pass())
    }

    pub fn compare(&self, other: &Self) -> Result<Verdict> {
        self.compare_within(other, self.orders)
    }
}

fn q(c: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(c.into())
}

/// Box used by the builders: holds every `x^n` slice with `n <= nx` completely.
pub fn default_orders(r: usize, nx: usize) -> Orders {
    (nx, r * nx, nx)
}

fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidColorModulus(r))
    } else {
        Ok(())
    }
}

/// `sum_n sum_{(sigma,c)} y^{fdes+1} z^{des(sigma^-1)+1} x^n/n!`, with constant term 1.
pub fn build_a(r: usize, nx: usize) -> Result<TruncSeries> {
    check_r(r)?;
    let orders = default_orders(r, nx);
    let mut s = TruncSeries::one(orders, XScale::Exponential);
    let one = BigRational::one();
    for n in 1..=nx {
        for p in enumerate(n, r)? {
            s.add_term((n, fdes(&p)? + 1, ides(p.sigma()) + 1), &one);
        }
    }
    Ok(s)
}

/// `sum_n sum_k B^(r)_{n,k}(z) y^k x^n/n!` from lattice-point counts.
pub fn build_b(r: usize, nx: usize) -> Result<TruncSeries> {
    check_r(r)?;
    let orders = default_orders(r, nx);
    let mut s = TruncSeries::zero(orders, XScale::Exponential);
    for n in 0..=nx {
        for k in 0..=r * n {
            let p = b_polynomial(n, r, k)?;
            for (b, c) in p.coeffs().iter().enumerate() {
                s.add_term((n, k, b), &q(c.clone()));
            }
        }
    }
    Ok(s)
}

/// `sum_n sum_{(sigma,c)} y^{rn - fexc} z^{ceil(fdes*/r)} x^n/n!`, with constant term 1.
pub fn build_c(r: usize, nx: usize) -> Result<TruncSeries> {
    check_r(r)?;
    let orders = default_orders(r, nx);
    let mut s = TruncSeries::one(orders, XScale::Exponential);
    let one = BigRational::one();
    for n in 1..=nx {
        for p in enumerate(n, r)? {
            let k = r * n - Statistic::Fexc.eval(&p);
            s.add_term((n, k, fdes_star(&p)?.div_ceil(r)), &one);
        }
    }
    Ok(s)
}

/// `e^{(1-z) y^r x}` in exponential normalization: entry `(j, rj, b)` is `(-1)^b binom(j, b)`.
pub fn exp_factor(r: usize, orders: Orders) -> TruncSeries {
    let mut s = TruncSeries::zero(orders, XScale::Exponential);
    for j in 0..=orders.0 {
        for b in 0..=j {
            let c = if b % 2 == 0 {
                binomial(j, b)
            } else {
                -binomial(j, b)
            };
            s.add_term((j, r * j, b), &q(c));
        }
    }
    s
}

/// Checks `lhs = e^{(1-z) y^r x} rhs_base` coefficientwise.
pub fn verify_exp_relation(lhs: &TruncSeries, rhs_base: &TruncSeries, r: usize) -> Result<Verdict> {
    lhs.check_compatible(rhs_base)?;
    if lhs.scale != XScale::Exponential {
        return Err(Error::NormalizationMismatch);
    }
    let (nx, ny, _) = lhs.orders;
    if ny < r * nx {
        return Err(Error::TruncationMargin(format!(
            "y-order {ny} is below r * x-order = {}",
            r * nx
        )));
    }
    let rhs = exp_factor(r, lhs.orders).mul(rhs_base)?;
    lhs.compare(&rhs)
}

/// Linear map `z^k -> z^{ceil(k/r)}`.
pub fn beta(p: &IntPolynomial, r: usize) -> IntPolynomial {
    assert!(r >= 1, "beta needs r >= 1");
    let mut out = IntPolynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        out.add_term(k.div_ceil(r), c);
    }
    out
}

/// `W_n(y, z) = sum y^{fexc} z^{fdes*}` for `n <= nx`, as an ordinary series.
pub fn build_w(r: usize, orders: Orders) -> Result<TruncSeries> {
    check_r(r)?;
    let mut s = TruncSeries::one(orders, XScale::Ordinary);
    for n in 1..=orders.0 {
        let table = joint_distribution(n, r, Statistic::Fexc, Statistic::FdesStar)?;
        for (&(a, b), &c) in table.counts() {
            s.add_term((n, a, b), &q(c));
        }
    }
    Ok(s)
}

/// `(1 - x y^r)^e / (1 - x)^d` in `(x, y)`.
fn x_ratio(r: usize, orders: Orders, e: usize, d: usize) -> Result<TruncSeries> {
    let num = TruncSeries::from_terms(orders, XScale::Ordinary, [((0, 0, 0), 1), ((1, r, 0), -1)]);
    let den = TruncSeries::from_terms(orders, XScale::Ordinary, [((0, 0, 0), 1), ((1, 0, 0), -1)]);
    num.pow(e)?.mul(&den.inverse()?.pow(d)?)
}

/// The series `F_k(x, y)` of the bi-Eulerian formula.
pub fn f_k(r: usize, k: usize, orders: Orders) -> Result<TruncSeries> {
    let rr = r as i64;
    let level = k / r;
    let prefactor = x_ratio(r, orders, level, level + 1)?;
    let one_minus_yr =
        TruncSeries::from_terms(orders, XScale::Ordinary, [((0, 0, 0), 1), ((0, r, 0), -1)]);
    let mut inner =
        TruncSeries::from_terms(orders, XScale::Ordinary, (0..r).map(|a| ((0, a, 0), 1)));
    for i in 1..=r {
        let e = ((k as i64 - i as i64).div_euclid(rr) + 1) as usize;
        let term = x_ratio(r, orders, e, e)?;
        let y_i = TruncSeries::monomial(orders, XScale::Ordinary, (0, i, 0), BigRational::one());
        inner = inner.sub(&y_i.mul(&term)?)?;
    }
    prefactor.mul(&one_minus_yr)?.mul(&inner.inverse()?)
}

/// `sum_n W_n x^n / (1 - z^r)^n = (1 - z) sum_k z^k F_k(x, y)`, compared for
/// `x <= nx`, `y <= r nx` and `z <= nz - r nx`.
pub fn verify_foata_han(r: usize, nx: usize, nz: usize) -> Result<Verdict> {
    check_r(r)?;
    if nz < r * nx {
        return Err(Error::TruncationMargin(format!(
            "z-order {nz} is below r * x-order = {}",
            r * nx
        )));
    }
    let orders = (nx, r * nx, nz);
    let w = build_w(r, orders)?;
    let one_minus_zr =
        TruncSeries::from_terms(orders, XScale::Ordinary, [((0, 0, 0), 1), ((0, 0, r), -1)]);
    let x = TruncSeries::monomial(orders, XScale::Ordinary, (1, 0, 0), BigRational::one());
    let x_over = x.mul(&one_minus_zr.inverse()?)?;
    let mut lhs = TruncSeries::zero(orders, XScale::Ordinary);
    for n in 0..=nx {
        let mut layer = TruncSeries::zero(orders, XScale::Ordinary);
        for ((m, a, b), c) in w.terms() {
            if m == n {
                layer.add_term((0, a, b), c);
            }
        }
        lhs = lhs.add(&layer.mul(&x_over.pow(n)?)?)?;
    }
    let mut sum = TruncSeries::zero(orders, XScale::Ordinary);
    for k in 0..=nz {
        sum = sum.add(&f_k(r, k, orders)?.shift_z(k))?;
    }
    let one_minus_z =
        TruncSeries::from_terms(orders, XScale::Ordinary, [((0, 0, 0), 1), ((0, 0, 1), -1)]);
    let rhs = one_minus_z.mul(&sum)?;
    lhs.compare_within(&rhs, (nx, r * nx, nz - r * nx))
}

/// Which ordinary generating function [`verify_ogf`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OgfSide {
    A,
    C,
}

/// `sum_{m=0}^{nz} z^m (1 - y g^m)^{-1}`.
fn geometric_m_sum(orders: Orders, g: &TruncSeries) -> Result<TruncSeries> {
    let y = TruncSeries::monomial(orders, XScale::Ordinary, (0, 1, 0), BigRational::one());
    let one = TruncSeries::one(orders, XScale::Ordinary);
    let mut g_m = one.clone();
    let mut acc = TruncSeries::zero(orders, XScale::Ordinary);
    for m in 0..=orders.2 {
        let term = one.sub(&y.mul(&g_m)?)?.inverse()?;
        acc = acc.add(&term.shift_z(m))?;
        g_m = g_m.mul(g)?;
    }
    Ok(acc)
}

/// Checks the ordinary generating function of `A_n(y, z)` or `C_n(y, z)`
/// against its product formula in the box `x <= nx`, `y <= r nx`, `z <= nz`.
pub fn verify_ogf(side: OgfSide, r: usize, nx: usize, nz: usize) -> Result<Verdict> {
    check_r(r)?;
    if nz < nx {
        return Err(Error::TruncationMargin(format!(
            "z-order {nz} is below x-order {nx}: the x^{nx} slice would be cut"
        )));
    }
    let ny = r * nx;
    let orders = (nx, ny, nz);
    let base = match side {
        OgfSide::A => build_a(r, nx)?,
        OgfSide::C => build_c(r, nx)?,
    };
    // the left side is sum A_n x^n, not sum A_n x^n/n!
    let mut lhs = TruncSeries::zero(orders, XScale::Ordinary);
    for (at, c) in base.relabel(XScale::Ordinary).terms() {
        lhs.add_term(at, c);
    }
    let t = |terms: Vec<(Orders, i64)>| TruncSeries::from_terms(orders, XScale::Ordinary, terms);
    let one_minus_y = t(vec![((0, 0, 0), 1), ((0, 1, 0), -1)]);
    let one_minus_z = t(vec![((0, 0, 0), 1), ((0, 0, 1), -1)]);
    // x (1 - z)
    let x_dz = t(vec![((1, 0, 0), 1), ((1, 0, 1), -1)]);
    let one = TruncSeries::one(orders, XScale::Ordinary);
    let rhs = match side {
        OgfSide::A => {
            let one_minus_yr = t(vec![((0, 0, 0), 1), ((0, r, 0), -1)]);
            let g = one.sub(&x_dz.mul(&one_minus_yr)?)?.inverse()?;
            one_minus_y
                .mul(&one_minus_z)?
                .mul(&geometric_m_sum(orders, &g)?)?
        }
        OgfSide::C => {
            let yr = t(vec![((0, r, 0), 1)]);
            let numer = one.sub(&x_dz.mul(&yr)?)?;
            let h = numer.mul(&one.sub(&x_dz)?.inverse()?)?;
            one_minus_z
                .mul(&one_minus_y)?
                .mul(&numer.inverse()?)?
                .mul(&geometric_m_sum(orders, &h)?)?
        }
    };
    lhs.compare(&rhs)
}

/// `sum_{(sigma,c)} y^{fdes+1} z^{des(sigma^-1)+1}` as an ordinary `(y, z)` series with `x`-order 0.
pub fn a_n_yz(n: usize, r: usize, ny: usize, nz: usize) -> Result<TruncSeries> {
    let a = build_a(r, n)?;
    let mut out = TruncSeries::zero((0, ny, nz), XScale::Ordinary);
    for ((m, a_exp, b), c) in a.terms() {
        if m == n {
            out.add_term((0, a_exp, b), c);
        }
    }
    Ok(out)
}

/// `G_n(y, z) = sum_{i,j} binom(ij + n - 1, n) y^i z^j` (polynomial binomial).
fn binomial_grid(n: usize, ny: usize, nz: usize) -> TruncSeries {
    let mut s = TruncSeries::zero((0, ny, nz), XScale::Ordinary);
    for i in 0..=ny {
        for j in 0..=nz {
            let top = BigInt::from((i * j) as i64 + n as i64 - 1);
            s.set((0, i, j), q(binomial_polynomial(&top, n)));
        }
    }
    s
}

/// Named results of the polynomial identities for `n = 0..=n_max` (`n >= 1` for the
/// sum-of-powers identity).
pub fn verify_polynomial_identities(r: usize, n_max: usize) -> Result<Vec<(String, Verdict)>> {
    check_r(r)?;
    let mut out = Vec::new();
    let mut relara = Vec::new();
    let mut formula = Vec::new();
    let mut garsia = Vec::new();
    let mut powers = Vec::new();
    let mut swap = Vec::new();
    for n in 0..=n_max {
        let (ny, nz) = (r * n + 3, n + 3);
        let yz = |terms: Vec<(Orders, i64)>| {
            TruncSeries::from_terms((0, ny, nz), XScale::Ordinary, terms)
        };
        let one_minus_y = yz(vec![((0, 0, 0), 1), ((0, 1, 0), -1)]);
        let one_minus_yr = yz(vec![((0, 0, 0), 1), ((0, r, 0), -1)]);
        let one_minus_z = yz(vec![((0, 0, 0), 1), ((0, 0, 1), -1)]);
        let a_r = a_n_yz(n, r, ny, nz)?;
        let a_1 = a_n_yz(n, 1, ny, nz)?;

        // A^(r)_n (1-y)^n = (1-y^r)^n A^(1)_n
        relara.push(
            a_r.mul(&one_minus_y.pow(n)?)?
                .compare(&one_minus_yr.pow(n)?.mul(&a_1)?)?,
        );

        let grid = binomial_grid(n, ny, nz);
        let z_factor = one_minus_z.pow(n + 1)?;
        formula.push(
            a_r.compare(
                &one_minus_yr
                    .pow(n)?
                    .mul(&one_minus_y)?
                    .mul(&z_factor)?
                    .mul(&grid)?,
            )?,
        );
        garsia.push(a_1.compare(&one_minus_y.pow(n + 1)?.mul(&z_factor)?.mul(&grid)?)?);

        if n >= 1 {
            // A^(r)_n(y, 1) = (1-y^r)^n (1-y) sum_{i>=1} i^n y^i
            let mut at_one = TruncSeries::zero((0, ny, 0), XScale::Ordinary);
            for ((_, a, _), c) in a_r.terms() {
                at_one.add_term((0, a, 0), c);
            }
            let y1 = |terms: Vec<(Orders, i64)>| {
                TruncSeries::from_terms((0, ny, 0), XScale::Ordinary, terms)
            };
            let mut power_sum = TruncSeries::zero((0, ny, 0), XScale::Ordinary);
            for i in 1..=ny {
                power_sum.set((0, i, 0), q(BigInt::from(i).pow(n as u32)));
            }
            let rhs = y1(vec![((0, 0, 0), 1), ((0, r, 0), -1)])
                .pow(n)?
                .mul(&y1(vec![((0, 0, 0), 1), ((0, 1, 0), -1)]))?
                .mul(&power_sum)?;
            powers.push(at_one.compare(&rhs)?);
        }

        let by_fdes = joint_distribution(n, r, Statistic::Fdes, Statistic::InverseDescents)?;
        let by_cdes = joint_distribution(n, r, Statistic::Cdes, Statistic::InverseDescents)?;
        swap.push(
            match by_fdes
                .counts()
                .keys()
                .chain(by_cdes.counts().keys())
                .find(|&&(a, b)| by_fdes.get(a, b) != by_cdes.get(a, b))
            {
                None => Verdict::pass(),
                Some(&(a, b)) => Verdict::fail(Witness::new(
                    [("n", n as i64), ("y", a as i64), ("z", b as i64)],
                    by_fdes.get(a, b),
                    by_cdes.get(a, b),
                )),
            },
        );
    }
    out.push((
        "colored-to-uncolored factorization".to_string(),
        relara.into_iter().collect(),
    ));
    out.push((
        "binomial grid formula".to_string(),
        formula.into_iter().collect(),
    ));
    out.push((
        "uncolored binomial grid (r = 1)".to_string(),
        garsia.into_iter().collect(),
    ));
    out.push((
        "sum of powers at z = 1".to_string(),
        powers.into_iter().collect(),
    ));
    out.push((
        "fdes/cdes swap with inverse descents".to_string(),
        swap.into_iter().collect(),
    ));
    Ok(out)
}

/// `beta` applied to each `y`-slice of `W_n` gives the `(fexc, ceil(fdes*/r))` distribution.
pub fn verify_beta_transport(n: usize, r: usize) -> Result<Verdict> {
    let w = joint_distribution(n, r, Statistic::Fexc, Statistic::FdesStar)?;
    let target = joint_distribution(n, r, Statistic::Fexc, Statistic::CeilFdesStar)?;
    let fexc_values: std::collections::BTreeSet<usize> = w.marginal_a().into_keys().collect();
    Ok(fexc_values
        .into_iter()
        .map(|a| {
            Verdict::compare(
                [("n", n as i64), ("fexc", a as i64)],
                &beta(&w.slice_polynomial(a), r),
                &target.slice_polynomial(a),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        q(n)
    }

    #[test]
    fn exponential_product_carries_binomials() {
        let orders = (3, 0, 0);
        // e^x * e^x = e^{2x}: all exponential coefficients of e^x are 1
        let ex =
            TruncSeries::from_terms(orders, XScale::Exponential, (0..=3).map(|n| ((n, 0, 0), 1)));
        let sq = ex.mul(&ex).unwrap();
        for n in 0..=3 {
            assert_eq!(sq.coeff((n, 0, 0)), rat(1 << n));
        }
        // same array read as an ordinary series: 1/(1-x)^2
        let ox = ex.relabel(XScale::Ordinary);
        let sq = ox.mul(&ox).unwrap();
        for n in 0..=3 {
            assert_eq!(sq.coeff((n, 0, 0)), rat(n as i64 + 1));
        }
    }

    #[test]
    fn inverse_of_units() {
        let orders = (3, 3, 3);
        for scale in [XScale::Ordinary, XScale::Exponential] {
            let u = TruncSeries::from_terms(
                orders,
                scale,
                [
                    ((0, 0, 0), 2),
                    ((1, 1, 0), -3),
                    ((0, 1, 2), 5),
                    ((2, 0, 1), 1),
                ],
            );
            let prod = u.mul(&u.inverse().unwrap()).unwrap();
            assert_eq!(prod, TruncSeries::one(orders, scale));
        }
        let not_unit = TruncSeries::from_terms(orders, XScale::Ordinary, [((1, 0, 0), 1)]);
        assert!(matches!(not_unit.inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn mismatched_series_rejected() {
        let a = TruncSeries::zero((1, 1, 1), XScale::Ordinary);
        let b = TruncSeries::zero((1, 2, 1), XScale::Ordinary);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(..))));
        let c = TruncSeries::zero((1, 1, 1), XScale::Exponential);
        assert!(matches!(a.add(&c), Err(Error::NormalizationMismatch)));
    }

    #[test]
    fn normalization_conversions() {
        let e = TruncSeries::from_terms(
            (3, 0, 0),
            XScale::Exponential,
            (0..=3).map(|n| ((n, 0, 0), 6)),
        );
        let o = e.to_ordinary();
        assert_eq!(o.coeff((3, 0, 0)), rat(1));
        assert_eq!(o.coeff((2, 0, 0)), rat(3));
        assert_eq!(o.to_exponential(), e);
    }

    #[test]
    fn builder_slices() {
        let a = build_a(2, 3).unwrap();
        assert_eq!(a.coeff((0, 0, 0)), rat(1));
        let a1 = build_a(1, 2).unwrap();
        // S_2: yz + y^2 z^2
        assert_eq!(a1.coeff((2, 1, 1)), rat(1));
        assert_eq!(a1.coeff((2, 2, 2)), rat(1));
        assert_eq!(a1.terms().filter(|(at, _)| at.0 == 2).count(), 2);
        for n in 0..=3 {
            let mass: BigRational = a
                .terms()
                .filter(|(at, _)| at.0 == n)
                .map(|(_, c)| c.clone())
                .sum();
            assert_eq!(mass, q(BigInt::from(2).pow(n as u32) * factorial(n)));
        }
        assert!(a.is_counting());

        let b = build_b(1, 2).unwrap();
        assert_eq!(b.z_polynomial(2, 1), Some(IntPolynomial::monomial(1, 1)));

        let c = build_c(1, 1).unwrap();
        assert_eq!(c.coeff((1, 1, 0)), rat(1));
        assert_eq!(c.coeff((0, 0, 0)), rat(1));
    }

    #[test]
    fn b_equals_c_for_r2() {
        assert_eq!(build_b(2, 3).unwrap(), build_c(2, 3).unwrap());
    }

    #[test]
    fn exp_relations_small() {
        let a = build_a(1, 4).unwrap();
        let b = build_b(1, 4).unwrap();
        assert!(verify_exp_relation(&b, &a, 1).unwrap().passed());
        let a2 = build_a(2, 3).unwrap();
        let c2 = build_c(2, 3).unwrap();
        assert!(verify_exp_relation(&c2, &a2, 2).unwrap().passed());
    }

    #[test]
    fn flipped_coefficient_detected() {
        let a = build_a(1, 3).unwrap();
        let mut b = build_b(1, 3).unwrap();
        let old = b.coeff((2, 1, 1));
        b.set((2, 1, 1), old + rat(1));
        let v = verify_exp_relation(&b, &a, 1).unwrap();
        assert!(!v.passed());
        let w = v.witness().unwrap();
        assert_eq!(w.coordinates["x"], 2);
    }

    #[test]
    fn exp_relation_margin_error() {
        let s = TruncSeries::zero((2, 1, 2), XScale::Exponential);
        assert!(matches!(
            verify_exp_relation(&s, &s, 1),
            Err(Error::TruncationMargin(_))
        ));
    }

    #[test]
    fn beta_examples() {
        let z = |k: usize| IntPolynomial::monomial(k, 1);
        for r in 1..=3 {
            assert_eq!(beta(&IntPolynomial::one(), r), IntPolynomial::one());
            for k in 0..8 {
                let diff = &z(k) - &z(k + 1);
                let expected = if k % r == 0 {
                    &z(k / r) - &z(k / r + 1)
                } else {
                    IntPolynomial::zero()
                };
                assert_eq!(beta(&diff, r), expected, "r={r} k={k}");
            }
        }
        assert_eq!(beta(&z(2), 2), z(1));
        assert_eq!(beta(&z(1), 2), z(1));
        // not idempotent for r = 2
        assert_ne!(beta(&beta(&z(4), 2), 2), beta(&z(4), 2));
    }

    #[test]
    fn foata_han_small() {
        assert!(verify_foata_han(1, 3, 6).unwrap().passed());
        assert!(verify_foata_han(2, 2, 8).unwrap().passed());
        assert!(matches!(
            verify_foata_han(2, 3, 5),
            Err(Error::TruncationMargin(_))
        ));
    }

    #[test]
    fn ogf_small() {
        assert!(verify_ogf(OgfSide::A, 1, 3, 5).unwrap().passed());
        assert!(verify_ogf(OgfSide::C, 2, 3, 3).unwrap().passed());
        assert!(verify_ogf(OgfSide::A, 3, 3, 3).unwrap().passed());
        assert!(matches!(
            verify_ogf(OgfSide::A, 2, 3, 2),
            Err(Error::TruncationMargin(_))
        ));
    }

    #[test]
    fn polynomial_identities_small() {
        for r in 1..=3 {
            for (name, v) in verify_polynomial_identities(r, 4).unwrap() {
                assert!(v.passed(), "{name} r={r}: {:?}", v.witness());
            }
        }
    }

    #[test]
    fn beta_transport() {
        for r in 1..=3 {
            for n in 0..=4 {
                assert!(verify_beta_transport(n, r).unwrap().passed());
            }
        }
    }
}
