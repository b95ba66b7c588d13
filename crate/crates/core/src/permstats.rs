//! Colored permutations and their descent/excedance statistics.
//!
//! Permutations are 1-based sequences (`sigma[i]` is in `1..=n`), colors are
//! 0-based (`colors[i]` is in `0..r`). Positions in the public API are 0-based
//! slice indices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A pair `(sigma, colors)` with colors taken modulo `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    sigma: Vec<usize>,
    colors: Vec<usize>,
    r: usize,
}

impl ColoredPermutation {
    pub fn new(sigma: Vec<usize>, colors: Vec<usize>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColorModulus(r));
        }
        if sigma.len() != colors.len() {
            return Err(Error::LengthMismatch {
                sigma: sigma.len(),
                colors: colors.len(),
            });
        }
        if !is_permutation(&sigma) {
            return Err(Error::InvalidPermutation(sigma));
        }
        if let Some((position, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(Error::InvalidColor { position, color, r });
        }
        Ok(Self { sigma, colors, r })
    }

    /// Builds from a word of `(value, color)` letters.
    pub fn from_letters(letters: &[(usize, usize)], r: usize) -> Result<Self> {
        let (sigma, colors) = letters.iter().copied().unzip();
        Self::new(sigma, colors, r)
    }

    /// The permutation with every color zero.
    pub fn uncolored(sigma: Vec<usize>, r: usize) -> Result<Self> {
        let n = sigma.len();
        Self::new(sigma, vec![0; n], r)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sigma.iter().copied().zip(self.colors.iter().copied())
    }

    /// Same permutation, new colors. Used by the color-only bijections.
    pub(crate) fn with_colors(&self, colors: Vec<usize>) -> Self {
        debug_assert!(colors.len() == self.n() && colors.iter().all(|&c| c < self.r));
        Self {
            sigma: self.sigma.clone(),
            colors,
            r: self.r,
        }
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, c) in self.letters() {
            write!(f, "({s},{c})")?;
        }
        Ok(())
    }
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let n = sigma.len();
    let mut seen = vec![false; n + 1];
    for &v in sigma {
        if v == 0 || v > n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Rearranges `perm` into its lexicographic successor; false when it was the last one.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// Lexicographic stream over `S_n^(r)`: sigma outermost, colors as an odometer.
#[derive(Clone, Debug)]
pub struct ColoredPermutations {
    sigma: Vec<usize>,
    colors: Vec<usize>,
    r: usize,
    done: bool,
}

impl Iterator for ColoredPermutations {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.done {
            return None;
        }
        let item = ColoredPermutation {
            sigma: self.sigma.clone(),
            colors: self.colors.clone(),
            r: self.r,
        };
        let mut pos = self.colors.len();
        loop {
            if pos == 0 {
                self.colors.iter_mut().for_each(|c| *c = 0);
                self.done = !next_permutation(&mut self.sigma);
                break;
            }
            pos -= 1;
            self.colors[pos] += 1;
            if self.colors[pos] < self.r {
                break;
            }
            self.colors[pos] = 0;
        }
        Some(item)
    }
}

/// Enumerates the `r^n n!` colored permutations of length `n`.
pub fn enumerate(n: usize, r: usize) -> Result<ColoredPermutations> {
    if r == 0 {
        return Err(Error::InvalidColorModulus(r));
    }
    Ok(ColoredPermutations {
        sigma: (1..=n).collect(),
        colors: vec![0; n],
        r,
        done: false,
    })
}

/// Number of `i` with `v[i] > v[i+1]`.
pub fn des_perm<T: PartialOrd>(v: &[T]) -> usize {
    v.windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s - 1] = i + 1;
    }
    inv
}

/// Descents of the inverse permutation.
pub fn ides(sigma: &[usize]) -> usize {
    des_perm(&inverse(sigma))
}

pub fn des(p: &ColoredPermutation) -> usize {
    (0..p.n().saturating_sub(1))
        .filter(|&i| {
            let (c, d) = (p.colors[i], p.colors[i + 1]);
            c > d || (c == d && p.sigma[i] > p.sigma[i + 1])
        })
        .count()
}

pub fn des_star(p: &ColoredPermutation) -> usize {
    (0..p.n().saturating_sub(1))
        .filter(|&i| {
            let (c, d) = (p.colors[i], p.colors[i + 1]);
            c < d || (c == d && p.sigma[i] > p.sigma[i + 1])
        })
        .count()
}

/// `r des + c_n`.
pub fn fdes(p: &ColoredPermutation) -> Result<usize> {
    let last = *p.colors.last().ok_or(Error::EmptyPermutation("fdes"))?;
    Ok(p.r * des(p) + last)
}

/// `r des* + c_1`.
pub fn fdes_star(p: &ColoredPermutation) -> Result<usize> {
    let first = *p.colors.first().ok_or(Error::EmptyPermutation("fdes*"))?;
    Ok(p.r * des_star(p) + first)
}

pub fn color_sum(p: &ColoredPermutation) -> usize {
    p.colors.iter().sum()
}

/// `r #{i : sigma_i > i, c_i = 0} + sum c_i`.
pub fn fexc(p: &ColoredPermutation) -> usize {
    let zero_exc = p
        .letters()
        .enumerate()
        .filter(|&(i, (s, c))| c == 0 && s > i + 1)
        .count();
    p.r * zero_exc + color_sum(p)
}

pub fn cdes(p: &ColoredPermutation) -> usize {
    des_perm(&p.sigma) + color_sum(p)
}

/// `#{i in 1..=n : inv(i-1) + 1 < inv(i)}` with `inv(0) = 0`.
pub fn cover(sigma: &[usize]) -> usize {
    let inv = inverse(sigma);
    let mut prev = 0;
    let mut count = 0;
    for &pos in &inv {
        if prev + 1 < pos {
            count += 1;
        }
        prev = pos;
    }
    count
}

/// `#{i in 1..=n : c_i > 0, sigma(i-1) + 1 = sigma(i)}` with `sigma(0) = 0`.
pub fn cef(p: &ColoredPermutation) -> usize {
    let mut prev = 0;
    let mut count = 0;
    for (s, c) in p.letters() {
        if c > 0 && prev + 1 == s {
            count += 1;
        }
        prev = s;
    }
    count
}

/// The closed registry of statistics usable in joint distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    /// `des(sigma^-1)`.
    InverseDescents,
    Des,
    Fdes,
    DesStar,
    FdesStar,
    Fexc,
    Cdes,
    Cover,
    Cef,
    /// `ceil(fdes / r)`.
    CeilFdes,
    /// `ceil(fdes* / r)`.
    CeilFdesStar,
}

impl Statistic {
    pub const ALL: [Statistic; 11] = [
        Statistic::InverseDescents,
        Statistic::Des,
        Statistic::Fdes,
        Statistic::DesStar,
        Statistic::FdesStar,
        Statistic::Fexc,
        Statistic::Cdes,
        Statistic::Cover,
        Statistic::Cef,
        Statistic::CeilFdes,
        Statistic::CeilFdesStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::InverseDescents => "ides",
            Statistic::Des => "des",
            Statistic::Fdes => "fdes",
            Statistic::DesStar => "des_star",
            Statistic::FdesStar => "fdes_star",
            Statistic::Fexc => "fexc",
            Statistic::Cdes => "cdes",
            Statistic::Cover => "cover",
            Statistic::Cef => "cef",
            Statistic::CeilFdes => "ceil_fdes_r",
            Statistic::CeilFdesStar => "ceil_fdes_star_r",
        }
    }

    /// Total evaluation: the flag statistics are 0 on the empty permutation.
    pub fn eval(self, p: &ColoredPermutation) -> usize {
        let r = p.r;
        match self {
            Statistic::InverseDescents => ides(&p.sigma),
            Statistic::Des => des(p),
            Statistic::Fdes => fdes(p).unwrap_or(0),
            Statistic::DesStar => des_star(p),
            Statistic::FdesStar => fdes_star(p).unwrap_or(0),
            Statistic::Fexc => fexc(p),
            Statistic::Cdes => cdes(p),
            Statistic::Cover => cover(&p.sigma),
            Statistic::Cef => cef(p),
            Statistic::CeilFdes => fdes(p).unwrap_or(0).div_ceil(r),
            Statistic::CeilFdesStar => fdes_star(p).unwrap_or(0).div_ceil(r),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statistic::ALL
            .into_iter()
            .find(|stat| stat.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

/// Counts indexed by a pair of statistic values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JointDistribution {
    counts: BTreeMap<(usize, usize), u64>,
}

impl JointDistribution {
    pub fn from_counts(counts: BTreeMap<(usize, usize), u64>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.counts
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.counts.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn marginal_a(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (&(a, _), &c) in &self.counts {
            *out.entry(a).or_insert(0) += c;
        }
        out
    }

    pub fn marginal_b(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (&(_, b), &c) in &self.counts {
            *out.entry(b).or_insert(0) += c;
        }
        out
    }

    /// `sum z^b` over the objects whose first statistic equals `a`.
    pub fn slice_polynomial(&self, a: usize) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        for (&(_, b), &c) in self.counts.range((a, 0)..=(a, usize::MAX)) {
            p.add_term(b, &BigInt::from(c));
        }
        p
    }

    /// Adds another table into this one.
    pub fn merge(&mut self, other: &JointDistribution) {
        for (&key, &c) in &other.counts {
            *self.counts.entry(key).or_insert(0) += c;
        }
    }
}

pub fn joint_distribution(
    n: usize,
    r: usize,
    stat_a: Statistic,
    stat_b: Statistic,
) -> Result<JointDistribution> {
    let mut counts = BTreeMap::new();
    for p in enumerate(n, r)? {
        *counts
            .entry((stat_a.eval(&p), stat_b.eval(&p)))
            .or_insert(0) += 1;
    }
    Ok(JointDistribution { counts })
}

/// Same as [`joint_distribution`] but with statistic names looked up in the registry.
pub fn joint_distribution_by_name(
    n: usize,
    r: usize,
    stat_a: &str,
    stat_b: &str,
) -> Result<JointDistribution> {
    joint_distribution(n, r, stat_a.parse()?, stat_b.parse()?)
}

/// Sorted multiset of the values of `stat` over `S_n^(r)`.
pub fn distribution(n: usize, r: usize, stat: Statistic) -> Result<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for p in enumerate(n, r)? {
        *out.entry(stat.eval(&p)).or_insert(0) += 1;
    }
    Ok(out)
}

/// `A^(r)_{n,k}` for `k = 0..=rn`, by enumeration.
pub fn flag_eulerian_row(n: usize, r: usize) -> Result<Vec<BigInt>> {
    let mut row = vec![BigInt::from(0); r * n + 1];
    if n == 0 {
        enumerate(n, r)?;
        row[0] = BigInt::from(1);
        return Ok(row);
    }
    for p in enumerate(n, r)? {
        row[fdes(&p)? + 1] += 1;
    }
    Ok(row)
}

/// `A^(r)_{n,k}`: number of colored permutations with `fdes = k - 1`; zero outside range.
pub fn flag_eulerian(n: usize, r: usize, k: usize) -> Result<BigInt> {
    Ok(flag_eulerian_row(n, r)?.get(k).cloned().unwrap_or_default())
}

/// `sum z^{weight(p)}` over the colored permutations accepted by `filter`.
pub fn generating_polynomial(
    n: usize,
    r: usize,
    filter: impl Fn(&ColoredPermutation) -> bool,
    weight: impl Fn(&ColoredPermutation) -> usize,
) -> Result<IntPolynomial> {
    let mut by_exp: BTreeMap<usize, u64> = BTreeMap::new();
    for p in enumerate(n, r)?.filter(|p| filter(p)) {
        *by_exp.entry(weight(&p)).or_insert(0) += 1;
    }
    let mut out = IntPolynomial::zero();
    for (e, c) in by_exp {
        out.add_term(e, &BigInt::from(c));
    }
    Ok(out)
}
