//! Young diagrams in French notation (row 1 at the bottom), standard and
//! semistandard tableaux, and the descent identity for their Ehrhart series.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::series_transform;
use crate::permstats::{joint_distribution, Statistic};
use crate::poly::{factorial, IntPolynomial, RatPolynomial};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(Error::InvalidDiagram(parts));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.parts.first().copied().unwrap_or(0);
        (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect()
    }

    /// Hook length of cell `(row, col)`, both 0-based.
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let cols = self.conjugate();
        (self.parts[row] - col - 1) + (cols[col] - row - 1) + 1
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// `n! / prod hooks`.
    pub fn hook_length_count(&self) -> BigInt {
        let hooks: BigInt = self
            .cells()
            .map(|(i, j)| BigInt::from(self.hook(i, j)))
            .product();
        factorial(self.size()) / hooks
    }

    /// `prod (t + col - row) / hook` over the cells.
    pub fn hook_content(&self, t: usize) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (i, j) in self.cells() {
            num *= BigInt::from(t as i64 + j as i64 - i as i64);
            den *= BigInt::from(self.hook(i, j));
        }
        num / den
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, largest first part first.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Rows listed bottom to top; entries increase along rows and up columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    /// Row index of every entry, indexed by entry - 1.
    fn row_of(&self) -> Vec<usize> {
        let n: usize = self.rows.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                out[e - 1] = i;
            }
        }
        out
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Standard tableaux of shape `shape`, generated by placing `n, n-1, ...` in outer corners.
pub fn enumerate_syt(shape: &YoungDiagram) -> Vec<StandardTableau> {
    fn go(
        parts: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        next: usize,
        out: &mut Vec<StandardTableau>,
    ) {
        if next == 0 {
            let mut rows = rows.clone();
            rows.iter_mut().for_each(|r| r.reverse());
            out.push(StandardTableau { rows });
            return;
        }
        for i in 0..parts.len() {
            let is_corner = parts[i] > 0 && parts.get(i + 1).is_none_or(|&below| below < parts[i]);
            if !is_corner {
                continue;
            }
            parts[i] -= 1;
            rows[i].push(next);
            go(parts, rows, next - 1, out);
            rows[i].pop();
            parts[i] += 1;
        }
    }
    let mut out = Vec::new();
    let mut parts = shape.parts.clone();
    let mut rows = vec![Vec::new(); parts.len()];
    go(&mut parts, &mut rows, shape.size(), &mut out);
    assert_eq!(
        BigInt::from(out.len()),
        shape.hook_length_count(),
        "standard tableaux of {shape} disagree with the hook length formula"
    );
    out
}

/// Entries `i` with `i + 1` in a higher row.
pub fn des_tableau(t: &StandardTableau) -> usize {
    let row = t.row_of();
    row.windows(2).filter(|w| w[1] > w[0]).count()
}

/// Semistandard tableaux of shape `shape` with entries in `1..=t`, by enumeration.
pub fn schur_ones(shape: &YoungDiagram, t: usize) -> BigInt {
    // fill cells row by row from the bottom; rows weakly increase, columns strictly increase upward
    fn go(shape: &[usize], t: usize, grid: &mut Vec<Vec<usize>>, row: usize, col: usize) -> u64 {
        if row == shape.len() {
            return 1;
        }
        if col == shape[row] {
            return go(shape, t, grid, row + 1, 0);
        }
        let left = if col > 0 { grid[row][col - 1] } else { 1 };
        let below = if row > 0 { grid[row - 1][col] + 1 } else { 1 };
        let mut total = 0;
        for v in left.max(below)..=t {
            grid[row][col] = v;
            total += go(shape, t, grid, row, col + 1);
        }
        total
    }
    let mut grid: Vec<Vec<usize>> = shape.parts.iter().map(|&p| vec![0; p]).collect();
    BigInt::from(go(&shape.parts, t, &mut grid, 0, 0))
}

/// `sum_T z^{des(T)+1}` over standard tableaux of `shape`.
pub fn descent_polynomial(shape: &YoungDiagram) -> IntPolynomial {
    let mut p = IntPolynomial::zero();
    for t in enumerate_syt(shape) {
        p.add_term(des_tableau(&t) + 1, &BigInt::one());
    }
    p
}

/// `(1 - z)^{n+1} sum_t s_shape(1^t) z^t` equals `sum_T z^{des(T)+1}` for nonempty shapes.
pub fn verify_sytdes(shape: &YoungDiagram) -> Verdict {
    let n = shape.size();
    let at = |z: usize| [("n", n as i64), ("z", z as i64)];
    let samples: Vec<(BigInt, BigInt)> = (0..=n)
        .map(|t| (BigInt::from(t), schur_ones(shape, t)))
        .collect();
    let poly = RatPolynomial::interpolate(&samples);
    let extra = n + 1;
    let extra_value = schur_ones(shape, extra);
    if poly.eval_integer(extra as i64).as_ref() != Some(&extra_value) {
        return Verdict::fail(Witness::new(
            [("n", n as i64), ("t", extra as i64)],
            format!("{shape}: interpolant {}", poly),
            extra_value,
        ));
    }
    let values: Vec<BigRational> = (0..=n + 1)
        .map(|t| poly.eval(&BigRational::from_integer(t.into())))
        .collect();
    let rhs = descent_polynomial(shape);
    match series_transform(&values, n) {
        None => Verdict::fail(Witness::new(
            at(0),
            format!("{shape}: non-integral series"),
            rhs,
        )),
        Some(lhs) => {
            let top = lhs.degree().max(rhs.degree()).unwrap_or(0);
            match (0..=top).find(|&i| lhs.coeff(i) != rhs.coeff(i)) {
                None => Verdict::pass(),
                Some(i) => Verdict::fail(Witness::new(
                    at(i),
                    format!("{shape}: {}", lhs.coeff(i)),
                    rhs.coeff(i),
                )),
            }
        }
    }
}

/// `sum_{shape |- n} sum_{P, Q} z^{des P + 1} y^{des Q + 1}` equals the joint
/// distribution of `(des + 1, ides + 1)` over `S_n`, for `n >= 1`.
pub fn verify_rsk_identity(n: usize) -> Result<Verdict> {
    if n == 0 {
        return Ok(Verdict::pass());
    }
    let mut lhs: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for shape in partitions(n) {
        let d = descent_polynomial(&shape);
        for (a, ca) in d.coeffs().iter().enumerate() {
            for (b, cb) in d.coeffs().iter().enumerate() {
                if !ca.is_zero() && !cb.is_zero() {
                    *lhs.entry((a, b)).or_default() += ca * cb;
                }
            }
        }
    }
    let joint = joint_distribution(n, 1, Statistic::Des, Statistic::InverseDescents)?;
    let rhs: BTreeMap<(usize, usize), BigInt> = joint
        .counts()
        .iter()
        .map(|(&(a, b), &c)| ((a + 1, b + 1), BigInt::from(c)))
        .collect();
    let zero = BigInt::zero();
    Ok(lhs
        .keys()
        .chain(rhs.keys())
        .find(|k| lhs.get(k).unwrap_or(&zero) != rhs.get(k).unwrap_or(&zero))
        .map_or_else(Verdict::pass, |&(a, b)| {
            Verdict::fail(Witness::new(
                [("n", n as i64), ("y", a as i64), ("z", b as i64)],
                lhs.get(&(a, b)).unwrap_or(&zero),
                rhs.get(&(a, b)).unwrap_or(&zero),
            ))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial;

    fn shape(p: &[usize]) -> YoungDiagram {
        YoungDiagram::new(p.to_vec()).unwrap()
    }

    #[test]
    fn diagram_validation() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(shape(&[3, 1]).conjugate(), vec![2, 1, 1]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(0), vec![shape(&[])]);
    }

    #[test]
    fn syt_counts_and_descents() {
        for n in 1..=6 {
            let row = enumerate_syt(&shape(&[n]));
            assert_eq!(row.len(), 1);
            assert_eq!(des_tableau(&row[0]), 0);
            let col = enumerate_syt(&shape(&vec![1; n]));
            assert_eq!(col.len(), 1);
            assert_eq!(des_tableau(&col[0]), n - 1);
        }
        let hooks = enumerate_syt(&shape(&[2, 1]));
        assert_eq!(hooks.len(), 2);
        assert!(hooks.iter().all(|t| des_tableau(t) == 1));
        assert_eq!(enumerate_syt(&shape(&[3, 2])).len(), 5);
    }

    #[test]
    fn semistandard_counts() {
        for n in 1..=4 {
            for t in 0..=5 {
                assert_eq!(schur_ones(&shape(&[n]), t), binomial(n + t - 1, n));
            }
        }
        for t in 0..=6 {
            assert_eq!(schur_ones(&shape(&[1, 1]), t), binomial(t, 2));
            // t(t^2 - 1)/3
            let t_i = t as i64;
            assert_eq!(
                schur_ones(&shape(&[2, 1]), t),
                BigInt::from(t_i * (t_i * t_i - 1) / 3)
            );
        }
        assert_eq!(schur_ones(&shape(&[]), 0), BigInt::one());
    }

    #[test]
    fn sytdes_examples() {
        assert!(verify_sytdes(&shape(&[2, 1])).passed());
        assert_eq!(
            descent_polynomial(&shape(&[2, 1])),
            IntPolynomial::monomial(2, 2)
        );
        assert_eq!(
            descent_polynomial(&shape(&[4])),
            IntPolynomial::monomial(1, 1)
        );
        assert_eq!(
            descent_polynomial(&shape(&[1, 1, 1])),
            IntPolynomial::monomial(3, 1)
        );
    }

    #[test]
    fn rsk_identity_small() {
        for n in 0..=4 {
            assert!(verify_rsk_identity(n).unwrap().passed());
        }
    }
}
