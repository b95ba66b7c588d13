//! Standardization and the explicit bijections between colored permutations
//! and points of the half-open cube `[0, r)^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::permstats::{des_perm, ColoredPermutation};

/// The permutation recording the relative order of `v`; ties break left to right.
pub fn std<T: Ord>(v: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].cmp(&v[j]).then(i.cmp(&j)));
    let mut sigma = vec![0; v.len()];
    for (rank, &i) in order.iter().enumerate() {
        sigma[i] = rank + 1;
    }
    sigma
}

/// A rational point of `[0, r)^n` (or `[0, r]^n` when `closed`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPoint {
    coords: Vec<BigRational>,
    r: usize,
    closed: bool,
}

impl GridPoint {
    /// A point of the half-open cube `[0, r)^n`.
    pub fn new(coords: Vec<BigRational>, r: usize) -> Result<Self> {
        Self::build(coords, r, false)
    }

    /// A point of the closed cube `[0, r]^n`.
    pub fn new_closed(coords: Vec<BigRational>, r: usize) -> Result<Self> {
        Self::build(coords, r, true)
    }

    /// The half-open point with coordinates `numerators[i] / t`.
    pub fn on_grid(numerators: &[i64], t: i64, r: usize) -> Result<Self> {
        if t <= 0 {
            return Err(Error::NonPositiveDilation);
        }
        let coords = numerators
            .iter()
            .map(|&a| BigRational::new(a.into(), t.into()))
            .collect();
        Self::new(coords, r)
    }

    fn build(coords: Vec<BigRational>, r: usize, closed: bool) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColorModulus(r));
        }
        let bound = BigRational::from_integer(r.into());
        for (index, c) in coords.iter().enumerate() {
            let above = if closed { *c > bound } else { *c >= bound };
            if c.is_negative() || above {
                return Err(Error::CoordinateOutOfRange {
                    index,
                    value: c.to_string(),
                    r,
                });
            }
        }
        Ok(Self { coords, r, closed })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Smallest positive `t` with every `t * coords[i]` integral.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn coordinate_sum(&self) -> BigRational {
        self.coords.iter().sum()
    }

    fn require_half_open(&self) -> Result<()> {
        if !self.closed {
            return Ok(());
        }
        let bound = BigRational::from_integer(self.r.into());
        match self.coords.iter().position(|c| *c >= bound) {
            Some(index) => Err(Error::CoordinateOutOfRange {
                index,
                value: self.coords[index].to_string(),
                r: self.r,
            }),
            None => Ok(()),
        }
    }
}

/// All half-open points with coordinates in `{0, 1/t, ..., r - 1/t}`, lexicographically.
pub fn half_open_grid(n: usize, r: usize, t: usize) -> Result<Vec<GridPoint>> {
    if t == 0 {
        return Err(Error::NonPositiveDilation);
    }
    let side = (r * t) as i64;
    let mut num = vec![0i64; n];
    let mut out = Vec::new();
    loop {
        out.push(GridPoint::on_grid(&num, t as i64, r)?);
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            num[pos] += 1;
            if num[pos] < side {
                break;
            }
            num[pos] = 0;
        }
    }
}

fn floor_usize(x: &BigRational) -> usize {
    x.floor()
        .to_integer()
        .to_usize()
        .expect("nonnegative coordinate")
}

/// Colored standardization: floors give colors, fractional parts are standardized.
pub fn cstd(v: &GridPoint) -> Result<ColoredPermutation> {
    v.require_half_open()?;
    let colors: Vec<usize> = v.coords.iter().map(floor_usize).collect();
    let fractional: Vec<BigRational> = v.coords.iter().map(|c| c.fract()).collect();
    ColoredPermutation::new(std(&fractional), colors, v.r)
}

/// `r des(v) + v_n`.
pub fn fdes_point(v: &GridPoint) -> Result<BigRational> {
    let last = v
        .coords
        .last()
        .ok_or(Error::EmptyPermutation("fdes of a point"))?;
    Ok(BigRational::from_integer((v.r * des_perm(&v.coords)).into()) + last)
}

/// `b_i = a_i - a_{i-1}`, plus `r` when `a_{i-1} > a_i`; `a_0 = 0`.
pub fn phi(a: &GridPoint) -> Result<GridPoint> {
    a.require_half_open()?;
    let r = BigRational::from_integer(a.r.into());
    let mut prev = BigRational::zero();
    let mut b = Vec::with_capacity(a.n());
    for ai in &a.coords {
        let mut bi = ai - &prev;
        if prev > *ai {
            bi += &r;
        }
        b.push(bi);
        prev = ai.clone();
    }
    GridPoint::new(b, a.r)
}

/// `a_i = (b_1 + ... + b_i) mod r`, taken in `[0, r)`.
pub fn phi_inv(b: &GridPoint) -> Result<GridPoint> {
    b.require_half_open()?;
    let r = BigRational::from_integer(b.r.into());
    let mut partial = BigRational::zero();
    let mut a = Vec::with_capacity(b.n());
    for bi in &b.coords {
        partial += bi;
        let reduced = &partial - &r * (&partial / &r).floor();
        a.push(reduced);
    }
    GridPoint::new(a, b.r)
}

/// `c'_i = c_1 + ... + c_i + des(sigma_1..sigma_i) mod r`; turns `cdes` into `fdes`.
pub fn alpha(p: &ColoredPermutation) -> ColoredPermutation {
    let r = p.r();
    let sigma = p.sigma();
    let mut colors = Vec::with_capacity(p.n());
    let mut running = 0;
    for i in 0..p.n() {
        running += p.colors()[i];
        if i > 0 && sigma[i - 1] > sigma[i] {
            running += 1;
        }
        colors.push(running % r);
    }
    p.with_colors(colors)
}

/// `c''_i = c_i + ... + c_n + des(sigma_i..sigma_n) mod r`; turns `cdes` into `fdes*`.
pub fn alpha_star(p: &ColoredPermutation) -> ColoredPermutation {
    let r = p.r();
    let sigma = p.sigma();
    let n = p.n();
    let mut colors = vec![0; n];
    let mut running = 0;
    for i in (0..n).rev() {
        running += p.colors()[i];
        if i + 1 < n && sigma[i] > sigma[i + 1] {
            running += 1;
        }
        colors[i] = running % r;
    }
    p.with_colors(colors)
}

/// Maximal constant-color factors of the letter word, as index ranges.
fn color_blocks(colors: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=colors.len() {
        if i == colors.len() || colors[i] != colors[start] {
            blocks.push(start..i);
            start = i;
        }
    }
    blocks
}

/// Reverses the order of blocks inside every maximal run of nonzero-colored
/// blocks; zero-colored blocks stay in place.
pub fn involution_i(p: &ColoredPermutation) -> ColoredPermutation {
    let letters: Vec<(usize, usize)> = p.letters().collect();
    let blocks = color_blocks(p.colors());
    let mut out = Vec::with_capacity(letters.len());
    let mut run: Vec<std::ops::Range<usize>> = Vec::new();
    let flush = |run: &mut Vec<std::ops::Range<usize>>, out: &mut Vec<(usize, usize)>| {
        for block in run.drain(..).rev() {
            out.extend_from_slice(&letters[block]);
        }
    };
    for block in blocks {
        if letters[block.start].1 == 0 {
            flush(&mut run, &mut out);
            out.extend_from_slice(&letters[block]);
        } else {
            run.push(block);
        }
    }
    flush(&mut run, &mut out);
    ColoredPermutation::from_letters(&out, p.r()).expect("block permutation keeps validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstats::{cdes, enumerate, fdes, fdes_star};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn standardization_examples() {
        // x < y < z encoded as 0 < 1 < 2
        assert_eq!(std(&[0, 1, 0, 2, 1, 0, 0]), vec![1, 5, 2, 7, 6, 3, 4]);
        assert_eq!(std(&[1, 4, 9]), vec![1, 2, 3]);
        assert_eq!(std(&[7, 7, 7, 7]), vec![1, 2, 3, 4]);
        assert_eq!(std::<i32>(&[]), Vec::<usize>::new());
    }

    #[test]
    fn colored_standardization() {
        let zero = GridPoint::on_grid(&[0, 0, 0], 1, 2).unwrap();
        let p = cstd(&zero).unwrap();
        assert_eq!((p.sigma(), p.colors()), (&[1, 2, 3][..], &[0, 0, 0][..]));

        let v = GridPoint::new(vec![q(3, 2), q(1, 5), q(27, 10)], 3).unwrap();
        let p = cstd(&v).unwrap();
        assert_eq!(p.colors(), &[1, 0, 2]);
        assert_eq!(p.sigma(), &[2, 1, 3]);

        let w = GridPoint::on_grid(&[2, 0, 1], 1, 3).unwrap();
        let p = cstd(&w).unwrap();
        assert_eq!((p.sigma(), p.colors()), (&[1, 2, 3][..], &[2, 0, 1][..]));
    }

    #[test]
    fn out_of_range_points_rejected() {
        assert!(GridPoint::on_grid(&[3], 1, 3).is_err());
        assert!(GridPoint::on_grid(&[-1], 1, 3).is_err());
        let top = GridPoint::new_closed(vec![q(3, 1)], 3).unwrap();
        assert!(cstd(&top).is_err());
        assert!(phi(&top).is_err());
        assert!(phi_inv(&top).is_err());
        assert!(fdes_point(&GridPoint::new(vec![], 2).unwrap()).is_err());
    }

    #[test]
    fn phi_examples() {
        let a = GridPoint::new(vec![q(1, 1), q(1, 2)], 2).unwrap();
        assert_eq!(fdes_point(&a).unwrap(), q(5, 2));
        let b = phi(&a).unwrap();
        assert_eq!(b.coords(), &[q(1, 1), q(3, 2)]);
        assert_eq!(b.coordinate_sum(), q(5, 2));
        assert_eq!(phi_inv(&b).unwrap(), a);

        let zero = GridPoint::on_grid(&[0, 0], 1, 2).unwrap();
        assert_eq!(phi(&zero).unwrap(), zero);
        assert_eq!(fdes_point(&zero).unwrap(), q(0, 1));
    }

    #[test]
    fn grid_denominators() {
        let v = GridPoint::new(vec![q(1, 2), q(1, 3)], 1).unwrap();
        assert_eq!(v.denominator(), BigInt::from(6));
        assert_eq!(half_open_grid(2, 2, 3).unwrap().len(), 36);
        for p in half_open_grid(2, 2, 3).unwrap() {
            assert_eq!(
                BigInt::from(3) % phi(&p).unwrap().denominator(),
                BigInt::zero()
            );
        }
    }

    #[test]
    fn alpha_examples() {
        let id = ColoredPermutation::uncolored(vec![1, 2, 3], 3).unwrap();
        assert_eq!(alpha(&id), id);
        assert_eq!(alpha_star(&id), id);

        let p = ColoredPermutation::new(vec![2, 1], vec![0, 0], 2).unwrap();
        let a = alpha(&p);
        assert_eq!(a.colors(), &[0, 1]);
        assert_eq!(fdes(&a).unwrap(), 1);
        assert_eq!(cdes(&p), 1);
        assert_eq!(fdes_star(&alpha_star(&p)).unwrap(), cdes(&p));
    }

    #[test]
    fn involution_worked_example() {
        let p = ColoredPermutation::from_letters(
            &[
                (8, 1),
                (2, 0),
                (7, 2),
                (1, 2),
                (4, 1),
                (3, 0),
                (5, 1),
                (6, 1),
            ],
            3,
        )
        .unwrap();
        let expected = ColoredPermutation::from_letters(
            &[
                (8, 1),
                (2, 0),
                (4, 1),
                (7, 2),
                (1, 2),
                (3, 0),
                (5, 1),
                (6, 1),
            ],
            3,
        )
        .unwrap();
        assert_eq!(involution_i(&p), expected);
        assert_eq!(involution_i(&expected), p);
    }

    #[test]
    fn involution_fixes_uncolored_and_is_involutive() {
        for p in enumerate(4, 1).unwrap() {
            assert_eq!(involution_i(&p), p);
        }
        for p in enumerate(4, 3).unwrap() {
            assert_eq!(involution_i(&involution_i(&p)), p);
        }
    }

    #[test]
    fn blocks_are_maximal() {
        assert_eq!(color_blocks(&[1, 1, 0, 2, 2, 2]), vec![0..2, 2..3, 3..6]);
        assert!(color_blocks(&[]).is_empty());
    }
}
