//! Serializable tables of slice polynomials and flag Eulerian numbers, and
//! Ehrhart polynomial reports. Integers are written as decimal strings.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::closedform::{ehrhart_a_closed, ehrhart_b_closed};
use crate::error::{Error, Result};
use crate::lattice::{a_polynomial, b_polynomial, ehrhart_polynomial, ehrhart_series, SliceRegion};
use crate::permstats::flag_eulerian_row;
use crate::poly::{IntPolynomial, RatPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    #[serde(rename = "flag-eulerian")]
    FlagEulerian,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::FlagEulerian => "flag-eulerian",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "flag-eulerian" => Ok(Family::FlagEulerian),
            other => Err(Error::OutOfRange(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Row {
    Polynomial { k: usize, coefficients: Vec<String> },
    Count { k: usize, count: String },
}

impl Row {
    pub fn k(&self) -> usize {
        match self {
            Row::Polynomial { k, .. } | Row::Count { k, .. } => *k,
        }
    }

    /// The stored integers: coefficients low to high, or the single count.
    pub fn values(&self) -> Vec<&str> {
        match self {
            Row::Polynomial { coefficients, .. } => {
                coefficients.iter().map(String::as_str).collect()
            }
            Row::Count { count, .. } => vec![count.as_str()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub rows: Vec<Row>,
}

/// Rows `k = 1..=rn`, or the single row `k = 0` when `n = 0`.
fn levels(n: usize, r: usize) -> Vec<usize> {
    if n == 0 {
        vec![0]
    } else {
        (1..=r * n).collect()
    }
}

pub fn build_table(family: Family, n: usize, r: usize) -> Result<Table> {
    if r == 0 {
        return Err(Error::InvalidColorModulus(r));
    }
    let rows = match family {
        Family::FlagEulerian => {
            let row = flag_eulerian_row(n, r)?;
            levels(n, r)
                .into_iter()
                .map(|k| Row::Count {
                    k,
                    count: row[k].to_string(),
                })
                .collect()
        }
        Family::A | Family::B => levels(n, r)
            .into_iter()
            .map(|k| {
                let p = if family == Family::A {
                    a_polynomial(n, r, k)?
                } else {
                    b_polynomial(n, r, k)?
                };
                Ok(Row::Polynomial {
                    k,
                    coefficients: p.to_decimal_strings(),
                })
            })
            .collect::<Result<_>>()?,
    };
    Ok(Table { family, n, r, rows })
}

impl Table {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = match self.family {
            Family::FlagEulerian => ["k", "count"],
            _ => ["k", "coefficients"],
        };
        w.write_record(header).expect("in-memory csv");
        for row in &self.rows {
            w.write_record([row.k().to_string(), row.values().join(";")])
                .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

/// A rational in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for Fraction {
    fn from(q: &BigRational) -> Self {
        Fraction {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EhrhartMode {
    Interpolate,
    ClosedForm,
    Series,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Rational(Vec<Fraction>),
    Integer(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartReport {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub mode: EhrhartMode,
    pub variable: String,
    pub coefficients: Coefficients,
}

fn rational_coefficients(p: &RatPolynomial) -> Coefficients {
    Coefficients::Rational(p.coeffs().iter().map(Fraction::from).collect())
}

fn integer_coefficients(p: &IntPolynomial) -> Coefficients {
    Coefficients::Integer(p.to_decimal_strings())
}

/// Ehrhart polynomial (in `t`) or series (in `z`) of an A- or B-slice with `1 <= k <= rn`.
pub fn ehrhart_report(
    family: Family,
    n: usize,
    r: usize,
    k: usize,
    mode: EhrhartMode,
) -> Result<EhrhartReport> {
    if r == 0 {
        return Err(Error::InvalidColorModulus(r));
    }
    if n == 0 || k == 0 || k > r * n {
        return Err(Error::LevelOutOfRange { k, max: r * n });
    }
    let region = match family {
        Family::A => SliceRegion::a_slice(n, r, k)?,
        Family::B => SliceRegion::b_slice(n, r, k)?,
        Family::FlagEulerian => {
            return Err(Error::OutOfRange("ehrhart needs family A or B".into()));
        }
    };
    let (variable, coefficients) = match mode {
        EhrhartMode::Interpolate => ("t", rational_coefficients(&ehrhart_polynomial(&region)?)),
        EhrhartMode::ClosedForm => {
            let p = if family == Family::A {
                ehrhart_a_closed(n, r, k)?
            } else {
                ehrhart_b_closed(n, r, k)?
            };
            ("t", rational_coefficients(&p))
        }
        EhrhartMode::Series => ("z", integer_coefficients(&ehrhart_series(&region)?)),
    };
    Ok(EhrhartReport {
        family,
        n,
        r,
        k,
        mode,
        variable: variable.to_string(),
        coefficients,
    })
}

impl EhrhartReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_table_n2_r1() {
        let t = build_table(Family::B, 2, 1).unwrap();
        let coeffs: Vec<Vec<&str>> = t.rows.iter().map(Row::values).collect();
        // k = 2 is the closed triangle (1,0), (0,1), (1,1)
        assert_eq!(coeffs, vec![vec!["0", "1"], vec!["1"]]);
    }

    #[test]
    fn flag_eulerian_rows() {
        let t = build_table(Family::FlagEulerian, 3, 1).unwrap();
        let counts: Vec<&str> = t.rows.iter().map(|r| r.values()[0]).collect();
        assert_eq!(counts, ["1", "4", "1"]);
        assert_eq!(t.to_csv(), "k,count\n1,1\n2,4\n3,1\n");
    }

    #[test]
    fn empty_table_row() {
        let t = build_table(Family::A, 0, 2).unwrap();
        assert_eq!(
            t.rows,
            vec![Row::Polynomial {
                k: 0,
                coefficients: vec!["1".into()]
            }]
        );
    }

    #[test]
    fn json_round_trip() {
        let t = build_table(Family::A, 2, 2).unwrap();
        let back: Table = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let f = build_table(Family::FlagEulerian, 2, 2).unwrap();
        assert_eq!(serde_json::from_str::<Table>(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn ehrhart_modes_agree() {
        let a = ehrhart_report(Family::B, 2, 1, 1, EhrhartMode::Interpolate).unwrap();
        let b = ehrhart_report(Family::B, 2, 1, 1, EhrhartMode::ClosedForm).unwrap();
        assert_eq!(a.coefficients, b.coefficients);
        assert!(ehrhart_report(Family::A, 2, 1, 3, EhrhartMode::Series).is_err());
    }
}
