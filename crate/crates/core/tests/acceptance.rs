//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::Value;

use hslab::bijections::involution_i;
use hslab::closedform::{
    ehrhart_a_closed, ehrhart_b_closed, eulerian_closed, flag_eulerian_closed,
};
use hslab::lattice::{a_polynomial, b_polynomial, ehrhart_polynomial, ehrhart_series, SliceRegion};
use hslab::permstats::{
    cef, cover, des_perm, enumerate, fdes, fdes_star, fexc, flag_eulerian_row, ides,
    joint_distribution, permutations, ColoredPermutation, Statistic,
};
use hslab::poly::{binomial, IntPolynomial};
use hslab::series::{
    build_a, build_b, build_c, verify_exp_relation, verify_foata_han, verify_ogf, OgfSide,
};
use hslab::suite::{embedded_fixtures, run_suite, Context, Suite};
use hslab::tableaux::{partitions, verify_rsk_identity, verify_sytdes};

type Check = std::result::Result<(), String>;

fn hslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hslab"))
        .args(args)
        .output()
        .expect("run hslab")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn poly_where(
    n: usize,
    r: usize,
    keep: impl Fn(&ColoredPermutation) -> bool,
    weight: impl Fn(&ColoredPermutation) -> usize,
) -> IntPolynomial {
    let mut p = IntPolynomial::zero();
    for q in enumerate(n, r).unwrap().filter(|q| keep(q)) {
        p.add_term(weight(&q), &BigInt::from(1));
    }
    p
}

fn flag_counts(n: usize) -> Check {
    let out = hslab(&[
        "table",
        "--family",
        "flag-eulerian",
        "--n",
        &n.to_string(),
        "--r",
        "1",
    ]);
    ensure(out.status.success(), || format!("exit {:?}", out.status))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let counts: Vec<String> = v["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .map(|r| r["count"].as_str().unwrap_or("?").to_string())
        .collect();
    let expected: &[&str] = if n == 3 {
        &["1", "4", "1"]
    } else {
        &["1", "1"]
    };
    ensure(counts == expected, || format!("n={n}: {counts:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    flag_counts(3)?;
    flag_counts(2)?;
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    for n in 1..=5 {
        for sigma in permutations(n) {
            let d = ides(&sigma);
            let closed = ehrhart_series(&SliceRegion::cell(sigma.clone(), true).unwrap()).unwrap();
            let open = ehrhart_series(&SliceRegion::cell(sigma.clone(), false).unwrap()).unwrap();
            ensure(closed == IntPolynomial::monomial(d, 1), || {
                format!("closed {sigma:?}: {closed}")
            })?;
            ensure(open == IntPolynomial::monomial(d + 1, 1), || {
                format!("half-open {sigma:?}: {open}")
            })?;
        }
    }
    within(start, Duration::from_secs(30))
}

/// `B_{n,k}` against the fexc/fdes*, fexc/fdes and cdes/cover+cef sums.
fn three_sums(n: usize, r: usize) -> Check {
    for k in 1..=r * n {
        let b = b_polynomial(n, r, k).unwrap();
        let level = r * n - k;
        let s1 = poly_where(
            n,
            r,
            |p| fexc(p) == level,
            |p| fdes_star(p).unwrap().div_ceil(r),
        );
        let s2 = poly_where(n, r, |p| fexc(p) == level, |p| fdes(p).unwrap().div_ceil(r));
        let li = poly_where(
            n,
            r,
            |p| Statistic::Cdes.eval(p) == level,
            |p| cover(p.sigma()) + cef(p),
        );
        for (name, s) in [("fdes*", &s1), ("fdes", &s2), ("cover+cef", &li)] {
            ensure(*s == b, || format!("n={n} r={r} k={k} {name}: {s} vs {b}"))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for n in 1..=5 {
        three_sums(n, 1)?;
    }
    within(start, Duration::from_secs(60))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    for r in 2..=3 {
        for n in 1..=4 {
            three_sums(n, r)?;
        }
    }
    within(start, Duration::from_secs(120))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    for n in 1..=5 {
        for r in 1..=3 {
            for k in 1..=r * n {
                let lattice = a_polynomial(n, r, k).unwrap();
                let perms =
                    poly_where(n, r, |p| fdes(p).unwrap() == k - 1, |p| ides(p.sigma()) + 1);
                ensure(lattice == perms, || {
                    format!("n={n} r={r} k={k}: {lattice} vs {perms}")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn criterion_6() -> Check {
    for n in 0..=4 {
        for r in 1..=3 {
            for k in 0..=r * n {
                let mut rhs = IntPolynomial::zero();
                for j in (0..=n).take_while(|j| r * j <= k) {
                    let a = a_polynomial(n - j, r, k - r * j).unwrap();
                    rhs =
                        rhs + (IntPolynomial::binomial_power(1, -1, j) * a).scale(&binomial(n, j));
                }
                let b = b_polynomial(n, r, k).unwrap();
                ensure(b == rhs, || {
                    format!("inclusion-exclusion n={n} r={r} k={k}: {b} vs {rhs}")
                })?;
            }
        }
    }
    for r in 1..=3 {
        let v = verify_exp_relation(&build_b(r, 4).unwrap(), &build_a(r, 4).unwrap(), r).unwrap();
        ensure(v.passed(), || format!("relAB r={r}: {:?}", v.witness()))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    for r in 1..=3 {
        let v = verify_exp_relation(&build_c(r, 4).unwrap(), &build_a(r, 4).unwrap(), r).unwrap();
        ensure(v.passed(), || format!("relAC r={r}: {:?}", v.witness()))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    for r in 1..=3 {
        let v = verify_foata_han(r, 3, 3 * r + 3).unwrap();
        ensure(v.passed(), || format!("Foata-Han r={r}: {:?}", v.witness()))?;
        for side in [OgfSide::A, OgfSide::C] {
            let v = verify_ogf(side, r, 3, 3).unwrap();
            ensure(v.passed(), || format!("{side:?} r={r}: {:?}", v.witness()))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    for n in 1..=4 {
        for r in 1..=3 {
            for k in 1..=r * n {
                let a = ehrhart_polynomial(&SliceRegion::a_slice(n, r, k).unwrap()).unwrap();
                let b = ehrhart_polynomial(&SliceRegion::b_slice(n, r, k).unwrap()).unwrap();
                ensure(ehrhart_a_closed(n, r, k).unwrap() == a, || {
                    format!("A n={n} r={r} k={k}")
                })?;
                ensure(ehrhart_b_closed(n, r, k).unwrap() == b, || {
                    format!("B n={n} r={r} k={k}")
                })?;
            }
        }
    }
    for n in 1..=5 {
        for r in 1..=3 {
            let row = flag_eulerian_row(n, r).unwrap();
            for (k, expected) in row.iter().enumerate().skip(1) {
                let closed = flag_eulerian_closed(n, r, k).unwrap();
                ensure(closed == *expected, || {
                    format!("flag Eulerian n={n} r={r} k={k}: {closed} vs {expected}")
                })?;
            }
        }
    }
    let mut by_des = [0u64; 6];
    for sigma in permutations(6) {
        by_des[des_perm(&sigma)] += 1;
    }
    for k in 1..=6 {
        let closed = eulerian_closed(6, k).unwrap();
        ensure(closed == BigInt::from(by_des[k - 1]), || {
            format!("Eulerian k={k}: {closed}")
        })?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let ctx = Context {
        max_n: 5,
        max_r: 3,
        fixtures: Vec::new(),
    };
    let report = run_suite(Suite::Bijections, &ctx, None).map_err(|e| e.to_string())?;
    for r in &report.reports {
        ensure(r.passed, || format!("{}: {:?}", r.identity, r.witness))?;
    }
    let grid = &report.reports[0].parameters;
    ensure(
        grid["max_n"] == 3 && grid["max_r"] == 3 && grid["max_t"] == 3,
        || format!("grid bounds {grid:?}"),
    )?;
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
    let image = involution_i(&p);
    ensure(
        image.to_string() == "(8,1)(2,0)(4,1)(7,2)(1,2)(3,0)(5,1)(6,1)",
        || format!("worked example: {image}"),
    )
}

fn criterion_11() -> Check {
    let ctx = Context {
        max_n: 4,
        max_r: 3,
        fixtures: Vec::new(),
    };
    let report = run_suite(Suite::Permstats, &ctx, None).map_err(|e| e.to_string())?;
    let neg = report
        .reports
        .iter()
        .find(|r| r.identity == "fexc-fdes-vs-fexc-fdes_star-differ")
        .ok_or("negative-result identity missing")?;
    let example = neg.example.as_ref().ok_or("no witness reported")?;
    let (n, r) = (
        example.coordinates["n"] as usize,
        example.coordinates["r"] as usize,
    );
    ensure(n <= 4 && r <= 3, || {
        format!("witness out of range: {example}")
    })?;
    let a = joint_distribution(n, r, Statistic::Fexc, Statistic::Fdes).unwrap();
    let b = joint_distribution(n, r, Statistic::Fexc, Statistic::FdesStar).unwrap();
    ensure(a != b, || {
        format!("reported (n, r) = ({n}, {r}) does not separate the pairs")
    })?;
    println!("    witness: {example}");
    Ok(())
}

fn criterion_12() -> Check {
    for n in 1..=7 {
        for shape in partitions(n) {
            let v = verify_sytdes(&shape);
            ensure(v.passed(), || format!("{shape}: {:?}", v.witness()))?;
        }
    }
    for n in 1..=5 {
        let v = verify_rsk_identity(n).unwrap();
        ensure(v.passed(), || format!("n={n}: {:?}", v.witness()))?;
    }
    Ok(())
}

fn flipped(dir: &Path, file: &str, table: usize, row: usize, index: usize) -> Check {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for entry in std::fs::read_dir(&fixtures).unwrap() {
        let path = entry.unwrap().path();
        std::fs::copy(&path, dir.join(path.file_name().unwrap())).unwrap();
    }
    let target = dir.join(file);
    let mut tables: Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    let cell = &mut tables[table]["rows"][row];
    let slot = if cell.get("count").is_some() {
        &mut cell["count"]
    } else {
        &mut cell["coefficients"][index]
    };
    let old: BigInt = slot.as_str().unwrap().parse().unwrap();
    *slot = Value::String((old + BigInt::from(1)).to_string());
    std::fs::write(&target, serde_json::to_string(&tables).unwrap()).unwrap();

    let out = hslab(&[
        "verify",
        "--suite",
        "lattice",
        "--fixtures",
        dir.to_str().unwrap(),
    ]);
    ensure(out.status.code() == Some(1), || {
        format!("{file}[{table}]: exit {:?}", out.status)
    })?;
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let golden = report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["identity"] == "golden-fixtures")
        .ok_or("golden-fixtures report missing")?;
    ensure(
        golden["passed"] == false && golden["witness"].is_object(),
        || format!("{file}[{table}]: {golden}"),
    )
}

fn criterion_13() -> Check {
    let start = Instant::now();
    let out = hslab(&["verify", "--suite", "all", "--max-n", "4", "--max-r", "3"]);
    ensure(out.status.success(), || {
        format!(
            "exit {:?}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    within(start, Duration::from_secs(300))?;
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let count = report["reports"].as_array().map_or(0, Vec::len);
    ensure(count >= 15, || format!("only {count} identities"))?;

    let embedded = embedded_fixtures();
    for (file, family) in [
        ("A.json", "A"),
        ("B.json", "B"),
        ("flag-eulerian.json", "flag-eulerian"),
    ] {
        let tables: Vec<usize> = (0..embedded.len())
            .filter(|&i| embedded[i].family.name() == family)
            .collect();
        for (pos, _) in tables.iter().enumerate().step_by(4) {
            let t = &embedded[tables[pos]];
            let row = t.rows.len() / 2;
            let width = t.rows[row].values().len();
            let dir = tempfile::tempdir().unwrap();
            flipped(dir.path(), file, pos, row, width - 1)?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 13] = [
        ("Eulerian baseline table", criterion_1),
        ("cell lemmas n <= 5", criterion_2),
        ("B slices, r = 1, three combinatorial sums", criterion_3),
        ("B slices, r = 2, 3, three combinatorial sums", criterion_4),
        ("A slices by (fdes, ides)", criterion_5),
        ("inclusion-exclusion and relAB", criterion_6),
        ("relAC", criterion_7),
        ("Foata-Han, ogfA, ogfC", criterion_8),
        ("closed forms", criterion_9),
        ("bijections", criterion_10),
        ("(fexc, fdes) vs (fexc, fdes*) witness", criterion_11),
        ("tableaux", criterion_12),
        ("end-to-end verify and fixture tampering", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "criterion {:2} PASS  {name} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(msg) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
