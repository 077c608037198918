//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use synchrolab::conjugacy::{check_invariants, groupoid_sample, Arrow, GroupoidKind};
use synchrolab::factor::{degree_bound, degree_check, preimage_count, CoverMap};
use synchrolab::periodic::{enumerate_periodic, find_periodic_by_bracket, periodic_density_check};
use synchrolab::point::enumerate_points;
use synchrolab::report::{bowen_franks, exact_sequence_report, NonSyncCount};
use synchrolab::sync::{
    is_synchronizing, nonsync_subshift, rectangle_check, sync_density_check, Finiteness,
};
use synchrolab::{
    builtins, point_in_shift, smith_normal_form, Alphabet, BiSeq, Dyadic, IntMatrix, Shift, Verdict,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

/// Cyclic words of length n avoiding `11`, counted by brute force.
fn golden_fixed_points(n: usize) -> usize {
    (0u32..1 << n)
        .filter(|w| (0..n).all(|i| !(w >> i & 1 == 1 && w >> ((i + 1) % n) & 1 == 1)))
        .count()
}

fn periodic_counts() -> Check {
    let start = Instant::now();
    let s = builtins::golden_mean();
    let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
    let mut counts = Vec::new();
    for n in 1..=5 {
        let got = enumerate_periodic(&s, n)
            .map_err(|e| e.to_string())?
            .count();
        let trace = a.pow(n as u32).trace() as usize;
        let brute = golden_fixed_points(n);
        ensure(got == trace && got == brute, || {
            format!("n={n}: enumerated {got}, trace {trace}, brute force {brute}")
        })?;
        counts.push(got);
    }
    ensure(counts == [1, 3, 4, 7, 11], || format!("counts {counts:?}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("counts {counts:?} in {:?}", start.elapsed()))
}

fn even_nonsync() -> Check {
    let start = Instant::now();
    let s = builtins::even();
    let r = nonsync_subshift(&s).map_err(|e| e.to_string())?;
    let Finiteness::Finite(points) = &r.finiteness else {
        return Err("non-synchronizing set reported infinite".into());
    };
    ensure(points == &[BiSeq::constant(0)], || {
        format!("points {points:?}")
    })?;
    let report = exact_sequence_report(&s).map_err(|e| e.to_string())?;
    ensure(report.m == NonSyncCount::Finite(1), || {
        format!("m = {}", report.m)
    })?;
    ensure(report.quotient.as_deref() == Some("ℂ^1"), || {
        format!("{:?}", report.quotient)
    })?;
    within(Duration::from_secs(1), start)?;
    Ok("m = 1, point all-zeros, quotient ℂ^1".into())
}

fn even_cover() -> Check {
    let s = builtins::even();
    let c = CoverMap::of_shift(&s).map_err(|e| e.to_string())?;
    let zeros = preimage_count(&c, &BiSeq::constant(0)).map_err(|e| e.to_string())?;
    ensure(zeros.count == 2, || {
        format!("all-zeros has {} preimages", zeros.count)
    })?;
    let mut checked = 0;
    let mut seen = BTreeSet::new();
    for n in 1..=4 {
        for p in enumerate_periodic(&s, n).map_err(|e| e.to_string())?.points {
            if p == BiSeq::constant(0) || !seen.insert(p.clone()) {
                continue;
            }
            let k = preimage_count(&c, &p).map_err(|e| e.to_string())?.count;
            ensure(k == 1, || format!("{p:?} has {k} preimages"))?;
            checked += 1;
        }
    }
    let bound = degree_bound(&c).map_err(|e| e.to_string())?;
    ensure(bound == 2, || format!("degree bound {bound}"))?;
    let d = degree_check(&c, 8).map_err(|e| e.to_string())?;
    ensure(d.violations.is_empty() && d.max_observed <= 2, || {
        format!(
            "max observed {}, violations {:?}",
            d.max_observed, d.violations
        )
    })?;
    Ok(format!(
        "all-zeros 2, {checked} periodic points with a 1 have 1, max {} over {} samples",
        d.max_observed, d.samples
    ))
}

fn bracket_iteration() -> Check {
    let s = builtins::golden_mean();
    let x = BiSeq::constant(0);
    let y = BiSeq::spike(0, &[1], 3);
    let it = find_periodic_by_bracket(&s, &x, &y, 6, 2).map_err(|e| e.to_string())?;
    let p = &it.point;
    ensure(it.steps <= 8, || format!("{} steps", it.steps))?;
    ensure(p.shift_by(12) == *p, || {
        format!("{p:?} not fixed by 12 shifts")
    })?;
    ensure(x.distance(p) <= Dyadic::Pow(2), || {
        format!("distance {}", x.distance(p))
    })?;
    let per6 = enumerate_periodic(&s, 6).map_err(|e| e.to_string())?.points;
    ensure(per6.contains(p), || {
        format!("{p:?} not among points of period 6")
    })?;
    Ok(format!(
        "{} step(s), period {}, distance {}",
        it.steps,
        it.minimal_period,
        x.distance(p)
    ))
}

fn pair_symbol(a: &Alphabet, name: &str) -> u16 {
    a.index(name).expect("product symbol")
}

fn rectangles() -> Check {
    let golden = builtins::golden_mean();
    let even = builtins::even();
    let product = golden.product(&even).map_err(|e| e.to_string())?;
    let pa = product.alphabet().clone();
    let cases: Vec<(&Shift, BiSeq)> = vec![
        (&golden, BiSeq::constant(0)),
        (&golden, BiSeq::spike(0, &[1], 0)),
        (&golden, BiSeq::periodic(&[0, 1])),
        (&even, BiSeq::constant(1)),
        (&even, BiSeq::spike(1, &[0, 0], -1)),
        (&product, BiSeq::constant(pair_symbol(&pa, "(0,1)"))),
        (
            &product,
            BiSeq::periodic(&[pair_symbol(&pa, "(0,1)"), pair_symbol(&pa, "(1,1)")]),
        ),
    ];
    let mut passed = 0;
    for (s, x) in &cases {
        ensure(is_synchronizing(s, x).map_err(|e| e.to_string())?, || {
            format!("{x:?} is not synchronizing in {}", s.name())
        })?;
        for n in [2, 3] {
            let r = rectangle_check(s, x, n, 6).map_err(|e| format!("{}: {e}", s.name()))?;
            ensure(r.passed(), || {
                format!("{} at {x:?}, N={n}: {:?}", s.name(), r.failures)
            })?;
            passed += 1;
        }
    }
    ensure(cases.len() >= 5, || "too few points".into())?;
    Ok(format!("{} points, {passed} rectangle checks", cases.len()))
}

fn density() -> Check {
    let mut words = 0;
    for s in [builtins::golden_mean(), builtins::even()] {
        let sync = sync_density_check(&s, 8).map_err(|e| e.to_string())?;
        let per = periodic_density_check(&s, 8).map_err(|e| e.to_string())?;
        for (what, r) in [("sync", &sync), ("periodic", &per)] {
            ensure(r.status == Verdict::Yes, || {
                format!(
                    "{} {what}: {:?}, failures {:?}",
                    s.name(),
                    r.status,
                    r.failures
                )
            })?;
            words += r.words_checked;
        }
    }
    let ray = builtins::nonsofic_ray();
    for r in [
        sync_density_check(&ray, 4).map_err(|e| e.to_string())?,
        periodic_density_check(&ray, 4).map_err(|e| e.to_string())?,
    ] {
        ensure(r.passed(), || {
            format!("ray: {:?}, failures {:?}", r.status, r.failures)
        })?;
        words += r.words_checked;
    }
    Ok(format!("{words} words with witnesses"))
}

fn invariance() -> Check {
    let golden = builtins::golden_mean();
    let even = builtins::even();
    let full2 = builtins::full2();
    let ones = BiSeq::constant(1);
    let runs: Vec<(&Shift, GroupoidKind, usize)> = vec![
        (&golden, GroupoidKind::Lc, 5),
        (&full2, GroupoidKind::Lc, 4),
        (&even, GroupoidKind::LcSync, 5),
        (&even, GroupoidKind::Lcs(vec![ones.clone()]), 5),
        (&even, GroupoidKind::Lcu(vec![ones.clone()]), 5),
    ];
    let mut germs = 0;
    let mut totals = [0usize; 4];
    for (s, kind, bound) in runs {
        let sample = groupoid_sample(s, &kind, bound).map_err(|e| e.to_string())?;
        ensure(sample.violations.is_empty(), || {
            format!("{} {kind:?}: {:?}", s.name(), &sample.violations[..1])
        })?;
        let arrows: Vec<Arrow> = sample.arrows;
        let r = check_invariants(s, &arrows, &[-3, -1, 2]).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), || {
            format!("{} {kind:?}: {:?}", s.name(), &r.violations[..1])
        })?;
        germs += r.germs;
        totals[0] += r.equivariance_checks;
        totals[1] += r.sync_checks;
        totals[2] += r.rigidity_checks;
        totals[3] += r.composition_checks;
    }
    ensure(germs >= 200, || format!("only {germs} germs"))?;
    ensure(totals.iter().all(|&t| t > 0), || {
        format!("empty check class {totals:?}")
    })?;
    Ok(format!(
        "{germs} germs; equivariance {}, sync {}, rigidity {}, composition {}",
        totals[0], totals[1], totals[2], totals[3]
    ))
}

/// Distance by scanning coordinates out to the alignment bound of the pair.
fn scan_distance(x: &BiSeq, y: &BiSeq) -> f64 {
    let bound = alignment_bound(x, y);
    (0..=bound)
        .find(|&k| x.at(k) != y.at(k) || x.at(-k) != y.at(-k))
        .map_or(0.0, |k| 0.5f64.powi(k as i32))
}

fn alignment_bound(x: &BiSeq, y: &BiSeq) -> i64 {
    let span = [x.origin(), x.core_end(), y.origin(), y.core_end()]
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap();
    let periods = [
        x.left().len(),
        x.right().len(),
        y.left().len(),
        y.right().len(),
    ];
    let lcm = periods.iter().fold(1usize, |l, &p| l / gcd(l, p) * p);
    span + lcm as i64 + 1
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn metric() -> Check {
    let a = Alphabet::new(["0", "1"]).unwrap();
    let points = enumerate_points(&a, 6);
    let n = points.len();
    let mut d = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = points[i].distance(&points[j]).to_f64();
            let scanned = scan_distance(&points[i], &points[j]);
            ensure(d[i][j] == scanned, || {
                format!(
                    "distance {} vs scan {scanned} for {:?}, {:?}",
                    d[i][j], points[i], points[j]
                )
            })?;
        }
    }
    let (mut adapted, mut lipschitz, mut expansive) = (0, 0, 0);
    for (i, x) in points.iter().enumerate() {
        let (fx, bx) = (x.shift_by(1), x.shift_by(-1));
        for (j, y) in points.iter().enumerate() {
            let dxy = d[i][j];
            ensure(d[i][j] == d[j][i], || "asymmetric".into())?;
            ensure((dxy == 0.0) == (x == y), || {
                "zero distance between distinct points".into()
            })?;
            let (fy, by) = (y.shift_by(1), y.shift_by(-1));
            let (dforward, dback) = (fx.distance(&fy).to_f64(), bx.distance(&by).to_f64());
            ensure(dforward <= 2.0 * dxy && dback <= 2.0 * dxy, || {
                format!("Lipschitz fails for {x:?}, {y:?}")
            })?;
            lipschitz += 1;
            if (-1..40).all(|k| x.at(k) == y.at(k)) && y.agree_from(x).is_some_and(|k| k <= -1) {
                ensure(dforward <= 0.5 * dxy, || {
                    format!("stable contraction fails for {x:?}, {y:?}")
                })?;
                adapted += 1;
            }
            if y.agree_until(x).is_some_and(|k| k >= 1) {
                ensure(dback <= 0.5 * dxy, || {
                    format!("unstable contraction fails for {x:?}, {y:?}")
                })?;
                adapted += 1;
            }
            if x != y {
                let bound = alignment_bound(x, y);
                let separated = (0..=bound)
                    .flat_map(|k| [k, -k])
                    .any(|k| x.shift_by(k).distance(&y.shift_by(k)).to_f64() > 0.5);
                ensure(separated, || {
                    format!("orbits of {x:?} and {y:?} stay 1/2-close")
                })?;
                expansive += 1;
            }
        }
    }
    // Ultrametric inequality over every triple, on a table of distance ranks.
    let rank = |v: f64| {
        if v == 0.0 {
            0u8
        } else {
            255 - (-v.log2()) as u8
        }
    };
    let table: Vec<u8> = d.iter().flatten().map(|&v| rank(v)).collect();
    for i in 0..n {
        let row_i = &table[i * n..(i + 1) * n];
        for j in 0..n {
            let dij = row_i[j];
            let row_j = &table[j * n..(j + 1) * n];
            if let Some(k) = (0..n).find(|&k| row_i[k] > dij.max(row_j[k])) {
                return Err(format!(
                    "ultrametric fails at {:?}",
                    (&points[i], &points[j], &points[k])
                ));
            }
        }
    }
    Ok(format!(
        "{n} points: {} pairs, {adapted} contraction cases, {lipschitz} Lipschitz, {expansive} expansive, {} triples",
        n * n,
        n * n * n
    ))
}

/// Invariant factors from gcds of minors: `s_k = d_k / d_{k-1}`.
fn determinantal_factors(m: &IntMatrix) -> Vec<i64> {
    let n = m.rows();
    let mut divisors = vec![1i64];
    for k in 1..=n {
        let mut g = 0i64;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| m[(r, c)]).collect())
                    .collect();
                g = gcd_i(g, IntMatrix::from_rows(&minor).determinant());
            }
        }
        divisors.push(g);
    }
    let mut factors = Vec::new();
    for k in 1..=n {
        let (prev, cur) = (divisors[k - 1], divisors[k]);
        factors.push(if prev == 0 { 0 } else { cur / prev });
    }
    factors.into_iter().filter(|&f| f != 1).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn gcd_i(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i(b, a % b)
    }
}

/// Number of elements killed by `k` in `Z^n / M Z^n`, enumerating classes directly:
/// `v` and `w` are equivalent iff `adj(M)(v - w) = 0 mod det M`.
fn torsion_counts(m: &IntMatrix, max_k: i64) -> Vec<usize> {
    let n = m.rows();
    let det = m.determinant();
    let modulus = det.abs();
    let adj = adjugate(m);
    let mut classes = BTreeSet::new();
    let mut v = vec![0i64; n];
    loop {
        let image: Vec<i64> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| adj[i][j] * v[j])
                    .sum::<i64>()
                    .rem_euclid(modulus)
            })
            .collect();
        classes.insert(image);
        let mut i = 0;
        while i < n && v[i] == modulus - 1 {
            v[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        v[i] += 1;
    }
    assert_eq!(classes.len() as i64, modulus, "class count equals |det|");
    (1..=max_k)
        .map(|k| {
            classes
                .iter()
                .filter(|c| c.iter().all(|&x| (k * x) % modulus == 0))
                .count()
        })
        .collect()
}

fn adjugate(m: &IntMatrix) -> Vec<Vec<i64>> {
    let n = m.rows();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[(r, c)]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * IntMatrix::from_rows(&minor).determinant();
        }
    }
    adj
}

fn smith() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let (mut finite, mut infinite) = (0, 0);
    for trial in 0..50 {
        let n = rng.gen_range(1..=3);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        let a = IntMatrix::from_rows(&rows);
        let m = &IntMatrix::identity(n) - &a;
        let snf = smith_normal_form(&m);
        let factors = snf.cokernel_factors(n);
        let expected = determinantal_factors(&m);
        ensure(factors == expected, || {
            format!("trial {trial}, A = {rows:?}: smith {factors:?}, minors {expected:?}")
        })?;
        if m.determinant() != 0 {
            let max_k = m.determinant().abs().min(30);
            let counts = torsion_counts(&m, max_k);
            for (k, &count) in (1..=max_k).zip(&counts) {
                let predicted: i64 = factors.iter().map(|&f| gcd_i(k, f)).product();
                ensure(predicted as usize == count, || {
                    format!("trial {trial}, A = {rows:?}: {count} elements killed by {k}, smith predicts {predicted}")
                })?;
            }
            finite += 1;
        } else {
            let free = factors.iter().filter(|&&f| f == 0).count();
            ensure(free == n - snf.rank, || {
                format!("trial {trial}: free rank {free}")
            })?;
            infinite += 1;
        }
    }
    let bf = bowen_franks(&builtins::golden_mean()).map_err(|e| e.to_string())?;
    ensure(bf.is_trivial() && bf.det_sign == -1, || {
        format!("golden mean fingerprint {bf:?}")
    })?;
    Ok(format!(
        "50 matrices ({finite} finite, {infinite} infinite cokernels); golden mean trivial, det -1"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("golden mean periodic counts", periodic_counts),
        ("even shift non-synchronizing set", even_nonsync),
        ("even shift cover preimages", even_cover),
        ("bracket iteration to a periodic point", bracket_iteration),
        ("rectangle property", rectangles),
        ("density of synchronizing and periodic points", density),
        ("germ invariance", invariance),
        ("metric contract", metric),
        ("smith normal form and Bowen-Franks data", smith),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!(
                "PASS {}: {name} ({detail}) [{:.2?}]",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    // Membership sanity for the points the suite builds.
    debug_assert_eq!(
        point_in_shift(&builtins::even(), &BiSeq::constant(1)),
        Verdict::Yes
    );
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
