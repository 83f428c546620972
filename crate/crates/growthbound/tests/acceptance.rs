//! Acceptance run: one line per criterion. Exits non-zero only on failures
//! that are not documented as known discrepancies.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use growthbound::bounds::{
    closed_form_2d, diagonal_radius_bound, eden_bound, general_bound, lower_bound_from_count, multinomial_bound,
    ratio_estimate, Certificate,
};
use growthbound::enumerator::{build_weight_sum, RunOptions, WeightSum};
use growthbound::oracle::{count_fixed, enumerate_fixed};
use growthbound::polyalg::roots::rational_to_f64;
use growthbound::polyalg::{clear_denominator, discriminant_in_s, max_real_root, series_diagonal, to_decimal};
use growthbound::twig::{decode, encode, sequence_weight, Monomial};
use growthbound::twigs2d::canonical_twigs_2d;
use growthbound::twigs3d::canonical_twigs_3d;
use growthbound::verify::{
    describe_diff, known_discrepancy, matches_printed, printed_polynomial_bounds, run_suite, table_2d, table_3d,
    weights_2d, Status, Suite, VerifyConfig, WeightCache,
};
use growthbound::{Animal, TwigSet, ZPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Line {
    id: String,
    what: String,
    failures: Vec<String>,
    known: Vec<String>,
}

impl Line {
    fn new(id: impl Into<String>, what: impl Into<String>) -> Self {
        Line { id: id.into(), what: what.into(), failures: Vec::new(), known: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn check_known(&mut self, ok: bool, known: Option<&str>, detail: impl FnOnce() -> String) {
        match (ok, known) {
            (true, _) => {}
            (false, Some(k)) => self.known.push(format!("{} (known: {k})", detail())),
            (false, None) => self.failures.push(detail()),
        }
    }

    /// Prints the line; returns `true` unless an undocumented check failed.
    fn report(self, secs: f64) -> bool {
        let status = if !self.failures.is_empty() {
            "FAIL"
        } else if !self.known.is_empty() {
            "FAIL*"
        } else {
            "PASS"
        };
        println!("{status:5} [{}] {} ({secs:.1}s)", self.id, self.what);
        for f in &self.failures {
            println!("        unexpected: {f}");
        }
        for k in &self.known {
            println!("        {k}");
        }
        self.failures.is_empty()
    }
}

fn close(v: f64, want: f64, tol: f64) -> bool {
    (v - want).abs() <= tol
}

fn weights<const D: usize>(set: &TwigSet<D>, max_i: usize) -> Result<Vec<WeightSum>, Box<dyn std::error::Error>> {
    let opts = RunOptions { budget: u64::MAX, ..RunOptions::with_workers(4) };
    Ok((1..=max_i).map(|i| build_weight_sum(set, i, &opts)).collect::<Result<_, _>>()?)
}

fn table_criterion(l: &mut Line, d: usize, ws: &[WeightSum]) -> Result<Vec<BigRational>, Box<dyn std::error::Error>> {
    let rows = if d == 2 { table_2d() } else { table_3d() };
    let mut bounds = Vec::new();
    for w in ws {
        let row = rows.iter().find(|r| r.i == w.i).expect("table row");
        let known = known_discrepancy(d, w.i);
        l.check_known(w.count == row.count, known, || format!("i={} count {} vs {}", w.i, w.count, row.count));
        let b = diagonal_radius_bound(&w.poly, d, Some(w.i), 12)?;
        l.check_known(matches_printed(&b.value, &row.bound), known, || {
            format!("i={} bound {} vs printed {}", w.i, to_decimal(&b.value, 10), row.bound)
        });
        bounds.push(b.value);
    }
    Ok(bounds)
}

fn codec_exhaustive<const D: usize>(l: &mut Line, set: &TwigSet<D>, max_n: usize) {
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        for a in enumerate_fixed::<D>(n) {
            let Ok(s) = encode(set, &a) else {
                l.check(false, || format!("d={D}: encode failed on {a:?}"));
                continue;
            };
            let back: Option<Animal<D>> = decode(set, &s).ok();
            l.check(back.as_ref() == Some(&a), || format!("d={D}: round trip failed on {a:?}"));
            let w = sequence_weight(set, &s);
            l.check(w == Monomial { a: n as u32, b: n as u32 }, || format!("d={D}: weight {w} for size {n}"));
            l.check(seen.insert(s), || format!("d={D} n={n}: code collision"));
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            println!("FAIL  acceptance aborted: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<bool, Box<dyn std::error::Error>> {
    let mut ok = true;
    let set2 = canonical_twigs_2d();
    let set3 = canonical_twigs_3d();

    // 1. planar table, i <= 12
    let t = Instant::now();
    let w2 = weights(&set2, 12)?;
    let mut l = Line::new("1", "d=2 |C_i| and bounds for i=1..12 match the table");
    let b2 = table_criterion(&mut l, 2, &w2)?;
    ok &= l.report(t.elapsed().as_secs_f64());

    // 2. printed weight polynomials
    let t = Instant::now();
    let printed = weights_2d();
    let mut l = Line::new("2", "computed W_i equals printed W_i for i=1..12; printed W_i(1,1) = |C_i| for i=1..21");
    for w in &w2 {
        let p = printed.get(w.i).expect("printed polynomial");
        let diff = describe_diff(p, &w.poly);
        l.check(diff.is_none(), || format!("W_{}: {}", w.i, diff.unwrap_or_default()));
    }
    for (i, p) in &printed.polys {
        let row = table_2d().into_iter().find(|r| r.i == *i).unwrap();
        l.check(p.eval_one() == row.count, || format!("printed W_{i}(1,1) = {} vs {}", p.eval_one(), row.count));
    }
    ok &= l.report(t.elapsed().as_secs_f64());

    // 3. spatial table, i <= 5, plus i = 6
    let t = Instant::now();
    let w3 = weights(&set3, 6)?;
    let mut l = Line::new("3", "d=3 |C_i| and bounds for i=1..5 match the table (i=6 extended)");
    let b3 = table_criterion(&mut l, 3, &w3)?;
    ok &= l.report(t.elapsed().as_secs_f64());

    // 4. closed forms
    let t = Instant::now();
    let mut l = Line::new("4", "closed-form bounds");
    let cf = closed_form_2d();
    l.check(close(cf.to_f64(), 4.828427124, 1e-9), || format!("closed2d {}", cf.render(10)));
    let m3 = multinomial_bound(3)?;
    l.check(close(m3.to_f64(), 9.807295572, 1e-8), || format!("multinomial(3) {}", m3.render(10)));
    if let Certificate::Minimizer { b0, .. } = &m3.certificate {
        let b0 = rational_to_f64(b0);
        l.check(close(b0, 1.274306378, 1e-6), || format!("b0 {b0}"));
    } else {
        l.check(false, || "multinomial(3) has no minimiser certificate".into());
    }
    let m4 = multinomial_bound(4)?;
    l.check(close(m4.to_f64(), 15.1284, 5e-4), || format!("multinomial(4) {}", m4.render(6)));
    let e2 = eden_bound(2)?.value;
    l.check(e2 == BigRational::new(27.into(), 4.into()), || format!("eden(2) {e2}"));
    let e3 = eden_bound(3)?.value;
    l.check(e3 == BigRational::new(3125.into(), 256.into()), || format!("eden(3) {e3}"));
    let g3 = general_bound(3)?;
    let want = 4.0 * std::f64::consts::E + 0.25;
    l.check(close(g3.to_f64(), want, 1e-9), || format!("general(3) {} vs {want}", g3.render(12)));
    ok &= l.report(t.elapsed().as_secs_f64());

    // 5. the W_1 discriminant
    let t = Instant::now();
    let mut l = Line::new("5", "W_1: quadratic in s, discriminant ~ 1 - 4z - 4z^2, root (sqrt2-1)/2, bound = closed form");
    let sp = clear_denominator(&w2[0].poly)?;
    l.check(sp.degree_s() == 2, || format!("degree in s {}", sp.degree_s()));
    let disc = discriminant_in_s(&sp)?;
    let target = ZPoly::from_i64s(&[-1, 4, 4]);
    l.check(disc == target, || format!("discriminant {disc:?}"));
    let root = max_real_root(&disc, 15)?.ok_or("no real root")?;
    let r = rational_to_f64(&root.midpoint());
    l.check(close(r, (2f64.sqrt() - 1.0) / 2.0, 1e-12), || format!("root {r}"));
    let b1 = diagonal_radius_bound(&w2[0].poly, 2, Some(1), 12)?;
    l.check(close(b1.to_f64(), cf.to_f64(), 1e-9), || format!("bound {}", b1.render(10)));
    ok &= l.report(t.elapsed().as_secs_f64());

    // 6. dominance
    let t = Instant::now();
    let mut l = Line::new("6", "A_2(n) <= c_1(n,n) for n <= 10; c_1 = 1, 4, 18 at n = 1, 2, 3");
    let a2 = count_fixed(2, 10)?;
    let diag = series_diagonal(&w2[0].poly, 10)?;
    for (n, want) in [(1usize, 1i64), (2, 4), (3, 18)] {
        l.check(diag[n] == BigInt::from(want), || format!("c_1({n},{n}) = {}", diag[n]));
    }
    for n in 1..=10 {
        l.check(a2.counts[n - 1] <= diag[n], || format!("A_2({n}) = {} > {}", a2.counts[n - 1], diag[n]));
    }
    ok &= l.report(t.elapsed().as_secs_f64());

    // 7. monotonicity and the plateau
    let t = Instant::now();
    let mut l = Line::new("7", "bounds nonincreasing in i (both d); 1/sigma_1 = 1/sigma_2 = 1/sigma_3 = 4.828427124");
    for (d, bs) in [(2, &b2), (3, &b3)] {
        for k in 1..bs.len() {
            l.check(bs[k] <= bs[k - 1], || format!("d={d}: i={} bound exceeds i={}", k + 1, k));
        }
    }
    for (k, b) in b2.iter().take(3).enumerate() {
        l.check(matches_printed(b, "4.828427124"), || format!("i={} gives {}", k + 1, to_decimal(b, 10)));
    }
    ok &= l.report(t.elapsed().as_secs_f64());

    // 8. ratio estimates
    let t = Instant::now();
    let mut l = Line::new("8", "c_1(n,n)^(1/n) at n = 50..200 nondecreasing, n=200 within 5% below 4.828427");
    let mut prev = 0.0;
    for n in [50, 100, 150, 200] {
        let v = ratio_estimate(&w2[0].poly, 2, n)?.to_f64();
        l.check(v >= prev, || format!("n={n}: {v} < {prev}"));
        prev = v;
    }
    l.check(prev <= 4.828427 && prev >= 0.95 * 4.828427, || format!("n=200: {prev}"));
    ok &= l.report(t.elapsed().as_secs_f64());

    // 9. structural suites
    let t = Instant::now();
    let mut l = Line::new("9", "codec round trip, injectivity and weight identity; determinism over 1/4/8 workers; census");
    codec_exhaustive(&mut l, &set2, 8);
    codec_exhaustive(&mut l, &set3, 5);
    for workers in [1, 8] {
        let w = build_weight_sum(&set2, 9, &RunOptions { budget: u64::MAX, ..RunOptions::with_workers(workers) })?;
        l.check(w == w2[8], || format!("d=2 i=9: {workers} workers differ from 4"));
    }
    for workers in [1, 8] {
        let w = build_weight_sum(&set3, 5, &RunOptions { budget: u64::MAX, ..RunOptions::with_workers(workers) })?;
        l.check(w == w3[4], || format!("d=3 i=5: {workers} workers differ from 4"));
    }
    let cfg = VerifyConfig { max_i_2d: 4, ..VerifyConfig::default() };
    let census = run_suite(Suite::AppendixA, &cfg, &mut WeightCache::default())?;
    for c in census.checks.iter().filter(|c| c.status != Status::Pass) {
        l.check(false, || c.to_string());
    }
    ok &= l.report(t.elapsed().as_secs_f64());

    // 10. lower bound from a count
    let t = Instant::now();
    let mut l = Line::new("10", "lower bound from A_3(19) = 651459315795897 is 6.3795");
    let lb = lower_bound_from_count(3, 19, &"651459315795897".parse()?)?;
    l.check(close(lb.to_f64(), 6.3795, 5e-4), || format!("got {}", lb.render(6)));
    ok &= l.report(t.elapsed().as_secs_f64());

    // beyond enumeration range: bounds from the printed polynomials
    let t = Instant::now();
    let mut l = Line::new("x", "bounds from printed W_13..W_21 (d=2) and the printed d=3 polynomial match the tables");
    for c in printed_polynomial_bounds()? {
        l.check(c.status == Status::Pass, || c.to_string());
    }
    ok &= l.report(t.elapsed().as_secs_f64());

    Ok(ok)
}
