//! Replays the published tables against freshly computed values.
//!
//! Golden data ships in `fixtures/` and is compiled in. Numeric comparison
//! rule: the computed value is rounded to the printed number of decimals,
//! and the two may differ by at most one unit in the last place (the
//! printed tables carry that much rounding noise).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bounds::{diagonal_radius_bound, BoundError};
use crate::enumerator::{build_weight_sum, EnumError, RunOptions, WeightSum};
use crate::formats::{parse_table_csv, weight_bundle_from_json, TableRow, WeightBundle};
use crate::oracle::{count_fixed, enumerate_fixed};
use crate::polyalg::{series_diagonal, to_decimal, BiPoly};
use crate::twig::{Configuration, Rejection, TwigSet};
use crate::twigs2d::canonical_twigs_2d;
use crate::twigs3d::canonical_twigs_3d;

pub const TABLE_2D_CSV: &str = include_str!("../fixtures/table_2d.csv");
pub const TABLE_3D_CSV: &str = include_str!("../fixtures/table_3d.csv");
pub const WEIGHTS_2D_JSON: &str = include_str!("../fixtures/weights_2d.json");
pub const WEIGHTS_3D_JSON: &str = include_str!("../fixtures/weights_3d.json");
pub const COUNTS_2D_CSV: &str = include_str!("../fixtures/counts_2d.csv");
pub const COUNTS_3D_CSV: &str = include_str!("../fixtures/counts_3d.csv");

pub fn table_2d() -> Vec<TableRow> {
    parse_table_csv(TABLE_2D_CSV).expect("bundled fixture parses")
}

pub fn table_3d() -> Vec<TableRow> {
    parse_table_csv(TABLE_3D_CSV).expect("bundled fixture parses")
}

pub fn weights_2d() -> WeightBundle {
    weight_bundle_from_json(WEIGHTS_2D_JSON).expect("bundled fixture parses")
}

pub fn weights_3d() -> WeightBundle {
    weight_bundle_from_json(WEIGHTS_3D_JSON).expect("bundled fixture parses")
}

/// Frozen oracle counts `A_d(1..)`.
pub fn frozen_counts(d: usize) -> Vec<BigInt> {
    let text = if d == 2 { COUNTS_2D_CSV } else { COUNTS_3D_CSV };
    text.lines().skip(1).filter(|l| !l.is_empty()).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
}

/// Printed values that the exact computation cannot reach within one unit
/// of the last place. Checked, reported as failures, and annotated.
pub fn known_discrepancy(d: usize, i: usize) -> Option<&'static str> {
    match (d, i) {
        (3, 2) => Some("printed value is 4.5e-9 below the exact radius 9.8072955715, which equals the multinomial bound"),
        (3, 3) => Some("printed value is 2.9e-9 below the exact radius 9.7014306929"),
        (3, 6) => Some("this 3D twig convention matches the counts for i <= 5 only; see README"),
        _ => None,
    }
}

/// `true` iff `value`, rounded to the decimals of `printed`, is within one
/// unit of the last printed place.
pub fn matches_printed(value: &BigRational, printed: &str) -> bool {
    let places = printed.split('.').nth(1).map_or(0, str::len);
    let scale = BigInt::from(10).pow(places as u32);
    let ours = (value * BigRational::from_integer(scale.clone())).round().to_integer();
    let theirs: BigInt = printed.replace('.', "").parse().expect("decimal literal");
    (ours - theirs).abs() <= BigInt::one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Table3,
    AppendixB,
    AppendixA,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Table1, Suite::Table3, Suite::AppendixB, Suite::AppendixA, Suite::Oracle];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Table3 => "table3",
            Suite::AppendixB => "appendixB",
            Suite::AppendixA => "appendixA",
            Suite::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    KnownFail(&'static str),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

impl Check {
    fn new(label: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, ok: bool) -> Self {
        Check { label: label.into(), expected: expected.to_string(), actual: actual.to_string(), status: if ok { Status::Pass } else { Status::Fail } }
    }

    fn known(mut self, why: Option<&'static str>) -> Self {
        if let (Status::Fail, Some(w)) = (&self.status, why) {
            self.status = Status::KnownFail(w);
        }
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS  {}: {}", self.label, self.actual),
            Status::Fail => write!(f, "FAIL  {}: expected {}, got {}", self.label, self.expected, self.actual),
            Status::KnownFail(w) => {
                write!(f, "FAIL  {}: expected {}, got {} (known: {})", self.label, self.expected, self.actual, w)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    /// No failures of any kind.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// No failures other than the documented ones.
    pub fn no_unexpected_failures(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {c}", self.suite.name())?;
        }
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        writeln!(f, "[{}] {pass}/{} passed", self.suite.name(), self.checks.len())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Alg(#[from] crate::polyalg::AlgError),
    #[error("oracle: {0}")]
    Oracle(#[from] crate::oracle::OracleError),
}

/// Scale of a verification run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_i_2d: usize,
    pub max_i_3d: usize,
    pub run: RunOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_i_2d: 12, max_i_3d: 5, run: RunOptions::default() }
    }
}

/// Computes each `W_i` once per run.
#[derive(Default)]
pub struct WeightCache {
    sums: BTreeMap<(usize, usize), WeightSum>,
}

impl WeightCache {
    pub fn get(&mut self, d: usize, i: usize, run: &RunOptions) -> Result<&WeightSum, EnumError> {
        if !self.sums.contains_key(&(d, i)) {
            let w = if d == 2 { build_weight_sum(&canonical_twigs_2d(), i, run)? } else { build_weight_sum(&canonical_twigs_3d(), i, run)? };
            self.sums.insert((d, i), w);
        }
        Ok(&self.sums[&(d, i)])
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig, cache: &mut WeightCache) -> Result<Report, VerifyError> {
    let checks = match suite {
        Suite::Table1 => table_suite(2, cfg.max_i_2d, cfg, cache)?,
        Suite::Table3 => table_suite(3, cfg.max_i_3d, cfg, cache)?,
        Suite::AppendixB => weights_suite(cfg, cache)?,
        Suite::AppendixA => census_suite(cfg, cache)?,
        Suite::Oracle => oracle_suite(cfg, cache)?,
    };
    Ok(Report { suite, checks })
}

fn table_suite(d: usize, max_i: usize, cfg: &VerifyConfig, cache: &mut WeightCache) -> Result<Vec<Check>, VerifyError> {
    let rows = if d == 2 { table_2d() } else { table_3d() };
    let mut out = Vec::new();
    let mut prev: Option<BigRational> = None;
    for row in rows.iter().filter(|r| r.i <= max_i) {
        let w = cache.get(d, row.i, &cfg.run)?;
        let known = known_discrepancy(d, row.i);
        out.push(Check::new(format!("d={d} i={} count", row.i), &row.count, &w.count, w.count == row.count).known(known));
        let b = diagonal_radius_bound(&w.poly, d, Some(row.i), 12)?;
        let shown = to_decimal(&b.value, 9);
        out.push(Check::new(format!("d={d} i={} bound", row.i), &row.bound, &shown, matches_printed(&b.value, &row.bound)).known(known));
        if let Some(p) = &prev {
            out.push(Check::new(format!("d={d} i={} monotone", row.i), format!("<= {}", to_decimal(p, 9)), &shown, b.value <= *p));
        }
        prev = Some(b.value);
    }
    Ok(out)
}

fn weights_suite(cfg: &VerifyConfig, cache: &mut WeightCache) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    let printed = weights_2d();
    let table = table_2d();
    for (i, p) in &printed.polys {
        // the printed polynomials must agree with the printed counts
        let row = table.iter().find(|r| r.i == *i).expect("row per level");
        out.push(Check::new(format!("printed W_{i}(1,1) = |C_{i}|"), &row.count, p.eval_one(), p.eval_one() == row.count));
        if *i <= cfg.max_i_2d {
            let w = cache.get(2, *i, &cfg.run)?;
            let diff = describe_diff(p, &w.poly);
            out.push(Check::new(format!("W_{i} term by term"), format!("{} terms", p.len()), diff.as_deref().unwrap_or("identical"), diff.is_none()));
        }
    }
    // tail stability: closed twigs with fewer than i dead cells persist
    for i in 2..=printed.polys.len() {
        let (hi, lo) = (printed.get(i).unwrap(), printed.get(i - 1).unwrap());
        let ok = (1..i as u32 - 1).all(|b| hi.y_slice(b) == lo.y_slice(b));
        out.push(Check::new(format!("W_{i} tail equals W_{} tail", i - 1), "equal", if ok { "equal" } else { "differs" }, ok));
    }
    Ok(out)
}

/// `true` for sequences rejected by the overlap condition rather than by
/// running out of open cells.
fn rejected_by_condition<const D: usize>(set: &TwigSet<D>, seq: &[usize]) -> bool {
    let mut c = Configuration::<D>::seed();
    for &k in seq {
        if c.is_closed() {
            return false;
        }
        match c.extend(&set.twigs[k]) {
            Ok(next) => c = next,
            Err(Rejection::Overlap | Rejection::Forbidden) => return true,
        }
    }
    false
}

/// All length-`len` sequences over `set` that the overlap condition
/// rejects.
pub fn condition_rejections<const D: usize>(set: &TwigSet<D>, len: usize) -> Vec<Vec<usize>> {
    let n = set.twigs.len();
    let mut out = Vec::new();
    for code in 0..n.pow(len as u32) {
        let seq: Vec<usize> = (0..len).map(|k| code / n.pow((len - 1 - k) as u32) % n).collect();
        if rejected_by_condition(set, &seq) {
            out.push(seq);
        }
    }
    out
}

fn census_suite(cfg: &VerifyConfig, cache: &mut WeightCache) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    let w4 = cache.get(2, 4, &cfg.run)?;
    for (k, want) in [(1usize, 1u64), (2, 2), (3, 6)] {
        out.push(Check::new(format!("closed twigs with {k} dead cells"), want, w4.closed[k], w4.closed[k] == want));
    }
    let open4 = &w4.count - BigInt::from(w4.closed[1..4].iter().sum::<u64>());
    out.push(Check::new("twigs with exactly 4 dead cells", 400, &open4, open4 == BigInt::from(400)));
    out.push(Check::new("|C_4|", 409, &w4.count, w4.count == BigInt::from(409)));

    let set = canonical_twigs_2d();
    let names = |s: &Vec<usize>| s.iter().map(|&k| set.twigs[k].name.as_str()).collect::<Vec<_>>().join(" ");
    for len in 1..=3 {
        let r = condition_rejections(&set, len);
        out.push(Check::new(format!("length-{len} sequences rejected by overlap"), 0, r.len(), r.is_empty()));
    }
    let r = condition_rejections(&set, 4);
    let expected = |s: &Vec<usize>| names(s).starts_with("L3 L2 ") || names(s).starts_with("L3 L3 ");
    let shape_ok = r.iter().all(|s| expected(s) && matches!(set.twigs[s[3]].name.as_str(), "L4" | "L5"));
    out.push(Check::new("length-4 sequences rejected by overlap", 20, r.len(), r.len() == 20));
    out.push(Check::new("rejections are L3 (L2|L3) * (L4|L5)", "all", if shape_ok { "all" } else { "other" }, shape_ok));
    Ok(out)
}

fn oracle_suite(cfg: &VerifyConfig, cache: &mut WeightCache) -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    for (d, n) in [(2usize, 14usize), (3, 10)] {
        let t = count_fixed(d, n)?;
        let frozen = frozen_counts(d);
        out.push(Check::new(format!("A_{d}(1..={n}) against frozen counts"), "equal", if t.counts == frozen { "equal" } else { "differs" }, t.counts == frozen));
    }
    let a2 = count_fixed(2, 10)?;
    for n in 1..=8 {
        let k = enumerate_fixed::<2>(n).len();
        out.push(Check::new(format!("enumerate_fixed(2, {n})"), &a2.counts[n - 1], k, BigInt::from(k) == a2.counts[n - 1]));
    }
    let a3 = count_fixed(3, 5)?;
    for n in 1..=5 {
        let k = enumerate_fixed::<3>(n).len();
        out.push(Check::new(format!("enumerate_fixed(3, {n})"), &a3.counts[n - 1], k, BigInt::from(k) == a3.counts[n - 1]));
    }
    let w1 = cache.get(2, 1, &cfg.run)?.poly.clone();
    let diag = series_diagonal(&w1, 10)?;
    for n in 1..=10 {
        let (a, c) = (&a2.counts[n - 1], &diag[n]);
        out.push(Check::new(format!("A_2({n}) <= c_1({n},{n})"), c, a, a <= c));
    }
    for i in 1..=cfg.max_i_2d.min(10) {
        let w = cache.get(2, i, &cfg.run)?;
        let a = &a2.counts[i - 1];
        out.push(Check::new(format!("A_2({i}) <= |C_{i}|"), &w.count, a, a <= &w.count));
    }
    let a14 = count_fixed(2, 14)?;
    let mut ok = true;
    for n in 1..14 {
        for m in 1..=14 - n {
            ok &= &a14.counts[n - 1] * &a14.counts[m - 1] <= a14.counts[n + m - 1];
        }
    }
    out.push(Check::new("A_2(n) A_2(m) <= A_2(n+m), n+m <= 14", "holds", if ok { "holds" } else { "violated" }, ok));
    Ok(out)
}

/// `None` when equal, else a short description of the first difference.
pub fn describe_diff(want: &BiPoly, got: &BiPoly) -> Option<String> {
    let mut keys: Vec<(u32, u32)> = want.terms().map(|(a, b, _)| (a, b)).chain(got.terms().map(|(a, b, _)| (a, b))).collect();
    keys.sort_by_key(|&(a, b)| (b, a));
    keys.dedup();
    let bad: Vec<String> = keys
        .into_iter()
        .filter(|&(a, b)| want.coeff(a, b) != got.coeff(a, b))
        .map(|(a, b)| format!("x^{a}y^{b}: {} vs {}", want.coeff(a, b), got.coeff(a, b)))
        .collect();
    if bad.is_empty() {
        None
    } else {
        Some(format!("{} differing terms, first {}", bad.len(), bad[0]))
    }
}

/// Bounds from the printed weight polynomials beyond desk-scale
/// enumeration, compared with the printed tables.
pub fn printed_polynomial_bounds() -> Result<Vec<Check>, VerifyError> {
    let mut out = Vec::new();
    let t2 = table_2d();
    for (i, p) in &weights_2d().polys {
        let row = t2.iter().find(|r| r.i == *i).unwrap();
        let b = diagonal_radius_bound(p, 2, Some(*i), 12)?;
        out.push(Check::new(format!("d=2 bound from printed W_{i}"), &row.bound, to_decimal(&b.value, 9), matches_printed(&b.value, &row.bound)));
    }
    let t3 = table_3d();
    for (i, p) in &weights_3d().polys {
        let row = t3.iter().find(|r| r.i == *i).unwrap();
        out.push(Check::new(format!("d=3 printed W_{i}(1,1) = |C_{i}|"), &row.count, p.eval_one(), p.eval_one() == row.count));
        let b = diagonal_radius_bound(p, 3, Some(*i), 12)?;
        out.push(Check::new(format!("d=3 bound from printed W_{i}"), &row.bound, to_decimal(&b.value, 9), matches_printed(&b.value, &row.bound)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn printed_comparison() {
        let v = BigRational::new(4828427124746i64.into(), 1_000_000_000_000i64.into());
        assert!(matches_printed(&v, "4.828427124"));
        assert!(matches_printed(&v, "4.828427125"));
        assert!(!matches_printed(&v, "4.828427127"));
        let neg = -BigRational::one();
        assert!(matches_printed(&neg, "-1.000"));
        assert!(!matches_printed(&BigRational::zero(), "0.002"));
    }

    #[test]
    fn fixtures_parse() {
        assert_eq!(table_2d().len(), 21);
        assert_eq!(table_3d().len(), 9);
        assert_eq!(weights_2d().polys.len(), 21);
        assert_eq!(frozen_counts(2)[3], BigInt::from(19));
        assert_eq!(Suite::parse("appendixb"), Some(Suite::AppendixB));
    }
}
