//! Growing every twig with `i` dead cells (or fewer and no open cells) from a
//! single open seed cell, and summing their weights.
//!
//! The tree is walked depth-first over a flat occupancy grid with an undo
//! log; no configuration is ever materialised. Parallel runs expand the tree
//! to a fixed depth first and hand the subtrees to scoped worker threads.
//! Each worker owns its accumulator and the merge is integer addition, so the
//! result does not depend on the number of workers or on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::geom::{Cell, OrientationTable};
use crate::polyalg::BiPoly;
use crate::twig::{Configuration, TwigSet};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const HEARTBEAT: u64 = 10_000_000;
pub const BUDGET_ENV: &str = "GROWTHBOUND_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("node budget of {0} extensions exhausted")]
    Budget(u64),
    #[error("level must be at least 1")]
    BadLevel,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub workers: usize,
    /// Maximum number of twig placements tried.
    pub budget: u64,
    /// Depth at which the tree is cut into parallel tasks.
    pub split_depth: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: 1, budget: budget_from_env(), split_depth: 5 }
    }
}

impl RunOptions {
    pub fn with_workers(workers: usize) -> Self {
        RunOptions { workers: workers.max(1), ..Default::default() }
    }
}

/// `GROWTHBOUND_BUDGET` if set and parseable, otherwise 10^9.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().replace('_', "").parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Outcome of a level-`i` run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSum {
    pub d: usize,
    pub i: usize,
    /// `W_i(x, y)`
    pub poly: BiPoly,
    /// `|C_i|`
    pub count: BigInt,
    /// `closed[k]`: completed twigs with `k` dead cells and no open cell.
    pub closed: Vec<u64>,
    /// Twig placements tried.
    pub nodes: u64,
}

const OPEN: u8 = 1;
const DEAD: u8 = 2;
const FORB: u8 = 4;

struct Placed {
    whites: Vec<(isize, u8)>,
    forbidden: Vec<isize>,
}

/// Precomputed placements of every twig under every orientation, as offsets
/// into a flat grid wide enough for level `i`.
struct Engine {
    i: usize,
    ntw: usize,
    norient: usize,
    placed: Vec<Placed>,
    cells: usize,
    seed: usize,
    seed_orient: u8,
    amax: usize,
}

impl Engine {
    fn new<const D: usize>(set: &TwigSet<D>, i: usize) -> Self {
        let table = OrientationTable::<D>::new();
        // every twig cell is within distance 2 of its root, so after i
        // placements nothing is further than 2i + 2 from the seed
        let r = 2 * i as i64 + 3;
        let w = 2 * r + 1;
        let offset = |c: Cell<D>| -> isize {
            let mut o = 0isize;
            let mut m = 1isize;
            for k in 0..D {
                o += c.0[k] as isize * m;
                m *= w as isize;
            }
            o
        };
        let mut placed = Vec::with_capacity(set.len() * table.len());
        for t in &set.twigs {
            for oi in 0..table.len() as u8 {
                let o = table.get(oi);
                placed.push(Placed {
                    whites: t
                        .whites
                        .iter()
                        .map(|wh| (offset(o.apply(wh.cell)), table.compose(oi, table.index_of(&wh.orientation))))
                        .collect(),
                    forbidden: t.forbidden.iter().map(|&f| offset(o.apply(f))).collect(),
                });
            }
        }
        let max_whites = set.twigs.iter().map(|t| t.whites.len()).max().unwrap_or(0);
        Engine {
            i,
            ntw: set.len(),
            norient: table.len(),
            placed,
            cells: (w as usize).pow(D as u32),
            seed: offset(Cell([r; D])) as usize,
            seed_orient: table.identity(),
            amax: i * max_whites.max(1) + 1,
        }
    }
}

struct Shared<'a> {
    budget: u64,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

struct Walker<'e> {
    e: &'e Engine,
    g: Vec<u8>,
    q: Vec<(usize, u8)>,
    head: usize,
    dead: usize,
    undo: Vec<(usize, u8)>,
    acc: Vec<u64>,
    closed: Vec<u64>,
    local_nodes: u64,
    total_nodes: u64,
}

const FLUSH: u64 = 1 << 16;

impl<'e> Walker<'e> {
    fn new(e: &'e Engine) -> Self {
        let mut g = vec![0u8; e.cells];
        g[e.seed] = OPEN;
        Walker {
            e,
            g,
            q: vec![(e.seed, e.seed_orient)],
            head: 0,
            dead: 0,
            undo: Vec::with_capacity(64 * e.i),
            acc: vec![0; (e.i + 1) * (e.amax + 1)],
            closed: vec![0; e.i + 1],
            local_nodes: 0,
            total_nodes: 0,
        }
    }

    fn record(&mut self) -> bool {
        let open = self.q.len() - self.head;
        if open == 0 || self.dead == self.e.i {
            let a = self.dead + open - 1;
            self.acc[self.dead * (self.e.amax + 1) + a] += 1;
            if open == 0 {
                self.closed[self.dead] += 1;
            }
            return true;
        }
        false
    }

    /// Try to place twig `t` on the oldest open cell. On success the cell is
    /// dead, the state is pushed, and `true` is returned.
    fn place(&mut self, t: usize) -> bool {
        let (u, o) = self.q[self.head];
        let p = &self.e.placed[t * self.e.norient + o as usize];
        // condition (★), first clause: whites avoid dead, open, forbidden
        for &(d, _) in &p.whites {
            if self.g[(u as isize + d) as usize] != 0 {
                return false;
            }
        }
        for &(d, co) in &p.whites {
            let c = (u as isize + d) as usize;
            self.undo.push((c, 0));
            self.g[c] = OPEN;
            self.q.push((c, co));
        }
        for &d in &p.forbidden {
            let c = (u as isize + d) as usize;
            self.undo.push((c, self.g[c]));
            self.g[c] |= FORB;
        }
        self.undo.push((u, self.g[u]));
        self.g[u] = DEAD;
        self.head += 1;
        self.dead += 1;
        true
    }

    fn unplace(&mut self, mark: usize, qlen: usize) {
        self.head -= 1;
        self.dead -= 1;
        while self.undo.len() > mark {
            let (c, s) = self.undo.pop().unwrap();
            self.g[c] = s;
        }
        self.q.truncate(qlen);
    }

    fn tick(&mut self, sh: &Shared) -> Result<(), EnumError> {
        self.local_nodes += 1;
        if self.local_nodes >= FLUSH {
            let before = sh.nodes.fetch_add(self.local_nodes, Ordering::Relaxed);
            let after = before + self.local_nodes;
            self.total_nodes += self.local_nodes;
            self.local_nodes = 0;
            if before / HEARTBEAT != after / HEARTBEAT {
                log::info!("level {}: {} placements", self.e.i, after);
            }
            if after > sh.budget {
                sh.abort.store(true, Ordering::Relaxed);
            }
            if sh.abort.load(Ordering::Relaxed) {
                return Err(EnumError::Budget(sh.budget));
            }
        }
        Ok(())
    }

    fn go(&mut self, sh: &Shared) -> Result<(), EnumError> {
        if self.record() {
            return Ok(());
        }
        for t in 0..self.e.ntw {
            self.tick(sh)?;
            let (mark, qlen) = (self.undo.len(), self.q.len());
            if self.place(t) {
                let r = self.go(sh);
                self.unplace(mark, qlen);
                r?;
            }
        }
        Ok(())
    }

    /// Like `go`, but stops at depth `k` and hands back the twig paths of
    /// the still-open configurations there.
    fn collect(&mut self, k: usize, path: &mut Vec<u8>, out: &mut Vec<u8>, sh: &Shared) -> Result<(), EnumError> {
        if self.record() {
            return Ok(());
        }
        if self.dead == k {
            out.extend_from_slice(path);
            return Ok(());
        }
        for t in 0..self.e.ntw {
            self.tick(sh)?;
            let (mark, qlen) = (self.undo.len(), self.q.len());
            if self.place(t) {
                path.push(t as u8);
                let r = self.collect(k, path, out, sh);
                path.pop();
                self.unplace(mark, qlen);
                r?;
            }
        }
        Ok(())
    }

    fn flush(&mut self, sh: &Shared) {
        sh.nodes.fetch_add(self.local_nodes, Ordering::Relaxed);
        self.total_nodes += self.local_nodes;
        self.local_nodes = 0;
    }

    fn merge(&mut self, o: &Walker) {
        for (a, b) in self.acc.iter_mut().zip(&o.acc) {
            *a += b;
        }
        for (a, b) in self.closed.iter_mut().zip(&o.closed) {
            *a += b;
        }
    }
}

/// `W_i` and `|C_i|` for the given twig set.
pub fn build_weight_sum<const D: usize>(set: &TwigSet<D>, i: usize, opts: &RunOptions) -> Result<WeightSum, EnumError> {
    if i < 1 {
        return Err(EnumError::BadLevel);
    }
    let e = Engine::new(set, i);
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let sh = Shared { budget: opts.budget, nodes: &nodes, abort: &abort };
    let workers = opts.workers.max(1);
    let k = opts.split_depth.min(i - 1);
    let mut master = Walker::new(&e);
    if workers == 1 || k == 0 {
        master.go(&sh)?;
        master.flush(&sh);
    } else {
        let mut tasks = Vec::new();
        master.collect(k, &mut Vec::with_capacity(k), &mut tasks, &sh)?;
        master.flush(&sh);
        let ntasks = tasks.len() / k;
        let next = AtomicUsize::new(0);
        let results: Mutex<Vec<Walker>> = Mutex::new(Vec::new());
        let failure: Mutex<Option<EnumError>> = Mutex::new(None);
        std::thread::scope(|scope| {
            for _ in 0..workers.min(ntasks.max(1)) {
                scope.spawn(|| {
                    let mut w = Walker::new(&e);
                    loop {
                        let n = next.fetch_add(1, Ordering::Relaxed);
                        if n >= ntasks {
                            break;
                        }
                        let mut marks = Vec::with_capacity(k);
                        for &t in &tasks[n * k..(n + 1) * k] {
                            marks.push((w.undo.len(), w.q.len()));
                            let ok = w.place(t as usize);
                            debug_assert!(ok);
                        }
                        let r = w.go(&sh);
                        while let Some((m, ql)) = marks.pop() {
                            w.unplace(m, ql);
                        }
                        if let Err(err) = r {
                            *failure.lock().unwrap() = Some(err);
                            break;
                        }
                    }
                    w.flush(&sh);
                    results.lock().unwrap().push(w);
                });
            }
        });
        if let Some(err) = failure.into_inner().unwrap() {
            return Err(err);
        }
        for w in results.into_inner().unwrap() {
            master.merge(&w);
        }
    }
    let total = nodes.load(Ordering::Relaxed);
    if total > opts.budget {
        return Err(EnumError::Budget(opts.budget));
    }
    let mut poly = BiPoly::zero();
    let mut count = BigInt::from(0);
    for b in 0..=i {
        for a in 0..=e.amax {
            let c = master.acc[b * (e.amax + 1) + a];
            if c > 0 {
                poly.add_term(a as u32, b as u32, c.into());
                count += c;
            }
        }
    }
    Ok(WeightSum { d: D, i, poly, count, closed: master.closed, nodes: total })
}

/// Closed twigs (no open cell left) bucketed by dead-cell count, `1..=upto`.
pub fn closed_twig_census<const D: usize>(set: &TwigSet<D>, upto: usize) -> Result<Vec<(usize, u64)>, EnumError> {
    let r = build_weight_sum(set, upto, &RunOptions::default())?;
    Ok((1..=upto).map(|k| (k, r.closed[k])).collect())
}

/// Slow reference walk over explicit [`Configuration`]s; used to
/// cross-check the grid engine at small levels.
pub fn build_weight_sum_reference<const D: usize>(set: &TwigSet<D>, i: usize) -> BiPoly {
    fn rec<const D: usize>(set: &TwigSet<D>, c: &Configuration<D>, i: usize, acc: &mut BiPoly) {
        if c.is_closed() || c.dead.len() == i {
            let w = c.weight();
            acc.add_term(w.a, w.b, 1.into());
            return;
        }
        for t in &set.twigs {
            if let Ok(n) = c.extend(t) {
                rec(set, &n, i, acc);
            }
        }
    }
    let mut acc = BiPoly::zero();
    rec(set, &Configuration::seed(), i, &mut acc);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twigs2d::canonical_twigs_2d;
    use crate::twigs3d::canonical_twigs_3d;

    #[test]
    fn level_one_is_the_twig_set() {
        let r = build_weight_sum(&canonical_twigs_2d(), 1, &RunOptions::default()).unwrap();
        assert_eq!(r.poly.to_string(), "2*x^2*y + 2*x*y + y");
        assert_eq!(r.count, 5.into());
        let r3 = build_weight_sum(&canonical_twigs_3d(), 1, &RunOptions::default()).unwrap();
        assert_eq!(r3.count, 17.into());
    }

    #[test]
    fn engine_matches_reference() {
        let t = canonical_twigs_2d();
        for i in 1..=5 {
            let fast = build_weight_sum(&t, i, &RunOptions::default()).unwrap();
            assert_eq!(fast.poly, build_weight_sum_reference(&t, i), "level {i}");
        }
        let t3 = canonical_twigs_3d();
        for i in 1..=3 {
            let fast = build_weight_sum(&t3, i, &RunOptions::default()).unwrap();
            assert_eq!(fast.poly, build_weight_sum_reference(&t3, i), "3d level {i}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let opts = RunOptions { budget: 1000, ..RunOptions::default() };
        assert_eq!(build_weight_sum(&canonical_twigs_2d(), 8, &opts), Err(EnumError::Budget(1000)));
        assert_eq!(build_weight_sum(&canonical_twigs_2d(), 0, &opts), Err(EnumError::BadLevel));
    }

    #[test]
    fn census() {
        let c = closed_twig_census(&canonical_twigs_2d(), 3).unwrap();
        assert_eq!(c, vec![(1, 1), (2, 2), (3, 6)]);
    }
}
