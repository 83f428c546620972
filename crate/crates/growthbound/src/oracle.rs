//! Brute-force ground truth for fixed polyominoes and polycubes.
//!
//! Two unrelated methods so each can check the other: Redelmeier's
//! untried-set recursion for counts, and level-by-level growth with
//! deduplication for the explicit lists.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::geom::{Animal, Cell};

/// `A_d(1..=n_max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub d: usize,
    /// `counts[n - 1] = A_d(n)`
    pub counts: Vec<BigInt>,
}

impl CountTable {
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.counts.get(n.checked_sub(1)?)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,count\n");
        for (k, c) in self.counts.iter().enumerate() {
            s += &format!("{},{}\n", k + 1, c);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("dimension must be 2 or 3")]
    Dimension,
    #[error("budget of {0} animals exceeded")]
    Budget(u64),
}

struct Redelmeier<const D: usize> {
    w: i64,
    n_max: usize,
    /// 0 = free, 1 = reached (in untried set or animal), 2 = blocked
    grid: Vec<u8>,
    counts: Vec<u64>,
    nbr: Vec<isize>,
}

impl<const D: usize> Redelmeier<D> {
    fn new(n_max: usize) -> Self {
        let w = 2 * n_max as i64 + 3;
        let cells = (w as usize).pow(D as u32);
        let mut r = Redelmeier { w, n_max, grid: vec![0; cells], counts: vec![0; n_max + 1], nbr: Vec::new() };
        for k in 0..D {
            let step = (w as isize).pow(k as u32);
            r.nbr.push(step);
            r.nbr.push(-step);
        }
        // cells lattice-smaller than the origin can never be used
        let origin = r.index(Cell([0; D]));
        for idx in 0..cells {
            let c = r.cell(idx);
            let border = c.0.iter().any(|&v| v.abs() > n_max as i64);
            if border || c.lex_cmp(&Cell([0; D])).is_lt() {
                r.grid[idx] = 2;
            }
        }
        r.grid[origin] = 0;
        r
    }

    fn index(&self, c: Cell<D>) -> usize {
        let mut o = 0i64;
        let mut m = 1i64;
        for k in 0..D {
            o += (c.0[k] + self.n_max as i64 + 1) * m;
            m *= self.w;
        }
        o as usize
    }

    fn cell(&self, mut idx: usize) -> Cell<D> {
        let mut c = [0i64; D];
        for v in c.iter_mut() {
            *v = (idx % self.w as usize) as i64 - self.n_max as i64 - 1;
            idx /= self.w as usize;
        }
        Cell(c)
    }

    fn run(&mut self) {
        let origin = self.index(Cell([0; D]));
        self.grid[origin] = 1;
        let mut untried = vec![origin];
        self.rec(&mut untried, 0);
    }

    fn rec(&mut self, untried: &mut Vec<usize>, size: usize) {
        while let Some(c) = untried.pop() {
            let size = size + 1;
            self.counts[size] += 1;
            if size < self.n_max {
                let mark = untried.len();
                let mut added = Vec::new();
                for k in 0..self.nbr.len() {
                    let n = (c as isize + self.nbr[k]) as usize;
                    if self.grid[n] == 0 {
                        self.grid[n] = 1;
                        untried.push(n);
                        added.push(n);
                    }
                }
                let mut rest = untried.clone();
                self.rec(&mut rest, size);
                untried.truncate(mark);
                for n in added {
                    self.grid[n] = 0;
                }
            }
            // c stays reached: later branches must not use it again
        }
    }
}

/// Redelmeier count of fixed animals of every size up to `n_max`.
pub fn count_fixed(d: usize, n_max: usize) -> Result<CountTable, OracleError> {
    let counts = match d {
        2 => {
            let mut r = Redelmeier::<2>::new(n_max);
            r.run();
            r.counts
        }
        3 => {
            let mut r = Redelmeier::<3>::new(n_max);
            r.run();
            r.counts
        }
        _ => return Err(OracleError::Dimension),
    };
    Ok(CountTable { d, counts: counts[1..].iter().map(|&c| BigInt::from(c)).collect() })
}

/// Every fixed animal with `n` cells, normalised, sorted, each exactly once.
/// Grows all size-(k+1) animals from the size-k list and deduplicates.
pub fn enumerate_fixed<const D: usize>(n: usize) -> Vec<Animal<D>> {
    if n == 0 {
        return vec![];
    }
    let mut level: HashSet<Animal<D>> = HashSet::from([Animal::new([Cell([0; D])]).unwrap()]);
    for _ in 1..n {
        let mut next = HashSet::new();
        for a in &level {
            let cells: HashSet<Cell<D>> = a.cells().iter().copied().collect();
            for c in a.cells() {
                for m in c.neighbors() {
                    if !cells.contains(&m) {
                        let grown = Animal::from_connected(a.cells().iter().copied().chain([m]));
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    let mut v: Vec<Animal<D>> = level.into_iter().collect();
    v.sort_by(|a, b| {
        for (x, y) in a.cells().iter().zip(b.cells()) {
            let o = x.lex_cmp(y);
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    });
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let t = count_fixed(2, 6).unwrap();
        let v: Vec<u64> = t.counts.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(&v[..3], &[1, 2, 6]);
        assert_eq!(count_fixed(3, 2).unwrap().counts[1], 3.into());
        assert!(count_fixed(4, 2).is_err());
    }

    #[test]
    fn enumerate_matches_count() {
        let t = count_fixed(2, 6).unwrap();
        for n in 1..=6 {
            assert_eq!(BigInt::from(enumerate_fixed::<2>(n).len()), t.counts[n - 1]);
        }
        let t3 = count_fixed(3, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(BigInt::from(enumerate_fixed::<3>(n).len()), t3.counts[n - 1]);
        }
    }
}
