//! Lattice cells, the lexicographic order used to pick roots, and the
//! signed-permutation group that places twig contexts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

/// A unit cell of `Z^D`, identified by its integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell<const D: usize>(pub [i64; D]);

pub type Cell2 = Cell<2>;
pub type Cell3 = Cell<3>;

impl<const D: usize> Cell<D> {
    pub const ORIGIN: Self = Cell([0; D]);

    pub fn unit(axis: usize, sign: i64) -> Self {
        let mut c = [0; D];
        c[axis] = sign;
        Cell(c)
    }

    /// The 2D face neighbours, `+e0, -e0, +e1, -e1, ...`.
    pub fn neighbors(self) -> impl Iterator<Item = Self> {
        (0..2 * D).map(move |k| self + Self::unit(k / 2, if k % 2 == 0 { 1 } else { -1 }))
    }

    pub fn l1(self, other: Self) -> i64 {
        (0..D).map(|k| (self.0[k] - other.0[k]).abs()).sum()
    }

    pub fn max_abs(self) -> i64 {
        self.0.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Lattice order used to choose the root of an animal: in the plane
    /// `y` is compared before `x`; from three dimensions on coordinates are
    /// compared in index order.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        if D == 2 {
            (self.0[1], self.0[0]).cmp(&(other.0[1], other.0[0]))
        } else {
            self.0.cmp(&other.0)
        }
    }
}

/// Free-function form of [`Cell::lex_cmp`].
pub fn lex_compare<const D: usize>(a: &Cell<D>, b: &Cell<D>) -> Ordering {
    a.lex_cmp(b)
}

impl<const D: usize> Add for Cell<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.0;
        for k in 0..D {
            c[k] += o.0[k];
        }
        Cell(c)
    }
}

impl<const D: usize> Sub for Cell<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const D: usize> Neg for Cell<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Cell(self.0.map(|v| -v))
    }
}

impl<const D: usize> fmt::Debug for Cell<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl<const D: usize> fmt::Display for Cell<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A signed permutation of the axes, stored as the images of the unit
/// vectors: `apply(c) = sum_k c[k] * cols[k]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Orientation<const D: usize> {
    cols: [Cell<D>; D],
}

pub type Orientation2 = Orientation<2>;
pub type Orientation3 = Orientation<3>;

impl<const D: usize> Orientation<D> {
    pub fn identity() -> Self {
        Orientation { cols: std::array::from_fn(|k| Cell::unit(k, 1)) }
    }

    /// Build from the images of `e_0..e_{D-1}`. Returns `None` unless the
    /// images are distinct signed unit vectors on distinct axes.
    pub fn from_images(cols: [Cell<D>; D]) -> Option<Self> {
        let mut seen = [false; D];
        for c in &cols {
            let nz: Vec<usize> = (0..D).filter(|&k| c.0[k] != 0).collect();
            if nz.len() != 1 || c.0[nz[0]].abs() != 1 || seen[nz[0]] {
                return None;
            }
            seen[nz[0]] = true;
        }
        Some(Orientation { cols })
    }

    pub fn image(&self, axis: usize) -> Cell<D> {
        self.cols[axis]
    }

    pub fn apply(&self, c: Cell<D>) -> Cell<D> {
        let mut out = [0i64; D];
        for k in 0..D {
            let v = c.0[k];
            if v != 0 {
                for j in 0..D {
                    out[j] += v * self.cols[k].0[j];
                }
            }
        }
        Cell(out)
    }

    /// `self.then(o)` first applies `o`, then `self`: the composite maps `c`
    /// to `self.apply(o.apply(c))`.
    pub fn compose(&self, o: &Self) -> Self {
        Orientation { cols: o.cols.map(|c| self.apply(c)) }
    }

    pub fn inverse(&self) -> Self {
        // orthogonal, so the inverse is the transpose
        let mut cols = [Cell([0; D]); D];
        for k in 0..D {
            for j in 0..D {
                cols[j].0[k] = self.cols[k].0[j];
            }
        }
        Orientation { cols }
    }

    pub fn det(&self) -> i64 {
        // sign of the permutation times the product of the signs
        let mut perm = [0usize; D];
        let mut sign = 1;
        for k in 0..D {
            let j = (0..D).find(|&j| self.cols[k].0[j] != 0).unwrap();
            perm[k] = j;
            sign *= self.cols[k].0[j];
        }
        for a in 0..D {
            for b in a + 1..D {
                if perm[a] > perm[b] {
                    sign = -sign;
                }
            }
        }
        sign
    }

    /// Every signed permutation of `D` axes (8 in the plane, 48 in space).
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..D).collect();
        permutations(&mut perm, 0, &mut |p| {
            for signs in 0..(1u32 << D) {
                let cols = std::array::from_fn(|k| {
                    Cell::unit(p[k], if signs >> k & 1 == 1 { -1 } else { 1 })
                });
                out.push(Orientation { cols });
            }
        });
        out.sort_by_key(|o| o.key());
        out
    }

    fn key(&self) -> Vec<i64> {
        self.cols.iter().flat_map(|c| c.0).collect()
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

impl<const D: usize> fmt::Debug for Orientation<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{:?}", self.cols)
    }
}

/// The whole orientation group with its Cayley table, so the enumerator can
/// compose orientations by index.
pub struct OrientationTable<const D: usize> {
    pub elems: Vec<Orientation<D>>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    identity: u8,
}

impl<const D: usize> OrientationTable<D> {
    pub fn new() -> Self {
        let elems = Orientation::<D>::all();
        let n = elems.len();
        let find = |o: &Orientation<D>| elems.iter().position(|e| e == o).unwrap() as u8;
        let mut mul = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = find(&elems[i].compose(&elems[j]));
            }
        }
        let inv = elems.iter().map(|e| find(&e.inverse())).collect();
        let identity = find(&Orientation::identity());
        OrientationTable { elems, mul, inv, identity }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, o: &Orientation<D>) -> u8 {
        self.elems.iter().position(|e| e == o).expect("not a signed permutation") as u8
    }

    pub fn get(&self, i: u8) -> &Orientation<D> {
        &self.elems[i as usize]
    }

    pub fn compose(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.elems.len() + b as usize]
    }

    pub fn inverse(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn identity(&self) -> u8 {
        self.identity
    }
}

impl<const D: usize> Default for OrientationTable<D> {
    fn default() -> Self {
        Self::new()
    }
}

pub fn table2() -> &'static OrientationTable<2> {
    static T: OnceLock<OrientationTable<2>> = OnceLock::new();
    T.get_or_init(OrientationTable::new)
}

pub fn table3() -> &'static OrientationTable<3> {
    static T: OnceLock<OrientationTable<3>> = OnceLock::new();
    T.get_or_init(OrientationTable::new)
}

/// A finite, translation-normalised set of cells (polyomino for `D = 2`,
/// polycube for `D = 3`). Cells are kept sorted in lattice order with the
/// smallest at the origin.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Animal<const D: usize> {
    cells: Vec<Cell<D>>,
}

pub type Polyomino = Animal<2>;
pub type Polycube = Animal<3>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnimalError {
    #[error("empty cell set")]
    Empty,
    #[error("cell set is not face-connected")]
    Disconnected,
    #[error("duplicate cell {0}")]
    Duplicate(String),
}

impl<const D: usize> Animal<D> {
    /// Normalise and validate. Duplicates and disconnected input are errors.
    pub fn new(cells: impl IntoIterator<Item = Cell<D>>) -> Result<Self, AnimalError> {
        let mut cells: Vec<Cell<D>> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(AnimalError::Empty);
        }
        cells.sort_by(|a, b| a.lex_cmp(b));
        for w in cells.windows(2) {
            if w[0] == w[1] {
                return Err(AnimalError::Duplicate(format!("{:?}", w[0])));
            }
        }
        let set: std::collections::HashSet<Cell<D>> = cells.iter().copied().collect();
        let mut seen = std::collections::HashSet::from([cells[0]]);
        let mut stack = vec![cells[0]];
        while let Some(c) = stack.pop() {
            for n in c.neighbors() {
                if set.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        if seen.len() != cells.len() {
            return Err(AnimalError::Disconnected);
        }
        let o = cells[0];
        for c in cells.iter_mut() {
            *c = *c - o;
        }
        Ok(Animal { cells })
    }

    /// Trusted constructor for cell lists that are already connected.
    pub(crate) fn from_connected(cells: impl IntoIterator<Item = Cell<D>>) -> Self {
        Self::new(cells).expect("connected by construction")
    }

    pub fn cells(&self) -> &[Cell<D>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: &Cell<D>) -> bool {
        self.cells.binary_search_by(|x| x.lex_cmp(c)).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&Cell([0, 0]), &Cell([0, 0])), Ordering::Equal);
        assert_eq!(lex_compare(&Cell([5, 0]), &Cell([0, 1])), Ordering::Less);
        assert_eq!(lex_compare(&Cell([-1, 7, 7]), &Cell([0, 0, 0])), Ordering::Less);
    }

    #[test]
    fn orientation_examples() {
        let id = Orientation::<2>::identity();
        assert_eq!(id.apply(Cell([3, -2])), Cell([3, -2]));
        let quarter = Orientation::from_images([Cell([0, 1]), Cell([-1, 0])]).unwrap();
        assert_eq!(quarter.apply(Cell([1, 0])), Cell([0, 1]));
        let refl = Orientation::from_images([Cell([1, 0]), Cell([0, -1])]).unwrap();
        assert_eq!(refl.apply(Cell([1, 2])), Cell([1, -2]));
        assert!(Orientation::<2>::from_images([Cell([1, 0]), Cell([1, 0])]).is_none());
    }

    #[test]
    fn group_sizes_and_table() {
        assert_eq!(table2().len(), 8);
        let t = table3();
        assert_eq!(t.len(), 48);
        for a in 0..48u8 {
            assert_eq!(t.compose(a, t.inverse(a)), t.identity());
            for b in 0..48u8 {
                let c = Cell([1, -2, 3]);
                let ab = t.get(t.compose(a, b)).apply(c);
                assert_eq!(ab, t.get(a).apply(t.get(b).apply(c)));
            }
        }
        let dets: i64 = t.elems.iter().map(|o| o.det()).sum();
        assert_eq!(dets, 0);
    }

    #[test]
    fn animal_normalises() {
        let p = Animal::new([Cell([3, 4]), Cell([2, 4])]).unwrap();
        assert_eq!(p.cells(), &[Cell([0, 0]), Cell([1, 0])]);
        assert_eq!(Animal::new([Cell([0, 0]), Cell([2, 0])]), Err(AnimalError::Disconnected));
        assert_eq!(Animal::<2>::new([]), Err(AnimalError::Empty));
    }
}
