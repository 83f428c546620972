//! The planar twig set L1..L5 and the Eden bit-string code.
//!
//! Frame convention. A cell's context frame is a pair `(β, σ)` of unit
//! vectors ("back" and "side"); its L-context is
//! `{u+σ, u+σ+β, u+β, u−σ+β}`. The three cells whose status a twig decides
//! are `a = u−β`, `b = u−σ` and `c = u−β−σ`. The seed frame is
//! `β = (0,−1), σ = (−1,0)`, so the seed's context lies strictly below or
//! to the left of it, i.e. outside any polyomino rooted there.
//!
//! White `a` inherits `(β, −σ)`; whites `b` and `c` get `(σ, β)`. With these
//! every context cell of a white is decided by the time the white is
//! dequeued, and the |Cᵢ| table comes out right (checked up to i = 12).

use std::collections::{HashSet, VecDeque};

use crate::geom::{Animal, Cell, Cell2, Orientation2};
use crate::twig::{orientation_between, CodecError, Twig, TwigSet, White};

const BETA: Cell2 = Cell([0, -1]);
const SIGMA: Cell2 = Cell([-1, 0]);

fn local(p: i64, q: i64) -> Cell2 {
    Cell([p * BETA.0[0] + q * SIGMA.0[0], p * BETA.0[1] + q * SIGMA.0[1]])
}

/// Orientation whose frame is `(β', σ')` given in the canonical local basis.
fn frame(b: (i64, i64), s: (i64, i64)) -> Orientation2 {
    orientation_between(&[BETA, SIGMA], &[local(b.0, b.1), local(s.0, s.1)])
}

pub fn l_context() -> Vec<Cell2> {
    vec![local(0, 1), local(1, 1), local(1, 0), local(1, -1)]
}

/// L1..L5 in canonical frame.
pub fn canonical_twigs_2d() -> TwigSet<2> {
    let a = local(-1, 0);
    let b = local(0, -1);
    let c = local(-1, -1);
    // a keeps β and flips σ; b and c swap the roles of β and σ
    let fa = frame((1, 0), (0, -1));
    let fb = frame((0, 1), (1, 0));
    let w = |cell, orientation| White { cell, orientation };
    let twig = |name: &str, whites: Vec<White<2>>, forbidden: Vec<Cell2>| Twig {
        name: name.to_string(),
        whites,
        forbidden,
    };
    TwigSet {
        twigs: vec![
            twig("L1", vec![], vec![a, b]),
            twig("L2", vec![w(a, fa)], vec![b, c]),
            twig("L3", vec![w(a, fa), w(c, fb)], vec![b]),
            twig("L4", vec![w(b, fb)], vec![a]),
            twig("L5", vec![w(b, fb), w(a, fa)], vec![]),
        ],
        context: l_context(),
    }
}

/// Eden code: breadth-first from the smallest cell; every dequeued cell
/// writes one bit per neighbour other than the one it was reached from
/// (for the root: other than the one below it), `1` iff that neighbour is
/// in the polyomino and not yet discovered. The trailing bit, always `0`, is
/// dropped, leaving `3n − 1` bits with `n − 1` ones.
pub fn encode_eden(p: &Animal<2>) -> String {
    const DIRS: [[i64; 2]; 4] = [[1, 0], [0, 1], [-1, 0], [0, -1]];
    let member: HashSet<Cell2> = p.cells().iter().copied().collect();
    let mut seen = HashSet::from([Cell2::ORIGIN]);
    let mut q = VecDeque::from([(Cell2::ORIGIN, 3usize)]);
    let mut bits = String::with_capacity(3 * p.len());
    while let Some((u, back)) = q.pop_front() {
        for (k, d) in DIRS.iter().enumerate() {
            if k == back {
                continue;
            }
            let v = u + Cell(*d);
            if member.contains(&v) && seen.insert(v) {
                bits.push('1');
                q.push_back((v, (k + 2) % 4));
            } else {
                bits.push('0');
            }
        }
    }
    let last = bits.pop();
    debug_assert_eq!(last, Some('0'));
    bits
}

/// Inverse of [`encode_eden`].
pub fn decode_eden(bits: &str) -> Result<Animal<2>, CodecError> {
    const DIRS: [[i64; 2]; 4] = [[1, 0], [0, 1], [-1, 0], [0, -1]];
    let mut it = bits.chars().chain(std::iter::once('0'));
    let mut cells = vec![Cell2::ORIGIN];
    let mut seen = HashSet::from([Cell2::ORIGIN]);
    let mut q = VecDeque::from([(Cell2::ORIGIN, 3usize)]);
    let mut step = 0;
    while let Some((u, back)) = q.pop_front() {
        for (k, d) in DIRS.iter().enumerate() {
            if k == back {
                continue;
            }
            match it.next() {
                Some('1') => {
                    let v = u + Cell(*d);
                    if !seen.insert(v) {
                        return Err(CodecError::Overlap { step });
                    }
                    cells.push(v);
                    q.push_back((v, (k + 2) % 4));
                }
                Some('0') => {}
                _ => return Err(CodecError::Premature { step }),
            }
            step += 1;
        }
    }
    if it.next().is_some() {
        return Err(CodecError::Late { open: 0 });
    }
    Ok(Animal::new(cells)?)
}
