//! The 17 spatial twigs and the `+L` context.
//!
//! A frame is `(β, σ, τ)`. The context of `u` is the planar L in the
//! `β,σ` plane plus the two cells `u+β±τ`:
//! `{u+σ, u+σ+β, u+β, u−σ+β, u+β+τ, u+β−τ}`.
//! The undecided neighbours are `b = u−σ`, `t+ = u+τ`, `t− = u−τ`,
//! `a = u−β`; `c = u−β−σ` only matters when `a` is the single white, which
//! splits that pattern into two twigs (16 + 1 = 17).
//!
//! Whites are queued in the order `t+, b, t−, a, c`. Frames, in the local
//! basis of the parent:
//!
//! * `b`, `c`: `(σ, β, τ)`
//! * `t+`: `(−τ, β, σ)`; `t−`: `(τ, β, −σ)`
//! * `a`: `(β, −σ, τ)` when `c` is decided (either `b` is white and queued
//!   first, or the pattern is the split one); otherwise it leans on the first
//!   queued τ-white: `(β, τ, σ)` after `t+`, `(β, −τ, σ)` after `t−`.
//!
//! The seed frame is `β = (−1,0,0), σ = (0,−1,0), τ = (0,0,1)`; its context
//! lies in `x₁ < 0` or `x₁ = 0, x₂ < 0`, outside any polycube rooted there.

use crate::geom::{Cell, Cell3, Orientation3};
use crate::twig::{orientation_between, Twig, TwigSet, White};

const BETA: Cell3 = Cell([-1, 0, 0]);
const SIGMA: Cell3 = Cell([0, -1, 0]);
const TAU: Cell3 = Cell([0, 0, 1]);

/// `p β + q σ + r τ` in the canonical frame.
fn local(p: i64, q: i64, r: i64) -> Cell3 {
    Cell(std::array::from_fn(|k| p * BETA.0[k] + q * SIGMA.0[k] + r * TAU.0[k]))
}

type L = (i64, i64, i64);

fn frame(b: L, s: L, t: L) -> Orientation3 {
    orientation_between(
        &[BETA, SIGMA, TAU],
        &[local(b.0, b.1, b.2), local(s.0, s.1, s.2), local(t.0, t.1, t.2)],
    )
}

const B: L = (1, 0, 0);
const S: L = (0, 1, 0);
const T: L = (0, 0, 1);
const fn n(v: L) -> L {
    (-v.0, -v.1, -v.2)
}

pub fn plus_l_context_canonical() -> Vec<Cell3> {
    vec![local(0, 1, 0), local(1, 1, 0), local(1, 0, 0), local(1, -1, 0), local(1, 0, 1), local(1, 0, -1)]
}

/// Context cells of `u` placed with orientation `o`.
pub fn plus_l_context(u: Cell3, o: &Orientation3) -> Vec<Cell3> {
    plus_l_context_canonical().into_iter().map(|c| u + o.apply(c)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum N {
    Tp,
    B,
    Tm,
    A,
    C,
}

impl N {
    fn cell(self) -> Cell3 {
        match self {
            N::B => local(0, -1, 0),
            N::Tp => local(0, 0, 1),
            N::Tm => local(0, 0, -1),
            N::A => local(-1, 0, 0),
            N::C => local(-1, -1, 0),
        }
    }
}

/// The 17 twigs T1..T17, ordered by occupancy pattern of `(b, a, t+, t−)`
/// with the split pattern contributing two consecutive twigs.
pub fn canonical_twigs_3d() -> TwigSet<3> {
    let mut twigs = Vec::with_capacity(17);
    for m in 0..16u32 {
        let (has_b, has_a, has_tp, has_tm) = (m & 1 != 0, m & 2 != 0, m & 4 != 0, m & 8 != 0);
        let split = has_a && !has_b && !has_tp && !has_tm;
        let c_cases: &[Option<bool>] = if split { &[Some(false), Some(true)] } else { &[None] };
        for &c_white in c_cases {
            // queue order t+, b, t−, a, c
            let mut ws = Vec::new();
            if has_tp {
                ws.push(N::Tp);
            }
            if has_b {
                ws.push(N::B);
            }
            if has_tm {
                ws.push(N::Tm);
            }
            if has_a {
                ws.push(N::A);
            }
            if c_white == Some(true) {
                ws.push(N::C);
            }
            let first_tau = ws.iter().copied().find(|&w| w == N::Tp || w == N::Tm);
            let whites = ws
                .iter()
                .map(|&w| {
                    let orientation = match w {
                        N::B | N::C => frame(S, B, T),
                        N::Tp => frame(n(T), B, S),
                        N::Tm => frame(T, B, n(S)),
                        N::A if has_b || split => frame(B, n(S), T),
                        N::A => match first_tau {
                            Some(N::Tp) => frame(B, T, S),
                            _ => frame(B, n(T), S),
                        },
                    };
                    White { cell: w.cell(), orientation }
                })
                .collect();
            let mut forbidden = Vec::new();
            for (present, w) in [(has_b, N::B), (has_tp, N::Tp), (has_tm, N::Tm), (has_a, N::A)] {
                if !present {
                    forbidden.push(w.cell());
                }
            }
            if c_white == Some(false) {
                forbidden.push(N::C.cell());
            }
            twigs.push(Twig { name: format!("T{}", twigs.len() + 1), whites, forbidden });
        }
    }
    TwigSet { twigs, context: plus_l_context_canonical() }
}
