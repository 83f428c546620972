//! Dimension-generic twig machinery: the twig type, the explicit (hash-set)
//! configuration with its `*` extension, and encode/decode of animals.
//!
//! Everything is written in the *canonical frame*: the frame of the seed
//! cell, whose context cells are all lattice-smaller than it. A twig placed
//! over a cell with orientation `o` has its offsets mapped through `o`, and
//! each white cell's own orientation is `o ∘ w.orientation`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::geom::{Animal, AnimalError, Cell, Orientation};

/// Monomial `x^a y^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} y^{}", self.a, self.b)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct White<const D: usize> {
    pub cell: Cell<D>,
    pub orientation: Orientation<D>,
}

/// One black root at the origin, white cells in queue order, forbidden cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Twig<const D: usize> {
    pub name: String,
    pub whites: Vec<White<D>>,
    pub forbidden: Vec<Cell<D>>,
}

impl<const D: usize> Twig<D> {
    /// Twig weight; canonical twigs have a single black cell.
    pub fn weight(&self) -> Monomial {
        Monomial { a: self.whites.len() as u32, b: 1 }
    }
}

/// A twig set together with the canonical context it was built for.
#[derive(Clone, Debug)]
pub struct TwigSet<const D: usize> {
    pub twigs: Vec<Twig<D>>,
    /// Context cells of the origin in the canonical frame.
    pub context: Vec<Cell<D>>,
}

impl<const D: usize> TwigSet<D> {
    pub fn len(&self) -> usize {
        self.twigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twigs.is_empty()
    }

    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.twigs.iter().position(|t| t.name == name)
    }

    /// Context cells of `u` placed with orientation `o`.
    pub fn context_of(&self, u: Cell<D>, o: &Orientation<D>) -> Vec<Cell<D>> {
        self.context.iter().map(|&c| u + o.apply(c)).collect()
    }

    /// Σ w(t) as a list of `(a, b, coefficient)`.
    pub fn weight_sum(&self) -> Vec<(Monomial, u64)> {
        let mut m = std::collections::BTreeMap::new();
        for t in &self.twigs {
            *m.entry(t.weight()).or_insert(0u64) += 1;
        }
        m.into_iter().collect()
    }

    pub fn names(&self, seq: &TwigSequence) -> Vec<String> {
        seq.0.iter().map(|&k| self.twigs[k].name.clone()).collect()
    }

    pub fn parse_sequence(&self, names: &[&str]) -> Option<TwigSequence> {
        names.iter().map(|n| self.by_name(n)).collect::<Option<Vec<_>>>().map(TwigSequence)
    }
}

/// Twig identifiers (indices into a [`TwigSet`]).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TwigSequence(pub Vec<usize>);

impl TwigSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `W(S) = x * prod w(l)`; the empty sequence weighs `x`.
pub fn sequence_weight<const D: usize>(set: &TwigSet<D>, s: &TwigSequence) -> Monomial {
    s.0.iter().fold(Monomial { a: 1, b: 0 }, |m, &k| {
        let w = set.twigs[k].weight();
        Monomial { a: m.a + w.a, b: m.b + w.b }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// A white cell lands on a dead or open cell.
    Overlap,
    /// A white cell lands on a forbidden cell.
    Forbidden,
}

/// Partially built animal.
#[derive(Clone, Debug)]
pub struct Configuration<const D: usize> {
    pub dead: Vec<Cell<D>>,
    dead_set: HashSet<Cell<D>>,
    pub forbidden: HashSet<Cell<D>>,
    pub queue: VecDeque<(Cell<D>, Orientation<D>)>,
}

impl<const D: usize> Configuration<D> {
    /// A single open cell at the origin in the canonical frame.
    pub fn seed() -> Self {
        Configuration {
            dead: Vec::new(),
            dead_set: HashSet::new(),
            forbidden: HashSet::new(),
            queue: VecDeque::from([(Cell::ORIGIN, Orientation::identity())]),
        }
    }

    /// `(a, b)` with `a = cells - 1`, `b = dead cells`. The seed itself,
    /// having no dead cell yet, has `a = 0, b = 0`.
    pub fn weight(&self) -> Monomial {
        Monomial { a: (self.dead.len() + self.queue.len()) as u32 - 1, b: self.dead.len() as u32 }
    }

    /// Weight of the twig sequence that built this configuration
    /// (`x` times the product of twig weights).
    pub fn sequence_weight(&self) -> Monomial {
        let w = self.weight();
        Monomial { a: w.a + 1, b: w.b }
    }

    pub fn is_closed(&self) -> bool {
        self.queue.is_empty()
    }

    fn is_open(&self, c: &Cell<D>) -> bool {
        self.queue.iter().any(|(q, _)| q == c)
    }

    /// Condition (★), first clause only: placed white cells must avoid every
    /// dead, open and forbidden cell. Placed forbidden cells are *not*
    /// checked against the configuration — doing so loses animals.
    pub fn condition_star(&self, placed_whites: &[Cell<D>], _placed_forbidden: &[Cell<D>]) -> bool {
        self.check(placed_whites).is_ok()
    }

    fn check(&self, placed_whites: &[Cell<D>]) -> Result<(), Rejection> {
        for w in placed_whites {
            if self.dead_set.contains(w) || self.is_open(w) {
                return Err(Rejection::Overlap);
            }
            if self.forbidden.contains(w) {
                return Err(Rejection::Forbidden);
            }
        }
        Ok(())
    }

    /// `self * twig`. Panics on an empty queue (caller contract).
    pub fn extend(&self, twig: &Twig<D>) -> Result<Self, Rejection> {
        let &(u, o) = self.queue.front().expect("extend on a closed configuration");
        let whites: Vec<Cell<D>> = twig.whites.iter().map(|w| u + o.apply(w.cell)).collect();
        self.check(&whites)?;
        let mut next = self.clone();
        next.queue.pop_front();
        next.dead.push(u);
        next.dead_set.insert(u);
        for f in &twig.forbidden {
            next.forbidden.insert(u + o.apply(*f));
        }
        for (c, w) in whites.into_iter().zip(&twig.whites) {
            next.queue.push_back((c, o.compose(&w.orientation)));
        }
        Ok(next)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("invalid animal: {0}")]
    Animal(#[from] AnimalError),
    #[error("step {step}: no twig matches")]
    NoMatch { step: usize },
    #[error("step {step}: {count} twigs match")]
    Ambiguous { step: usize, count: usize },
    #[error("step {step}: white cell lands on a dead or open cell")]
    Overlap { step: usize },
    #[error("step {step}: white cell lands on a forbidden cell")]
    ForbiddenCell { step: usize },
    #[error("step {step}: queue exhausted before the sequence ended")]
    Premature { step: usize },
    #[error("sequence ended with {open} open cells")]
    Late { open: usize },
    #[error("unknown twig {0:?}")]
    UnknownTwig(String),
}

/// Encode an animal: breadth-first from the lattice-smallest cell, choosing
/// at each dequeued cell the unique twig consistent with the animal.
pub fn encode<const D: usize>(set: &TwigSet<D>, p: &Animal<D>) -> Result<TwigSequence, CodecError> {
    let member: HashSet<Cell<D>> = p.cells().iter().copied().collect();
    let mut conf = Configuration::<D>::seed();
    let mut out = Vec::with_capacity(p.len());
    let mut step = 0;
    while let Some(&(u, o)) = conf.queue.front() {
        let mut hit = None;
        let mut count = 0;
        // cells of the animal not yet dead or queued
        let fresh = |c: Cell<D>| member.contains(&c) && !conf.dead_set.contains(&c) && !conf.is_open(&c);
        for (k, t) in set.twigs.iter().enumerate() {
            let ok = t.whites.iter().all(|w| fresh(u + o.apply(w.cell)))
                && t.forbidden.iter().all(|f| !fresh(u + o.apply(*f)));
            if ok {
                count += 1;
                hit = Some(k);
            }
        }
        let k = match (count, hit) {
            (1, Some(k)) => k,
            (0, _) => return Err(CodecError::NoMatch { step }),
            _ => return Err(CodecError::Ambiguous { step, count }),
        };
        conf = conf.extend(&set.twigs[k]).map_err(|r| match r {
            Rejection::Overlap => CodecError::Overlap { step },
            Rejection::Forbidden => CodecError::ForbiddenCell { step },
        })?;
        out.push(k);
        step += 1;
    }
    debug_assert_eq!(conf.dead.len(), p.len());
    Ok(TwigSequence(out))
}

/// Replay a twig sequence from the seed.
pub fn decode<const D: usize>(set: &TwigSet<D>, s: &TwigSequence) -> Result<Animal<D>, CodecError> {
    let mut conf = Configuration::<D>::seed();
    for (step, &k) in s.0.iter().enumerate() {
        if conf.is_closed() {
            return Err(CodecError::Premature { step });
        }
        conf = conf.extend(&set.twigs[k]).map_err(|r| match r {
            Rejection::Overlap => CodecError::Overlap { step },
            Rejection::Forbidden => CodecError::ForbiddenCell { step },
        })?;
    }
    if !conf.is_closed() {
        return Err(CodecError::Late { open: conf.queue.len() });
    }
    if conf.dead.is_empty() {
        return Err(CodecError::Late { open: 1 });
    }
    Ok(Animal::from_connected(conf.dead))
}

/// Checks that every white cell of every twig has its whole context decided
/// by the time it is dequeued. Decided cells: the root, the root's context,
/// the twig's whites and forbidden cells, and every neighbour of a white
/// dequeued earlier (its own twig decides those). Returns the offending
/// `(twig, white)` pairs.
pub fn undecided_contexts<const D: usize>(set: &TwigSet<D>) -> Vec<(String, usize)> {
    let mut bad = Vec::new();
    for t in &set.twigs {
        let mut known: HashSet<Cell<D>> = set.context.iter().copied().collect();
        known.insert(Cell::ORIGIN);
        known.extend(t.whites.iter().map(|w| w.cell));
        known.extend(t.forbidden.iter().copied());
        for (k, w) in t.whites.iter().enumerate() {
            if !set.context_of(w.cell, &w.orientation).iter().all(|c| known.contains(c)) {
                bad.push((t.name.clone(), k));
            }
            known.extend(w.cell.neighbors());
        }
    }
    bad
}

/// Frame helper: the orientation taking the canonical frame vectors
/// `frame0[k]` to `frame[k]`.
pub(crate) fn orientation_between<const D: usize>(frame0: &[Cell<D>], frame: &[Cell<D>]) -> Orientation<D> {
    Orientation::<D>::all()
        .into_iter()
        .find(|o| frame0.iter().zip(frame).all(|(&a, &b)| o.apply(a) == b))
        .expect("frames are related by a signed permutation")
}
