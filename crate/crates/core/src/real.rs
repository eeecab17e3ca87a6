//! The real continuum on a dyadic grid, exact arithmetic on representatives,
//! Archimedean witnesses, the bisection least upper bound and intervals.
//!
//! Levels: `R_0` is the full relation and for `n ≥ 1`
//!
//! ```text
//! (a, b) ∈ R_n  ⇔  |a − b| < 2^-n  ∨  (a > 2^n ∧ b > 2^n)  ∨  (a < −2^n ∧ b < −2^n)
//! ```
//!
//! The far branch is split by sign. A single `|a − b| > 2^n` branch breaks the
//! composition law (see [`paper_literal_real`]) and would glue `0` to the
//! far-away points.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::class::Class;
use crate::continuum::{Carrier, Continuum, GeneratingSequence, Relation};
use crate::error::{Error, Result};
use crate::figures;
use crate::metric::MetricTable;
use crate::rational::{self, Rational};

/// Largest grid accepted by [`RealGrid::new`]; level relations are dense
/// bit matrices.
pub const MAX_GRID_POINTS: usize = 1 << 14;

/// Grid `{ k / 2^G : |k| ≤ M·2^G }` with `L` proper levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealGrid {
    pub granularity: usize,
    pub bound: u64,
    pub levels: usize,
}

impl RealGrid {
    /// `levels = 0` is accepted for metric-only uses of the grid.
    pub fn new(granularity: usize, bound: u64, levels: usize) -> Result<Self> {
        if bound < 1 {
            return Err(Error::InvalidParameters("grid bound M must be at least 1".into()));
        }
        if granularity < levels + 1 {
            return Err(Error::InvalidParameters(format!(
                "granularity {granularity} must be at least levels + 1 = {}",
                levels + 1
            )));
        }
        if granularity > 24 {
            return Err(Error::InvalidParameters(format!("granularity {granularity} is too fine")));
        }
        let grid = RealGrid {
            granularity,
            bound,
            levels,
        };
        if bound > MAX_GRID_POINTS as u64 || grid.len() > MAX_GRID_POINTS {
            return Err(Error::InvalidParameters(format!(
                "grid with G = {granularity}, M = {bound} exceeds {MAX_GRID_POINTS} points"
            )));
        }
        Ok(grid)
    }

    pub fn spacing(&self) -> Rational {
        rational::pow2_neg(self.granularity)
    }

    fn half_width(&self) -> i64 {
        (self.bound as i64) << self.granularity
    }

    pub fn len(&self) -> usize {
        (2 * self.half_width() + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> impl Iterator<Item = Rational> + '_ {
        let h = self.half_width();
        (-h..=h).map(move |k| rational::dyadic(k, self.granularity))
    }

    pub fn carrier(&self) -> Carrier {
        Carrier::from_values(self.values()).expect("grid values are distinct")
    }

    /// Index of `q` if it is a grid point.
    pub fn index_of(&self, q: &Rational) -> Option<usize> {
        let scaled = q * rational::pow2(self.granularity);
        if !scaled.is_integer() {
            return None;
        }
        let k = scaled.to_integer().to_i64()?;
        (k.abs() <= self.half_width()).then(|| (k + self.half_width()) as usize)
    }

    pub fn point(&self, q: &Rational) -> Result<usize> {
        self.index_of(q)
            .ok_or_else(|| Error::OffCarrier(rational::format(q)))
    }

    /// Nearest grid point, ties toward −∞, clamped to the bound.
    pub fn nearest(&self, q: &Rational) -> usize {
        let scaled = q * rational::pow2(self.granularity);
        let floor = scaled.numer().div_floor(scaled.denom());
        let k = if &scaled - Rational::from_integer(floor.clone()) > rational::frac(1, 2) {
            floor + 1
        } else {
            floor
        };
        let h = BigInt::from(self.half_width());
        let k = k.clamp(-h.clone(), h.clone());
        (k + h).to_usize().expect("in range")
    }
}

/// Whether `a` and `b` are `R_n`-related in the real continuum.
pub fn real_related(a: &Rational, b: &Rational, n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let far = rational::pow2(n);
    rational::abs_diff(a, b) < rational::pow2_neg(n)
        || (a > &far && b > &far)
        || (a < &-far.clone() && b < &-far)
}

/// `|a − b| < 2^-n ∨ |a − b| > 2^n`, literally, at every level including 0.
pub fn paper_literal_related(a: &Rational, b: &Rational, n: usize) -> bool {
    let d = rational::abs_diff(a, b);
    d < rational::pow2_neg(n) || d > rational::pow2(n)
}

pub fn real_continuum(granularity: usize, bound: u64, levels: usize) -> Result<Continuum> {
    if levels < 1 {
        return Err(Error::InvalidParameters("a real continuum needs at least one level".into()));
    }
    let grid = RealGrid::new(granularity, bound, levels)?;
    // On the grid the relation reduces to integer comparisons of numerators.
    let h = grid.half_width();
    let ks: Vec<i64> = (-h..=h).collect();
    let size = ks.len();
    let mut rels = vec![Relation::full(size)];
    for n in 1..=levels {
        let near = 1i64 << (granularity - n);
        let far = 1i128 << (n + granularity);
        rels.push(Relation::from_fn(size, |x, y| {
            let (a, b) = (ks[x], ks[y]);
            (a - b).abs() < near
                || (a as i128 > far && b as i128 > far)
                || ((a as i128) < -far && (b as i128) < -far)
        }));
    }
    let carrier = grid.carrier();
    let metric = MetricTable::absdiff(&carrier)?;
    Continuum::new(carrier, GeneratingSequence::new(rels)?)?.with_metric(metric)
}

/// The two-far-branch family on an arbitrary numeric carrier, e.g. the
/// range of a function on a grid.
pub fn real_on_values(values: Vec<Rational>, levels: usize) -> Result<Continuum> {
    numeric_continuum(values, levels, real_related)
}

/// The single-far-branch family on an arbitrary numeric carrier. It loads,
/// but does not satisfy the composition law in general.
pub fn paper_literal_real(values: Vec<Rational>, levels: usize) -> Result<Continuum> {
    numeric_continuum(values, levels, paper_literal_related)
}

fn numeric_continuum(
    values: Vec<Rational>,
    levels: usize,
    related: fn(&Rational, &Rational, usize) -> bool,
) -> Result<Continuum> {
    let carrier = Carrier::from_values(values.iter().cloned())?;
    let size = carrier.len();
    let rels = (0..=levels)
        .map(|n| Relation::from_fn(size, |x, y| related(&values[x], &values[y], n)))
        .collect();
    let metric = MetricTable::absdiff(&carrier)?;
    Continuum::new(carrier, GeneratingSequence::new(rels)?)?.with_metric(metric)
}

/// A real number given by an exact representative of its monad.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealPoint(pub Rational);

impl RealPoint {
    pub fn new(q: Rational) -> Self {
        RealPoint(q)
    }

    pub fn representative(&self) -> &Rational {
        &self.0
    }

    /// Level-`n` equality: the representatives are `R_n`-related.
    pub fn eq_at(&self, other: &RealPoint, n: usize) -> bool {
        real_related(&self.0, &other.0, n)
    }

    pub fn add(&self, other: &RealPoint) -> RealPoint {
        RealPoint(&self.0 + &other.0)
    }

    pub fn mul(&self, other: &RealPoint) -> RealPoint {
        RealPoint(&self.0 * &other.0)
    }

    pub fn neg(&self) -> RealPoint {
        RealPoint(-&self.0)
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn recip(&self) -> Option<RealPoint> {
        (!self.0.is_zero()).then(|| RealPoint(self.0.recip()))
    }

    pub fn le(&self, other: &RealPoint) -> bool {
        self.0 <= other.0
    }

    /// Snap onto a grid. Arithmetic never does this implicitly.
    pub fn regrid(&self, grid: &RealGrid) -> usize {
        grid.nearest(&self.0)
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mon({})", rational::format(&self.0))
    }
}

pub fn real_eq(p: &RealPoint, q: &RealPoint, n: usize) -> bool {
    p.eq_at(q, n)
}

/// Least natural `n` with `q < n`.
pub fn archimedean_witness(q: &Rational) -> BigUint {
    if q.is_negative() {
        return BigUint::zero();
    }
    (q.floor().to_integer() + 1u32)
        .to_biguint()
        .expect("nonnegative")
}

/// Bisection from above: `c_0 = b`, and `c_{i+1} = c_i − (b − a)/2^{i+1}`
/// whenever that value is still an upper bound of `members`, else `c_i`.
///
/// Requires `b` to bound `members` from above and `a` not to. The result is
/// an upper bound within `(b − a)/2^T` of `max(members)`.
pub fn lub(members: &[Rational], a: &Rational, b: &Rational, iterations: usize) -> Result<Rational> {
    let max = members
        .iter()
        .max()
        .ok_or_else(|| Error::Precondition("member set is empty".into()))?;
    if max > b {
        return Err(Error::Precondition(format!(
            "b = {} is not an upper bound: member {} exceeds it",
            rational::format(b),
            rational::format(max)
        )));
    }
    if max <= a {
        return Err(Error::Precondition(format!(
            "a = {} is an upper bound of the members (max {})",
            rational::format(a),
            rational::format(max)
        )));
    }
    let is_upper = |c: &Rational| members.iter().all(|m| m <= c);
    let width = a - b;
    let mut c = b.clone();
    for i in 0..iterations {
        let candidate = &c + &width * rational::pow2_neg(i + 1);
        if is_upper(&candidate) {
            c = candidate;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// `(a, b)`
    Open,
    /// `[a, b]`
    Closed,
    /// `(a, b]`
    OpenClosed,
    /// `[a, b)`
    ClosedOpen,
}

impl IntervalKind {
    pub const ALL: [IntervalKind; 4] = [
        IntervalKind::Open,
        IntervalKind::Closed,
        IntervalKind::OpenClosed,
        IntervalKind::ClosedOpen,
    ];

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "open" | "()" => Some(IntervalKind::Open),
            "closed" | "[]" => Some(IntervalKind::Closed),
            "open-closed" | "(]" => Some(IntervalKind::OpenClosed),
            "closed-open" | "[)" => Some(IntervalKind::ClosedOpen),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IntervalKind::Open => "open",
            IntervalKind::Closed => "closed",
            IntervalKind::OpenClosed => "open-closed",
            IntervalKind::ClosedOpen => "closed-open",
        }
    }
}

/// The raw class `{ q : a < q < b }` on a numeric continuum.
pub fn strictly_between(c: &Continuum, a: &Rational, b: &Rational) -> Result<Class> {
    let carrier = c.carrier();
    let mut out = c.empty_class();
    for x in 0..carrier.len() {
        let v = carrier.numeric_value(x)?;
        if a < v && v < b {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Every defining expression for the interval, evaluated at level `n` with
/// level-`n` images standing in for the endpoint monads:
///
/// * `(a,b)  = int A`
/// * `[a,b]  = cl A`
/// * `(a,b]  = cl A ∖ mon a  =  int A ∪ mon b`
/// * `[a,b)  = cl A ∖ mon b  =  int A ∪ mon a`
///
/// where `A = { q : a < q < b }`. Half-open kinds yield two classes, which
/// the displayed identity claims are equal.
pub fn interval_constructions(
    c: &Continuum,
    a: &Rational,
    b: &Rational,
    kind: IntervalKind,
    n: usize,
) -> Result<Vec<Class>> {
    if a >= b {
        return Err(Error::Precondition(format!(
            "interval endpoints must satisfy a < b, got {} and {}",
            rational::format(a),
            rational::format(b)
        )));
    }
    c.check_level(n)?;
    let ia = c
        .carrier()
        .index_of_value(a)
        .ok_or_else(|| Error::OffCarrier(rational::format(a)))?;
    let ib = c
        .carrier()
        .index_of_value(b)
        .ok_or_else(|| Error::OffCarrier(rational::format(b)))?;
    let raw = strictly_between(c, a, b)?;
    let cl = figures::closure(c, &raw, n)?;
    let int = figures::interior(c, &raw, n)?;
    let mon_a = c.image(ia, n)?;
    let mon_b = c.image(ib, n)?;
    Ok(match kind {
        IntervalKind::Open => vec![int],
        IntervalKind::Closed => vec![cl],
        IntervalKind::OpenClosed => vec![cl.difference(mon_a), int.union(mon_b)],
        IntervalKind::ClosedOpen => vec![cl.difference(mon_b), int.union(mon_a)],
    })
}

/// The interval by its first defining expression.
pub fn interval(c: &Continuum, a: &Rational, b: &Rational, kind: IntervalKind, n: usize) -> Result<Class> {
    Ok(interval_constructions(c, a, b, kind, n)?.swap_remove(0))
}
