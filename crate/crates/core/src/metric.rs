//! Rational metrics on finite carriers, balls, and metric-derived continua.

use std::borrow::Cow;

use num_traits::{Signed, Zero};

use crate::class::Class;
use crate::continuum::{
    Carrier, Condition, Continuum, GeneratingSequence, Relation, ValidationReport,
};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A total distance function on a carrier of `size` positions: either an
/// explicit row-major table or `|v_x − v_y|` over stored values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTable {
    size: usize,
    store: Store,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Store {
    Table(Vec<Rational>),
    AbsDiff(Vec<Rational>),
}

impl MetricTable {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::InvalidParameters(format!(
                "metric row of length {} in a {size}x{size} table",
                bad.len()
            )));
        }
        Ok(MetricTable {
            size,
            store: Store::Table(rows.into_iter().flatten().collect()),
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(size: usize, mut d: F) -> Self {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                table.push(d(x, y));
            }
        }
        MetricTable {
            size,
            store: Store::Table(table),
        }
    }

    /// `|x − y|` on a numeric carrier, evaluated on demand.
    pub fn absdiff(carrier: &Carrier) -> Result<Self> {
        let values = (0..carrier.len())
            .map(|x| carrier.numeric_value(x).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(MetricTable {
            size: values.len(),
            store: Store::AbsDiff(values),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_absdiff(&self) -> bool {
        matches!(self.store, Store::AbsDiff(_))
    }

    pub fn distance(&self, x: usize, y: usize) -> Cow<'_, Rational> {
        match &self.store {
            Store::Table(d) => Cow::Borrowed(&d[x * self.size + y]),
            Store::AbsDiff(v) => Cow::Owned(rational::abs_diff(&v[x], &v[y])),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.distance(x, y).into_owned()).collect())
            .collect()
    }
}

/// Checks nonnegativity, `d(x,y) = 0 ⇔ x = y`, symmetry and the triangle
/// inequality over every pair and triple. An absolute-difference metric
/// satisfies all but the identity condition by construction, so only that
/// one is scanned.
pub fn validate_metric(m: &MetricTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = m.size();
    if m.is_absdiff() {
        for x in 0..n {
            for y in 0..n {
                if m.distance(x, y).is_zero() != (x == y) {
                    report.record(Condition::MetricIdentity, None, vec![x, y]);
                }
            }
        }
        return report;
    }
    for x in 0..n {
        for y in 0..n {
            let d = m.distance(x, y);
            if d.is_negative() {
                report.record(Condition::MetricNonNegative, None, vec![x, y]);
            }
            if d.is_zero() != (x == y) {
                report.record(Condition::MetricIdentity, None, vec![x, y]);
            }
            if d != m.distance(y, x) {
                report.record(Condition::MetricSymmetric, None, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if *m.distance(x, z) > m.distance(x, y).as_ref() + m.distance(y, z).as_ref() {
                    report.record(Condition::MetricTriangle, None, vec![x, y, z]);
                }
            }
        }
    }
    report
}

/// `∪_{i ≤ depth} { x : d(a, x) < e − 2^-i }`
pub fn ball(m: &MetricTable, a: usize, e: &Rational, depth: usize) -> Result<Class> {
    if !e.is_positive() {
        return Err(Error::InvalidParameters(format!(
            "ball radius {} must be positive",
            rational::format(e)
        )));
    }
    if a >= m.size() {
        return Err(Error::IndexOutOfRange {
            index: a,
            size: m.size(),
        });
    }
    // The union is ascending in i, so its value is the term at i = depth.
    let bound = e - rational::pow2_neg(depth);
    Ok(Class::from_indices(
        m.size(),
        (0..m.size()).filter(|&x| *m.distance(a, x) < bound),
    ))
}

/// The open ball `{ x : d(a, x) < e }` evaluated directly.
pub fn open_ball(m: &MetricTable, a: usize, e: &Rational) -> Class {
    Class::from_indices(m.size(), (0..m.size()).filter(|&x| m.distance(a, x).as_ref() < e))
}

/// Least depth at which [`ball`] already equals [`open_ball`]: the least `i`
/// with `2^-i` below every positive margin `e − d(a, x)`.
pub fn exact_depth(m: &MetricTable, a: usize, e: &Rational) -> usize {
    let margin = (0..m.size())
        .map(|x| e - m.distance(a, x).as_ref())
        .filter(|g| g.is_positive())
        .min();
    match margin {
        None => 0,
        Some(g) => (0..).find(|&i| rational::pow2_neg(i) < g).expect("positive margin"),
    }
}

/// `R_0` full and `R_n = { d < 2^-n }` for `1 ≤ n ≤ levels`.
pub fn metric_sequence(m: &MetricTable, levels: usize) -> GeneratingSequence {
    let size = m.size();
    let mut rels = vec![Relation::full(size)];
    for n in 1..=levels {
        let t = rational::pow2_neg(n);
        rels.push(Relation::from_fn(size, |x, y| *m.distance(x, y) < t));
    }
    GeneratingSequence::new(rels).expect("common size")
}

pub fn continuum_from_metric(carrier: Carrier, m: MetricTable, levels: usize) -> Result<Continuum> {
    let report = validate_metric(&m);
    if !report.ok() {
        return Err(Error::InvalidMetric(report));
    }
    let gen = metric_sequence(&m, levels);
    Continuum::new(carrier, gen)?.with_metric(m)
}

/// The ball-dependent family `R_n = { d < e − 2^-n ∨ d > 2^n }` for
/// `0 ≤ n ≤ levels`, built literally for comparison with [`metric_sequence`].
/// It is generally not a generating sequence.
pub fn ball_family_sequence(m: &MetricTable, e: &Rational, levels: usize) -> GeneratingSequence {
    let size = m.size();
    let rels = (0..=levels)
        .map(|n| {
            let near = e - rational::pow2_neg(n);
            let far = rational::pow2(n);
            Relation::from_fn(size, |x, y| {
                let d = m.distance(x, y);
                *d < near || *d > far
            })
        })
        .collect();
    GeneratingSequence::new(rels).expect("common size")
}
