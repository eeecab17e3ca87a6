//! Carriers, level relations, generating sequences and continua.
//!
//! A continuum is a finite carrier together with a generating sequence
//! `R_0 ⊇ R_1 ⊇ … ⊇ R_L` of reflexive symmetric relations satisfying the
//! composition law `R_{n+1} ∘ R_{n+1} ⊆ R_n`, plus an explicit limit partition
//! whose blocks play the role of monads. Nothing here is inferred: the
//! finest relation `R_L` need not be transitive, so the partition is supplied
//! (the identity partition by default).

use std::collections::HashMap;
use std::fmt;

use crate::class::Class;
use crate::error::{Error, Result};
use crate::metric::MetricTable;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub id: String,
    pub value: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    positions: Vec<Position>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new(positions: Vec<Position>) -> Result<Self> {
        let mut index = HashMap::with_capacity(positions.len());
        for (i, p) in positions.iter().enumerate() {
            if index.insert(p.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(p.id.clone()));
            }
        }
        Ok(Carrier { positions, index })
    }

    pub fn from_ids<S: Into<String>, I: IntoIterator<Item = S>>(ids: I) -> Result<Self> {
        Carrier::new(
            ids.into_iter()
                .map(|id| Position {
                    id: id.into(),
                    value: None,
                })
                .collect(),
        )
    }

    /// A numeric carrier; ids are the canonical text of the values.
    pub fn from_values<I: IntoIterator<Item = Rational>>(values: I) -> Result<Self> {
        Carrier::new(
            values
                .into_iter()
                .map(|v| Position {
                    id: rational::format(&v),
                    value: Some(v),
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn id(&self, x: usize) -> &str {
        &self.positions[x].id
    }

    pub fn value(&self, x: usize) -> Option<&Rational> {
        self.positions[x].value.as_ref()
    }

    pub fn numeric_value(&self, x: usize) -> Result<&Rational> {
        self.value(x)
            .ok_or_else(|| Error::NotNumeric(self.id(x).to_string()))
    }

    pub fn is_numeric(&self) -> bool {
        self.positions.iter().all(|p| p.value.is_some())
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownPosition(id.to_string()))
    }

    /// Index of the position carrying exactly `value`, if any.
    pub fn index_of_value(&self, value: &Rational) -> Option<usize> {
        self.index.get(&rational::format(value)).copied().filter(|&i| {
            self.positions[i].value.as_ref() == Some(value)
        })
    }

    pub fn class_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Class> {
        let mut c = Class::empty(self.len());
        for id in ids {
            c.insert(self.index_of(id.as_ref())?);
        }
        Ok(c)
    }

    pub fn ids_of(&self, class: &Class) -> Vec<String> {
        class.iter().map(|x| self.id(x).to_string()).collect()
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                size: self.len(),
            })
        }
    }

    pub fn full(&self) -> Class {
        Class::full(self.len())
    }

    pub fn empty_class(&self) -> Class {
        Class::empty(self.len())
    }
}

/// One level of a generating sequence, stored as its row images:
/// `row(x) = { y : (x, y) ∈ R }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<Class>,
}

impl Relation {
    pub fn full(size: usize) -> Self {
        Relation {
            rows: vec![Class::full(size); size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Relation {
            rows: (0..size).map(|x| Class::singleton(size, x)).collect(),
        }
    }

    /// Exactly the given ordered pairs; nothing is symmetrised or made reflexive.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Result<Self> {
        let mut rows = vec![Class::empty(size); size];
        for (x, y) in pairs {
            for i in [x, y] {
                if i >= size {
                    return Err(Error::IndexOutOfRange { index: i, size });
                }
            }
            rows[x].insert(y);
        }
        Ok(Relation { rows })
    }

    /// Undirected edges; the result is reflexive and symmetric by construction.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(size: usize, edges: I) -> Result<Self> {
        let mut rel = Relation::identity(size);
        for (x, y) in edges {
            for i in [x, y] {
                if i >= size {
                    return Err(Error::IndexOutOfRange { index: i, size });
                }
            }
            rel.rows[x].insert(y);
            rel.rows[y].insert(x);
        }
        Ok(rel)
    }

    pub fn from_fn<F: FnMut(usize, usize) -> bool>(size: usize, mut related: F) -> Self {
        Relation {
            rows: (0..size)
                .map(|x| Class::from_indices(size, (0..size).filter(|&y| related(x, y))))
                .collect(),
        }
    }

    pub fn from_rows(rows: Vec<Class>) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.universe() != size) {
            return Err(Error::ClassMismatch {
                expected: size,
                found: bad.universe(),
            });
        }
        Ok(Relation { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &Class {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Class] {
        &self.rows
    }

    /// `{ y : ∃ x ∈ class, (x, y) ∈ R }`
    pub fn image_of(&self, class: &Class) -> Class {
        let mut out = Class::empty(self.size());
        for x in class.iter() {
            out.union_with(&self.rows[x]);
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// `R ∘ R`
    pub fn square(&self) -> Relation {
        Relation {
            rows: self.rows.iter().map(|r| self.image_of(r)).collect(),
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.union(b))
                .collect(),
        }
    }

    /// A triple `(x, y, z)` with `xRy`, `yRz` but not `xRz`, if one exists.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                if let Some(z) = self.rows[y].difference(row).first() {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    /// Pairs `(x, y)` with `x < y`; self-loops are omitted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().filter(move |&y| y > x).map(move |y| (x, y)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSequence {
    levels: Vec<Relation>,
}

impl GeneratingSequence {
    /// Structural checks only (nonempty, common size). Use [`validate`] for
    /// the reflexivity, symmetry and composition conditions.
    pub fn new(levels: Vec<Relation>) -> Result<Self> {
        let first = levels.first().ok_or(Error::EmptySequence)?;
        let size = first.size();
        for (level, r) in levels.iter().enumerate() {
            if r.size() != size {
                return Err(Error::SizeMismatch {
                    level,
                    expected: size,
                    found: r.size(),
                });
            }
        }
        Ok(GeneratingSequence { levels })
    }

    pub fn size(&self) -> usize {
        self.levels[0].size()
    }

    /// The finest level `L`.
    pub fn finest(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Result<&Relation> {
        self.levels.get(n).ok_or(Error::LevelOutOfRange {
            level: n,
            max: self.finest(),
        })
    }

    pub fn levels(&self) -> &[Relation] {
        &self.levels
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Reflexive,
    Symmetric,
    BaseFull,
    Composition,
    Nested,
    PartitionIndiscernible,
    MetricNonNegative,
    MetricIdentity,
    MetricSymmetric,
    MetricTriangle,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Reflexive => "reflexive",
            Condition::Symmetric => "symmetric",
            Condition::BaseFull => "base-full",
            Condition::Composition => "composition",
            Condition::Nested => "nested",
            Condition::PartitionIndiscernible => "partition-indiscernible",
            Condition::MetricNonNegative => "metric-nonnegative",
            Condition::MetricIdentity => "metric-identity",
            Condition::MetricSymmetric => "metric-symmetric",
            Condition::MetricTriangle => "metric-triangle",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One violated condition. `witness` holds position indices: a pair for the
/// pairwise conditions, a triple `(x, y, z)` for composition and triangle.
/// Only the first witness in canonical scan order is kept; `count` is the
/// total number of violating tuples found for this condition and level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub level: Option<usize>,
    pub witness: Vec<usize>,
    pub count: usize,
}

impl Violation {
    pub fn describe(&self, carrier: Option<&Carrier>) -> String {
        let names: Vec<String> = self
            .witness
            .iter()
            .map(|&x| match carrier {
                Some(c) if x < c.len() => c.id(x).to_string(),
                _ => x.to_string(),
            })
            .collect();
        let level = self
            .level
            .map(|n| format!(" at level {n}"))
            .unwrap_or_default();
        format!(
            "{}{}: witness ({}), {} violating tuple(s)",
            self.condition,
            level,
            names.join(", "),
            self.count
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn find(&self, condition: Condition) -> Option<&Violation> {
        self.violations.iter().find(|v| v.condition == condition)
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.find(condition).is_some()
    }

    pub(crate) fn record(&mut self, condition: Condition, level: Option<usize>, witness: Vec<usize>) {
        if let Some(v) = self
            .violations
            .iter_mut()
            .find(|v| v.condition == condition && v.level == level)
        {
            v.count += 1;
        } else {
            self.violations.push(Violation {
                condition,
                level,
                witness,
                count: 1,
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.describe(None)).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Exhaustively checks reflexivity and symmetry of every level, `R_0` full,
/// the composition law and nesting.
pub fn validate(gen: &GeneratingSequence) -> ValidationReport {
    let mut report = ValidationReport::default();
    let size = gen.size();
    for (n, rel) in gen.levels().iter().enumerate() {
        for x in 0..size {
            if !rel.contains(x, x) {
                report.record(Condition::Reflexive, Some(n), vec![x]);
            }
        }
        for x in 0..size {
            for y in rel.row(x).iter() {
                if !rel.contains(y, x) {
                    report.record(Condition::Symmetric, Some(n), vec![x, y]);
                }
            }
        }
    }
    let base = &gen.levels()[0];
    for x in 0..size {
        for y in base.row(x).complement().iter() {
            report.record(Condition::BaseFull, Some(0), vec![x, y]);
        }
    }
    for n in 0..gen.finest() {
        let coarse = &gen.levels()[n];
        let fine = &gen.levels()[n + 1];
        for x in 0..size {
            for y in fine.row(x).iter() {
                for z in fine.row(y).difference(coarse.row(x)).iter() {
                    report.record(Condition::Composition, Some(n), vec![x, y, z]);
                }
            }
            for y in fine.row(x).difference(coarse.row(x)).iter() {
                report.record(Condition::Nested, Some(n), vec![x, y]);
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Continuum {
    carrier: Carrier,
    gen: GeneratingSequence,
    blocks: Vec<Class>,
    block_of: Vec<usize>,
    metric: Option<MetricTable>,
}

impl Continuum {
    /// A continuum with the identity limit partition (singleton monads).
    pub fn new(carrier: Carrier, gen: GeneratingSequence) -> Result<Self> {
        let size = carrier.len();
        let blocks = (0..size).map(|x| vec![x]).collect();
        Continuum::with_partition(carrier, gen, blocks)
    }

    /// `blocks` must cover the carrier disjointly; positions omitted from
    /// every block become singletons. Whether each block is indiscernible at
    /// every level is a validation question, see [`Continuum::validate`].
    pub fn with_partition(carrier: Carrier, gen: GeneratingSequence, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let size = carrier.len();
        if gen.size() != size {
            return Err(Error::SizeMismatch {
                level: 0,
                expected: size,
                found: gen.size(),
            });
        }
        let mut block_of = vec![usize::MAX; size];
        let mut classes = Vec::new();
        for block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            let id = classes.len();
            for &x in &block {
                carrier.check_index(x)?;
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "position `{}` lies in two blocks",
                        carrier.id(x)
                    )));
                }
                block_of[x] = id;
            }
            classes.push(Class::from_indices(size, block));
        }
        for (x, b) in block_of.iter_mut().enumerate() {
            if *b == usize::MAX {
                *b = classes.len();
                classes.push(Class::singleton(size, x));
            }
        }
        Ok(Continuum {
            carrier,
            gen,
            blocks: classes,
            block_of,
            metric: None,
        })
    }

    pub fn with_metric(mut self, metric: MetricTable) -> Result<Self> {
        if metric.size() != self.carrier.len() {
            return Err(Error::SizeMismatch {
                level: 0,
                expected: self.carrier.len(),
                found: metric.size(),
            });
        }
        self.metric = Some(metric);
        Ok(self)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn generating_sequence(&self) -> &GeneratingSequence {
        &self.gen
    }

    pub fn finest(&self) -> usize {
        self.gen.finest()
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.gen.finest()
    }

    pub fn metric(&self) -> Option<&MetricTable> {
        self.metric.as_ref()
    }

    pub fn blocks(&self) -> &[Class] {
        &self.blocks
    }

    pub fn relation(&self, n: usize) -> Result<&Relation> {
        self.gen.level(n)
    }

    pub fn related(&self, x: usize, y: usize, n: usize) -> Result<bool> {
        self.carrier.check_index(x)?;
        self.carrier.check_index(y)?;
        Ok(self.gen.level(n)?.contains(x, y))
    }

    pub fn check_class(&self, class: &Class) -> Result<()> {
        if class.universe() == self.size() {
            Ok(())
        } else {
            Err(Error::ClassMismatch {
                expected: self.size(),
                found: class.universe(),
            })
        }
    }

    pub fn check_level(&self, n: usize) -> Result<()> {
        self.gen.level(n).map(|_| ())
    }

    pub fn full(&self) -> Class {
        self.carrier.full()
    }

    pub fn empty_class(&self) -> Class {
        self.carrier.empty_class()
    }

    /// Sequence validation plus the limit-partition condition: every pair
    /// inside one block must lie in every `R_n`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = validate(&self.gen);
        let finest = self.gen.levels().last().expect("nonempty");
        for block in &self.blocks {
            for x in block.iter() {
                for y in block.difference(finest.row(x)).iter() {
                    report.record(Condition::PartitionIndiscernible, None, vec![x, y]);
                }
            }
        }
        report
    }

    /// `Z_n(x) = { y : (x, y) ∈ R_n }`
    pub fn image(&self, x: usize, n: usize) -> Result<&Class> {
        self.carrier.check_index(x)?;
        Ok(self.gen.level(n)?.row(x))
    }

    /// Union of the level-`n` images of the members of `class`.
    pub fn level_figure(&self, class: &Class, n: usize) -> Result<Class> {
        self.check_class(class)?;
        Ok(self.gen.level(n)?.image_of(class))
    }

    /// The limit-partition block containing `x`.
    pub fn monad(&self, x: usize) -> Result<&Class> {
        self.carrier.check_index(x)?;
        Ok(&self.blocks[self.block_of[x]])
    }

    pub fn block_index(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// True iff every level relation is transitive.
    pub fn is_totally_disconnected(&self) -> bool {
        self.gen.levels().iter().all(Relation::is_transitive)
    }

    /// For every two distinct blocks some level relates no pair across them.
    /// Since the levels are nested this is the same as asking it of `R_L`.
    pub fn partition_is_discernible(&self) -> bool {
        let finest = self.gen.levels().last().expect("nonempty");
        self.blocks.iter().all(|b| finest.image_of(b).is_subset(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ids(c: &Continuum, class: &Class) -> Vec<String> {
        c.carrier().ids_of(class)
    }

    #[test]
    fn e1_images() {
        let e1 = catalog::e1();
        assert_eq!(ids(&e1, e1.image(1, 2).unwrap()), ["0", "1", "2"]);
        assert_eq!(e1.image(0, 0).unwrap(), &e1.full());
        assert_eq!(ids(&e1, e1.image(4, 1).unwrap()), ["2", "3", "4"]);
        assert!(matches!(e1.image(9, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(e1.image(0, 3), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn e1_level_figures() {
        let e1 = catalog::e1();
        let c = |v: &[usize]| Class::from_indices(5, v.iter().copied());
        assert_eq!(e1.level_figure(&c(&[0]), 2).unwrap(), c(&[0, 1]));
        for n in e1.levels() {
            assert!(e1.level_figure(&c(&[]), n).unwrap().is_empty());
        }
        assert_eq!(e1.level_figure(&c(&[0, 4]), 1).unwrap(), e1.full());
    }

    #[test]
    fn monads() {
        let e1 = catalog::e1();
        assert_eq!(e1.monad(2).unwrap().to_vec(), vec![2]);
        let blocked = catalog::e1_blocked();
        assert_eq!(blocked.monad(0).unwrap().to_vec(), vec![0, 1]);
        assert!(blocked.validate().ok());
    }

    #[test]
    fn total_disconnection() {
        assert!(!catalog::e1().is_totally_disconnected());
        assert!(catalog::e2().is_totally_disconnected());
        assert!(catalog::nested_partitions().is_totally_disconnected());
        let w = catalog::e1().relation(2).unwrap().transitivity_witness();
        assert_eq!(w, Some((0, 1, 2)));
    }

    #[test]
    fn validator_accepts_examples() {
        assert!(catalog::e1().validate().ok());
        assert!(catalog::e2().validate().ok());
    }

    #[test]
    fn validator_reports_asymmetry() {
        let r1 = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
        let gen = GeneratingSequence::new(vec![Relation::full(3), r1]).unwrap();
        let report = validate(&gen);
        let v = report.find(Condition::Symmetric).unwrap();
        assert_eq!(v.witness, vec![0, 1]);
        assert_eq!(v.level, Some(1));
        assert!(!report.ok());
    }

    #[test]
    fn validator_reports_paper_literal_real_family() {
        let c = crate::real::paper_literal_real(
            [0, 8, 48].map(rational::int).to_vec(),
            4,
        )
        .unwrap();
        let report = c.validate();
        let v = report.find(Condition::Composition).unwrap();
        assert_eq!(v.level, Some(3));
        let names: Vec<&str> = v.witness.iter().map(|&x| c.carrier().id(x)).collect();
        assert_eq!(names, ["0", "48", "8"]);
        // the only other violating triple is the mirror image (8, 48, 0)
        assert_eq!(v.count, 2);
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn malformed_sequences_are_input_errors() {
        assert_eq!(GeneratingSequence::new(vec![]), Err(Error::EmptySequence));
        assert!(matches!(
            GeneratingSequence::new(vec![Relation::full(3), Relation::full(2)]),
            Err(Error::SizeMismatch { level: 1, .. })
        ));
        assert!(Relation::from_pairs(2, [(0, 5)]).is_err());
    }

    #[test]
    fn partition_must_be_disjoint() {
        let e1 = catalog::e1();
        let err = Continuum::with_partition(
            e1.carrier().clone(),
            e1.generating_sequence().clone(),
            vec![vec![0, 1], vec![1, 2]],
        );
        assert!(matches!(err, Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn partition_outside_finest_level_is_reported() {
        let e1 = catalog::e1();
        let c = Continuum::with_partition(
            e1.carrier().clone(),
            e1.generating_sequence().clone(),
            vec![vec![0, 2]],
        )
        .unwrap();
        let report = c.validate();
        assert_eq!(
            report.find(Condition::PartitionIndiscernible).unwrap().witness,
            vec![0, 2]
        );
    }
}
