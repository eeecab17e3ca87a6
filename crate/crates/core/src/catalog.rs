//! Small named continua used throughout the tests, the property suite and
//! the shipped fixtures.

use crate::continuum::{Carrier, Continuum, GeneratingSequence, Relation};
use crate::rational::{self, Rational};
use crate::real;

/// Numeric carrier with `R_0` full and `R_n = { |x − y| ≤ t_n }` for the
/// given thresholds `t_1, t_2, …`.
pub fn absdiff_within(values: &[i64], thresholds: &[i64]) -> Continuum {
    let carrier = Carrier::from_values(values.iter().map(|&v| rational::int(v))).expect("distinct values");
    let size = carrier.len();
    let mut levels = vec![Relation::full(size)];
    for &t in thresholds {
        let t = rational::int(t);
        levels.push(Relation::from_fn(size, |x, y| {
            rational::abs_diff(carrier.value(x).unwrap(), carrier.value(y).unwrap()) <= t
        }));
    }
    Continuum::new(carrier, GeneratingSequence::new(levels).expect("levels")).expect("continuum")
}

/// `C = {0,…,4}`, `R_1 = {|x−y| ≤ 2}`, `R_2 = {|x−y| ≤ 1}`.
pub fn e1() -> Continuum {
    absdiff_within(&[0, 1, 2, 3, 4], &[2, 1])
}

/// E1 with the limit partition `{{0,1},{2},{3,4}}`.
pub fn e1_blocked() -> Continuum {
    let e1 = e1();
    Continuum::with_partition(
        e1.carrier().clone(),
        e1.generating_sequence().clone(),
        vec![vec![0, 1], vec![2], vec![3, 4]],
    )
    .expect("partition")
}

/// `C = {0,1,10,11}`, `R_1 = {|x−y| ≤ 5}`, `R_2 = {|x−y| ≤ 1}`.
pub fn e2() -> Continuum {
    absdiff_within(&[0, 1, 10, 11], &[5, 1])
}

/// E2 with monads `{0,1}` and `{10,11}`; the partition is discernible.
pub fn e2_blocked() -> Continuum {
    let e2 = e2();
    Continuum::with_partition(
        e2.carrier().clone(),
        e2.generating_sequence().clone(),
        vec![vec![0, 1], vec![2, 3]],
    )
    .expect("partition")
}

/// `C = {0,…,9}`, `R_1 = {|x−y| ≤ 3}`, `R_2 = {|x−y| ≤ 1}`.
pub fn e3() -> Continuum {
    absdiff_within(&(0..10).collect::<Vec<_>>(), &[3, 1])
}

/// Eight positions with levels given by nested partitions
/// `{all} ⊇ {0-3 | 4-7} ⊇ {01 | 23 | 45 | 67}`; every level is an equivalence.
pub fn nested_partitions() -> Continuum {
    let carrier = Carrier::from_ids((0..8).map(|i| format!("p{i}"))).expect("ids");
    let same = |width: usize| Relation::from_fn(8, move |x, y| x / width == y / width);
    let gen = GeneratingSequence::new(vec![Relation::full(8), same(4), same(2)]).expect("levels");
    let blocks = (0..4).map(|b| vec![2 * b, 2 * b + 1]).collect();
    Continuum::with_partition(carrier, gen, blocks).expect("partition")
}

/// A short dyadic grid, `real_continuum(2, 1, 1)`: nine positions.
pub fn tiny_real() -> Continuum {
    real::real_continuum(2, 1, 1).expect("grid parameters")
}

/// Every shipped continuum, by name.
pub fn shipped() -> Vec<(&'static str, Continuum)> {
    vec![
        ("e1", e1()),
        ("e1-blocked", e1_blocked()),
        ("e2", e2()),
        ("e2-blocked", e2_blocked()),
        ("e3", e3()),
        ("nested-partitions", nested_partitions()),
        ("tiny-real", tiny_real()),
    ]
}

/// Continua on at most four positions with at most two proper levels:
/// paths, cliques, discrete spaces and two-cluster spaces.
pub fn small() -> Vec<(&'static str, Continuum)> {
    vec![
        ("point", absdiff_within(&[0], &[0])),
        ("pair-joined", absdiff_within(&[0, 1], &[1])),
        ("pair-split", absdiff_within(&[0, 1], &[0])),
        ("path3", absdiff_within(&[0, 1, 2], &[2, 1])),
        ("path4", absdiff_within(&[0, 1, 2, 3], &[3, 1])),
        ("two-clusters", absdiff_within(&[0, 1, 10, 11], &[5, 1])),
        ("discrete4", absdiff_within(&[0, 10, 20, 30], &[5, 0])),
    ]
}

pub fn values_of(c: &Continuum) -> Vec<Rational> {
    c.carrier()
        .positions()
        .iter()
        .filter_map(|p| p.value.clone())
        .collect()
}
