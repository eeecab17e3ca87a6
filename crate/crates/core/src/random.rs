//! Seeded generators for random valid continua, classes, motions and
//! sequence prefixes. Every generator takes the RNG explicitly so runs are
//! reproducible from a single seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::class::Class;
use crate::connectivity::Motion;
use crate::continuum::{Carrier, Continuum, GeneratingSequence, Relation};

pub use rand::SeedableRng;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_edges(rng: &mut SuiteRng, size: usize, p: f64) -> Relation {
    let mut edges = Vec::new();
    for x in 0..size {
        for y in x + 1..size {
            if rng.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    Relation::from_edges(size, edges).expect("indices in range")
}

/// A valid generating sequence built from the finest level up:
/// `R_L` = identity plus random edges, then `R_n = R_{n+1}² ∪` random edges,
/// and `R_0` full. Squares of reflexive symmetric relations are reflexive
/// and symmetric and contain their root, so every condition holds.
pub fn random_sequence(rng: &mut SuiteRng, size: usize, levels: usize, p: f64) -> GeneratingSequence {
    let mut rels = vec![random_edges(rng, size, p)];
    for _ in 1..levels {
        let finer = rels.last().expect("nonempty");
        let coarser = finer.square().union(&random_edges(rng, size, p));
        rels.push(coarser);
    }
    rels.push(Relation::full(size));
    rels.reverse();
    if levels == 0 {
        rels.truncate(1);
    }
    GeneratingSequence::new(rels).expect("common size")
}

/// Random continuum with ids `x0, x1, …` and the identity partition.
pub fn random_continuum(rng: &mut SuiteRng, size: usize, levels: usize, p: f64) -> Continuum {
    let carrier = Carrier::from_ids((0..size).map(|i| format!("x{i}"))).expect("distinct ids");
    Continuum::new(carrier, random_sequence(rng, size, levels, p)).expect("sizes agree")
}

/// Like [`random_continuum`], but with a limit partition whose blocks are
/// `R_L`-cliques, grown greedily in a shuffled order.
pub fn random_blocked_continuum(rng: &mut SuiteRng, size: usize, levels: usize, p: f64) -> Continuum {
    let base = random_continuum(rng, size, levels, p);
    let finest = base.relation(base.finest()).expect("finest level");
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(rng);
    let mut assigned = Class::empty(size);
    let mut blocks = Vec::new();
    for &x in &order {
        if assigned.contains(x) {
            continue;
        }
        let mut block = vec![x];
        assigned.insert(x);
        for &y in &order {
            if !assigned.contains(y) && block.iter().all(|&b| finest.contains(b, y)) && rng.gen_bool(0.5) {
                block.push(y);
                assigned.insert(y);
            }
        }
        blocks.push(block);
    }
    Continuum::with_partition(base.carrier().clone(), base.generating_sequence().clone(), blocks)
        .expect("blocks partition the carrier")
}

pub fn random_class(rng: &mut SuiteRng, size: usize) -> Class {
    Class::from_indices(size, (0..size).filter(|_| rng.gen_bool(0.5)))
}

/// A random walk of `len` positions along `R_n`.
pub fn random_motion(rng: &mut SuiteRng, c: &Continuum, n: usize, len: usize) -> Motion {
    let rel = c.relation(n).expect("level in range");
    let mut steps = vec![rng.gen_range(0..c.size())];
    while steps.len() < len {
        let row = rel.row(*steps.last().expect("nonempty")).to_vec();
        steps.push(*row.choose(rng).expect("reflexive row"));
    }
    Motion::new(c, steps, n).expect("walk along the relation")
}

pub fn random_prefix(rng: &mut SuiteRng, size: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..size)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum::validate;

    #[test]
    fn random_sequences_validate() {
        let mut r = rng(7);
        for size in 1..=9 {
            for levels in 0..=4 {
                let gen = random_sequence(&mut r, size, levels, 0.3);
                assert_eq!(gen.finest(), levels);
                assert!(validate(&gen).ok());
            }
        }
    }

    #[test]
    fn random_partitions_validate() {
        let mut r = rng(11);
        for _ in 0..50 {
            let c = random_blocked_continuum(&mut r, 8, 3, 0.3);
            assert!(c.validate().ok());
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let a = random_continuum(&mut rng(3), 6, 2, 0.4);
        let b = random_continuum(&mut rng(3), 6, 2, 0.4);
        assert_eq!(a, b);
    }

    #[test]
    fn random_motions_are_motions() {
        let mut r = rng(5);
        let c = random_continuum(&mut r, 7, 3, 0.3);
        for _ in 0..20 {
            let m = random_motion(&mut r, &c, 3, 6);
            assert_eq!(m.steps().len(), 6);
        }
    }
}
