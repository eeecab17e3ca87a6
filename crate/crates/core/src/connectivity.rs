//! Motions and their traces, connected sets, components, R-nets, cluster
//! positions, accumulation points and convergence of sequence prefixes.
//!
//! Everything is level-indexed. A motion at level `n` steps along `R_n`;
//! a connected set at level `n` is one whose induced `R_n` graph is
//! connected. The empty class counts as connected.

use std::collections::VecDeque;

use crate::class::Class;
use crate::continuum::Continuum;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motion {
    steps: Vec<usize>,
    level: usize,
}

impl Motion {
    pub fn new(c: &Continuum, steps: Vec<usize>, level: usize) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Precondition("a motion needs at least one position".into()));
        }
        let rel = c.relation(level)?;
        for &x in &steps {
            c.carrier().check_index(x)?;
        }
        if let Some(step) = steps.windows(2).position(|w| !rel.contains(w[0], w[1])) {
            return Err(Error::NotAMotion {
                level,
                step,
                from: steps[step],
                to: steps[step + 1],
            });
        }
        Ok(Motion { steps, level })
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The set of visited positions.
    pub fn trace(&self, universe: usize) -> Class {
        Class::from_indices(universe, self.steps.iter().copied())
    }
}

pub fn is_motion(c: &Continuum, steps: &[usize], n: usize) -> Result<bool> {
    match Motion::new(c, steps.to_vec(), n) {
        Ok(_) => Ok(true),
        Err(Error::NotAMotion { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Everything in `within` reachable from `start` along `R_n`.
fn reach(c: &Continuum, start: usize, within: &Class, n: usize) -> Result<Class> {
    let rel = c.relation(n)?;
    let mut seen = Class::singleton(c.size(), start);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in rel.row(x).intersection(within).iter() {
            if !seen.contains(y) {
                seen.insert(y);
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

pub fn is_connected_set(c: &Continuum, u: &Class, n: usize) -> Result<bool> {
    c.check_class(u)?;
    c.check_level(n)?;
    match u.first() {
        None => Ok(true),
        Some(x) => Ok(&reach(c, x, u, n)? == u),
    }
}

/// Partition of `class` into its `R_n`-connected pieces, ordered by least member.
pub fn components(c: &Continuum, class: &Class, n: usize) -> Result<Vec<Class>> {
    c.check_class(class)?;
    c.check_level(n)?;
    let mut rest = class.clone();
    let mut out = Vec::new();
    while let Some(x) = rest.first() {
        let comp = reach(c, x, class, n)?;
        rest = rest.difference(&comp);
        out.push(comp);
    }
    Ok(out)
}

/// A level-`n` motion whose trace is exactly `u`: a depth-first walk over
/// the induced graph that steps back along the tree edge after each subtree.
/// Its length is at most `2|u| − 1`.
pub fn motion_through(c: &Continuum, u: &Class, n: usize) -> Result<Motion> {
    c.check_class(u)?;
    let rel = c.relation(n)?;
    let Some(start) = u.first() else {
        return Err(Error::Precondition("cannot trace the empty class".into()));
    };
    let reached = reach(c, start, u, n)?;
    if &reached != u {
        return Err(Error::NotConnected {
            level: n,
            part: reached.to_vec(),
        });
    }
    let mut steps = vec![start];
    let mut visited = Class::singleton(c.size(), start);
    let mut stack = vec![start];
    while let Some(&top) = stack.last() {
        match rel.row(top).intersection(u).difference(&visited).first() {
            Some(next) => {
                visited.insert(next);
                steps.push(next);
                stack.push(next);
            }
            None => {
                stack.pop();
                if let Some(&parent) = stack.last() {
                    if visited != *u {
                        steps.push(parent);
                    }
                }
            }
        }
        if visited == *u && stack.last() == steps.last() {
            break;
        }
    }
    Motion::new(c, steps, n)
}

/// A shortest level-`n` motion from `from` to `to`, if they lie in one
/// level-`n` component.
pub fn motion_between(c: &Continuum, from: usize, to: usize, n: usize) -> Result<Option<Motion>> {
    c.carrier().check_index(from)?;
    c.carrier().check_index(to)?;
    let rel = c.relation(n)?;
    let mut parent = vec![usize::MAX; c.size()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut steps = vec![to];
            let mut at = to;
            while at != from {
                at = parent[at];
                steps.push(at);
            }
            steps.reverse();
            return Motion::new(c, steps, n).map(Some);
        }
        for y in rel.row(x).iter() {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    pub members: Class,
    pub level: usize,
    pub maximal: bool,
}

/// No two distinct members are `R_n`-related.
pub fn is_net(c: &Continuum, members: &Class, n: usize) -> Result<bool> {
    c.check_class(members)?;
    let rel = c.relation(n)?;
    Ok(members.iter().all(|x| {
        let mut others = rel.row(x).intersection(members);
        others.remove(x);
        others.is_empty()
    }))
}

/// Every element of `within` is `R_n`-related to some member.
pub fn covers(c: &Continuum, members: &Class, within: &Class, n: usize) -> Result<bool> {
    Ok(within.is_subset(&c.level_figure(members, n)?))
}

/// Greedy net in canonical carrier order: take each element of `class` not
/// yet covered. Maximality is re-checked, not assumed.
pub fn maximal_net(c: &Continuum, class: &Class, n: usize) -> Result<Net> {
    c.check_class(class)?;
    let rel = c.relation(n)?;
    let mut members = c.empty_class();
    let mut covered = c.empty_class();
    for x in class.iter() {
        if !covered.contains(x) {
            members.insert(x);
            covered.union_with(rel.row(x));
        }
    }
    let maximal = is_net(c, &members, n)? && covers(c, &members, class, n)?;
    Ok(Net {
        members,
        level: n,
        maximal,
    })
}

/// A bound on every `R_n`-net: its size never exceeds the size of a maximal
/// `R_{n+1}`-net of the carrier, since two net members sharing an
/// `R_{n+1}`-centre would be `R_n`-related. Needs `n < L`.
pub fn net_bound(c: &Continuum, n: usize) -> Result<usize> {
    if n >= c.finest() {
        return Err(Error::LevelOutOfRange {
            level: n + 1,
            max: c.finest(),
        });
    }
    Ok(maximal_net(c, &c.full(), n + 1)?.members.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cluster {
    pub position: usize,
    pub count: usize,
}

/// The member of the greedy maximal `R_n`-net of the carrier whose image
/// holds the most terms of `seq`; ties go to the earlier member. By
/// pigeonhole the count is at least `⌈m / |net|⌉`.
pub fn cluster_position(c: &Continuum, seq: &[usize], n: usize) -> Result<Cluster> {
    if seq.is_empty() {
        return Err(Error::Precondition("sequence prefix is empty".into()));
    }
    for &x in seq {
        c.carrier().check_index(x)?;
    }
    let net = maximal_net(c, &c.full(), n)?;
    let mut best: Option<Cluster> = None;
    for member in net.members.iter() {
        let image = c.image(member, n)?;
        let count = seq.iter().filter(|&&t| image.contains(t)).count();
        if best.is_none_or(|b| count > b.count) {
            best = Some(Cluster {
                position: member,
                count,
            });
        }
    }
    Ok(best.expect("a maximal net of a nonempty carrier is nonempty"))
}

/// `x` is an accumulation point of `a` iff for every `n ≤ budget` the image
/// `Z_n(x)` meets `a ∖ mon(x)`.
pub fn is_accumulation_point(c: &Continuum, a: &Class, x: usize, budget: usize) -> Result<bool> {
    c.check_class(a)?;
    c.check_level(budget)?;
    let rest = a.difference(c.monad(x)?);
    for n in 0..=budget {
        if c.image(x, n)?.is_disjoint(&rest) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn accumulation_points(c: &Continuum, a: &Class, budget: usize) -> Result<Class> {
    let mut out = c.empty_class();
    for x in 0..c.size() {
        if is_accumulation_point(c, a, x, budget)? {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Members of the figure of `a` that are not accumulation points.
pub fn isolation_points(c: &Continuum, a: &Class, budget: usize) -> Result<Class> {
    let fig = crate::figures::figure_of(c, a)?;
    Ok(fig.difference(&accumulation_points(c, a, budget)?))
}

fn some_tail_inside(seq: &[usize], target: &Class) -> bool {
    (0..seq.len()).any(|i| seq[i..].iter().all(|&t| target.contains(t)))
}

/// Largest `k ≤ L` such that for every `n ≤ k` a nonempty tail of `seq`
/// lies inside `Z_n(x)`. Level 0 always certifies.
pub fn converges_to(c: &Continuum, seq: &[usize], x: usize) -> Result<usize> {
    if seq.is_empty() {
        return Err(Error::Precondition("sequence prefix is empty".into()));
    }
    for &t in seq {
        c.carrier().check_index(t)?;
    }
    let mut depth = 0;
    for n in c.levels() {
        if !some_tail_inside(seq, c.image(x, n)?) {
            break;
        }
        depth = n;
    }
    Ok(depth)
}

/// For every `n ≤ budget`, some tail of `seq` lies in the basic
/// neighbourhood `Z_n(x)`.
pub fn tails_in_neighborhoods(c: &Continuum, seq: &[usize], x: usize, budget: usize) -> Result<bool> {
    c.check_level(budget)?;
    for n in 0..=budget {
        if !some_tail_inside(seq, c.image(x, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For an accumulation point `x` of `a`, a prefix of members of `a ∖ mon(x)`
/// with pairwise different monads whose certified depth toward `x` is `L`.
/// Terms are picked from `Z_0(x), Z_1(x), …, Z_L(x)` in turn, skipping
/// monads already used while a fresh one is available.
pub fn extract_converging_prefix(c: &Continuum, a: &Class, x: usize) -> Result<Option<Vec<usize>>> {
    if !is_accumulation_point(c, a, x, c.finest())? {
        return Ok(None);
    }
    let rest = a.difference(c.monad(x)?);
    let mut used_blocks = Vec::new();
    let mut seq = Vec::new();
    for n in c.levels() {
        let near = c.image(x, n)?.intersection(&rest);
        let fresh = near
            .iter()
            .find(|&t| !used_blocks.contains(&c.block_index(t)));
        let last = n == c.finest();
        match fresh {
            Some(t) => {
                used_blocks.push(c.block_index(t));
                seq.push(t);
            }
            None if last => {
                // every candidate's monad is already used; move the earlier
                // occurrence to the end so the prefix still ends near x
                let t = near.first().expect("accumulation point");
                let b = c.block_index(t);
                seq.retain(|&s| c.block_index(s) != b);
                seq.push(t);
            }
            None => {}
        }
    }
    Ok(Some(seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{self, Rational};
    use crate::real;

    fn cls(c: &Continuum, ids: &[&str]) -> Class {
        c.carrier().class_of(ids).unwrap()
    }

    fn at(c: &Continuum, id: &str) -> usize {
        c.carrier().index_of(id).unwrap()
    }

    fn at_value(c: &Continuum, q: &Rational) -> usize {
        c.carrier().index_of_value(q).unwrap()
    }

    #[test]
    fn motions_and_traces() {
        let e1 = catalog::e1();
        assert!(is_motion(&e1, &[0, 1, 2], 2).unwrap());
        let m = Motion::new(&e1, vec![0, 1, 2], 2).unwrap();
        assert_eq!(m.trace(5), cls(&e1, &["0", "1", "2"]));
        assert!(!is_motion(&e1, &[0, 2], 2).unwrap());
        assert!(is_motion(&e1, &[3], 2).unwrap());
        assert!(is_motion(&e1, &[0, 9], 2).is_err());
        assert!(matches!(
            Motion::new(&e1, vec![0, 1, 3], 2),
            Err(Error::NotAMotion { step: 1, from: 1, to: 3, .. })
        ));
    }

    #[test]
    fn connected_sets() {
        let e1 = catalog::e1();
        assert!(is_connected_set(&e1, &cls(&e1, &["0", "1", "2"]), 2).unwrap());
        assert!(!is_connected_set(&e1, &cls(&e1, &["0", "2"]), 2).unwrap());
        assert!(is_connected_set(&e1, &cls(&e1, &["0", "2"]), 1).unwrap());
        assert!(is_connected_set(&e1, &cls(&e1, &["4"]), 2).unwrap());
        assert!(is_connected_set(&e1, &e1.empty_class(), 2).unwrap());
    }

    #[test]
    fn component_examples() {
        let e2 = catalog::e2();
        assert_eq!(
            components(&e2, &e2.full(), 2).unwrap(),
            vec![cls(&e2, &["0", "1"]), cls(&e2, &["10", "11"])]
        );
        let e1 = catalog::e1();
        assert_eq!(components(&e1, &e1.full(), 2).unwrap(), vec![e1.full()]);
        assert!(components(&e1, &e1.empty_class(), 2).unwrap().is_empty());
    }

    #[test]
    fn motion_through_examples() {
        let e1 = catalog::e1();
        let u = cls(&e1, &["0", "1", "2"]);
        let m = motion_through(&e1, &u, 2).unwrap();
        assert_eq!(m.trace(5), u);
        assert!(m.steps().len() < 2 * u.len());
        let single = motion_through(&e1, &cls(&e1, &["3"]), 2).unwrap();
        assert_eq!(single.steps(), &[3]);
        let spread = cls(&e1, &["0", "2", "4"]);
        let m = motion_through(&e1, &spread, 1).unwrap();
        assert_eq!(m.steps(), &[0, 2, 4]);
        assert!(matches!(motion_through(&e1, &spread, 2), Err(Error::NotConnected { .. })));
    }

    #[test]
    fn motion_through_backtracks_on_stars() {
        let c = catalog::absdiff_within(&[0, 1, 2, 3, 4], &[4, 2]);
        // level 2 is {|x−y| ≤ 2}; the set {0, 2, 4, 1} forces a back step
        let u = cls(&c, &["0", "1", "2", "4"]);
        let m = motion_through(&c, &u, 2).unwrap();
        assert_eq!(m.trace(5), u);
        assert!(m.steps().len() < 2 * u.len());
    }

    #[test]
    fn motions_between_positions() {
        let e1 = catalog::e1();
        assert_eq!(motion_between(&e1, 0, 4, 2).unwrap().unwrap().steps(), &[0, 1, 2, 3, 4]);
        assert_eq!(motion_between(&e1, 0, 4, 1).unwrap().unwrap().steps(), &[0, 2, 4]);
        assert_eq!(motion_between(&e1, 3, 3, 2).unwrap().unwrap().steps(), &[3]);
        let e2 = catalog::e2();
        assert_eq!(motion_between(&e2, 0, 3, 2).unwrap(), None);
    }

    #[test]
    fn nets() {
        let e1 = catalog::e1();
        let net = maximal_net(&e1, &e1.full(), 2).unwrap();
        assert_eq!(net.members, cls(&e1, &["0", "2", "4"]));
        assert!(net.maximal);
        assert_eq!(maximal_net(&e1, &e1.full(), 0).unwrap().members, cls(&e1, &["0"]));
        let e2 = catalog::e2();
        assert_eq!(maximal_net(&e2, &e2.full(), 2).unwrap().members, cls(&e2, &["0", "10"]));
        assert_eq!(net_bound(&e1, 1).unwrap(), 3);
        assert!(net_bound(&e1, 2).is_err());
    }

    #[test]
    fn cluster_examples() {
        let e1 = catalog::e1();
        assert_eq!(cluster_position(&e1, &[0, 1, 0, 1, 0], 2).unwrap(), Cluster { position: 0, count: 5 });
        assert_eq!(cluster_position(&e1, &[4, 4, 4], 2).unwrap(), Cluster { position: 4, count: 3 });
        let alt = cluster_position(&e1, &[0, 4, 0, 4], 2).unwrap();
        assert_eq!(alt.count, 2);
        assert!(alt.position == 0 || alt.position == 4);
        assert!(cluster_position(&e1, &[], 2).is_err());
    }

    fn halves_grid() -> (Continuum, Class) {
        let c = real::real_continuum(6, 1, 4).unwrap();
        let mut a = Class::singleton(c.size(), at(&c, "0"));
        for i in 1..=5 {
            a.insert(at_value(&c, &rational::pow2_neg(i)));
        }
        (c, a)
    }

    #[test]
    fn accumulation_and_isolation() {
        let (c, a) = halves_grid();
        let zero = at(&c, "0");
        let half = at(&c, "1/2");
        let acc = accumulation_points(&c, &a, 4).unwrap();
        assert!(acc.contains(zero));
        assert!(!acc.contains(half));
        let iso = isolation_points(&c, &a, 4).unwrap();
        assert!(iso.contains(half));
        assert!(!iso.contains(zero));
        // Z_3(1/2) meets no other member
        let rest = a.difference(&Class::singleton(c.size(), half));
        assert!(c.image(half, 3).unwrap().is_disjoint(&rest));
    }

    #[test]
    fn whole_carrier_accumulates_on_fine_grid() {
        let c = real::real_continuum(3, 1, 2).unwrap();
        let acc = accumulation_points(&c, &c.full(), 2).unwrap();
        assert_eq!(acc, c.full());
    }

    #[test]
    fn convergence_depths() {
        let c = real::real_continuum(9, 1, 8).unwrap();
        let seq: Vec<usize> = (1..=9).map(|i| at_value(&c, &rational::pow2_neg(i))).collect();
        let zero = at(&c, "0");
        assert_eq!(converges_to(&c, &seq, zero).unwrap(), 8);
        assert!(tails_in_neighborhoods(&c, &seq, zero, 8).unwrap());

        let e1 = catalog::e1();
        assert_eq!(converges_to(&e1, &[3, 3, 3], 3).unwrap(), 2);
        assert_eq!(converges_to(&e1, &[0, 4, 0, 4], 0).unwrap(), 0);
        assert!(tails_in_neighborhoods(&e1, &[0, 4, 0, 4], 0, 0).unwrap());
        assert!(!tails_in_neighborhoods(&e1, &[0, 4, 0, 4], 0, 1).unwrap());
    }

    #[test]
    fn extraction_reaches_full_depth() {
        let (c, a) = halves_grid();
        let zero = at(&c, "0");
        let seq = extract_converging_prefix(&c, &a, zero).unwrap().unwrap();
        assert_eq!(converges_to(&c, &seq, zero).unwrap(), c.finest());
        assert!(seq.iter().all(|&t| a.contains(t) && t != zero));
        let half = at(&c, "1/2");
        assert_eq!(extract_converging_prefix(&c, &a, half).unwrap(), None);
    }
}
