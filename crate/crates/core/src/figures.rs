//! Figures, separability, level-indexed closure and interior, and the
//! open/closed classification.
//!
//! Closure at level `n` is the level-`n` image of a class. It is *not*
//! idempotent at a fixed level; the exact idempotence of the infinite model
//! survives as the graded containment `cl_n(cl_n X) ⊆ cl_{n−1} X`.

use std::collections::BTreeSet;

use crate::class::{all_subsets, Class};
use crate::connectivity;
use crate::continuum::Continuum;
use crate::error::{Error, Result};

/// Largest carrier accepted by [`open_family`].
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Saturation of `class` by the limit partition.
pub fn figure_of(c: &Continuum, class: &Class) -> Result<Class> {
    c.check_class(class)?;
    let mut out = c.empty_class();
    for x in class.iter() {
        out.union_with(c.monad(x)?);
    }
    Ok(out)
}

pub fn is_figure(c: &Continuum, class: &Class) -> Result<bool> {
    Ok(&figure_of(c, class)? == class)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparabilityAnswer {
    pub separable: bool,
    /// Least level whose images of the two classes are disjoint.
    pub level: Option<usize>,
}

/// Scans levels upward for one where the level images of `x` and `y` are
/// disjoint. Level images are the canonical separators.
pub fn separable(c: &Continuum, x: &Class, y: &Class) -> Result<SeparabilityAnswer> {
    c.check_class(x)?;
    c.check_class(y)?;
    for n in c.levels() {
        if c.level_figure(x, n)?.is_disjoint(&c.level_figure(y, n)?) {
            return Ok(SeparabilityAnswer {
                separable: true,
                level: Some(n),
            });
        }
    }
    Ok(SeparabilityAnswer {
        separable: false,
        level: None,
    })
}

pub fn closure(c: &Continuum, class: &Class, n: usize) -> Result<Class> {
    c.level_figure(class, n)
}

/// `C ∖ cl_n(C ∖ X)`
pub fn interior(c: &Continuum, class: &Class, n: usize) -> Result<Class> {
    c.check_class(class)?;
    Ok(closure(c, &class.complement(), n)?.complement())
}

pub fn is_closed(c: &Continuum, class: &Class, n: usize) -> Result<bool> {
    Ok(&closure(c, class, n)? == class)
}

pub fn is_open(c: &Continuum, class: &Class, n: usize) -> Result<bool> {
    c.check_class(class)?;
    is_closed(c, &class.complement(), n)
}

pub fn is_clopen(c: &Continuum, class: &Class, n: usize) -> Result<bool> {
    Ok(is_closed(c, class, n)? && is_open(c, class, n)?)
}

/// Least level-`n` closed superset, by iterating the level image to a
/// fixed point.
pub fn closed_hull(c: &Continuum, class: &Class, n: usize) -> Result<Class> {
    let mut current = class.clone();
    loop {
        let next = closure(c, &current, n)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

pub fn is_neighborhood(c: &Continuum, class: &Class, x: usize, n: usize) -> Result<bool> {
    c.carrier().check_index(x)?;
    Ok(interior(c, class, n)?.contains(x))
}

/// Every level-`n` open class, found by running [`interior`] over every
/// subset of the carrier and keeping the results that are open at level `n`.
///
/// Raw interiors are not closed under unions at a fixed level (on E1 at
/// level 2, `int(C∖{0}) ∪ int(C∖{2}) = {0,2,3,4}` has no preimage), so only
/// the interiors that are themselves open are collected; these are exactly
/// the open classes, and they form a topology.
pub fn open_family(c: &Continuum, n: usize) -> Result<BTreeSet<Class>> {
    if c.size() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            size: c.size(),
            max: EXHAUSTIVE_LIMIT,
            hint: "test individual classes with is_open instead",
        });
    }
    c.check_level(n)?;
    let mut family = BTreeSet::new();
    for x in all_subsets(c.size()) {
        let int = interior(c, &x, n)?;
        if is_open(c, &int, n)? {
            family.insert(int);
        }
    }
    Ok(family)
}

/// Level-`n` open classes generated as unions of level-`n` components. Same
/// family as [`open_family`] without the subset scan; needs at most 20
/// components.
pub fn open_classes(c: &Continuum, n: usize) -> Result<Vec<Class>> {
    let comps = connectivity::components(c, &c.full(), n)?;
    if comps.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            size: comps.len(),
            max: EXHAUSTIVE_LIMIT,
            hint: "too many level components to enumerate their unions",
        });
    }
    Ok((0..1u64 << comps.len())
        .map(|mask| {
            let mut out = c.empty_class();
            for (i, comp) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    out.union_with(comp);
                }
            }
            out
        })
        .collect())
}
