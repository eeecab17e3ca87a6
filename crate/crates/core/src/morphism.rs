//! Functions between continua given as tables, their level-indexed
//! continuity in the four formulations (pairs, connected sets, motions,
//! preimages of open and closed classes), moduli, and the ε-δ form.

use std::fmt;

use num_traits::Signed;

use crate::class::{all_subsets, Class};
use crate::connectivity::{self, Motion};
use crate::continuum::Continuum;
use crate::error::{Error, Result};
use crate::figures;
use crate::rational::{self, Rational};

#[derive(Debug, Clone)]
pub struct Morphism<'a> {
    source: &'a Continuum,
    target: &'a Continuum,
    map: Vec<usize>,
}

/// `x ↦ a·x + b`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRule {
    pub a: Rational,
    pub b: Rational,
}

impl AffineRule {
    /// Accepts `a*x+b`, `a*x-b`, `a*x`, `x+b`, `x`, `-x` and a bare constant
    /// `b`; coefficients are rationals `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("cannot read affine rule `{text}`"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(xpos) = s.find('x') else {
            return Ok(AffineRule {
                a: rational::int(0),
                b: rational::parse(&s).map_err(|_| bad())?,
            });
        };
        let (head, tail) = (&s[..xpos], &s[xpos + 1..]);
        let a = match head {
            "" | "+" => rational::int(1),
            "-" => rational::int(-1),
            h => rational::parse(h.strip_suffix('*').ok_or_else(bad)?).map_err(|_| bad())?,
        };
        let b = match tail {
            "" => rational::int(0),
            t if t.starts_with('+') => rational::parse(&t[1..]).map_err(|_| bad())?,
            t if t.starts_with('-') => -rational::parse(&t[1..]).map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(AffineRule { a, b })
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.a * x + &self.b
    }
}

impl fmt::Display for AffineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = if self.b.is_negative() {
            format!("-{}", rational::format(&-self.b.clone()))
        } else {
            format!("+{}", rational::format(&self.b))
        };
        write!(f, "{}*x{}", rational::format(&self.a), b)
    }
}

/// Per target level `k`, the least source level `j` with
/// `(x, y) ∈ R_{1,j} ⇒ (F x, F y) ∈ R_{2,k}`, or `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusTable(pub Vec<Option<usize>>);

impl ModulusTable {
    pub fn at(&self, k: usize) -> Option<usize> {
        self.0.get(k).copied().flatten()
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    /// Defined entries never decrease as `k` grows.
    pub fn is_monotone(&self) -> bool {
        let defined: Vec<usize> = self.0.iter().flatten().copied().collect();
        defined.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pushed {
    Motion(Motion),
    /// The first image step that is not an `R_{2,n2}` pair.
    Broken { step: usize, from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonDelta {
    pub epsilon: Rational,
    /// The largest `2^-i`, `i ≤ L_1`, that works for this epsilon.
    pub delta: Option<Rational>,
}

impl<'a> Morphism<'a> {
    pub fn from_table(source: &'a Continuum, target: &'a Continuum, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::SizeMismatch {
                level: 0,
                expected: source.size(),
                found: map.len(),
            });
        }
        for &y in &map {
            target.carrier().check_index(y)?;
        }
        Ok(Morphism { source, target, map })
    }

    /// Materialises a rational function on the source values; every image
    /// must be a target position.
    pub fn from_fn(
        source: &'a Continuum,
        target: &'a Continuum,
        f: impl Fn(&Rational) -> Rational,
    ) -> Result<Self> {
        let mut map = Vec::with_capacity(source.size());
        for x in 0..source.size() {
            let y = f(source.carrier().numeric_value(x)?);
            let j = target
                .carrier()
                .index_of_value(&y)
                .ok_or_else(|| Error::OffCarrier(rational::format(&y)))?;
            map.push(j);
        }
        Ok(Morphism { source, target, map })
    }

    pub fn affine(source: &'a Continuum, target: &'a Continuum, rule: &AffineRule) -> Result<Self> {
        Morphism::from_fn(source, target, |x| rule.apply(x))
    }

    pub fn identity(c: &'a Continuum) -> Self {
        Morphism {
            source: c,
            target: c,
            map: (0..c.size()).collect(),
        }
    }

    pub fn constant(source: &'a Continuum, target: &'a Continuum, y: usize) -> Result<Self> {
        Morphism::from_table(source, target, vec![y; source.size()])
    }

    /// `1` on every monad that meets `|x| < 2^-L_1`, `0` elsewhere.
    pub fn step(source: &'a Continuum, target: &'a Continuum) -> Result<Self> {
        let one = value_index(target, &rational::int(1))?;
        let zero = value_index(target, &rational::int(0))?;
        let bound = rational::pow2_neg(source.finest());
        let mut near = source.empty_class();
        for x in 0..source.size() {
            if source.carrier().numeric_value(x)?.abs() < bound {
                near.union_with(source.monad(x)?);
            }
        }
        let map = (0..source.size())
            .map(|x| if near.contains(x) { one } else { zero })
            .collect();
        Ok(Morphism { source, target, map })
    }

    pub fn source(&self) -> &'a Continuum {
        self.source
    }

    pub fn target(&self) -> &'a Continuum {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self, class: &Class) -> Class {
        Class::from_indices(self.target.size(), class.iter().map(|x| self.map[x]))
    }

    pub fn preimage(&self, class: &Class) -> Class {
        Class::from_indices(
            self.source.size(),
            (0..self.source.size()).filter(|&x| class.contains(self.map[x])),
        )
    }

    /// First `R_{1,j}` pair `(x, y)`, `x ≤ y`, whose image leaves `R_{2,k}`.
    pub fn preserves_at_witness(&self, j: usize, k: usize) -> Result<Option<(usize, usize)>> {
        let r1 = self.source.relation(j)?;
        let r2 = self.target.relation(k)?;
        for x in 0..self.source.size() {
            for y in r1.row(x).iter().filter(|&y| y >= x) {
                if !r2.contains(self.map[x], self.map[y]) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn preserves_at(&self, j: usize, k: usize) -> Result<bool> {
        Ok(self.preserves_at_witness(j, k)?.is_none())
    }

    pub fn modulus(&self) -> ModulusTable {
        ModulusTable(
            self.target
                .levels()
                .map(|k| {
                    self.source
                        .levels()
                        .find(|&j| self.preserves_at(j, k).expect("levels in range"))
                })
                .collect(),
        )
    }

    pub fn is_uniformly_continuous(&self) -> bool {
        self.modulus().is_total()
    }

    /// Least `j` with `F(Z_j(x)) ⊆ Z_k(F x)`.
    pub fn pointwise_modulus(&self, x: usize, k: usize) -> Result<Option<usize>> {
        self.source.carrier().check_index(x)?;
        let target_image = self.target.image(self.map[x], k)?;
        for j in self.source.levels() {
            if self.image(self.source.image(x, j)?).is_subset(target_image) {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Every `R_{1,n1}` edge maps to equal or `R_{2,n2}`-related values.
    /// Walks map to walks, so this is the same as sending every level-`n1`
    /// connected class to a level-`n2` connected class.
    pub fn preserves_connected(&self, n1: usize, n2: usize) -> Result<Option<(usize, usize)>> {
        self.preserves_at_witness(n1, n2)
    }

    /// The literal form: every nonempty connected class of the source has a
    /// connected image. Exhaustive over subsets, so at most
    /// [`figures::EXHAUSTIVE_LIMIT`] source positions.
    pub fn preserves_connected_literal(&self, n1: usize, n2: usize) -> Result<Option<Class>> {
        self.check_exhaustive()?;
        self.target.check_level(n2)?;
        for u in all_subsets(self.source.size()) {
            if connectivity::is_connected_set(self.source, &u, n1)?
                && !connectivity::is_connected_set(self.target, &self.image(&u), n2)?
            {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    pub fn push_motion(&self, m: &Motion, n2: usize) -> Result<Pushed> {
        let m = Motion::new(self.source, m.steps().to_vec(), m.level())?;
        let steps: Vec<usize> = m.steps().iter().map(|&x| self.map[x]).collect();
        match Motion::new(self.target, steps, n2) {
            Ok(pushed) => Ok(Pushed::Motion(pushed)),
            Err(Error::NotAMotion { step, from, to, .. }) => Ok(Pushed::Broken { step, from, to }),
            Err(e) => Err(e),
        }
    }

    fn check_exhaustive(&self) -> Result<()> {
        if self.source.size() > figures::EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge {
                size: self.source.size(),
                max: figures::EXHAUSTIVE_LIMIT,
                hint: "use preserves_connected, which scans edges only",
            });
        }
        Ok(())
    }

    /// A level-`n2` open class of the target whose preimage is not
    /// level-`n1` open, if any.
    pub fn preimage_open_check(&self, n1: usize, n2: usize) -> Result<Option<Class>> {
        self.check_exhaustive()?;
        self.source.check_level(n1)?;
        for x in figures::open_classes(self.target, n2)? {
            if !figures::is_open(self.source, &self.preimage(&x), n1)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// A level-`n2` closed class of the target whose preimage is not
    /// level-`n1` closed, if any. Closed classes are the complements of open
    /// ones, and `F⁻¹(C₂ ∖ X) = C₁ ∖ F⁻¹(X)`.
    pub fn preimage_closed_check(&self, n1: usize, n2: usize) -> Result<Option<Class>> {
        self.check_exhaustive()?;
        self.source.check_level(n1)?;
        for x in figures::open_classes(self.target, n2)? {
            let closed = x.complement();
            if !figures::is_closed(self.source, &self.preimage(&closed), n1)? {
                return Ok(Some(closed));
            }
        }
        Ok(None)
    }

    fn same_shape(&self, other: &Morphism<'_>) -> bool {
        (std::ptr::eq(self.source, other.source) || self.source == other.source)
            && (std::ptr::eq(self.target, other.target) || self.target == other.target)
    }

    /// `|F x − G x| ≤ 2^-k` at every source position.
    pub fn equal_at(&self, other: &Morphism<'_>, k: usize) -> Result<bool> {
        if !self.same_shape(other) {
            return Err(Error::InvalidParameters(
                "functions must share source and target".into(),
            ));
        }
        let t = self.target.carrier();
        let bound = rational::pow2_neg(k);
        for x in 0..self.source.size() {
            let d = rational::abs_diff(t.numeric_value(self.map[x])?, t.numeric_value(other.map[x])?);
            if d > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For each positive epsilon, the largest `δ = 2^-i`, `0 ≤ i ≤ L_1`,
    /// with `d₁(x, a) < δ ⇒ d₂(F x, F a) < ε` for all `x, a`. Smaller δ are
    /// not tried: below the source resolution every finite function passes.
    pub fn epsilon_delta(&self, samples: &[Rational]) -> Result<Vec<EpsilonDelta>> {
        let d1 = self.source.metric().ok_or(Error::NoMetric)?;
        let d2 = self.target.metric().ok_or(Error::NoMetric)?;
        let n = self.source.size();
        let mut out = Vec::with_capacity(samples.len());
        for e in samples {
            if !e.is_positive() {
                return Err(Error::InvalidParameters(format!(
                    "epsilon {} must be positive",
                    rational::format(e)
                )));
            }
            // the smallest source distance whose images are at least e apart
            let mut worst: Option<Rational> = None;
            for x in 0..n {
                for a in 0..n {
                    if d2.distance(self.map[x], self.map[a]).as_ref() >= e {
                        let d = d1.distance(x, a);
                        if worst.as_ref().is_none_or(|w| d.as_ref() < w) {
                            worst = Some(d.into_owned());
                        }
                    }
                }
            }
            let delta = (0..=self.source.finest())
                .map(rational::pow2_neg)
                .find(|delta| worst.as_ref().is_none_or(|w| w >= delta));
            out.push(EpsilonDelta {
                epsilon: e.clone(),
                delta,
            });
        }
        Ok(out)
    }

    pub fn epsilon_delta_check(&self, samples: &[Rational]) -> Result<bool> {
        Ok(self.epsilon_delta(samples)?.iter().all(|r| r.delta.is_some()))
    }

    pub fn push_sequence(&self, seq: &[usize]) -> Vec<usize> {
        seq.iter().map(|&x| self.map[x]).collect()
    }
}

fn value_index(c: &Continuum, q: &Rational) -> Result<usize> {
    c.carrier()
        .index_of_value(q)
        .ok_or_else(|| Error::OffCarrier(rational::format(q)))
}

/// Every total function table from a carrier of `m` positions into one of
/// `n`, in lexicographic order.
pub fn all_tables(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (n as u64).checked_pow(m as u32).expect("table count fits in u64");
    let total = if n == 0 && m > 0 { 0 } else { total };
    (0..total).map(move |mut code| {
        let mut t = vec![0; m];
        for slot in t.iter_mut().rev() {
            *slot = (code % n as u64) as usize;
            code /= n as u64;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::real;
    use rational::{frac, int, pow2_neg};

    fn doubling_pair() -> (Continuum, Continuum) {
        (real::real_continuum(6, 1, 4).unwrap(), real::real_continuum(6, 2, 4).unwrap())
    }

    fn at(c: &Continuum, q: &Rational) -> usize {
        c.carrier().index_of_value(q).unwrap()
    }

    #[test]
    fn affine_rules_parse() {
        let r = AffineRule::parse("2*x+1/2").unwrap();
        assert_eq!((r.a.clone(), r.b.clone()), (int(2), frac(1, 2)));
        assert_eq!(r.apply(&int(1)), frac(5, 2));
        assert_eq!(AffineRule::parse("x").unwrap(), AffineRule { a: int(1), b: int(0) });
        assert_eq!(AffineRule::parse("-x - 3").unwrap(), AffineRule { a: int(-1), b: int(-3) });
        assert_eq!(AffineRule::parse("7").unwrap(), AffineRule { a: int(0), b: int(7) });
        assert_eq!(AffineRule::parse(" 1/4 * x ").unwrap(), AffineRule { a: frac(1, 4), b: int(0) });
        assert!(AffineRule::parse("2x").is_err());
        assert!(AffineRule::parse("x*x").is_err());
        let shown = AffineRule::parse("3*x-1/2").unwrap().to_string();
        assert_eq!(AffineRule::parse(&shown).unwrap(), AffineRule { a: int(3), b: frac(-1, 2) });
    }

    #[test]
    fn tables_are_checked() {
        let e1 = catalog::e1();
        assert!(Morphism::from_table(&e1, &e1, vec![0; 4]).is_err());
        assert!(Morphism::from_table(&e1, &e1, vec![0, 0, 0, 0, 5]).is_err());
        let grid = real::real_continuum(3, 1, 2).unwrap();
        assert!(matches!(
            Morphism::affine(&grid, &grid, &AffineRule::parse("2*x").unwrap()),
            Err(Error::OffCarrier(_))
        ));
    }

    #[test]
    fn doubling_moduli() {
        let (s, t) = doubling_pair();
        let f = Morphism::affine(&s, &t, &AffineRule::parse("2*x").unwrap()).unwrap();
        for k in 0..=3 {
            assert!(f.preserves_at(k + 1, k).unwrap());
        }
        for k in 1..=4 {
            let (x, y) = f.preserves_at_witness(k, k).unwrap().unwrap();
            let d = rational::abs_diff(s.carrier().value(x).unwrap(), s.carrier().value(y).unwrap());
            assert!(d < pow2_neg(k) && d * int(2) >= pow2_neg(k));
        }
        let m = f.modulus();
        assert_eq!(m.at(0), Some(0));
        for k in 1..=3 {
            assert_eq!(m.at(k), Some(k + 1));
        }
        // level 5 of the source does not exist
        assert_eq!(m.at(4), None);
        assert!(!f.is_uniformly_continuous());
        assert!(m.is_monotone());
        assert!(f.preserves_connected(3, 2).unwrap().is_none());
    }

    #[test]
    fn identity_modulus_is_diagonal() {
        let c = real::real_continuum(4, 1, 3).unwrap();
        let id = Morphism::identity(&c);
        assert_eq!(id.modulus(), ModulusTable((0..=3).map(Some).collect()));
        assert!(id.is_uniformly_continuous());
        for k in 0..=3 {
            assert!(id.preserves_at(k, k).unwrap());
        }
    }

    #[test]
    fn step_morphism_shape() {
        let c = real::real_continuum(5, 1, 3).unwrap();
        let f = Morphism::step(&c, &c).unwrap();
        let value = |q: Rational| c.carrier().value(f.apply(at(&c, &q))).unwrap().clone();
        assert_eq!(value(int(0)), int(1));
        assert_eq!(value(frac(1, 2)), int(0));
        assert_eq!(value(pow2_neg(4)), int(1));
        assert_eq!(value(pow2_neg(3)), int(0));
        assert_eq!(f.modulus().at(1), None);
        let (x, y) = f.preserves_connected(3, 3).unwrap().unwrap();
        assert!(c.related(x, y, 3).unwrap() && !c.related(f.apply(x), f.apply(y), 3).unwrap());
        // the boundary edge itself: 3/32 ↦ 1 and 1/8 ↦ 0
        let (a, b) = (at(&c, &frac(3, 32)), at(&c, &frac(1, 8)));
        assert!(c.related(a, b, 3).unwrap());
        assert_eq!((f.apply(a), f.apply(b)), (at(&c, &int(1)), at(&c, &int(0))));
    }

    #[test]
    fn step_morphism_breaks_motions() {
        let c = real::real_continuum(5, 1, 3).unwrap();
        let f = Morphism::step(&c, &c).unwrap();
        let path: Vec<usize> = (0..=5).map(|k| at(&c, &rational::dyadic(k, 5))).collect();
        let m = Motion::new(&c, path, 3).unwrap();
        match f.push_motion(&m, 3).unwrap() {
            Pushed::Broken { step, .. } => assert_eq!(step, 3),
            other => panic!("expected a broken motion, got {other:?}"),
        }
    }

    #[test]
    fn doubling_pushes_motions() {
        let (s, t) = doubling_pair();
        let f = Morphism::affine(&s, &t, &AffineRule::parse("2*x").unwrap()).unwrap();
        let path: Vec<usize> = (-8..=8).map(|k| at(&s, &rational::dyadic(k, 6))).collect();
        for k in 0..=3 {
            let m = Motion::new(&s, path.clone(), k + 1).unwrap();
            assert!(matches!(f.push_motion(&m, k).unwrap(), Pushed::Motion(_)));
        }
        let constant = Motion::new(&s, vec![3; 4], 4).unwrap();
        let g = Morphism::constant(&s, &t, 0).unwrap();
        assert!(matches!(g.push_motion(&constant, 4).unwrap(), Pushed::Motion(_)));
    }

    #[test]
    fn preimage_checks() {
        let e2 = catalog::e2();
        let id = Morphism::identity(&e2);
        assert_eq!(id.preimage_open_check(2, 2).unwrap(), None);
        assert_eq!(id.preimage_closed_check(2, 2).unwrap(), None);

        let grid = real::real_continuum(3, 1, 2).unwrap();
        let range = real::real_on_values(vec![int(0), int(1)], 2).unwrap();
        let f = Morphism::step(&grid, &range).unwrap();
        let open = f.preimage_open_check(2, 2).unwrap().unwrap();
        assert!(figures::is_open(&range, &open, 2).unwrap());
        assert!(f.preimage_closed_check(2, 2).unwrap().is_some());
        assert!(f.preserves_connected(2, 2).unwrap().is_some());

        let big = real::real_continuum(5, 1, 3).unwrap();
        assert!(matches!(Morphism::identity(&big).preimage_open_check(1, 1), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn doubling_preimages_on_small_grids() {
        let s = real::real_continuum(3, 1, 2).unwrap();
        let t = real::real_continuum(3, 2, 2).unwrap();
        let f = Morphism::affine(&s, &t, &AffineRule::parse("2*x").unwrap()).unwrap();
        assert_eq!(f.preimage_open_check(2, 1).unwrap(), None);
        assert_eq!(f.preimage_closed_check(2, 1).unwrap(), None);
    }

    #[test]
    fn function_equality_by_level() {
        let c = real::real_continuum(6, 1, 4).unwrap();
        let t = real::real_continuum(6, 2, 4).unwrap();
        let k = 3;
        let f = Morphism::affine(&c, &t, &AffineRule::parse("x").unwrap()).unwrap();
        let shifted = AffineRule { a: int(1), b: pow2_neg(k + 1) };
        let g = Morphism::affine(&c, &t, &shifted).unwrap();
        assert!(f.equal_at(&f, 6).unwrap());
        assert!(f.equal_at(&g, k).unwrap());
        assert!(!f.equal_at(&g, k + 2).unwrap());

        let step = Morphism::step(&c, &c).unwrap();
        let zero = Morphism::constant(&c, &c, at(&c, &int(0))).unwrap();
        for k in 1..=4 {
            assert!(!step.equal_at(&zero, k).unwrap());
        }
        assert!(step.equal_at(&zero, 0).unwrap());
        assert!(f.equal_at(&step, 1).is_err());
    }

    #[test]
    fn epsilon_delta_examples() {
        let (s, t) = doubling_pair();
        let f = Morphism::affine(&s, &t, &AffineRule::parse("2*x").unwrap()).unwrap();
        let r = f.epsilon_delta(&[frac(1, 4)]).unwrap();
        assert_eq!(r[0].delta, Some(frac(1, 8)));
        let id = Morphism::identity(&s);
        for i in 0..=4 {
            assert_eq!(id.epsilon_delta(&[pow2_neg(i)]).unwrap()[0].delta, Some(pow2_neg(i)));
        }
        let step = Morphism::step(&s, &s).unwrap();
        assert_eq!(step.epsilon_delta(&[frac(1, 2)]).unwrap()[0].delta, None);
        assert!(!step.epsilon_delta_check(&[frac(1, 2)]).unwrap());
        assert!(f.epsilon_delta(&[int(0)]).is_err());
        let e1 = catalog::e1();
        assert_eq!(Morphism::identity(&e1).epsilon_delta(&[int(1)]), Err(Error::NoMetric));
    }

    #[test]
    fn pointwise_and_uniform_moduli_agree() {
        let (s, t) = doubling_pair();
        let f = Morphism::affine(&s, &t, &AffineRule::parse("2*x").unwrap()).unwrap();
        let m = f.modulus();
        for k in t.levels() {
            let pointwise: Option<Vec<usize>> = (0..s.size()).map(|x| f.pointwise_modulus(x, k).unwrap()).collect();
            assert_eq!(pointwise.and_then(|p| p.into_iter().max()), m.at(k));
        }
    }

    #[test]
    fn edgewise_matches_literal_connectedness() {
        let path3 = catalog::absdiff_within(&[0, 1, 2], &[2, 1]);
        for table in all_tables(3, 3) {
            let f = Morphism::from_table(&path3, &path3, table).unwrap();
            for n1 in path3.levels() {
                for n2 in path3.levels() {
                    assert_eq!(
                        f.preserves_connected(n1, n2).unwrap().is_none(),
                        f.preserves_connected_literal(n1, n2).unwrap().is_none()
                    );
                }
            }
        }
    }

    #[test]
    fn table_enumeration() {
        assert_eq!(all_tables(2, 3).count(), 9);
        assert_eq!(all_tables(2, 3).nth(5), Some(vec![1, 2]));
        assert_eq!(all_tables(0, 4).count(), 1);
    }
}
