//! Level-indexed monotone families of classes: descending (π) and
//! ascending (σ). A countable family is truncated to levels `0..=L`; its
//! limit is the last level.

use crate::class::Class;
use crate::continuum::Continuum;
use crate::error::{Error, Result};
use crate::figures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Descending: `A_{n+1} ⊆ A_n`.
    Pi,
    /// Ascending: `A_n ⊆ A_{n+1}`.
    Sigma,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Pi => Kind::Sigma,
            Kind::Sigma => Kind::Pi,
        }
    }
}

/// Shape of the underlying carrier: plain, or the product of two carriers
/// with pair `(i, j)` stored at index `i * right + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Flat(usize),
    Pairs { left: usize, right: usize },
}

impl Shape {
    pub fn size(self) -> usize {
        match self {
            Shape::Flat(n) => n,
            Shape::Pairs { left, right } => left * right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    kind: Kind,
    shape: Shape,
    family: Vec<Class>,
}

impl GradedClass {
    pub fn new(kind: Kind, shape: Shape, family: Vec<Class>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(bad) = family.iter().find(|a| a.universe() != shape.size()) {
            return Err(Error::ClassMismatch {
                expected: shape.size(),
                found: bad.universe(),
            });
        }
        for n in 0..family.len() - 1 {
            let ok = match kind {
                Kind::Pi => family[n + 1].is_subset(&family[n]),
                Kind::Sigma => family[n].is_subset(&family[n + 1]),
            };
            if !ok {
                return Err(Error::NotMonotone(n));
            }
        }
        Ok(GradedClass {
            kind,
            shape,
            family,
        })
    }

    /// The closure family `n ↦ cl_n(X)`, a π-family because the levels nest.
    pub fn closure_family(c: &Continuum, class: &Class) -> Result<Self> {
        let family = c
            .levels()
            .map(|n| figures::closure(c, class, n))
            .collect::<Result<Vec<_>>>()?;
        GradedClass::new(Kind::Pi, Shape::Flat(c.size()), family)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn family(&self) -> &[Class] {
        &self.family
    }

    pub fn finest(&self) -> usize {
        self.family.len() - 1
    }

    pub fn eval(&self, n: usize) -> Result<&Class> {
        self.family.get(n).ok_or(Error::LevelOutOfRange {
            level: n,
            max: self.finest(),
        })
    }

    /// Intersection of a π-family, union of a σ-family: the last level either way.
    pub fn limit(&self) -> &Class {
        self.family.last().expect("nonempty")
    }

    fn check_compatible(&self, other: &GradedClass) -> Result<()> {
        if self.kind != other.kind
            || self.shape != other.shape
            || self.family.len() != other.family.len()
        {
            return Err(Error::KindMismatch);
        }
        Ok(())
    }

    fn pointwise(&self, other: &GradedClass, op: impl Fn(&Class, &Class) -> Class) -> Result<GradedClass> {
        self.check_compatible(other)?;
        let family = self
            .family
            .iter()
            .zip(&other.family)
            .map(|(a, b)| op(a, b))
            .collect();
        GradedClass::new(self.kind, self.shape, family)
    }

    pub fn union(&self, other: &GradedClass) -> Result<GradedClass> {
        self.pointwise(other, Class::union)
    }

    pub fn intersect(&self, other: &GradedClass) -> Result<GradedClass> {
        self.pointwise(other, Class::intersection)
    }

    pub fn complement(&self) -> GradedClass {
        GradedClass {
            kind: self.kind.flip(),
            shape: self.shape,
            family: self.family.iter().map(Class::complement).collect(),
        }
    }

    /// Pointwise cartesian product over the pair carrier.
    pub fn product(&self, other: &GradedClass) -> Result<GradedClass> {
        if self.kind != other.kind || self.family.len() != other.family.len() {
            return Err(Error::KindMismatch);
        }
        let (left, right) = (self.shape.size(), other.shape.size());
        let family = self
            .family
            .iter()
            .zip(&other.family)
            .map(|(a, b)| {
                let mut out = Class::empty(left * right);
                for i in a.iter() {
                    for j in b.iter() {
                        out.insert(i * right + j);
                    }
                }
                out
            })
            .collect();
        GradedClass::new(self.kind, Shape::Pairs { left, right }, family)
    }

    /// Pointwise projection `{ u : (u, v) ∈ A_n }`.
    pub fn domain(&self) -> Result<GradedClass> {
        let Shape::Pairs { left, right } = self.shape else {
            return Err(Error::NotPairCarrier);
        };
        let family = self
            .family
            .iter()
            .map(|a| Class::from_indices(left, a.iter().map(|p| p / right)))
            .collect();
        GradedClass::new(self.kind, Shape::Flat(left), family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn image_family(c: &Continuum, x: usize) -> GradedClass {
        GradedClass::closure_family(c, &crate::class::Class::singleton(c.size(), x)).unwrap()
    }

    fn cls(v: &[usize]) -> Class {
        Class::from_indices(5, v.iter().copied())
    }

    #[test]
    fn union_of_image_families() {
        let e1 = catalog::e1();
        let u = image_family(&e1, 0).union(&image_family(&e1, 4)).unwrap();
        assert_eq!(u.kind(), Kind::Pi);
        assert_eq!(u.family(), &[cls(&[0, 1, 2, 3, 4]), cls(&[0, 1, 2, 3, 4]), cls(&[0, 1, 3, 4])]);
    }

    #[test]
    fn intersect_is_idempotent() {
        let e1 = catalog::e1();
        let a = image_family(&e1, 2);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn sigma_union_of_complements() {
        let e1 = catalog::e1();
        let a = image_family(&e1, 0).complement();
        let b = image_family(&e1, 4).complement();
        let u = a.union(&b).unwrap();
        assert_eq!(u.kind(), Kind::Sigma);
        assert_eq!(u.family(), &[cls(&[]), cls(&[0, 1, 3, 4]), cls(&[0, 1, 2, 3, 4])]);
    }

    #[test]
    fn complement_flips_kind() {
        let e1 = catalog::e1();
        let a = image_family(&e1, 0);
        let c = a.complement();
        assert_eq!(c.kind(), Kind::Sigma);
        assert_eq!(c.family(), &[cls(&[]), cls(&[3, 4]), cls(&[2, 3, 4])]);
        assert_eq!(c.complement(), a);
        assert_eq!(c.limit(), &cls(&[2, 3, 4]));
    }

    #[test]
    fn eval_and_limit() {
        let e1 = catalog::e1();
        let a = image_family(&e1, 0);
        assert_eq!(a.eval(0).unwrap(), &e1.full());
        assert_eq!(a.limit(), &cls(&[0, 1]));
        assert!(a.eval(3).is_err());
    }

    #[test]
    fn kinds_must_match() {
        let e1 = catalog::e1();
        let a = image_family(&e1, 0);
        assert_eq!(a.union(&a.complement()), Err(Error::KindMismatch));
        assert_eq!(a.product(&a.complement()), Err(Error::KindMismatch));
        assert_eq!(a.domain(), Err(Error::NotPairCarrier));
    }

    #[test]
    fn monotonicity_is_enforced() {
        let fam = vec![cls(&[0]), cls(&[0, 1])];
        assert_eq!(GradedClass::new(Kind::Pi, Shape::Flat(5), fam.clone()), Err(Error::NotMonotone(0)));
        assert!(GradedClass::new(Kind::Sigma, Shape::Flat(5), fam).is_ok());
    }

    #[test]
    fn product_and_domain() {
        let single = |x: usize| GradedClass::new(Kind::Pi, Shape::Flat(3), vec![Class::singleton(3, x); 3]).unwrap();
        let p = single(1).product(&single(2)).unwrap();
        assert_eq!(p.shape(), Shape::Pairs { left: 3, right: 3 });
        assert!(p.family().iter().all(|a| a.to_vec() == vec![5]));
        assert_eq!(p.domain().unwrap(), single(1));

        let e1 = catalog::e1();
        let a = image_family(&e1, 1);
        let b = image_family(&e1, 3);
        assert_eq!(a.product(&b).unwrap().domain().unwrap(), a);

        let empty = GradedClass::new(Kind::Pi, Shape::Pairs { left: 2, right: 2 }, vec![Class::empty(4); 2]).unwrap();
        assert!(empty.domain().unwrap().family().iter().all(Class::is_empty));
    }
}
