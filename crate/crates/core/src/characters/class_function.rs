use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::SuperclassPartition;
use crate::scalars::{Cyclotomic, Rational};

/// Shape shared by all superclass functions of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLayout {
    pub group_order: usize,
    /// Superclass sizes; class 0 is `{1}`.
    pub sizes: Vec<usize>,
    /// Ambient cyclotomic order of all values.
    pub order: u32,
}

/// A function on `G` constant on superclasses, stored per superclass.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    layout: Arc<ClassLayout>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(layout: Arc<ClassLayout>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != layout.sizes.len() {
            return Err(Error::Usage(format!(
                "{} values for {} superclasses",
                values.len(),
                layout.sizes.len()
            )));
        }
        let values = values
            .into_iter()
            .map(|v| v.lift(layout.order))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { layout, values })
    }

    pub fn constant(layout: Arc<ClassLayout>, c: i64) -> Self {
        let values = vec![Cyclotomic::from_int(layout.order, c); layout.sizes.len()];
        ClassFunction { layout, values }
    }

    pub fn zero(layout: Arc<ClassLayout>) -> Self {
        Self::constant(layout, 0)
    }

    /// `|G|` at the identity, 0 elsewhere.
    pub fn regular(layout: Arc<ClassLayout>) -> Self {
        let mut f = Self::zero(layout);
        f.values[0] = Cyclotomic::from_int(f.layout.order, f.layout.group_order as i64);
        f
    }

    /// The indicator function of one superclass.
    pub fn indicator(layout: Arc<ClassLayout>, class: usize) -> Self {
        let mut f = Self::zero(layout);
        f.values[class] = Cyclotomic::one(f.layout.order);
        f
    }

    pub fn layout(&self) -> &Arc<ClassLayout> {
        &self.layout
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at an element, looked up through its superclass.
    pub fn eval(&self, partition: &SuperclassPartition, element: usize) -> &Cyclotomic {
        &self.values[partition.class_of[element] as usize]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::Usage(
                "class functions live on different groups".into(),
            ));
        }
        Ok(())
    }

    fn zip(
        &self,
        other: &Self,
        op: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<Self> {
        self.check(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(ClassFunction {
            layout: self.layout.clone(),
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let values = self.values.iter().map(|v| v * c).collect();
        ClassFunction {
            layout: self.layout.clone(),
            values,
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let values = self.values.iter().map(|v| v.scale(r)).collect();
        ClassFunction {
            layout: self.layout.clone(),
            values,
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            layout: self.layout.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }
}

/// `(f1, f2) = |G|^{-1} sum_g f1(g) conj(f2(g))`, weighting each superclass by its size.
pub fn inner_product(f1: &ClassFunction, f2: &ClassFunction) -> Result<Cyclotomic> {
    f1.check(f2)?;
    let layout = &f1.layout;
    let mut total = Cyclotomic::zero(layout.order);
    for ((a, b), &size) in f1.values.iter().zip(&f2.values).zip(&layout.sizes) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        total = &total + &(a * &b.conj()).scale(&Rational::from_integer(BigInt::from(size)));
    }
    let inv = Rational::new(BigInt::from(1), BigInt::from(layout.group_order));
    debug_assert!(!inv.is_zero());
    Ok(total.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout() -> Arc<ClassLayout> {
        // the two-class coarse theory of a group of order 8
        Arc::new(ClassLayout {
            group_order: 8,
            sizes: vec![1, 7],
            order: 2,
        })
    }

    #[test]
    fn coarse_theory_products() {
        let one = ClassFunction::constant(layout(), 1);
        let reg = ClassFunction::regular(layout());
        let chi2 = reg.sub(&one).unwrap();
        assert_eq!(
            chi2.values(),
            &[Cyclotomic::from_int(2, 7), Cyclotomic::from_int(2, -1)]
        );
        assert_eq!(inner_product(&one, &one).unwrap(), Cyclotomic::one(2));
        assert_eq!(inner_product(&reg, &one).unwrap(), Cyclotomic::one(2));
        assert_eq!(
            inner_product(&chi2, &chi2).unwrap(),
            Cyclotomic::from_int(2, 7)
        );
        assert!(inner_product(&chi2, &one).unwrap().is_zero());
    }

    #[test]
    fn hermitian() {
        let l = Arc::new(ClassLayout {
            group_order: 3,
            sizes: vec![1, 1, 1],
            order: 3,
        });
        let f = ClassFunction::new(
            l.clone(),
            vec![
                Cyclotomic::one(3),
                Cyclotomic::root_of_unity(3, 1),
                Cyclotomic::root_of_unity(3, 2),
            ],
        )
        .unwrap();
        let g = ClassFunction::new(
            l,
            vec![
                Cyclotomic::from_int(3, 2),
                Cyclotomic::one(3),
                Cyclotomic::zero(3),
            ],
        )
        .unwrap();
        assert_eq!(
            inner_product(&g, &f).unwrap(),
            inner_product(&f, &g).unwrap().conj()
        );
    }

    #[test]
    fn layout_mismatch() {
        let other = Arc::new(ClassLayout {
            group_order: 8,
            sizes: vec![1, 1, 6],
            order: 2,
        });
        let a = ClassFunction::constant(layout(), 1);
        let b = ClassFunction::constant(other, 1);
        assert!(matches!(inner_product(&a, &b), Err(Error::Usage(_))));
    }
}
