//! The group algebra of `S_n` with coefficients in a commutative ring.
//!
//! Elements are sparse maps from the canonical rank of a permutation to its
//! coefficient; absent keys are zero.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{enumerate_cyclic, enumerate_sn, factorial, Permutation, DEFAULT_MAX_DEGREE};
use crate::scalar::Ring;
use crate::young::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement<T> {
    degree: usize,
    coeffs: BTreeMap<usize, T>,
}

impl<T: Ring> GroupAlgebraElement<T> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector of a single permutation.
    pub fn basis(p: &Permutation) -> Self {
        Self::from_terms(p.degree(), [(p.clone(), T::one())])
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Permutation, T)>) -> Self {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            assert_eq!(
                p.degree(),
                degree,
                "term degree differs from element degree"
            );
            out.add_term(p.rank(), c);
        }
        out
    }

    fn add_term(&mut self, key: usize, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, p: &Permutation) -> T {
        self.coeffs.get(&p.rank()).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of the permutation with canonical rank `rank`.
    pub fn coefficient_at(&self, rank: usize) -> T {
        self.coeffs.get(&rank).cloned().unwrap_or_else(T::zero)
    }

    /// Number of nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Permutation, &T)> + '_ {
        self.coeffs
            .iter()
            .map(|(&r, c)| (Permutation::unrank(self.degree, r).expect("stored rank"), c))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.degree);
        for (&k, c) in &self.coeffs {
            out.add_term(k, c.clone() * s.clone());
        }
        out
    }

    /// Convolution product `Σ a_p b_q (p ∘ q)`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let left: Vec<_> = self.terms().collect();
        let right: Vec<_> = rhs.terms().collect();
        let mut out = Self::zero(self.degree);
        for (p, a) in &left {
            for (q, b) in &right {
                out.add_term(p.compose_unchecked(q).rank(), (*a).clone() * (*b).clone());
            }
        }
        Ok(out)
    }

    /// True iff the element commutes with every permutation of its degree.
    pub fn is_central(&self) -> Result<bool> {
        self.is_central_capped(DEFAULT_MAX_DEGREE)
    }

    pub fn is_central_capped(&self, max_degree: usize) -> Result<bool>
    where
        T: Send + Sync,
    {
        let group = enumerate_sn(self.degree).and_then(|g| {
            if self.degree > max_degree {
                Err(Error::DegreeOutOfRange {
                    n: self.degree,
                    max: max_degree,
                })
            } else {
                Ok(g)
            }
        })?;
        Ok(group.par_iter().all(|x| {
            let bx = Self::basis(x);
            bx.multiply(self).unwrap() == self.multiply(&bx).unwrap()
        }))
    }

    fn check_degree(&self, rhs: &Self) -> Result<()> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: rhs.degree,
            });
        }
        Ok(())
    }
}

/// The sum of all `n`-cycles.
pub fn q_n<T: Ring>(n: usize) -> Result<GroupAlgebraElement<T>> {
    let cycles = enumerate_cyclic(n)?;
    Ok(GroupAlgebraElement::from_terms(
        n,
        cycles.into_iter().map(|c| (c, T::one())),
    ))
}

/// The sum of all permutations of cycle type `mu`.
pub fn class_sum<T: Ring>(mu: &Partition) -> Result<GroupAlgebraElement<T>> {
    let n = mu.weight();
    let members = enumerate_sn(n)?
        .into_iter()
        .filter(|p| p.cycle_type() == *mu)
        .map(|p| (p, T::one()));
    Ok(GroupAlgebraElement::from_terms(n, members))
}

/// Coefficient vector of an element in the canonical basis order.
pub fn dense_coefficients<T: Ring>(a: &GroupAlgebraElement<T>) -> Vec<T> {
    (0..factorial(a.degree()))
        .map(|r| a.coefficient_at(r))
        .collect()
}
