//! Irreducible characters of `S_n` through the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::young::{partitions_of, rim_hooks, syt_count, Partition};

/// Largest `n` for which [`character_table`] is built by default.
pub const DEFAULT_TABLE_MAX_DEGREE: usize = 10;

/// Evaluates `χ_λ(α)` with a cache keyed by `(λ, α)`.
///
/// The cache is owned by the evaluator, so concurrent callers each use their own.
#[derive(Debug, Default)]
pub struct MnEvaluator {
    cache: HashMap<(Partition, Partition), BigInt>,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn character(&mut self, lam: &Partition, alpha: &Partition) -> Result<BigInt> {
        if lam.weight() != alpha.weight() {
            return Err(Error::WeightMismatch {
                lambda: lam.weight(),
                alpha: alpha.weight(),
            });
        }
        Ok(self.eval(lam, alpha))
    }

    fn eval(&mut self, lam: &Partition, alpha: &Partition) -> BigInt {
        if alpha.is_empty() {
            // Only the empty shape has weight 0; its character on the empty class is 1.
            return BigInt::one();
        }
        let key = (lam.clone(), alpha.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let first = alpha.parts()[0];
        let rest = alpha.without_largest();
        let mut total = BigInt::zero();
        for hook in rim_hooks(lam, first) {
            let sub = self.eval(&hook.residual, &rest);
            if hook.sign() > 0 {
                total += sub;
            } else {
                total -= sub;
            }
        }
        self.cache.insert(key, total.clone());
        total
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }
}

/// `χ_λ` on the class of cycle type `alpha`, with a fresh cache.
pub fn mn_character(lam: &Partition, alpha: &Partition) -> Result<BigInt> {
    MnEvaluator::new().character(lam, alpha)
}

/// `χ_λ` on an `n`-cycle: `(-1)^(rows-1)` on hooks and 0 otherwise.
pub fn character_at_ncycle(lam: &Partition) -> Result<BigInt> {
    if lam.is_hook()? {
        let sign = if (lam.len() - 1).is_multiple_of(2) {
            1
        } else {
            -1
        };
        Ok(BigInt::from(sign))
    } else {
        Ok(BigInt::zero())
    }
}

/// Dimension of the Specht module `W^λ`, i.e. the number of standard tableaux of shape λ.
pub fn specht_dim(lam: &Partition) -> BigUint {
    syt_count(lam)
}

/// Size of the conjugacy class of cycle type `mu`: `n! / Π i^{m_i} m_i!`.
pub fn class_size(mu: &Partition) -> BigUint {
    let n_fact: BigUint = (1..=mu.weight()).map(BigUint::from).product();
    let centralizer: BigUint = mu
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(size, &m)| {
            let fact: BigUint = (1..=m).map(BigUint::from).product();
            BigUint::from(size).pow(m as u32) * fact
        })
        .product();
    n_fact / centralizer
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    /// Row labels: irreducibles in reverse-lexicographic order, `(n)` first.
    pub partitions: Vec<Partition>,
    /// Column labels: cycle types in lexicographic order, the identity class `(1^n)` first.
    pub classes: Vec<Partition>,
    pub values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn value(&self, row: usize, col: usize) -> &BigInt {
        &self.values[row][col]
    }

    /// CSV with a header of cycle types and one labelled row per irreducible.
    pub fn to_csv(&self) -> String {
        let label = |p: &Partition| {
            p.parts()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::from("lambda\\mu");
        for mu in &self.classes {
            write!(out, ",{}", label(mu)).unwrap();
        }
        out.push('\n');
        for (lam, row) in self.partitions.iter().zip(&self.values) {
            out.push_str(&label(lam));
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    character_table_capped(n, DEFAULT_TABLE_MAX_DEGREE)
}

pub fn character_table_capped(n: usize, max_degree: usize) -> Result<CharacterTable> {
    if n == 0 || n > max_degree {
        return Err(Error::DegreeOutOfRange { n, max: max_degree });
    }
    let partitions = partitions_of(n);
    let classes: Vec<Partition> = partitions.iter().rev().cloned().collect();
    let values = partitions
        .par_iter()
        .map(|lam| {
            let mut mn = MnEvaluator::new();
            classes.iter().map(|mu| mn.eval(lam, mu)).collect()
        })
        .collect();
    Ok(CharacterTable {
        n,
        partitions,
        classes,
        values,
    })
}
