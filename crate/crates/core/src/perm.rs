//! Permutations of `{1..n}`.
//!
//! Points are stored 0-based; everything user-facing (JSON, `Display`,
//! constructors taking images) is 1-based. Composition is right-to-left:
//! `compose(s, p)(i) = s(p(i))`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::young::Partition;

/// Largest degree for which full enumeration of `S_n` is allowed by default.
pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images, e.g. `[2, 3, 1]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 1..={n}"
                )));
            }
            seen[img - 1] = true;
            zero_based.push(img - 1);
        }
        Ok(Self { images: zero_based })
    }

    /// Builds a permutation of degree `n` from disjoint cycles written with 1-based points.
    ///
    /// `from_cycles(4, &[&[1, 2], &[3, 4]])` is `(1 2)(3 4)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &point) in cycle.iter().enumerate() {
                if point == 0 || point > n || touched[point - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle {cycle:?} is not disjoint or out of range for degree {n}"
                    )));
                }
                touched[point - 1] = true;
                let next = cycle[(idx + 1) % cycle.len()];
                images[point - 1] = next - 1;
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ rhs`: apply `rhs` first, then `self`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        check_degrees(self, rhs)?;
        Ok(self.compose_unchecked(rhs))
    }

    pub(crate) fn compose_unchecked(&self, rhs: &Self) -> Self {
        Self {
            images: rhs.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// `x ∘ self ∘ x⁻¹`.
    pub fn conjugate_by(&self, x: &Self) -> Result<Self> {
        check_degrees(self, x)?;
        Ok(x.compose_unchecked(&self.compose_unchecked(&x.inverse())))
    }

    /// Cycle lengths, sorted in weakly decreasing order.
    pub fn cycle_type(&self) -> Partition {
        let mut lengths = self.cycle_lengths();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(lengths)
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// True iff the permutation is a single cycle through all `n` points.
    pub fn is_cyclic(&self) -> bool {
        let n = self.images.len();
        let mut i = self.images[0];
        let mut len = 1;
        while i != 0 {
            i = self.images[i];
            len += 1;
        }
        len == n
    }

    /// Sign as `+1` or `-1`.
    pub fn sign(&self) -> i32 {
        let even_cycles = self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Position of the permutation in the lexicographic order of image sequences.
    pub fn rank(&self) -> usize {
        lehmer_rank(&self.images)
    }

    pub fn unrank(n: usize, rank: usize) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(Error::DegreeOutOfRange { n, max: 20 });
        }
        let total = factorial(n);
        if rank >= total {
            return Err(Error::RankOutOfRange { rank, total });
        }
        let mut available: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        let mut r = rank;
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let digit = r / f;
            r %= f;
            images.push(available.remove(digit));
        }
        Ok(Self { images })
    }
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

/// Lehmer-code rank of a 0-based image sequence.
pub(crate) fn lehmer_rank(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&j| j < images[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// `n!` as a machine integer. Panics on overflow, so only use for small `n`.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All of `S_n` in lexicographic order of image sequences, capped at [`DEFAULT_MAX_DEGREE`].
pub fn enumerate_sn(n: usize) -> Result<Vec<Permutation>> {
    enumerate_sn_capped(n, DEFAULT_MAX_DEGREE)
}

pub fn enumerate_sn_capped(n: usize, max_degree: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > max_degree {
        return Err(Error::DegreeOutOfRange { n, max: max_degree });
    }
    let mut out = Vec::with_capacity(factorial(n));
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        if !next_lex(&mut current) {
            break;
        }
    }
    Ok(out)
}

// Narayana's next-permutation step; false once the last permutation is reached.
fn next_lex(v: &mut [usize]) -> bool {
    let Some(i) = (0..v.len().saturating_sub(1))
        .rev()
        .find(|&i| v[i] < v[i + 1])
    else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// The `(n-1)!` permutations consisting of one `n`-cycle, sorted by rank.
pub fn enumerate_cyclic(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > 20 {
        return Err(Error::DegreeOutOfRange { n, max: 20 });
    }
    // Every n-cycle is (0 a_1 ... a_{n-1}) for a unique ordering of the other points.
    let mut order: Vec<usize> = (1..n).collect();
    let mut out = Vec::with_capacity(factorial(n - 1));
    loop {
        let mut images = vec![0; n];
        let mut prev = 0;
        for &next in &order {
            images[prev] = next;
            prev = next;
        }
        images[prev] = 0;
        out.push(Permutation { images });
        if !next_lex(&mut order) {
            break;
        }
    }
    out.sort_unstable_by_key(Permutation::rank);
    Ok(out)
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; fixed points are omitted and the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        let t = p(&[2, 1, 3]);
        let c = p(&[2, 3, 1]);
        assert_eq!(id.compose(&c).unwrap(), c);
        assert_eq!(t.compose(&t).unwrap(), id);
        assert_eq!(c.compose(&t).unwrap().images(), vec![3, 2, 1]);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
        assert!(a.conjugate_by(&b).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(4).inverse().is_identity());
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(
            c.inverse(),
            Permutation::from_cycles(3, &[&[1, 3, 2]]).unwrap()
        );
        assert_eq!(p(&[3, 1, 2]).inverse().images(), vec![2, 3, 1]);
    }

    #[test]
    fn cycle_type_and_cyclicity() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(c.cycle_type().parts(), &[3]);
        assert_eq!(p(&[2, 1, 4, 3]).cycle_type().parts(), &[2, 2]);

        assert!(Permutation::identity(1).is_cyclic());
        assert!(!Permutation::identity(3).is_cyclic());
        assert!(!p(&[2, 1, 4, 3]).is_cyclic());
        assert!(c.is_cyclic());
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(enumerate_sn(1).unwrap(), vec![Permutation::identity(1)]);
        let s2: Vec<_> = enumerate_sn(2)
            .unwrap()
            .iter()
            .map(Permutation::images)
            .collect();
        assert_eq!(s2, vec![vec![1, 2], vec![2, 1]]);
        let s3 = enumerate_sn(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0].images(), vec![1, 2, 3]);
        assert_eq!(s3[5].images(), vec![3, 2, 1]);
        assert!(enumerate_sn(0).is_err());
        assert!(enumerate_sn(9).is_err());
    }

    #[test]
    fn rank_unrank_examples() {
        assert_eq!(Permutation::identity(5).rank(), 0);
        assert_eq!(Permutation::unrank(3, 5).unwrap().images(), vec![3, 2, 1]);
        assert_eq!(Permutation::unrank(4, 13).unwrap().rank(), 13);
        assert!(matches!(
            Permutation::unrank(3, 6),
            Err(Error::RankOutOfRange { rank: 6, total: 6 })
        ));
    }

    #[test]
    fn rank_matches_enumeration_index() {
        for (i, perm) in enumerate_sn(5).unwrap().iter().enumerate() {
            assert_eq!(perm.rank(), i);
        }
    }

    #[test]
    fn cyclic_enumeration() {
        assert_eq!(enumerate_cyclic(1).unwrap(), vec![Permutation::identity(1)]);
        assert_eq!(enumerate_cyclic(2).unwrap(), vec![p(&[2, 1])]);
        assert_eq!(enumerate_cyclic(4).unwrap().len(), 6);
        for n in 1..=6 {
            let direct = enumerate_cyclic(n).unwrap();
            let filtered: Vec<_> = enumerate_sn(n)
                .unwrap()
                .into_iter()
                .filter(Permutation::is_cyclic)
                .collect();
            assert_eq!(direct, filtered, "n = {n}");
        }
    }

    #[test]
    fn conjugation_examples() {
        let x = p(&[3, 1, 4, 2]);
        let q = p(&[2, 1, 3, 4]);
        assert_eq!(q.conjugate_by(&Permutation::identity(4)).unwrap(), q);
        assert!(Permutation::identity(4)
            .conjugate_by(&x)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn rejects_invalid_images() {
        assert!(Permutation::from_images(&[]).is_err());
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[1, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn json_is_one_based_images() {
        let perm = p(&[2, 3, 1]);
        assert_eq!(serde_json::to_string(&perm).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, perm);
        assert!(serde_json::from_str::<Permutation>("[2,2,1]").is_err());
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(p(&[2, 1, 4, 3]).to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            (0..factorial(n)).prop_map(move |r| Permutation::unrank(n, r).unwrap())
        }

        fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
            (1usize..=7).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
        }

        proptest! {
            #[test]
            fn group_laws((a, b, c) in triple()) {
                let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
                let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
                prop_assert_eq!(ab_c, a_bc);
                prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
                prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
            }

            #[test]
            fn conjugation_preserves_cycle_type((x, q, _) in triple()) {
                prop_assert_eq!(q.conjugate_by(&x).unwrap().cycle_type(), q.cycle_type());
            }

            #[test]
            fn rank_roundtrip((a, _, _) in triple()) {
                let n = a.degree();
                prop_assert_eq!(Permutation::unrank(n, a.rank()).unwrap(), a);
            }

            #[test]
            fn composition_is_pointwise((a, b, _) in triple()) {
                let ab = a.compose(&b).unwrap();
                for i in 1..=a.degree() {
                    prop_assert_eq!(ab.apply(i), a.apply(b.apply(i)));
                }
            }
        }
    }
}
