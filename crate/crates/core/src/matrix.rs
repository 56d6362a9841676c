//! Bit-packed 0/1 matrices and exact rank computation.
//!
//! Three independent rank routes live here:
//!
//! * [`rank_fraction_free`]: Bareiss elimination over an integral domain,
//!   exact over ℚ when run on big integers.
//! * [`rank_over_field`]: textbook Gauss–Jordan over an exact field.
//! * [`rank_mod_p`]: elimination over `ℤ/pℤ` with 31-bit primes, a lower
//!   bound for the rank over ℚ.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Field, IntegralDomain, Ring};

/// Dense 0/1 matrix stored one bit per entry, rows padded to whole words.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order, order);
        for i in 0..order {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    /// Builds each row independently and in parallel; `fill(i, row)` sets the ones of row `i`.
    pub fn from_row_fn<F>(rows: usize, cols: usize, fill: F) -> Self
    where
        F: Fn(usize, &mut RowWriter<'_>) + Sync,
    {
        let mut m = Self::zeros(rows, cols);
        let wpr = m.words_per_row;
        if wpr > 0 {
            m.bits
                .par_chunks_mut(wpr)
                .enumerate()
                .for_each(|(i, words)| fill(i, &mut RowWriter { words, cols }));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| {
                self.row_words(i)
                    .iter()
                    .map(|w| w.count_ones() as usize)
                    .sum()
            })
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += usize::from(self.get(i, j));
            }
        }
        sums
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.ones_in_row(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn ones_in_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
    }

    /// Copy with rows reordered: row `i` of the result is row `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        let wpr = self.words_per_row;
        for (dst, &src) in order.iter().enumerate() {
            out.bits[dst * wpr..(dst + 1) * wpr].copy_from_slice(self.row_words(src));
        }
        out
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn to_dense<T: Ring>(&self) -> DenseMatrix<T> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                data.push(if self.get(i, j) { T::one() } else { T::zero() });
            }
        }
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 4096 {
            for i in 0..self.rows {
                let line: String = (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect();
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

/// Mutable view of one row while a [`BinaryMatrix`] is being built.
pub struct RowWriter<'a> {
    words: &'a mut [u64],
    cols: usize,
}

impl RowWriter<'_> {
    pub fn set(&mut self, j: usize) {
        assert!(j < self.cols, "column out of bounds");
        self.words[j / 64] |= 1 << (j % 64);
    }
}

/// Row-major dense matrix over an arbitrary ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> DenseMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Rank by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact. With machine integers the minors can overflow;
/// use big integers for anything but tiny inputs.
pub fn rank_fraction_free<T: IntegralDomain>(m: &DenseMatrix<T>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, pivot);
        let (head, tail) = a.data.split_at_mut((rank + 1) * cols);
        let prow = &head[rank * cols..];
        let p = prow[col].clone();
        tail.par_chunks_mut(cols).for_each(|row| {
            let f = row[col].clone();
            for j in col + 1..cols {
                let v = p.clone() * row[j].clone() - f.clone() * prow[j].clone();
                row[j] = v.div_floor(&prev);
            }
            row[col] = T::zero();
        });
        prev = p;
        rank += 1;
    }
    rank
}

/// Rank by Gauss–Jordan elimination over an exact field.
pub fn rank_over_field<T: Field>(m: &DenseMatrix<T>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, pivot);
        let inv = T::one() / a.get(rank, col).clone();
        for j in col..cols {
            let v = a.get(rank, j).clone() * inv.clone();
            a.set(rank, j, v);
        }
        for i in 0..rows {
            if i == rank || a.get(i, col).is_zero() {
                continue;
            }
            let f = a.get(i, col).clone();
            for j in col..cols {
                let v = a.get(i, j).clone() - f.clone() * a.get(rank, j).clone();
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    rank
}

pub const MIN_MODULUS: u64 = 1 << 29;
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes drawn uniformly from `(2^30, 2^31)`, reproducible from `seed`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = Vec::with_capacity(count);
    while primes.len() < count {
        let candidate = rng.gen_range((1u64 << 30)..MAX_MODULUS) | 1;
        if is_prime(candidate) && !primes.contains(&candidate) {
            primes.push(candidate);
        }
    }
    primes
}

fn check_modulus(p: u64) -> Result<()> {
    if p <= MIN_MODULUS || p >= MAX_MODULUS || !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    Ok(())
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank of a 0/1 matrix over `ℤ/pℤ` for a prime `2^29 < p < 2^31`.
pub fn rank_mod_p(m: &BinaryMatrix, p: u64) -> Result<usize> {
    check_modulus(p)?;
    let cols = m.cols();
    let mut data = vec![0u32; m.rows() * cols];
    for (i, row) in data.chunks_mut(cols.max(1)).enumerate().take(m.rows()) {
        for j in m.ones_in_row(i) {
            row[j] = 1;
        }
    }
    Ok(eliminate_mod_p(data, m.rows(), cols, p))
}

/// Rank of an integer matrix over `ℤ/pℤ`; entries are reduced first.
pub fn rank_mod_p_dense(m: &DenseMatrix<i64>, p: u64) -> Result<usize> {
    check_modulus(p)?;
    let data = m
        .data
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u32)
        .collect();
    Ok(eliminate_mod_p(data, m.rows, m.cols, p))
}

// Row echelon elimination on residues in [0, p). Each row update `a -= f * b`
// uses Shoup's precomputed quotient for the fixed multiplier, so the inner
// loop has no division. Rows below the pivot are updated in parallel; each
// update depends only on the pivot row, so the result is independent of the
// number of worker threads.
fn eliminate_mod_p(mut data: Vec<u32>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| data[i * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            let (a, b) = data.split_at_mut(pivot * cols);
            a[rank * cols..(rank + 1) * cols].swap_with_slice(&mut b[..cols]);
        }
        let (head, tail) = data.split_at_mut((rank + 1) * cols);
        let prow = &mut head[rank * cols..];
        let inv = pow_mod(prow[col] as u64, p - 2, p);
        for v in prow[col..].iter_mut() {
            *v = (*v as u64 * inv % p) as u32;
        }
        let prow = &prow[col + 1..];
        tail.par_chunks_mut(cols).for_each(|row| {
            let f = row[col] as u64;
            if f == 0 {
                return;
            }
            row[col] = 0;
            axpy_shoup(&mut row[col + 1..], prow, p - f, p);
        });
        rank += 1;
    }
    rank
}

/// `dst[j] = (dst[j] + w * src[j]) mod p` for `0 <= w < p < 2^31`.
#[inline]
fn axpy_shoup(dst: &mut [u32], src: &[u32], w: u64, p: u64) {
    let wq = (w << 32) / p;
    for (d, &s) in dst.iter_mut().zip(src) {
        let s = s as u64;
        let q = (wq * s) >> 32;
        let mut prod = (w * s).wrapping_sub(q * p);
        if prod >= p {
            prod -= p;
        }
        let mut sum = *d as u64 + prod;
        if sum >= p {
            sum -= p;
        }
        *d = sum as u32;
    }
}
