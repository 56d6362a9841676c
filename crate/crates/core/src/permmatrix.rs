//! The cyclic-composition matrices `P^(n)`, `Q^(n)` and their ranks.
//!
//! Rows and columns are indexed by `S_n` in canonical (lexicographic) order.
//! `P[π][σ] = 1` iff `σ∘π` is an `n`-cycle; `Q[π][σ] = P[π⁻¹][σ]`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::{dense_coefficients, q_n, GroupAlgebraElement};
use crate::matrix::{random_primes, rank_fraction_free, rank_mod_p, BinaryMatrix};
use crate::perm::{enumerate_cyclic, enumerate_sn, factorial, Permutation, DEFAULT_MAX_DEGREE};

/// Largest order handed to exact elimination by default.
pub const DEFAULT_EXACT_MAX_ORDER: usize = 1000;
/// Largest degree for which [`operator_matrix`] is built.
pub const OPERATOR_MAX_DEGREE: usize = 6;
/// Largest order [`dump_pbm`] accepts.
pub const PBM_MAX_ORDER: usize = 40320;

fn check_degree(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::DegreeOutOfRange { n, max });
    }
    Ok(())
}

pub fn build_p(n: usize) -> Result<BinaryMatrix> {
    check_degree(n, DEFAULT_MAX_DEGREE)?;
    let cycles = enumerate_cyclic(n)?;
    let order = factorial(n);
    // σ∘π is cyclic iff σ = c∘π⁻¹ for some n-cycle c.
    Ok(BinaryMatrix::from_row_fn(order, order, |row, w| {
        let pi_inv = Permutation::unrank(n, row).unwrap().inverse();
        for c in &cycles {
            w.set(c.compose_unchecked(&pi_inv).rank());
        }
    }))
}

pub fn build_q(n: usize) -> Result<BinaryMatrix> {
    check_degree(n, DEFAULT_MAX_DEGREE)?;
    let cycles = enumerate_cyclic(n)?;
    let order = factorial(n);
    // σ∘π⁻¹ is cyclic iff σ = c∘π.
    Ok(BinaryMatrix::from_row_fn(order, order, |row, w| {
        let pi = Permutation::unrank(n, row).unwrap();
        for c in &cycles {
            w.set(c.compose_unchecked(&pi).rank());
        }
    }))
}

/// Matrix of left multiplication by `q_n` on the group algebra: column `g`
/// holds the coefficients of `q_n · g`.
pub fn operator_matrix(n: usize) -> Result<BinaryMatrix> {
    check_degree(n, OPERATOR_MAX_DEGREE)?;
    let q = q_n::<i64>(n)?;
    let basis = enumerate_sn(n)?;
    let order = basis.len();
    let columns: Vec<Vec<i64>> = basis
        .par_iter()
        .map(|g| dense_coefficients(&q.multiply(&GroupAlgebraElement::basis(g)).unwrap()))
        .collect();
    let mut m = BinaryMatrix::zeros(order, order);
    for (g, col) in columns.iter().enumerate() {
        for (h, &c) in col.iter().enumerate() {
            debug_assert!(c == 0 || c == 1);
            if c != 0 {
                m.set(h, g, true);
            }
        }
    }
    Ok(m)
}

/// Exact rank over ℚ by fraction-free elimination on big integers.
pub fn rank_exact(m: &BinaryMatrix) -> Result<usize> {
    rank_exact_capped(m, DEFAULT_EXACT_MAX_ORDER)
}

pub fn rank_exact_capped(m: &BinaryMatrix, max_order: usize) -> Result<usize> {
    let order = m.rows().max(m.cols());
    if order > max_order {
        return Err(Error::MatrixTooLarge {
            order,
            max: max_order,
        });
    }
    Ok(rank_fraction_free(&m.to_dense::<BigInt>()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    ExactFractionFree,
    ExactRational,
    ModularMultiprime,
}

impl std::fmt::Display for RankMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ExactFractionFree => "exact-fraction-free",
            Self::ExactRational => "exact-rational",
            Self::ModularMultiprime => "modular-multiprime",
        })
    }
}

/// Which elimination [`rank_certified`] should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    /// Exact up to degree 6, modular above.
    #[default]
    Auto,
    Exact,
    Modp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConfig {
    pub method: MethodChoice,
    pub num_primes: usize,
    pub seed: u64,
    pub exact_max_order: usize,
    /// Degree 8 (order 40320) needs an explicit opt-in.
    pub allow_degree_8: bool,
}

impl Default for RankConfig {
    fn default() -> Self {
        Self {
            method: MethodChoice::Auto,
            num_primes: 3,
            seed: 0x5eed,
            exact_max_order: DEFAULT_EXACT_MAX_ORDER,
            allow_degree_8: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub n: usize,
    pub rank: usize,
    pub method: RankMethod,
    /// Primes used by the modular method; empty for exact methods.
    pub primes: Vec<u64>,
    /// True when the value is only proven to be a lower bound on the rank over ℚ.
    pub lower_bound_only: bool,
    pub note: String,
}

/// Rank of `P^(n)`, exact for small `n` and multi-prime modular otherwise.
pub fn rank_certified(n: usize, config: &RankConfig) -> Result<RankCertificate> {
    check_degree(n, DEFAULT_MAX_DEGREE)?;
    if n == DEFAULT_MAX_DEGREE && !config.allow_degree_8 {
        return Err(Error::DegreeOutOfRange { n, max: 7 });
    }
    let m = build_p(n)?;
    let use_exact = match config.method {
        MethodChoice::Exact => true,
        MethodChoice::Modp => false,
        MethodChoice::Auto => n <= 6,
    };
    if use_exact {
        let rank = rank_exact_capped(&m, config.exact_max_order)?;
        return Ok(RankCertificate {
            n,
            rank,
            method: RankMethod::ExactFractionFree,
            primes: Vec::new(),
            lower_bound_only: false,
            note: "fraction-free elimination over the integers; exact rank over Q".into(),
        });
    }
    let primes = random_primes(config.num_primes.max(1), config.seed);
    let ranks: Vec<(u64, usize)> = primes
        .par_iter()
        .map(|&p| rank_mod_p(&m, p).map(|r| (p, r)))
        .collect::<Result<_>>()?;
    if ranks.windows(2).any(|w| w[0].1 != w[1].1) {
        return Err(Error::PrimeDisagreement(ranks));
    }
    Ok(RankCertificate {
        n,
        rank: ranks[0].1,
        method: RankMethod::ModularMultiprime,
        primes,
        lower_bound_only: true,
        note: format!(
            "{} random primes agree; a rank mod p never exceeds the rank over Q, so this proves rank >= {} \
             and the upper direction is probabilistic",
            ranks.len(),
            ranks[0].1
        ),
    })
}

/// Raw (P4) portable bitmap bytes; a set entry is a filled (black) pixel.
pub fn to_pbm(m: &BinaryMatrix) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", m.cols(), m.rows()).into_bytes();
    let bytes_per_row = m.cols().div_ceil(8);
    for i in 0..m.rows() {
        let mut row = vec![0u8; bytes_per_row];
        for j in m.ones_in_row(i) {
            row[j / 8] |= 0x80 >> (j % 8);
        }
        out.extend_from_slice(&row);
    }
    out
}

pub fn dump_pbm(m: &BinaryMatrix, path: impl AsRef<Path>) -> Result<()> {
    let order = m.rows().max(m.cols());
    if order > PBM_MAX_ORDER {
        return Err(Error::MatrixTooLarge {
            order,
            max: PBM_MAX_ORDER,
        });
    }
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&to_pbm(m))?;
    w.flush()?;
    Ok(())
}

/// Reads a P1 (ASCII) or P4 (raw) bitmap back into a matrix.
pub fn read_pbm(path: impl AsRef<Path>) -> Result<BinaryMatrix> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut tokens = Vec::new();
    let bad = |msg: &str| {
        Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            msg.to_string(),
        ))
    };
    // Magic, width and height; comments start with '#'.
    while tokens.len() < 3 {
        let mut line = String::new();
        if reader.read_line(&mut line)? == 0 {
            return Err(bad("truncated PBM header"));
        }
        let content = line.split('#').next().unwrap_or("");
        tokens.extend(content.split_whitespace().map(str::to_string));
    }
    let width: usize = tokens[1].parse().map_err(|_| bad("bad width"))?;
    let height: usize = tokens[2].parse().map_err(|_| bad("bad height"))?;
    let mut m = BinaryMatrix::zeros(height, width);
    match tokens[0].as_str() {
        "P4" => {
            let bytes_per_row = width.div_ceil(8);
            let mut buf = vec![0u8; bytes_per_row];
            for i in 0..height {
                reader.read_exact(&mut buf)?;
                for j in 0..width {
                    if buf[j / 8] & (0x80 >> (j % 8)) != 0 {
                        m.set(i, j, true);
                    }
                }
            }
        }
        "P1" => {
            let mut rest = String::new();
            reader.read_to_string(&mut rest)?;
            let bits: Vec<bool> = tokens[3..]
                .iter()
                .flat_map(|t| t.chars())
                .chain(rest.chars())
                .filter(|c| *c == '0' || *c == '1')
                .map(|c| c == '1')
                .collect();
            if bits.len() < width * height {
                return Err(bad("truncated P1 raster"));
            }
            for i in 0..height {
                for j in 0..width {
                    m.set(i, j, bits[i * width + j]);
                }
            }
        }
        _ => return Err(bad("not a PBM file")),
    }
    Ok(m)
}
