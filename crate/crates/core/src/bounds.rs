//! Closed-form state-complexity bounds for converting two-way DFAs to
//! unambiguous automata, and the asymptotic growth of the rank bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// π to 50 decimal places.
const PI_50: &str = "314159265358979323846264338327950288419716939937510";
/// √3 to 50 decimal places.
const SQRT3_50: &str = "173205080756887729352744634150587236694280525381038";
/// The embedded constants carry 50 decimals, so requests are capped a little below.
pub const MAX_RATIO_DIGITS: u32 = 45;

/// `C(n, k)`, and 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(2n-2, n-1)`, the rank of the `n`-th cyclic-composition matrix.
pub fn central_binomial_rank(n: u64) -> BigUint {
    assert!(n >= 1);
    binomial(2 * n - 2, n - 1)
}

/// `Σ_{k=1}^{n} C(n,k-1) C(n,k) f(k)`.
fn weighted_sum(n: u64, f: impl Fn(u64) -> BigUint) -> BigUint {
    (1..=n)
        .map(|k| binomial(n, k - 1) * binomial(n, k) * f(k))
        .sum()
}

/// Rank of the communication matrix for `n`-state two-way DFAs.
pub fn bound_new(n: u64) -> BigUint {
    weighted_sum(n, central_binomial_rank)
}

/// The older lower bound using `2^(k-1)` in place of the exact ranks.
pub fn bound_earlier(n: u64) -> BigUint {
    weighted_sum(n, |k| BigUint::one() << (k - 1))
}

/// The known upper bound, with `k!` in place of the ranks.
pub fn bound_upper(n: u64) -> BigUint {
    weighted_sum(n, |k| (1..=k).map(BigUint::from).product())
}

/// `Σ_k C(n,k-1) C(n,k) ranks[k-1]` for caller-supplied per-block ranks.
pub fn rank_conversion(n: u64, ranks: &[BigUint]) -> BigUint {
    assert!(
        ranks.len() as u64 >= n,
        "need a rank for every block size 1..=n"
    );
    weighted_sum(n, |k| ranks[(k - 1) as usize].clone())
}

/// `Σ_{k=1}^{n} C(n-1,k-1)^2`: the squared dimensions of the hook-shaped irreducibles.
pub fn hook_dimension_square_sum(n: u64) -> BigUint {
    (1..=n).map(|k| binomial(n - 1, k - 1).pow(2)).sum()
}

/// One-way DFA size sufficient for an `n`-state two-way DFA: `n(n^n - (n-1)^n) + 1`.
pub fn dfa_bound(n: u64) -> BigUint {
    let nn = BigUint::from(n).pow(n as u32);
    let mm = BigUint::from(n - 1).pow(n as u32);
    BigUint::from(n) * (nn - mm) + 1u32
}

/// One-way NFA size sufficient for an `n`-state two-way DFA: `C(2n, n+1)`.
pub fn nfa_bound(n: u64) -> BigUint {
    binomial(2 * n, n + 1)
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One line of the bounds table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: u64,
    #[serde(serialize_with = "ser_decimal")]
    pub earlier_lower: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub new_lower: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub upper: BigUint,
}

pub fn table(n_max: u64) -> Vec<BoundRow> {
    (1..=n_max)
        .map(|n| BoundRow {
            n,
            earlier_lower: bound_earlier(n),
            new_lower: bound_new(n),
            upper: bound_upper(n),
        })
        .collect()
}

pub fn table_csv(rows: &[BoundRow]) -> String {
    let mut out = String::from("n,earlier_lower,new_lower,upper\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n, r.earlier_lower, r.new_lower, r.upper
        ));
    }
    out
}

/// Markdown table in the layout of the classic bounds table: `n`, earlier lower
/// bound, new lower bound (bold header), upper bound; thin-space digit grouping.
pub fn table_markdown(rows: &[BoundRow]) -> String {
    let mut out = String::from(
        "| n | earlier lower bound | **new lower bound** | upper bound |\n\
         |---|---:|---:|---:|\n\
         |   | Σ C(n,k−1) C(n,k) 2^(k−1) | Σ C(n,k−1) C(n,k) C(2k−2,k−1) | Σ C(n,k−1) C(n,k) k! |\n",
    );
    for r in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            r.n,
            group_digits(&r.earlier_lower),
            group_digits(&r.new_lower),
            group_digits(&r.upper)
        ));
    }
    out
}

/// Groups digits in threes with a thin space: `65672850` → `65 672 850`.
pub fn group_digits(v: &BigUint) -> String {
    let s = v.to_string();
    let mut out = String::new();
    for (i, ch) in s.chars().enumerate() {
        if i > 0 && (s.len() - i).is_multiple_of(3) {
            out.push('\u{2009}');
        }
        out.push(ch);
    }
    out
}

/// A non-negative decimal `mantissa / 10^scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedDecimal {
    pub mantissa: BigUint,
    pub scale: u32,
}

impl FixedDecimal {
    /// Parses the decimal rendering, so any float type with a correctly
    /// rounded `FromStr` gets the nearest representable value.
    pub fn to_float<F>(&self) -> F
    where
        F: num_traits::Float + FromStr,
        <F as FromStr>::Err: fmt::Debug,
    {
        self.to_string().parse().expect("decimal rendering parses")
    }

    /// `|self - 1|` at the same scale.
    pub fn distance_from_one(&self) -> FixedDecimal {
        let one = BigUint::from(10u32).pow(self.scale);
        let mantissa = if self.mantissa >= one {
            &self.mantissa - &one
        } else {
            &one - &self.mantissa
        };
        FixedDecimal {
            mantissa,
            scale: self.scale,
        }
    }

    /// Number of significant decimal digits carried by the mantissa.
    pub fn significant_digits(&self) -> usize {
        let s = self.mantissa.to_string();
        s.trim_start_matches('0').len()
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.to_string();
        let scale = self.scale as usize;
        if scale == 0 {
            return f.write_str(&digits);
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{int}.{frac}")
    }
}

impl PartialOrd for FixedDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let scale = self.scale.max(other.scale);
        let a = &self.mantissa * BigUint::from(10u32).pow(scale - self.scale);
        let b = &other.mantissa * BigUint::from(10u32).pow(scale - other.scale);
        Some(a.cmp(&b))
    }
}

/// `bound_new(n) · 8πn / (3√3 · 9^n)`, truncated to `digits` decimal places.
///
/// The quotient is formed on exact integers with π and √3 scaled by `10^50`,
/// so there is no overflow even though `9^n` exceeds every float range.
pub fn asymptotic_ratio(n: u64, digits: u32) -> FixedDecimal {
    assert!(n >= 1);
    let digits = digits.min(MAX_RATIO_DIGITS);
    let pi = BigUint::from_str(PI_50).unwrap();
    let sqrt3 = BigUint::from_str(SQRT3_50).unwrap();
    let numerator = bound_new(n) * 8u32 * n * pi * BigUint::from(10u32).pow(digits);
    let denominator = BigUint::from(3u32) * BigUint::from(9u32).pow(n as u32) * sqrt3;
    FixedDecimal {
        mantissa: numerator.div_floor(&denominator),
        scale: digits,
    }
}

/// Leading term `3√3/(8πn) · 9^n` as a float, for display only.
pub fn asymptotic_estimate(n: u64) -> f64 {
    let log =
        (3.0 * 3f64.sqrt() / (8.0 * std::f64::consts::PI * n as f64)).ln() + n as f64 * 9f64.ln();
    log.exp()
}

/// Convenience: `bound_new` as `f64`, infinite when out of range.
pub fn bound_new_f64(n: u64) -> f64 {
    bound_new(n).to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Factorial-ratio oracle.
    fn binomial_by_factorials(n: u64, k: u64) -> BigUint {
        let f = |m: u64| (1..=m).map(BigUint::from).product::<BigUint>();
        f(n) / (f(k) * f(n - k))
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(4, 3), big(4));
        assert_eq!(binomial(12, 6), big(924));
        assert_eq!(binomial(3, 5), big(0));
        for n in 0..40 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial_by_factorials(n, k));
            }
        }
    }

    #[test]
    fn new_bound_values() {
        assert_eq!(bound_new(3), big(39));
        assert_eq!(bound_new(5), big(2055));
        assert_eq!(bound_new(10), big(65_672_850));
    }

    #[test]
    fn earlier_and_upper_values() {
        assert_eq!(bound_earlier(1), big(1));
        assert_eq!(bound_earlier(4), big(180));
        assert_eq!(bound_earlier(7), big(29_953));
        assert_eq!(bound_upper(2), big(6));
        assert_eq!(bound_upper(4), big(292));
        assert_eq!(bound_upper(8), big(3_154_824));
    }

    #[test]
    fn one_way_bounds() {
        assert_eq!(dfa_bound(1), big(2));
        assert_eq!(dfa_bound(3), big(58));
        assert_eq!(nfa_bound(2), big(4));
    }

    #[test]
    fn table_rows() {
        let t = table(10);
        assert_eq!(t.len(), 10);
        assert_eq!(
            (
                t[5].earlier_lower.clone(),
                t[5].new_lower.clone(),
                t[5].upper.clone()
            ),
            (big(5418), big(15_798), big(24_306))
        );
        assert_eq!(
            (
                t[8].earlier_lower.clone(),
                t[8].new_lower.clone(),
                t[8].upper.clone()
            ),
            (big(927_441), big(8_030_943), big(41_368_977))
        );
    }

    #[test]
    fn ordering_of_bounds() {
        for n in 1..=200 {
            let (e, m, u) = (bound_earlier(n), bound_new(n), bound_upper(n));
            assert!(e <= m && m <= u, "n = {n}");
            if n <= 3 {
                assert_eq!(m, u);
            } else {
                assert!(m < u && e < m, "n = {n}");
            }
        }
    }

    #[test]
    fn hook_identity() {
        for n in 1..=64 {
            assert_eq!(hook_dimension_square_sum(n), central_binomial_rank(n));
        }
    }

    #[test]
    fn ratio_at_one() {
        // 8π / (27√3) evaluated independently to 35 digits.
        let r = asymptotic_ratio(1, 35);
        assert_eq!(r.to_string(), "0.53742203384717565943528244670878688");
        assert!((r.to_float::<f64>() - 0.537_422_033_847_175_7).abs() < 1e-15);
        assert!((r.to_float::<f32>() - 0.537_422_f32).abs() < 1e-6);
    }

    #[test]
    fn ratio_matches_high_precision_oracle() {
        // Values from an independent 60-digit evaluation, truncated to 30 places.
        let expected = [
            (10, "0.911000776098356790978713282000"),
            (50, "0.980467204956225424648867968694"),
            (100, "0.990117762867249447223166907204"),
            (200, "0.995029563306116436425168802993"),
            (400, "0.997507406300443849273234371169"),
        ];
        for (n, s) in expected {
            assert_eq!(asymptotic_ratio(n, 30).to_string(), s, "n = {n}");
        }
    }

    #[test]
    fn ratio_approaches_one() {
        let ns = [10, 50, 100, 200, 400];
        let gaps: Vec<_> = ns
            .iter()
            .map(|&n| asymptotic_ratio(n, 30).distance_from_one())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(asymptotic_ratio(400, 30).significant_digits() >= 30);
    }

    #[test]
    fn decimal_rendering() {
        let d = FixedDecimal {
            mantissa: big(5),
            scale: 3,
        };
        assert_eq!(d.to_string(), "0.005");
        assert_eq!(d.distance_from_one().to_string(), "0.995");
        assert_eq!(group_digits(&big(65_672_850)), "65\u{2009}672\u{2009}850");
        assert_eq!(group_digits(&big(985)), "985");
    }

    #[test]
    fn conversion_with_closed_form_ranks() {
        for n in 1..=12 {
            let ranks: Vec<_> = (1..=n).map(central_binomial_rank).collect();
            assert_eq!(rank_conversion(n, &ranks), bound_new(n));
        }
    }

    #[test]
    fn leading_term_tracks_bound() {
        let ratio = bound_new_f64(30) / asymptotic_estimate(30);
        assert!((ratio - asymptotic_ratio(30, 20).to_float::<f64>()).abs() < 1e-9);
    }
}
