//! Verification suites with machine-readable reports.
//!
//! Each suite expands into independent cases; cases run in parallel and are
//! sorted by a canonical key before the report is built, so output does not
//! depend on scheduling.

use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    asymptotic_ratio, binomial, central_binomial_rank, dfa_bound, table, BoundRow,
};
use crate::characters::{character_table, class_size, mn_character, specht_dim};
use crate::error::{Error, Result};
use crate::group_algebra::q_n;
use crate::perm::factorial;
use crate::permmatrix::{
    build_p, build_q, dump_pbm, operator_matrix, rank_certified, RankCertificate, RankConfig,
    OPERATOR_MAX_DEGREE,
};
use crate::twoway::{schmidt_lower_bound, strings_up_to, TwoWayDfa};
use crate::young::{enumerate_syt, partitions_of, Partition};

const TABLE1_CSV: &str = include_str!("../data/table1.csv");
const S3_CSV: &str = include_str!("../data/s3_characters.csv");
const S4_CSV: &str = include_str!("../data/s4_characters.csv");
const ASYMPTOTIC_CSV: &str = include_str!("../data/asymptotic.csv");

/// Largest n (or k) any suite runs under `--quick`.
pub const QUICK_LIMIT: usize = 6;
/// Decimal places at which ratios are compared against fixtures.
pub const RATIO_DIGITS: u32 = 30;
/// Cap on `|r(400) - 1|` in thousandths, fixed from an independent high-precision pre-run (0.00249…).
pub const RATIO_CAP_THOUSANDTHS: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Centrality,
    Operator,
    Characters,
    Hooks,
    Dims,
    Table1,
    Asym,
    Automata,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Centrality,
        Suite::Operator,
        Suite::Characters,
        Suite::Hooks,
        Suite::Dims,
        Suite::Table1,
        Suite::Asym,
        Suite::Automata,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Centrality => "centrality",
            Suite::Operator => "operator",
            Suite::Characters => "characters",
            Suite::Hooks => "hooks",
            Suite::Dims => "dims",
            Suite::Table1 => "table1",
            Suite::Asym => "asym",
            Suite::Automata => "automata",
        }
    }

    /// `(default, hard maximum)` for `--n`.
    fn limits(self) -> (usize, usize) {
        match self {
            Suite::Centrality => (6, 7),
            Suite::Operator => (5, OPERATOR_MAX_DEGREE),
            Suite::Characters => (8, 10),
            Suite::Hooks => (10, 14),
            Suite::Dims => (10, 20),
            Suite::Table1 => (10, 10),
            Suite::Asym => (400, 400),
            Suite::Automata => (3, 4),
        }
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Expands a suite name, accepting `all`.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![name.parse()?])
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Upper limit on n; each suite has its own default.
    pub n: Option<usize>,
    pub quick: bool,
    /// Seed for the random automata.
    pub seed: u64,
    /// Number of random automata.
    pub automata: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n: None,
            quick: false,
            seed: 2024,
            automata: 100,
        }
    }
}

impl VerifyOptions {
    fn limit(&self, suite: Suite) -> Result<usize> {
        let (default, max) = suite.limits();
        let n = self.n.unwrap_or(default);
        if n == 0 || n > max {
            return Err(Error::DegreeOutOfRange { n, max });
        }
        Ok(if self.quick && suite != Suite::Asym {
            n.min(QUICK_LIMIT)
        } else {
            n
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    /// The statement this case checks.
    pub claim: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_cases(suite: &str, mut cases: Vec<Case>, start: Instant) -> Self {
        cases.sort_by(|a, b| a.key.cmp(&b.key));
        Self {
            suite: suite.to_string(),
            cases: cases.len(),
            failures: cases.into_iter().filter_map(|c| c.failure).collect(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

struct Case {
    key: (usize, String),
    failure: Option<Failure>,
}

fn check<T: PartialEq + Display>(
    n: usize,
    inputs: String,
    expected: T,
    actual: T,
    claim: &str,
) -> Case {
    let failure = (expected != actual).then(|| Failure {
        inputs: inputs.clone(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        claim: claim.to_string(),
    });
    Case {
        key: (n, inputs),
        failure,
    }
}

fn errored(n: usize, inputs: String, err: Error, claim: &str) -> Case {
    Case {
        key: (n, inputs.clone()),
        failure: Some(Failure {
            inputs,
            expected: "no error".into(),
            actual: err.to_string(),
            claim: claim.to_string(),
        }),
    }
}

fn outcome<T: PartialEq + Display>(
    n: usize,
    inputs: String,
    expected: T,
    actual: Result<T>,
    claim: &str,
) -> Case {
    match actual {
        Ok(v) => check(n, inputs, expected, v, claim),
        Err(e) => errored(n, inputs, e, claim),
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let n = opts.limit(suite)?;
    let cases = match suite {
        Suite::Centrality => centrality(n),
        Suite::Operator => operator(n),
        Suite::Characters => characters(n),
        Suite::Hooks => hooks(n),
        Suite::Dims => dims(n),
        Suite::Table1 => table1(n),
        Suite::Asym => asym(),
        Suite::Automata => automata(n, opts),
    };
    Ok(VerifyReport::from_cases(suite.name(), cases, start))
}

/// Runs each suite in turn. With more than one suite, `n` is clamped to each suite's maximum.
pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Result<Vec<VerifyReport>> {
    if suites.len() == 1 {
        return Ok(vec![run_suite(suites[0], opts)?]);
    }
    suites
        .iter()
        .map(|&s| {
            let opts = VerifyOptions {
                n: opts.n.map(|n| n.min(s.limits().1)),
                ..opts.clone()
            };
            run_suite(s, &opts)
        })
        .collect()
}

fn centrality(max: usize) -> Vec<Case> {
    const CLAIM: &str = "the sum of n-cycles commutes with every permutation";
    (1..=max)
        .into_par_iter()
        .map(|n| {
            let central = q_n::<i64>(n).and_then(|q| q.is_central_capped(max));
            outcome(n, format!("n={n}"), true, central, CLAIM)
        })
        .collect()
}

fn operator(max: usize) -> Vec<Case> {
    (1..=max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let inputs = format!("n={n}");
            let (op, q, p) = match (operator_matrix(n), build_q(n), build_p(n)) {
                (Ok(op), Ok(q), Ok(p)) => (op, q, p),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    return vec![errored(n, inputs, e, "matrices build")]
                }
            };
            let ones = factorial(n) * factorial(n - 1);
            vec![
                check(
                    n,
                    format!("{inputs} operator"),
                    true,
                    op == q,
                    "the matrix of multiplication by the n-cycle sum is Q",
                ),
                check(
                    n,
                    format!("{inputs} symmetric"),
                    true,
                    q.is_symmetric() && p.is_symmetric(),
                    "P and Q are symmetric",
                ),
                check(
                    n,
                    format!("{inputs} ones"),
                    ones,
                    p.count_ones(),
                    "P has (n-1)!·n! ones",
                ),
            ]
        })
        .collect()
}

fn characters(max: usize) -> Vec<Case> {
    let mut cases: Vec<Case> = (1..=max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let table = match character_table(n) {
                Ok(t) => t,
                Err(e) => return vec![errored(n, format!("n={n}"), e, "table builds")],
            };
            let order = BigInt::from(factorial(n));
            let sizes: Vec<BigInt> = table.classes.iter().map(|c| class_size(c).into()).collect();
            let mut out = Vec::new();
            for (i, li) in table.partitions.iter().enumerate() {
                let identity = &table.values[i][0];
                out.push(check(
                    n,
                    format!("n={n} dim {li}"),
                    BigInt::from(specht_dim(li)),
                    identity.clone(),
                    "the character at the identity is the number of standard tableaux",
                ));
                for (j, lj) in table.partitions.iter().enumerate().skip(i) {
                    let inner: BigInt = (0..table.classes.len())
                        .map(|c| &sizes[c] * &table.values[i][c] * &table.values[j][c])
                        .sum();
                    let expected = if i == j {
                        order.clone()
                    } else {
                        BigInt::from(0)
                    };
                    out.push(check(
                        n,
                        format!("n={n} <{li},{lj}>"),
                        expected,
                        inner,
                        "irreducible characters are orthonormal",
                    ));
                }
            }
            out
        })
        .collect();
    for (n, fixture) in [(3, S3_CSV), (4, S4_CSV)] {
        if n <= max {
            let actual = character_table(n).map(|t| t.to_csv());
            cases.push(outcome(
                n,
                format!("n={n} fixture"),
                strip_comments(fixture),
                actual,
                "the computed table matches the reference table",
            ));
        }
    }
    cases
}

fn hooks(max: usize) -> Vec<Case> {
    (1..=max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let cycle = Partition::row(n);
            partitions_of(n).into_iter().map(move |lam| {
                let is_hook = lam.parts().get(1).is_none_or(|&p| p <= 1);
                let expected = if is_hook {
                    if lam.len() % 2 == 1 { 1 } else { -1 }
                } else {
                    0
                };
                outcome(
                    n,
                    format!("lambda={lam}"),
                    BigInt::from(expected),
                    mn_character(&lam, &cycle),
                    "the character at an n-cycle is nonzero exactly on hooks, with sign (-1)^(rows-1)",
                )
            })
        })
        .collect()
}

fn dims(max: usize) -> Vec<Case> {
    const SYT_ENUM_MAX: usize = 8;
    (1..=max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let parts = partitions_of(n);
            let total: BigUint = parts.iter().map(|l| specht_dim(l).pow(2)).sum();
            let hooks: BigUint = parts
                .iter()
                .filter(|l| !l.has_square())
                .map(|l| specht_dim(l).pow(2))
                .sum();
            let binomials: BigUint = (1..=n as u64)
                .map(|k| binomial(n as u64 - 1, k - 1).pow(2))
                .sum();
            let mut out = vec![
                check(
                    n,
                    format!("n={n} sum"),
                    BigUint::from(factorial(n)),
                    total,
                    "squared dimensions of the irreducibles sum to n!",
                ),
                check(
                    n,
                    format!("n={n} hooks"),
                    central_binomial_rank(n as u64),
                    hooks,
                    "squared hook dimensions sum to C(2n-2, n-1)",
                ),
                check(
                    n,
                    format!("n={n} binomials"),
                    central_binomial_rank(n as u64),
                    binomials,
                    "the sum of C(n-1, k-1)^2 is C(2n-2, n-1)",
                ),
            ];
            if n <= SYT_ENUM_MAX {
                for lam in &parts {
                    out.push(outcome(
                        n,
                        format!("n={n} syt {lam}"),
                        specht_dim(lam),
                        enumerate_syt(lam).map(|t| BigUint::from(t.len())),
                        "the hook-length formula counts standard tableaux",
                    ));
                }
            }
            out
        })
        .collect()
}

/// Rows of the embedded bound fixture.
pub fn table1_fixture() -> Vec<BoundRow> {
    strip_comments(TABLE1_CSV)
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            BoundRow {
                n: f[0].parse().expect("fixture n"),
                earlier_lower: f[1].parse().expect("fixture value"),
                new_lower: f[2].parse().expect("fixture value"),
                upper: f[3].parse().expect("fixture value"),
            }
        })
        .collect()
}

fn table1(max: usize) -> Vec<Case> {
    let computed = table(max as u64);
    let claim = "bound table entry";
    table1_fixture()
        .into_iter()
        .zip(computed)
        .flat_map(|(want, got)| {
            let n = want.n as usize;
            [
                check(
                    n,
                    format!("n={n} earlier"),
                    want.earlier_lower,
                    got.earlier_lower,
                    claim,
                ),
                check(
                    n,
                    format!("n={n} new"),
                    want.new_lower,
                    got.new_lower,
                    claim,
                ),
                check(n, format!("n={n} upper"), want.upper, got.upper, claim),
            ]
        })
        .collect()
}

/// `(n, ratio)` pairs of the embedded asymptotic fixture.
pub fn asymptotic_fixture() -> Vec<(u64, String)> {
    strip_comments(ASYMPTOTIC_CSV)
        .lines()
        .skip(1)
        .map(|line| {
            let (n, r) = line.split_once(',').expect("fixture row");
            (n.parse().expect("fixture n"), r.to_string())
        })
        .collect()
}

fn asym() -> Vec<Case> {
    let fixture = asymptotic_fixture();
    let ratios: Vec<_> = fixture
        .par_iter()
        .map(|(n, _)| asymptotic_ratio(*n, RATIO_DIGITS))
        .collect();
    let mut cases: Vec<Case> = fixture
        .iter()
        .zip(&ratios)
        .map(|((n, want), got)| {
            check(
                *n as usize,
                format!("r({n})"),
                want.clone(),
                got.to_string(),
                "ratio of the lower bound to its leading term",
            )
        })
        .collect();
    let distances: Vec<_> = ratios.iter().map(|r| r.distance_from_one()).collect();
    let decreasing = distances.windows(2).all(|w| w[1] < w[0]);
    cases.push(check(
        usize::MAX,
        "monotone".into(),
        true,
        decreasing,
        "|r(n) - 1| strictly decreases",
    ));
    if let Some(((400, _), last)) = fixture.last().zip(distances.last()) {
        let cap = crate::bounds::FixedDecimal {
            mantissa: BigUint::from(RATIO_CAP_THOUSANDTHS),
            scale: 3,
        };
        cases.push(check(
            usize::MAX,
            "cap".into(),
            true,
            *last < cap,
            "|r(400) - 1| is below the pinned cap",
        ));
    }
    cases
}

fn automata(max_states: usize, opts: &VerifyOptions) -> Vec<Case> {
    let alphabet = ['a', 'b'];
    let words = strings_up_to(&alphabet, 6);
    let prefixes = strings_up_to(&alphabet, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let machines: Vec<TwoWayDfa> = (0..opts.automata)
        .map(|i| TwoWayDfa::random(1 + i % max_states, &alphabet, 0.8, &mut rng))
        .collect();
    machines
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, a)| {
            let id = format!("automaton {i:03} ({} states)", a.num_states());
            let dfa = match a.to_dfa() {
                Ok(d) => d,
                Err(e) => return vec![errored(i, id, e, "conversion succeeds")],
            };
            let disagreements: Vec<&String> = words
                .iter()
                .filter(|w| dfa.accepts(w).ok() != a.accepts(w).ok())
                .collect();
            let minimal = dfa.minimize().num_states();
            let schmidt = schmidt_lower_bound(a, &prefixes, &prefixes);
            let bound = dfa_bound(a.num_states() as u64);
            vec![
                check(
                    i,
                    format!("{id} agree"),
                    "[]".to_string(),
                    format!("{disagreements:?}"),
                    "the one-way DFA accepts exactly the strings the automaton accepts",
                ),
                check(
                    i,
                    format!("{id} behaviors"),
                    true,
                    BigUint::from(dfa.num_states()) <= bound,
                    "reachable behaviors are within n(n^n-(n-1)^n)+1",
                ),
                outcome(
                    i,
                    format!("{id} schmidt"),
                    true,
                    schmidt.map(|r| r <= minimal),
                    "communication rank is at most the minimal DFA size",
                ),
            ]
        })
        .collect()
}

/// Rank of `P(k)` with a report comparing it to `C(2k-2, k-1)`; optionally dumps the bitmap.
pub fn rank_report(
    k: usize,
    config: &RankConfig,
    dump: Option<&Path>,
) -> Result<(RankCertificate, VerifyReport)> {
    let start = Instant::now();
    if let Some(path) = dump {
        dump_pbm(&build_p(k)?, path)?;
    }
    let cert = rank_certified(k, config)?;
    let case = check(
        k,
        format!("k={k} method={}", cert.method),
        central_binomial_rank(k as u64),
        BigUint::from(cert.rank),
        "rank P(k) = C(2k-2, k-1)",
    );
    Ok((cert, VerifyReport::from_cases("rank", vec![case], start)))
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}
