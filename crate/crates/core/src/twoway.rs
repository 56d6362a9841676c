//! Two-way deterministic finite automata: simulation, crossing behaviors,
//! conversion to one-way DFAs, communication matrices and rank lower bounds.
//!
//! The tape is `⊢ w ⊣`; the head starts on `⊢` in the initial state. A
//! transition is a partial map `(state, symbol) → (state, move)`. When no
//! transition applies the machine halts. Under the default
//! [`Acceptance::RightEnd`] convention it accepts iff it halts on `⊣` in an
//! accepting state; [`Acceptance::Anywhere`] accepts on a halt in an accepting
//! state at any position. Running forever is rejection in both.
//!
//! Transitions may not move left from `⊢` or right from `⊣`, so the head
//! never leaves the tape.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::permmatrix::rank_exact;

pub const LEFT_END: char = '<';
pub const RIGHT_END: char = '>';
/// Largest automaton [`TwoWayDfa::to_dfa`] accepts by default.
pub const DEFAULT_DFA_MAX_STATES: usize = 5;
/// Default cap on the number of behaviors explored by [`TwoWayDfa::to_dfa`].
pub const DEFAULT_BEHAVIOR_BUDGET: usize = 1_000_000;

const LEFT_IDX: usize = 0;
const RIGHT_IDX: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Acceptance {
    /// Accept only by halting on the right endmarker in an accepting state.
    #[default]
    #[serde(rename = "end")]
    RightEnd,
    /// Accept by halting in an accepting state anywhere on the tape.
    Anywhere,
}

impl Acceptance {
    fn is_default(&self) -> bool {
        *self == Self::RightEnd
    }
}

/// On-disk automaton description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub delta: Vec<TransitionFile>,
    #[serde(default, skip_serializing_if = "Acceptance::is_default")]
    pub acceptance: Acceptance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionFile {
    pub state: String,
    /// A letter of the alphabet, `"<"` or `">"`.
    pub symbol: String,
    pub to: String,
    #[serde(rename = "move")]
    pub direction: Move,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoWayDfa {
    states: Vec<String>,
    alphabet: Vec<char>,
    initial: usize,
    accepting: Vec<bool>,
    acceptance: Acceptance,
    /// Indexed `state * width + symbol`; symbol 0 is `⊢`, 1 is `⊣`, then the letters.
    table: Vec<Option<(usize, Move)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunOutcome {
    Accept,
    Reject,
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub state: usize,
    /// 0 is `⊢`, `|w| + 1` is `⊣`.
    pub position: usize,
}

/// How a computation leaves a tape segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    /// Steps off the right end of the segment in this state.
    Exit(usize),
    /// Halts or loops inside the segment; loops never accept.
    Halt { accepting: bool },
}

/// Crossing behavior of a prefix `⊢u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Behavior {
    /// Result of starting on `⊢` in the initial state.
    pub left_entry: Outcome,
    /// For each state `q`, result of entering the last cell of `⊢u` from the right in `q`.
    pub reentry: Vec<Outcome>,
}

impl Behavior {
    /// Once the left entry halts the reentry map can never be consulted, so
    /// all such behaviors with the same verdict are identified.
    pub fn canonical(mut self) -> Self {
        if let Outcome::Halt { .. } = self.left_entry {
            self.reentry.fill(Outcome::Halt { accepting: false });
        }
        self
    }
}

impl TwoWayDfa {
    pub fn from_file(file: AutomatonFile) -> Result<Self> {
        let bad = |msg: String| Error::InvalidAutomaton(msg);
        if file.states.is_empty() {
            return Err(bad("no states".into()));
        }
        let mut state_idx = HashMap::new();
        for (i, s) in file.states.iter().enumerate() {
            if state_idx.insert(s.as_str(), i).is_some() {
                return Err(bad(format!("duplicate state {s:?}")));
            }
        }
        let mut alphabet = Vec::new();
        for a in &file.alphabet {
            let mut chars = a.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(bad(format!("alphabet symbol {a:?} must be one character")));
            };
            if c == LEFT_END || c == RIGHT_END || alphabet.contains(&c) {
                return Err(bad(format!(
                    "alphabet symbol {a:?} is reserved or repeated"
                )));
            }
            alphabet.push(c);
        }
        let lookup_state = |s: &str| {
            state_idx
                .get(s)
                .copied()
                .ok_or_else(|| bad(format!("undeclared state {s:?}")))
        };
        let initial = lookup_state(&file.initial)?;
        let mut accepting = vec![false; file.states.len()];
        for s in &file.accepting {
            accepting[lookup_state(s)?] = true;
        }
        let width = alphabet.len() + 2;
        let mut table = vec![None; file.states.len() * width];
        for t in &file.delta {
            let from = lookup_state(&t.state)?;
            let to = lookup_state(&t.to)?;
            let sym = match t.symbol.as_str() {
                "<" => LEFT_IDX,
                ">" => RIGHT_IDX,
                other => {
                    let c = other.chars().next().filter(|_| other.chars().count() == 1);
                    let pos = c.and_then(|c| alphabet.iter().position(|&a| a == c));
                    pos.ok_or_else(|| bad(format!("undeclared symbol {other:?}")))? + 2
                }
            };
            if (sym == LEFT_IDX && t.direction == Move::Left)
                || (sym == RIGHT_IDX && t.direction == Move::Right)
            {
                return Err(bad(format!(
                    "transition on {:?} from {:?} leaves the tape",
                    t.symbol, t.state
                )));
            }
            let slot = &mut table[from * width + sym];
            if slot.is_some() {
                return Err(bad(format!(
                    "two transitions for ({:?}, {:?})",
                    t.state, t.symbol
                )));
            }
            *slot = Some((to, t.direction));
        }
        Ok(Self {
            states: file.states,
            alphabet,
            initial,
            accepting,
            acceptance: file.acceptance,
            table,
        })
    }

    /// Convenience constructor; transitions are `(state, symbol, to, move)` with
    /// `'<'` and `'>'` as endmarkers.
    pub fn new(
        states: &[&str],
        alphabet: &[char],
        initial: &str,
        accepting: &[&str],
        delta: &[(&str, char, &str, Move)],
    ) -> Result<Self> {
        Self::from_file(AutomatonFile {
            states: states.iter().map(|s| s.to_string()).collect(),
            alphabet: alphabet.iter().map(|c| c.to_string()).collect(),
            initial: initial.to_string(),
            accepting: accepting.iter().map(|s| s.to_string()).collect(),
            delta: delta
                .iter()
                .map(|&(state, symbol, to, direction)| TransitionFile {
                    state: state.to_string(),
                    symbol: symbol.to_string(),
                    to: to.to_string(),
                    direction,
                })
                .collect(),
            acceptance: Acceptance::default(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> AutomatonFile {
        let width = self.width();
        let symbol_name = |sym: usize| match sym {
            LEFT_IDX => LEFT_END.to_string(),
            RIGHT_IDX => RIGHT_END.to_string(),
            s => self.alphabet[s - 2].to_string(),
        };
        let delta = self
            .table
            .iter()
            .enumerate()
            .filter_map(|(i, t)| {
                t.map(|(to, direction)| TransitionFile {
                    state: self.states[i / width].clone(),
                    symbol: symbol_name(i % width),
                    to: self.states[to].clone(),
                    direction,
                })
            })
            .collect();
        AutomatonFile {
            states: self.states.clone(),
            alphabet: self.alphabet.iter().map(|c| c.to_string()).collect(),
            initial: self.states[self.initial].clone(),
            accepting: self
                .states
                .iter()
                .zip(&self.accepting)
                .filter(|(_, &a)| a)
                .map(|(s, _)| s.clone())
                .collect(),
            delta,
            acceptance: self.acceptance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("automaton serializes")
    }

    pub fn with_acceptance(mut self, acceptance: Acceptance) -> Self {
        self.acceptance = acceptance;
        self
    }

    pub fn acceptance(&self) -> Acceptance {
        self.acceptance
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    fn width(&self) -> usize {
        self.alphabet.len() + 2
    }

    fn delta(&self, q: usize, sym: usize) -> Option<(usize, Move)> {
        self.table[q * self.width() + sym]
    }

    fn halts_accepting(&self, q: usize, sym: usize) -> bool {
        self.accepting[q] && (self.acceptance == Acceptance::Anywhere || sym == RIGHT_IDX)
    }

    fn encode(&self, w: &str) -> Result<Vec<usize>> {
        w.chars()
            .map(|c| {
                self.alphabet
                    .iter()
                    .position(|&a| a == c)
                    .map(|i| i + 2)
                    .ok_or(Error::UnknownSymbol(c))
            })
            .collect()
    }

    pub fn run(&self, w: &str) -> Result<RunOutcome> {
        Ok(self.simulate(w, false)?.0)
    }

    /// Like [`run`](Self::run), also returning every configuration visited.
    pub fn run_traced(&self, w: &str) -> Result<(RunOutcome, Vec<Configuration>)> {
        self.simulate(w, true)
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        Ok(self.run(w)? == RunOutcome::Accept)
    }

    fn simulate(&self, w: &str, trace: bool) -> Result<(RunOutcome, Vec<Configuration>)> {
        let mut tape = vec![LEFT_IDX];
        tape.extend(self.encode(w)?);
        tape.push(RIGHT_IDX);
        let mut visited = Vec::new();
        let (mut state, mut pos) = (self.initial, 0);
        // After |Q|·|tape| moves some configuration has repeated.
        let budget = self.num_states() * tape.len();
        for _ in 0..=budget {
            if trace {
                visited.push(Configuration {
                    state,
                    position: pos,
                });
            }
            match self.delta(state, tape[pos]) {
                None => {
                    let verdict = if self.halts_accepting(state, tape[pos]) {
                        RunOutcome::Accept
                    } else {
                        RunOutcome::Reject
                    };
                    return Ok((verdict, visited));
                }
                Some((next, Move::Right)) => {
                    state = next;
                    pos += 1;
                }
                Some((next, Move::Left)) => {
                    state = next;
                    pos -= 1;
                }
            }
        }
        Ok((RunOutcome::Loop, visited))
    }

    /// Crossing behavior of `⊢u`, by direct simulation on that segment.
    pub fn prefix_behavior(&self, u: &str) -> Result<Behavior> {
        let mut segment = vec![LEFT_IDX];
        segment.extend(self.encode(u)?);
        let last = segment.len() - 1;
        let left_entry = self.run_segment(&segment, 0, self.initial);
        let reentry = (0..self.num_states())
            .map(|q| self.run_segment(&segment, last, q))
            .collect();
        Ok(Behavior {
            left_entry,
            reentry,
        })
    }

    fn run_segment(&self, segment: &[usize], mut pos: usize, mut state: usize) -> Outcome {
        let budget = self.num_states() * segment.len();
        for _ in 0..budget {
            match self.delta(state, segment[pos]) {
                None => {
                    return Outcome::Halt {
                        accepting: self.halts_accepting(state, segment[pos]),
                    }
                }
                Some((next, Move::Right)) => {
                    if pos + 1 == segment.len() {
                        return Outcome::Exit(next);
                    }
                    state = next;
                    pos += 1;
                }
                Some((next, Move::Left)) => {
                    state = next;
                    pos -= 1;
                }
            }
        }
        Outcome::Halt { accepting: false }
    }

    /// Behavior of `u·c` computed from the behavior of `u` alone.
    pub fn extend_behavior(&self, b: &Behavior, c: char) -> Result<Behavior> {
        let sym = self.encode(&c.to_string())?[0];
        Ok(self.extend_idx(b, sym))
    }

    fn extend_idx(&self, b: &Behavior, sym: usize) -> Behavior {
        let left_entry = match b.left_entry {
            Outcome::Exit(q) => self.cell_outcome(sym, q, &b.reentry),
            halted => halted,
        };
        let reentry = (0..self.num_states())
            .map(|q| self.cell_outcome(sym, q, &b.reentry))
            .collect();
        Behavior {
            left_entry,
            reentry,
        }
    }

    // Arriving on a cell holding `sym` in state `q`, with the prefix to its left
    // summarised by `left`. Each arrival state can occur at most once before the
    // computation is known to loop.
    fn cell_outcome(&self, sym: usize, q: usize, left: &[Outcome]) -> Outcome {
        let mut seen = vec![false; self.num_states()];
        let mut state = q;
        loop {
            if std::mem::replace(&mut seen[state], true) {
                return Outcome::Halt { accepting: false };
            }
            match self.delta(state, sym) {
                None => {
                    return Outcome::Halt {
                        accepting: self.halts_accepting(state, sym),
                    }
                }
                Some((next, Move::Right)) => return Outcome::Exit(next),
                Some((next, Move::Left)) => match left[next] {
                    Outcome::Exit(back) => state = back,
                    halted => return halted,
                },
            }
        }
    }

    /// Verdict on `u` given the behavior of `⊢u`: what happens once `⊣` is appended.
    pub fn accepts_behavior(&self, b: &Behavior) -> bool {
        match b.left_entry {
            Outcome::Halt { accepting } => accepting,
            Outcome::Exit(q) => matches!(
                self.cell_outcome(RIGHT_IDX, q, &b.reentry),
                Outcome::Halt { accepting: true }
            ),
        }
    }

    /// One-way DFA whose states are the reachable canonical behaviors.
    pub fn to_dfa(&self) -> Result<OneWayDfa> {
        self.to_dfa_capped(DEFAULT_DFA_MAX_STATES, DEFAULT_BEHAVIOR_BUDGET)
    }

    pub fn to_dfa_capped(&self, max_states: usize, behavior_budget: usize) -> Result<OneWayDfa> {
        if self.num_states() > max_states {
            return Err(Error::InvalidAutomaton(format!(
                "{} states exceeds the conversion limit of {max_states}",
                self.num_states()
            )));
        }
        let start = self.prefix_behavior("")?.canonical();
        let mut index = HashMap::from([(start.clone(), 0)]);
        let mut behaviors = vec![start];
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        while next < behaviors.len() {
            let current = behaviors[next].clone();
            let mut row = Vec::with_capacity(self.alphabet.len());
            for sym in 2..self.width() {
                let b = self.extend_idx(&current, sym).canonical();
                let id = match index.get(&b) {
                    Some(&id) => id,
                    None => {
                        if behaviors.len() == behavior_budget {
                            return Err(Error::StateBudgetExceeded(behavior_budget));
                        }
                        index.insert(b.clone(), behaviors.len());
                        behaviors.push(b);
                        behaviors.len() - 1
                    }
                };
                row.push(id);
            }
            transitions.push(row);
            next += 1;
        }
        let accepting = behaviors.iter().map(|b| self.accepts_behavior(b)).collect();
        Ok(OneWayDfa {
            alphabet: self.alphabet.clone(),
            transitions,
            accepting,
            behaviors,
        })
    }

    /// A random automaton: each transition is present with probability `density`,
    /// moves are uniform except at the endmarkers, and each state accepts with probability 1/2.
    pub fn random(n: usize, alphabet: &[char], density: f64, rng: &mut impl Rng) -> Self {
        let width = alphabet.len() + 2;
        let mut table = vec![None; n * width];
        for q in 0..n {
            for sym in 0..width {
                if rng.gen_bool(density) {
                    let direction = match sym {
                        LEFT_IDX => Move::Right,
                        RIGHT_IDX => Move::Left,
                        _ if rng.gen_bool(0.5) => Move::Left,
                        _ => Move::Right,
                    };
                    table[q * width + sym] = Some((rng.gen_range(0..n), direction));
                }
            }
        }
        Self {
            states: (0..n).map(|i| format!("q{i}")).collect(),
            alphabet: alphabet.to_vec(),
            initial: 0,
            accepting: (0..n).map(|_| rng.gen_bool(0.5)).collect(),
            acceptance: Acceptance::default(),
            table,
        }
    }
}

/// Complete one-way DFA with state 0 as the start state.
#[derive(Clone, Debug)]
pub struct OneWayDfa {
    pub alphabet: Vec<char>,
    /// `transitions[state][letter index]`.
    pub transitions: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
    /// The two-way behavior each state stands for; empty after minimization.
    pub behaviors: Vec<Behavior>,
}

impl OneWayDfa {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        let mut state = 0;
        for c in w.chars() {
            let letter = self
                .alphabet
                .iter()
                .position(|&a| a == c)
                .ok_or(Error::UnknownSymbol(c))?;
            state = self.transitions[state][letter];
        }
        Ok(self.accepting[state])
    }

    /// Minimal equivalent DFA by Moore partition refinement (all states are reachable).
    pub fn minimize(&self) -> OneWayDfa {
        let n = self.num_states();
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| usize::from(a)).collect();
        let mut count = class.iter().collect::<std::collections::HashSet<_>>().len();
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|s| {
                    let mut sig = vec![class[s]];
                    sig.extend(self.transitions[s].iter().map(|&t| class[t]));
                    let fresh = ids.len();
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let refined = ids.len();
            class = next;
            if refined == count {
                break;
            }
            count = refined;
        }
        // Renumber so that the start state's class is 0.
        let mut order = vec![usize::MAX; count];
        let mut fresh = 0;
        let mut queue = vec![0usize];
        order[class[0]] = 0;
        fresh += 1;
        let mut transitions = vec![Vec::new(); count];
        let mut accepting = vec![false; count];
        while let Some(s) = queue.pop() {
            let c = order[class[s]];
            if !transitions[c].is_empty() {
                continue;
            }
            accepting[c] = self.accepting[s];
            transitions[c] = self.transitions[s]
                .iter()
                .map(|&t| {
                    if order[class[t]] == usize::MAX {
                        order[class[t]] = fresh;
                        fresh += 1;
                    }
                    queue.push(t);
                    order[class[t]]
                })
                .collect();
            if self.transitions[s].is_empty() {
                // Letterless alphabet: mark as processed.
                transitions[c] = Vec::new();
                break;
            }
        }
        OneWayDfa {
            alphabet: self.alphabet.clone(),
            transitions,
            accepting,
            behaviors: Vec::new(),
        }
    }
}

/// All strings over `alphabet` of length at most `max_len`, shortest first.
pub fn strings_up_to(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| alphabet.iter().map(move |&c| format!("{s}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// 0/1 matrix with entry `(u, v)` set iff the automaton accepts `uv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommMatrix {
    pub prefixes: Vec<String>,
    pub suffixes: Vec<String>,
    pub entries: BinaryMatrix,
}

impl CommMatrix {
    /// Drops repeated rows and columns, keeping the first occurrence of each.
    pub fn dedup(&self) -> CommMatrix {
        let unique = |m: &BinaryMatrix| {
            let mut seen = std::collections::HashSet::new();
            (0..m.rows())
                .filter(|&i| seen.insert(m.ones_in_row(i).collect::<Vec<_>>()))
                .collect::<Vec<_>>()
        };
        let rows = unique(&self.entries);
        let cols = unique(&self.entries.transpose());
        CommMatrix {
            prefixes: rows.iter().map(|&i| self.prefixes[i].clone()).collect(),
            suffixes: cols.iter().map(|&j| self.suffixes[j].clone()).collect(),
            entries: self.entries.select(&rows, &cols),
        }
    }

    pub fn get(&self, prefix: &str, suffix: &str) -> Option<bool> {
        let i = self.prefixes.iter().position(|p| p == prefix)?;
        let j = self.suffixes.iter().position(|s| s == suffix)?;
        Some(self.entries.get(i, j))
    }

    /// Exact rank over ℚ.
    pub fn rank(&self) -> Result<usize> {
        rank_exact(&self.entries)
    }
}

pub fn comm_matrix(a: &TwoWayDfa, prefixes: &[String], suffixes: &[String]) -> Result<CommMatrix> {
    let mut entries = BinaryMatrix::zeros(prefixes.len(), suffixes.len());
    for (i, u) in prefixes.iter().enumerate() {
        for (j, v) in suffixes.iter().enumerate() {
            if a.accepts(&format!("{u}{v}"))? {
                entries.set(i, j, true);
            }
        }
    }
    Ok(CommMatrix {
        prefixes: prefixes.to_vec(),
        suffixes: suffixes.to_vec(),
        entries,
    })
}

/// Rank of the sampled communication matrix: every unambiguous automaton for
/// the language needs at least this many states.
pub fn schmidt_lower_bound(
    a: &TwoWayDfa,
    prefixes: &[String],
    suffixes: &[String],
) -> Result<usize> {
    comm_matrix(a, prefixes, suffixes)?.dedup().rank()
}
