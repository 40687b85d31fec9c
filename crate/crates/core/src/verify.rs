//! The claim suite: a fixed registry of finitely checkable statements about
//! `M(aabb)`, the `w_n` family and the small presented monoids, run into a
//! deterministic report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::{self, Strategy};
use crate::identities::{
    self, check_no_div_instance, check_rees, check_table, find_star_violation,
    separation_identity, witness_refutes, Basis, CheckOutcome, Identity, IdentityError, Image, Status,
    Substitution, Witness,
};
use crate::monoid::{from_presentation, FiniteMonoid, Preset, DEFAULT_CLOSURE_LENGTH};
use crate::rees::ReesQuotient;
use crate::words::{generate_wn, y, z, t, Depth, DepthMap, Letter, Word, WordSet, X};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub table: u64,
    pub matcher: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            table: identities::DEFAULT_TABLE_BUDGET,
            matcher: identities::DEFAULT_MATCHER_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub max_n: u32,
    pub budgets: Budgets,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: 2,
            budgets: Budgets::default(),
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub title: String,
    pub status: ClaimStatus,
    pub witness: Option<String>,
    pub millis: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: Config,
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.budget == 0
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// The report with every timing field zeroed.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.millis = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// What a claim check concluded, before timing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
    Budget(String),
}

impl From<IdentityError> for Verdict {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::BudgetExceeded { .. } => Verdict::Budget(e.to_string()),
            other => Verdict::Fail(format!("error: {other}")),
        }
    }
}

type Check = fn(&Config) -> Verdict;

/// Claim registry in report order.
pub const REGISTRY: [(&str, &str, Check); 14] = [
    ("C1", "orders of M(aabb), M(abab), M(abba), M(empty set) are 10, 9, 10, 2", c1_orders),
    ("C2", "Sigma holds in M(aabb) under both checkers", c2_sigma_aabb),
    ("C3", "Lee-Li identities hold in M_SCRIPT and in M(aabb)", c3_lee_li),
    ("C4", "M_SCRIPT, A21 and B21 have order 6 with a stable closure", c4_presets),
    ("C5", "depth table of w_n: x -> n+1, y_i^k -> k, t_i -> 0, z_i -> 1", c5_depths),
    ("C6", "w_n structure: square-free, at most two occurrences per letter, unique first/last length-2 factors, shortest non-linear simple-free factor 2n+2", c6_structure),
    ("C7", "separation matrix: w_n = xx(w_n)_x holds in M(w_k) iff n != k", c7_separation),
    ("C8", "Sigma holds in M(W_N) for every subset N of {1..max_n}", c8_sigma_truncations),
    ("C9", "distinct subsets N give monoids separated by a separation identity", c9_distinct),
    ("C10", "M(W') is a quotient of M(W) for W' in W", c10_quotients),
    ("C11", "every match of w_n into w_k (n < k) has the two-occurrence property", c11_star),
    ("C12", "seeded random instances of the first-occurrence depth bound", c12_no_div),
    ("C13", "Rees checker agrees with the table checker on a seeded corpus", c13_cross_check),
    ("C14", "aabb, abab, abba are the only M(w) of order at most 10 with two repeated letters", c14_enumeration),
];

pub fn run_claims(config: &Config) -> Report {
    let claims = exec::map_slice(Strategy::default(), &REGISTRY, |&(id, title, check)| {
        let started = Instant::now();
        let verdict = check(config);
        let millis = started.elapsed().as_millis() as u64;
        let (status, witness) = match verdict {
            Verdict::Pass => (ClaimStatus::Pass, None),
            Verdict::Fail(w) => (ClaimStatus::Fail, Some(w)),
            Verdict::Skipped(w) => (ClaimStatus::Skipped, Some(w)),
            Verdict::Budget(w) => (ClaimStatus::Budget, Some(w)),
        };
        ClaimResult {
            id: id.to_string(),
            title: title.to_string(),
            status,
            witness,
            millis,
        }
    });
    let mut summary = Summary::default();
    for c in &claims {
        match c.status {
            ClaimStatus::Pass => summary.pass += 1,
            ClaimStatus::Fail => summary.fail += 1,
            ClaimStatus::Skipped => summary.skipped += 1,
            ClaimStatus::Budget => summary.budget += 1,
        }
    }
    Report {
        config: *config,
        claims,
        summary,
    }
}

/// Shorthand: turn the first failure message of an iterator into a verdict.
fn first_failure<I: IntoIterator<Item = Result<(), Verdict>>>(checks: I) -> Verdict {
    for c in checks {
        if let Err(v) = c {
            return v;
        }
    }
    Verdict::Pass
}

fn set(words: &[&str]) -> WordSet {
    WordSet::new(words.iter().map(|w| Word::plain(w))).expect("nonempty words")
}

/// All subsets of `{1..max_n}` as index lists, in binary-counter order.
pub fn subsets(max_n: u32) -> Vec<Vec<u32>> {
    (0u32..1 << max_n)
        .map(|mask| (1..=max_n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

fn family(indices: &[u32]) -> WordSet {
    WordSet::wn_family(indices.iter().copied()).expect("indices start at 1")
}

fn show(indices: &[u32]) -> String {
    let inner: Vec<String> = indices.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn c1_orders(_: &Config) -> Verdict {
    let cases = [(vec!["aabb"], 10), (vec!["abab"], 9), (vec!["abba"], 10), (vec![], 2)];
    first_failure(cases.iter().map(|(words, expected)| {
        let q = ReesQuotient::new(&set(words));
        if q.order() == *expected {
            Ok(())
        } else {
            Err(Verdict::Fail(format!("M({}) has order {}", q.source(), q.order())))
        }
    }))
}

/// Table check plus, when a word set is given, the Rees check; both must
/// hold.
fn holds_everywhere(id: &Identity, m: &FiniteMonoid, rees: Option<&WordSet>, cfg: &Config) -> Result<(), Verdict> {
    let table = check_table(m, id, cfg.budgets.table)?;
    if !table.holds_p() {
        let w = table.witness_text(m).unwrap_or_default();
        return Err(Verdict::Fail(format!("{id}: table checker FAILS at {w}")));
    }
    if let Some(source) = rees {
        let out = check_rees(source, id, cfg.budgets.matcher)?;
        if !out.holds_p() {
            let w = out.witness_text(m).unwrap_or_default();
            return Err(Verdict::Fail(format!("{id}: rees checker FAILS at {w}")));
        }
    }
    Ok(())
}

fn c2_sigma_aabb(cfg: &Config) -> Verdict {
    let source = set(&["aabb"]);
    let q = ReesQuotient::new(&source);
    first_failure(
        Basis::Sigma
            .identities()
            .iter()
            .map(|id| holds_everywhere(id, q.monoid(), Some(&source), cfg)),
    )
}

fn c3_lee_li(cfg: &Config) -> Verdict {
    let m_script = match from_presentation(&Preset::MScript.presentation(), DEFAULT_CLOSURE_LENGTH) {
        Ok(m) => m,
        Err(e) => return Verdict::Fail(format!("M_SCRIPT: {e}")),
    };
    if m_script.order() != 6 {
        return Verdict::Fail(format!("M_SCRIPT has order {}", m_script.order()));
    }
    let source = set(&["aabb"]);
    let q = ReesQuotient::new(&source);
    first_failure(Basis::LeeLi.identities().iter().map(|id| {
        holds_everywhere(id, &m_script, None, cfg)?;
        holds_everywhere(id, q.monoid(), Some(&source), cfg)
    }))
}

fn c4_presets(_: &Config) -> Verdict {
    first_failure(Preset::ALL.iter().map(|p| {
        match from_presentation(&p.presentation(), DEFAULT_CLOSURE_LENGTH) {
            Ok(m) if m.order() == 6 => Ok(()),
            Ok(m) => Err(Verdict::Fail(format!("{} has order {}", p.name(), m.order()))),
            Err(e) => Err(Verdict::Fail(format!("{}: {e}", p.name()))),
        }
    }))
}

/// The depth table of `w_n` as stated for the family.
pub fn expected_wn_depths(n: u32) -> DepthMap {
    let mut m = BTreeMap::new();
    m.insert(X, Depth::Finite(n + 1));
    for i in 1..=n {
        m.insert(t(i), Depth::Finite(0));
        m.insert(z(i), Depth::Finite(1));
        for k in 0..=n {
            m.insert(y(i, k), Depth::Finite(k));
        }
    }
    m
}

/// Indices checked by the word-level claims: at least `1..=4`, and one past
/// `max_n`.
fn word_range(cfg: &Config) -> std::ops::RangeInclusive<u32> {
    1..=(cfg.max_n + 1).max(4)
}

fn c5_depths(cfg: &Config) -> Verdict {
    first_failure(word_range(cfg).map(|n| {
        let wn = generate_wn(n).expect("n >= 1");
        let got = wn.depth_map();
        let expected = expected_wn_depths(n);
        match expected.iter().find(|(l, d)| got.get(l) != Some(d)) {
            None if got.len() == expected.len() => Ok(()),
            None => Err(Verdict::Fail(format!("w_{n}: depth map has {} letters", got.len()))),
            Some((l, d)) => Err(Verdict::Fail(format!("w_{n}: D({l}) = {:?}, expected {d}", got.get(l)))),
        }
    }))
}

/// Structural facts about `w_n`; `Err` names the first one that fails.
pub fn wn_structure(n: u32) -> Result<(), String> {
    let w = generate_wn(n).map_err(|e| e.to_string())?;
    if !w.is_square_free() {
        return Err(format!("w_{n} is not square-free"));
    }
    if w.max_occurrences() > 2 {
        return Err(format!("w_{n} has a letter occurring {} times", w.max_occurrences()));
    }
    let p = w.length2_profile().map_err(|e| e.to_string())?;
    if !p.all_unique {
        return Err(format!("w_{n} repeats a length-2 factor"));
    }
    if !p.all_first_last {
        return Err(format!("w_{n} has an adjacent pair that is not first/last"));
    }
    let expected_simple: BTreeSet<Letter> = (1..=n).flat_map(|i| [t(i), y(i, 0)]).collect();
    if w.alphabet_profile().simple != expected_simple {
        return Err(format!("w_{n} has unexpected simple letters"));
    }
    match w.min_nonlinear_simplefree_factor() {
        Some(len) if len == 2 * n as usize + 2 => Ok(()),
        other => Err(format!("w_{n}: shortest non-linear simple-free factor {other:?}, expected {}", 2 * n + 2)),
    }
}

fn c6_structure(cfg: &Config) -> Verdict {
    first_failure(word_range(cfg).map(|n| wn_structure(n).map_err(Verdict::Fail)))
}

fn c7_separation(cfg: &Config) -> Verdict {
    let cells: Vec<(u32, u32)> = (1..=cfg.max_n)
        .flat_map(|n| (1..=cfg.max_n).map(move |k| (n, k)))
        .collect();
    first_failure(cells.into_iter().map(|(n, k)| {
        let sep = separation_identity(n)?;
        let out = check_rees(&family(&[k]), &sep, cfg.budgets.matcher)?;
        match (n == k, out.status) {
            (false, Status::Holds) => Ok(()),
            (true, Status::Fails) => {
                let identity = Substitution::identity_on(&sep.lhs.alphabet());
                if out.witness == Some(Witness::Words(identity)) {
                    Ok(())
                } else {
                    Err(Verdict::Fail(format!("(n, k) = ({n}, {k}): witness is not the identity substitution")))
                }
            }
            (_, status) => Err(Verdict::Fail(format!("(n, k) = ({n}, {k}): {status}"))),
        }
    }))
}

fn c8_sigma_truncations(cfg: &Config) -> Verdict {
    let sigma = Basis::Sigma.identities();
    first_failure(subsets(cfg.max_n).into_iter().flat_map(|indices| {
        let source = family(&indices);
        sigma
            .iter()
            .map(|id| {
                let out = check_rees(&source, id, cfg.budgets.matcher)?;
                match out.witness {
                    None => Ok(()),
                    Some(Witness::Words(phi)) => Err(Verdict::Fail(format!("N = {}: {id} fails at {phi}", show(&indices)))),
                    Some(Witness::Elements(_)) => Err(Verdict::Fail(format!("N = {}: {id} fails", show(&indices)))),
                }
            })
            .collect::<Vec<_>>()
    }))
}

/// A separation identity holding in exactly one of `M(W_a)`, `M(W_b)`.
pub fn separating_index(a: &[u32], b: &[u32], matcher_budget: u64) -> Result<Option<u32>, IdentityError> {
    let diff: BTreeSet<u32> = a.iter().chain(b).copied().filter(|n| a.contains(n) != b.contains(n)).collect();
    for n in diff {
        let sep = separation_identity(n)?;
        let in_a = check_rees(&family(a), &sep, matcher_budget)?.holds_p();
        let in_b = check_rees(&family(b), &sep, matcher_budget)?.holds_p();
        if in_a != in_b {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn c9_distinct(cfg: &Config) -> Verdict {
    let all = subsets(cfg.max_n);
    if all.len() < 2 {
        return Verdict::Skipped("fewer than two subsets".to_string());
    }
    let pairs: Vec<(usize, usize)> = (0..all.len())
        .flat_map(|i| (i + 1..all.len()).map(move |j| (i, j)))
        .collect();
    first_failure(pairs.into_iter().map(|(i, j)| {
        match separating_index(&all[i], &all[j], cfg.budgets.matcher)? {
            Some(_) => Ok(()),
            None => Err(Verdict::Fail(format!("N = {} and N = {} are not separated", show(&all[i]), show(&all[j])))),
        }
    }))
}

fn c10_quotients(cfg: &Config) -> Verdict {
    let all = subsets(cfg.max_n);
    let monoids: Vec<ReesQuotient> = all.iter().map(|n| ReesQuotient::new(&family(n))).collect();
    let mut checks = Vec::new();
    for (i, big) in all.iter().enumerate() {
        for (j, small) in all.iter().enumerate() {
            if small.iter().all(|n| big.contains(n)) {
                checks.push((i, j));
            }
        }
    }
    first_failure(checks.into_iter().map(|(i, j)| {
        monoids[i]
            .quotient_map(&monoids[j])
            .map(|_| ())
            .map_err(|e| Verdict::Fail(format!("{} -> {}: {e}", show(&all[i]), show(&all[j]))))
    }))
}

fn c11_star(cfg: &Config) -> Verdict {
    if cfg.max_n < 2 {
        return Verdict::Skipped("needs max_n >= 2".to_string());
    }
    let pairs: Vec<(u32, u32)> = (1..=cfg.max_n)
        .flat_map(|n| (n + 1..=cfg.max_n).map(move |k| (n, k)))
        .collect();
    first_failure(pairs.into_iter().map(|(n, k)| {
        let wn = generate_wn(n).expect("n >= 1");
        let wk = generate_wn(k).expect("k >= 1");
        match find_star_violation(&wn, &wk, cfg.budgets.matcher)? {
            Some(phi) => Err(Verdict::Fail(format!("w_{n} into w_{k}: {phi}"))),
            None => Ok(()),
        }
    }))
}

fn random_word<R: Rng>(rng: &mut R, alphabet: &[char], min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    (0..len)
        .map(|_| Letter::plain(alphabet[rng.gen_range(0..alphabet.len())]))
        .collect()
}

/// One random instance `(w, phi, a, b)` of the first-occurrence depth bound.
pub fn random_no_div_instance<R: Rng>(rng: &mut R) -> (Word, Substitution, Word, Word) {
    const PATTERN: [char; 4] = ['a', 'b', 'c', 'd'];
    const IMAGES: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];
    let letters = rng.gen_range(1..=PATTERN.len());
    let w = random_word(rng, &PATTERN[..letters], 1, 9);
    let phi = w
        .alphabet()
        .into_iter()
        .map(|l| (l, Image::Word(random_word(rng, &IMAGES, 0, 3))))
        .collect();
    let a = random_word(rng, &IMAGES, 0, 3);
    let b = random_word(rng, &IMAGES, 0, 3);
    (w, phi, a, b)
}

pub const NO_DIV_CASES: usize = 1000;

/// Runs `count` seeded instances; `Err` carries the first false one.
pub fn no_div_campaign(seed: u64, count: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let (w, phi, a, b) = random_no_div_instance(&mut rng);
        match check_no_div_instance(&w, &phi, &a, &b) {
            Ok(true) => {}
            Ok(false) => return Err(format!("w = {w}, phi = {phi}, a = {a}, b = {b}")),
            Err(e) => return Err(format!("w = {w}: {e}")),
        }
    }
    Ok(count)
}

fn c12_no_div(cfg: &Config) -> Verdict {
    match no_div_campaign(cfg.seed, NO_DIV_CASES) {
        Ok(_) => Verdict::Pass,
        Err(w) => Verdict::Fail(w),
    }
}

/// Word sets of the checker cross-validation corpus.
pub fn cross_check_corpus() -> Vec<WordSet> {
    vec![
        WordSet::empty(),
        set(&["ab"]),
        set(&["aabb"]),
        set(&["abab"]),
        set(&["abba"]),
        family(&[1]),
        family(&[1, 2]),
    ]
}

/// Random identity over at most three variables, sides of length at most 6.
/// A third of them permute the left side, which keeps holding identities in
/// the mix.
pub fn random_identity<R: Rng>(rng: &mut R) -> Identity {
    const VARS: [char; 3] = ['x', 'y', 'z'];
    let k = rng.gen_range(1..=VARS.len());
    let lhs = random_word(rng, &VARS[..k], 0, 6);
    let rhs = match rng.gen_range(0..3) {
        0 => {
            let mut letters = lhs.clone().into_letters();
            for i in (1..letters.len()).rev() {
                letters.swap(i, rng.gen_range(0..=i));
            }
            Word::from(letters)
        }
        _ => random_word(rng, &VARS[..k], 0, 6),
    };
    Identity::new(lhs, rhs)
}

pub const CROSS_CHECK_COUNT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub comparisons: usize,
    pub first_discrepancy: Option<String>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

pub fn cross_check_checkers(seed: u64, count: usize, budgets: Budgets) -> Result<CrossCheck, IdentityError> {
    cross_check_with(seed, count, budgets, |w, id| check_rees(w, id, budgets.matcher))
}

/// Compares a word-set checker against the table checker on `count` seeded
/// identities over every corpus word set. Every FAILS witness is also
/// re-evaluated.
pub fn cross_check_with<F>(seed: u64, count: usize, budgets: Budgets, rees_check: F) -> Result<CrossCheck, IdentityError>
where
    F: Fn(&WordSet, &Identity) -> Result<CheckOutcome, IdentityError> + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<Identity> = (0..count).map(|_| random_identity(&mut rng)).collect();
    let mut comparisons = 0;
    for source in cross_check_corpus() {
        let q = ReesQuotient::new(&source);
        let verdicts = exec::map_slice(Strategy::default(), &ids, |id| -> Result<Option<String>, IdentityError> {
            let fast = rees_check(&source, id)?;
            let slow = check_table(q.monoid(), id, budgets.table)?;
            if fast.status != slow.status {
                return Ok(Some(format!("M({source}), {id}: rees {} but table {}", fast.status, slow.status)));
            }
            for out in [&fast, &slow] {
                if let Some(w) = &out.witness {
                    if !witness_refutes(id, w, &q)? {
                        return Ok(Some(format!("M({source}), {id}: witness does not refute")));
                    }
                }
            }
            Ok(None)
        });
        for v in verdicts {
            comparisons += 1;
            if let Some(d) = v? {
                return Ok(CrossCheck {
                    comparisons,
                    first_discrepancy: Some(d),
                });
            }
        }
    }
    Ok(CrossCheck {
        comparisons,
        first_discrepancy: None,
    })
}

fn c13_cross_check(cfg: &Config) -> Verdict {
    match cross_check_checkers(cfg.seed, CROSS_CHECK_COUNT, cfg.budgets) {
        Ok(c) if c.passed() => Verdict::Pass,
        Ok(c) => Verdict::Fail(c.first_discrepancy.unwrap_or_default()),
        Err(e) => e.into(),
    }
}

/// Words of length at most `max_len` whose letters first appear in the order
/// `a, b, c, ...`: one representative per renaming class.
pub fn canonical_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<u8>, u8)> = vec![(Vec::new(), 0)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, used) in &layer {
            for c in 0..=*used {
                let mut v = w.clone();
                v.push(c);
                next.push((v, (*used).max(c + 1)));
            }
        }
        out.extend(next.iter().map(|(w, _)| w.iter().map(|&c| Letter::plain((b'a' + c) as char)).collect::<Word>()));
        layer = next;
    }
    out.sort();
    out
}

pub const ENUMERATE_MAX_LEN: usize = 8;
pub const ENUMERATE_MAX_ORDER: usize = 10;

/// Canonical words with at least two letters occurring at least twice whose
/// Rees quotient `M(w)` has order at most `max_order`, with that order.
pub fn enumerate_small_rees(max_len: usize, max_order: usize) -> Vec<(Word, usize)> {
    enumerate_small_rees_with(max_len, max_order, Strategy::default())
}

pub fn enumerate_small_rees_with(max_len: usize, max_order: usize, strategy: Strategy) -> Vec<(Word, usize)> {
    let words: Vec<Word> = canonical_words(max_len)
        .into_iter()
        .filter(|w| w.alphabet_profile().multiple.len() >= 2)
        .collect();
    exec::map_slice(strategy, &words, |w| {
        // nonempty factors plus identity and zero
        let order = w.factors().len() + 1;
        (order <= max_order).then(|| (w.clone(), order))
    })
    .into_iter()
    .flatten()
    .collect()
}

fn c14_enumeration(_: &Config) -> Verdict {
    let found = enumerate_small_rees(ENUMERATE_MAX_LEN, ENUMERATE_MAX_ORDER);
    let expected = [("aabb", 10), ("abab", 9), ("abba", 10)];
    let got: Vec<(String, usize)> = found.iter().map(|(w, o)| (w.to_string(), *o)).collect();
    let want: Vec<(String, usize)> = expected.iter().map(|(w, o)| (w.to_string(), *o)).collect();
    if got != want {
        return Verdict::Fail(format!("found {got:?}"));
    }
    first_failure(found.iter().map(|(w, order)| {
        let q = ReesQuotient::new(&WordSet::new([w.clone()]).expect("nonempty"));
        if q.order() == *order {
            Ok(())
        } else {
            Err(Verdict::Fail(format!("M({w}) built with order {}", q.order())))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_counter_order() {
        assert_eq!(subsets(2), vec![vec![], vec![1], vec![2], vec![1, 2]]);
        assert_eq!(subsets(1).len(), 2);
    }

    #[test]
    fn canonical_words_are_renaming_representatives() {
        let words = canonical_words(3);
        let texts: Vec<String> = words.iter().map(Word::to_string).collect();
        assert_eq!(
            texts,
            ["a", "aa", "ab", "aaa", "aab", "aba", "abb", "abc"]
        );
        // Bell numbers 1, 2, 5, 15, 52
        assert_eq!(canonical_words(5).len(), 1 + 2 + 5 + 15 + 52);
    }

    #[test]
    fn enumeration_examples() {
        let texts = |v: Vec<(Word, usize)>| v.into_iter().map(|(w, o)| (w.to_string(), o)).collect::<Vec<_>>();
        assert_eq!(
            texts(enumerate_small_rees(8, 10)),
            [("aabb".to_string(), 10), ("abab".to_string(), 9), ("abba".to_string(), 10)]
        );
        assert_eq!(texts(enumerate_small_rees(8, 9)), [("abab".to_string(), 9)]);
        assert!(enumerate_small_rees(3, 10).is_empty());
    }

    #[test]
    fn expected_depths_cover_the_alphabet() {
        for n in 1..=4 {
            let w = generate_wn(n).unwrap();
            assert_eq!(expected_wn_depths(n).len(), w.alphabet().len());
        }
    }

    #[test]
    fn cross_check_vacuous_and_seeded() {
        let c = cross_check_checkers(1, 0, Budgets::default()).unwrap();
        assert!(c.passed());
        assert_eq!(c.comparisons, 0);
    }

    #[test]
    fn separating_index_examples() {
        assert_eq!(separating_index(&[1], &[], 1_000_000).unwrap(), Some(1));
        assert_eq!(separating_index(&[1], &[1], 1_000_000).unwrap(), None);
    }
}
