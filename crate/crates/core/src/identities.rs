//! Identities `u = v`, substitutions, and two independent satisfaction
//! checkers: exhaustive evaluation over a multiplication table, and a
//! factor-matching checker specialised to Rees quotients `M(W)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::monoid::FiniteMonoid;
use crate::rees::ReesQuotient;
use crate::words::{self, generate_wn, Depth, Letter, ParseError, TokenCursor, Word, WordError, WordSet};

pub const DEFAULT_TABLE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_MATCHER_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("variable {0} is not assigned")]
    MissingVariable(Letter),
    #[error("0 assigned in a monoid without zero")]
    ZeroWithoutZero,
    #[error("word {0} has no value in this monoid")]
    Unrepresentable(Word),
    #[error("budget exhausted after {examined} candidates (total {total})")]
    BudgetExceeded { examined: u64, total: String },
    #[error("unknown basis `{0}` (expected SIGMA or LEE_LI)")]
    UnknownBasis(String),
    #[error("substitution is not a match of the pattern into the target")]
    InvalidMatch,
    #[error("a pattern must be nonempty")]
    EmptyPattern,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<Letter> {
        let mut vars = self.lhs.alphabet();
        vars.extend(self.rhs.alphabet());
        vars
    }

    pub fn alphabets_agree(&self) -> bool {
        self.lhs.alphabet() == self.rhs.alphabet()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// One side of an identity. Dotted sides (containing `.` or `_`) use the
/// plain word syntax; compact sides read `x^k` as the power `x...x`.
fn parse_side(text: &str, offset: usize) -> Result<Word, ParseError> {
    let chars = words::significant_chars(text, offset);
    let end = offset + text.len();
    if chars.is_empty() {
        return Err(ParseError::new(end, "missing side; the empty word is spelled `1`"));
    }
    if chars.len() == 1 && chars[0].1 == '1' {
        return Ok(Word::empty());
    }
    if chars.iter().any(|&(_, c)| c == '.' || c == '_') {
        return words::parse_dotted(&chars, end).map(Word::from);
    }
    let mut cursor = TokenCursor::new(&chars, end);
    let mut out = Word::empty();
    while !cursor.at_end() {
        let letter = Letter::plain(cursor.base()?);
        let power = if cursor.peek() == Some('^') {
            cursor.bump();
            cursor.digits()?
        } else {
            1
        };
        for _ in 0..power {
            out.push(letter);
        }
    }
    Ok(out)
}

pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut parts = text.splitn(2, '=');
    let left = parts.next().unwrap_or_default();
    let right = parts
        .next()
        .ok_or_else(|| ParseError::new(text.len(), "expected `=`"))?;
    if let Some(extra) = right.find('=') {
        return Err(ParseError::new(left.len() + 1 + extra, "more than one `=`"));
    }
    Ok(Identity {
        lhs: parse_side(left, 0)?,
        rhs: parse_side(right, left.len() + 1)?,
    })
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_identity(text)
    }
}

/// Value assigned to a variable: a word, or the zero marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Image {
    Zero,
    Word(Word),
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Zero => f.write_str("0"),
            Image::Word(w) => write!(f, "{w}"),
        }
    }
}

/// Variable-to-word (or zero) map. The derived order compares entries in
/// variable order and is the canonical witness order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<Letter, Image>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Every letter of `alphabet` sent to itself.
    pub fn identity_on<'a, I: IntoIterator<Item = &'a Letter>>(alphabet: I) -> Substitution {
        alphabet
            .into_iter()
            .map(|&l| (l, Image::Word(Word::from(vec![l]))))
            .collect()
    }

    pub fn insert(&mut self, var: Letter, image: Image) {
        self.0.insert(var, image);
    }

    pub fn get(&self, var: &Letter) -> Option<&Image> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Image)> {
        self.0.iter()
    }

    pub fn word(&self, var: &Letter) -> Result<&Word, IdentityError> {
        match self.0.get(var) {
            Some(Image::Word(w)) => Ok(w),
            Some(Image::Zero) => Err(IdentityError::InvalidMatch),
            None => Err(IdentityError::MissingVariable(*var)),
        }
    }

    /// `phi(u)` as a word; `None` when some letter of `u` maps to zero.
    pub fn apply(&self, u: &Word) -> Result<Option<Word>, IdentityError> {
        let mut out = Word::empty();
        let mut zero = false;
        for var in u.letters() {
            match self.0.get(var) {
                Some(Image::Word(w)) => out = out.concat(w),
                Some(Image::Zero) => zero = true,
                None => return Err(IdentityError::MissingVariable(*var)),
            }
        }
        Ok((!zero).then_some(out))
    }
}

impl FromIterator<(Letter, Image)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Letter, Image)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (var, image)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{var}->{image}")?;
        }
        f.write_str("}")
    }
}

/// Variable-to-element map for table evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub BTreeMap<Letter, usize>);

impl Assignment {
    pub fn display<'a>(&'a self, m: &'a FiniteMonoid) -> impl fmt::Display + 'a {
        AssignmentDisplay(self, m)
    }

    /// The same assignment with elements replaced by their word labels; the
    /// zero element becomes the zero marker.
    pub fn to_substitution(&self, m: &FiniteMonoid) -> Option<Substitution> {
        self.0
            .iter()
            .map(|(&var, &e)| {
                if Some(e) == m.zero() {
                    Some((var, Image::Zero))
                } else {
                    m.label(e).as_word().map(|w| (var, Image::Word(w.clone())))
                }
            })
            .collect()
    }
}

struct AssignmentDisplay<'a>(&'a Assignment, &'a FiniteMonoid);

impl fmt::Display for AssignmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (var, &e)) in self.0 .0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{var}->{}", self.1.label(e))?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Words(Substitution),
    Elements(Assignment),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub status: Status,
    /// Present iff `status` is `Fails`.
    pub witness: Option<Witness>,
    pub evaluations: u64,
}

impl CheckOutcome {
    fn holds(evaluations: u64) -> CheckOutcome {
        CheckOutcome {
            status: Status::Holds,
            witness: None,
            evaluations,
        }
    }

    fn fails(witness: Witness, evaluations: u64) -> CheckOutcome {
        CheckOutcome {
            status: Status::Fails,
            witness: Some(witness),
            evaluations,
        }
    }

    pub fn holds_p(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn witness_text(&self, m: &FiniteMonoid) -> Option<String> {
        self.witness.as_ref().map(|w| match w {
            Witness::Words(s) => s.to_string(),
            Witness::Elements(a) => a.display(m).to_string(),
        })
    }
}

/// Something that gives words a value in a finite monoid.
pub trait WordModel {
    fn monoid(&self) -> &FiniteMonoid;
    fn word_element(&self, w: &Word) -> Option<usize>;
}

impl WordModel for FiniteMonoid {
    fn monoid(&self) -> &FiniteMonoid {
        self
    }

    fn word_element(&self, w: &Word) -> Option<usize> {
        self.word_value(w)
    }
}

impl WordModel for ReesQuotient {
    fn monoid(&self) -> &FiniteMonoid {
        ReesQuotient::monoid(self)
    }

    fn word_element(&self, w: &Word) -> Option<usize> {
        Some(self.element_of(w))
    }
}

/// Left-to-right product of the images of the letters of `u`, stopping at
/// zero.
pub fn evaluate<M: WordModel + ?Sized>(u: &Word, phi: &Substitution, model: &M) -> Result<usize, IdentityError> {
    let m = model.monoid();
    if let Some(&missing) = u.letters().iter().find(|v| phi.get(v).is_none()) {
        return Err(IdentityError::MissingVariable(missing));
    }
    let mut acc = m.one();
    for var in u.letters() {
        let value = match &phi.0[var] {
            Image::Zero => m.zero().ok_or(IdentityError::ZeroWithoutZero)?,
            Image::Word(w) => model
                .word_element(w)
                .ok_or_else(|| IdentityError::Unrepresentable(w.clone()))?,
        };
        acc = m.mul(acc, value);
        if Some(acc) == m.zero() {
            break;
        }
    }
    Ok(acc)
}

pub fn evaluate_assignment(u: &Word, a: &Assignment, m: &FiniteMonoid) -> Result<usize, IdentityError> {
    let mut acc = m.one();
    for var in u.letters() {
        let &e = a.0.get(var).ok_or(IdentityError::MissingVariable(*var))?;
        if e >= m.order() {
            return Err(IdentityError::Unrepresentable(Word::from(vec![*var])));
        }
        acc = m.mul(acc, e);
        if Some(acc) == m.zero() {
            break;
        }
    }
    Ok(acc)
}

/// Re-evaluates both sides under a witness; true iff they differ.
pub fn witness_refutes<M: WordModel + ?Sized>(id: &Identity, witness: &Witness, model: &M) -> Result<bool, IdentityError> {
    match witness {
        Witness::Words(phi) => Ok(evaluate(&id.lhs, phi, model)? != evaluate(&id.rhs, phi, model)?),
        Witness::Elements(a) => {
            let m = model.monoid();
            Ok(evaluate_assignment(&id.lhs, a, m)? != evaluate_assignment(&id.rhs, a, m)?)
        }
    }
}

pub fn check_table(m: &FiniteMonoid, id: &Identity, budget: u64) -> Result<CheckOutcome, IdentityError> {
    check_table_with(m, id, budget, Strategy::default())
}

const TABLE_CHUNK: u64 = 1 << 12;

/// Exhaustive check over all element assignments, in odometer order with the
/// least variable most significant. The first failing assignment in that
/// order is the witness, whatever the strategy; if it lies beyond `budget`
/// the check reports the budget as exhausted.
pub fn check_table_with(
    m: &FiniteMonoid,
    id: &Identity,
    budget: u64,
    strategy: Strategy,
) -> Result<CheckOutcome, IdentityError> {
    if id.is_trivial() {
        return Ok(CheckOutcome::holds(0));
    }
    let vars: Vec<Letter> = id.variables().into_iter().collect();
    let slot: HashMap<Letter, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let lhs: Vec<usize> = id.lhs.letters().iter().map(|v| slot[v]).collect();
    let rhs: Vec<usize> = id.rhs.letters().iter().map(|v| slot[v]).collect();
    let n = m.order() as u128;
    let total = n.checked_pow(vars.len() as u32);
    let limit = total.map_or(budget, |t| t.min(budget as u128) as u64);
    let eval = |side: &[usize], digits: &[usize]| {
        let mut acc = m.one();
        for &s in side {
            acc = m.mul(acc, digits[s]);
            if Some(acc) == m.zero() {
                break;
            }
        }
        acc
    };

    let chunks = limit.div_ceil(TABLE_CHUNK) as usize;
    let hit = exec::find_first(strategy, chunks, |c| {
        let start = c as u64 * TABLE_CHUNK;
        let end = (start + TABLE_CHUNK).min(limit);
        let mut digits = vec![0usize; vars.len()];
        let mut rest = start;
        for d in digits.iter_mut().rev() {
            *d = (rest % n as u64) as usize;
            rest /= n as u64;
        }
        for index in start..end {
            if eval(&lhs, &digits) != eval(&rhs, &digits) {
                return Some((index, digits));
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < m.order() {
                    break;
                }
                *d = 0;
            }
        }
        None
    });
    match hit {
        Some((index, digits)) => {
            let a = Assignment(vars.iter().copied().zip(digits).collect());
            Ok(CheckOutcome::fails(Witness::Elements(a), index + 1))
        }
        None if total.is_some_and(|t| t <= limit as u128) => Ok(CheckOutcome::holds(limit)),
        None => Err(IdentityError::BudgetExceeded {
            examined: limit,
            total: total.map_or_else(|| "more than 2^128".to_string(), |t| t.to_string()),
        }),
    }
}

/// Substitutions found by [`match_pattern_budgeted`] and the number of
/// search nodes visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSet {
    pub substitutions: BTreeSet<Substitution>,
    pub nodes: u64,
}

pub fn match_pattern(u: &Word, w: &Word, erasing: bool) -> Result<BTreeSet<Substitution>, IdentityError> {
    match_pattern_budgeted(u, w, erasing, DEFAULT_MATCHER_BUDGET).map(|m| m.substitutions)
}

/// Segment `(start, len)` in the target bound to each pattern variable.
type Bindings = [Option<(usize, usize)>];

struct Search<'a, F> {
    pattern: Vec<usize>,
    /// Whether pattern position `i` is followed by another occurrence of its
    /// variable.
    recurs: Vec<bool>,
    target: &'a [Letter],
    min_len: usize,
    bound: Vec<Option<(usize, usize)>>,
    nodes: u64,
    budget: u64,
    visit: F,
}

impl<F: FnMut(&Bindings, usize, usize)> Search<'_, F> {
    fn run(&mut self, i: usize, start: usize, pos: usize) -> Result<(), IdentityError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(IdentityError::BudgetExceeded {
                examined: self.budget,
                total: "unknown".to_string(),
            });
        }
        if i == self.pattern.len() {
            (self.visit)(&self.bound, start, pos);
            return Ok(());
        }
        let remaining = self.target.len() - pos;
        let needed: usize = self.pattern[i..]
            .iter()
            .map(|&v| self.bound[v].map_or(self.min_len, |(_, l)| l))
            .sum();
        if needed > remaining {
            return Ok(());
        }
        let var = self.pattern[i];
        if let Some((from, len)) = self.bound[var] {
            if self.target[pos..pos + len] == self.target[from..from + len] {
                self.run(i + 1, start, pos + len)?;
            }
            return Ok(());
        }
        let slack = remaining - needed;
        for len in self.min_len..=self.min_len + slack {
            let segment = &self.target[pos..pos + len];
            // a recurring variable needs its segment again further right
            if len > 0 && self.recurs[i] {
                let later = &self.target[pos + len..];
                if !later.windows(len).any(|win| win == segment) {
                    continue;
                }
            }
            self.bound[var] = Some((pos, len));
            self.run(i + 1, start, pos + len)?;
            self.bound[var] = None;
        }
        Ok(())
    }
}

/// Variables of `u` in letter order and `u` as slots into that list.
fn slots(u: &Word) -> (Vec<Letter>, HashMap<Letter, usize>, Vec<usize>) {
    let vars: Vec<Letter> = u.alphabet().into_iter().collect();
    let slot: HashMap<Letter, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let pattern = u.letters().iter().map(|v| slot[v]).collect();
    (vars, slot, pattern)
}

/// Calls `visit(bindings, start, end)` for every way of laying `u` over a
/// factor `w[start..end]`, variables indexed in letter order. The same
/// substitution can be visited more than once (at different placements).
/// Returns the number of search nodes.
pub fn for_each_match<F>(u: &Word, w: &Word, erasing: bool, budget: u64, visit: F) -> Result<u64, IdentityError>
where
    F: FnMut(&Bindings, usize, usize),
{
    if u.is_empty() {
        return Err(IdentityError::EmptyPattern);
    }
    let (vars, _, pattern) = slots(u);
    let recurs = (0..pattern.len())
        .map(|i| pattern[i + 1..].contains(&pattern[i]))
        .collect();
    let mut search = Search {
        bound: vec![None; vars.len()],
        pattern,
        recurs,
        target: w.letters(),
        min_len: usize::from(!erasing),
        nodes: 0,
        budget,
        visit,
    };
    for start in 0..=w.len() {
        search.run(0, start, start)?;
    }
    Ok(search.nodes)
}

fn bindings_to_substitution(vars: &[Letter], bound: &Bindings, target: &Word) -> Substitution {
    vars.iter()
        .zip(bound)
        .map(|(&v, b)| {
            let (s, l) = b.expect("every variable is bound at a leaf");
            (v, Image::Word(target.slice(s, s + l)))
        })
        .collect()
}

/// Every substitution `phi` from the letters of `u` to factors of `w`
/// (empty factors allowed iff `erasing`) with `phi(u)` a factor of `w`.
pub fn match_pattern_budgeted(u: &Word, w: &Word, erasing: bool, budget: u64) -> Result<MatchSet, IdentityError> {
    let vars: Vec<Letter> = u.alphabet().into_iter().collect();
    let mut substitutions = BTreeSet::new();
    let nodes = for_each_match(u, w, erasing, budget, |bound, _, _| {
        substitutions.insert(bindings_to_substitution(&vars, bound, w));
    })?;
    Ok(MatchSet { substitutions, nodes })
}

pub fn check_rees(source: &WordSet, id: &Identity, budget: u64) -> Result<CheckOutcome, IdentityError> {
    check_rees_with(source, id, budget, Strategy::default())
}

/// Decides `id` in `M(W)` without enumerating the monoid.
///
/// A letter on one side only can be sent to 0 with every other letter sent
/// to 1, which separates the sides. With equal alphabets, an assignment
/// using 0 makes both sides 0, so a failure has some side evaluating to a
/// nonzero factor; the matcher enumerates exactly those assignments. The
/// witness is the least mismatching substitution.
pub fn check_rees_with(
    source: &WordSet,
    id: &Identity,
    budget: u64,
    strategy: Strategy,
) -> Result<CheckOutcome, IdentityError> {
    let vars = id.variables();
    let (left, right) = (id.lhs.alphabet(), id.rhs.alphabet());
    if let Some(&odd) = left.symmetric_difference(&right).min() {
        let phi = vars
            .iter()
            .map(|&v| (v, if v == odd { Image::Zero } else { Image::Word(Word::empty()) }))
            .collect();
        return Ok(CheckOutcome::fails(Witness::Words(phi), 1));
    }
    if id.is_trivial() {
        return Ok(CheckOutcome::holds(0));
    }
    let jobs: Vec<(&Word, &Word, &Word)> = source
        .iter()
        .flat_map(|w| [(w, &id.lhs, &id.rhs), (w, &id.rhs, &id.lhs)])
        .collect();
    let results = exec::map_slice(strategy, &jobs, |&(w, pattern, other)| {
        let (vars, slot, _) = slots(pattern);
        let other: Vec<usize> = other.letters().iter().map(|v| slot[v]).collect();
        let target = w.letters();
        let mut least: Option<Substitution> = None;
        let mut leaves = 0u64;
        for_each_match(pattern, w, true, budget, |bound, start, end| {
            leaves += 1;
            // does phi(other) spell exactly w[start..end]?
            let mut at = start;
            let same = other.iter().all(|&v| {
                let (s, l) = bound[v].expect("alphabets agree");
                let ok = at + l <= end && target[at..at + l] == target[s..s + l];
                at += l;
                ok
            }) && at == end;
            if !same {
                let phi = bindings_to_substitution(&vars, bound, w);
                if least.as_ref().is_none_or(|l| phi < *l) {
                    least = Some(phi);
                }
            }
        })?;
        Ok::<_, IdentityError>((least, leaves))
    });
    let mut least: Option<Substitution> = None;
    let mut evaluations = 0;
    for result in results {
        let (candidate, count) = result?;
        evaluations += count;
        if let Some(phi) = candidate {
            if least.as_ref().is_none_or(|l| phi < *l) {
                least = Some(phi);
            }
        }
    }
    Ok(match least {
        Some(phi) => CheckOutcome::fails(Witness::Words(phi), evaluations),
        None => CheckOutcome::holds(evaluations),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Identity basis of `M(aabb)`.
    Sigma,
    /// Identity basis of the six-element monoid `M_SCRIPT`.
    LeeLi,
}

impl FromStr for Basis {
    type Err = IdentityError;

    fn from_str(name: &str) -> Result<Self, Self::Err> {
        match name.to_ascii_uppercase().as_str() {
            "SIGMA" => Ok(Basis::Sigma),
            "LEE_LI" | "LEELI" => Ok(Basis::LeeLi),
            _ => Err(IdentityError::UnknownBasis(name.to_string())),
        }
    }
}

impl Basis {
    pub fn identities(self) -> Vec<Identity> {
        let texts: &[&str] = match self {
            Basis::Sigma => &[
                "x^3 = x^4",
                "x^3y = yx^3",
                "yzx^3 = xyxzx",
                "xyzxty = yxzxty",
                "xzytxy = xzytyx",
            ],
            Basis::LeeLi => &[
                "x^3 = x^4",
                "yzx^3 = xyxzx",
                "x^3y^3 = y^3x^3",
                "ytx^3y = ytyx^3",
                "xyzxty = yxzxty",
                "xzytxy = xzytyx",
            ],
        };
        texts
            .iter()
            .map(|t| t.parse().expect("basis identities parse"))
            .collect()
    }
}

pub fn basis(name: &str) -> Result<Vec<Identity>, IdentityError> {
    name.parse::<Basis>().map(Basis::identities)
}

/// `w_n = x x (w_n)_x`.
pub fn separation_identity(n: u32) -> Result<Identity, IdentityError> {
    let wn = generate_wn(n)?;
    let mut rhs = Word::from(vec![words::X, words::X]);
    rhs = rhs.concat(&wn.delete_letter(words::X));
    Ok(Identity::new(wn, rhs))
}

/// Start offsets (0-based) in `target` of the image of each pattern
/// position, for a match placed at `start`.
fn placement(pattern: &Word, phi: &Substitution, start: usize) -> Result<Vec<usize>, IdentityError> {
    let mut offsets = Vec::with_capacity(pattern.len());
    let mut at = start;
    for var in pattern.letters() {
        offsets.push(at);
        at += phi.word(var)?.len();
    }
    Ok(offsets)
}

fn first_two(w: &Word) -> HashMap<Letter, (usize, Option<usize>)> {
    let mut out: HashMap<Letter, (usize, Option<usize>)> = HashMap::new();
    for (i, &l) in w.letters().iter().enumerate() {
        out.entry(l)
            .and_modify(|e| {
                e.1.get_or_insert(i);
            })
            .or_insert((i, None));
    }
    out
}

/// For every multiple letter `c` of the pattern, `phi(c)` is empty or a
/// single letter `d`, multiple in the target, whose first and second
/// occurrences receive the images of the first and second occurrences of
/// `c`. Checked at every placement of `phi(pattern)` in the target.
pub fn check_star_property(pattern: &Word, target: &Word, phi: &Substitution) -> Result<bool, IdentityError> {
    let image = phi.apply(pattern)?.ok_or(IdentityError::InvalidMatch)?;
    let starts: Vec<usize> = (0..=target.len())
        .filter(|&s| target.find_factor(image.letters(), s) == Some(s))
        .collect();
    if starts.is_empty() {
        return Err(IdentityError::InvalidMatch);
    }
    let in_pattern = first_two(pattern);
    let in_target = first_two(target);
    for start in starts {
        let offsets = placement(pattern, phi, start)?;
        for (c, &(p1, p2)) in &in_pattern {
            let Some(p2) = p2 else { continue };
            let img = phi.word(c)?;
            if img.is_empty() {
                continue;
            }
            if img.len() != 1 {
                return Ok(false);
            }
            let d = img.letters()[0];
            match in_target.get(&d) {
                Some(&(q1, Some(q2))) if offsets[p1] == q1 && offsets[p2] == q2 => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Runs [`check_star_property`] over every erasing match of `pattern` into
/// `target` without collecting them. Returns the least violating
/// substitution, if any.
pub fn find_star_violation(pattern: &Word, target: &Word, budget: u64) -> Result<Option<Substitution>, IdentityError> {
    let (vars, slot, code) = slots(pattern);
    let multiple: Vec<(usize, usize, usize)> = first_two(pattern)
        .into_iter()
        .filter_map(|(c, (p1, p2))| p2.map(|p2| (slot[&c], p1, p2)))
        .collect();
    let in_target = first_two(target);
    let letters = target.letters();
    let mut worst: Option<Substitution> = None;
    let mut offsets = vec![0; code.len()];
    for_each_match(pattern, target, true, budget, |bound, start, _| {
        let mut at = start;
        for (i, &v) in code.iter().enumerate() {
            offsets[i] = at;
            at += bound[v].map_or(0, |(_, l)| l);
        }
        let ok = multiple.iter().all(|&(v, p1, p2)| match bound[v] {
            Some((_, 0)) => true,
            Some((s, 1)) => {
                matches!(in_target.get(&letters[s]), Some(&(q1, Some(q2))) if offsets[p1] == q1 && offsets[p2] == q2)
            }
            _ => false,
        });
        if !ok {
            let phi = bindings_to_substitution(&vars, bound, target);
            if worst.as_ref().is_none_or(|w| phi < *w) {
                worst = Some(phi);
            }
        }
    })?;
    Ok(worst)
}

/// Builds `u = a phi(w) b` and checks that, for every letter `x` of `w` of
/// positive finite depth, the image of the first occurrence of `x` contains
/// no first occurrence (in `u`) of a letter whose depth in `u` is below the
/// depth of `x` in `w`.
pub fn check_no_div_instance(w: &Word, phi: &Substitution, a: &Word, b: &Word) -> Result<bool, IdentityError> {
    let body = phi.apply(w)?.ok_or(IdentityError::InvalidMatch)?;
    let u = a.concat(&body).concat(b);
    let offsets = placement(w, phi, a.len())?;
    let depth_w = w.depth_map();
    let depth_u = u.depth_map();
    let mut first_in_u: HashMap<Letter, usize> = HashMap::new();
    for (i, &l) in u.letters().iter().enumerate() {
        first_in_u.entry(l).or_insert(i);
    }
    for (x, &(p1, _)) in &first_two(w) {
        let Depth::Finite(dx) = depth_w[x] else { continue };
        if dx == 0 {
            continue;
        }
        let start = offsets[p1];
        let len = phi.word(x)?.len();
        for p in start..start + len {
            let letter = u.letters()[p];
            if first_in_u[&letter] == p {
                if let Depth::Finite(d) = depth_u[&letter] {
                    if d < dx {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
