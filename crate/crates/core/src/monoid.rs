//! Finite monoids as validated multiplication tables and their construction
//! from finite presentations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("table is not associative: ({s}*{t})*{u} != {s}*({t}*{u})")]
    NonAssociative { s: String, t: String, u: String },
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(String),
    #[error("element {0} is not a two-sided zero")]
    BadZero(String),
    #[error("label {0} is used by more than one element")]
    DuplicateLabels(String),
    #[error("table must be {expected}x{expected}")]
    BadShape { expected: usize },
    #[error("element index {index} is out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("presentation has no generators")]
    EmptyGenerators,
    #[error("relation uses undeclared generator {0}")]
    UnknownGenerator(Letter),
    #[error("relation uses 0 but the presentation has no zero")]
    ZeroNotDeclared,
    #[error("relations of a semigroup presentation cannot have an empty side")]
    EmptyRelationSide,
    #[error("closure did not stabilize: {order} classes at length {max_len}, {next_order} at length {}", max_len + 1)]
    NotStabilized {
        max_len: usize,
        order: usize,
        next_order: usize,
    },
    #[error("unknown preset `{0}` (expected M_SCRIPT, A21 or B21)")]
    UnknownPreset(String),
}

/// Name of a monoid element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Word(Word),
    Symbol(String),
}

impl Label {
    pub fn zero() -> Label {
        Label::Symbol("0".to_string())
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Label::Word(w) => Some(w),
            Label::Symbol(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Word(w) => write!(f, "{w}"),
            Label::Symbol(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Label {
    /// Word syntax when it parses, otherwise an opaque symbol.
    fn from(text: &str) -> Self {
        match text.parse::<Word>() {
            Ok(w) => Label::Word(w),
            Err(_) => Label::Symbol(text.to_string()),
        }
    }
}

/// Wire form: `{"elements": [...], "one": i, "zero": i|null, "table": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct MonoidJson {
    elements: Vec<String>,
    one: usize,
    zero: Option<usize>,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MonoidJson", into = "MonoidJson")]
pub struct FiniteMonoid {
    labels: Vec<Label>,
    one: usize,
    zero: Option<usize>,
    table: Vec<usize>,
}

impl TryFrom<MonoidJson> for FiniteMonoid {
    type Error = MonoidError;

    fn try_from(raw: MonoidJson) -> Result<Self, Self::Error> {
        let labels = raw.elements.iter().map(|s| Label::from(s.as_str())).collect();
        FiniteMonoid::from_table(labels, raw.one, raw.zero, raw.table)
    }
}

impl From<FiniteMonoid> for MonoidJson {
    fn from(m: FiniteMonoid) -> Self {
        let n = m.order();
        MonoidJson {
            elements: m.labels.iter().map(Label::to_string).collect(),
            one: m.one,
            zero: m.zero,
            table: m.table.chunks(n).map(<[usize]>::to_vec).collect(),
        }
    }
}

impl FiniteMonoid {
    /// Validates shape, labels, identity, zero and associativity, in that
    /// order. A non-associative table reports the lexicographically least
    /// failing triple.
    pub fn from_table(
        labels: Vec<Label>,
        one: usize,
        zero: Option<usize>,
        rows: Vec<Vec<usize>>,
    ) -> Result<FiniteMonoid, MonoidError> {
        let n = labels.len();
        if n == 0 || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(MonoidError::BadShape { expected: n });
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        for &index in table.iter().chain([one].iter()).chain(zero.iter()) {
            if index >= n {
                return Err(MonoidError::IndexOutOfRange { index, order: n });
            }
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l, i).is_some() {
                return Err(MonoidError::DuplicateLabels(l.to_string()));
            }
        }
        let m = FiniteMonoid {
            labels,
            one,
            zero,
            table,
        };
        if (0..n).any(|s| m.mul(one, s) != s || m.mul(s, one) != s) {
            return Err(MonoidError::BadIdentity(m.labels[one].to_string()));
        }
        if let Some(z) = zero {
            if (0..n).any(|s| m.mul(z, s) != z || m.mul(s, z) != z) {
                return Err(MonoidError::BadZero(m.labels[z].to_string()));
            }
        }
        if let Some((s, t, u)) = m.associativity_witness(Strategy::default()) {
            return Err(MonoidError::NonAssociative {
                s: m.labels[s].to_string(),
                t: m.labels[t].to_string(),
                u: m.labels[u].to_string(),
            });
        }
        Ok(m)
    }

    /// Least triple `(s, t, u)` with `(st)u != s(tu)`.
    pub fn associativity_witness(&self, strategy: Strategy) -> Option<(usize, usize, usize)> {
        let n = self.order();
        exec::find_first(strategy, n, |s| {
            for t in 0..n {
                let st = self.mul(s, t);
                for u in 0..n {
                    if self.mul(st, u) != self.mul(s, self.mul(t, u)) {
                        return Some((s, t, u));
                    }
                }
            }
            None
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &Label {
        &self.labels[element]
    }

    pub fn element_by_label(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Unchecked product; panics on out-of-range indices.
    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.labels.len() + t]
    }

    pub fn multiply(&self, s: usize, t: usize) -> Result<usize, MonoidError> {
        let order = self.order();
        for index in [s, t] {
            if index >= order {
                return Err(MonoidError::IndexOutOfRange { index, order });
            }
        }
        Ok(self.mul(s, t))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order())
    }

    /// Value of a word over the generator labels: the product of the elements
    /// labelled by its single letters. `None` if some letter labels no element.
    pub fn word_value(&self, w: &Word) -> Option<usize> {
        let mut acc = self.one;
        for &letter in w.letters() {
            let single = Label::Word(Word::from(vec![letter]));
            acc = self.mul(acc, self.element_by_label(&single)?);
        }
        Some(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("monoid serializes")
    }
}

/// Right-hand side of a defining relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationSide {
    Word(Word),
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Letter>,
    pub relations: Vec<(Word, RelationSide)>,
    /// Semigroup presentation with a fresh identity adjoined; relation sides
    /// must then be nonempty.
    pub adjoin_identity: bool,
    pub has_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `<a, e | ee = e, aaa = ae = 0, eaa = aa> + 1`
    MScript,
    /// `<a, b | aa = 0, aba = a, bab = bb = b> + 1`
    A21,
    /// `<a, b | aa = bb = 0, aba = a, bab = b> + 1`
    B21,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::MScript, Preset::A21, Preset::B21];

    pub fn name(self) -> &'static str {
        match self {
            Preset::MScript => "M_SCRIPT",
            Preset::A21 => "A21",
            Preset::B21 => "B21",
        }
    }

    pub fn presentation(self) -> Presentation {
        let w = |s: &str| Word::plain(s);
        let eq = |l: &str, r: &str| (w(l), RelationSide::Word(w(r)));
        let zero = |l: &str| (w(l), RelationSide::Zero);
        let (generators, relations) = match self {
            Preset::MScript => ("ae", vec![eq("ee", "e"), zero("aaa"), zero("ae"), eq("eaa", "aa")]),
            Preset::A21 => ("ab", vec![zero("aa"), eq("aba", "a"), eq("bab", "b"), eq("bb", "b")]),
            Preset::B21 => ("ab", vec![zero("aa"), zero("bb"), eq("aba", "a"), eq("bab", "b")]),
        };
        Presentation {
            generators: generators.chars().map(Letter::plain).collect(),
            relations,
            adjoin_identity: true,
            has_zero: true,
        }
    }
}

impl FromStr for Preset {
    type Err = MonoidError;

    fn from_str(name: &str) -> Result<Self, Self::Err> {
        match name.to_ascii_uppercase().as_str() {
            "M_SCRIPT" | "M" => Ok(Preset::MScript),
            "A21" => Ok(Preset::A21),
            "B21" => Ok(Preset::B21),
            _ => Err(MonoidError::UnknownPreset(name.to_string())),
        }
    }
}

pub fn preset(name: &str) -> Result<Presentation, MonoidError> {
    name.parse::<Preset>().map(Preset::presentation)
}

pub const DEFAULT_CLOSURE_LENGTH: usize = 6;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Labels, identity, zero and rows, ready for [`FiniteMonoid::from_table`].
type TableParts = (Vec<Label>, usize, Option<usize>, Vec<Vec<usize>>);

/// Classes of the bounded closure at one length bound.
struct Closure {
    classes: usize,
    /// Labels and rows, when every product of representatives stays within
    /// the bound.
    table: Option<TableParts>,
}

fn words_up_to(generators: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * generators.len());
        for w in &layer {
            for &g in generators {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

fn replace_at(w: &Word, at: usize, len: usize, with: &Word) -> Word {
    let letters = w.letters();
    letters[..at]
        .iter()
        .chain(with.letters())
        .chain(&letters[at + len..])
        .copied()
        .collect()
}

fn close(p: &Presentation, max_len: usize) -> Closure {
    let words = words_up_to(&p.generators, max_len);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let zero_node = words.len();
    let mut uf = UnionFind((0..=zero_node).collect());

    for (i, w) in words.iter().enumerate() {
        for (lhs, rhs) in &p.relations {
            let mut directions = vec![(lhs, rhs.clone())];
            if let RelationSide::Word(r) = rhs {
                directions.push((r, RelationSide::Word(lhs.clone())));
            }
            for (from, to) in directions {
                let mut at = 0;
                while let Some(pos) = w.find_factor(from.letters(), at) {
                    match &to {
                        RelationSide::Zero => uf.union(i, zero_node),
                        RelationSide::Word(to) => {
                            let v = replace_at(w, pos, from.len(), to);
                            if let Some(&j) = index.get(&v) {
                                uf.union(i, j);
                            }
                        }
                    }
                    at = pos + 1;
                    if at > w.len() {
                        break;
                    }
                }
            }
        }
    }

    // words are sorted, so the first member met is the shortlex-least one
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reps: Vec<&Word> = Vec::new();
    let mut class_of_word = vec![0; words.len()];
    for (i, w) in words.iter().enumerate() {
        let root = uf.find(i);
        let class = *class_of_root.entry(root).or_insert_with(|| {
            reps.push(w);
            reps.len() - 1
        });
        class_of_word[i] = class;
    }
    let zero_root = uf.find(zero_node);
    // a zero class that absorbed no word is appended after the word classes
    let zero_class = p
        .has_zero
        .then(|| class_of_root.get(&zero_root).copied().unwrap_or(reps.len()));
    let classes = reps.len() + usize::from(zero_class == Some(reps.len()));
    // class 0 holds the empty word; if it is also zero the monoid is trivial
    let degenerate = zero_class == Some(0);
    let is_zero = |c: usize| !degenerate && Some(c) == zero_class;

    // element order: word classes by representative, then the zero class
    let mut order: Vec<usize> = (0..reps.len()).filter(|&c| !is_zero(c)).collect();
    order.extend(zero_class.filter(|&c| is_zero(c)));
    let mut position = vec![0; classes];
    for (pos, &c) in order.iter().enumerate() {
        position[c] = pos;
    }
    let labels: Vec<Label> = order
        .iter()
        .map(|&c| if is_zero(c) { Label::zero() } else { Label::Word(reps[c].clone()) })
        .collect();

    let mut rows = vec![vec![0; classes]; classes];
    for (pi, &ci) in order.iter().enumerate() {
        for (pj, &cj) in order.iter().enumerate() {
            let product = if let Some(zc) = zero_class.filter(|&zc| zc == ci || zc == cj) {
                zc
            } else {
                let rs = reps[ci].concat(reps[cj]);
                match index.get(&rs) {
                    Some(&k) => class_of_word[k],
                    None => return Closure { classes, table: None },
                }
            };
            rows[pi][pj] = position[product];
        }
    }
    let one = position[class_of_word[0]];
    let zero = zero_class.map(|c| position[c]);
    Closure {
        classes,
        table: Some((labels, one, zero, rows)),
    }
}

fn validate(p: &Presentation) -> Result<(), MonoidError> {
    if p.generators.is_empty() {
        return Err(MonoidError::EmptyGenerators);
    }
    for (lhs, rhs) in &p.relations {
        let rhs_word = match rhs {
            RelationSide::Word(w) => Some(w),
            RelationSide::Zero if p.has_zero => None,
            RelationSide::Zero => return Err(MonoidError::ZeroNotDeclared),
        };
        for side in std::iter::once(lhs).chain(rhs_word) {
            if p.adjoin_identity && side.is_empty() {
                return Err(MonoidError::EmptyRelationSide);
            }
            if let Some(&g) = side.letters().iter().find(|l| !p.generators.contains(l)) {
                return Err(MonoidError::UnknownGenerator(g));
            }
        }
    }
    Ok(())
}

/// Bounded congruence closure over all generator words of length at most
/// `max_len`, accepted only if the bound `max_len + 1` yields the same table.
/// Elements are labelled by shortlex-least representatives; the zero class
/// is labelled `0`.
pub fn from_presentation(p: &Presentation, max_len: usize) -> Result<FiniteMonoid, MonoidError> {
    validate(p)?;
    let at = close(p, max_len);
    let next = close(p, max_len + 1);
    match (at.table, next.table) {
        (Some(a), Some(b)) if a == b => {
            let (labels, one, zero, rows) = a;
            FiniteMonoid::from_table(labels, one, zero, rows)
        }
        _ => Err(MonoidError::NotStabilized {
            max_len,
            order: at.classes,
            next_order: next.classes,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<Label> {
        names.iter().map(|s| Label::from(*s)).collect()
    }

    #[test]
    fn trivial_and_two_element_tables() {
        let m = FiniteMonoid::from_table(labels(&["1"]), 0, None, vec![vec![0]]).unwrap();
        assert_eq!(m.order(), 1);
        let m = FiniteMonoid::from_table(labels(&["1", "0"]), 0, Some(1), vec![vec![0, 1], vec![1, 1]])
            .unwrap();
        assert_eq!(m.zero(), Some(1));
        assert_eq!(m.multiply(1, 0), Ok(1));
        assert!(m.multiply(2, 0).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        // s*s = 1, s*t = s, t*s = t, t*t = t; (s*s)*t = t but s*(s*t) = 1
        let err = FiniteMonoid::from_table(
            labels(&["1", "s", "t"]),
            0,
            None,
            vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 2]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            MonoidError::NonAssociative { s: "s".into(), t: "s".into(), u: "t".into() }
        );
        let err = FiniteMonoid::from_table(labels(&["1", "a"]), 0, None, vec![vec![0, 0], vec![1, 1]])
            .unwrap_err();
        assert!(matches!(err, MonoidError::BadIdentity(_)));
        let err = FiniteMonoid::from_table(labels(&["1", "0"]), 0, Some(1), vec![vec![0, 1], vec![1, 0]])
            .unwrap_err();
        assert!(matches!(err, MonoidError::BadZero(_)));
        let err = FiniteMonoid::from_table(labels(&["a", "a"]), 0, None, vec![vec![0, 1], vec![1, 1]])
            .unwrap_err();
        assert!(matches!(err, MonoidError::DuplicateLabels(_)));
        let err = FiniteMonoid::from_table(labels(&["1"]), 0, None, vec![vec![0, 0]]).unwrap_err();
        assert!(matches!(err, MonoidError::BadShape { .. }));
        let err = FiniteMonoid::from_table(labels(&["1"]), 0, None, vec![vec![3]]).unwrap_err();
        assert!(matches!(err, MonoidError::IndexOutOfRange { .. }));
    }

    #[test]
    fn m_script_from_presentation() {
        let m = from_presentation(&Preset::MScript.presentation(), 5).unwrap();
        let names: Vec<String> = m.labels().iter().map(Label::to_string).collect();
        assert_eq!(names, ["1", "a", "e", "aa", "ea", "0"]);
        assert_eq!(m.one(), 0);
        assert_eq!(m.zero(), Some(5));
    }

    #[test]
    fn presets_have_order_six_at_default_bound() {
        for p in Preset::ALL {
            let m = from_presentation(&p.presentation(), DEFAULT_CLOSURE_LENGTH).unwrap();
            assert_eq!(m.order(), 6, "{}", p.name());
        }
    }

    #[test]
    fn defining_relations_hold_in_m_script() {
        let p = Preset::MScript.presentation();
        let m = from_presentation(&p, DEFAULT_CLOSURE_LENGTH).unwrap();
        for (lhs, rhs) in &p.relations {
            let l = m.word_value(lhs).unwrap();
            let r = match rhs {
                RelationSide::Word(w) => m.word_value(w).unwrap(),
                RelationSide::Zero => m.zero().unwrap(),
            };
            assert_eq!(l, r, "{lhs}");
        }
    }

    #[test]
    fn a_equals_one_collapses() {
        let p = Presentation {
            generators: vec![Letter::plain('a')],
            relations: vec![(Word::plain("a"), RelationSide::Word(Word::empty()))],
            adjoin_identity: false,
            has_zero: false,
        };
        assert_eq!(from_presentation(&p, 3).unwrap().order(), 1);
    }

    #[test]
    fn free_monoid_never_stabilizes() {
        let p = Presentation {
            generators: vec![Letter::plain('a')],
            relations: vec![],
            adjoin_identity: true,
            has_zero: false,
        };
        let err = from_presentation(&p, 4).unwrap_err();
        assert_eq!(err, MonoidError::NotStabilized { max_len: 4, order: 5, next_order: 6 });
    }

    #[test]
    fn presentation_validation() {
        let mut p = Preset::A21.presentation();
        p.generators.clear();
        assert_eq!(from_presentation(&p, 6), Err(MonoidError::EmptyGenerators));
        let mut p = Preset::A21.presentation();
        p.has_zero = false;
        assert_eq!(from_presentation(&p, 6), Err(MonoidError::ZeroNotDeclared));
        let mut p = Preset::A21.presentation();
        p.relations.push((Word::plain("c"), RelationSide::Zero));
        assert_eq!(
            from_presentation(&p, 6),
            Err(MonoidError::UnknownGenerator(Letter::plain('c')))
        );
        let mut p = Preset::A21.presentation();
        p.relations.push((Word::plain("a"), RelationSide::Word(Word::empty())));
        assert_eq!(from_presentation(&p, 6), Err(MonoidError::EmptyRelationSide));
        assert!(matches!(preset("C3"), Err(MonoidError::UnknownPreset(_))));
    }

    #[test]
    fn presets_match_their_presentations() {
        let p = preset("M_SCRIPT").unwrap();
        assert_eq!(p.generators, vec![Letter::plain('a'), Letter::plain('e')]);
        assert_eq!(p.relations.len(), 4);
        assert_eq!(p.relations[1], (Word::plain("aaa"), RelationSide::Zero));
        let p = preset("b21").unwrap();
        assert_eq!(p.relations[1], (Word::plain("bb"), RelationSide::Zero));
        assert!(p.adjoin_identity && p.has_zero);
    }

    #[test]
    fn json_round_trip() {
        let m = from_presentation(&Preset::B21.presentation(), 6).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with(r#"{"elements":["1","a","b","ab","ba","0"],"one":0,"zero":5,"table":[["#));
        let back: FiniteMonoid = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"elements":["1","a"],"one":0,"zero":null,"table":[[0,0],[1,1]]}"#;
        assert!(serde_json::from_str::<FiniteMonoid>(bad).is_err());
    }
}
