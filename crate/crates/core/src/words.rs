//! Letters, words and the word-combinatorics toolkit.
//!
//! A [`Letter`] is a lowercase base symbol with an optional subscript and an
//! optional superscript, so that families such as `z_i`, `t_i` and `y_i^k`
//! live in one alphabet. Words are compared in shortlex order, which is the
//! canonical order used for every enumeration in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("the word family is indexed from 1, got n = 0")]
    ZeroIndex,
    #[error("word sets contain nonempty words only")]
    EmptyWordInSet,
    #[error("word has length {0}, at least 2 is required")]
    TooShort(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A letter `base[_sub][^sup]`.
///
/// The derived order is lexicographic on `(base, sub, sup)` with an absent
/// index sorting before any present one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub base: char,
    pub sub: Option<u32>,
    pub sup: Option<u32>,
}

impl Letter {
    pub const fn plain(base: char) -> Letter {
        Letter {
            base,
            sub: None,
            sup: None,
        }
    }

    pub const fn indexed(base: char, sub: u32) -> Letter {
        Letter {
            base,
            sub: Some(sub),
            sup: None,
        }
    }

    pub const fn new(base: char, sub: Option<u32>, sup: Option<u32>) -> Letter {
        Letter { base, sub, sup }
    }

    pub fn is_plain(&self) -> bool {
        self.sub.is_none() && self.sup.is_none()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if let Some(sub) = self.sub {
            write!(f, "_{sub}")?;
        }
        if let Some(sup) = self.sup {
            write!(f, "^{sup}")?;
        }
        Ok(())
    }
}

/// Cursor over a token, shared with the identity parser.
pub(crate) struct TokenCursor<'a> {
    chars: &'a [(usize, char)],
    idx: usize,
    end: usize,
}

impl<'a> TokenCursor<'a> {
    pub(crate) fn new(chars: &'a [(usize, char)], end: usize) -> Self {
        TokenCursor { chars, idx: 0, end }
    }

    pub(crate) fn position(&self) -> usize {
        self.chars.get(self.idx).map_or(self.end, |&(p, _)| p)
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.idx += 1;
        }
        c
    }

    pub(crate) fn at_end(&self) -> bool {
        self.idx >= self.chars.len()
    }

    pub(crate) fn base(&mut self) -> Result<char, ParseError> {
        let pos = self.position();
        match self.bump() {
            Some(c) if c.is_ascii_lowercase() => Ok(c),
            Some(c) => Err(ParseError::new(pos, format!("expected a lowercase letter, found `{c}`"))),
            None => Err(ParseError::new(pos, "expected a lowercase letter")),
        }
    }

    pub(crate) fn digits(&mut self) -> Result<u32, ParseError> {
        let pos = self.position();
        let mut value: u32 = 0;
        let mut seen = false;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c.to_digit(10).unwrap_or(0)))
                .ok_or_else(|| ParseError::new(pos, "index does not fit in 32 bits"))?;
            seen = true;
            self.bump();
        }
        if seen {
            Ok(value)
        } else {
            Err(ParseError::new(pos, "expected digits"))
        }
    }

    /// `base [_digits] [^digits]`
    pub(crate) fn letter(&mut self) -> Result<Letter, ParseError> {
        let base = self.base()?;
        let mut sub = None;
        let mut sup = None;
        if self.peek() == Some('_') {
            self.bump();
            sub = Some(self.digits()?);
        }
        if self.peek() == Some('^') {
            self.bump();
            sup = Some(self.digits()?);
        }
        Ok(Letter::new(base, sub, sup))
    }
}

pub(crate) fn significant_chars(text: &str, offset: usize) -> Vec<(usize, char)> {
    text.char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(p, c)| (p + offset, c))
        .collect()
}

/// Parses dotted tokens `tok.tok.tok` from pre-filtered characters.
pub(crate) fn parse_dotted(chars: &[(usize, char)], end: usize) -> Result<Vec<Letter>, ParseError> {
    let mut letters = Vec::new();
    let mut rest = chars;
    loop {
        let cut = rest.iter().position(|&(_, c)| c == '.').unwrap_or(rest.len());
        let (token, tail) = rest.split_at(cut);
        let token_end = tail.first().map_or(end, |&(p, _)| p);
        if token.is_empty() {
            return Err(ParseError::new(token_end, "empty token in dotted word"));
        }
        let mut cursor = TokenCursor::new(token, token_end);
        letters.push(cursor.letter()?);
        if !cursor.at_end() {
            return Err(ParseError::new(cursor.position(), "unexpected characters after letter"));
        }
        match tail.split_first() {
            Some((_, next)) => rest = next,
            None => return Ok(letters),
        }
    }
}

/// A finite word. The empty word is the identity of the free monoid and is
/// spelled `1` in text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let dotted = self.0.iter().any(|l| !l.is_plain());
        for (i, letter) in self.0.iter().enumerate() {
            if dotted && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts the compact form (`aabb`), the dotted form
    /// (`z_1.t_1.x.y_1^0`) and `1` for the empty word.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        Word::parse_at(text, 0)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Letter sets of a word split by multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlphabetProfile {
    pub alf: BTreeSet<Letter>,
    pub simple: BTreeSet<Letter>,
    pub multiple: BTreeSet<Letter>,
}

/// Depth of a letter: a finite rank or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(u32),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<u32> {
        match self {
            Depth::Finite(k) => Some(k),
            Depth::Infinite => None,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(k) => write!(f, "{k}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

pub type DepthMap = BTreeMap<Letter, Depth>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Length2Profile {
    /// Every length-2 factor occurs at exactly one position.
    pub all_unique: bool,
    /// Every adjacent pair pairs a first occurrence with a last occurrence.
    pub all_first_last: bool,
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Compact word from a run of plain letters, e.g. `Word::plain("aabb")`.
    ///
    /// Panics on characters that are not lowercase ASCII letters.
    pub fn plain(text: &str) -> Word {
        text.chars()
            .map(|c| {
                assert!(c.is_ascii_lowercase(), "`{c}` is not a plain letter");
                Letter::plain(c)
            })
            .collect()
    }

    pub(crate) fn parse_at(text: &str, offset: usize) -> Result<Word, ParseError> {
        let chars = significant_chars(text, offset);
        let end = offset + text.len();
        if chars.is_empty() {
            return Err(ParseError::new(offset, "empty input; the empty word is spelled `1`"));
        }
        if chars.len() == 1 && chars[0].1 == '1' {
            return Ok(Word::empty());
        }
        if chars.iter().any(|&(_, c)| matches!(c, '.' | '_' | '^')) {
            return parse_dotted(&chars, end).map(Word);
        }
        chars
            .iter()
            .map(|&(p, c)| {
                if c.is_ascii_lowercase() {
                    Ok(Letter::plain(c))
                } else {
                    Err(ParseError::new(p, format!("unexpected character `{c}`")))
                }
            })
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Occurrence counts in order of first appearance.
    fn counts(&self) -> Vec<(Letter, usize)> {
        let mut order: Vec<(Letter, usize)> = Vec::new();
        let mut index: HashMap<Letter, usize> = HashMap::new();
        for &l in &self.0 {
            match index.get(&l) {
                Some(&i) => order[i].1 += 1,
                None => {
                    index.insert(l, order.len());
                    order.push((l, 1));
                }
            }
        }
        order
    }

    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    pub fn alphabet_profile(&self) -> AlphabetProfile {
        let mut profile = AlphabetProfile::default();
        for (letter, count) in self.counts() {
            profile.alf.insert(letter);
            if count == 1 {
                profile.simple.insert(letter);
            } else {
                profile.multiple.insert(letter);
            }
        }
        profile
    }

    pub fn occurrences(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn max_occurrences(&self) -> usize {
        self.counts().into_iter().map(|(_, c)| c).max().unwrap_or(0)
    }

    /// Nonempty and every letter simple.
    pub fn is_linear(&self) -> bool {
        !self.is_empty() && self.counts().iter().all(|&(_, c)| c == 1)
    }

    /// `w_x`: the word with every occurrence of `letter` removed.
    pub fn delete_letter(&self, letter: Letter) -> Word {
        self.0.iter().copied().filter(|&l| l != letter).collect()
    }

    /// 1-based positions of `letter`, strictly increasing.
    pub fn occurrence_positions(&self, letter: Letter) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == letter)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// All contiguous factors including the empty word, in shortlex order.
    pub fn factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        out.insert(Word::empty());
        for start in 0..self.len() {
            for end in start + 1..=self.len() {
                out.insert(self.slice(start, end));
            }
        }
        out
    }

    /// 0-based start of the first occurrence of `needle` as a factor at or
    /// after `from`.
    pub fn find_factor(&self, needle: &[Letter], from: usize) -> Option<usize> {
        if needle.is_empty() {
            return (from <= self.len()).then_some(from);
        }
        if needle.len() > self.len() {
            return None;
        }
        (from..=self.len() - needle.len()).find(|&i| &self.0[i..i + needle.len()] == needle)
    }

    pub fn has_factor(&self, needle: &Word) -> bool {
        self.find_factor(&needle.0, 0).is_some()
    }

    /// Depth of every letter, computed round by round: simple letters get 0,
    /// and round `k` promotes each unassigned letter whose first and second
    /// occurrences strictly enclose the first occurrence of a depth `k - 1`
    /// letter. Letters never promoted are infinite.
    pub fn depth_map(&self) -> DepthMap {
        // (letter, first, second) with 0-based positions
        let mut first: HashMap<Letter, usize> = HashMap::new();
        let mut second: HashMap<Letter, usize> = HashMap::new();
        for (i, &l) in self.0.iter().enumerate() {
            if let std::collections::hash_map::Entry::Vacant(e) = first.entry(l) {
                e.insert(i);
            } else {
                second.entry(l).or_insert(i);
            }
        }
        let mut depths: DepthMap = BTreeMap::new();
        let mut frontier: Vec<usize> = Vec::new();
        for (&l, &p) in &first {
            if !second.contains_key(&l) {
                depths.insert(l, Depth::Finite(0));
                frontier.push(p);
            }
        }
        let mut pending: Vec<(Letter, usize, usize)> = second
            .iter()
            .map(|(&l, &q)| (l, first[&l], q))
            .collect();
        let mut level = 0;
        while !frontier.is_empty() && !pending.is_empty() {
            level += 1;
            let (promoted, rest): (Vec<_>, Vec<_>) = pending
                .into_iter()
                .partition(|&(_, p, q)| frontier.iter().any(|&f| p < f && f < q));
            frontier = promoted.iter().map(|&(_, p, _)| p).collect();
            for (l, _, _) in promoted {
                depths.insert(l, Depth::Finite(level));
            }
            pending = rest;
        }
        for (l, _, _) in pending {
            depths.insert(l, Depth::Infinite);
        }
        depths
    }

    /// True iff no factor has the form `uu` with `u` nonempty.
    pub fn is_square_free(&self) -> bool {
        let n = self.len();
        (1..=n / 2).all(|half| {
            (0..=n - 2 * half).all(|i| self.0[i..i + half] != self.0[i + half..i + 2 * half])
        })
    }

    pub fn length2_profile(&self) -> Result<Length2Profile, WordError> {
        if self.len() < 2 {
            return Err(WordError::TooShort(self.len()));
        }
        let mut seen: HashMap<(Letter, Letter), usize> = HashMap::new();
        for pair in self.0.windows(2) {
            *seen.entry((pair[0], pair[1])).or_default() += 1;
        }
        let all_unique = seen.values().all(|&c| c == 1);

        let mut first: HashMap<Letter, usize> = HashMap::new();
        let mut last: HashMap<Letter, usize> = HashMap::new();
        for (i, &l) in self.0.iter().enumerate() {
            first.entry(l).or_insert(i);
            last.insert(l, i);
        }
        let is_first = |i: usize| first[&self.0[i]] == i;
        let is_last = |i: usize| last[&self.0[i]] == i;
        let all_first_last = (0..self.len() - 1)
            .all(|i| (is_first(i) && is_last(i + 1)) || (is_last(i) && is_first(i + 1)));
        Ok(Length2Profile {
            all_unique,
            all_first_last,
        })
    }

    /// Minimum length of a non-linear factor avoiding every simple letter of
    /// the word, or `None` if there is no such factor.
    pub fn min_nonlinear_simplefree_factor(&self) -> Option<usize> {
        let simple = self.alphabet_profile().simple;
        let mut best: Option<usize> = None;
        for start in 0..self.len() {
            let mut seen = BTreeSet::new();
            for end in start..self.len() {
                let l = self.0[end];
                if simple.contains(&l) {
                    break;
                }
                if !seen.insert(l) {
                    let len = end - start + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                    break;
                }
            }
        }
        best
    }
}

/// The letter `z_i`.
pub fn z(i: u32) -> Letter {
    Letter::indexed('z', i)
}

/// The letter `t_i`.
pub fn t(i: u32) -> Letter {
    Letter::indexed('t', i)
}

/// The letter `y_i^k`.
pub fn y(i: u32, k: u32) -> Letter {
    Letter::new('y', Some(i), Some(k))
}

/// The letter `x`.
pub const X: Letter = Letter::plain('x');

/// The word `w_n`:
/// `(z_1 t_1 ... z_n t_n) x (z_1 y_1^n ... z_n y_n^n) x` followed by the
/// blocks `y_1^{n-j} y_1^{n+1-j} ... y_n^{n-j} y_n^{n+1-j}` for `j = 1..n`.
pub fn generate_wn(n: u32) -> Result<Word, WordError> {
    if n == 0 {
        return Err(WordError::ZeroIndex);
    }
    let mut w = Word::empty();
    for i in 1..=n {
        w.push(z(i));
        w.push(t(i));
    }
    w.push(X);
    for i in 1..=n {
        w.push(z(i));
        w.push(y(i, n));
    }
    w.push(X);
    for j in 1..=n {
        for i in 1..=n {
            w.push(y(i, n - j));
            w.push(y(i, n + 1 - j));
        }
    }
    Ok(w)
}

/// A finite set of nonempty words, iterated in shortlex order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordSet(BTreeSet<Word>);

impl WordSet {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<WordSet, WordError> {
        let set: BTreeSet<Word> = words.into_iter().collect();
        if set.contains(&Word::empty()) {
            return Err(WordError::EmptyWordInSet);
        }
        Ok(WordSet(set))
    }

    pub fn empty() -> WordSet {
        WordSet(BTreeSet::new())
    }

    /// `{w_n : n in indices}`.
    pub fn wn_family<I: IntoIterator<Item = u32>>(indices: I) -> Result<WordSet, WordError> {
        indices
            .into_iter()
            .map(generate_wn)
            .collect::<Result<Vec<_>, _>>()
            .and_then(WordSet::new)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn is_subset(&self, other: &WordSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Distinct factors of all member words, including the empty word.
    pub fn factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        out.insert(Word::empty());
        for w in &self.0 {
            out.extend(w.factors());
        }
        out
    }
}

impl fmt::Display for WordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for WordSet {
    type Err = WordError;

    /// Comma-separated words, or `wn:N1,N2,...` for members of the `w_n`
    /// family. An empty string is the empty set.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if let Some(list) = text.strip_prefix("wn:") {
            let mut indices = Vec::new();
            let mut offset = 3;
            for item in list.split(',') {
                let n: u32 = item
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::new(offset, format!("`{}` is not an index", item.trim())))?;
                indices.push(n);
                offset += item.len() + 1;
            }
            return WordSet::wn_family(indices);
        }
        if text.is_empty() {
            return Ok(WordSet::empty());
        }
        let mut words = Vec::new();
        let mut offset = 0;
        for item in text.split(',') {
            words.push(Word::parse_at(item, offset)?);
            offset += item.len() + 1;
        }
        WordSet::new(words)
    }
}
