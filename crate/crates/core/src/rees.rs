//! Rees quotients `M(W)` of the free monoid by the ideal of all words that
//! are not factors of a word in `W`, and the quotient maps between them.

use std::collections::HashMap;

use thiserror::Error;

use crate::exec::{self, Strategy};
use crate::monoid::{FiniteMonoid, Label};
use crate::words::{Word, WordSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error("target word set is not a subset of the source word set")]
    NotSubset,
    #[error("map is not a homomorphism at ({0}, {1})")]
    HomomorphismViolation(String, String),
    #[error("map misses element {0}")]
    NotSurjective(String),
}

#[derive(Debug, Clone)]
pub struct ReesQuotient {
    source: WordSet,
    monoid: FiniteMonoid,
    index: HashMap<Word, usize>,
}

impl ReesQuotient {
    /// Elements are the empty word, the nonempty factors in shortlex order,
    /// then `0`.
    pub fn new(source: &WordSet) -> ReesQuotient {
        ReesQuotient::with_strategy(source, Strategy::default())
    }

    pub fn with_strategy(source: &WordSet, strategy: Strategy) -> ReesQuotient {
        let factors: Vec<Word> = source.factors().into_iter().collect();
        let zero = factors.len();
        let index: HashMap<Word, usize> = factors.iter().cloned().zip(0..).collect();
        let rows = exec::map_indices(strategy, zero + 1, |i| {
            (0..=zero)
                .map(|j| {
                    if i == zero || j == zero {
                        zero
                    } else {
                        index.get(&factors[i].concat(&factors[j])).copied().unwrap_or(zero)
                    }
                })
                .collect()
        });
        let labels = factors
            .into_iter()
            .map(Label::Word)
            .chain(std::iter::once(Label::zero()))
            .collect();
        let monoid = FiniteMonoid::from_table(labels, 0, Some(zero), rows)
            .expect("Rees quotient tables are valid monoids");
        ReesQuotient {
            source: source.clone(),
            monoid,
            index,
        }
    }

    pub fn source(&self) -> &WordSet {
        &self.source
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn zero(&self) -> usize {
        self.index.len()
    }

    /// The element labelled `w`, or `0` when `w` is not a factor.
    pub fn element_of(&self, w: &Word) -> usize {
        self.index.get(w).copied().unwrap_or(self.zero())
    }

    /// Word of a nonzero element.
    pub fn word_of(&self, element: usize) -> Option<&Word> {
        self.monoid.label(element).as_word()
    }

    /// The map `M(W) -> M(W')` fixing common factors and sending everything
    /// else to `0`, checked to be a surjective homomorphism.
    pub fn quotient_map(&self, target: &ReesQuotient) -> Result<Homomorphism, ReesError> {
        if !target.source.is_subset(&self.source) {
            return Err(ReesError::NotSubset);
        }
        let zero = self.zero();
        let images: Vec<usize> = (0..self.order())
            .map(|e| {
                if e == zero {
                    target.zero()
                } else {
                    target.element_of(&self.monoid.labels()[e].as_word().cloned().unwrap_or_default())
                }
            })
            .collect();
        let h = Homomorphism { images };
        if let Some((s, t)) = h.violation(&self.monoid, &target.monoid) {
            return Err(ReesError::HomomorphismViolation(
                self.monoid.label(s).to_string(),
                self.monoid.label(t).to_string(),
            ));
        }
        let mut hit = vec![false; target.order()];
        for &i in &h.images {
            hit[i] = true;
        }
        if let Some(missed) = hit.iter().position(|&b| !b) {
            return Err(ReesError::NotSurjective(target.monoid.label(missed).to_string()));
        }
        Ok(h)
    }
}

/// Element map between two finite monoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    images: Vec<usize>,
}

impl Homomorphism {
    pub fn image(&self, element: usize) -> usize {
        self.images[element]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Least pair `(s, t)` with `h(st) != h(s)h(t)`, or an identity violation
    /// reported as `(1, 1)`.
    fn violation(&self, from: &FiniteMonoid, to: &FiniteMonoid) -> Option<(usize, usize)> {
        if self.images[from.one()] != to.one() {
            return Some((from.one(), from.one()));
        }
        let n = from.order();
        exec::find_first(Strategy::default(), n, |s| {
            (0..n)
                .find(|&t| self.images[from.mul(s, t)] != to.mul(self.images[s], self.images[t]))
                .map(|t| (s, t))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::generate_wn;

    fn q(text: &str) -> ReesQuotient {
        ReesQuotient::new(&text.parse().unwrap())
    }

    #[test]
    fn orders() {
        assert_eq!(q("aabb").order(), 10);
        assert_eq!(q("abab").order(), 9);
        assert_eq!(q("abba").order(), 10);
        assert_eq!(q("").order(), 2);
    }

    #[test]
    fn element_order_and_products() {
        let m = q("aabb");
        let names: Vec<String> = m.monoid().labels().iter().map(Label::to_string).collect();
        assert_eq!(names, ["1", "a", "b", "aa", "ab", "bb", "aab", "abb", "aabb", "0"]);
        let a = m.element_of(&Word::plain("a"));
        let ab = m.element_of(&Word::plain("ab"));
        assert_eq!(m.monoid().mul(a, ab), m.element_of(&Word::plain("aab")));
        assert_eq!(m.monoid().mul(ab, ab), m.zero());
        assert_eq!(m.element_of(&Word::plain("ba")), m.zero());
        assert_eq!(m.element_of(&Word::empty()), m.monoid().one());
    }

    #[test]
    fn quotient_maps() {
        let big = ReesQuotient::new(&WordSet::wn_family([1, 2]).unwrap());
        let small = ReesQuotient::new(&WordSet::wn_family([1]).unwrap());
        let h = big.quotient_map(&small).unwrap();
        let w1 = generate_wn(1).unwrap();
        let i = big.element_of(&w1);
        assert_eq!(h.image(i), small.element_of(&w1));
        assert!(big.quotient_map(&big).unwrap().is_identity());
        assert_eq!(q("aabb").quotient_map(&q("abab")), Err(ReesError::NotSubset));
        let to_empty = q("aabb").quotient_map(&q("")).unwrap();
        assert_eq!(to_empty.images().iter().filter(|&&i| i == 1).count(), 9);
    }
}
