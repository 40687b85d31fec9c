use std::collections::BTreeSet;

use reesmon::verify::{cross_check_checkers, cross_check_with, Budgets, CROSS_CHECK_COUNT};
use reesmon::{check_rees, Identity, Image, Witness, Word};

fn first_occurrences(w: &Word) -> Word {
    let mut seen = BTreeSet::new();
    w.letters().iter().copied().filter(|&l| seen.insert(l)).collect()
}

#[test]
fn real_checker_passes() {
    let c = cross_check_checkers(7, CROSS_CHECK_COUNT, Budgets::default()).unwrap();
    assert!(c.passed(), "{:?}", c.first_discrepancy);
}

#[test]
fn checker_ignoring_repeats_is_caught() {
    let budgets = Budgets::default();
    let c = cross_check_with(7, CROSS_CHECK_COUNT, budgets, |w, id| {
        let blind = Identity::new(first_occurrences(&id.lhs), first_occurrences(&id.rhs));
        check_rees(w, &blind, budgets.matcher)
    })
    .unwrap();
    assert!(!c.passed());
}

#[test]
fn checker_with_false_witnesses_is_caught() {
    let budgets = Budgets::default();
    // right status, but a witness that refutes nothing
    let c = cross_check_with(7, CROSS_CHECK_COUNT, budgets, |w, id| {
        let mut out = check_rees(w, id, budgets.matcher)?;
        if let Some(Witness::Words(phi)) = &mut out.witness {
            *phi = id.variables().into_iter().map(|v| (v, Image::Word(Word::empty()))).collect();
        }
        Ok(out)
    })
    .unwrap();
    assert!(!c.passed());
}
