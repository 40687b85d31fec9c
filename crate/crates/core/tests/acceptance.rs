//! One line per acceptance criterion. Exits nonzero if any line fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use reesmon::identities::{check_rees_with, check_table_with, find_star_violation, Basis, DEFAULT_MATCHER_BUDGET};
use reesmon::verify::{self, Budgets, Config, CROSS_CHECK_COUNT, ENUMERATE_MAX_LEN, ENUMERATE_MAX_ORDER, NO_DIV_CASES};
use reesmon::words::generate_wn;
use reesmon::{
    from_presentation, rees_quotient, separation_identity, Preset, Status, Strategy, Substitution, Witness, WordSet,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ws(text: &str) -> WordSet {
    text.parse().expect("word set")
}

fn orders() -> Outcome {
    for (text, expected) in [("aabb", 10), ("abab", 9), ("abba", 10), ("", 2)] {
        let got = rees_quotient(&ws(text)).order();
        ensure(got == expected, || format!("|M({text})| = {got}, expected {expected}"))?;
    }
    Ok(())
}

fn sigma_in_aabb() -> Outcome {
    let source = ws("aabb");
    let q = rees_quotient(&source);
    for id in Basis::Sigma.identities() {
        let table = check_table_with(q.monoid(), &id, u64::MAX, Strategy::default()).map_err(|e| e.to_string())?;
        let rees = check_rees_with(&source, &id, u64::MAX, Strategy::default()).map_err(|e| e.to_string())?;
        ensure(table.status == Status::Holds && rees.status == Status::Holds, || {
            format!("{id}: table {}, rees {}", table.status, rees.status)
        })?;
    }
    Ok(())
}

fn lee_li() -> Outcome {
    let m = from_presentation(&Preset::MScript.presentation(), 6).map_err(|e| e.to_string())?;
    ensure(m.order() == 6, || format!("M_SCRIPT has order {}", m.order()))?;
    let aabb = rees_quotient(&ws("aabb"));
    for id in Basis::LeeLi.identities() {
        for (name, monoid) in [("M_SCRIPT", &m), ("M(aabb)", aabb.monoid())] {
            let out = check_table_with(monoid, &id, u64::MAX, Strategy::default()).map_err(|e| e.to_string())?;
            ensure(out.holds_p(), || format!("{id} fails in {name}"))?;
        }
    }
    Ok(())
}

fn depth_table() -> Outcome {
    for n in 1..=4 {
        let got = generate_wn(n).unwrap().depth_map();
        ensure(got == verify::expected_wn_depths(n), || format!("depth table of w_{n} differs"))?;
    }
    Ok(())
}

fn separation_matrix() -> Outcome {
    for n in 1..=2 {
        let id = separation_identity(n).map_err(|e| e.to_string())?;
        let wn = generate_wn(n).unwrap();
        for k in 1..=2 {
            let source = WordSet::wn_family([k]).unwrap();
            let out = check_rees_with(&source, &id, DEFAULT_MATCHER_BUDGET, Strategy::default())
                .map_err(|e| e.to_string())?;
            ensure(out.holds_p() == (n != k), || format!("n = {n}, k = {k}: {}", out.status))?;
            if n == k {
                let expected = Witness::Words(Substitution::identity_on(&wn.alphabet()));
                ensure(out.witness.as_ref() == Some(&expected), || {
                    format!("n = k = {n}: witness is not the identity substitution")
                })?;
            }
        }
    }
    Ok(())
}

fn distinctness() -> Outcome {
    let all = verify::subsets(2);
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let sep = verify::separating_index(a, b, DEFAULT_MATCHER_BUDGET).map_err(|e| e.to_string())?;
            ensure(sep.is_some(), || format!("{a:?} and {b:?} are not separated"))?;
        }
    }
    Ok(())
}

fn sigma_truncations() -> Outcome {
    for indices in verify::subsets(2) {
        let source = WordSet::wn_family(indices.iter().copied()).unwrap();
        for id in Basis::Sigma.identities() {
            let out = check_rees_with(&source, &id, DEFAULT_MATCHER_BUDGET, Strategy::default())
                .map_err(|e| e.to_string())?;
            ensure(out.holds_p(), || format!("N = {indices:?}: {id} fails"))?;
        }
    }
    Ok(())
}

fn word_structure() -> Outcome {
    (1..=4).try_for_each(verify::wn_structure)
}

fn star_property() -> Outcome {
    for (n, k) in [(1, 2), (1, 3), (2, 3)] {
        let found = find_star_violation(&generate_wn(n).unwrap(), &generate_wn(k).unwrap(), u64::MAX)
            .map_err(|e| e.to_string())?;
        ensure(found.is_none(), || format!("w_{n} into w_{k}: {}", found.unwrap()))?;
    }
    Ok(())
}

fn enumeration() -> Outcome {
    let found: Vec<String> = verify::enumerate_small_rees(ENUMERATE_MAX_LEN, ENUMERATE_MAX_ORDER)
        .into_iter()
        .map(|(w, _)| w.to_string())
        .collect();
    ensure(found == ["aabb", "abab", "abba"], || format!("found {found:?}"))
}

fn oracle_equivalence() -> Outcome {
    let c = verify::cross_check_checkers(42, CROSS_CHECK_COUNT, Budgets::default()).map_err(|e| e.to_string())?;
    ensure(c.comparisons == CROSS_CHECK_COUNT * 7, || format!("{} comparisons", c.comparisons))?;
    c.first_discrepancy.map_or(Ok(()), Err)
}

fn no_div() -> Outcome {
    let checked = verify::no_div_campaign(42, NO_DIV_CASES)?;
    ensure(checked == NO_DIV_CASES, || format!("{checked} instances checked"))
}

fn determinism() -> Outcome {
    let cfg = Config::default();
    let a = verify::run_claims(&cfg).without_timings().to_json();
    let b = verify::run_claims(&cfg).without_timings().to_json();
    ensure(a == b, || "reports differ".to_string())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 13] = [
        ("orders of M(aabb), M(abab), M(abba), M(empty)", Some(secs(1)), orders),
        ("Sigma holds in M(aabb) under both checkers", Some(secs(10)), sigma_in_aabb),
        ("Lee-Li identities hold in M_SCRIPT and M(aabb)", Some(secs(30)), lee_li),
        ("depth table of w_1..w_4", None, depth_table),
        ("separation matrix for n, k in {1, 2}", Some(secs(60)), separation_matrix),
        ("M(W_N), N in {1, 2}, pairwise separated", None, distinctness),
        ("Sigma holds in every M(W_N), N in {1, 2}", Some(secs(300)), sigma_truncations),
        ("structure of w_1..w_4", None, word_structure),
        ("two-occurrence property of matches w_n into w_k, n < k <= 3", None, star_property),
        ("small M(w) with two repeated letters", Some(secs(60)), enumeration),
        ("rees and table checkers agree on 200 x 7 cases", None, oracle_equivalence),
        ("1000 first-occurrence depth instances", None, no_div),
        ("claim reports are deterministic", None, determinism),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(()), Some(limit)) if took > limit => Err(format!("took {took:?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(()) => println!("PASS  {name}  ({} ms)", took.as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({} ms): {why}", took.as_millis());
            }
        }
    }
    println!("{} passed, {failed} failed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
