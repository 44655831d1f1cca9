//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p nilmult-cli --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilmult::abelian::{canonicalize, partitions, CyclicDecomposition, PGroupPartition};
use nilmult::classify::{
    inequality_iii_check, inequality_suite, lemma_check, sandwich_check, small_abelian_groups,
    theorem34_report, Case, InequalityName, InequalityRanges, Status, SCHUR_PRIMES,
};
use nilmult::hallbasis::{generate_hall_basis, witt};
use nilmult::multiplier::{multiplier_order, multiplier_order_exponent, nilpotent_multiplier};
use nilmult::oracle::{lyndon_count, schur_oracle};
use nilmult_cli::{run, CommandResult, Payload};
use num_bigint::BigUint;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn part(v: &[u32]) -> PGroupPartition {
    PGroupPartition::new(v.to_vec()).unwrap()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn witt_lyndon() -> Check {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for d in 1..=4 {
        pairs.extend((1..=12).map(|n| (n, d)));
    }
    pairs.extend((13..=20).map(|n| (n, 2)));
    for &(n, d) in &pairs {
        let w = witt(n, u64::from(d)).map_err(err)?;
        let l = lyndon_count(n, d).map_err(err)?;
        ensure!(w == l, "witt({n},{d}) = {w} but {l} Lyndon words");
    }
    Ok(format!("{} (n, d) pairs agree", pairs.len()))
}

fn hall_counts() -> Check {
    let mut layers = 0;
    let mut check = |d: u32, w: u32| -> Result<(), String> {
        let basis = generate_hall_basis(d, w).map_err(err)?;
        for k in 1..=w {
            let expected = witt(k, u64::from(d)).map_err(err)?;
            let got = basis.weight(k).len() as u128;
            ensure!(
                got == expected,
                "d={d} weight {k}: {got} generated, witt {expected}"
            );
            layers += 1;
        }
        Ok(())
    };
    for d in 1..=4 {
        check(d, 8)?;
    }
    check(2, 14)?;
    Ok(format!("{layers} weight layers match"))
}

fn green_identity() -> Check {
    for n in 1..=200u64 {
        let w = witt(2, n).map_err(err)?;
        ensure!(w == u128::from(n * (n - 1) / 2), "witt(2,{n}) = {w}");
    }
    Ok("witt(2, n) = n(n-1)/2 for n <= 200".into())
}

/// Number of abelian groups of order <= max built from the given primes,
/// by direct divisor enumeration and the partition-count recurrence.
fn count_groups(max: u64, primes: &[u64]) -> u64 {
    fn p(n: usize) -> u64 {
        let mut table = vec![0u64; n + 1];
        table[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                table[m] += table[m - part];
            }
        }
        table[n]
    }
    let mut total = 0;
    for m in 1..=max {
        let mut rest = m;
        let mut groups = 1;
        for &q in primes {
            let mut e = 0;
            while rest % q == 0 {
                rest /= q;
                e += 1;
            }
            groups *= p(e);
        }
        if rest == 1 {
            total += groups;
        }
    }
    total
}

fn schur_equivalence() -> Check {
    let groups = small_abelian_groups(1 << 12);
    let expected = count_groups(1 << 12, &SCHUR_PRIMES);
    ensure!(
        groups.len() as u64 == expected,
        "enumerated {} groups, expected {expected}",
        groups.len()
    );
    let distinct: BTreeSet<_> = groups
        .iter()
        .map(|g| canonicalize(g).map(|c| c.factors().to_vec()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure!(
        distinct.len() == groups.len(),
        "duplicate isomorphism types"
    );
    for g in &groups {
        let formula = nilpotent_multiplier(&canonicalize(g).map_err(err)?, 1).map_err(err)?;
        let oracle = schur_oracle(g).map_err(err)?;
        ensure!(
            formula.primary().map_err(err)? == oracle.primary().map_err(err)?,
            "{g}: formula {formula} vs oracle {oracle}"
        );
    }
    Ok(format!("{} groups of order <= 4096 agree", groups.len()))
}

fn bound_maximality() -> Check {
    let mut scanned = 0;
    for c in 1..=4 {
        for n in 1..=25u32 {
            let bound = witt(c + 1, u64::from(n)).map_err(err)?;
            let mut maximizers = Vec::new();
            for lambda in partitions(n) {
                scanned += 1;
                let e = multiplier_order_exponent(&lambda, c).map_err(err)?;
                ensure!(e <= bound, "{lambda} c={c}: exponent {e} > bound {bound}");
                if e == bound {
                    maximizers.push(lambda);
                }
            }
            ensure!(
                maximizers == [PGroupPartition::elementary(n)],
                "n={n} c={c}: maximizers {maximizers:?}"
            );
        }
    }
    Ok(format!(
        "{scanned} (partition, c) pairs within bound, unique maximum at (1^n)"
    ))
}

fn forward_identity() -> Check {
    let mut count = 0;
    for n in 1..=30 {
        for t in 0..n {
            let hook = PGroupPartition::hook(n, t).map_err(err)?;
            for c in 1..=5 {
                let e = multiplier_order_exponent(&hook, c).map_err(err)?;
                let target = witt(c + 1, u64::from(n - t)).map_err(err)?;
                ensure!(e == target, "n={n} t={t} c={c}: {e} != {target}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} hook partitions hit witt(c+1, n-t)"))
}

fn classification_scan() -> Check {
    let mut counterexamples = 0;
    let mut cases = 0;
    for c in 1..=4 {
        for n in 1..=25u32 {
            let report = theorem34_report(n, c).map_err(err)?;
            for case in &report.cases {
                let Case::Classification(case) = case else {
                    return Err("non-classification case in report".into());
                };
                cases += 1;
                ensure!(case.forward_holds, "forward direction fails at {case:?}");
                for lambda in &case.solutions {
                    let order =
                        multiplier_order(&lambda.at_prime(2).map_err(err)?, c).map_err(err)?;
                    ensure!(
                        order.exponent(2) == case.target_exponent,
                        "{lambda} at p=2 has exponent {} not {}",
                        order.exponent(2),
                        case.target_exponent
                    );
                }
                if n <= 10 {
                    // completeness via concrete groups
                    let mut brute = Vec::new();
                    for lambda in partitions(n) {
                        let order =
                            multiplier_order(&lambda.at_prime(2).map_err(err)?, c).map_err(err)?;
                        if order.exponent(2) == case.target_exponent {
                            brute.push(lambda);
                        }
                    }
                    ensure!(brute == case.solutions, "incomplete solutions at {case:?}");
                }
                if case.status == Status::Counterexample {
                    counterexamples += 1;
                }
            }
        }
    }

    let r4 = theorem34_report(4, 1).map_err(err)?;
    ensure!(r4.is_clean(), "(4, 1) report has counterexamples");

    let r6 = theorem34_report(6, 1).map_err(err)?;
    let Some(Case::Classification(t3)) = r6.cases.get(3) else {
        return Err("(6, 1) report is missing t = 3".into());
    };
    ensure!(
        t3.t == 3 && t3.status == Status::Counterexample,
        "(6, 1) t = 3 not a counterexample"
    );
    ensure!(
        t3.solutions == [part(&[4, 1, 1]), part(&[3, 3])],
        "(6, 1) t = 3 solutions {:?}",
        t3.solutions
    );
    // gcd oracle at c = 1: Z_16 + Z_2 + Z_2 and Z_8 + Z_8 both give |M| = 2^3.
    for orders in [vec![16, 2, 2], vec![8, 8]] {
        let g = CyclicDecomposition::new(orders).map_err(err)?;
        let e = schur_oracle(&g)
            .map_err(err)?
            .order()
            .map_err(err)?
            .exponent(2);
        ensure!(
            e == 3 && t3.target_exponent == 3,
            "{g}: oracle exponent {e}"
        );
    }
    Ok(format!(
        "{cases} cases, {counterexamples} counterexamples; (4,1) clean; (6,1) t=3 = {{(4,1,1),(3,3)}}"
    ))
}

fn inequality_explorer() -> Check {
    for c in 1..=4u32 {
        for i in 1..=12u32 {
            let f = lemma_check(i, c).map_err(err)?;
            let b_i = lyndon_count(c + 1, i).map_err(err)?;
            let b_next = lyndon_count(c + 1, i + 1).map_err(err)?;
            ensure!(
                f.lhs == BigUint::from(i) * BigUint::from(b_i) && f.rhs == BigUint::from(b_next),
                "lemma i={i} c={c} values"
            );
            ensure!(f.holds == (f.lhs < f.rhs), "lemma i={i} c={c} status");
        }
    }
    let lemma_3_1 = lemma_check(3, 1).map_err(err)?;
    ensure!(!lemma_3_1.holds, "lemma unexpectedly holds at i=3, c=1");

    let factorial = |m: u32| (1..=m).fold(BigUint::from(1u32), |acc, x| acc * x);
    let mut iii = 0;
    for n in 3..=40u32 {
        for t in 0..n {
            for j in 1..n {
                if j + t + 1 >= n {
                    ensure!(
                        inequality_iii_check(n, t, j).is_err(),
                        "III accepted out-of-domain ({n},{t},{j})"
                    );
                    continue;
                }
                let f = inequality_iii_check(n, t, j).map_err(err)?;
                let rhs = BigUint::from(2u32) * factorial(n - t - 1) / factorial(n - t - 1 - j);
                ensure!(
                    f.lhs == BigUint::from(t + j + 2) && f.rhs == rhs,
                    "III ({n},{t},{j}) values"
                );
                ensure!(f.holds == (f.lhs <= f.rhs), "III ({n},{t},{j}) status");
                iii += 1;
            }
        }
    }
    ensure!(
        !inequality_iii_check(9, 6, 1).map_err(err)?.holds,
        "III unexpectedly holds at (9, 6, 1)"
    );

    let mut sandwiches = 0;
    for c in 1..=4 {
        for n in 2..=25 {
            for lambda in partitions(n).filter(|l| l.len() >= 2) {
                let (upper, lower) = sandwich_check(&lambda, c).map_err(err)?;
                ensure!(
                    upper.holds && lower.holds,
                    "sandwich fails at {lambda} c={c}"
                );
                sandwiches += 1;
            }
        }
    }

    let report = inequality_suite(InequalityRanges::default()).map_err(err)?;
    let failures: BTreeMap<InequalityName, usize> =
        report
            .counterexamples()
            .fold(BTreeMap::new(), |mut m, case| {
                if let Case::Inequality(f) = case {
                    *m.entry(f.name).or_insert(0) += 1;
                }
                m
            });
    ensure!(
        !failures.contains_key(&InequalityName::I) && !failures.contains_key(&InequalityName::II),
        "suite reports sandwich failures"
    );
    ensure!(
        failures.contains_key(&InequalityName::Lemma)
            && failures.contains_key(&InequalityName::III),
        "suite did not report the known lemma / III violations"
    );
    Ok(format!(
        "III checked at {iii} points, {sandwiches} sandwiches hold; reported violations {failures:?}"
    ))
}

fn cli_examples() -> Check {
    let examples: &[(&[&str], i32)] = &[
        (&["witt", "-n", "2", "-d", "10"], 0),
        (&["witt", "-n", "5", "-d", "1"], 0),
        (&["witt", "-n", "4", "-d", "2"], 0),
        (&["hall", "-d", "2", "-w", "2"], 0),
        (&["hall", "-d", "1", "-w", "3"], 0),
        (&["hall", "-d", "2", "-w", "3"], 0),
        (&["multiplier", "-G", "8,2,2", "-c", "1"], 0),
        (&["multiplier", "-G", "9", "-c", "4"], 0),
        (&["multiplier", "--partition", "1,1,1", "-c", "2"], 0),
        (&["classify", "-n", "4", "-c", "1", "-t", "1"], 0),
        (&["classify", "-n", "6", "-c", "1", "-t", "3"], 0),
        (&["classify", "-n", "5", "-c", "1", "--all-t"], 0),
        (
            &["verify", "--suite", "witt", "--max-n", "12", "--max-d", "4"],
            0,
        ),
        (
            &[
                "verify", "--suite", "bound", "--max-n", "20", "--max-c", "4", "--expect", "clean",
            ],
            0,
        ),
        (
            &[
                "verify",
                "--suite",
                "inequalities",
                "--max-n",
                "12",
                "--max-c",
                "3",
            ],
            0,
        ),
    ];
    let mut results = Vec::new();
    for (args, code) in examples {
        for format in ["json", "text"] {
            let argv: Vec<&str> = std::iter::once("nilmult")
                .chain(args.iter().copied())
                .chain(["--format", format])
                .collect();
            let first = run(&argv);
            let second = run(&argv);
            ensure!(
                first.code == *code,
                "{argv:?}: exit {} ({})",
                first.code,
                first.stderr
            );
            ensure!(
                first.stdout == second.stdout,
                "{argv:?}: output differs between runs"
            );
            if format == "json" {
                let parsed: CommandResult = serde_json::from_str(&first.stdout).map_err(err)?;
                ensure!(
                    Some(&parsed) == first.result.as_ref(),
                    "{argv:?}: JSON round-trip"
                );
                let again = serde_json::to_string_pretty(&parsed).map_err(err)? + "\n";
                ensure!(again == first.stdout, "{argv:?}: re-serialisation differs");
                results.push(parsed);
            }
        }
    }

    let value = |r: &CommandResult| match &r.result {
        Payload::Witt { value } => Some(*value),
        _ => None,
    };
    ensure!(value(&results[0]) == Some(45), "witt -n 2 -d 10");
    ensure!(value(&results[1]) == Some(0), "witt -n 5 -d 1");
    ensure!(value(&results[2]) == Some(3), "witt -n 4 -d 2");
    let counts = |r: &CommandResult| match &r.result {
        Payload::Hall { counts, layers } => Some((
            counts.clone(),
            layers
                .iter()
                .flat_map(|l| l.commutators.iter().map(ToString::to_string))
                .collect::<Vec<_>>(),
        )),
        _ => None,
    };
    let (c, names) = counts(&results[3]).ok_or("hall payload")?;
    ensure!(
        c == [2, 1] && names == ["x1", "x2", "[x2,x1]"],
        "hall -d 2 -w 2"
    );
    let (c, names) = counts(&results[4]).ok_or("hall payload")?;
    ensure!(c == [1, 0, 0] && names == ["x1"], "hall -d 1 -w 3");
    let (c, _) = counts(&results[5]).ok_or("hall payload")?;
    ensure!(c == [2, 1, 2], "hall -d 2 -w 3 counts");
    let Payload::Multiplier(m) = &results[6].result else {
        return Err("multiplier payload".into());
    };
    ensure!(
        m.structure.to_string() == "Z_2 ⊕ Z_2^(2)"
            && m.order.as_ref().map(ToString::to_string).as_deref() == Some("2^3"),
        "multiplier -G 8,2,2 -c 1: {}",
        m.structure
    );
    let Payload::Multiplier(m) = &results[7].result else {
        return Err("multiplier payload".into());
    };
    ensure!(m.structure.is_trivial(), "multiplier -G 9 -c 4");
    let Payload::Multiplier(m) = &results[8].result else {
        return Err("multiplier payload".into());
    };
    ensure!(m.p_exponent == Some(8), "multiplier --partition 1,1,1 -c 2");

    let report = |r: &CommandResult| match &r.result {
        Payload::Classify(rep) | Payload::Verify(rep) => Some(rep.clone()),
        _ => None,
    };
    let r = report(&results[9]).ok_or("classify payload")?;
    ensure!(
        r.is_clean() && r.summary.cases == 1,
        "classify -n 4 -c 1 -t 1"
    );
    let r = report(&results[10]).ok_or("classify payload")?;
    match r.cases.as_slice() {
        [Case::Classification(case)] => ensure!(
            case.solutions == [part(&[4, 1, 1]), part(&[3, 3])]
                && case.status == Status::Counterexample,
            "classify -n 6 -c 1 -t 3"
        ),
        _ => return Err("classify -n 6 -c 1 -t 3 shape".into()),
    }
    let r = report(&results[11]).ok_or("classify payload")?;
    ensure!(
        r.is_clean() && r.summary.cases == 5,
        "classify -n 5 -c 1 --all-t"
    );
    let r = report(&results[12]).ok_or("verify payload")?;
    ensure!(r.summary.counterexamples == 0, "verify witt mismatches");
    let r = report(&results[14]).ok_or("verify payload")?;
    let lemma_fail = r.counterexamples().any(|case| {
        matches!(case, Case::Inequality(f)
            if f.name == InequalityName::Lemma
                && f.parameters.get("i") == Some(&3)
                && f.parameters.get("c") == Some(&1))
    });
    ensure!(
        lemma_fail,
        "verify inequalities misses lemma failure at i=3, c=1"
    );
    Ok(format!(
        "{} documented invocations deterministic and round-trip",
        examples.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "1 Witt-Lyndon equivalence",
            Duration::from_secs(10),
            witt_lyndon,
        ),
        (
            "2 Hall generation counts",
            Duration::from_secs(30),
            hall_counts,
        ),
        (
            "3 witt(2,n) = n(n-1)/2",
            Duration::from_secs(1),
            green_identity,
        ),
        (
            "4 Schur formula vs direct-product oracle",
            Duration::from_secs(60),
            schur_equivalence,
        ),
        (
            "5 order bound and elementary maximality",
            Duration::from_secs(60),
            bound_maximality,
        ),
        (
            "6 hook forward identity",
            Duration::from_secs(10),
            forward_identity,
        ),
        (
            "7 classification scan honesty",
            Duration::from_secs(60),
            classification_scan,
        ),
        (
            "8 inequality explorer",
            Duration::from_secs(30),
            inequality_explorer,
        ),
        (
            "9 CLI round-trip and determinism",
            Duration::from_secs(10),
            cli_examples,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} [{elapsed:.2?}] {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
