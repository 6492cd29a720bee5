//! One check per acceptance criterion, each printed as a PASS/FAIL line.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use braceforge::construct::{
    all_permutations, census_records, enumerate_braces, expected_g_intg_subgroups, oracle_enumerate_braces,
    oracle_isomorphic, regular_subgroups_in_g_intg, CensusEntry,
};
use braceforge::group::catalog::{self, GroupCatalog};
use braceforge::report::{abelian_series_comparison, census_up_to, verify, Scope, SweepDetail};
use braceforge::structure::{all_ideals, annihilator_quotient_test};
use braceforge::ybe::solution_from_brace;
use braceforge::{Bounds, SkewBrace};

type Outcome = Result<String, String>;

fn census(max: usize) -> Vec<Vec<CensusEntry>> {
    census_up_to(max, &GroupCatalog::builtin(), &Bounds::default()).expect("census")
}

fn braces(census: &[Vec<CensusEntry>]) -> Vec<&SkewBrace> {
    census.iter().flatten().map(|e| &e.brace).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axioms(census: &[Vec<CensusEntry>]) -> Outcome {
    let all = braces(census);
    for (k, b) in all.iter().enumerate() {
        let n = b.order();
        let (add, mul) = (b.add_group(), b.mul_group());
        for a in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let lhs = mul.op(a, add.op(x, y));
                    let rhs = add.op(add.op(mul.op(a, x), add.inv(a)), mul.op(a, y));
                    ensure(lhs == rhs, || format!("brace {k}: a(b+c) fails at ({a},{x},{y})"))?;
                }
                let l = |a: usize, x: usize| add.op(add.inv(a), mul.op(a, x));
                ensure(mul.op(a, x) == add.op(a, l(a, x)), || {
                    format!("brace {k}: ab = a + λ_a(b) fails")
                })?;
                ensure(add.op(a, x) == mul.op(a, l(mul.inv(a), x)), || {
                    format!("brace {k}: a + b = a λ_(a⁻¹)(b) fails")
                })?;
                for y in 0..n {
                    ensure(l(mul.op(a, x), y) == l(a, l(x, y)), || {
                        format!("brace {k}: λ is not a homomorphism")
                    })?;
                }
            }
        }
    }
    Ok(format!("{} braces of order at most 8", all.len()))
}

fn oracle_equivalence() -> Outcome {
    let cat = GroupCatalog::builtin();
    let mut counts = Vec::new();
    for n in 1..=6 {
        let fast = enumerate_braces(n, &cat, &Bounds::default()).map_err(|e| e.to_string())?;
        let slow = oracle_enumerate_braces(n, &cat).map_err(|e| e.to_string())?;
        let perms = all_permutations(n);
        ensure(fast.len() == slow.len(), || {
            format!("order {n}: {} classes against {}", fast.len(), slow.len())
        })?;
        for o in &slow {
            let hits = fast.iter().filter(|e| oracle_isomorphic(&e.brace, o, &perms)).count();
            ensure(hits == 1, || {
                format!("order {n}: an oracle class matches {hits} census classes")
            })?;
        }
        counts.push(fast.len());
    }
    Ok(format!("class counts {counts:?} agree"))
}

fn theorem_a(max: usize, slow: bool, expected: &[usize]) -> Outcome {
    let r = verify(Scope::A, max, slow, &GroupCatalog::builtin(), &Bounds::default()).map_err(|e| e.to_string())?;
    let SweepDetail::A {
        without_proper_subbrace,
        ..
    } = &r.detail
    else {
        return Err("wrong report".into());
    };
    let orders: Vec<usize> = without_proper_subbrace.iter().map(|w| w.order).collect();
    ensure(orders == expected, || format!("orders {orders:?}"))?;
    ensure(
        without_proper_subbrace.iter().all(|w| w.trivial && w.cyclic_prime),
        || "a witness is not trivial cyclic".into(),
    )?;
    Ok(format!("order ≤ {max}: trivial C_p for p in {orders:?}"))
}

fn sweep(scope: Scope, max: usize, slow: bool) -> Outcome {
    let r = verify(scope, max, slow, &GroupCatalog::builtin(), &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(r.passed, || "report not passed".into())?;
    Ok(format!("order ≤ {max}: {}", r.summary))
}

fn soluble_census_decomposes(census: &[Vec<CensusEntry>]) -> Outcome {
    let cat = GroupCatalog::builtin();
    let b = Bounds::default();
    let total = braces(census).len();
    let c = verify(Scope::C, 8, false, &cat, &b).map_err(|e| e.to_string())?;
    let SweepDetail::C {
        braces: entries,
        not_soluble,
        ..
    } = &c.detail
    else {
        return Err("wrong report".into());
    };
    ensure(entries.len() + not_soluble.len() == total, || "C skipped braces".into())?;
    ensure(entries.iter().all(|e| e.verified && e.uniform), || {
        "unverified C witness".into()
    })?;
    Ok(format!(
        "{}; every census brace of order ≤ 8 is soluble: {}",
        c.summary,
        not_soluble.is_empty()
    ))
}

fn theorem_d() -> Outcome {
    let r = verify(Scope::D, 8, false, &GroupCatalog::builtin(), &Bounds::default()).map_err(|e| e.to_string())?;
    let SweepDetail::D { braces, .. } = &r.detail else {
        return Err("wrong report".into());
    };
    ensure(braces.iter().all(|e| e.verified == e.meeting_last_term), || {
        "an admissible subset lacks a witness".into()
    })?;
    Ok(r.summary)
}

fn lemma() -> Outcome {
    let a5 = catalog::alternating5();
    let (hol, found) = regular_subgroups_in_g_intg(&a5, &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(found.len() == 2, || format!("{} subgroups", found.len()))?;
    let expected = expected_g_intg_subgroups(&hol).map_err(|e| e.to_string())?;
    ensure(found == expected, || {
        "subgroups differ from G x 1 and {(a, α_(a⁻¹))}".into()
    })?;
    // the non-trivial one pairs a with conjugation by a⁻¹
    let conj = found
        .iter()
        .find(|h| h.phis().iter().any(|&p| p != 0))
        .ok_or("no non-trivial subgroup")?;
    for a in 0..60 {
        for x in 0..60 {
            let want = a5.conjugate(a5.inv(a), x);
            ensure(hol.auts().apply(conj.phi(a), x) == want, || {
                format!("φ_{a} is not α_(a⁻¹)")
            })?;
        }
    }
    Ok("2 regular subgroups found, equal to G x 1 and {(a, α_(a⁻¹))}".into())
}

fn central_commut(census: &[Vec<CensusEntry>]) -> Outcome {
    let mut pairs = 0;
    for b in braces(census) {
        let ideals = all_ideals(b, &Bounds::default()).map_err(|e| e.to_string())?;
        for i in &ideals {
            for j in ideals.iter().filter(|j| j.is_subset(i)) {
                let (x, y) = annihilator_quotient_test(b, i, j).map_err(|e| e.to_string())?;
                ensure(x == y, || format!("{i:?} ⊇ {j:?}: {x} against {y}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} nested ideal pairs agree"))
}

fn abelian_series(census: &[Vec<CensusEntry>]) -> Outcome {
    let mut series = 0;
    for (k, b) in braces(census).into_iter().enumerate() {
        let (derived, least, count, contained) =
            abelian_series_comparison(b, &Bounds::default()).map_err(|e| e.to_string())?;
        ensure(contained, || {
            format!("brace {k}: a derived term escapes an abelian series")
        })?;
        ensure(derived == least, || {
            format!("brace {k}: derived length {derived}, shortest abelian series {least}")
        })?;
        series += count;
    }
    Ok(format!("{series} abelian series checked termwise"))
}

fn ybe(census: &[Vec<CensusEntry>]) -> Outcome {
    let all = braces(census);
    for (k, b) in all.iter().enumerate() {
        let s = solution_from_brace(b).map_err(|e| format!("brace {k}: {e}"))?;
        let m = s.size();
        let r = |x: usize, y: usize| s.apply(x, y);
        for x in 0..m {
            let mut seen_l = vec![false; m];
            let mut seen_r = vec![false; m];
            for y in 0..m {
                seen_l[s.lambda(x, y)] = true;
                seen_r[s.rho(x, y)] = true;
                for z in 0..m {
                    let (a, b1) = r(x, y);
                    let (b2, c) = r(b1, z);
                    let (a, b3) = r(a, b2);
                    let (q, w) = r(y, z);
                    let (e, q) = r(x, q);
                    let (q, w) = r(q, w);
                    ensure((a, b3, c) == (e, q, w), || {
                        format!("brace {k}: braid fails at ({x},{y},{z})")
                    })?;
                }
            }
            ensure(seen_l.iter().all(|&v| v) && seen_r.iter().all(|&v| v), || {
                format!("brace {k}: degenerate")
            })?;
        }
    }
    Ok(format!(
        "{} solutions satisfy the braid relation and are non-degenerate",
        all.len()
    ))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_braceforge");
    let run = |scope: &str, jobs: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(bin)
            .args(["verify", scope, "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("verify {scope} exited with {:?}", out.status.code())
        })?;
        Ok(out.stdout)
    };
    for scope in Scope::ALL {
        let one = run(scope.name(), "1")?;
        let four = run(scope.name(), "4")?;
        ensure(!one.is_empty() && one == four, || {
            format!("verify {} differs between --jobs 1 and 4", scope.name())
        })?;
    }
    let records = |jobs: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap();
        pool.install(|| {
            let cat = GroupCatalog::builtin();
            let c = enumerate_braces(8, &cat, &Bounds::default()).unwrap();
            serde_json::to_string(&census_records(&c, &cat).unwrap()).unwrap()
        })
    };
    ensure(records(1) == records(3), || {
        "census differs between thread counts".into()
    })?;
    Ok("every verify scope is byte-identical with --jobs 1 and 4".into())
}

#[test]
fn acceptance_criteria() {
    let c8 = census(8);
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut run = |id: usize, name: &'static str, f: &dyn Fn() -> Outcome| {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        results.push((id, name, outcome));
    };
    run(1, "axiom suite", &|| axioms(&c8));
    run(2, "oracle equivalence", &oracle_equivalence);
    run(3, "minimal braces", &|| {
        let base = theorem_a(8, false, &[2, 3, 5, 7])?;
        let wide = theorem_a(12, true, &[2, 3, 5, 7, 11])?;
        Ok(format!("{base}; {wide}"))
    });
    run(4, "chief factors and maximal subbraces", &|| {
        Ok(format!(
            "{}; {}",
            sweep(Scope::B, 8, false)?,
            sweep(Scope::B, 12, true)?
        ))
    });
    run(5, "uniform multidecomposition", &|| {
        Ok(format!(
            "{}; {}",
            soluble_census_decomposes(&c8)?,
            sweep(Scope::C, 12, true)?
        ))
    });
    run(6, "embedded multidecomposition", &theorem_d);
    run(7, "regular subgroups of [A5]Int(A5)", &lemma);
    run(8, "central quotient characterisation", &|| central_commut(&c8));
    run(9, "abelian series against derived series", &|| abelian_series(&c8));
    run(10, "Yang-Baxter validity", &|| ybe(&c8));
    run(11, "determinism", &determinism);

    let mut out = std::io::stdout().lock();
    for (id, name, outcome) in &results {
        let line = match outcome {
            Ok(msg) => format!("criterion {id:>2} PASS  {name}: {msg}"),
            Err(msg) => format!("criterion {id:>2} FAIL  {name}: {msg}"),
        };
        writeln!(out, "{line}").unwrap();
    }
    out.flush().unwrap();
    let failed: Vec<usize> = results.iter().filter(|r| r.2.is_err()).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
