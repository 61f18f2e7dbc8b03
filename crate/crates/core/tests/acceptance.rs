//! Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on
//! any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fairrank::fixpoint::{
    linear_fair_ranking, perron_fixed_point, recalc_apply, PerronResult, RecalcConfig,
};
use fairrank::fraction::{fraction, Fraction};
use fairrank::optimize::{
    composite_fraction, emn_sweep_composite, min_backward_copeland_closed_form, min_backward_fair,
    min_backward_injective, reversal_bound_check, verify_copeland_upper_bound, weak_orders,
    SampleMode, EMN_LIMIT,
};
use fairrank::ranking::{backward_arcs, is_fair, spectral_leq, FairnessClass, Ranking};
use fairrank::tournament::{
    composite, composite_vertex, enumerate_all, random, rotational, scc_decompose, Tournament,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_tournaments() -> Vec<Tournament> {
    (3..=5).flat_map(|n| enumerate_all(n).unwrap()).collect()
}

fn composite_exactness() -> Outcome {
    for l in 1..=4usize {
        let t = composite(l).map_err(|e| e.to_string())?;
        let side = 2 * l + 1;
        ensure(t.len() == side * side, || {
            format!("T_{l} has {} vertices", t.len())
        })?;
        ensure(t.arc_count() == 2 * l * (l + 1) * side * side, || {
            format!("T_{l} has {} arcs", t.arc_count())
        })?;
        for m in 1..=side {
            for i in 1..=side {
                let d = t.out_degree(composite_vertex(l, m, i)).unwrap();
                ensure(d == (m - 1) + l + 2 * l * l, || {
                    format!("T_{l}: vertex {m}|{i} has out-degree {d}")
                })?;
            }
        }
        let report = backward_arcs(&t, &Ranking::out_degree(&t)).map_err(|e| e.to_string())?;
        let expected = l * l * (2 * l + 1) * (3 * l + 1);
        ensure(report.count() == expected, || {
            format!(
                "T_{l}: {} backward arcs, expected {expected}",
                report.count()
            )
        })?;
        ensure(
            report.fraction == fraction(expected as u64, t.arc_count() as u64),
            || format!("T_{l}: fraction {}", report.fraction),
        )?;
    }
    let t1 = backward_arcs(
        &composite(1).unwrap(),
        &Ranking::out_degree(&composite(1).unwrap()),
    )
    .unwrap();
    let t2 = backward_arcs(
        &composite(2).unwrap(),
        &Ranking::out_degree(&composite(2).unwrap()),
    )
    .unwrap();
    ensure(
        (t1.count(), t1.total, t2.count(), t2.total) == (12, 36, 140, 300),
        || "l = 1, 2 counts".into(),
    )?;
    Ok("l=1: 12/36, l=2: 140/300, l=1..4 exact".into())
}

fn emn_limit() -> Outcome {
    let fs: Vec<Fraction> = (1..=1000).map(|l| composite_fraction(l).unwrap()).collect();
    ensure(fs.windows(2).all(|w| w[0] < w[1]), || {
        "not strictly increasing".into()
    })?;
    ensure(fs.iter().all(|f| *f < EMN_LIMIT), || {
        "a fraction reaches 3/4".into()
    })?;
    ensure(fs[99] == Fraction::new(30100, 40602), || {
        format!("f(100) = {}", fs[99])
    })?;
    let gap = EMN_LIMIT - fs[999];
    ensure(gap < fraction(2, 1000), || format!("3/4 - f(1000) = {gap}"))?;
    let report = emn_sweep_composite(100, 4).map_err(|e| e.to_string())?;
    ensure(report.monotone && report.below_limit, || {
        "sweep flags".into()
    })?;
    Ok(format!("f(100) = 30100/40602, 3/4 - f(1000) = {gap}"))
}

fn upper_bound() -> Outcome {
    let expected = [
        (3, fraction(2, 3), 8),
        (4, fraction(2, 3), 64),
        (5, fraction(7, 10), 1024),
    ];
    let mut seen = Vec::new();
    for (n, bound, count) in expected {
        let r =
            verify_copeland_upper_bound(n, SampleMode::Exhaustive).map_err(|e| e.to_string())?;
        ensure(r.instances == count, || {
            format!("n={n}: {} instances", r.instances)
        })?;
        ensure(r.bound == bound && r.within_bound && r.below_limit, || {
            format!("n={n}: max {} against bound {}", r.max_fraction, bound)
        })?;
        seen.push(format!("n={n} max {}", r.max_fraction));
    }
    Ok(seen.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let all: Vec<Tournament> = (1..=5).flat_map(|n| enumerate_all(n).unwrap()).collect();
    let mismatches: Vec<String> = all
        .par_iter()
        .filter_map(|t| {
            let scop = min_backward_fair(t, FairnessClass::SCop).ok()?.count;
            let closed = min_backward_copeland_closed_form(t).count;
            let inj = min_backward_fair(t, FairnessClass::Inj).ok()?.count;
            let perm = min_backward_injective(t).ok()?.count;
            (scop != closed || inj != perm).then(|| format!("{t:?}"))
        })
        .collect();
    let n3to5 = all.iter().filter(|t| t.len() >= 3).count();
    ensure(mismatches.is_empty(), || {
        format!("mismatch on {}", mismatches[0])
    })?;
    Ok(format!(
        "{} tournaments ({n3to5} with n in 3..=5)",
        all.len()
    ))
}

fn check_solver_components(t: &Tournament, cfg: &RecalcConfig) -> Result<(), String> {
    let report = linear_fair_ranking(t, cfg).map_err(|e| e.to_string())?;
    for class in [FairnessClass::Lin, FairnessClass::Spec, FairnessClass::Weak] {
        ensure(is_fair(t, &report.ranking, class).unwrap(), || {
            format!("{class} fails on {t:?}")
        })?;
    }
    for c in report.components.iter().filter(|c| c.vertices.len() >= 3) {
        ensure(c.residual <= 1e-9 && c.lambda >= 1.0, || {
            format!("component residual {} lambda {}", c.residual, c.lambda)
        })?;
    }
    Ok(())
}

fn linear_fair_existence() -> Outcome {
    let cfg = RecalcConfig::default();
    let all: Vec<Tournament> = (1..=5).flat_map(|n| enumerate_all(n).unwrap()).collect();
    all.par_iter()
        .try_for_each(|t| check_solver_components(t, &cfg))?;
    (0..100u64)
        .into_par_iter()
        .try_for_each(|seed| check_solver_components(&random(50, seed).unwrap(), &cfg))?;
    Ok(format!("{} exhaustive + 100 random n=50", all.len()))
}

fn perron_on_components(t: &Tournament, cfg: &RecalcConfig) -> Vec<PerronResult> {
    scc_decompose(t)
        .components
        .iter()
        .filter(|c| c.len() >= 3)
        .map(|c| perron_fixed_point(&t.induced(c).unwrap(), cfg).unwrap())
        .collect()
}

fn fixed_point_contract() -> Outcome {
    let cfg = RecalcConfig::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut instances: Vec<Tournament> = small_tournaments();
    instances.extend((0..100).map(|seed| random(30, seed).unwrap()));
    instances.push(composite(2).unwrap());
    for t in &instances {
        for c in scc_decompose(t).components.iter().filter(|c| c.len() >= 3) {
            let sub = t.induced(c).unwrap();
            let p = perron_fixed_point(&sub, &cfg).map_err(|e| e.to_string())?;
            let d = recalc_apply(&sub, &p.ranking).unwrap().distance(&p.ranking);
            ensure(d <= 1e-9, || format!("d(phi(r), r) = {d}"))?;
            worst = worst.max(d);
            count += 1;
        }
    }
    for (l, lambda) in [(1, 1.0), (2, 2.0)] {
        let t = rotational(l).unwrap();
        let p = &perron_on_components(&t, &cfg)[0];
        let u = 1.0 / t.len() as f64;
        ensure(
            p.ranking.values().iter().all(|v| (v - u).abs() <= 1e-9),
            || format!("ST_{l} not uniform"),
        )?;
        ensure((p.lambda - lambda).abs() <= 1e-9, || {
            format!("ST_{l}: lambda {}", p.lambda)
        })?;
    }
    Ok(format!("{count} components, max d = {worst:.2e}"))
}

fn containment_violations(t: &Tournament, r: &Ranking) -> Option<String> {
    let fair = |c| is_fair(t, r, c).unwrap();
    let (lin, spec, weak) = (
        fair(FairnessClass::Lin),
        fair(FairnessClass::Spec),
        fair(FairnessClass::Weak),
    );
    let (cop, scop) = (fair(FairnessClass::Cop), fair(FairnessClass::SCop));
    let bad = (lin && !spec) || (spec && !weak) || (cop && !scop) || (scop && !weak);
    bad.then(|| format!("{t:?} with {}", r.to_text().replace('\n', "; ")))
}

fn containment() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=4 {
        for t in enumerate_all(n).unwrap() {
            for levels in weak_orders(n) {
                let ranks: Vec<i64> = levels.iter().map(|&l| l as i64 + 1).collect();
                if let Some(bad) = containment_violations(&t, &Ranking::from_integers(&ranks)) {
                    return Err(bad);
                }
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..10_000u64 {
        let n = rng.gen_range(1..=8);
        let t = random(n, rng.gen()).unwrap();
        let r = if k % 2 == 0 {
            let ranks: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=4)).collect();
            Ranking::from_integers(&ranks)
        } else {
            Ranking::float((0..n).map(|_| rng.gen_range(0.01..1.0)).collect()).unwrap()
        };
        if let Some(bad) = containment_violations(&t, &r) {
            return Err(bad);
        }
        checked += 1;
    }
    Ok(format!("{checked} rankings, no counterexample"))
}

/// Looks for an injection `a → b` with `a[i] ≤ b[f(i)]` by backtracking.
fn injection_exists(a: &[i64], b: &[i64]) -> bool {
    fn go(a: &[i64], b: &[i64], used: &mut Vec<bool>) -> bool {
        let Some((&first, rest)) = a.split_first() else {
            return true;
        };
        for j in 0..b.len() {
            if !used[j] && first <= b[j] {
                used[j] = true;
                if go(rest, b, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    go(a, b, &mut vec![false; b.len()])
}

fn spectral_shortcut() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let instances = 12_000;
    let mut disagreements = 0;
    for _ in 0..instances {
        let n = rng.gen_range(2..=7);
        let t = random(n, rng.gen()).unwrap();
        let ranks: Vec<i64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let spectrum = |v: usize| -> Vec<i64> { t.out_neighbors(v).map(|z| ranks[z]).collect() };
        let fast = spectral_leq(&t, &Ranking::from_integers(&ranks), x, y).unwrap();
        if fast != injection_exists(&spectrum(x), &spectrum(y)) {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || {
        format!("{disagreements} disagreements")
    })?;
    Ok(format!("{instances} instances, 0 disagreements"))
}

fn reversal_bound() -> Outcome {
    for n in 1..=5 {
        let r = reversal_bound_check(n, SampleMode::Exhaustive).map_err(|e| e.to_string())?;
        ensure(r.holds, || {
            format!("n={n}: {} > {}", r.max_min_backward, r.half_edges)
        })?;
    }
    let r = reversal_bound_check(
        7,
        SampleMode::Random {
            samples: 100,
            seed: 0,
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(r.holds && r.half_edges == 10, || {
        format!("n=7: max {}", r.max_min_backward)
    })?;
    let cycle = min_backward_injective(&rotational(1).unwrap())
        .unwrap()
        .count;
    ensure(cycle == 1, || format!("3-cycle minimum {cycle}"))?;
    Ok(format!(
        "n=7 max minimum {} <= 10, 3-cycle = 1",
        r.max_min_backward
    ))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "composite family exactness",
            composite_exactness,
            Duration::from_secs(10),
        ),
        (
            "limit 3/4 of the composite family",
            emn_limit,
            Duration::from_secs(1),
        ),
        (
            "strict Copeland upper bound",
            upper_bound,
            Duration::from_secs(30),
        ),
        (
            "oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(300),
        ),
        (
            "linear fair existence",
            linear_fair_existence,
            Duration::from_secs(120),
        ),
        (
            "fixed-point contract",
            fixed_point_contract,
            Duration::from_secs(120),
        ),
        (
            "containment properties",
            containment,
            Duration::from_secs(120),
        ),
        (
            "spectral shortcut soundness",
            spectral_shortcut,
            Duration::from_secs(120),
        ),
        ("reversal bound", reversal_bound, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
