//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use buchstaber::generators::{generate, graphs, join, GeneratorSpec};
use buchstaber::invariant::bounds::{ayzenberg_s, cover_lower_bound};
use buchstaber::invariant::conditions::{
    lift_to_integers, verify_nonsimplex_condition_gf2, verify_nonsimplex_condition_integer, verify_s_gf2,
    verify_s_integer,
};
use buchstaber::invariant::criteria::{check_criteria, condition, condition_s2};
use buchstaber::invariant::report::{analyze, s_real, upper_bound, AnalyzeOptions};
use buchstaber::invariant::xi::{xi_search, xi_to_matrix, SearchOptions};
use buchstaber::oracle::{matrix_scan_canonical, matrix_scan_gf2};
use buchstaber::zlattice::{counterexample_matrix, det_exact, lemma_r23_scan};
use buchstaber::{Gf2Matrix, Gf2Vector, IntMatrix, SimplicialComplex, VertexSet};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn spec(s: &str) -> SimplicialComplex {
    generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
}

/// GF(2) witnesses collected while checking three-way agreement.
struct Agreement {
    witnesses: Vec<(SimplicialComplex, Gf2Matrix)>,
    checks: usize,
}

/// xi_search ⟺ matrix scan ⟺ criteria, for k = 1, 2, 3.
fn three_way(corpus: &[SimplicialComplex], exhaustive_limit: usize) -> std::result::Result<Agreement, String> {
    let opts = SearchOptions::default();
    let mut out = Agreement { witnesses: Vec::new(), checks: 0 };
    for (idx, k) in corpus.iter().enumerate() {
        let level = check_criteria(k).level as usize;
        for rank in 1..=3 {
            let xi = xi_search(k, rank, &opts).map_err(|e| format!("item {idx}: {e}"))?;
            let scan = if k.vertex_count() * rank <= exhaustive_limit {
                matrix_scan_gf2(k, rank)
            } else {
                matrix_scan_canonical(k, rank)
            }
            .map_err(|e| format!("item {idx}: {e}"))?;
            let direct = condition(k, rank as u8);
            let verdicts = [xi.is_some(), scan.is_some(), level >= rank, direct.is_some()];
            ensure(verdicts.iter().all(|&v| v == verdicts[0]), || {
                format!("item {idx} {:?} k={rank}: xi/scan/level/condition = {verdicts:?}", k.maximal_simplices())
            })?;
            if let Some(w) = &xi {
                w.validate(k).map_err(|e| format!("item {idx}: {e}"))?;
                let s = xi_to_matrix(k, w).map_err(|e| format!("item {idx}: {e}"))?;
                ensure(verify_s_gf2(k, &s).unwrap(), || format!("item {idx}: ξ matrix fails"))?;
                out.witnesses.push((k.clone(), s));
            }
            if let Some(s) = scan {
                ensure(verify_s_gf2(k, &s).unwrap(), || format!("item {idx}: scan matrix fails"))?;
                out.witnesses.push((k.clone(), s));
            }
            if let Some(c) = direct {
                ensure(c.holds(), || format!("item {idx}: configuration does not hold"))?;
                let w = c.to_xi().map_err(|e| format!("item {idx}: {e}"))?;
                w.validate(k).map_err(|e| format!("item {idx}: configuration ξ: {e}"))?;
            }
            out.checks += 1;
        }
    }
    Ok(out)
}

fn criterion_1(census: &[SimplicialComplex]) -> (Outcome, Option<Agreement>) {
    match three_way(census, 24) {
        Ok(a) => (Ok(format!("{} complexes, {} (K, k) checks, 0 disagreements", census.len(), a.checks)), Some(a)),
        Err(e) => (Err(e), None),
    }
}

fn criterion_2(corpus: &[SimplicialComplex]) -> (Outcome, Option<Agreement>) {
    let agreement = match three_way(corpus, 16) {
        Ok(a) => a,
        Err(e) => return (Err(e), None),
    };
    // Exhaustive scans where the main comparison used the reduced scan.
    let opts = SearchOptions::default();
    let mut spot = 0;
    let mut found = 0;
    'outer: for (idx, k) in corpus.iter().enumerate() {
        for rank in 1..=3 {
            let bits = k.vertex_count() * rank;
            if bits <= 16 || bits > 24 {
                continue;
            }
            let scan = matrix_scan_gf2(k, rank).unwrap();
            let xi = xi_search(k, rank, &opts).unwrap();
            if scan.is_some() != xi.is_some() {
                return (Err(format!("spot check item {idx} k={rank}: scan {} xi {}", scan.is_some(), xi.is_some())), None);
            }
            found += scan.is_some() as usize;
            spot += 1;
            if spot == 50 {
                break 'outer;
            }
        }
    }
    let result = if spot < 50 {
        Err(format!("only {spot} spot-check instances available"))
    } else {
        Ok(format!(
            "{} complexes, {} (K, k) checks, {spot} exhaustive spot checks ({found} with witness), 0 disagreements",
            corpus.len(),
            agreement.checks
        ))
    };
    (result, Some(agreement))
}

fn criterion_3() -> Outcome {
    for n in [2, 3] {
        let r = lemma_r23_scan::<BigInt>(n).map_err(|e| e.to_string())?;
        ensure(r.is_none(), || format!("n={n}: unexpected counterexample {r:?}"))?;
    }
    let c = lemma_r23_scan::<BigInt>(4)
        .map_err(|e| e.to_string())?
        .ok_or("n=4: no counterexample found")?;
    let d = det_exact(&c).map_err(|e| e.to_string())?;
    ensure(d.clone() % 2 != BigInt::from(0) && d.clone() != BigInt::from(1) && d.clone() != BigInt::from(-1), || {
        format!("n=4 matrix has det {d}")
    })?;
    let mut dets = Vec::new();
    for k in [4usize, 6, 8] {
        let a = counterexample_matrix::<BigInt>(k).map_err(|e| e.to_string())?;
        let d = det_exact(&a).map_err(|e| e.to_string())?;
        let expected = BigInt::from(if k % 2 == 0 { -1 } else { 1 }) * BigInt::from(k as i64 - 1);
        ensure(d == expected, || format!("det A_{k} = {d}, expected {expected}"))?;
        dets.push(d.to_string());
    }
    Ok(format!(
        "16 and 512 matrices: odd det implies ±1; n=4 counterexample det {d}; det A_4, A_6, A_8 = {}",
        dets.join(", ")
    ))
}

fn criterion_4(agreements: &[&Agreement]) -> Outcome {
    let mut count = 0;
    for a in agreements {
        for (k, s) in &a.witnesses {
            let lifted: IntMatrix = lift_to_integers(s);
            ensure(verify_s_integer(k, &lifted).unwrap(), || {
                format!("lift fails for {:?} with\n{s}", k.maximal_simplices())
            })?;
            count += 1;
        }
    }
    ensure(count > 0, || "no witnesses collected".into())?;
    Ok(format!("{count} GF(2) witnesses lifted, 0 failures"))
}

fn criterion_5() -> Outcome {
    let opts = AnalyzeOptions { polytopal: false, search: SearchOptions { max_k: 6, threads: 1 } };
    let mut total = 0;
    for m in 1..=6 {
        for g in graphs(m).map_err(|e| e.to_string())? {
            let a = ayzenberg_s(&g).map_err(|e| e.to_string())?;
            let report = analyze(&g, &opts);
            ensure(report.s_real.lower >= a, || {
                format!("{:?}: s_real {:?} below {a}", g.maximal_simplices(), report.s_real.lower)
            })?;
            let s = &report.s_interval;
            ensure(s.exact && s.lower == a, || format!("{:?}: s interval {s:?}, formula {a}", g.maximal_simplices()))?;
            total += 1;
        }
    }
    let spots = [("complete_graph 4", 1), ("cycle 5", 3), ("cycle 4", 2), ("points 3", 2)];
    for (name, expected) in spots {
        let s = analyze(&spec(name), &opts).s_interval;
        ensure(s.exact && s.lower == expected, || format!("{name}: {s:?}, expected {expected}"))?;
    }
    Ok(format!("{total} graphs up to isomorphism; K4 1, C5 3, C4 2, 3 points 2"))
}

fn criterion_6() -> Outcome {
    let opts = AnalyzeOptions::default();
    let exact = |k: &SimplicialComplex| {
        let s = analyze(k, &opts).s_interval;
        s.exact.then_some(s.lower)
    };
    for n in 0..=5 {
        ensure(exact(&spec(&format!("simplex {n}"))) == Some(0), || format!("s(Δ^{n}) != 0"))?;
    }
    for n in 2..=5 {
        ensure(exact(&spec(&format!("boundary {n}"))) == Some(1), || format!("s(∂Δ^{n}) != 1"))?;
    }
    ensure(exact(&spec("cycle 4")) == Some(2), || "s(C4) != 2".into())?;
    ensure(exact(&spec("join points 2 points 2")) == Some(2), || "s(I×I) != 2".into())?;

    let start = Instant::now();
    let c = spec("cyclic 13 15");
    let n = c.minimal_nonsimplices().len();
    let s2 = condition_s2(&c);
    let elapsed = start.elapsed();
    ensure(s2.is_some(), || "S2 fails on ∂C^13(15)".into())?;
    ensure(elapsed < Duration::from_secs(60), || format!("N + S2 took {elapsed:?}"))?;
    ensure(upper_bound(&c) == 2, || format!("upper bound {}", upper_bound(&c)))?;
    let report = analyze(&c, &opts);
    ensure(report.s_interval.exact && report.s_interval.lower == 2, || format!("∂C^13(15): {:?}", report.s_interval))?;
    Ok(format!(
        "Δ^n 0, ∂Δ^n 1, I×I 2, ∂C^13(15) 2 (|N| = {n}, N + S2 in {:.3} s)",
        elapsed.as_secs_f64()
    ))
}

fn random_gf2(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Gf2Matrix {
    let mask = (1u64 << cols) - 1;
    Gf2Matrix::new(cols, (0..rows).map(|_| Gf2Vector(rng.gen::<u64>() & mask)).collect()).unwrap()
}

fn criterion_7(corpus: &[SimplicialComplex]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut passing = 0;
    for i in 0..1000 {
        let k = &corpus[(i * 37) % corpus.len()];
        let rank = 1 + i % 3;
        let s = random_gf2(&mut rng, k.vertex_count(), rank);
        let a = verify_s_gf2(k, &s).unwrap();
        let b = verify_nonsimplex_condition_gf2(k, &s).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("GF(2) pair {i}: verify_S {a}, nonsimplex {b}"))?;
        passing += a as usize;
    }
    let mut int_passing = 0;
    for i in 0..200 {
        let k = &corpus[(i * 53) % corpus.len()];
        let rank = 1 + i % 3;
        let rows = (0..k.vertex_count())
            .map(|_| (0..rank).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect())
            .collect();
        let s = IntMatrix::from_rows(rank, rows).unwrap();
        let a = verify_s_integer(k, &s).unwrap();
        let b = verify_nonsimplex_condition_integer(k, &s).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("integer pair {i}: verify_S {a}, nonsimplex {b}\n{s}"))?;
        int_passing += a as usize;
    }
    ensure(passing > 0 && passing < 1000 && int_passing > 0 && int_passing < 200, || {
        format!("degenerate sample: {passing}/1000 and {int_passing}/200 pass")
    })?;
    Ok(format!(
        "1000 GF(2) pairs ({passing} satisfy S), 200 integer pairs ({int_passing} satisfy S), 0 disagreements"
    ))
}

fn criterion_8(corpus: &[SimplicialComplex]) -> Outcome {
    let opts = SearchOptions::default();
    for (idx, k) in corpus.iter().enumerate() {
        let real = s_real(k, &opts);
        let level = check_criteria(k).level as usize;
        let upper = upper_bound(k);
        ensure(level <= real.lower && real.upper <= upper, || {
            format!("item {idx}: level {level}, s_real [{}, {}], bound {upper}", real.lower, real.upper)
        })?;
        let cover = cover_lower_bound(k);
        ensure(!cover.coverable || cover.value <= real.upper as i64, || {
            format!("item {idx}: cover bound {} above s_real {}", cover.value, real.upper)
        })?;
    }
    let mut joins = 0;
    for i in 0..corpus.len() {
        let (a, b) = (&corpus[i], &corpus[(i * 7 + 3) % corpus.len()]);
        if a.vertex_count() + b.vertex_count() > 12 {
            continue;
        }
        let j = join(a, b).map_err(|e| e.to_string())?;
        let m1 = a.vertex_count();
        let mut expected: Vec<VertexSet> = a
            .minimal_nonsimplices()
            .iter()
            .copied()
            .chain(b.minimal_nonsimplices().iter().map(|w| w.shifted(m1)))
            .collect();
        expected.sort();
        ensure(j.minimal_nonsimplices() == expected.as_slice(), || format!("join law fails for pair {i}"))?;
        let both = !a.minimal_nonsimplices().is_empty() && !b.minimal_nonsimplices().is_empty();
        ensure(!both || check_criteria(&j).level >= 2, || format!("join pair {i}: level below 2"))?;
        joins += 1;
    }
    Ok(format!("{} complexes, {joins} joins, 0 violations", corpus.len()))
}

fn criterion_9(corpus: &[SimplicialComplex]) -> Outcome {
    let run = |threads: usize, k: &SimplicialComplex| {
        let opts = AnalyzeOptions { polytopal: false, search: SearchOptions { threads, ..Default::default() } };
        serde_json::to_string(&analyze(k, &opts)).unwrap()
    };
    for (idx, k) in corpus.iter().enumerate() {
        let first = run(1, k);
        ensure(first == run(1, k), || format!("item {idx}: repeated runs differ"))?;
        ensure(first == run(8, k), || format!("item {idx}: 1 vs 8 threads differ"))?;
    }
    Ok(format!("{} reports identical across runs and thread counts", corpus.len()))
}

fn main() -> ExitCode {
    let census = common::census_corpus();
    let corpus = common::random_corpus();
    let mut failures = 0;
    let mut report = |id: usize, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id}. {name}: {detail} ({secs:.2} s)"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id}. {name}: {detail} ({secs:.2} s)");
            }
        }
    };

    let t = Instant::now();
    let (o1, a1) = criterion_1(&census);
    let o1 = o1.and_then(|d| {
        ensure(t.elapsed() < Duration::from_secs(60), || format!("took {:?}", t.elapsed()))?;
        Ok(d)
    });
    report(1, "census equivalence", t, o1);

    let t = Instant::now();
    let (o2, a2) = criterion_2(&corpus);
    let o2 = o2.and_then(|d| {
        ensure(t.elapsed() < Duration::from_secs(600), || format!("took {:?}", t.elapsed()))?;
        Ok(d)
    });
    report(2, "randomized corpus equivalence", t, o2);

    let t = Instant::now();
    let o3 = criterion_3().and_then(|d| {
        ensure(t.elapsed() < Duration::from_secs(5), || format!("took {:?}", t.elapsed()))?;
        Ok(d)
    });
    report(3, "0/1 determinant lemma", t, o3);

    let t = Instant::now();
    let collected: Vec<&Agreement> = a1.iter().chain(a2.iter()).collect();
    let o4 = if collected.len() == 2 {
        criterion_4(&collected)
    } else {
        Err("witness collection failed in criteria 1-2".into())
    };
    report(4, "integer lifting", t, o4);

    let t = Instant::now();
    let o5 = criterion_5().and_then(|d| {
        ensure(t.elapsed() < Duration::from_secs(300), || format!("took {:?}", t.elapsed()))?;
        Ok(d)
    });
    report(5, "graph formula", t, o5);

    let t = Instant::now();
    report(6, "headline values", t, criterion_6());

    let t = Instant::now();
    report(7, "condition equivalences", t, criterion_7(&corpus));

    let t = Instant::now();
    let everything: Vec<SimplicialComplex> = census
        .iter()
        .cloned()
        .chain(corpus.iter().cloned())
        .chain((1..=6).flat_map(|m| graphs(m).unwrap()))
        .collect();
    report(8, "bound suite", t, criterion_8(&everything));

    let t = Instant::now();
    report(9, "determinism", t, criterion_9(&corpus));

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
