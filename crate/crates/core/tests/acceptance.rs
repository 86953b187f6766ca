//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any criterion fails.

#![allow(clippy::type_complexity)]

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlower_core::harness::sample::{random_network, random_rational_point, uniform_grid};
use qlower_core::harness::{build_report, builtin_target, sup_error, write_csv};
use qlower_core::indicator::format::bundle_to_json_string;
use qlower_core::indicator::{
    build_approximator, build_approximator_at, choose_resolution, BuildOptions, GridSpec,
    HolderFunctionSpec, Materialize,
};
use qlower_core::lowering::{
    binarize, binary_prefix, ternarize, ternary_prefix, theorem_bounds, to_unit_weights,
    LoweringError, TheoremBoundParams,
};
use qlower_core::net::format::to_json_string;
use qlower_core::{Network, RationalScalar, WeightSet};

const CORPUS_SEED: u64 = 0x5eed_0001;
const CORPUS_SIZE: usize = 240;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// `(source, d, L)` for the seeded baseA corpus: d cycles through 1..=3, L through 1..=4.
fn corpus() -> Vec<(Network, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|i| {
            let d = 1 + i % 3;
            let l = 1 + (i / 3) % 4;
            (random_network(&mut rng, d, l, 8, WeightSet::BaseA), d, l)
        })
        .collect()
}

fn pow_inv(base: i64, exp: u32) -> RationalScalar {
    RationalScalar::new(1, base.pow(exp))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0usize;
    let mut points = 0usize;
    let nets = corpus();
    for (g, d, _) in &nets {
        let (t, _) = ternarize(g).expect("ternarize");
        let (b, _) = binarize(&t).expect("binarize");
        for x in uniform_grid(*d, 5) {
            let want = g.eval_exact(&x).unwrap();
            if t.eval_exact(&x).unwrap() != want {
                mismatches += 1;
            }
            if b.eval_exact(&x).unwrap() != want {
                mismatches += 1;
            }
            points += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && nets.len() >= 200 && elapsed < Duration::from_secs(60),
        format!(
            "{} nets, {points} grid points, {mismatches} non-zero diffs, {:.1}s (limit 60s)",
            nets.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut violations = Vec::new();
    for (i, (g, d, _)) in corpus().iter().enumerate() {
        let (t, tc) = ternarize(g).unwrap();
        let (b, bc) = binarize(&t).unwrap();
        let s = g.sparsity().total_nonzero;
        let checks = [
            ("ternary depth +2", t.depth() == g.depth() + 2),
            ("ternary width <= 4x", t.width_max() <= 4 * g.width_max()),
            ("ternary sparsity", t.sparsity().total_nonzero <= 16 * s + 20 * (d + 1)),
            ("ternary alphabet", t.validate(WeightSet::TernaryHalf).pass),
            ("binary depth +3", b.depth() == t.depth() + 3),
            ("binary width <= 8x", b.width_max() <= 8 * t.width_max()),
            ("binary alphabet", b.validate(WeightSet::BinaryQuarter).pass),
            ("binary no zeros", b.matrices().iter().all(|m| m.nonzero_count() == m.entries().len())),
            ("certificates", tc.pass && bc.pass),
        ];
        for (what, ok) in checks {
            if !ok {
                violations.push(format!("net {i}: {what}"));
            }
        }
    }
    outcome(violations.is_empty(), format!("{} violations {:?}", violations.len(), violations))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 1..=5 {
        let tp = ternary_prefix(d);
        let bp = binary_prefix(d);
        if tp.sparsity() != 20 * (d + 1) {
            failures.push(format!("d={d}: ternary sparsity {}", tp.sparsity()));
        }
        for _ in 0..100 {
            let x = random_rational_point(&mut rng, d);
            let coords: Vec<RationalScalar> = std::iter::once(RationalScalar::ONE).chain(x.iter().cloned()).collect();
            let four: Vec<_> = coords.iter().flat_map(|c| std::iter::repeat_n(c.clone(), 4)).collect();
            let two: Vec<_> = coords.iter().flat_map(|c| std::iter::repeat_n(c.clone(), 2)).collect();
            if tp.apply_exact(&x) != four {
                failures.push(format!("d={d}: ternary prefix at {x:?}"));
            }
            if bp.apply_exact(&x) != two {
                failures.push(format!("d={d}: binary prefix at {x:?}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("d=1..5 x 100 points, {} failures {:?}", failures.len(), failures))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    for (i, (g, d, l)) in corpus().into_iter().take(50).enumerate() {
        let (t, _) = ternarize(&g).unwrap();
        let (b, _) = binarize(&t).unwrap();
        let tu = to_unit_weights(&t).unwrap();
        let bu = to_unit_weights(&b).unwrap();
        if *tu.output_scale() != pow_inv(2, l as u32 + 3) || !tu.validate(WeightSet::TernaryUnit).pass {
            failures.push(format!("net {i}: ternary scale {}", tu.output_scale()));
        }
        if *bu.output_scale() != pow_inv(4, l as u32 + 6) || !bu.validate(WeightSet::BinaryUnit).pass {
            failures.push(format!("net {i}: binary scale {}", bu.output_scale()));
        }
        for x in uniform_grid(d, 5) {
            if tu.eval_exact(&x).unwrap() != t.eval_exact(&x).unwrap()
                || bu.eval_exact(&x).unwrap() != b.eval_exact(&x).unwrap()
            {
                failures.push(format!("net {i}: value at {x:?}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("50 nets, {} failures {:?}", failures.len(), failures))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let frozen_m = [("mean", [5, 10, 20]), ("max", [5, 10, 20]), ("root", [25, 100, 400])];
    let opts = BuildOptions { materialize: Materialize::Auto, ..BuildOptions::default() };
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0f64;
    for d in 1..=2 {
        let n = if d == 1 { 1001 } else { 201 };
        for (name, ms) in frozen_m {
            let t = builtin_target(name, d).unwrap();
            for (eps, want_m) in [0.2, 0.1, 0.05].into_iter().zip(ms) {
                let m = choose_resolution(t.spec.k, t.spec.beta, eps).unwrap();
                let bundle = build_approximator(&t.spec, eps, opts).unwrap();
                let rep = sup_error(&bundle, &t, n).unwrap();
                let bound = t.spec.k / ((m + 1) as f64).powf(t.spec.beta);
                worst_ratio = worst_ratio.max(rep.sup_error / bound);
                let ok = m == want_m
                    && bundle.grid().resolution() == m
                    && rep.sup_error <= bound
                    && bound <= eps
                    && rep.theoretical_bound == bound;
                if !ok {
                    failures.push(format!("{name} d={d} eps={eps}: M={m} sup={} bound={bound}", rep.sup_error));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "18 bundles, max sup/bound = {worst_ratio:.4}, {} failures {:?}, {:.1}s (limit 120s)",
            failures.len(),
            failures,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0usize;
    for d in 1..=2 {
        // Distinct values per cell so readout agreement is informative.
        let spec = HolderFunctionSpec::new(
            d,
            1.0,
            4.0,
            4.0,
            Arc::new(|x: &[RationalScalar]| {
                Ok(x.iter().enumerate().fold(RationalScalar::ZERO, |acc, (i, xi)| {
                    &acc + &(xi * &RationalScalar::from_integer(3i64.pow(i as u32)))
                }))
            }),
        )
        .unwrap();
        for m in 1..=6 {
            let grid = GridSpec::new(d, m).unwrap();
            let bundle = build_approximator_at(&spec, 1.0, m, BuildOptions::default()).unwrap();
            let net = bundle.network().unwrap();
            let one_hot_at = |x: &[RationalScalar], k: usize| {
                let trace = net.trace_exact(x).unwrap();
                trace[1]
                    .iter()
                    .enumerate()
                    .all(|(i, v)| *v == if i == k { RationalScalar::ONE } else { RationalScalar::ZERO })
            };
            for k in 0..grid.cell_count() {
                let rep = grid.representative(k);
                if grid.cell_index_exact(&rep).unwrap() != k {
                    failures.push(format!("d={d} M={m}: cell_index(x_{k})"));
                }
                if !one_hot_at(&rep, k) {
                    failures.push(format!("d={d} M={m}: one-hot at x_{k}"));
                }
            }
            for _ in 0..1000 {
                let x = random_rational_point(&mut rng, d);
                let k = grid.cell_index_exact(&x).unwrap();
                if !one_hot_at(&x, k) {
                    failures.push(format!("d={d} M={m}: one-hot at {x:?}"));
                }
                if net.eval_exact(&x).unwrap()[0] != bundle.evaluate_implicit(&x).unwrap() {
                    failures.push(format!("d={d} M={m}: implicit vs materialized at {x:?}"));
                }
                checked += 1;
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} random points + all cells, {} failures {:?}", failures.len(), failures))
}

fn criterion_7() -> Outcome {
    // (d, beta, K, N, m) -> (L, p_inf, s_max, error factor), from an independent
    // 50-digit evaluation.
    let frozen: [((u32, f64, f64, u64, u32), (u64, u64, u128, f64)); 5] = [
        ((1, 1.0, 1.0, 6, 1), (81, 144, 133_214_544, 3.1666666666666665)),
        ((1, 1.0, 1.0, 6, 10), (99, 144, 162_817_776, 0.17252604166666666)),
        ((2, 1.0, 1.0, 15, 3), (165, 1080, 25_729_228_800, 2.133198889747161)),
        ((3, 0.5, 2.0, 61, 5), (285, 11712, 3_908_140_055_055, 2.410266817189036)),
        ((2, 2.5, 4.0, 37, 8), (321, 4440, 1_011_394_441_901, 0.15548966756321)),
    ];
    let mut failures = Vec::new();
    for ((d, beta, k, n, m), (l, p, s, ef)) in frozen {
        let params = TheoremBoundParams { m, n, beta, d, k };
        match theorem_bounds(&params) {
            Ok(rep) => {
                let ok = rep.l == l
                    && rep.p_inf == p
                    && rep.s_max == s
                    && (rep.error_factor - ef).abs() <= 1e-12 * ef
                    && rep.lowered_ternary.depth == l + 2
                    && rep.lowered_ternary.width == 4 * p
                    && rep.lowered_ternary.sparsity == 16 * s + 20 * (d as u128 + 1)
                    && rep.lowered_binary.depth == l + 5
                    && rep.lowered_binary.width == 32 * p;
                if !ok {
                    failures.push(format!("{params:?}: got L={} p={} s={}", rep.l, rep.p_inf, rep.s_max));
                }
            }
            Err(e) => failures.push(format!("{params:?}: {e}")),
        }
    }
    let below = theorem_bounds(&TheoremBoundParams { m: 1, n: 5, beta: 1.0, d: 1, k: 1.0 });
    if !matches!(below, Err(LoweringError::Precondition { .. })) {
        failures.push("N = 5 < (K+1)e was accepted".into());
    }
    outcome(failures.is_empty(), format!("5 parameter sets + precondition, {} failures {:?}", failures.len(), failures))
}

/// Every artifact the other criteria produce, serialized.
fn artifacts() -> Vec<u8> {
    let mut out = Vec::new();
    for (g, _, _) in corpus().iter().take(30) {
        let (t, tc) = ternarize(g).unwrap();
        let (b, bc) = binarize(&t).unwrap();
        for text in [to_json_string(&t), tc.to_json_string(), to_json_string(&b), bc.to_json_string()] {
            out.extend(text.into_bytes());
        }
        out.extend(to_json_string(&to_unit_weights(&b).unwrap()).into_bytes());
    }
    let opts = BuildOptions { materialize: Materialize::Auto, ..BuildOptions::default() };
    for d in 1..=2 {
        let t = builtin_target("max", d).unwrap();
        let bundle = build_approximator(&t.spec, 0.1, opts).unwrap();
        out.extend(bundle_to_json_string(&bundle).into_bytes());
        out.extend(bundle.certificate().to_json_string().into_bytes());
    }
    let targets = vec![builtin_target("mean", 1).unwrap(), builtin_target("root", 2).unwrap()];
    let rows = build_report(&targets, &[0.2, 0.1], 101, opts).unwrap();
    write_csv(&rows, &mut out).unwrap();
    out
}

fn criterion_8() -> Outcome {
    let first = artifacts();
    let second = artifacts();
    outcome(first == second, format!("{} bytes compared", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 exact lowering equivalence", criterion_1),
        ("2 lowering accounting", criterion_2),
        ("3 prefix gadgets", criterion_3),
        ("4 unit-weight rescaling", criterion_4),
        ("5 certified indicator error", criterion_5),
        ("6 one-hot and partition", criterion_6),
        ("7 bound calculator", criterion_7),
        ("8 determinism", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
