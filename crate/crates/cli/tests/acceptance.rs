//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ectk::commands;
use ectk::config::{default_workers, RunConfig};
use ectk::output::render;
use ectk::parallel::parallel_census;
use ectk_core::closedform::{
    card_ec, card_lambda, card_ncyclic, card_ncyclic_algebraic, card_ncyclic_geometric, limit_proportional, p_ec,
    p_lambda, p_ncyclic, prob_ec_uniform, prob_ncyclic_uniform, recursion_mn2, to_f64,
};
use ectk_core::domain::{factorial, partitions};
use ectk_core::matrixtree::{forest_weight_closed, laplacian_submatrix, sym_det, DEFAULT_DET_CAP};
use ectk_core::oracle::{
    all_tuples_polynomial, enumerate_cycles, enumerate_forests, verify_decomposition, CycleFilter,
    DEFAULT_ENUMERATION_CAP,
};
use ectk_core::{CycleType, ExactRational, NChoiceSet, Polynomial, Shape};
use num_bigint::{BigInt, BigUint};
use num_traits::Pow;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn shape(sizes: &[usize]) -> Shape {
    Shape::new(sizes.to_vec()).unwrap()
}

/// Every size vector with `k` components, each in `1..=max`.
fn size_vectors(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (1..=max).map(move |n| {
                    let mut q = p.clone();
                    q.push(n);
                    q
                })
            })
            .collect();
    }
    out
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took <= limit, "took {:.1} s, limit {:.0} s", took.as_secs_f64(), limit.as_secs_f64());
    Ok(())
}

const IDENTITY_SHAPES: [&[usize]; 6] = [&[2, 2], &[2, 3], &[3, 2], &[3, 3], &[2, 2, 2], &[2, 2, 3]];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let limit = BigUint::from(1_000_000u32);
    let mut shapes: Vec<Shape> = [(1, 12), (2, 12), (3, 12), (4, 6), (5, 3), (6, 2)]
        .into_iter()
        .flat_map(|(k, max)| size_vectors(k, max))
        .map(Shape::new)
        .map(Result::unwrap)
        .filter(|s| s.total_tuples() <= limit)
        .collect();
    shapes.sort_by_key(|s| s.total_tuples());
    let mut tuples = BigUint::from(0u32);
    for s in &shapes {
        let c = parallel_census(s, DEFAULT_ENUMERATION_CAP, default_workers(), false).map_err(|e| e.to_string())?;
        let formula = card_ec(s);
        ensure!(c.count(&CycleType::single(1)) == formula, "shape {s}: oracle {} vs formula {formula}", c.count(&CycleType::single(1)));
        if let [a, b] = *s.sizes() {
            let pairs = Pow::pow(BigUint::from(a), b - 1) * Pow::pow(BigUint::from(b), a - 1) * BigUint::from(a + b - 1);
            ensure!(pairs == formula, "shape {s}: pairs formula {pairs} vs {formula}");
        }
        tuples += s.total_tuples();
    }
    for (sizes, expected) in [(&[2usize, 2][..], 12u32), (&[2, 2, 2], 56)] {
        ensure!(card_ec(&shape(sizes)) == BigUint::from(expected), "shape {sizes:?} is not {expected}");
    }
    for named in [&[2usize, 3][..], &[3, 2], &[3, 3], &[4, 5]] {
        ensure!(shapes.contains(&shape(named)), "shape {named:?} missing from the family");
    }
    within_time(start, Duration::from_secs(60))?;
    Ok(format!("{} shapes, {tuples} tuples", shapes.len()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut identities = 0;
    for sizes in IDENTITY_SHAPES {
        let s = shape(sizes);
        let c = parallel_census(&s, DEFAULT_ENUMERATION_CAP, default_workers(), true).map_err(|e| e.to_string())?;
        let weight = |l: &CycleType| c.weight_sum(l).unwrap();
        ensure!(p_ec(&s) == weight(&CycleType::single(1)), "P_ec differs on {s}");
        for n in 1..=s.min_size() {
            ensure!(p_ncyclic(&s, n).unwrap() == weight(&CycleType::single(n)), "P_N differs on {s}, N = {n}");
            identities += 1;
            for lambda in partitions(n) {
                ensure!(p_lambda(&s, &lambda).unwrap() == weight(&lambda), "P_lambda differs on {s}, lambda = {lambda}");
                identities += 1;
            }
        }
        identities += 1;
    }
    within_time(start, Duration::from_secs(300))?;
    Ok(format!("{identities} polynomial identities on {} shapes", IDENTITY_SHAPES.len()))
}

fn criterion_3() -> Outcome {
    for sizes in IDENTITY_SHAPES {
        let s = shape(sizes);
        let mut poly = Polynomial::zero();
        let mut count = BigUint::from(0u32);
        for n in 1..=s.min_size() {
            for lambda in partitions(n) {
                poly += &p_lambda(&s, &lambda).unwrap();
                count += card_lambda(&s, &lambda);
            }
        }
        ensure!(poly == all_tuples_polynomial(&s), "sum of P_lambda differs on {s}");
        ensure!(count == s.total_tuples(), "sum of card_lambda {count} on {s}");
    }
    Ok(format!("{} shapes", IDENTITY_SHAPES.len()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let shapes: Vec<Shape> = [(1, 8), (2, 5), (3, 4), (4, 3)]
        .into_iter()
        .flat_map(|(k, max)| size_vectors(k, max))
        .map(|v| Shape::new(v).unwrap())
        .collect();
    let mut sets = 0u64;
    for s in &shapes {
        for n in 1..=s.min_size() {
            for u in NChoiceSet::all(s, n) {
                if u.complement_size(s) > 8 {
                    continue;
                }
                let det = sym_det(&laplacian_submatrix(s, &u), DEFAULT_DET_CAP).map_err(|e| e.to_string())?;
                let closed = forest_weight_closed(s, &u, DEFAULT_DET_CAP).map_err(|e| e.to_string())?;
                let forests = enumerate_forests(s, &u, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
                ensure!(det == closed, "shape {s} U = {u}: det differs from closed form");
                ensure!(det == forests.weight_sum, "shape {s} U = {u}: det differs from forest enumeration");
                sets += 1;
            }
        }
    }
    within_time(start, Duration::from_secs(120))?;
    Ok(format!("{sets} choice sets on {} shapes", shapes.len()))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for k in 1..=3 {
        for n in 1..=3usize {
            let s = Shape::uniform(3, k).unwrap();
            let u = NChoiceSet::all(&s, n).swap_remove(0);
            let all: BigUint = Pow::pow(factorial(n), k);
            let count = |f: &CycleFilter| enumerate_cycles(&s, &u, f, DEFAULT_ENUMERATION_CAP).unwrap();
            ensure!(count(&CycleFilter::Any) == all, "k = {k} N = {n}: all bijections");
            let single = count(&CycleFilter::SingleCycle);
            ensure!(single == &all / BigUint::from(n), "k = {k} N = {n}: {single} single cycles");
            for lambda in partitions(n) {
                let got = count(&CycleFilter::Type(lambda.clone()));
                let expected = &all * lambda.class_size() / factorial(n);
                ensure!(got == expected, "k = {k} lambda = {lambda}: {got} vs {expected}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (k, lambda) pairs"))
}

fn criterion_6() -> Outcome {
    let mut sets = 0;
    for sizes in [&[2usize, 2][..], &[3, 2], &[2, 2, 2]] {
        let s = shape(sizes);
        for n in 1..=2 {
            for u in NChoiceSet::all(&s, n) {
                let r = verify_decomposition(&s, &u, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
                ensure!(r.holds(), "shape {s} U = {u}: {r:?}");
                ensure!(r.class_size == &r.cyclic_subgraphs * &r.forests, "shape {s} U = {u}: class size");
                sets += 1;
            }
        }
    }
    Ok(format!("{sets} choice sets"))
}

fn criterion_7() -> Outcome {
    for (n, k) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let s = Shape::uniform(n, k).unwrap();
        let c = parallel_census(&s, DEFAULT_ENUMERATION_CAP, default_workers(), false).map_err(|e| e.to_string())?;
        let total = ExactRational::from_integer(BigInt::from(s.total_tuples()));
        let fraction = |l: &CycleType| ExactRational::from_integer(BigInt::from(c.count(l))) / &total;
        ensure!(prob_ec_uniform(n, k).unwrap() == fraction(&CycleType::single(1)), "EC at n = {n} k = {k}");
        for cycle in 1..=n {
            ensure!(
                prob_ncyclic_uniform(n, k, cycle).unwrap() == fraction(&CycleType::single(cycle)),
                "N = {cycle} at n = {n} k = {k}"
            );
        }
    }
    Ok("4 (n, k) pairs".into())
}

fn criterion_8() -> Outcome {
    let mut pairs = 0;
    for k in 1..=3 {
        for sizes in size_vectors(k, 8) {
            let s = Shape::new(sizes).unwrap();
            for n in 1..=s.min_size() {
                let g = card_ncyclic_geometric(&s, n);
                let a = card_ncyclic_algebraic(&s, n);
                ensure!(g == a, "shape {s} N = {n}: {g} vs {a}");
                ensure!(card_ncyclic(&s, n).is_ok(), "shape {s} N = {n} is not a count");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (shape, N) pairs"))
}

fn criterion_9() -> Outcome {
    for m in 1..=4 {
        for n in 1..=4 {
            let r = recursion_mn2(m, n).map_err(|e| e.to_string())?;
            let c = card_ec(&shape(&[m, n, 2]));
            ensure!(r == c, "(m, n) = ({m}, {n}): recursion {r} vs {c}");
        }
    }
    Ok("16 (m, n) pairs".into())
}

fn criterion_10() -> Outcome {
    let mut worst_linear = 0.0f64;
    for n in [100usize, 1_000, 10_000] {
        for k in 1..=5usize {
            let p = to_f64(&prob_ec_uniform(n, k).unwrap());
            let gap = (p * n as f64 - k as f64).abs();
            let bound = (k * k) as f64 / n as f64;
            ensure!(gap.le(&bound), "n = {n} k = {k}: |n p - k| = {gap:e} > {bound:e}");
            worst_linear = worst_linear.max(gap / bound);
        }
    }
    let mut worst_limit = 0.0f64;
    let n = 1_000usize;
    for c in 1..=2u64 {
        for cycle in 1..=3usize {
            let p = to_f64(&prob_ncyclic_uniform(n, c as usize * n, cycle).unwrap());
            let l = limit_proportional(c, cycle as u64).unwrap().value;
            ensure!((p - l).abs().le(&1e-2), "c = {c} N = {cycle}: p = {p} limit = {l}");
            worst_limit = worst_limit.max((p - l).abs());
        }
    }
    Ok(format!(
        "worst |n p - k| is {:.3} of k^2/n; worst limit gap {worst_limit:.2e}",
        worst_linear
    ))
}

fn criterion_11() -> Outcome {
    for sizes in [&[3usize, 3, 2][..], &[4, 4], &[2, 2, 2, 2]] {
        let s = shape(sizes);
        let one = parallel_census(&s, DEFAULT_ENUMERATION_CAP, 1, true).unwrap();
        for workers in [2, 8] {
            ensure!(parallel_census(&s, DEFAULT_ENUMERATION_CAP, workers, true).unwrap() == one, "shape {s}, {workers} workers");
        }
    }
    let cfg = RunConfig { seed: 7, ..RunConfig::default() };
    let s = shape(&[10, 10]);
    let a = render(&commands::sample(&cfg, &s, 20_000).unwrap(), cfg.format);
    let b = render(&commands::sample(&cfg, &s, 20_000).unwrap(), cfg.format);
    ensure!(a == b, "in-process sample output differs");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ectk"))
            .args(["sample", "--shape", "10,10", "--trials", "20000", "--seed", "7"])
            .output()
            .expect("binary runs")
            .stdout
    };
    let first = run();
    ensure!(!first.is_empty() && first == run(), "sample output differs between runs");
    Ok("census with 1/2/8 workers identical; sample byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("eventually-constant cardinalities", criterion_1),
        ("generating-polynomial identities", criterion_2),
        ("completeness", criterion_3),
        ("matrix-tree three-way identity", criterion_4),
        ("cycle-count lemma", criterion_5),
        ("decomposition bijection", criterion_6),
        ("probability formulas", criterion_7),
        ("printed #EC(N) forms agree", criterion_8),
        ("(m,n,2) recursion", criterion_9),
        ("asymptotics", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
