//! One line per acceptance criterion; runs without the test harness so the
//! lines are always printed. Criteria listed in `KNOWN_DEVIATIONS`
//! are reported as FAIL and instead must fail in exactly the recorded way.

use std::time::{Duration, Instant};

use brauer_core::algebra::integers::IntegerRing;
use brauer_core::algebra::ring::Ring;
use brauer_core::brauer::{invariant_vector, SymbolClassSpec};
use brauer_core::certify::goodred::{self, random_smooth_cubic};
use brauer_core::certify::input::{curve_from_rows, GoodredInput, IndecInput, SsVerifyInput, TateInput};
use brauer_core::certify::setup::{
    elimination_resultant, example_forms, separability_scan, stated_product, test_primes, EXTRA_TEST_PRIMES,
    STATED_EXCLUSIONS,
};
use brauer_core::certify::{audit, indec, noncyclic, ssverify, tate, Certificate, RunOptions};
use brauer_core::algebra::ternary::TernaryForm;
use brauer_core::curves::divisor::LineProductFunction;
use brauer_core::curves::elliptic::CubicModel;
use brauer_core::curves::point::ProjPoint;
use brauer_core::error::Error;
use brauer_core::ss_lift::Mutation;
use brauer_core::tate::tate_coefficients;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
    elapsed: Duration,
}

/// Criteria that cannot hold as stated, with the exact way each one fails.
const KNOWN_DEVIATIONS: [u32; 2] = [1, 6];

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let elapsed = t.elapsed();
    // wall-clock limits are stated for optimized builds; debug runs get 10x
    let slack = if cfg!(debug_assertions) { 10 } else { 1 };
    let in_time = elapsed <= limit * slack;
    let detail = if in_time { detail } else { format!("{detail}; took {elapsed:?} > {limit:?}") };
    Outcome { passed: ok && in_time, detail, elapsed }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criterion_1() -> (Outcome, bool) {
    let mut computed = Vec::new();
    let out = timed(secs(1), || {
        let (f1, f2) = example_forms();
        computed = elimination_resultant(&f1, &f2).unwrap();
        let stated = stated_product();
        (computed == stated, format!("computed {:?}", computed.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
    });
    let negated: Vec<BigInt> = stated_product().into_iter().map(|c| -c).collect();
    (out, computed == negated)
}

fn criterion_2() -> Outcome {
    timed(secs(10), || {
        let (f1, f2) = example_forms();
        let res = elimination_resultant(&f1, &f2).unwrap();
        let primes = test_primes(1000, &EXTRA_TEST_PRIMES);
        let scan = separability_scan(&res, &primes).unwrap();
        let stated_also = separability_scan(&stated_product(), &primes).unwrap();
        (
            scan.inseparable == STATED_EXCLUSIONS && stated_also.inseparable == STATED_EXCLUSIONS,
            format!("{} primes tested, inseparable at {:?}", scan.tested, scan.inseparable),
        )
    })
}

fn criterion_3() -> Outcome {
    timed(secs(1), || {
        let (f1, f2) = example_forms();
        let pt = |v: [i64; 3]| v.map(BigInt::from);
        let vals = [
            f1.eval(&IntegerRing, &pt([-1, 3, 1])),
            f2.eval(&IntegerRing, &pt([-1, 3, 1])),
            f1.eval(&IntegerRing, &pt([1, 0, 1])),
            f2.eval(&IntegerRing, &pt([1, 0, 1])),
        ];
        let want = [0, 0, 0, 27].map(BigInt::from);
        (vals == want, format!("F1(P0), F2(P0), F1(P1), F2(P1) = {:?}", vals.map(|v| v.to_string())))
    })
}

const PASS_PRIMES: [u64; 4] = [19, 31, 43, 61];

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for p in PASS_PRIMES {
        let o = timed(secs(30), || {
            let c = noncyclic::certify(&noncyclic::example_input(p), &RunOptions::default());
            let v = c.to_json();
            let good = c.exit_code() == 0
                && v["computed"]["m"] == 3
                && v["computed"]["n"] == 3
                && v["computed"]["index_lower_bound"] == 9
                && c.conclusion.as_deref().is_some_and(|s| s.contains("not Z/3-cyclic"))
                && audit(&v).is_ok();
            (good, format!("p={p}: {}", c.conclusion.clone().unwrap_or_else(|| format!("{:?}", c.failure))))
        });
        ok &= o.passed;
        notes.push(o.detail);
    }
    for p in [7, 13] {
        let c = noncyclic::certify(&noncyclic::example_input(p), &RunOptions::default());
        let f = c.failure.clone().unwrap_or_else(|| panic!("p = {p} must fail"));
        let good = c.exit_code() == 1 && f.code == "SETUP_VIOLATION" && f.check.contains("smooth");
        ok &= good;
        notes.push(format!("p={p}: {} at {}", f.code, f.check));
    }
    Outcome { passed: ok, detail: notes.join("; "), elapsed: t.elapsed() }
}

fn criterion_5() -> Outcome {
    timed(secs(10), || {
        let mut ok = true;
        let mut notes = Vec::new();
        for p in PASS_PRIMES {
            let input = noncyclic::example_input(p);
            let c1 = curve_from_rows(p, &input.f1).unwrap();
            let f = c1.base_field().clone();
            let p1 = ProjPoint::from_ints(p, input.p1).unwrap();
            let h = c1.form_over(&f).hessian(&f);
            let flex = f.is_zero(&h.eval(&f, p1.coords()));
            let e = CubicModel::new(c1, ProjPoint::from_ints(p, [0, 1, 0]).unwrap()).unwrap();
            let order = e.point_order(&p1).unwrap();
            ok &= flex == (order == 3);
            notes.push(format!("p={p}: H(P1)=0 {flex}, ord {order}"));
        }
        (ok, notes.join("; "))
    })
}

fn criterion_6() -> (Outcome, bool) {
    let mut only_stated_sign = true;
    let t = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (p, limit) in [(3u64, 5u64), (5, 120)] {
        let o = timed(secs(limit), || {
            let c = ssverify::certify(&SsVerifyInput { p, deep: false, mutation: None }, &RunOptions::default());
            let failing: Vec<&str> = c.checks.iter().filter(|ch| !ch.passed).map(|ch| ch.name.as_str()).collect();
            only_stated_sign &= failing == ["psi1_special_fiber"] && c.exit_code() == 0;
            (failing.is_empty(), format!("p={p}: failing {failing:?}"))
        });
        ok &= o.passed;
        notes.push(o.detail);
    }
    for m in Mutation::ALL {
        let c = ssverify::certify(&SsVerifyInput { p: 3, deep: false, mutation: Some(m.name().into()) }, &RunOptions::default());
        let caught = c.exit_code() == 1 && c.checks.iter().any(|ch| ch.required && !ch.passed);
        ok &= caught;
        only_stated_sign &= caught;
        notes.push(format!("mutation {} caught {caught}", m.name()));
    }
    (Outcome { passed: ok, detail: notes.join("; "), elapsed: t.elapsed() }, only_stated_sign)
}

fn criterion_7() -> Outcome {
    timed(secs(1), || {
        let (a4, _) = tate_coefficients(30).unwrap();
        let sigma3 = |n: u64| -> i64 { (1..=n).filter(|d| n % d == 0).map(|d| (d * d * d) as i64).sum() };
        let a4_ok = (1..=30).all(|n| *a4.coeff(n as usize) == BigInt::from(-5 * sigma3(n)));
        let a6 = tate_coefficients(50).map(|(_, a6)| a6);
        let a6_ok = a6.as_ref().is_ok_and(|s| s.precision() == 50);
        let lead = a6.as_ref().map(|s| s.coeff(1).to_string()).unwrap_or_default();
        (a4_ok && a6_ok && lead == "-1", format!("a4 matches divisor sums: {a4_ok}; a6 integral to q^50: {a6_ok}; a6[q] = {lead}"))
    })
}

fn criterion_8() -> Outcome {
    timed(secs(1), || {
        let run = |m| tate::certify(&TateInput { p: 5, a: 1, m, precision: 10 }, &RunOptions::default());
        let s = |c: &Certificate| c.computed["structure"].as_str().unwrap_or("").to_string();
        let (c3, c5) = (run(3), run(5));
        let mut ok = s(&c3) == "Z/3" && s(&c5) == "Z/5 x Z/5";
        let mut notes = vec![format!("m=3: {}", s(&c3)), format!("m=5: {}", s(&c5))];
        for m in [5, 25, 125] {
            let c = run(m);
            let all = c.checks.iter().any(|ch| ch.name == "every_element_certified" && ch.passed);
            ok &= all && c.exit_code() == 0;
            notes.push(format!("m={m}: {} all CYCLIC {all}", s(&c)));
        }
        (ok, notes.join("; "))
    })
}

fn criterion_9() -> Outcome {
    timed(secs(60), || {
        let mut ok = true;
        let mut runs = 0;
        for p in [5u64, 7, 11] {
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..5 {
                let (rows, _) = random_smooth_cubic(p, &mut rng).unwrap();
                for n in [2u64, 3, 4].into_iter().filter(|n| n % p != 0) {
                    let input = GoodredInput { p, n, cubic: Some(rows.clone()), origin: Some([0, 1, 0]) };
                    let c = goodred::certify(&input, &RunOptions::default());
                    let agree = c.checks.iter().any(|ch| ch.name == "routes_agree" && ch.passed);
                    ok &= agree && c.exit_code() == 0;
                    runs += 1;
                }
            }
        }
        (ok, format!("{runs} (cubic, n) pairs, formula and count agree"))
    })
}

fn criterion_10() -> Outcome {
    timed(secs(120), || {
        let mut ok = true;
        let mut notes = Vec::new();
        for p in [3u64, 5] {
            // y^2 z + y z^2 = x^3 - x z^2
            let input = IndecInput { p, cubic: vec![[0, 2, 1, 1], [0, 1, 2, 1], [3, 0, 0, -1], [1, 0, 2, 1]], origin: Some([0, 1, 0]), m_max: 6 };
            let c = indec::certify(&input, &RunOptions::default());
            let v = c.to_json();
            let pass = |n: &str| c.checks.iter().any(|ch| ch.name == n && ch.passed);
            let table = ["P1", "P2", "P_inf"].iter().all(|q| pass(&format!("layer1_criterion_{q}")));
            let p3 = (p * p * p).to_string();
            let p2 = (p * p).to_string();
            let good = c.exit_code() == 0
                && v["computed"]["m"].as_u64().is_some_and(|m| m <= 6)
                && table
                && pass("alpha_orders")
                && pass("restricted_orders")
                && v["computed"]["index_lower_bound"] == p3.as_str()
                && v["computed"]["p_beta_index_lower_bound"] == p2.as_str()
                && c.conclusion.as_deref().is_some_and(|s| s.contains("indecomposable"));
            ok &= good;
            notes.push(format!("p={p}: m={} ind>={} ind(p beta)={}", v["computed"]["m"], v["computed"]["index_lower_bound"], v["computed"]["p_beta_index_lower_bound"]));
        }
        (ok, notes.join("; "))
    })
}

fn criterion_11() -> Outcome {
    timed(secs(300), || {
        let p = 19;
        let c1 = curve_from_rows(p, &noncyclic::example_input(p).f1).unwrap();
        let f = c1.base_field().clone();
        let zeta = f.from_u64(7);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let line = |rng: &mut ChaCha8Rng| loop {
            let [a, b, c]: [u64; 3] = std::array::from_fn(|_| rng.gen_range(0..p));
            if (a, b, c) != (0, 0, 0) {
                return TernaryForm::linear(&f, f.from_u64(a), f.from_u64(b), f.from_u64(c));
            }
        };
        let function = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(1..=2);
            let mut factors = Vec::new();
            for _ in 0..k {
                factors.push((line(rng), 1));
                factors.push((line(rng), -1));
            }
            let scalar = f.from_u64(rng.gen_range(1..p));
            LineProductFunction::from_factors(&f, scalar, factors).unwrap()
        };
        let (mut zero_sum, mut nontrivial) = (0, 0);
        let trials = 1000;
        for _ in 0..trials {
            let pairs = (0..rng.gen_range(1..=2)).map(|_| (function(&mut rng), function(&mut rng))).collect();
            let spec = SymbolClassSpec { d: 3, zeta: zeta.clone(), pairs };
            match invariant_vector(&spec, &c1) {
                Ok(v) => {
                    zero_sum += 1;
                    nontrivial += usize::from(!v.is_zero());
                }
                Err(Error::ReciprocityViolation(_)) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        (zero_sum == trials, format!("{zero_sum}/{trials} invariant vectors sum to 0 ({nontrivial} with nonzero entries)"))
    })
}

fn main() {
    let (c1, c1_as_recorded) = criterion_1();
    let (c6, c6_as_recorded) = criterion_6();
    let results = vec![
        (1, c1),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, c6),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, criterion_11()),
    ];
    for (n, o) in &results {
        println!("criterion {n:>2}: {} ({:.2?}) {}", if o.passed { "PASS" } else { "FAIL" }, o.elapsed, o.detail);
    }
    let mut problems = Vec::new();
    for (n, o) in &results {
        if KNOWN_DEVIATIONS.contains(n) && o.passed {
            problems.push(format!("criterion {n} now passes; drop it from KNOWN_DEVIATIONS"));
        } else if !KNOWN_DEVIATIONS.contains(n) && !o.passed {
            problems.push(format!("criterion {n} failed: {}", o.detail));
        }
    }
    if !c1_as_recorded {
        problems.push("criterion 1 must differ from the stated product by exactly the sign".into());
    }
    if !c6_as_recorded {
        problems.push("criterion 6 must fail only at the stated-sign special fiber check".into());
    }
    let passed = results.iter().filter(|(_, o)| o.passed).count();
    println!("{passed}/{} criteria pass; known deviations {KNOWN_DEVIATIONS:?} fail as recorded: {}", results.len(), problems.is_empty());
    if !problems.is_empty() {
        for p in &problems {
            eprintln!("{p}");
        }
        std::process::exit(1);
    }
}
