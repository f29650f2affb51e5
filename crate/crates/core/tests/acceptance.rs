//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the summary lines stay readable; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yh_core::coeff_ring::{close, rat, ComplexVal, Poly};
use yh_core::e_system::{delta_solution, e_residual, lift_solution, solve_all, CyclicFn, ESolution};
use yh_core::framed_braids::{parse_braid, random_word, FramedBraidWord};
use yh_core::invariants::{
    closed_form, gamma_with, homflypt_crosscheck, markov_check, skein_residual, InvariantParams, KnownLink, SqrtBranch,
};
use yh_core::markov_trace::{e_poly, trace_properties_suite, x_poly, Tracer};
use yh_core::padic::{commute_check, e_padic, gamma_stabilization, phi};
use yh_core::yokonuma::{
    basis_size, e_idempotent, embed_word, enumerate_basis, random_element, relation_suite, AlgebraElement,
    RELATION_SUITE_BOUND,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c(re: f64, im: f64) -> ComplexVal {
    ComplexVal::new(re, im)
}

fn u() -> Poly {
    Poly::u()
}

fn z() -> Poly {
    Poly::z()
}

fn k(n: i64) -> Poly {
    Poly::int(n)
}

fn word(text: &str, n: usize) -> FramedBraidWord {
    parse_braid(text, n).expect("fixed word parses")
}

/// Trace of `alpha` and of `alpha e_{d,n}` in `Y_{d,n+1}`.
fn trace_pair(tracer: &mut Tracer, alpha: &AlgebraElement) -> Result<(Poly, Poly), String> {
    let n = alpha.n();
    let wide = alpha.widen(n + 1).map_err(err)?;
    let with_e = wide.mul(&e_idempotent(alpha.d(), n + 1, n).map_err(err)?).map_err(err)?;
    Ok((tracer.trace(alpha).map_err(err)?, tracer.trace(&with_e).map_err(err)?))
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    let mut check = |name: String, got: Poly, want: Poly| -> Result<(), String> {
        count += 1;
        ensure(got == want, || format!("{name}: got {got}, want {want}"))
    };
    for d in 1..=3u32 {
        let mut tr = Tracer::with_memo(d);
        let x = |m: i64| x_poly(d, m);
        let e = |m: i64| e_poly(d, m);
        let um1 = &u() - &k(1);
        for kk in 0..d as i64 {
            let a = embed_word(&word(&format!("t1^{kk}"), 1), d).map_err(err)?;
            let (t, te) = trace_pair(&mut tr, &a)?;
            check(format!("d={d} tr(t1^{kk})"), t, x(kk))?;
            check(format!("d={d} tr(t1^{kk} e)"), te, e(kk))?;
            for k1 in 0..d as i64 {
                let a = embed_word(&word(&format!("t1^{k1} s1 t1^{kk}"), 2), d).map_err(err)?;
                let (t, te) = trace_pair(&mut tr, &a)?;
                check(format!("d={d} tr(t1^{k1} g1 t1^{kk})"), t.clone(), &z() * &x(k1 + kk))?;
                check(format!("d={d} n=2 factor"), &x(k1 + kk) * &te, &e(k1 + kk) * &t)?;
                for k2 in 0..d as i64 {
                    // three-strand cases that factor through tr(alpha)
                    let cases = [
                        (format!("t1^{k1} t2^{k2} s2 t2^{kk}"), k2 + kk),
                        (format!("t1^{k1} t2^{k2} s2 s1 t1^{kk}"), k1 + k2 + kk),
                        (format!("s1 t1^{k1} s2 t2^{kk}"), k1 + kk),
                    ];
                    for (text, m) in cases {
                        let a = embed_word(&word(&text, 3), d).map_err(err)?;
                        let (t, te) = trace_pair(&mut tr, &a)?;
                        check(format!("d={d} [{text}] factor"), &x(m) * &te, &e(m) * &t)?;
                    }
                }
                // the case that needs the E-condition
                let a = embed_word(&word(&format!("s1 t1^{k1} s2 s1 t1^{kk}"), 3), d).map_err(err)?;
                let (t, te) = trace_pair(&mut tr, &a)?;
                let want = &(&(&z() * &(&x(k1) * &x(kk))) + &(&(&z() * &um1) * &e(k1 + kk)))
                    - &(&(&z() * &z()) * &(&um1 * &x(k1 + kk)));
                check(format!("d={d} tr(g1 t1^{k1} g2 g1 t1^{kk})"), t, want)?;
                let mut sum = Poly::zero();
                for s in 0..d as i64 {
                    sum += &(&x(-s) * &e(kk + k1 + s));
                }
                let want_e = &(&(&z() * &(&x(k1) * &e(kk))) + &(&(&z() * &um1) * &sum.scale(&rat(1, d as i64))))
                    - &(&(&z() * &z()) * &(&um1 * &e(k1 + kk)));
                check(format!("d={d} tr(g1 t1^{k1} g2 g1 t1^{kk} e)"), te, want_e)?;
            }
        }
        let ed = e(0);
        let g = |m: i64| {
            embed_word(&FramedBraidWord::new(2, vec![sigma(m.signum() as i8); m.unsigned_abs() as usize]).unwrap(), d)
        };
        let t2 = tr.trace(&g(2).map_err(err)?).map_err(err)?;
        check(format!("d={d} tr(g^2)"), t2, &(&k(1) - &(&um1 * &z())) + &(&um1 * &ed))?;
        // g^3 = g - u(u-1) e + u(u-1) e g, so E enters with a minus sign
        let t3 = tr.trace(&g(3).map_err(err)?).map_err(err)?;
        let uu = &(&u() * &u()) - &u();
        check(format!("d={d} tr(g^3)"), t3, &(&(&uu + &k(1)) * &z()) - &(&uu * &ed))?;
        let tm3 = tr.trace(&g(-3).map_err(err)?).map_err(err)?;
        let cinv = &(&Poly::u_pow(-3) - &Poly::u_pow(-2)) + &Poly::u_pow(-1);
        check(format!("d={d} tr(g^-3)"), tm3, &(&cinv * &z()) - &(&(&cinv - &k(1)) * &ed))?;
    }
    Ok(format!("{count} exact identities for d = 1, 2, 3"))
}

fn sigma(sign: i8) -> yh_core::framed_braids::BraidLetter {
    yh_core::framed_braids::BraidLetter::Sigma { i: 1, sign }
}

fn criterion_2() -> Outcome {
    for d in 2..=6usize {
        let sols = solve_all(d).map_err(err)?;
        ensure(sols.len() == (1 << d) - 1, || format!("d={d}: {} solutions", sols.len()))?;
        for s in &sols {
            ensure(s.residual() < 1e-10, || format!("d={d} S={:?}: residual {}", s.support(), s.residual()))?;
        }
        let delta = delta_solution(d).map_err(err)?;
        for i in 1..d as i64 {
            let want = -(-1f64).powi((i * (d as i64 - 1)) as i32) / (d as f64 - 1.0);
            ensure((delta.values().at(i) - want).norm() < 1e-10, || format!("d={d}: delta_{i}"))?;
        }
        let missing = if d.is_multiple_of(2) { d / 2 } else { 0 };
        let want_support: Vec<usize> = (0..d).filter(|&k| k != missing).collect();
        ensure(delta.support() == want_support, || format!("d={d}: delta support {:?}", delta.support()))?;
        ensure((delta.e_d() - 1.0 / (d as f64 - 1.0)).norm() < 1e-10, || format!("d={d}: E = {}", delta.e_d()))?;
    }
    let target = CyclicFn::from_real(&[1.0, -0.5, -0.5]).map_err(err)?;
    let found = solve_all(3).map_err(err)?.iter().any(|s| s.values().max_abs_diff(&target).unwrap() < 1e-12);
    ensure(found, || "(1, -1/2, -1/2) missing for d = 3".into())?;
    Ok("2^d - 1 solutions for d = 2..6, delta formula and E = 1/(d-1)".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (uv, zv) = (c(1.3, 0.4), c(-0.7, 0.2));
    let pairs: Vec<(u32, usize)> = (1..=4u32).flat_map(|d| (1..=4usize).map(move |n| (d, n))).collect();
    let solutions: Vec<Vec<ESolution>> = (1..=4).map(|d| solve_all(d).unwrap()).collect();
    let mut tracers: Vec<Tracer> = (1..=4).map(Tracer::with_memo).collect();
    let (mut evaluations, mut worst) = (0usize, 0f64);
    let mut kept: Vec<(Poly, Poly)> = Vec::new();
    for idx in 0..500 {
        let (d, n) = pairs[idx % pairs.len()];
        let alpha = random_element(d, n, 3, &mut rng).map_err(err)?;
        let (t, te) = trace_pair(&mut tracers[d as usize - 1], &alpha)?;
        let e_trace = tracers[d as usize - 1].trace(&e_idempotent(d, n + 1, n).map_err(err)?).map_err(err)?;
        for sol in &solutions[d as usize - 1] {
            let ev = |p: &Poly| p.eval(uv, zv, sol.x_values()).unwrap();
            let (lhs, rhs) = (ev(&te), ev(&t) * ev(&e_trace));
            let scale = 1f64.max(lhs.norm()).max(rhs.norm());
            worst = worst.max((lhs - rhs).norm() / scale);
            evaluations += 1;
            ensure(close(lhs, rhs, 1e-8), || format!("d={d} n={n} S={:?}: {lhs} vs {rhs} for {alpha}", sol.support()))?;
        }
        if d == 3 {
            kept.push((t, te));
        }
    }
    // x_k = c^k with c = 0.7 is not a solution, and multiplicativity must break
    let cv = 0.7f64;
    let x = [c(cv, 0.0), c(cv * cv, 0.0)];
    let not_solution = e_residual(&CyclicFn::from_real(&[1.0, cv, cv * cv]).unwrap());
    ensure(not_solution > 0.1, || format!("c-powers residual only {not_solution}"))?;
    let e3 = tracers[2].trace(&e_idempotent(3, 4, 3).map_err(err)?).map_err(err)?;
    let broken = kept.iter().any(|(t, te)| {
        let (lhs, rhs) = (te.eval(uv, zv, &x).unwrap(), t.eval(uv, zv, &x).unwrap() * e3.eval(uv, zv, &x).unwrap());
        !close(lhs, rhs, 1e-6)
    });
    ensure(broken, || "negative control: identity held for x_k = 0.7^k".into())?;
    Ok(format!("{evaluations} evaluations, worst relative error {worst:.1e}; negative control fails as expected"))
}

fn random_point(rng: &mut ChaCha8Rng) -> (ComplexVal, ComplexVal) {
    let mut draw = |lo: f64, hi: f64| {
        ComplexVal::from_polar(rng.random_range(lo..hi), rng.random_range(0.0..std::f64::consts::TAU))
    };
    (draw(0.5, 2.5), draw(0.3, 2.0))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for d in 2..=3usize {
        let mut tracer = Tracer::with_memo(d as u32);
        let points: Vec<_> = (0..5).map(|_| random_point(&mut rng)).collect();
        for sol in solve_all(d).map_err(err)? {
            for &(uv, zv) in &points {
                for branch in [SqrtBranch::Principal, SqrtBranch::Negated] {
                    let params = InvariantParams::new(sol.clone(), uv, zv, branch).map_err(err)?;
                    for a in 0..d as i64 {
                        let mut links = vec![KnownLink::Unknot(a), KnownLink::TrefoilR(a), KnownLink::TrefoilL(a)];
                        links.extend((0..d as i64).map(|b| KnownLink::Hopf(a, b)));
                        for link in links {
                            let got = gamma_with(&link.braid(), &params, &mut tracer).map_err(err)?;
                            let want = closed_form(link, &params);
                            count += 1;
                            ensure(close(got, want, 1e-8), || {
                                format!("d={d} S={:?} {link:?} {branch}: {got} vs {want}", sol.support())
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{count} values match their closed forms"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let params: Vec<InvariantParams> = (1..=3usize)
        .map(|d| {
            let sol = if d == 1 { ESolution::from_mask(1, 1).unwrap() } else { delta_solution(d).unwrap() };
            InvariantParams::new(sol, c(2.0, 0.0), c(0.5, 0.0), SqrtBranch::Principal).unwrap()
        })
        .collect();
    let mut moves = 0;
    for b in 0..100 {
        let n = rng.random_range(1..=4usize);
        let len = rng.random_range(0..=10usize);
        let w = random_word(n, len, 3, &mut rng);
        let p = &params[b % 3];
        let rep = markov_check(&w, p, 2, 1e-8, &mut rng).map_err(err)?;
        moves += rep.checks.len();
        ensure(rep.all_passed(), || format!("d={}: {}", p.d(), rep.failures().next().unwrap().name))?;
    }
    let mut worst = 0f64;
    for b in 0..50 {
        let d = 1 + b % 3;
        let sols = solve_all(d).map_err(err)?;
        let sol = sols[rng.random_range(0..sols.len())].clone();
        let (uv, zv) = random_point(&mut rng);
        let p = InvariantParams::new(sol, uv, zv, SqrtBranch::Principal).map_err(err)?;
        let n = rng.random_range(2..=3usize);
        let beta = random_word(n, rng.random_range(0..=5usize), 3, &mut rng);
        let i = rng.random_range(1..n);
        let res = skein_residual(&beta, i, &p).map_err(err)?;
        worst = worst.max(res);
        ensure(res < 1e-8, || format!("skein residual {res:.2e} on [{beta}] at s{i}, d={d}"))?;
    }
    Ok(format!("{moves} Markov moves on 100 braids; 50 skein instances, worst residual {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let params = InvariantParams::new(delta_solution(3).map_err(err)?, c(2.0, 0.0), c(0.5, 0.0), SqrtBranch::Principal)
        .map_err(err)?;
    let mut tracer = Tracer::with_memo(3);
    let a = gamma_with(&word("t1 t2", 2), &params, &mut tracer).map_err(err)?;
    let b = gamma_with(&word("t1^2", 2), &params, &mut tracer).map_err(err)?;
    let gap = (a - b).norm();
    ensure(gap > 1e-3, || format!("framings (1,1) and (2,0) agree: {a} vs {b}"))?;
    Ok(format!("|Gamma(1,1) - Gamma(2,0)| = {gap:.4}"))
}

/// Random word whose split framings stay within `bound`.
fn bounded_word(rng: &mut ChaCha8Rng, n: usize, len: usize, bound: i64) -> FramedBraidWord {
    loop {
        let w = random_word(n, len, bound, rng);
        if w.split_form().framings.iter().all(|f| f.abs() <= bound) {
            return w;
        }
    }
}

fn criterion_7() -> Outcome {
    for p in [2u64, 3] {
        let e = e_padic(p, 3, 2, 1).map_err(err)?;
        for r in 1..=3 {
            for s in 1..=r {
                let down = phi(p, r, s, e.entry(r).map_err(err)?).map_err(err)?;
                ensure(&down == e.entry(s).map_err(err)?, || format!("p={p}: phi_{s}^{r}(e) != e"))?;
            }
        }
        let rep = commute_check(p, 3, 2, 200, 7).map_err(err)?;
        ensure(rep.all_passed(), || format!("{rep}"))?;
        for sol in solve_all(p as usize).map_err(err)? {
            for level in [2u32, 3] {
                let lifted = lift_solution(&sol, p.pow(level) as usize).map_err(err)?;
                ensure(lifted.residual() < 1e-10, || format!("lift of {:?} to {p}^{level}", sol.support()))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut highest = 0;
    for (p, depth, base) in [(2u64, 5usize, 0b10u64), (3, 3, 0b110)] {
        let sol = ESolution::from_mask(p as usize, base).map_err(err)?;
        for _ in 0..20 {
            let n = rng.random_range(1..=3usize);
            let len = rng.random_range(1..=5usize);
            let w = bounded_word(&mut rng, n, len, 8);
            let rep = gamma_stabilization(&w, p, depth, &sol, c(2.0, 0.0), c(0.5, 0.0), SqrtBranch::Principal, 1e-8)
                .map_err(err)?;
            highest = highest.max(rep.r0);
            ensure(rep.verified && rep.stable, || format!("p={p} [{w}]: {rep:?}"))?;
        }
    }
    Ok(format!("phi, commutation, lifts; 40 braids constant from r0 (largest r0 = {highest})"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let braids =
        [("", 1), ("s1", 2), ("s1^-1", 2), ("s1 s1", 2), ("s1^-1 s1^-1", 2), ("s1 s1 s1", 2), ("s1^-1 s1^-1 s1^-1", 2)];
    let mut count = 0;
    for _ in 0..5 {
        let (uv, zv) = random_point(&mut rng);
        for branch in [SqrtBranch::Principal, SqrtBranch::Negated] {
            let p = InvariantParams::new(ESolution::from_mask(1, 1).map_err(err)?, uv, zv, branch).map_err(err)?;
            for (text, n) in braids {
                let cc = homflypt_crosscheck(&word(text, n), &p, 1e-8).map_err(err)?;
                count += 1;
                ensure(cc.agree, || format!("[{text}]: {:?} vs {:?}", cc.gamma, cc.oracle))?;
            }
        }
    }
    Ok(format!("{count} comparisons with the skein oracle"))
}

fn criterion_9() -> Outcome {
    let mut checks = 0;
    for (d, n) in [(1u32, 3usize), (2, 3), (3, 2), (2, 4)] {
        let rel = relation_suite(d, n, RELATION_SUITE_BOUND).map_err(err)?;
        ensure(rel.all_passed(), || format!("{rel}"))?;
        let tr = trace_properties_suite(d, n, 20, 9).map_err(err)?;
        ensure(tr.all_passed(), || format!("{tr}"))?;
        let want = (d as u128).pow(n as u32) * (1..=n as u128).product::<u128>();
        let got = enumerate_basis(d, n).map_err(err)?.len() as u128;
        ensure(got == want && basis_size(d, n) == want, || format!("Y_{{{d},{n}}} basis has {got} words"))?;
        checks += rel.checks.len() + tr.checks.len() + 1;
    }
    Ok(format!("{checks} structural checks"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 symbolic traces", criterion_1, Some(Duration::from_secs(10))),
        ("2 E-system completeness", criterion_2, Some(Duration::from_secs(5))),
        ("3 multiplicativity on solutions", criterion_3, None),
        ("4 invariant closed forms", criterion_4, None),
        ("5 Markov moves and skein", criterion_5, None),
        ("6 framing sensitivity", criterion_6, None),
        ("7 p-adic coherency", criterion_7, None),
        ("8 HOMFLYPT cross-check", criterion_8, None),
        ("9 structural suites", criterion_9, Some(Duration::from_secs(120))),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(msg), Some(limit)) = (&outcome, budget) {
            if took > limit {
                outcome = Err(format!("{msg}, but took {took:.1?} (budget {limit:?})"));
            }
        }
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{took:.2?}]");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
