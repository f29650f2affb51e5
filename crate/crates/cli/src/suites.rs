use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yh_core::coeff_ring::close;
use yh_core::e_system::{delta_solution, lift_solution, solve_all};
use yh_core::framed_braids::random_word;
use yh_core::invariants::{closed_form, gamma, markov_check, skein_residual, InvariantParams, KnownLink};
use yh_core::markov_trace::trace_properties_suite;
use yh_core::padic::{commute_check, e_padic, phi, DEFAULT_DEPTH};
use yh_core::report::Report;
use yh_core::yokonuma::{relation_suite, RELATION_SUITE_BOUND};
use yh_core::Result;

use crate::{CliResult, Config, Suite};

pub(crate) fn run_suite(suite: Suite, cfg: &Config) -> CliResult<Report> {
    Ok(match suite {
        Suite::Relations => relation_suite(cfg.d()?, cfg.strands.unwrap_or(3), RELATION_SUITE_BOUND)?,
        Suite::Trace => trace_properties_suite(cfg.d()?, cfg.strands.unwrap_or(3), cfg.sample, cfg.seed)?,
        Suite::Esystem => esystem(cfg.d()? as usize, cfg.tol)?,
        Suite::Invariant => {
            let d = cfg.d()? as usize;
            invariant(d, cfg.params(d)?, cfg, cfg.strands.unwrap_or(3))?
        }
        Suite::Skein => {
            let d = cfg.d()? as usize;
            skein(cfg.params(d)?, cfg.strands.unwrap_or(3), cfg.sample, cfg.seed, cfg.tol)?
        }
        Suite::Padic => {
            let (p, depth) = cfg.p_depth()?;
            padic(p, depth, cfg.sample, cfg.seed, cfg.tol)?
        }
    })
}

fn esystem(d: usize, tol: f64) -> Result<Report> {
    let mut r = Report::new(format!("E-system, d = {d}"));
    let sols = solve_all(d)?;
    let want = (1usize << d) - 1;
    r.push("solution count", sols.len() == want, format!("{} != {want}", sols.len()));
    for s in &sols {
        r.push(format!("S = {:?} residual", s.support()), s.residual() < tol, format!("{:.3e}", s.residual()));
    }
    if d >= 2 {
        let delta = delta_solution(d)?;
        let ok = (1..d as i64).all(|i| {
            let formula = -(-1f64).powi((i * (d as i64 - 1)) as i32) / (d as f64 - 1.0);
            (delta.values().at(i) - formula).norm() < tol
        });
        r.push("delta values match the closed formula", ok, "");
        let e = delta.e_d();
        r.push("delta has E = 1/(d-1)", (e - 1.0 / (d as f64 - 1.0)).norm() < tol, format!("{e}"));
    }
    Ok(r)
}

fn invariant(d: usize, base: InvariantParams, cfg: &Config, n: usize) -> Result<Report> {
    let mut r = Report::new(format!("invariant, d = {d}"));
    let (u, z, branch) = (base.u(), base.z(), base.branch());
    for sol in solve_all(d)? {
        let params = InvariantParams::new(sol, u, z, branch)?;
        for k in 0..d as i64 {
            for link in [KnownLink::Unknot(k), KnownLink::Hopf(k, 0), KnownLink::TrefoilR(k), KnownLink::TrefoilL(k)] {
                let got = gamma(&link.braid(), &params)?;
                let want = closed_form(link, &params);
                r.push(
                    format!("S = {:?} {link:?}", params.solution().support()),
                    close(got, want, cfg.tol),
                    format!("{got} vs {want}"),
                );
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.sample.min(10) {
        let w = random_word(n, 6, 2, &mut rng);
        let rep = markov_check(&w, &base, 2, cfg.tol, &mut rng)?;
        r.push(
            rep.title.clone(),
            rep.all_passed(),
            rep.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join("; "),
        );
    }
    Ok(r)
}

fn skein(params: InvariantParams, n: usize, sample: usize, seed: u64, tol: f64) -> Result<Report> {
    use rand::Rng;
    let n = n.max(2);
    let mut r = Report::new(format!("skein relation, d = {}", params.d()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample {
        let len = rng.random_range(0..=5);
        let beta = random_word(n, len, 2, &mut rng);
        let i = rng.random_range(1..n);
        let res = skein_residual(&beta, i, &params)?;
        r.push(format!("[{beta}] at s{i}"), res < tol, format!("residual {res:.3e}"));
    }
    Ok(r)
}

fn padic(p: u64, depth: usize, sample: usize, seed: u64, tol: f64) -> Result<Report> {
    let depth = if depth == 0 { DEFAULT_DEPTH } else { depth };
    let mut r = Report::new(format!("p-adic towers, p = {p}, depth = {depth}"));
    let e = e_padic(p, depth, 2, 1)?;
    for rr in 1..=depth {
        for s in 1..=rr {
            let ok = phi(p, rr, s, e.entry(rr)?)? == *e.entry(s)?;
            r.push(format!("phi_{s}^{rr}(e) = e"), ok, "");
        }
    }
    r.absorb(commute_check(p, depth, 2, sample, seed)?);
    for sol in solve_all(p as usize)? {
        for k in 2..=depth {
            let lifted = lift_solution(&sol, p.pow(k as u32) as usize)?;
            r.push(
                format!("lift S = {:?} to p^{k}", sol.support()),
                lifted.residual() < tol,
                format!("residual {:.3e}", lifted.residual()),
            );
        }
    }
    Ok(r)
}
