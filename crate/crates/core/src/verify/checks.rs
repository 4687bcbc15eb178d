use rand::Rng;
use rayon::prelude::*;

use super::report::{CheckReport, Tally};
use super::sample::{NamedSpace, SampleConfig};
use crate::certified::CertifiedValue;
use crate::error::NormError;
use crate::modular::{cesaro_direct, modular_rho, paranorm_h};
use crate::norms::{amemiya_norm, luxemburg_norm};
use crate::sequence::FiniteSequence;

/// Relative slack for comparisons whose error bounds may be exactly zero
/// (terminating tails) but whose sums were still rounded.
const SUM_ROUNDING: f64 = 64.0 * f64::EPSILON;

fn run(name: String, body: impl FnOnce(&mut Tally) -> Result<(), NormError>) -> CheckReport {
    let mut tally = Tally::new(name);
    if let Err(e) = body(&mut tally) {
        tally.fail(e.to_string());
    }
    tally.finish()
}

fn rho(x: &FiniteSequence, s: &NamedSpace, tol: f64) -> Result<CertifiedValue, NormError> {
    Ok(modular_rho(x, &s.weights, &s.exponents, tol)?)
}

fn lux(x: &FiniteSequence, s: &NamedSpace, cfg: &SampleConfig) -> Result<f64, NormError> {
    Ok(luxemburg_norm(x, &s.weights, &s.exponents, cfg.tol_root)?.value)
}

/// `x / ‖x‖_L`, which has `ρ ≈ 1`.
fn unit_sample(
    rng: &mut rand_chacha::ChaCha8Rng,
    s: &NamedSpace,
    cfg: &SampleConfig,
) -> Result<FiniteSequence, NormError> {
    let x = cfg.sample_sequence(rng);
    let l = lux(&x, s, cfg)?;
    Ok(x.scaled(1.0 / l))
}

/// `ρ(x) > 0` for `x ≠ 0`, `ρ(0) = 0`, `ρ(−x) = ρ(x)`, convexity and the
/// convex-combination bound `ρ(αx + βy) ≤ ρ(x) + ρ(y)`; `20·count` triples.
pub fn modular_axioms(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("modular_axioms/{}", space.name);
    let mut rng = cfg.rng(&name);
    run(name, |t| {
        let zero = rho(&FiniteSequence::zero(4), space, cfg.tol)?;
        t.assert_margin(-zero.estimate.abs() - zero.error_bound, 0.0);
        for _ in 0..20 * cfg.count {
            t.sample();
            let x = cfg.sample_sequence(&mut rng);
            let y = cfg.sample_sequence(&mut rng);
            let alpha: f64 = rng.gen();
            let beta = 1.0 - alpha;
            let rx = rho(&x, space, cfg.tol)?;
            let ry = rho(&y, space, cfg.tol)?;
            let rz = rho(&x.combine(alpha, &y, beta), space, cfg.tol)?;
            t.assert_positive(rx.estimate);
            let rneg = rho(&x.neg(), space, cfg.tol)?;
            t.assert_margin(-(rneg.estimate - rx.estimate).abs(), 0.0);

            let tol = 4.0 * (rx.error_bound + ry.error_bound + rz.error_bound)
                + SUM_ROUNDING * (rx.estimate + ry.estimate);
            t.assert_margin(alpha * rx.estimate + beta * ry.estimate - rz.estimate, tol);
            t.assert_margin(rx.estimate + ry.estimate - rz.estimate, tol);
        }
        Ok(())
    })
}

/// `|ρ(x/‖x‖_L) − 1| ≤ tol_root`.
pub fn luxemburg_root(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("luxemburg_root/{}", space.name);
    let mut rng = cfg.rng(&name);
    run(name, |t| {
        for _ in 0..cfg.count {
            t.sample();
            let xhat = unit_sample(&mut rng, space, cfg)?;
            let r = rho(&xhat, space, cfg.tol)?;
            t.assert_margin(-((r.estimate - 1.0).abs() + r.error_bound), cfg.tol_root);
        }
        Ok(())
    })
}

/// Modular versus Luxemburg norm in four regimes: `‖x‖ = 1`, `‖x‖ ≤ 1`,
/// `‖x‖ ≥ 1`, and the `a^H` bounds on either side of a threshold `a`.
pub fn modular_norm_regimes(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("modular_norm_regimes/{}", space.name);
    let mut rng = cfg.rng(&name);
    let h = space.exponents.sup();
    run(name, |t| {
        for _ in 0..cfg.count {
            t.sample();
            let xhat = unit_sample(&mut rng, space, cfg)?;
            let r = rho(&xhat, space, cfg.tol)?;
            t.assert_margin(-(r.estimate - 1.0).abs(), 1e-6);

            // ρ(x) ≤ ‖x‖ inside the unit ball
            let u = rng.gen_range(0.05..1.0);
            let r = rho(&xhat.scaled(u), space, cfg.tol)?;
            t.assert_margin(u - r.estimate, r.error_bound + 2.0 * cfg.tol_root * u);

            // ρ(x) ≥ ‖x‖ outside it
            let v = rng.gen_range(1.0..4.0);
            let r = rho(&xhat.scaled(v), space, cfg.tol)?;
            t.assert_margin(r.estimate - v, r.error_bound + 2.0 * cfg.tol_root * v * h);

            // ‖x‖ > a, a < 1  ⇒  ρ(x) > a^H
            let a: f64 = rng.gen_range(0.05..0.95);
            let v = rng.gen_range(a * (1.0 + 1e-3)..1.5);
            let r = rho(&xhat.scaled(v), space, cfg.tol)?;
            t.assert_margin(r.estimate - a.powf(h), 1e-9 + r.error_bound);

            // ‖x‖ < a, a ≥ 1  ⇒  ρ(x) < a^H
            let a: f64 = rng.gen_range(1.0..4.0);
            let v = rng.gen_range(0.05..a * (1.0 - 1e-3));
            let r = rho(&xhat.scaled(v), space, cfg.tol)?;
            t.assert_margin(a.powf(h) - r.estimate, 1e-9 + r.error_bound);
        }
        Ok(())
    })
}

/// Sequence behaviour of `ρ` and `‖·‖_L` along concrete null and
/// convergent sequences built from a unit-norm sample `x̂`:
/// `x̂/n → 0`, `(1 + (−1)^n/n) x̂ → x̂` and `x̂ + e_{q+n}/n → x̂`.
pub fn null_and_convergent_sequences(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("null_and_convergent_sequences/{}", space.name);
    let mut rng = cfg.rng(&name);
    let h = space.exponents.sup();
    let p_min = space.exponents.inf();
    run(name, |t| {
        for _ in 0..cfg.count {
            t.sample();
            let xhat = unit_sample(&mut rng, space, cfg)?;

            // x̂/n → 0 in both ρ and ‖·‖_L, monotonically
            let mut prev: Option<(f64, CertifiedValue)> = None;
            let mut last_norm = f64::INFINITY;
            for n in [1.0, 10.0, 100.0, 1e3, 1e4] {
                let y = xhat.scaled(1.0 / n);
                let l = lux(&y, space, cfg)?;
                let r = rho(&y, space, cfg.tol)?;
                t.assert_margin(-(l * n - 1.0).abs(), 4.0 * cfg.tol_root);
                if let Some((pl, pr)) = prev {
                    t.assert_positive(pl - l);
                    t.assert_positive(pr.lower() - r.upper());
                }
                prev = Some((l, r));
                last_norm = l;
            }
            t.assert_margin(1e-3 - last_norm, 0.0);

            // ρ(c_n x̂) lies between c_n^{p_min} and c_n^H and tends to 1
            for n in [2u32, 3, 10, 11, 100, 101, 1000, 1001] {
                let c = 1.0 + if n % 2 == 0 { 1.0 } else { -1.0 } / n as f64;
                let r = rho(&xhat.scaled(c), space, cfg.tol)?;
                let (lo, hi) = if c > 1.0 {
                    (c.powf(p_min), c.powf(h))
                } else {
                    (c.powf(h), c.powf(p_min))
                };
                let tol = r.error_bound + 2.0 * cfg.tol_root * hi;
                t.assert_margin(r.estimate - lo, tol);
                t.assert_margin(hi - r.estimate, tol);
                if n >= 1000 {
                    t.assert_margin(1e-2 - (r.estimate - 1.0).abs(), 0.0);
                }
            }

            // x̂ + e_{q+n}/n → x̂
            let q = xhat.effective_support();
            let base = rho(&xhat, space, cfg.tol)?;
            let mut prev: Option<(f64, f64)> = None;
            let mut last = (f64::INFINITY, f64::INFINITY);
            for n in [1usize, 10, 100, 1000] {
                let bump = FiniteSequence::unit(q + n).scaled(1.0 / n as f64);
                let xn = xhat.add(&bump);
                let d = lux(&xn.sub(&xhat), space, cfg)?;
                let r = rho(&xn, space, cfg.tol)?;
                let gap = r.estimate - base.estimate;
                let tol = r.error_bound + base.error_bound + SUM_ROUNDING * r.estimate;
                t.assert_margin(gap, tol);
                if let Some((pd, pg)) = prev {
                    t.assert_positive(pd - d);
                    t.assert_margin(pg - gap, tol);
                }
                prev = Some((d, gap));
                last = (d, gap);
            }
            t.assert_margin(1e-3 - last.0, 0.0);
            t.assert_margin(1e-3 - last.1, 0.0);
        }
        Ok(())
    })
}

/// `|a+b|^p ≤ K(|a|^p + |b|^p)` with `K = max(1, 2^{H−1})`,
/// `|a+b|^{p/M} ≤ |a|^{p/M} + |b|^{p/M}` and `|α|^p ≤ max(1, |α|^M)`, for
/// random `1 < p ≤ H`; `20·count` tuples plus boundary cases.
pub fn scalar_inequalities(cfg: &SampleConfig) -> CheckReport {
    let name = "scalar_inequalities".to_string();
    let mut rng = cfg.rng(&name);
    let (lo, hi) = cfg.value_range;
    run(name, |t| {
        let check = |t: &mut Tally, a: f64, b: f64, alpha: f64, p: f64, big_h: f64| {
            t.sample();
            let m = big_h.max(1.0);
            let k = 2f64.powf(big_h - 1.0).max(1.0);
            let rhs = k * (a.abs().powf(p) + b.abs().powf(p));
            t.assert_margin(rhs - (a + b).abs().powf(p), 1e-12 * rhs);
            let e = p / m;
            let rhs = a.abs().powf(e) + b.abs().powf(e);
            t.assert_margin(rhs - (a + b).abs().powf(e), 1e-12 * rhs);
            let rhs = alpha.abs().powf(m).max(1.0);
            t.assert_margin(rhs - alpha.abs().powf(p), 1e-12 * rhs);
        };
        for &(a, b, alpha, p, big_h) in &[
            (1.0, 1.0, 1.0, 2.0, 2.0),
            (0.0, 0.0, 0.0, 1.5, 3.0),
            (3.0, -2.0, -1.0, 2.5, 2.5),
            (1e-8, 1e-8, 1e-8, 5.0, 5.0),
            (10.0, 10.0, 5.0, 6.0, 6.0),
        ] {
            check(t, a, b, alpha, p, big_h);
        }
        for i in 0..20 * cfg.count {
            let big_h = rng.gen_range(1.01..6.0);
            let p = if i % 10 == 0 {
                big_h
            } else {
                rng.gen_range(1.0 + 1e-6..=big_h)
            };
            let a = rng.gen_range(lo..hi);
            let b = rng.gen_range(lo..hi);
            let alpha = if i % 7 == 0 {
                rng.gen_range(-1.0..1.0)
            } else {
                rng.gen_range(-5.0..5.0)
            };
            check(t, a, b, alpha, p, big_h);
        }
        Ok(())
    })
}

/// `h(x+y) ≤ h(x) + h(y)`, `h(αx) ≤ max(1, |α|) h(x)`, `h(−x) = h(x)`,
/// `h(0) = 0`; `20·count` tuples.
pub fn paranorm_contract(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("paranorm_contract/{}", space.name);
    let mut rng = cfg.rng(&name);
    let h = |x: &FiniteSequence| paranorm_h(x, &space.weights, &space.exponents, cfg.tol);
    run(name, |t| {
        let zero = h(&FiniteSequence::zero(2))?;
        t.assert_margin(-zero.upper(), 0.0);
        for i in 0..20 * cfg.count {
            t.sample();
            let x = cfg.sample_sequence(&mut rng);
            let y = cfg.sample_sequence(&mut rng);
            let alpha = if i % 5 == 0 {
                rng.gen_range(-1.0..1.0)
            } else {
                rng.gen_range(-5.0..5.0)
            };
            let hx = h(&x)?;
            let hy = h(&y)?;
            let hxy = h(&x.add(&y))?;
            let tol = hx.error_bound
                + hy.error_bound
                + hxy.error_bound
                + SUM_ROUNDING * (hx.estimate + hy.estimate);
            t.assert_margin(hx.estimate + hy.estimate - hxy.estimate, tol);

            let hax = h(&x.scaled(alpha))?;
            let c = alpha.abs().max(1.0);
            let tol = c * hx.error_bound + hax.error_bound + SUM_ROUNDING * c * hx.estimate;
            t.assert_margin(c * hx.estimate - hax.estimate, tol);

            let hneg = h(&x.neg())?;
            t.assert_margin(-(hneg.estimate - hx.estimate).abs(), 0.0);
        }
        Ok(())
    })
}

/// `‖x‖_L ≤ ‖x‖_A ≤ 2‖x‖_L`; for constant `p` also the exact ratio
/// `p (p−1)^{(1−p)/p}`.
pub fn norm_sandwich(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("norm_sandwich/{}", space.name);
    let mut rng = cfg.rng(&name);
    let ratio = space.exponents.as_constant().map(|p| {
        (
            p * (p - 1.0).powf((1.0 - p) / p),
            if p == 2.0 { 1e-6 } else { 1e-5 },
        )
    });
    run(name, |t| {
        let z = FiniteSequence::zero(3);
        let zl = luxemburg_norm(&z, &space.weights, &space.exponents, cfg.tol_root)?;
        let za = amemiya_norm(&z, &space.weights, &space.exponents, cfg.tol_root)?;
        t.assert_margin(-(zl.value.abs() + za.value.abs()), 0.0);
        for _ in 0..cfg.count {
            t.sample();
            let x = cfg.sample_sequence(&mut rng);
            let l = luxemburg_norm(&x, &space.weights, &space.exponents, cfg.tol_root)?.value;
            let a = amemiya_norm(&x, &space.weights, &space.exponents, cfg.tol_root)?.value;
            t.assert_margin(a - l, 1e-6 * l);
            t.assert_margin(2.0 * l - a, 2e-6 * l);
            if let Some((expected, tol)) = ratio {
                t.assert_margin(-(a / l - expected).abs(), tol);
            }
        }
        Ok(())
    })
}

/// With `λ_k = k` and constant `p`, the window modular agrees with the
/// direct `ces_p` sum. `None` for other spaces.
pub fn cesaro_reduction(space: &NamedSpace, cfg: &SampleConfig) -> Option<CheckReport> {
    let p = space.cesaro_exponent()?;
    let name = format!("cesaro_reduction/{}", space.name);
    let mut rng = cfg.rng(&name);
    Some(run(name, |t| {
        for _ in 0..cfg.count {
            t.sample();
            let x = cfg.sample_sequence(&mut rng);
            let a = rho(&x, space, cfg.tol)?;
            let b = cesaro_direct(&x, p, cfg.tol)?;
            let tol = a.error_bound + b.error_bound + SUM_ROUNDING * a.estimate;
            t.assert_margin(-(a.estimate - b.estimate).abs(), tol);
        }
        Ok(())
    }))
}

/// A loose evaluation must lie within its own error bound of a tight one,
/// and that bound must respect the requested tolerance.
pub fn certification_honesty(space: &NamedSpace, cfg: &SampleConfig) -> CheckReport {
    let name = format!("certification_honesty/{}", space.name);
    let mut rng = cfg.rng(&name);
    let loose = 1e-6;
    run(name, |t| {
        for _ in 0..cfg.count.min(100) {
            t.sample();
            let x = cfg
                .sample_sequence(&mut rng)
                .scaled(rng.gen_range(0.01..2.0));
            let v = rho(&x, space, loose)?;
            let reference = rho(&x, space, loose / 100.0)?;
            t.assert_margin(
                v.error_bound + reference.error_bound - (v.estimate - reference.estimate).abs(),
                0.0,
            );
            t.assert_margin(loose + SUM_ROUNDING * v.estimate - v.error_bound, 0.0);
        }
        Ok(())
    })
}

/// Every check on every space (plus the space-free scalar check), run in
/// parallel and sorted by name.
pub fn run_panel(panel: &[NamedSpace], cfg: &SampleConfig) -> Vec<CheckReport> {
    type Job<'a> = Box<dyn Fn() -> Option<CheckReport> + Send + Sync + 'a>;
    let mut jobs: Vec<Job> = vec![Box::new(|| Some(scalar_inequalities(cfg)))];
    for s in panel {
        jobs.push(Box::new(move || Some(modular_axioms(s, cfg))));
        jobs.push(Box::new(move || Some(luxemburg_root(s, cfg))));
        jobs.push(Box::new(move || Some(modular_norm_regimes(s, cfg))));
        jobs.push(Box::new(move || {
            Some(null_and_convergent_sequences(s, cfg))
        }));
        jobs.push(Box::new(move || Some(paranorm_contract(s, cfg))));
        jobs.push(Box::new(move || Some(norm_sandwich(s, cfg))));
        jobs.push(Box::new(move || cesaro_reduction(s, cfg)));
        jobs.push(Box::new(move || Some(certification_honesty(s, cfg))));
    }
    let mut reports: Vec<CheckReport> = jobs.par_iter().filter_map(|job| job()).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}
