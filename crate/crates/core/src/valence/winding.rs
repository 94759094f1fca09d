//! Winding numbers of `t ↦ f(ρe^{it}) − w` by summed unwrapped phase
//! increments with adaptive bisection, and the argument-principle preimage
//! count (winding plus enclosed poles).

use super::{AnalyticMap, ValenceConfig};
use crate::error::{Error, Result};
use crate::{c64, C64};

/// Winding number of `t ↦ f(ρe^{it}) − w` around the origin.
///
/// Starts from a uniform sample and bisects every interval whose phase
/// increment exceeds π/2, so each increment is unambiguous. `min_dist`, when
/// given, aborts with [`Error::TooCloseToCurve`] as soon as a sample comes
/// closer than that to `w`.
pub fn winding_number<M: AnalyticMap + ?Sized>(
    map: &M,
    rho: f64,
    w: C64,
    min_dist: Option<f64>,
    cfg: &ValenceConfig,
) -> Result<i64> {
    let point = |t: f64| -> Result<C64> {
        let z = c64(rho * t.cos(), rho * t.sin());
        let v = map.eval(z)? - w;
        if let Some(d) = min_dist {
            if v.norm() < d {
                return Err(Error::TooCloseToCurve { w, dist: v.norm(), band: d });
            }
        }
        if v.norm() == 0.0 {
            return Err(Error::TooCloseToCurve { w, dist: 0.0, band: min_dist.unwrap_or(0.0) });
        }
        Ok(v)
    };

    let m = 256usize;
    let mut total = 0.0f64;
    let mut prev_t = 0.0f64;
    let mut prev_v = point(0.0)?;
    let first_v = prev_v;
    for j in 1..=m {
        let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let v = if j == m { first_v } else { point(t)? };
        total += phase_step(map, rho, w, prev_t, prev_v, t, v, 0, cfg, &point)?;
        prev_t = t;
        prev_v = v;
    }
    let winding = total / (2.0 * std::f64::consts::PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.25 {
        return Err(Error::PhaseUnresolved { depth: cfg.max_bisect_depth });
    }
    Ok(rounded as i64)
}

#[allow(clippy::too_many_arguments)]
fn phase_step<M, F>(
    map: &M,
    rho: f64,
    w: C64,
    t0: f64,
    v0: C64,
    t1: f64,
    v1: C64,
    depth: u32,
    cfg: &ValenceConfig,
    point: &F,
) -> Result<f64>
where
    M: AnalyticMap + ?Sized,
    F: Fn(f64) -> Result<C64>,
{
    // arg(v1/v0) ∈ (−π, π]; trustworthy only when well below π
    let delta = (v1 / v0).arg();
    if delta.abs() <= std::f64::consts::FRAC_PI_2 {
        return Ok(delta);
    }
    if depth >= cfg.max_bisect_depth {
        return Err(Error::PhaseUnresolved { depth });
    }
    let tm = 0.5 * (t0 + t1);
    let vm = point(tm)?;
    Ok(phase_step(map, rho, w, t0, v0, tm, vm, depth + 1, cfg, point)?
        + phase_step(map, rho, w, tm, vm, t1, v1, depth + 1, cfg, point)?)
}

/// Number of solutions of `f(z) = w` in `|z| < rho`, counted with
/// multiplicity: the winding number of the boundary image around `w` plus the
/// number of poles enclosed.
pub fn preimage_count<M: AnalyticMap + ?Sized>(
    map: &M,
    w: C64,
    rho: f64,
    min_dist: Option<f64>,
    cfg: &ValenceConfig,
) -> Result<usize> {
    let winding = winding_number(map, rho, w, min_dist, cfg)?;
    let poles = map.poles_within(rho) as i64;
    let count = winding + poles;
    if count < 0 {
        return Err(Error::PhaseUnresolved { depth: cfg.max_bisect_depth });
    }
    Ok(count as usize)
}
