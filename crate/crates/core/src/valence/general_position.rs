//! General-position diagnostics: finitely many simple transversal
//! self-intersections and a derivative bounded away from zero on the circle.

use super::curve::BoundaryCurve;
use super::{AnalyticMap, ValenceConfig};
use crate::error::Result;
use crate::{c64, C64};

#[derive(Debug, Clone)]
pub struct GeneralPositionReport {
    pub holds: bool,
    /// The map extends analytically past the unit circle.
    pub analytic_past_circle: bool,
    /// Multiplicity when the curve retraces itself (rules general position out).
    pub retraced: Option<usize>,
    pub self_intersection_count: usize,
    pub all_transversal: bool,
    /// Smallest crossing angle over the recorded intersections (degrees).
    pub min_crossing_angle_deg: Option<f64>,
    /// Minimum of `|f'|` on the circle after local refinement.
    pub derivative_min: f64,
    /// Where the minimum is attained.
    pub derivative_witness: C64,
}

/// Diagnose general position for the curve at `rho = 1`.
///
/// This is a diagnostic record, not a pass/fail gate: callers inspect the
/// booleans they care about.
pub fn general_position<M: AnalyticMap + ?Sized>(
    map: &M,
    curve: &BoundaryCurve,
    cfg: &ValenceConfig,
) -> Result<GeneralPositionReport> {
    let analytic_past_circle = map.analytic_radius() > 1.0;

    let mut all_transversal = true;
    let mut min_angle: Option<f64> = None;
    for si in &curve.self_intersections {
        if si.angle_deg < cfg.transversality_min_deg {
            all_transversal = false;
        }
        min_angle = Some(min_angle.map_or(si.angle_deg, |m: f64| m.min(si.angle_deg)));
    }
    // a crossing point visited by three or more parameters is not simple
    let mut simple = true;
    let sis = &curve.self_intersections;
    for (i, a) in sis.iter().enumerate() {
        for b in &sis[i + 1..] {
            if (a.point - b.point).norm() < 1e-7 * curve.diameter {
                simple = false;
            }
        }
    }

    // min |f'| on the circle: coarse scan plus golden-section polish
    let deriv_norm = |t: f64| -> Result<f64> {
        let z = c64(curve.rho * t.cos(), curve.rho * t.sin());
        Ok(map.eval_d(z)?.1.norm())
    };
    let m = 1usize << 12;
    let mut best_t = 0.0;
    let mut best = f64::INFINITY;
    for j in 0..m {
        let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let v = deriv_norm(t)?;
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let dt = 2.0 * std::f64::consts::PI / m as f64;
    let (mut a, mut b) = (best_t - dt, best_t + dt);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (b - phi * (b - a), a + phi * (b - a));
    let (mut f1, mut f2) = (deriv_norm(x1)?, deriv_norm(x2)?);
    for _ in 0..48 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = deriv_norm(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = deriv_norm(x2)?;
        }
    }
    let t_min = 0.5 * (a + b);
    let derivative_min = deriv_norm(t_min)?.min(best);
    let derivative_witness = c64(curve.rho * t_min.cos(), curve.rho * t_min.sin());

    let holds = analytic_past_circle
        && curve.retraced.is_none()
        && all_transversal
        && simple
        && derivative_min > cfg.derivative_min;

    Ok(GeneralPositionReport {
        holds,
        analytic_past_circle,
        retraced: curve.retraced,
        self_intersection_count: curve.self_intersections.len(),
        all_transversal: all_transversal && simple,
        min_crossing_angle_deg: min_angle,
        derivative_min,
        derivative_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::symbol::{RationalPart, Symbol};
    use crate::valence::curve::build_curve;

    #[test]
    fn backward_shift_is_general_position() {
        let cfg = ValenceConfig::default();
        let sym = Symbol::new_unchecked(
            RationalPart::polynomial(vec![c64(0.0, 0.0), c64(2.0, 0.0)]).unwrap(),
            Expr::Const(c64(0.0, 0.0)),
            8.0,
        )
        .unwrap();
        let curve = build_curve(&sym, 1.0, &cfg).unwrap();
        let rep = general_position(&sym, &curve, &cfg).unwrap();
        assert!(rep.holds);
        // |Φ'| = 2 on the circle
        assert!((rep.derivative_min - 2.0).abs() < 1e-9);
    }

    #[test]
    fn derivative_zero_on_circle_is_detected() {
        // Φ = 1/z + z: Φ' = 1 − 1/z² vanishes at z = ±1
        let cfg = ValenceConfig::default();
        let sym = Symbol::new_unchecked(
            RationalPart::polynomial(vec![c64(0.0, 0.0), c64(1.0, 0.0)]).unwrap(),
            Expr::Z,
            8.0,
        )
        .unwrap();
        let curve = build_curve(&sym, 1.0, &cfg).unwrap();
        let rep = general_position(&sym, &curve, &cfg).unwrap();
        assert!(!rep.holds);
        assert!(rep.derivative_min < 1e-8, "min = {}", rep.derivative_min);
        let w = rep.derivative_witness;
        assert!((w - c64(1.0, 0.0)).norm() < 1e-4 || (w - c64(-1.0, 0.0)).norm() < 1e-4);
    }
}
