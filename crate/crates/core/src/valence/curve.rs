//! Adaptive sampling of boundary curves `t ↦ f(ρe^{it})` with
//! self-intersection records.

use super::{AnalyticMap, ValenceConfig};
use crate::error::{Error, Result};
use crate::{c64, C64};

/// One transversal self-crossing of the boundary curve.
#[derive(Debug, Clone)]
pub struct SelfIntersection {
    pub t1: f64,
    pub t2: f64,
    pub point: C64,
    /// Crossing angle between the two tangents, in degrees, folded into
    /// `[0, 90]`.
    pub angle_deg: f64,
}

/// Densely sampled image of the circle `|z| = rho`.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pub rho: f64,
    /// Parameters in increasing order over `[0, 2π)`.
    pub t: Vec<f64>,
    /// Curve points `f(ρ e^{it})`, same length as `t`.
    pub points: Vec<C64>,
    pub self_intersections: Vec<SelfIntersection>,
    /// `Some(m)` when the curve retraces itself `m` times (the image of a
    /// full circle is covered `m`-fold); pairwise intersection data is
    /// meaningless in that case.
    pub retraced: Option<usize>,
    /// Curve diameter estimate.
    pub diameter: f64,
    /// Largest post-refinement spacing between adjacent image samples.
    pub max_spacing: f64,
    /// Absolute mesh target used during refinement.
    pub mesh: f64,
}

impl BoundaryCurve {
    pub fn bbox(&self) -> (C64, C64) {
        let mut lo = c64(f64::INFINITY, f64::INFINITY);
        let mut hi = c64(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            lo = c64(lo.re.min(p.re), lo.im.min(p.im));
            hi = c64(hi.re.max(p.re), hi.im.max(p.im));
        }
        (lo, hi)
    }

    /// Distance from `w` to the sampled polyline.
    pub fn distance_to(&self, w: C64) -> f64 {
        let n = self.points.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            best = best.min(segment_distance(w, a, b));
        }
        best
    }
}

pub(crate) fn segment_distance(w: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = (((w - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (w - (a + ab * t)).norm()
}

/// Build the boundary curve at radius `rho` with mesh `mesh_rel × diameter`.
pub fn build_curve<M: AnalyticMap + ?Sized>(
    map: &M,
    rho: f64,
    cfg: &ValenceConfig,
) -> Result<BoundaryCurve> {
    let eval_at = |t: f64| -> Result<C64> { map.eval(c64(rho * t.cos(), rho * t.sin())) };

    // coarse pass for the diameter estimate
    let coarse_n = 1024usize;
    let mut t: Vec<f64> = (0..coarse_n)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / coarse_n as f64)
        .collect();
    let mut points = t.iter().map(|&tj| eval_at(tj)).collect::<Result<Vec<_>>>()?;
    let (mut lo, mut hi) = (c64(f64::INFINITY, f64::INFINITY), c64(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in &points {
        lo = c64(lo.re.min(p.re), lo.im.min(p.im));
        hi = c64(hi.re.max(p.re), hi.im.max(p.im));
    }
    let diameter = (hi - lo).norm().max(1e-300);
    let mesh = cfg.mesh_rel * diameter;

    // refinement sweep: subdivide every gap wider than the mesh
    loop {
        let n = t.len();
        let mut new_t = Vec::with_capacity(n * 2);
        let mut new_p = Vec::with_capacity(n * 2);
        let mut refined = false;
        for i in 0..n {
            let (t0, p0) = (t[i], points[i]);
            let (t1, p1) = if i + 1 == n {
                (2.0 * std::f64::consts::PI, points[0])
            } else {
                (t[i + 1], points[i + 1])
            };
            new_t.push(t0);
            new_p.push(p0);
            if (p1 - p0).norm() > mesh {
                let tm = 0.5 * (t0 + t1);
                new_t.push(tm);
                new_p.push(eval_at(tm)?);
                refined = true;
            }
        }
        if new_t.len() > cfg.max_samples {
            return Err(Error::MeshOverflow { max: cfg.max_samples });
        }
        t = new_t;
        points = new_p;
        if !refined {
            break;
        }
    }

    let n = t.len();
    let mut max_spacing = 0.0f64;
    for i in 0..n {
        let gap = (points[(i + 1) % n] - points[i]).norm();
        max_spacing = max_spacing.max(gap);
    }

    let retraced = detect_retrace(&eval_at, diameter)?;
    let self_intersections = if retraced.is_some() {
        Vec::new()
    } else {
        locate_self_intersections(map, rho, &t, &points, diameter, cfg)?
    };

    Ok(BoundaryCurve {
        rho,
        t,
        points,
        self_intersections,
        retraced,
        diameter,
        max_spacing,
        mesh,
    })
}

/// A curve traced `m ≥ 2` times satisfies `f(e^{i(t + 2π/m)}) = f(e^{it})`
/// identically; probe a handful of parameters for each small `m`.
fn detect_retrace<F: Fn(f64) -> Result<C64>>(eval_at: &F, diameter: f64) -> Result<Option<usize>> {
    let tol = 1e-9 * diameter;
    'outer: for m in 2..=12usize {
        let shift = 2.0 * std::f64::consts::PI / m as f64;
        for j in 0..24 {
            let t = 2.0 * std::f64::consts::PI * (j as f64 + 0.137) / 24.0;
            let a = eval_at(t)?;
            let b = eval_at(t + shift)?;
            if (a - b).norm() > tol {
                continue 'outer;
            }
        }
        return Ok(Some(m));
    }
    Ok(None)
}

fn locate_self_intersections<M: AnalyticMap + ?Sized>(
    map: &M,
    rho: f64,
    t: &[f64],
    points: &[C64],
    diameter: f64,
    cfg: &ValenceConfig,
) -> Result<Vec<SelfIntersection>> {
    let n = t.len();
    // spatial hash over segment bounding boxes
    let cell = (diameter * 4e-3).max(1e-300);
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
    let seg = |i: usize| -> (C64, C64) { (points[i], points[(i + 1) % n]) };
    for i in 0..n {
        let (a, b) = seg(i);
        let (x0, x1) = ((a.re.min(b.re) / cell).floor() as i64, (a.re.max(b.re) / cell).floor() as i64);
        let (y0, y1) = ((a.im.min(b.im) / cell).floor() as i64, (a.im.max(b.im) / cell).floor() as i64);
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }

    let mut raw: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for bucket in grid.values() {
        for (ai, &i) in bucket.iter().enumerate() {
            for &j in &bucket[ai + 1..] {
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                // skip adjacent segments (shared endpoints)
                if hi - lo <= 1 || (lo == 0 && hi == n - 1) {
                    continue;
                }
                if !seen.insert((lo, hi)) {
                    continue;
                }
                let (a, b) = seg(lo);
                let (c, d) = seg(hi);
                if segments_cross(a, b, c, d) {
                    raw.push((lo, hi));
                }
            }
        }
    }

    // refine each candidate with a 2-D Newton iteration on (t1, t2)
    let mut found: Vec<SelfIntersection> = Vec::new();
    for (i, j) in raw {
        let mut t1 = 0.5 * (t[i] + t[(i + 1) % n].max(t[i] + 1e-12));
        let mut t2 = 0.5 * (t[j] + t[(j + 1) % n].max(t[j] + 1e-12));
        let mut ok = false;
        for _ in 0..40 {
            let (v1, d1) = curve_point_d(map, rho, t1)?;
            let (v2, d2) = curve_point_d(map, rho, t2)?;
            let r = v1 - v2;
            if r.norm() < 1e-10 * diameter {
                ok = true;
                break;
            }
            // solve [d1, -d2]·(dt1, dt2) = -r as a real 2×2 system
            let (a11, a12) = (d1.re, -d2.re);
            let (a21, a22) = (d1.im, -d2.im);
            let det = a11 * a22 - a12 * a21;
            if det.abs() < 1e-30 {
                break;
            }
            let dt1 = (-r.re * a22 + r.im * a12) / det;
            let dt2 = (-a11 * r.im + a21 * r.re) / det;
            t1 += dt1;
            t2 += dt2;
            if !(t1.is_finite() && t2.is_finite()) {
                break;
            }
        }
        if !ok {
            continue;
        }
        let tau = 2.0 * std::f64::consts::PI;
        let (t1, t2) = (t1.rem_euclid(tau), t2.rem_euclid(tau));
        // distinct parameters
        let sep = (t1 - t2).abs().min(tau - (t1 - t2).abs());
        if sep < 1e-7 {
            continue;
        }
        let (p1, d1) = curve_point_d(map, rho, t1)?;
        let (_, d2) = curve_point_d(map, rho, t2)?;
        let angle = (d1 / d2).arg().abs();
        let angle = angle.min(std::f64::consts::PI - angle);
        let angle_deg = angle.to_degrees();
        // dedupe clusters
        if found.iter().any(|s| {
            (s.point - p1).norm() < 1e-7 * diameter
                && close_mod_tau(s.t1, t1)
                && close_mod_tau(s.t2, t2)
        }) {
            continue;
        }
        found.push(SelfIntersection { t1: t1.min(t2), t2: t1.max(t2), point: p1, angle_deg });
    }
    let _ = cfg;
    found.sort_by(|a, b| a.t1.total_cmp(&b.t1).then(a.t2.total_cmp(&b.t2)));
    Ok(found)
}

fn close_mod_tau(a: f64, b: f64) -> bool {
    let tau = 2.0 * std::f64::consts::PI;
    let d = (a - b).rem_euclid(tau);
    d < 1e-6 || tau - d < 1e-6
}

/// Curve point and its `t`-derivative: `d/dt f(ρe^{it}) = f'(ρe^{it})·iρe^{it}`.
pub(crate) fn curve_point_d<M: AnalyticMap + ?Sized>(
    map: &M,
    rho: f64,
    t: f64,
) -> Result<(C64, C64)> {
    let z = c64(rho * t.cos(), rho * t.sin());
    let (v, d) = map.eval_d(z)?;
    Ok((v, d * c64(0.0, 1.0) * z))
}

fn segments_cross(a: C64, b: C64, c: C64, d: C64) -> bool {
    let orient = |p: C64, q: C64, r: C64| -> f64 {
        (q.re - p.re) * (r.im - p.im) - (q.im - p.im) * (r.re - p.re)
    };
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    (o1 * o2 < 0.0) && (o3 * o4 < 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::symbol::{RationalPart, Symbol};
    use crate::valence::ExprMap;

    fn poly_symbol(coeffs: Vec<C64>, tail: Expr) -> Symbol {
        Symbol::new_unchecked(RationalPart::polynomial(coeffs).unwrap(), tail, 8.0).unwrap()
    }

    #[test]
    fn circle_of_radius_two() {
        let cfg = ValenceConfig::default();
        let sym = poly_symbol(vec![c64(0.0, 0.0), c64(2.0, 0.0)], Expr::Const(c64(0.0, 0.0)));
        let curve = build_curve(&sym, 1.0, &cfg).unwrap();
        assert!(curve.self_intersections.is_empty());
        assert!(curve.retraced.is_none());
        for p in &curve.points {
            assert!((p.norm() - 2.0).abs() < 1e-12);
        }
        assert!((curve.diameter - 4.0).abs() < 0.05);
        assert!(curve.max_spacing <= curve.mesh * 1.0001);
    }

    #[test]
    fn ellipse_extents_for_tridiagonal_symbol() {
        // 2e^{-it} + e^{it} = 3cos t − i sin t: semi-axes 3 and 1
        let cfg = ValenceConfig::default();
        let sym = poly_symbol(vec![c64(0.0, 0.0), c64(2.0, 0.0)], Expr::Z);
        let curve = build_curve(&sym, 1.0, &cfg).unwrap();
        assert!(curve.self_intersections.is_empty());
        let (lo, hi) = curve.bbox();
        assert!((hi.re - 3.0).abs() < 1e-6 && (lo.re + 3.0).abs() < 1e-6);
        assert!((hi.im - 1.0).abs() < 1e-6 && (lo.im + 1.0).abs() < 1e-6);
    }

    #[test]
    fn retraced_cubic_power() {
        let cfg = ValenceConfig::default();
        let sym = poly_symbol(
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(8.0, 0.0)],
            Expr::Const(c64(0.0, 0.0)),
        );
        let curve = build_curve(&sym, 1.0, &cfg).unwrap();
        assert_eq!(curve.retraced, Some(3));
    }

    #[test]
    fn limacon_has_one_transversal_crossing() {
        // f(z) = z² + 2.5 z has an inner-loop limaçon image with one crossing
        let cfg = ValenceConfig::default();
        let m = ExprMap::new(
            Expr::add2(
                Expr::Pow(Box::new(Expr::Z), 2),
                Expr::mul2(Expr::Const(c64(2.5, 0.0)), Expr::Z),
            ),
            4.0,
        );
        // on |z| = 1.5 : (1.5e^{it})² + 2.5·1.5e^{it}; loop appears since 2·1.5² > 2.5·1.5
        let curve = build_curve(&m, 1.5, &cfg).unwrap();
        assert!(curve.retraced.is_none());
        assert_eq!(curve.self_intersections.len(), 1, "{:?}", curve.self_intersections);
        let si = &curve.self_intersections[0];
        // f(t1) = f(t2) ⟺ crossing on the negative real axis at 1.5(e^{it1}+e^{it2}) = −2.5/1.5... :
        // crossing angle is transversal and the two parameters merge to the same point
        assert!(si.angle_deg > cfg.transversality_min_deg);
        let p1 = curve_point_d(&m, 1.5, si.t1).unwrap().0;
        let p2 = curve_point_d(&m, 1.5, si.t2).unwrap().0;
        assert!((p1 - p2).norm() < 1e-8);
        assert!((p1 - si.point).norm() < 1e-8);
    }
}
