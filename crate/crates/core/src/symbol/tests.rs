use super::*;
use crate::{c64, C64};

pub fn re(x: f64) -> C64 {
    c64(x, 0.0)
}

/// `Φ = 2/z` — twice the backward shift.
pub fn two_over_z() -> Symbol {
    let rational = RationalPart::polynomial(vec![re(0.0), re(2.0)]).unwrap();
    Symbol::new_unchecked(rational, Expr::Const(re(0.0)), 8.0).unwrap()
}

/// `Φ = 2/z + z` — the tridiagonal symbol.
pub fn tridiagonal() -> Symbol {
    let rational = RationalPart::polynomial(vec![re(0.0), re(2.0)]).unwrap();
    Symbol::new_unchecked(rational, Expr::Z, 8.0).unwrap()
}

#[test]
fn eval_simple_rational_symbols() {
    // Φ = 2/z at z = 1
    let sym = two_over_z();
    assert!((sym.eval(re(1.0)).unwrap() - re(2.0)).norm() < 1e-15);

    // R(w) = 1/(w − 2) evaluated at z = 1 (w = 1): 1/(1−2) = −1
    let rational =
        RationalPart::new(vec![re(0.0)], vec![Pole { eta: re(2.0), alphas: vec![re(1.0)] }]).unwrap();
    let sym = Symbol::new_unchecked(rational, Expr::Const(re(0.0)), 1.0).unwrap();
    assert!((sym.eval(re(1.0)).unwrap() - re(-1.0)).norm() < 1e-15);

    // Φ = z^{-2} at z = i equals −1
    let rational = RationalPart::polynomial(vec![re(0.0), re(0.0), re(1.0)]).unwrap();
    let sym = Symbol::new_unchecked(rational, Expr::Const(re(0.0)), 4.0).unwrap();
    assert!((sym.eval(c64(0.0, 1.0)).unwrap() - re(-1.0)).norm() < 1e-15);
    assert_eq!(sym.n1(), 2);
    assert_eq!(sym.n(), 2);
}

#[test]
fn derivative_closed_forms() {
    // Φ = z^{-2}: Φ'(1) = −2
    let rational = RationalPart::polynomial(vec![re(0.0), re(0.0), re(1.0)]).unwrap();
    let sym = Symbol::new_unchecked(rational, Expr::Const(re(0.0)), 4.0).unwrap();
    let (_, d) = sym.eval_d(re(1.0)).unwrap();
    assert!((d - re(-2.0)).norm() < 1e-14);

    // Φ = 2/z + z: Φ'(1) = −2 + 1 = −1
    let (_, d) = tridiagonal().eval_d(re(1.0)).unwrap();
    assert!((d - re(-1.0)).norm() < 1e-14);
}

#[test]
fn derivative_matches_finite_differences_on_random_rational_symbol() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let rational = RationalPart::new(
        vec![c64(0.3, -0.2), c64(1.0, 0.4), c64(-0.7, 0.1)],
        vec![
            Pole { eta: c64(1.7, 0.9), alphas: vec![c64(0.5, -1.0), c64(0.2, 0.3)] },
            Pole { eta: c64(-2.2, 0.4), alphas: vec![c64(1.1, 0.0)] },
        ],
    )
    .unwrap();
    let sym = Symbol::new_unchecked(rational, Expr::Exp(Box::new(Expr::Z)), 1.3).unwrap();
    let h = 1e-6;
    let mut checked = 0;
    while checked < 64 {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() > 1.0 || z.norm() < 0.2 {
            continue;
        }
        // keep clear of the poles so the finite difference is trustworthy
        if sym.poles_in_z().iter().any(|(p, _)| (z - p).norm() < 0.15) {
            continue;
        }
        let (_, d) = sym.eval_d(z).unwrap();
        let fd = (sym.eval(z + re(h)).unwrap() - sym.eval(z - re(h)).unwrap()) / re(2.0 * h);
        let scale = d.norm().max(1.0);
        assert!((d - fd).norm() < 1e-6 * scale, "z = {z}, d = {d}, fd = {fd}");
        checked += 1;
    }
}

#[test]
fn pole_bookkeeping_and_blowup_rates() {
    let rational = RationalPart::new(
        vec![re(0.0), re(1.0), re(0.5)],
        vec![Pole { eta: c64(2.0, 0.0), alphas: vec![re(1.0), re(0.25)] }],
    )
    .unwrap();
    let sym = Symbol::new_unchecked(rational, Expr::Const(re(0.0)), 1.6).unwrap();
    assert_eq!(sym.n1(), 2);
    assert_eq!(sym.n2(), 2);
    let poles = sym.poles_in_z();
    assert_eq!(poles, vec![(c64(0.0, 0.0), 2), (c64(0.5, 0.0), 2)]);

    // |Φ(z)|·|z−p|^order stays bounded and away from zero approaching each
    // pole along 8 rays
    for (p, order) in poles {
        for ray in 0..8 {
            let dir = c64(0.0, 2.0 * std::f64::consts::PI * ray as f64 / 8.0).exp();
            let mut prev = None;
            for &eps in &[1e-3, 1e-4, 1e-5] {
                let z = p + dir * eps;
                let scaled = sym.eval(z).unwrap().norm() * eps.powi(order as i32);
                assert!(scaled.is_finite() && scaled > 1e-6, "pole {p}, ray {ray}: {scaled}");
                if let Some(prev) = prev {
                    let ratio: f64 = scaled / prev;
                    assert!(ratio > 0.2 && ratio < 5.0, "blowup order drifts at {p}");
                }
                prev = Some(scaled);
            }
        }
    }

    assert!(matches!(sym.eval(c64(0.5, 0.0)), Err(Error::PoleHit { .. })));
    assert!(matches!(sym.eval(c64(5.0, 0.0)), Err(Error::DomainViolation { .. })));
}

#[test]
fn taylor_at_zero_matches_geometric_expansion() {
    // R(w) = 1/(w − 2): r_m = −(1/2)·(1/2)^m
    let rational =
        RationalPart::new(vec![re(0.0)], vec![Pole { eta: re(2.0), alphas: vec![re(1.0)] }]).unwrap();
    let coeffs = rational.taylor_at_zero(8);
    for (m, &c) in coeffs.iter().enumerate() {
        let expect = -0.5 * 0.5f64.powi(m as i32);
        assert!((c - re(expect)).norm() < 1e-14, "m = {m}");
    }

    // double pole: R(w) = 1/(w−η)², r_m = (m+1)/η^{m+2}
    let eta = c64(1.5, -0.5);
    let rational =
        RationalPart::new(vec![re(0.0)], vec![Pole { eta, alphas: vec![re(0.0), re(1.0)] }]);
    // leading alpha must be nonzero; use alphas = [0, 1] → invalid? no: last is 1 ✓
    let rational = rational.unwrap();
    let coeffs = rational.taylor_at_zero(6);
    for (m, &c) in coeffs.iter().enumerate() {
        let expect = (m as f64 + 1.0) / eta.powi(m as i32 + 2);
        assert!((c - expect).norm() < 1e-13 * expect.norm().max(1.0), "m = {m}");
    }
}

#[test]
fn symbol_eval_consistency_at_random_points() {
    // eval(z) must equal the closed-form sum P(1/z) + Σ α (1/z − η)^{-j} + tail(z)
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let rational = RationalPart::new(
        vec![c64(0.2, 0.1), c64(-1.0, 0.7)],
        vec![Pole { eta: c64(-1.4, 1.1), alphas: vec![c64(0.9, 0.2)] }],
    )
    .unwrap();
    let tail = Expr::Exp(Box::new(Expr::mul2(Expr::Const(c64(0.3, 0.2)), Expr::Z)));
    let sym = Symbol::new_unchecked(rational.clone(), tail.clone(), 1.0).unwrap();
    let mut checked = 0;
    while checked < 128 {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() > 1.0 || z.norm() < 0.3 {
            continue;
        }
        let direct = {
            let w = 1.0 / z;
            rational.eval_r(w) + tail.eval(z).unwrap()
        };
        let v = sym.eval(z).unwrap();
        assert!((v - direct).norm() <= 1e-12 * direct.norm().max(1.0), "z = {z}");
        checked += 1;
    }
}

#[test]
fn resolvent_values_and_rejection() {
    let sym = two_over_z();
    // h_0(z) = z/2
    let h0 = sym.resolvent(re(0.0)).unwrap();
    assert!((h0.eval(re(1.0)).unwrap() - re(0.5)).norm() < 1e-14);
    // h_5(1) = 1/(2−5) = −1/3
    let h5 = sym.resolvent(re(5.0)).unwrap();
    assert!((h5.eval(re(1.0)).unwrap() - re(-1.0 / 3.0)).norm() < 1e-14);
    // λ inside the range must be rejected: Φ(𝔻) = {|w| > 2}
    assert!(matches!(sym.resolvent(re(3.0)), Err(Error::LambdaInRange { .. })));
}

#[test]
fn resolvent_mobius_identity() {
    // 1/(Φ−μ) = 1/(λ−μ) − 1/(λ−μ)² · 1/(h_λ + 1/(λ−μ)) with h_λ = 1/(Φ−λ)
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let sym = two_over_z();
    for _ in 0..4 {
        // λ, μ in the hole |w| < 2 of the range
        let lambda = c64(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
        let mu = c64(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
        if (lambda - mu).norm() < 0.1 {
            continue;
        }
        let hl = sym.resolvent(lambda).unwrap();
        let hm = sym.resolvent(mu).unwrap();
        let c1 = 1.0 / (lambda - mu);
        let c2 = -c1 * c1;
        let c3 = -c1;
        for j in 0..256 {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 256.0;
            let z = c64(t.cos(), t.sin());
            let lhs = hm.eval(z).unwrap();
            let rhs = c1 + c2 / (hl.eval(z).unwrap() - c3);
            assert!((lhs - rhs).norm() < 1e-10, "t = {t}");
        }
    }
}

#[test]
fn conjugate_star_coefficients() {
    // coefficient k of R* equals the conjugate of coefficient −k of R(1/z)|_𝕋
    let rational = RationalPart::new(
        vec![c64(0.4, -0.3), c64(1.2, 0.5)],
        vec![Pole { eta: c64(1.3, 0.8), alphas: vec![c64(0.7, -0.2), c64(0.1, 0.4)] }],
    )
    .unwrap();
    let star = rational.conjugate_star();
    // Fourier coefficient of R(1/z) at index −m is taylor_at_zero(R)[m];
    // Fourier coefficient of R*(z) at index +m is taylor_at_zero(R*)[m]
    let neg = rational.taylor_at_zero(10);
    let pos = star.taylor_at_zero(10);
    for m in 0..10 {
        assert!((pos[m] - neg[m].conj()).norm() < 1e-13, "m = {m}");
    }
}

#[test]
fn json_schema_roundtrip() {
    let rational = RationalPart::new(
        vec![c64(0.0, 0.0), c64(2.0, 1.0)],
        vec![Pole { eta: c64(1.5, -1.0), alphas: vec![c64(0.3, 0.0)] }],
    )
    .unwrap();
    let tail = Expr::mul2(Expr::Const(c64(0.25, 0.0)), Expr::Pow(Box::new(Expr::Z), 3));
    let sym = Symbol::new_unchecked(rational, tail, 1.2).unwrap();
    let json = sym.to_json();
    let back = Symbol::from_json(&json).unwrap();
    for &z in &[c64(0.5, 0.3), c64(-0.2, 0.8), c64(0.9, 0.0)] {
        let a = sym.eval(z).unwrap();
        let b = back.eval(z).unwrap();
        assert!((a - b).norm() < 1e-15);
    }
    assert_eq!(back.analytic_radius(), 1.2);
    assert_eq!(back.n(), 2);
}

#[test]
fn invalid_symbols_are_rejected() {
    // pole inside the closed disk
    assert!(RationalPart::new(vec![re(0.0)], vec![Pole { eta: c64(0.5, 0.0), alphas: vec![re(1.0)] }])
        .is_err());
    // repeated poles
    assert!(RationalPart::new(
        vec![re(0.0)],
        vec![
            Pole { eta: re(2.0), alphas: vec![re(1.0)] },
            Pole { eta: re(2.0), alphas: vec![re(0.5)] },
        ],
    )
    .is_err());
    // vanishing leading principal coefficient
    assert!(RationalPart::new(vec![re(0.0)], vec![Pole { eta: re(2.0), alphas: vec![re(0.0)] }]).is_err());
    // analytic radius below 1
    let r = RationalPart::polynomial(vec![re(0.0), re(1.0)]).unwrap();
    assert!(Symbol::new_unchecked(r, Expr::Z, 0.9).is_err());
}
