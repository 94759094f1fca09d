//! Jacobi elliptic machinery backing the rectangle ↔ disk conformal maps:
//! complete integrals by AGM, theta-series evaluation of `sn`/`cn`/`dn` for
//! complex argument, and the inverse `arcsn` through Carlson's symmetric
//! integral `R_F`.
//!
//! The modulus is always real here (it comes from a rectangle aspect ratio);
//! arguments are complex.

use crate::{c64, C64};

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (an, bn) = ((a + b) * 0.5, (a * b).sqrt());
        if (an - bn).abs() <= 1e-16 * an.abs() {
            return an;
        }
        a = an;
        b = bn;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral `K(k)` with modulus `k` (not the parameter m).
pub fn complete_k(k: f64) -> f64 {
    let kp = ((1.0 - k) * (1.0 + k)).max(0.0).sqrt();
    std::f64::consts::FRAC_PI_2 / agm(1.0, kp)
}

fn theta2_const(q: f64) -> f64 {
    let mut s = 0.0;
    for n in 0..400 {
        let e = (n as f64 + 0.5) * (n as f64 + 0.5);
        let t = q.powf(e);
        s += t;
        if t < 1e-18 * s.abs().max(1.0) {
            break;
        }
    }
    2.0 * s
}

fn theta3_const(q: f64) -> f64 {
    let mut s = 1.0;
    for n in 1..400 {
        let t = q.powf((n * n) as f64);
        s += 2.0 * t;
        if t < 1e-18 {
            break;
        }
    }
    s
}

/// Modulus from the nome: `k = (θ₂(q)/θ₃(q))²`.
pub fn modulus_from_nome(q: f64) -> f64 {
    let r = theta2_const(q) / theta3_const(q);
    (r * r).clamp(0.0, 1.0)
}

/// Precomputed constants for evaluating the Jacobi functions with a fixed
/// real modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiModulus {
    pub k: f64,
    pub q: f64,
    /// Quarter period `K(k)`.
    pub kk: f64,
    /// Complementary quarter period `K'(k)`.
    pub kk_prime: f64,
    th2: f64,
    th3: f64,
    th4: f64,
    /// Number of theta-series terms that keeps the tail below 1e-17 for
    /// arguments in the fundamental rectangle.
    terms: usize,
}

impl JacobiModulus {
    /// From a known nome (the quarter-period ratio is reproduced exactly).
    pub fn from_nome(q: f64) -> Self {
        assert!(q > 0.0 && q < 1.0, "nome must lie in (0,1)");
        let k = modulus_from_nome(q);
        let kk = complete_k(k);
        let kk_prime = -q.ln() / std::f64::consts::PI * kk;
        let th2 = theta2_const(q);
        let th3 = theta3_const(q);
        let th4 = {
            let mut s = 1.0;
            for n in 1..400 {
                let t = q.powf((n * n) as f64);
                s += 2.0 * if n % 2 == 1 { -t } else { t };
                if t < 1e-18 {
                    break;
                }
            }
            s
        };
        // Series terms q^{n²} e^{2n·Im v} with |Im v| ≤ π K'/(2K) + slack.
        let im_max = std::f64::consts::FRAC_PI_2 * (kk_prime / kk) * 1.05 + 0.5;
        let lnq = q.ln();
        let mut terms = 8usize;
        while terms < 800 {
            let n = terms as f64;
            if n * n * lnq + 2.0 * n * im_max < -40.0 {
                break;
            }
            terms += 4;
        }
        JacobiModulus { k, q, kk, kk_prime, th2, th3, th4, terms }
    }

    pub fn from_modulus(k: f64) -> Self {
        assert!(k > 0.0 && k < 1.0, "modulus must lie in (0,1)");
        let kp = ((1.0 - k) * (1.0 + k)).sqrt();
        let kk = complete_k(k);
        let kkp = complete_k(kp);
        let q = (-std::f64::consts::PI * kkp / kk).exp();
        let mut m = Self::from_nome(q);
        m.k = k;
        m
    }

    fn theta1(&self, v: C64) -> C64 {
        let mut s = c64(0.0, 0.0);
        for n in 0..self.terms {
            let e = (n as f64 + 0.5) * (n as f64 + 0.5);
            let coeff = self.q.powf(e) * if n % 2 == 1 { -1.0 } else { 1.0 };
            s += ((2 * n + 1) as f64 * v).sin() * coeff;
        }
        2.0 * s
    }

    fn theta2(&self, v: C64) -> C64 {
        let mut s = c64(0.0, 0.0);
        for n in 0..self.terms {
            let e = (n as f64 + 0.5) * (n as f64 + 0.5);
            s += ((2 * n + 1) as f64 * v).cos() * self.q.powf(e);
        }
        2.0 * s
    }

    fn theta3(&self, v: C64) -> C64 {
        let mut s = c64(1.0, 0.0);
        for n in 1..self.terms {
            s += (2.0 * n as f64 * v).cos() * (2.0 * self.q.powf((n * n) as f64));
        }
        s
    }

    fn theta4(&self, v: C64) -> C64 {
        let mut s = c64(1.0, 0.0);
        for n in 1..self.terms {
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            s += (2.0 * n as f64 * v).cos() * (2.0 * sign * self.q.powf((n * n) as f64));
        }
        s
    }

    /// `sn(u, k)` for complex `u`.
    pub fn sn(&self, u: C64) -> C64 {
        let v = u * (std::f64::consts::FRAC_PI_2 / self.kk);
        (self.th3 / self.th2) * self.theta1(v) / self.theta4(v)
    }

    /// `(sn, cn, dn)` at complex `u`.
    pub fn sn_cn_dn(&self, u: C64) -> (C64, C64, C64) {
        let v = u * (std::f64::consts::FRAC_PI_2 / self.kk);
        let t4 = self.theta4(v);
        let sn = (self.th3 / self.th2) * self.theta1(v) / t4;
        let cn = (self.th4 / self.th2) * self.theta2(v) / t4;
        let dn = (self.th4 / self.th3) * self.theta3(v) / t4;
        (sn, cn, dn)
    }

    /// Inverse of `sn` mapping the closed upper half plane onto the
    /// fundamental half-rectangle `[-K, K] × [0, K']`.
    ///
    /// Points on the real axis are nudged into the open upper half plane so
    /// that the principal branches of the Carlson integral stay on the branch
    /// that is continuous throughout the upper half plane; lower-half-plane
    /// arguments go through conjugation symmetry.
    pub fn arcsn(&self, w: C64) -> C64 {
        if w.im < 0.0 {
            return self.arcsn(w.conj()).conj();
        }
        let push = 1e-14 * (1.0 + w.norm());
        let w = if w.im < push { c64(w.re, push) } else { w };
        let k = c64(self.k, 0.0);
        let one = c64(1.0, 0.0);
        w * carlson_rf(one - w * w, one - k * k * w * w, one)
    }

    /// Derivative `d/dw arcsn(w) = 1/(cn·dn)` evaluated branch-consistently
    /// at `u = arcsn(w)`.
    pub fn arcsn_with_derivative(&self, w: C64) -> (C64, C64) {
        let u = self.arcsn(w);
        let (_, cn, dn) = self.sn_cn_dn(u);
        (u, 1.0 / (cn * dn))
    }
}

/// Carlson symmetric integral `R_F(x, y, z)` for complex arguments off the
/// negative real axis (principal square roots), by the standard duplication
/// iteration with the fifth-order tail expansion.
pub fn carlson_rf(x: C64, y: C64, z: C64) -> C64 {
    const ERRTOL: f64 = 0.002;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut ave;
    let (mut dx, mut dy, mut dz);
    let mut iter = 0;
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = (xt + yt + zt) / 3.0;
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        iter += 1;
        let m = dx.norm().max(dy.norm()).max(dz.norm());
        if m < ERRTOL || iter > 60 {
            break;
        }
    }
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (c64(1.0, 0.0) + (e2 * (1.0 / 24.0) - c64(0.1, 0.0) - e3 * (3.0 / 44.0)) * e2 + e3 * (1.0 / 14.0))
        / ave.sqrt()
}
