//! Symbols `Φ(z) = R(1/z) + φ(z)`: a rational part `R` with all poles outside
//! the closed unit disk, evaluated at `1/z`, plus an analytic tail `φ` given
//! as an expression tree.
//!
//! `Φ` is analytic in the punctured disk except for a pole of order `N₁` at
//! the origin (the polynomial part of `R`) and poles of order `k_l` at the
//! reflected points `1/η_l`.

mod resolvent;

pub use resolvent::ResolventSymbol;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly;
use crate::{c64, C64};
use serde_json::{json, Value};

/// Distance below which an evaluation point is treated as sitting on a pole.
pub const POLE_CUTOFF: f64 = 1e-14;

/// One pole `η` of `R` with its principal-part coefficients
/// `α_1 .. α_k` (so the multiplicity is `alphas.len()`).
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub eta: C64,
    pub alphas: Vec<C64>,
}

/// The rational part `R(w) = P(w) + Σ_l Σ_j α_{l,j} (w − η_l)^{-j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPart {
    /// Coefficients `c_0 .. c_{N1}` of `P`; the leading one is nonzero unless
    /// the polynomial is constant.
    poly: Vec<C64>,
    poles: Vec<Pole>,
}

impl RationalPart {
    pub fn new(poly: Vec<C64>, poles: Vec<Pole>) -> Result<Self> {
        let poly = poly::trim(poly, 0.0);
        for (i, p) in poles.iter().enumerate() {
            if p.eta.norm() <= 1.0 {
                return Err(Error::InvalidSymbol(format!(
                    "pole eta = {} must lie outside the closed unit disk",
                    p.eta
                )));
            }
            if p.alphas.is_empty() || p.alphas.last().unwrap().norm() == 0.0 {
                return Err(Error::InvalidSymbol(format!(
                    "pole eta = {} has a vanishing leading coefficient",
                    p.eta
                )));
            }
            for q in &poles[..i] {
                if (p.eta - q.eta).norm() < 1e-12 {
                    return Err(Error::InvalidSymbol(format!("poles must be distinct; {} repeats", p.eta)));
                }
            }
        }
        Ok(RationalPart { poly, poles })
    }

    /// Purely polynomial rational part `P(w)`.
    pub fn polynomial(poly: Vec<C64>) -> Result<Self> {
        Self::new(poly, Vec::new())
    }

    pub fn poly_coeffs(&self) -> &[C64] {
        &self.poly
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    /// Degree `N₁` of the polynomial part.
    pub fn n1(&self) -> usize {
        poly::degree(&self.poly)
    }

    /// `N₂ = Σ k_l`.
    pub fn n2(&self) -> usize {
        self.poles.iter().map(|p| p.alphas.len()).sum()
    }

    /// Total degree `N = N₁ + N₂`.
    pub fn n(&self) -> usize {
        self.n1() + self.n2()
    }

    /// Poles of `z ↦ R(1/z)` inside the plane: `(location, order)`.
    pub fn poles_in_z(&self) -> Vec<(C64, usize)> {
        let mut out = Vec::new();
        if self.n1() > 0 {
            out.push((c64(0.0, 0.0), self.n1()));
        }
        for p in &self.poles {
            out.push((1.0 / p.eta, p.alphas.len()));
        }
        out
    }

    /// `R(1/z)` evaluated in the pole-free closed form
    /// `P(1/z) + Σ α_{l,j} z^j (1 − η_l z)^{-j}`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.eval_d(z)?.0)
    }

    /// `R(1/z)` together with its `z`-derivative.
    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        let n1 = self.n1();
        let mut v = c64(self.poly[0].re, self.poly[0].im);
        let mut d = c64(0.0, 0.0);
        if n1 > 0 {
            if z.norm() < POLE_CUTOFF {
                return Err(Error::PoleHit { z, dist: z.norm() });
            }
            let w = 1.0 / z;
            let (pv, pd) = poly::eval_with_derivative(&self.poly, w);
            v = pv;
            d = -pd * w * w;
        }
        for p in &self.poles {
            let zp = 1.0 / p.eta;
            if (z - zp).norm() < POLE_CUTOFF {
                return Err(Error::PoleHit { z, dist: (z - zp).norm() });
            }
            // (1/z - η)^{-j} = z^j (1-ηz)^{-j}, differentiating telescopes to
            // j z^{j-1} (1-ηz)^{-(j+1)}
            let inv_den = 1.0 / (1.0 - p.eta * z);
            for (idx, &alpha) in p.alphas.iter().enumerate() {
                let j = (idx + 1) as i32;
                v += alpha * z.powi(j) * inv_den.powi(j);
                d += alpha * (j as f64) * z.powi(j - 1) * inv_den.powi(j + 1);
            }
        }
        Ok((v, d))
    }

    /// Taylor coefficients `r_0 .. r_{count-1}` of `R(w)` at `w = 0`; these are
    /// the Fourier coefficients of `t ↦ R(e^{-it})` at indices `0, -1, -2, …`.
    ///
    /// The pole terms expand through the geometric series
    /// `(w − η)^{-j} = (−η)^{-j} Σ_m C(m+j-1, j-1) (w/η)^m`.
    pub fn taylor_at_zero(&self, count: usize) -> Vec<C64> {
        let mut out = vec![c64(0.0, 0.0); count];
        for (m, slot) in out.iter_mut().enumerate() {
            if m < self.poly.len() {
                *slot += self.poly[m];
            }
            for p in &self.poles {
                let eta_pow = p.eta.powi(-(m as i32));
                for (idx, &alpha) in p.alphas.iter().enumerate() {
                    let j = idx + 1;
                    let lead = (-p.eta).powi(-(j as i32));
                    *slot += alpha * lead * poly::binomial(m + j - 1, j - 1) * eta_pow;
                }
            }
        }
        out
    }

    /// The conjugate rational function `R*(z) = Σ c̄_k z^k + Σ ᾱ (z − η̄)^{-j}`,
    /// which is analytic and bounded in the unit disk; the adjoint operator
    /// has symbol `R*(z) + conj(φ(z))`.
    pub fn conjugate_star(&self) -> RationalPart {
        RationalPart {
            poly: self.poly.iter().map(|c| c.conj()).collect(),
            poles: self
                .poles
                .iter()
                .map(|p| Pole { eta: p.eta.conj(), alphas: p.alphas.iter().map(|a| a.conj()).collect() })
                .collect(),
        }
    }

    /// Direct evaluation of `R(w)` (not of `R(1/z)`).
    pub fn eval_r(&self, w: C64) -> C64 {
        let mut v = poly::eval(&self.poly, w);
        for p in &self.poles {
            let base = 1.0 / (w - p.eta);
            let mut pw = base;
            for &alpha in &p.alphas {
                v += alpha * pw;
                pw *= base;
            }
        }
        v
    }

    /// Expression tree computing `R(1/z)` (used to peel tails off example
    /// symbols).
    pub fn to_expr(&self) -> Expr {
        let mut terms = Vec::new();
        if self.poly[0].norm() != 0.0 {
            terms.push(Expr::Const(self.poly[0]));
        }
        for (k, &c) in self.poly.iter().enumerate().skip(1) {
            if c.norm() == 0.0 {
                continue;
            }
            terms.push(Expr::mul2(Expr::Const(c), Expr::Pow(Box::new(Expr::Z), -(k as i32))));
        }
        for p in &self.poles {
            for (idx, &alpha) in p.alphas.iter().enumerate() {
                if alpha.norm() == 0.0 {
                    continue;
                }
                let j = (idx + 1) as i32;
                // α z^j (1 - ηz)^{-j}
                let den = Expr::Affine { a: -p.eta, b: c64(1.0, 0.0), inner: Box::new(Expr::Z) };
                terms.push(Expr::Mul(vec![
                    Expr::Const(alpha),
                    Expr::Pow(Box::new(Expr::Z), j),
                    Expr::Pow(Box::new(den), -j),
                ]));
            }
        }
        if terms.is_empty() {
            Expr::Const(c64(0.0, 0.0))
        } else {
            Expr::Add(terms)
        }
    }
}

/// Full symbol `Φ = R(1/z) + φ(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    rational: RationalPart,
    tail: Expr,
    analytic_radius: f64,
}

impl Symbol {
    /// Construct without the boundedness witness (cheap; used internally and
    /// by tests that construct thousands of symbols).
    pub fn new_unchecked(rational: RationalPart, tail: Expr, analytic_radius: f64) -> Result<Self> {
        if !(analytic_radius >= 1.0) {
            return Err(Error::InvalidSymbol(format!(
                "analytic radius {analytic_radius} must be ≥ 1"
            )));
        }
        Ok(Symbol { rational, tail, analytic_radius })
    }

    /// Construct and run the boundedness witness: the tail must evaluate to a
    /// finite value at 2^14 points of the unit circle.
    pub fn validated(rational: RationalPart, tail: Expr, analytic_radius: f64) -> Result<Self> {
        let sym = Self::new_unchecked(rational, tail, analytic_radius)?;
        let m = 1usize << 14;
        let mut sup = 0.0f64;
        for j in 0..m {
            let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let z = c64(t.cos(), t.sin());
            let v = sym.tail.eval(z).map_err(|e| {
                Error::InvalidSymbol(format!("tail not evaluable on the unit circle: {e}"))
            })?;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidSymbol(format!("tail unbounded at t = {t}")));
            }
            sup = sup.max(v.norm());
        }
        Ok(sym)
    }

    pub fn rational(&self) -> &RationalPart {
        &self.rational
    }

    pub fn tail(&self) -> &Expr {
        &self.tail
    }

    pub fn analytic_radius(&self) -> f64 {
        self.analytic_radius
    }

    pub fn n1(&self) -> usize {
        self.rational.n1()
    }

    pub fn n2(&self) -> usize {
        self.rational.n2()
    }

    /// Total pole count `N` in the disk, counted with multiplicity.
    pub fn n(&self) -> usize {
        self.rational.n()
    }

    /// Poles of `Φ` with multiplicity, all inside the unit disk.
    pub fn poles_in_z(&self) -> Vec<(C64, usize)> {
        self.rational.poles_in_z()
    }

    /// Pole count (with multiplicity) strictly inside `|z| < rho`.
    pub fn poles_within(&self, rho: f64) -> usize {
        self.poles_in_z()
            .iter()
            .filter(|(p, _)| p.norm() < rho)
            .map(|(_, k)| k)
            .sum()
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.eval_d(z)?.0)
    }

    /// `(Φ(z), Φ'(z))`; the rational part is differentiated in closed form
    /// and the tail node-wise.
    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        let modulus = z.norm();
        if modulus > self.analytic_radius * (1.0 + 1e-12) {
            return Err(Error::DomainViolation { modulus, radius: self.analytic_radius });
        }
        let (rv, rd) = self.rational.eval_d(z)?;
        let (tv, td) = self.tail.eval_d(z)?;
        Ok((rv + tv, rd + td))
    }

    /// Resolvent symbol `h_λ = 1/(Φ − λ)`; validates that `λ` stays away from
    /// the sampled range of `Φ` over the closed disk.
    pub fn resolvent(&self, lambda: C64) -> Result<ResolventSymbol<'_>> {
        ResolventSymbol::new(self, lambda)
    }

    /// Serialize to the published JSON schema.
    pub fn to_json(&self) -> Value {
        let cpx = |v: &C64| json!([v.re, v.im]);
        json!({
            "poly": self.rational.poly.iter().map(cpx).collect::<Vec<_>>(),
            "poles": self.rational.poles.iter().map(|p| json!({
                "eta": cpx(&p.eta),
                "alphas": p.alphas.iter().map(cpx).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "tail": self.tail.to_json(),
            "analytic_radius": self.analytic_radius,
        })
    }

    pub fn from_json(v: &Value) -> Result<Symbol> {
        let obj = v.as_object().ok_or_else(|| Error::Schema("symbol must be a JSON object".into()))?;
        let cpx = |v: &Value| -> Result<C64> {
            let a = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Schema("complex values are [re, im] pairs".into()))?;
            Ok(c64(a[0].as_f64().unwrap_or(f64::NAN), a[1].as_f64().unwrap_or(f64::NAN)))
        };
        let poly = obj
            .get("poly")
            .and_then(|p| p.as_array())
            .ok_or_else(|| Error::Schema("missing \"poly\" array".into()))?
            .iter()
            .map(cpx)
            .collect::<Result<Vec<_>>>()?;
        let mut poles = Vec::new();
        for p in obj.get("poles").and_then(|p| p.as_array()).unwrap_or(&Vec::new()) {
            let eta = cpx(p.get("eta").ok_or_else(|| Error::Schema("pole missing \"eta\"".into()))?)?;
            let alphas = p
                .get("alphas")
                .and_then(|a| a.as_array())
                .ok_or_else(|| Error::Schema("pole missing \"alphas\"".into()))?
                .iter()
                .map(cpx)
                .collect::<Result<Vec<_>>>()?;
            poles.push(Pole { eta, alphas });
        }
        let tail = match obj.get("tail") {
            Some(Value::Null) | None => Expr::Const(c64(0.0, 0.0)),
            Some(t) => Expr::from_json(t)?,
        };
        let radius = obj
            .get("analytic_radius")
            .and_then(|r| r.as_f64())
            .ok_or_else(|| Error::Schema("missing numeric \"analytic_radius\"".into()))?;
        Symbol::new_unchecked(RationalPart::new(poly, poles)?, tail, radius)
    }
}

#[cfg(test)]
mod tests;
