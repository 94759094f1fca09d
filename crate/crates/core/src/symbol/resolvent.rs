//! Resolvent symbols `h_λ(z) = 1/(Φ(z) − λ)` for `λ` outside the closure of
//! the symbol range; `h_λ` is analytic and bounded in the disk and drives the
//! increasing-argument and descending-valence checks.

use super::Symbol;
use crate::error::{Error, Result};
use crate::{c64, C64};

/// Values of `Φ − λ` closer to zero than this abort resolvent construction.
pub const RESOLVENT_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ResolventSymbol<'a> {
    base: &'a Symbol,
    lambda: C64,
}

impl<'a> ResolventSymbol<'a> {
    /// Validate `λ` and wrap.
    ///
    /// Two guards: the boundary samples of `Φ` must stay at least
    /// [`RESOLVENT_CUTOFF`] away from `λ`, and the argument-principle count
    /// of solutions of `Φ = λ` in the open disk must be zero.
    pub fn new(base: &'a Symbol, lambda: C64) -> Result<Self> {
        let mut min_dist = f64::INFINITY;
        let m = 1usize << 12;
        for j in 0..m {
            let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let z = c64(t.cos(), t.sin());
            min_dist = min_dist.min((base.eval(z)? - lambda).norm());
        }
        if min_dist < RESOLVENT_CUTOFF {
            return Err(Error::LambdaInRange { lambda, dist: min_dist });
        }
        let cfg = crate::valence::ValenceConfig::default();
        let count = crate::valence::preimage_count(base, lambda, 1.0, None, &cfg)?;
        if count > 0 {
            return Err(Error::LambdaInRange { lambda, dist: 0.0 });
        }
        Ok(ResolventSymbol { base, lambda })
    }

    pub fn base(&self) -> &Symbol {
        self.base
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.eval_d(z)?.0)
    }

    /// `(h_λ, h_λ')` by the quotient rule: `h' = −Φ'/(Φ−λ)²`.
    ///
    /// At a pole of `Φ` the resolvent extends analytically by zero.
    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        match self.base.eval_d(z) {
            Ok((v, d)) => {
                let den = v - self.lambda;
                if den.norm() < RESOLVENT_CUTOFF {
                    return Err(Error::LambdaInRange { lambda: self.lambda, dist: den.norm() });
                }
                let h = 1.0 / den;
                Ok((h, -d * h * h))
            }
            Err(Error::PoleHit { .. }) => Ok((c64(0.0, 0.0), self.derivative_at_pole(z))),
            Err(e) => Err(e),
        }
    }

    /// Derivative of `h_λ` across a pole of `Φ`: zero for pole order ≥ 2,
    /// and the analytic continuation value for simple poles (finite either
    /// way, so the curve machinery can sample right through).
    fn derivative_at_pole(&self, z: C64) -> C64 {
        let h = 1e-7;
        let a = self.eval(z + c64(h, 0.0)).unwrap_or(c64(0.0, 0.0));
        let b = self.eval(z - c64(h, 0.0)).unwrap_or(c64(0.0, 0.0));
        (a - b) / c64(2.0 * h, 0.0)
    }
}
