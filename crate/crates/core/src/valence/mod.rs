//! Geometry engine: boundary curves, preimage counts through the argument
//! principle, and the decomposition of the plane into components of constant
//! valence with an adjacency graph.

mod curve;
mod general_position;
mod regions;
mod winding;

pub use curve::{BoundaryCurve, SelfIntersection};
pub use general_position::{general_position, GeneralPositionReport};
pub use regions::{Component, Edge, RegionMap};
pub use winding::{preimage_count, winding_number};

use crate::error::Result;
use crate::expr::Expr;
use crate::symbol::{ResolventSymbol, Symbol};
use crate::C64;

/// Any map analytic on a neighbourhood of the circles it is probed on,
/// except for finitely many poles; the argument-principle machinery only
/// needs evaluation, derivatives and pole bookkeeping.
pub trait AnalyticMap {
    fn eval(&self, z: C64) -> Result<C64>;
    /// `(f, f')`.
    fn eval_d(&self, z: C64) -> Result<(C64, C64)>;
    /// Pole count with multiplicity strictly inside `|z| < rho`.
    fn poles_within(&self, rho: f64) -> usize;
    /// Largest radius the map claims to be meromorphic on.
    fn analytic_radius(&self) -> f64;
}

impl AnalyticMap for Symbol {
    fn eval(&self, z: C64) -> Result<C64> {
        Symbol::eval(self, z)
    }
    fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        Symbol::eval_d(self, z)
    }
    fn poles_within(&self, rho: f64) -> usize {
        Symbol::poles_within(self, rho)
    }
    fn analytic_radius(&self) -> f64 {
        Symbol::analytic_radius(self)
    }
}

impl AnalyticMap for ResolventSymbol<'_> {
    fn eval(&self, z: C64) -> Result<C64> {
        ResolventSymbol::eval(self, z)
    }
    fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        ResolventSymbol::eval_d(self, z)
    }
    fn poles_within(&self, _rho: f64) -> usize {
        // h_λ is analytic wherever Φ is defined: poles of Φ become zeros
        0
    }
    fn analytic_radius(&self) -> f64 {
        self.base().analytic_radius()
    }
}

/// A bare analytic expression treated as a map (no poles), e.g. the inner
/// function `h` behind the figure fixtures.
#[derive(Debug, Clone)]
pub struct ExprMap {
    pub expr: Expr,
    pub radius: f64,
}

impl ExprMap {
    pub fn new(expr: Expr, radius: f64) -> Self {
        ExprMap { expr, radius }
    }
}

impl AnalyticMap for ExprMap {
    fn eval(&self, z: C64) -> Result<C64> {
        self.expr.eval(z)
    }
    fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        self.expr.eval_d(z)
    }
    fn poles_within(&self, _rho: f64) -> usize {
        0
    }
    fn analytic_radius(&self) -> f64 {
        self.radius
    }
}

/// Tunables for the curve and region machinery. All defaults follow the
/// documented constants; everything is deterministic given this struct.
#[derive(Debug, Clone)]
pub struct ValenceConfig {
    /// Adjacent curve samples must be closer than this fraction of the curve
    /// diameter in the image.
    pub mesh_rel: f64,
    /// Cells within `band_factor × max adjacent spacing` of the curve are
    /// left unlabelled.
    pub band_factor: f64,
    /// Self-intersections require at least this crossing angle (degrees).
    pub transversality_min_deg: f64,
    /// `Φ'` must exceed this on the circle for general position.
    pub derivative_min: f64,
    /// Hard cap on adaptive curve samples.
    pub max_samples: usize,
    /// Maximum bisection depth in the winding walk.
    pub max_bisect_depth: u32,
    /// Seed for the deterministic spot-check sampling.
    pub seed: u64,
}

impl Default for ValenceConfig {
    fn default() -> Self {
        ValenceConfig {
            mesh_rel: 1e-3,
            band_factor: 2.0,
            transversality_min_deg: 5.0,
            derivative_min: 1e-8,
            max_samples: 1 << 22,
            max_bisect_depth: 40,
            seed: 0,
        }
    }
}

/// Radius used for closed-disk ("at `rho` slightly above 1") counting when
/// the map extends past the circle.
pub fn rho_plus(analytic_radius: f64) -> f64 {
    (1.01f64).min((1.0 + analytic_radius) / 2.0)
}
