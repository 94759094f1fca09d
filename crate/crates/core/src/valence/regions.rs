//! Grid decomposition of the plane into components of `ℂ ∖ f(ρ𝕋)` labelled
//! with their preimage count, plus the component adjacency graph with
//! shared-arc witnesses.

use super::curve::{curve_point_d, segment_distance, BoundaryCurve};
use super::winding::preimage_count;
use super::{AnalyticMap, ValenceConfig};
use crate::error::{Error, Result};
use crate::{c64, C64};
use rand::{Rng, SeedableRng};
use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct Component {
    pub id: usize,
    /// Number of preimages in `|z| < rho` for values in this component.
    pub k: usize,
    /// Deep-interior representative point (cell center farthest from the band).
    pub representative: C64,
    pub bounded: bool,
    pub cell_count: usize,
}

/// Adjacency edge witnessed by a boundary-curve arc: offsetting the curve
/// normal from the witness arc lands in the two flanking components.
#[derive(Debug, Clone)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// Parameter interval of the witnessing arc.
    pub witness_t: (f64, f64),
    pub witness_point: C64,
}

#[derive(Debug, Clone)]
pub struct RegionMap {
    pub lo: C64,
    pub hi: C64,
    pub grid_n: usize,
    /// Row-major component ids; `-1` marks the curve band.
    pub cells: Vec<i32>,
    pub components: Vec<Component>,
    pub adjacency: Vec<Edge>,
    /// Pole count of the map inside `|z| < rho` (the valence of the
    /// unbounded component).
    pub far_field_valence: usize,
    /// Width of the exclusion band around the curve.
    pub band: f64,
    pub rho: f64,
}

impl RegionMap {
    pub fn cell_width(&self) -> f64 {
        (self.hi.re - self.lo.re) / self.grid_n as f64
    }

    pub fn cell_height(&self) -> f64 {
        (self.hi.im - self.lo.im) / self.grid_n as f64
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> C64 {
        c64(
            self.lo.re + (ix as f64 + 0.5) * self.cell_width(),
            self.lo.im + (iy as f64 + 0.5) * self.cell_height(),
        )
    }

    fn cell_index(&self, w: C64) -> Option<usize> {
        let ix = ((w.re - self.lo.re) / self.cell_width()).floor();
        let iy = ((w.im - self.lo.im) / self.cell_height()).floor();
        if ix < 0.0 || iy < 0.0 || ix >= self.grid_n as f64 || iy >= self.grid_n as f64 {
            return None;
        }
        Some(iy as usize * self.grid_n + ix as usize)
    }

    /// Component containing `w`, if `w` falls in a labelled cell.
    pub fn component_at(&self, w: C64) -> Option<&Component> {
        let id = self.cells[self.cell_index(w)?];
        if id < 0 {
            None
        } else {
            Some(&self.components[id as usize])
        }
    }

    /// Bounded components with no preimages ("holes").
    pub fn holes(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.bounded && c.k == 0)
    }

    pub fn unbounded(&self) -> &Component {
        self.components
            .iter()
            .find(|c| !c.bounded)
            .expect("a region map always has an unbounded component")
    }

    pub fn max_k(&self) -> usize {
        self.components.iter().map(|c| c.k).max().unwrap_or(0)
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .adjacency
            .iter()
            .filter_map(|e| {
                if e.a == id {
                    Some(e.b)
                } else if e.b == id {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Re-count preimages at up to `per_component` random cells of every
    /// component and compare with the stored `k`.
    pub fn verify_k_constancy<M: AnalyticMap + ?Sized>(
        &self,
        map: &M,
        per_component: usize,
        cfg: &ValenceConfig,
    ) -> Result<()> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6b5f);
        for comp in &self.components {
            let members: Vec<usize> = self
                .cells
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == comp.id as i32)
                .map(|(i, _)| i)
                .collect();
            for _ in 0..per_component.min(members.len()) {
                let idx = members[rng.gen_range(0..members.len())];
                let w = self.cell_center(idx % self.grid_n, idx / self.grid_n);
                match preimage_count(map, w, self.rho, Some(self.band * 0.5), cfg) {
                    Ok(k) if k == comp.k => {}
                    Ok(k) => {
                        return Err(Error::GridTooCoarse { id: comp.id, cells: k.max(1) });
                    }
                    // cells hugging the band may legitimately refuse
                    Err(Error::TooCloseToCurve { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }
}

/// Build the region map for `map` at radius `rho` on a `grid_n × grid_n`
/// grid. When `cover_unit_disk` is set the bounding box is extended to
/// contain `[-1.5, 1.5]²` so that witnesses inside and outside the unit disk
/// can be located.
pub fn region_map<M: AnalyticMap + ?Sized>(
    map: &M,
    curve: &BoundaryCurve,
    grid_n: usize,
    cover_unit_disk: bool,
    cfg: &ValenceConfig,
) -> Result<RegionMap> {
    assert!(grid_n >= 16 && grid_n <= 4096, "grid_n must lie in [16, 4096]");
    let (clo, chi) = curve.bbox();
    let pad = 0.25 * (chi - clo).norm().max(1e-12);
    let mut lo = c64(clo.re - pad, clo.im - pad);
    let mut hi = c64(chi.re + pad, chi.im + pad);
    if cover_unit_disk {
        lo = c64(lo.re.min(-1.5), lo.im.min(-1.5));
        hi = c64(hi.re.max(1.5), hi.im.max(1.5));
    }

    let cw = (hi.re - lo.re) / grid_n as f64;
    let ch = (hi.im - lo.im) / grid_n as f64;
    let cell_diag = (cw * cw + ch * ch).sqrt();
    let band = (cfg.band_factor * curve.max_spacing).max(cell_diag);

    // ---- mark the curve band ----------------------------------------------
    let mut cells = vec![-2i32; grid_n * grid_n];
    let n_pts = curve.points.len();
    for i in 0..n_pts {
        let a = curve.points[i];
        let b = curve.points[(i + 1) % n_pts];
        let x0 = (((a.re.min(b.re) - band) - lo.re) / cw).floor().max(0.0) as usize;
        let x1 = ((((a.re.max(b.re) + band) - lo.re) / cw).floor() as isize).clamp(0, grid_n as isize - 1) as usize;
        let y0 = (((a.im.min(b.im) - band) - lo.im) / ch).floor().max(0.0) as usize;
        let y1 = ((((a.im.max(b.im) + band) - lo.im) / ch).floor() as isize).clamp(0, grid_n as isize - 1) as usize;
        for iy in y0..=y1 {
            for ix in x0..=x1 {
                let center = c64(lo.re + (ix as f64 + 0.5) * cw, lo.im + (iy as f64 + 0.5) * ch);
                if segment_distance(center, a, b) <= band {
                    cells[iy * grid_n + ix] = -1;
                }
            }
        }
    }

    // ---- flood fill the complement ----------------------------------------
    let mut comp_cells: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..cells.len() {
        if cells[start] != -2 {
            continue;
        }
        let id = comp_cells.len() as i32;
        let mut members = Vec::new();
        cells[start] = id;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            members.push(idx);
            let (ix, iy) = (idx % grid_n, idx / grid_n);
            let mut push = |jx: usize, jy: usize, cells: &mut Vec<i32>, queue: &mut VecDeque<usize>| {
                let j = jy * grid_n + jx;
                if cells[j] == -2 {
                    cells[j] = id;
                    queue.push_back(j);
                }
            };
            if ix > 0 {
                push(ix - 1, iy, &mut cells, &mut queue);
            }
            if ix + 1 < grid_n {
                push(ix + 1, iy, &mut cells, &mut queue);
            }
            if iy > 0 {
                push(ix, iy - 1, &mut cells, &mut queue);
            }
            if iy + 1 < grid_n {
                push(ix, iy + 1, &mut cells, &mut queue);
            }
        }
        comp_cells.push(members);
    }

    for (id, members) in comp_cells.iter().enumerate() {
        if members.len() < 4 {
            return Err(Error::GridTooCoarse { id, cells: members.len() });
        }
    }

    // ---- interior depth (multi-source BFS from the band) -------------------
    let mut depth = vec![u32::MAX; cells.len()];
    let mut queue = VecDeque::new();
    for idx in 0..cells.len() {
        if cells[idx] == -1 {
            depth[idx] = 0;
            queue.push_back(idx);
        }
    }
    // border counts as shallow so representatives prefer deep interior
    while let Some(idx) = queue.pop_front() {
        let (ix, iy) = (idx % grid_n, idx / grid_n);
        let d = depth[idx] + 1;
        for (jx, jy) in [
            (ix.wrapping_sub(1), iy),
            (ix + 1, iy),
            (ix, iy.wrapping_sub(1)),
            (ix, iy + 1),
        ] {
            if jx >= grid_n || jy >= grid_n {
                continue;
            }
            let j = jy * grid_n + jx;
            if depth[j] > d {
                depth[j] = d;
                queue.push_back(j);
            }
        }
    }

    // ---- per-component valence at deep representatives ---------------------
    let mut components = Vec::with_capacity(comp_cells.len());
    let far_field_valence = map.poles_within(curve.rho);
    for (id, members) in comp_cells.iter().enumerate() {
        let mut candidates: Vec<usize> = members.clone();
        candidates.sort_by_key(|&i| std::cmp::Reverse(depth[i].min(u32::MAX - 1)));
        candidates.truncate(12);
        let bounded = !members.iter().any(|&i| {
            let (ix, iy) = (i % grid_n, i / grid_n);
            ix == 0 || iy == 0 || ix == grid_n - 1 || iy == grid_n - 1
        });
        let mut picked = None;
        for &idx in &candidates {
            let w = c64(
                lo.re + ((idx % grid_n) as f64 + 0.5) * cw,
                lo.im + ((idx / grid_n) as f64 + 0.5) * ch,
            );
            match preimage_count(map, w, curve.rho, Some(band * 0.5), cfg) {
                Ok(k) => {
                    picked = Some((w, k));
                    break;
                }
                Err(Error::TooCloseToCurve { .. }) | Err(Error::PhaseUnresolved { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        let (representative, k) = picked.ok_or(Error::GridTooCoarse { id, cells: members.len() })?;
        components.push(Component { id, k, representative, bounded, cell_count: members.len() });
    }

    let mut rm = RegionMap {
        lo,
        hi,
        grid_n,
        cells,
        components,
        adjacency: Vec::new(),
        far_field_valence,
        band,
        rho: curve.rho,
    };

    // ---- adjacency from arc-normal probes ----------------------------------
    let tau = 2.0 * std::f64::consts::PI;
    let mut breaks: Vec<f64> = curve
        .self_intersections
        .iter()
        .flat_map(|s| [s.t1, s.t2])
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let arcs: Vec<(f64, f64)> = if breaks.is_empty() {
        vec![(0.0, tau)]
    } else {
        let mut arcs = Vec::with_capacity(breaks.len());
        for i in 0..breaks.len() {
            let a = breaks[i];
            let b = if i + 1 < breaks.len() { breaks[i + 1] } else { breaks[0] + tau };
            arcs.push((a, b));
        }
        arcs
    };

    let mut seen = std::collections::HashSet::new();
    for &(ta, tb) in &arcs {
        let mut votes: std::collections::HashMap<(usize, usize), (usize, f64, C64)> =
            std::collections::HashMap::new();
        for frac in [0.15, 0.3, 0.5, 0.7, 0.85] {
            let t = ta + frac * (tb - ta);
            let Ok((p, dp)) = curve_point_d(map, curve.rho, t) else { continue };
            if dp.norm() == 0.0 {
                continue;
            }
            let normal = c64(0.0, 1.0) * dp / dp.norm();
            for off_mul in [1.5, 2.5, 4.0] {
                let off = band * off_mul;
                let pa = rm.component_at(p + normal * off).map(|c| c.id);
                let pb = rm.component_at(p - normal * off).map(|c| c.id);
                if let (Some(a), Some(b)) = (pa, pb) {
                    if a != b {
                        let key = (a.min(b), a.max(b));
                        let e = votes.entry(key).or_insert((0, t, p));
                        e.0 += 1;
                    }
                    break;
                }
            }
        }
        if let Some(((a, b), (_, t, p))) = votes.into_iter().max_by_key(|(_, v)| v.0) {
            if seen.insert((a, b)) {
                rm.adjacency.push(Edge { a, b, witness_t: (ta, tb.min(ta + tau)), witness_point: p });
            } else if let Some(e) = rm.adjacency.iter_mut().find(|e| (e.a, e.b) == (a, b)) {
                // keep the earliest witness, nothing to update
                let _ = (e, t);
            }
        }
    }

    Ok(rm)
}
