//! Model Jacob's ladder φ₁ with φ₁′(t) = Z̃²(t).
//!
//! φ₁(T) = anchor_phi + ∫_{anchor_t}^T Z̃²(u) du, integrated with the 5-point
//! Gauss-Legendre rule on a uniform grid of cells. The table keeps φ₁ at
//! every `knot_stride`-th cell boundary; values in between are completed by
//! integrating the remaining cells, so [`LadderTable::phi1`] is accurate to
//! quadrature precision rather than interpolation precision.

mod interp;

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Error, Result};
use crate::primes::prime_pi;
use crate::quadrature::{
    gauss_legendre_5, gauss_legendre_5_nodes, gauss_legendre_5_weights, QuadratureConfig,
};
use crate::special_fn::{z_function_unchecked, ZSweep};
use crate::EULER_GAMMA;

pub use interp::MonotoneCubic;

/// Lower end of the supported ladder range, e².
pub const LADDER_T_MIN: f64 = 7.389_056_098_930_65;

/// 1 + c − ln 2π, the constant making ∫Z²/(ln t + shift) drift like (1 − c)π(t).
pub const MEAN_VALUE_SHIFT: f64 = 1.0 + EULER_GAMMA - 1.837_877_066_409_345_5;

/// Knot intervals integrated per parallel work item.
const CHUNK_KNOTS: usize = 512;

/// Denominator of Z̃² = Z² / D(t).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderWeight {
    /// D(t) = ln t + 1 + c − ln 2π. Matches the (1 − c)π(t) drift.
    #[default]
    MeanValue,
    /// D(t) = ln t.
    Logarithmic,
}

impl LadderWeight {
    #[inline]
    pub fn denominator(self, t: f64) -> f64 {
        match self {
            LadderWeight::MeanValue => t.ln() + MEAN_VALUE_SHIFT,
            LadderWeight::Logarithmic => t.ln(),
        }
    }

    /// Z̃²(t).
    #[inline]
    pub fn ztilde_sq(self, t: f64) -> f64 {
        let z = z_function_unchecked(t);
        z * z / self.denominator(t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderOptions {
    pub weight: LadderWeight,
    /// Cells between stored knots.
    pub knot_stride: usize,
    /// φ₁(t_lo); defaults to t_lo − (1 − c)π(t_lo).
    pub anchor_phi: Option<f64>,
}

impl Default for LadderOptions {
    fn default() -> Self {
        LadderOptions {
            weight: LadderWeight::default(),
            knot_stride: 1,
            anchor_phi: None,
        }
    }
}

/// A point on the ladder's graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderPoint {
    pub t: f64,
    pub phi1: f64,
}

impl LadderPoint {
    /// t − φ₁(t)
    pub fn drift(&self) -> f64 {
        self.t - self.phi1
    }
}

/// One row of [`drift_report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftRow {
    pub t: f64,
    pub phi1: f64,
    pub drift: f64,
    pub predicted: f64,
    pub ratio: f64,
}

/// The part of one grid cell overlapping an integration range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSegment {
    pub lo: f64,
    pub hi: f64,
    pub cell_start: f64,
    pub phi_at_cell_start: f64,
}

#[derive(Debug)]
pub struct LadderTable {
    anchor_t: f64,
    anchor_phi: f64,
    // anchor_t − anchor_phi, kept exactly when the default anchor is used
    anchor_drift: f64,
    t_hi: f64,
    step: f64,
    n_cells: usize,
    stride: usize,
    weight: LadderWeight,
    knots_phi: Vec<f64>,
    interp: OnceLock<MonotoneCubic>,
}

/// (1 − c)π(t)
pub fn predicted_drift(t: f64) -> Result<f64> {
    Ok((1.0 - EULER_GAMMA) * prime_pi(t)? as f64)
}

pub(crate) fn default_anchor_phi(t: f64) -> Result<f64> {
    Ok(t - predicted_drift(t)?)
}

impl LadderTable {
    pub fn build(
        t_lo: f64,
        t_hi: f64,
        opts: &LadderOptions,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        cfg.validate()?;
        if !(t_lo >= LADDER_T_MIN && t_lo < t_hi && t_hi <= crate::T_MAX) {
            return Err(domain!(
                "ladder range must satisfy e^2 <= t_lo < t_hi <= {:e}, got [{t_lo}, {t_hi}]",
                crate::T_MAX
            ));
        }
        if opts.knot_stride == 0 {
            return Err(domain!("knot_stride must be at least 1"));
        }
        let (anchor_phi, anchor_drift) = match opts.anchor_phi {
            Some(p) if p.is_finite() => (p, t_lo - p),
            Some(p) => return Err(domain!("anchor_phi must be finite, got {p}")),
            None => {
                let d = predicted_drift(t_lo)?;
                (t_lo - d, d)
            }
        };
        // step_at is nonincreasing in t, so its value at t_hi bounds the whole range
        let step = cfg.step.step_at(t_hi);
        let mut n_cells = ((t_hi - t_lo) / step).ceil().max(1.0) as usize;
        while n_cells > 1 && t_lo + (n_cells - 1) as f64 * step >= t_hi {
            n_cells -= 1;
        }
        let mut table = LadderTable {
            anchor_t: t_lo,
            anchor_phi,
            anchor_drift,
            t_hi,
            step,
            n_cells,
            stride: opts.knot_stride,
            weight: opts.weight,
            knots_phi: Vec::new(),
            interp: OnceLock::new(),
        };
        table.integrate_knots();
        Ok(table)
    }

    /// A ladder with the default anchor whose φ₁-range contains [phi_lo, phi_hi].
    pub fn covering(
        phi_lo: f64,
        phi_hi: f64,
        opts: &LadderOptions,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        if !(phi_lo < phi_hi) || !phi_hi.is_finite() {
            return Err(domain!("empty ladder range [{phi_lo}, {phi_hi}]"));
        }
        let mut t0 = phi_lo.max(LADDER_T_MIN);
        for _ in 0..6 {
            t0 = (phi_lo - 1.0 + predicted_drift(t0.min(crate::T_MAX))?).max(LADDER_T_MIN);
        }
        while default_anchor_phi(t0)? > phi_lo - 0.5 && t0 > LADDER_T_MIN {
            t0 = (t0 - 1.0).max(LADDER_T_MIN);
        }
        let anchor = default_anchor_phi(t0)?;
        if anchor > phi_lo {
            return Err(domain!(
                "no ladder anchored at t >= e^2 reaches down to phi = {phi_lo}"
            ));
        }
        let mut span = 1.3 * (phi_hi - anchor) + 2.0;
        loop {
            let t_hi = (t0 + span).min(crate::T_MAX);
            let opts = LadderOptions {
                anchor_phi: None,
                ..opts.clone()
            };
            let table = LadderTable::build(t0, t_hi, &opts, cfg)?;
            if table.phi_max() >= phi_hi {
                return Ok(table);
            }
            if t_hi >= crate::T_MAX {
                return Err(range!(
                    "phi = {phi_hi} is not reached below t = {:e}",
                    crate::T_MAX
                ));
            }
            span *= 1.6;
        }
    }

    fn integrate_knots(&mut self) {
        let n_knot_intervals = self.n_cells.div_ceil(self.stride);
        let n_chunks = n_knot_intervals.div_ceil(CHUNK_KNOTS);
        let increments: Vec<Vec<f64>> = (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let first = c * CHUNK_KNOTS;
                let last = ((c + 1) * CHUNK_KNOTS).min(n_knot_intervals);
                self.knot_increments(first, last)
            })
            .collect();
        let mut knots = Vec::with_capacity(n_knot_intervals + 1);
        let mut acc = NeumaierSum::new(self.anchor_phi);
        knots.push(self.anchor_phi);
        for inc in increments.into_iter().flatten() {
            acc.add(inc);
            knots.push(acc.value());
        }
        self.knots_phi = knots;
    }

    // ∫ Z̃² over knot intervals first..last, via the rotating-phase sweep.
    fn knot_increments(&self, first: usize, last: usize) -> Vec<f64> {
        let offsets = gauss_legendre_5_nodes(self.step);
        let weights = gauss_legendre_5_weights(self.step);
        let first_cell = first * self.stride;
        let mut sweep = ZSweep::new(self.anchor_t, self.step, &offsets, first_cell as u64);
        let mut z = [0.0; 5];
        let mut out = Vec::with_capacity(last - first);
        for k in first..last {
            let mut sum = NeumaierSum::new(0.0);
            let cells = (k * self.stride)..((k + 1) * self.stride).min(self.n_cells);
            for j in cells {
                if j + 1 == self.n_cells {
                    sum.add(self.cell_integral(j));
                    continue;
                }
                sweep.eval_cell(&mut z);
                let start = self.cell_start(j);
                let mut cell = 0.0;
                for i in 0..5 {
                    let t = start + offsets[i];
                    cell += weights[i] * z[i] * z[i] / self.weight.denominator(t);
                }
                sum.add(cell);
            }
            out.push(sum.value());
        }
        out
    }

    pub fn anchor_t(&self) -> f64 {
        self.anchor_t
    }

    pub fn anchor_phi(&self) -> f64 {
        self.anchor_phi
    }

    pub fn t_range(&self) -> (f64, f64) {
        (self.anchor_t, self.t_hi)
    }

    pub fn phi_max(&self) -> f64 {
        *self.knots_phi.last().expect("table has knots")
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn weight(&self) -> LadderWeight {
        self.weight
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// Z̃²(t) for this table's weight.
    pub fn ztilde_sq(&self, t: f64) -> f64 {
        self.weight.ztilde_sq(t)
    }

    #[inline]
    fn cell_start(&self, j: usize) -> f64 {
        self.anchor_t + j as f64 * self.step
    }

    #[inline]
    fn cell_end(&self, j: usize) -> f64 {
        if j + 1 >= self.n_cells {
            self.t_hi
        } else {
            self.cell_start(j + 1)
        }
    }

    fn knot_t(&self, k: usize) -> f64 {
        let j = k * self.stride;
        if j >= self.n_cells {
            self.t_hi
        } else {
            self.cell_start(j)
        }
    }

    fn cell_integral(&self, j: usize) -> f64 {
        gauss_legendre_5(|t| self.ztilde_sq(t), self.cell_start(j), self.cell_end(j))
    }

    /// ∫ Z̃² from the start of cell j to t.
    fn partial(&self, cell_start: f64, t: f64) -> f64 {
        gauss_legendre_5(|u| self.ztilde_sq(u), cell_start, t)
    }

    fn cell_index(&self, t: f64) -> usize {
        let mut j =
            (((t - self.anchor_t) / self.step).floor().max(0.0) as usize).min(self.n_cells - 1);
        while j > 0 && self.cell_start(j) > t {
            j -= 1;
        }
        while j + 1 < self.n_cells && self.cell_start(j + 1) <= t {
            j += 1;
        }
        j
    }

    // φ₁ at the start of cell j, walking from the nearest knot below.
    fn phi_at_cell_start(&self, j: usize) -> f64 {
        let k = j / self.stride;
        let mut acc = NeumaierSum::new(self.knots_phi[k]);
        for i in (k * self.stride)..j {
            acc.add(self.cell_integral(i));
        }
        acc.value()
    }

    fn check_t(&self, t: f64) -> Result<()> {
        if !(t >= self.anchor_t && t <= self.t_hi) {
            return Err(range!(
                "t = {t} outside ladder range [{}, {}]",
                self.anchor_t,
                self.t_hi
            ));
        }
        Ok(())
    }

    /// φ₁(t).
    pub fn phi1(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        let j = self.cell_index(t);
        let start = self.cell_start(j);
        Ok(self.phi_at_cell_start(j) + self.partial(start, t))
    }

    /// t − φ₁(t), measured from the anchor to avoid cancelling large values.
    pub fn drift(&self, t: f64) -> Result<f64> {
        let rise = self.phi1(t)? - self.anchor_phi;
        Ok((t - self.anchor_t) - rise + self.anchor_drift)
    }

    pub fn point(&self, t: f64) -> Result<LadderPoint> {
        Ok(LadderPoint {
            t,
            phi1: self.phi1(t)?,
        })
    }

    /// Monotone cubic interpolant through the stored knots.
    pub fn interpolant(&self) -> &MonotoneCubic {
        self.interp.get_or_init(|| {
            let xs: Vec<f64> = (0..self.knots_phi.len()).map(|k| self.knot_t(k)).collect();
            MonotoneCubic::new(xs, self.knots_phi.clone())
        })
    }

    /// φ₁(t) from the knot interpolant alone; cheaper but only accurate to
    /// the interpolation error of the knot spacing.
    pub fn phi1_interpolated(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        Ok(self.interpolant().eval(t))
    }

    /// t with φ₁(t) = y.
    pub fn phi1_inverse(&self, y: f64) -> Result<f64> {
        let (lo_phi, hi_phi) = (self.knots_phi[0], self.phi_max());
        if !(y >= lo_phi && y <= hi_phi) {
            return Err(range!(
                "phi = {y} outside ladder image [{lo_phi}, {hi_phi}]"
            ));
        }
        let last_knot = self.knots_phi.len() - 1;
        let k = (self.knots_phi.partition_point(|&v| v <= y).max(1) - 1).min(last_knot - 1);
        let first_cell = k * self.stride;
        let end_cell = ((k + 1) * self.stride).min(self.n_cells);
        let mut phi = self.knots_phi[k];
        let mut j = first_cell;
        let mut width = self.cell_integral(j);
        while j + 1 < end_cell && phi + width < y {
            phi += width;
            j += 1;
            width = self.cell_integral(j);
        }
        let start = self.cell_start(j);
        let end = self.cell_end(j);
        let target = (y - phi).clamp(0.0, width);
        self.solve_in_cell(start, end, target, width, y)
    }

    // Safeguarded Newton for ∫_start^t Z̃² = target on [start, end].
    fn solve_in_cell(&self, start: f64, end: f64, target: f64, width: f64, y: f64) -> Result<f64> {
        let tol = 2.0 * f64::EPSILON * y.abs().max(1.0);
        let (mut lo, mut hi) = (start, end);
        let mut t = if width > 0.0 {
            start + (end - start) * (target / width)
        } else {
            0.5 * (start + end)
        };
        for _ in 0..200 {
            let g = self.partial(start, t) - target;
            if g.abs() <= tol {
                return Ok(t);
            }
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            if hi - lo <= 2.0 * f64::EPSILON * t.abs() {
                return Ok(0.5 * (lo + hi));
            }
            let slope = self.ztilde_sq(t);
            let newton = t - g / slope;
            t = if slope > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Err(Error::Convergence(format!(
            "phi1_inverse did not converge for phi = {y}"
        )))
    }

    /// Cells overlapping [lo, hi], each clipped to the range, with φ₁ at the
    /// cell start.
    pub fn segments(&self, lo: f64, hi: f64) -> Result<Vec<CellSegment>> {
        self.check_t(lo)?;
        self.check_t(hi)?;
        if hi < lo {
            return Err(domain!("segment range reversed: [{lo}, {hi}]"));
        }
        let mut j = self.cell_index(lo);
        let mut phi = self.phi_at_cell_start(j);
        let mut out = Vec::new();
        loop {
            let start = self.cell_start(j);
            let end = self.cell_end(j);
            let seg_lo = lo.max(start);
            let seg_hi = hi.min(end);
            if seg_hi > seg_lo {
                out.push(CellSegment {
                    lo: seg_lo,
                    hi: seg_hi,
                    cell_start: start,
                    phi_at_cell_start: phi,
                });
            }
            if end >= hi || j + 1 >= self.n_cells {
                break;
            }
            phi += self.cell_integral(j);
            j += 1;
        }
        Ok(out)
    }

    /// φ₁(t) for t inside `seg`'s cell.
    pub fn phi_in_segment(&self, seg: &CellSegment, t: f64) -> f64 {
        seg.phi_at_cell_start + self.partial(seg.cell_start, t)
    }
}

/// Build a ladder anchored at t_lo with the default anchor and options.
pub fn build_ladder(t_lo: f64, t_hi: f64, cfg: &QuadratureConfig) -> Result<LadderTable> {
    LadderTable::build(t_lo, t_hi, &LadderOptions::default(), cfg)
}

pub fn phi1(table: &LadderTable, t: f64) -> Result<f64> {
    table.phi1(t)
}

pub fn phi1_inverse(table: &LadderTable, y: f64) -> Result<f64> {
    table.phi1_inverse(y)
}

/// Drift t − φ₁(t) against (1 − c)π(t) at each height.
pub fn drift_report(table: &LadderTable, heights: &[f64]) -> Result<Vec<DriftRow>> {
    heights
        .iter()
        .map(|&t| {
            let phi1 = table.phi1(t)?;
            let drift = table.drift(t)?;
            let predicted = predicted_drift(t)?;
            Ok(DriftRow {
                t,
                phi1,
                drift,
                predicted,
                ratio: drift / predicted,
            })
        })
        .collect()
}

/// Mean spacing of zeta zeros near t, 2π / ln(t/2π).
pub fn mean_zero_spacing(t: f64) -> f64 {
    2.0 * PI / (t / (2.0 * PI)).ln()
}

struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn new(init: f64) -> Self {
        NeumaierSum {
            sum: init,
            comp: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
