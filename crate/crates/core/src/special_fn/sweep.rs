//! Batched Z(t) along a uniform grid of cells.
//!
//! Each main-sum term n^(−½) e^(−it ln n) is carried from one cell to the
//! next by a fixed rotation, so a cell costs complex multiply-adds instead of
//! one cosine per term and node. Phases are recomputed from scratch every
//! [`RESYNC_CELLS`] cells to bound rounding drift.

use super::riemann_siegel::{correction, main_sum_len, term_table};
use super::theta::theta_unchecked;
use super::{z_function_unchecked, RS_FROM};

const RESYNC_CELLS: u64 = 256;

/// Evaluates Z at `origin + k·step + offsets[j]` for consecutive cells k.
pub struct ZSweep {
    origin: f64,
    step: f64,
    offsets: Vec<f64>,
    cell: u64,
    since_sync: u64,
    // phase of term n at the current cell start, n^(−½) included
    re: Vec<f64>,
    im: Vec<f64>,
    step_re: Vec<f64>,
    step_im: Vec<f64>,
    node_re: Vec<Vec<f64>>,
    node_im: Vec<Vec<f64>>,
}

impl ZSweep {
    /// `offsets` are node positions relative to each cell start, within [0, step].
    pub fn new(origin: f64, step: f64, offsets: &[f64], first_cell: u64) -> Self {
        let mut sweep = ZSweep {
            origin,
            step,
            offsets: offsets.to_vec(),
            cell: first_cell,
            since_sync: 0,
            re: vec![0.0],
            im: vec![0.0],
            step_re: vec![1.0],
            step_im: vec![0.0],
            node_re: vec![vec![1.0]; offsets.len()],
            node_im: vec![vec![0.0]; offsets.len()],
        };
        sweep.resync();
        sweep
    }

    pub fn cell_start(&self) -> f64 {
        self.origin + self.cell as f64 * self.step
    }

    /// Z at every node of the current cell, then advance one cell.
    pub fn eval_cell(&mut self, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.offsets.len());
        let start = self.cell_start();
        for (j, slot) in out.iter_mut().enumerate() {
            let t = start + self.offsets[j];
            if t < RS_FROM {
                *slot = z_function_unchecked(t);
                continue;
            }
            let n = main_sum_len(t);
            self.ensure_terms(n);
            let (sre, sim) = rotated_sum(
                &self.re[1..=n],
                &self.im[1..=n],
                &self.node_re[j][1..=n],
                &self.node_im[j][1..=n],
            );
            let (sin, cos) = theta_unchecked(t).sin_cos();
            *slot = 2.0 * (cos * sre - sin * sim) + correction(t);
        }
        self.advance();
    }

    fn advance(&mut self) {
        self.cell += 1;
        self.since_sync += 1;
        if self.since_sync >= RESYNC_CELLS {
            self.resync();
            return;
        }
        for ((re, im), (sr, si)) in self
            .re
            .iter_mut()
            .zip(self.im.iter_mut())
            .zip(self.step_re.iter().zip(self.step_im.iter()))
        {
            let r = *re * sr - *im * si;
            let i = *re * si + *im * sr;
            *re = r;
            *im = i;
        }
    }

    fn resync(&mut self) {
        self.since_sync = 0;
        let t = self.cell_start();
        let table = term_table();
        for n in 1..self.re.len() {
            let (s, c) = (t * table.ln_n[n]).sin_cos();
            self.re[n] = table.inv_sqrt_n[n] * c;
            self.im[n] = -table.inv_sqrt_n[n] * s;
        }
    }

    fn ensure_terms(&mut self, n: usize) {
        if n < self.re.len() {
            return;
        }
        let table = term_table();
        let t = self.cell_start();
        for m in self.re.len()..=n {
            let ln = table.ln_n[m];
            let w = table.inv_sqrt_n[m];
            let (s, c) = (t * ln).sin_cos();
            self.re.push(w * c);
            self.im.push(-w * s);
            let (s, c) = (self.step * ln).sin_cos();
            self.step_re.push(c);
            self.step_im.push(-s);
            for (j, off) in self.offsets.iter().enumerate() {
                let (s, c) = (off * ln).sin_cos();
                self.node_re[j].push(c);
                self.node_im[j].push(-s);
            }
        }
    }
}

// Σ (a · b) over complex pairs, four independent accumulators.
#[inline]
fn rotated_sum(are: &[f64], aim: &[f64], bre: &[f64], bim: &[f64]) -> (f64, f64) {
    let n = are.len();
    let (aim, bre, bim) = (&aim[..n], &bre[..n], &bim[..n]);
    let mut r = [0.0f64; 4];
    let mut i = [0.0f64; 4];
    let quads = are
        .chunks_exact(4)
        .zip(aim.chunks_exact(4))
        .zip(bre.chunks_exact(4).zip(bim.chunks_exact(4)));
    for ((x, y), (u, v)) in quads {
        for l in 0..4 {
            r[l] += x[l] * u[l] - y[l] * v[l];
            i[l] += x[l] * v[l] + y[l] * u[l];
        }
    }
    for k in n - n % 4..n {
        r[0] += are[k] * bre[k] - aim[k] * bim[k];
        i[0] += are[k] * bim[k] + aim[k] * bre[k];
    }
    (r[0] + r[1] + r[2] + r[3], i[0] + i[1] + i[2] + i[3])
}
