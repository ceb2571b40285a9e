//! Howell normal form for row spans over a Galois ring.
//!
//! `GR(p^a, m)` is a chain ring, so every entry is `p^v * unit`; pivots are
//! normalized to `p^v`, entries above a pivot are reduced coefficientwise
//! modulo `p^v`, and the annihilator multiple `p^{a-v} * row` of each pivot
//! row is pushed back into the pending set. The result is canonical, and
//! greedy reduction decides membership.
//!
//! Rows may carry extra "tag" columns that are never pivoted on; reducing a
//! vector then also accumulates the matching combination of tags.

use crate::ring::{GaloisRing, GrElem};

#[derive(Clone, Debug)]
pub struct HowellForm {
    ring: GaloisRing,
    /// Number of pivoting columns; rows may be longer (tags).
    n: usize,
    rows: Vec<Vec<GrElem>>,
    pivots: Vec<(usize, u32)>,
}

impl PartialEq for HowellForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.pivots == other.pivots && self.rows == other.rows
    }
}
impl Eq for HowellForm {}

fn axpy(ring: &GaloisRing, dst: &mut [GrElem], k: &GrElem, src: &[GrElem]) {
    // dst -= k * src
    for (d, s) in dst.iter_mut().zip(src) {
        if !ring.is_zero(s) {
            *d = ring.sub(d, &ring.mul(k, s));
        }
    }
}

impl HowellForm {
    /// Canonical form of the span of `rows` (each of length `n`).
    pub fn new(ring: &GaloisRing, n: usize, rows: Vec<Vec<GrElem>>) -> Self {
        Self::build(ring, n, rows)
    }

    /// Form over the first `n` columns of augmented rows; the remaining
    /// columns are carried along as tags.
    pub fn with_tags(ring: &GaloisRing, n: usize, rows: Vec<Vec<GrElem>>) -> Self {
        Self::build(ring, n, rows)
    }

    fn build(ring: &GaloisRing, n: usize, rows: Vec<Vec<GrElem>>) -> Self {
        let a = ring.a();
        let head_zero = |r: &Vec<GrElem>| r[..n].iter().all(|c| ring.is_zero(c));
        let mut pending: Vec<Vec<GrElem>> = rows.into_iter().filter(|r| !head_zero(r)).collect();
        let mut out: Vec<Vec<GrElem>> = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..n {
            let best = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| !ring.is_zero(&r[c]))
                .min_by_key(|(_, r)| ring.valuation(&r[c]))
                .map(|(i, _)| i);
            let Some(idx) = best else { continue };
            let mut row = pending.swap_remove(idx);
            let v = ring.valuation(&row[c]);
            let unit = ring.div_p_pow(&row[c], v);
            let inv = ring.invert(&unit).expect("unit part is a unit");
            for e in row.iter_mut() {
                *e = ring.mul(e, &inv);
            }
            for s in pending.iter_mut() {
                if ring.is_zero(&s[c]) {
                    continue;
                }
                let k = ring.div_p_pow(&s[c], v);
                axpy(ring, s, &k, &row);
            }
            pending.retain(|r| !head_zero(r));
            if v > 0 {
                let ann: Vec<GrElem> = row.iter().map(|e| ring.mul_p_pow(e, a - v)).collect();
                if !head_zero(&ann) {
                    pending.push(ann);
                }
            }
            out.push(row);
            pivots.push((c, v));
        }
        // reduce entries above each pivot modulo p^v
        let pv: Vec<u64> = pivots.iter().map(|&(_, v)| ring.p().pow(v)).collect();
        for i in 0..out.len() {
            let (c, _) = pivots[i];
            let (head, tail) = out.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let e = &row[c];
                if ring.is_zero(e) {
                    continue;
                }
                let k = ring.from_coeffs(
                    &e.coeffs().iter().map(|x| x / pv[i]).collect::<Vec<_>>(),
                );
                if !ring.is_zero(&k) {
                    axpy(ring, row, &k, pivot_row);
                }
            }
        }
        HowellForm {
            ring: ring.clone(),
            n,
            rows: out,
            pivots,
        }
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }
    pub fn width(&self) -> usize {
        self.n
    }
    pub fn rows(&self) -> &[Vec<GrElem>] {
        &self.rows
    }
    /// `(column, p-valuation)` of each pivot, in row order.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    /// `log_p` of the span's cardinality: `Σ m (a - v_i)`.
    pub fn log_p_size(&self) -> u64 {
        let a = self.ring.a() as u64;
        let m = self.ring.m() as u64;
        self.pivots.iter().map(|&(_, v)| m * (a - v as u64)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Greedy reduction; returns the residual and the accumulated tags.
    pub fn reduce(&self, v: &[GrElem]) -> (Vec<GrElem>, Vec<GrElem>) {
        let ring = &self.ring;
        let width = self.rows.first().map_or(self.n, |r| r.len());
        let mut residual: Vec<GrElem> = (0..self.n)
            .map(|i| v.get(i).cloned().unwrap_or_else(|| ring.zero()))
            .collect();
        let mut tags = vec![ring.zero(); width - self.n];
        for (row, &(c, pv)) in self.rows.iter().zip(&self.pivots) {
            let e = &residual[c];
            if ring.is_zero(e) {
                continue;
            }
            if ring.valuation(e) < pv {
                break;
            }
            let k = ring.div_p_pow(e, pv);
            axpy(ring, &mut residual, &k, &row[..self.n]);
            let neg = ring.neg(&k);
            axpy(ring, &mut tags, &neg, &row[self.n..]);
        }
        (residual, tags)
    }

    pub fn contains(&self, v: &[GrElem]) -> bool {
        debug_assert!(v.len() <= self.n);
        self.reduce(v).0.iter().all(|c| self.ring.is_zero(c))
    }

    /// Tags of a combination of rows equal to `v`, if `v` is in the span.
    pub fn express(&self, v: &[GrElem]) -> Option<Vec<GrElem>> {
        let (res, tags) = self.reduce(v);
        res.iter().all(|c| self.ring.is_zero(c)).then_some(tags)
    }

    /// Whether every row of `self` lies in the span of `other`.
    pub fn is_subset_of(&self, other: &HowellForm) -> bool {
        self.rows.iter().all(|r| other.contains(&r[..self.n]))
    }
}
