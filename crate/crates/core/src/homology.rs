//! Reduced homology over a prime field `F_ℓ` by sparse column reduction.
//!
//! Chain groups are indexed by cells in their stored order. `∂_0` is the
//! augmentation `C_0 → F_ℓ`, so ranks give reduced Betti numbers directly:
//! `b̃_d = c_d - rank ∂_d - rank ∂_{d+1}`.

use serde::Serialize;

use crate::arith::require_prime;
use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    l: u64,
}

impl PrimeField {
    /// Moduli are capped at `2^31` so products fit in `u64`.
    pub fn new(l: u64) -> Result<Self> {
        require_prime(l, "field characteristic")?;
        if l >= 1 << 31 {
            return Err(Error::shape(format!("field characteristic {l} exceeds 2^31")));
        }
        Ok(PrimeField { l })
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.l as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.l) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.l - b as u64) % self.l) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.l) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let (mut base, mut e, mut acc) = (a as u64, self.l - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.l;
            }
            base = base * base % self.l;
            e >>= 1;
        }
        acc as u32
    }
}

/// Column-compressed sparse matrix over `F_ℓ`; entries are nonzero residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: Vec<u32>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, col_ptr: vec![0], row_idx: Vec::new(), vals: Vec::new() }
    }

    /// Appends a column; zero entries are dropped and repeated rows summed.
    pub fn push_col(&mut self, field: PrimeField, entries: &[(u32, i64)]) {
        let mut col: Vec<(u32, u32)> = entries.iter().map(|&(r, v)| (r, field.from_i64(v))).collect();
        col.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(col.len());
        for (r, v) in col {
            debug_assert!((r as usize) < self.rows);
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 = field.add(last.1, v),
                _ => merged.push((r, v)),
            }
        }
        for (r, v) in merged.into_iter().filter(|e| e.1 != 0) {
            self.row_idx.push(r);
            self.vals.push(v);
        }
        self.col_ptr.push(self.row_idx.len());
    }

    pub fn from_dense(field: PrimeField, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(rows);
        for j in 0..cols {
            let col: Vec<(u32, i64)> = (0..rows).map(|i| (i as u32, dense[i][j])).collect();
            m.push_col(field, &col);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Entries of column `j`, rows increasing.
    pub fn col(&self, j: usize) -> impl Iterator<Item = (u32, u32)> + '_ {
        let r = self.col_ptr[j]..self.col_ptr[j + 1];
        self.row_idx[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    /// `self · rhs`; `None` on a shape mismatch.
    pub fn mul(&self, field: PrimeField, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        if self.cols() != rhs.rows {
            return None;
        }
        let mut out = SparseMatrix::new(self.rows);
        let mut acc: Vec<(u32, i64)> = Vec::new();
        for j in 0..rhs.cols() {
            acc.clear();
            for (k, b) in rhs.col(j) {
                for (i, a) in self.col(k as usize) {
                    acc.push((i, field.mul(a, b) as i64));
                }
            }
            out.push_col(field, &acc);
        }
        Some(out)
    }
}

/// `col -= factor · pivot`, both sorted by row.
fn axpy(field: PrimeField, col: &[(u32, u32)], factor: u32, pivot: &[(u32, u32)], out: &mut Vec<(u32, u32)>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < col.len() || j < pivot.len() {
        let take_col = j == pivot.len() || (i < col.len() && col[i].0 < pivot[j].0);
        let take_piv = i == col.len() || (j < pivot.len() && pivot[j].0 < col[i].0);
        if take_col {
            out.push(col[i]);
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, field.sub(0, field.mul(factor, pivot[j].1))));
            j += 1;
        } else {
            let v = field.sub(col[i].1, field.mul(factor, pivot[j].1));
            if v != 0 {
                out.push((col[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
}

/// Reduces columns left to right against lowest-row pivots. Returns the
/// rank and the pivot row of every nonzero reduced column. Columns listed in
/// `skip` are known to reduce to zero and are not touched.
fn reduce(field: PrimeField, m: &SparseMatrix, skip: Option<&[bool]>) -> (usize, Vec<u32>) {
    // pivot_of[row] = index into `pivots` of the stored column with that lowest row
    let mut pivot_of: Vec<u32> = vec![u32::MAX; m.rows];
    let mut pivots: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut pivot_rows: Vec<u32> = Vec::new();
    let mut col: Vec<(u32, u32)> = Vec::new();
    let mut scratch: Vec<(u32, u32)> = Vec::new();
    for j in 0..m.cols() {
        if skip.is_some_and(|s| s[j]) {
            continue;
        }
        col.clear();
        col.extend(m.col(j));
        while let Some(&(low, v)) = col.last() {
            let k = pivot_of[low as usize];
            if k == u32::MAX {
                let inv = field.inv(v);
                for e in col.iter_mut() {
                    e.1 = field.mul(e.1, inv);
                }
                pivot_of[low as usize] = pivots.len() as u32;
                pivots.push(col.clone());
                pivot_rows.push(low);
                break;
            }
            axpy(field, &col, v, &pivots[k as usize], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
        }
    }
    (pivots.len(), pivot_rows)
}

pub fn rank(field: PrimeField, m: &SparseMatrix) -> usize {
    reduce(field, m, None).0
}

/// Augmented chain complex: `boundaries[0]` is the augmentation and
/// `boundaries[d]` is `∂_d : C_d → C_{d-1}`.
#[derive(Debug, Clone)]
pub struct ChainComplexFp {
    pub field: PrimeField,
    pub cell_counts: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexFp {
    pub fn new(field: PrimeField, cell_counts: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() != cell_counts.len() {
            return Err(Error::shape("one boundary matrix per dimension"));
        }
        for (d, m) in boundaries.iter().enumerate() {
            let rows = if d == 0 { 1 } else { cell_counts[d - 1] };
            if m.cols() != cell_counts[d] || m.rows() != rows {
                return Err(Error::shape(format!("boundary {d} is {}x{}", m.rows(), m.cols())));
            }
        }
        Ok(ChainComplexFp { field, cell_counts, boundaries })
    }

    /// Checks `∂_{d-1} ∘ ∂_d = 0` for every `d ≥ 1`, including the augmentation.
    pub fn verify_boundary_squared_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(self.field, &w[1]).is_some_and(|prod| prod.nnz() == 0))
    }
}

/// Boundary matrices of a complex with signs reduced mod `ℓ`.
pub fn boundary_matrices(c: &EquivariantComplex, field: PrimeField) -> ChainComplexFp {
    let counts = c.cell_counts();
    let mut boundaries = Vec::with_capacity(counts.len());
    let mut aug = SparseMatrix::new(1);
    for _ in 0..counts.first().copied().unwrap_or(0) {
        aug.push_col(field, &[(0, 1)]);
    }
    if !counts.is_empty() {
        boundaries.push(aug);
    }
    let mut buf = Vec::new();
    let mut entries = Vec::new();
    for d in 1..counts.len() {
        let mut m = SparseMatrix::new(counts[d - 1]);
        for idx in 0..counts[d] {
            c.boundary_entries(d, idx, &mut buf);
            entries.clear();
            entries.extend(buf.iter().map(|&(r, s)| (r, s as i64)));
            m.push_col(field, &entries);
        }
        boundaries.push(m);
    }
    ChainComplexFp { field, cell_counts: counts, boundaries }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub field: u64,
    pub cell_counts: Vec<usize>,
    /// `ranks[d] = rank ∂_d`, `ranks[0]` the augmentation.
    pub ranks: Vec<usize>,
    /// `b̃_{-1}`: 1 for the empty complex, else 0.
    pub reduced_minus_one: u64,
    /// `reduced[d] = b̃_d` for `0 ≤ d ≤ dim`.
    pub reduced: Vec<u64>,
}

impl BettiVector {
    /// Ordinary Betti numbers.
    pub fn unreduced(&self) -> Vec<u64> {
        let mut b = self.reduced.clone();
        if let Some(b0) = b.first_mut() {
            *b0 += 1;
        }
        b
    }

    /// Largest `k ≥ -2` with `b̃_i = 0` for `-1 ≤ i ≤ k`; `i64::MAX` when
    /// every reduced Betti number vanishes.
    pub fn connectivity(&self) -> i64 {
        if self.reduced_minus_one != 0 {
            return -2;
        }
        match self.reduced.iter().position(|&b| b != 0) {
            Some(d) => d as i64 - 1,
            None => i64::MAX,
        }
    }

    /// `Σ (-1)^d c_d - 1 = Σ_{d ≥ -1} (-1)^d b̃_d`.
    pub fn euler_consistent(&self) -> bool {
        let alt = |v: &mut dyn Iterator<Item = i128>| v.enumerate().map(|(d, x)| if d % 2 == 0 { x } else { -x }).sum::<i128>();
        let chi = alt(&mut self.cell_counts.iter().map(|&c| c as i128));
        let reduced = alt(&mut self.reduced.iter().map(|&b| b as i128));
        chi - 1 == reduced - self.reduced_minus_one as i128
    }
}

pub fn betti(cc: &ChainComplexFp) -> BettiVector {
    let top = cc.cell_counts.len();
    let mut ranks = vec![0usize; top + 1];
    // clearing: a column of ∂_d indexed by a pivot row of ∂_{d+1} is a boundary, so it reduces to zero
    let mut cleared: Option<Vec<bool>> = None;
    for d in (0..top).rev() {
        let m = &cc.boundaries[d];
        let (r, pivot_rows) = reduce(cc.field, m, cleared.as_deref());
        ranks[d] = r;
        let mut mask = vec![false; m.rows()];
        for row in pivot_rows {
            mask[row as usize] = true;
        }
        cleared = Some(mask);
    }
    let reduced = (0..top).map(|d| (cc.cell_counts[d] - ranks[d] - ranks[d + 1]) as u64).collect();
    let reduced_minus_one = if top == 0 { 1 } else { 1 - ranks[0] as u64 };
    ranks.truncate(top);
    BettiVector {
        field: cc.field.modulus(),
        cell_counts: cc.cell_counts.clone(),
        ranks,
        reduced_minus_one,
        reduced,
    }
}

pub fn betti_of(c: &EquivariantComplex, field: u64) -> Result<BettiVector> {
    let field = PrimeField::new(field)?;
    Ok(betti(&boundary_matrices(c, field)))
}

/// Homological connectivity over `F_ℓ`; see [`BettiVector::connectivity`].
pub fn connectivity(c: &EquivariantComplex, field: u64) -> Result<i64> {
    Ok(betti_of(c, field)?.connectivity())
}
