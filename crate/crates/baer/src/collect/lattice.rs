//! Integer row lattices with canonical Hermite form, Smith normal form, and
//! cokernel structure. Matrices here are small (tens of rows, single-digit
//! columns), so the elimination is plain big-integer arithmetic with
//! minimal-pivot selection and no modular shortcuts.

use crate::abelian::FinAbelian;
use crate::witt::factor;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;
use thiserror::Error;

/// Errors from lattice construction and quotient extraction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// A row does not match the ambient rank.
    #[error("row {row} has length {len}, expected ambient rank {ambient}")]
    RowLength { row: usize, len: usize, ambient: usize },
    /// A Smith diagonal entry was too large to factor.
    #[error("cannot factor smith diagonal entry {0}")]
    DiagonalTooLarge(String),
}

/// A sublattice of `Z^ambient` given by the row span of an integer matrix,
/// with a cached canonical Hermite form. Two lattices are equal exactly when
/// their Hermite forms coincide.
#[derive(Debug)]
pub struct IntLattice {
    ambient: usize,
    rows: Vec<Vec<BigInt>>,
    hermite: OnceLock<Vec<Vec<BigInt>>>,
}

impl Clone for IntLattice {
    fn clone(&self) -> Self {
        IntLattice {
            ambient: self.ambient,
            rows: self.rows.clone(),
            hermite: OnceLock::new(),
        }
    }
}

impl IntLattice {
    /// Lattice spanned by `rows` inside `Z^ambient`.
    pub fn new(ambient: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ambient {
                return Err(LatticeError::RowLength {
                    row: i,
                    len: r.len(),
                    ambient,
                });
            }
        }
        Ok(IntLattice {
            ambient,
            rows,
            hermite: OnceLock::new(),
        })
    }

    /// The lattice `s · Z^n`.
    pub fn scaled_identity(n: usize, s: &BigInt) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = s.clone();
                r
            })
            .collect();
        IntLattice {
            ambient: n,
            rows,
            hermite: OnceLock::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Canonical Hermite form of the row span: row echelon, positive pivots,
    /// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
    pub fn hermite(&self) -> &[Vec<BigInt>] {
        self.hermite
            .get_or_init(|| hermite_normal_form(self.rows.clone(), self.ambient))
    }

    /// Rank of the row span.
    pub fn rank(&self) -> usize {
        self.hermite().len()
    }

    /// Structure of `Z^ambient / rowspan`: torsion factors from the Smith
    /// diagonal plus the free rank.
    pub fn smith_quotient(&self) -> Result<SmithQuotient, LatticeError> {
        let diag = smith_normal_form(self.rows.clone(), self.ambient);
        let mut torsion = FinAbelian::trivial();
        for d in &diag {
            if d.is_one() {
                continue;
            }
            let d64 = u64::try_from(d).map_err(|_| {
                LatticeError::DiagonalTooLarge(d.to_string())
            })?;
            let fs = factor(d64)
                .map_err(|_| LatticeError::DiagonalTooLarge(d.to_string()))?;
            for (p, e) in fs {
                torsion.add_factor(p, e, BigUint::one());
            }
        }
        Ok(SmithQuotient {
            torsion,
            free_rank: self.ambient - diag.len(),
        })
    }
}

impl PartialEq for IntLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.hermite() == other.hermite()
    }
}
impl Eq for IntLattice {}

/// Equality of row spans via Hermite forms.
pub fn lattice_equal(a: &IntLattice, b: &IntLattice) -> bool {
    a == b
}

/// The cokernel shape of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithQuotient {
    /// Torsion part, canonical.
    pub torsion: FinAbelian,
    /// Rank of the free part.
    pub free_rank: usize,
}

/// Hermite normal form of the row span (canonical, zero rows dropped).
pub fn hermite_normal_form(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let (mut h, _) = hermite_with_transform(rows, cols);
    h.retain(|r| !r.iter().all(Zero::is_zero));
    h
}

/// Row-reduce to Hermite form, tracking a unimodular transform `u` with
/// `u * input = output`. The output keeps zero rows (at the bottom), so `u`
/// stays square.
pub fn hermite_with_transform(
    mut m: Vec<Vec<BigInt>>,
    cols: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = m.len();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == n {
            break;
        }
        // Reduce column `col` below `pivot_row` by repeated minimal-pivot
        // elimination until at most one nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..n {
                if m[i][col].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(j) if m[i][col].abs() < m[j][col].abs() => Some(i),
                    keep => keep,
                };
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..n {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[pivot_row][col]);
                row_sub_mul(&mut m, i, pivot_row, &q);
                row_sub_mul(&mut u, i, pivot_row, &q);
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in &mut m[pivot_row] {
                *x = -std::mem::take(x);
            }
            for x in &mut u[pivot_row] {
                *x = -std::mem::take(x);
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            if m[i][col].is_zero() {
                continue;
            }
            let q = m[i][col].div_floor(&m[pivot_row][col]);
            row_sub_mul(&mut m, i, pivot_row, &q);
            row_sub_mul(&mut u, i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (m, u)
}

fn row_sub_mul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    let dst_row = &mut m[dst];
    for (d, s) in dst_row.iter_mut().zip(src_row.iter()) {
        *d -= q * s;
    }
}

/// Smith normal form diagonal `d_1 | d_2 | ... | d_r` (positive entries,
/// zero tail omitted).
pub fn smith_normal_form(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag: Vec<BigInt> = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        // Find a nonzero entry of minimal absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((i, j)),
                    Some((bi, bj)) if m[i][j].abs() < m[bi][bj].abs() => Some((i, j)),
                    keep => keep,
                };
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(k, bi);
        for row in m.iter_mut() {
            row.swap(k, bj);
        }
        // Clear row and column k; restart if a remainder shrinks the pivot.
        let mut clean = true;
        for i in k + 1..rows {
            if m[i][k].is_zero() {
                continue;
            }
            let q = m[i][k].div_floor(&m[k][k]);
            row_sub_mul(&mut m, i, k, &q);
            if !m[i][k].is_zero() {
                clean = false;
            }
        }
        for j in k + 1..cols {
            if m[k][j].is_zero() {
                continue;
            }
            let q = m[k][j].div_floor(&m[k][k]);
            for row in m.iter_mut() {
                let s = row[k].clone();
                row[j] -= &q * s;
            }
            if !m[k][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility into the remaining block: if some entry is
        // not divisible by the pivot, fold its row in and redo this pivot.
        let pivot = m[k][k].clone();
        let offender = m[k + 1..rows]
            .iter()
            .position(|row| row[k + 1..cols].iter().any(|v| !(v % &pivot).is_zero()))
            .map(|off| k + 1 + off);
        if let Some(i) = offender {
            let minus_one = -BigInt::one();
            row_sub_mul(&mut m, k, i, &minus_one);
            continue;
        }
        diag.push(pivot.abs());
        k += 1;
    }
    diag
}
