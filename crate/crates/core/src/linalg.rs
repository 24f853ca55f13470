//! Exact linear algebra over K = F_{q^{2m}} and over the subfield F_q.
//!
//! Plain Gauss–Jordan elimination with first-nonzero pivoting and
//! left-to-right column order: the arithmetic is exact, so outputs are
//! canonical and stable across runs.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{same_tower, FieldElement, FieldTower, TowerExt};

// ---------------------------------------------------------------------------
// Matrices over K
// ---------------------------------------------------------------------------

/// A dense row-major matrix over K.
#[derive(Clone, PartialEq)]
pub struct MatrixK {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    tower: Arc<FieldTower>,
}

impl std::fmt::Debug for MatrixK {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixK {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{}", self.at(i, j).canonical()))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatrixK {
    pub fn from_rows(tower: &Arc<FieldTower>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for x in row {
                if !same_tower(x.tower(), tower) {
                    return Err(Error::DimensionMismatch(
                        "entry from a different tower".into(),
                    ));
                }
                entries.push(x);
            }
        }
        Ok(MatrixK {
            rows: nrows,
            cols: ncols,
            entries,
            tower: Arc::clone(tower),
        })
    }

    pub fn zero(tower: &Arc<FieldTower>, rows: usize, cols: usize) -> Self {
        MatrixK {
            rows,
            cols,
            entries: vec![tower.zero(); rows * cols],
            tower: Arc::clone(tower),
        }
    }

    pub fn identity(tower: &Arc<FieldTower>, n: usize) -> Self {
        let mut m = Self::zero(tower, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = tower.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<FieldElement> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> MatrixK {
        let mut out = Self::zero(&self.tower, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Conjugate transpose: (A†)_{ij} = σ(A_{ji}).
    pub fn dagger(&self) -> MatrixK {
        let mut out = Self::zero(&self.tower, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).sigma();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &MatrixK) -> Result<MatrixK> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(&self.tower, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(l, j);
                    *out.at_mut(i, j) = out.at(i, j) + &add;
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form together with the rank and pivot columns.
    pub fn rref(&self) -> (MatrixK, usize, Vec<usize>) {
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..r.cols {
            if pivot_row == r.rows {
                break;
            }
            let found = (pivot_row..r.rows).find(|&i| !r.at(i, col).is_zero());
            let Some(found) = found else { continue };
            r.swap_rows(pivot_row, found);
            let inv = r.at(pivot_row, col).inverse().expect("nonzero pivot");
            for j in col..r.cols {
                *r.at_mut(pivot_row, j) = r.at(pivot_row, j) * &inv;
            }
            for i in 0..r.rows {
                if i == pivot_row || r.at(i, col).is_zero() {
                    continue;
                }
                let factor = r.at(i, col).clone();
                for j in col..r.cols {
                    let sub = &factor * r.at(pivot_row, j);
                    *r.at_mut(i, j) = r.at(i, j) - &sub;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (r, pivots.len(), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// A basis of {z : Az = 0}, one column vector per free column.
    pub fn right_kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, _, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for col in 0..self.cols {
            if piv_iter.peek() == Some(&col) {
                piv_iter.next();
            } else {
                free_cols.push(col);
            }
        }
        for &f in &free_cols {
            let mut v = vec![self.tower.zero(); self.cols];
            v[f] = self.tower.one();
            for (row, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(row, f);
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical basis of the row space: RREF with zero rows dropped.
    pub fn row_space_basis(&self) -> MatrixK {
        let (r, rank, _) = self.rref();
        let rows = (0..rank).map(|i| r.row_vec(i)).collect();
        MatrixK::from_rows(&self.tower, rows).expect("rows from a valid matrix")
    }

    pub fn row_space_eq(&self, other: &MatrixK) -> bool {
        self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }

    /// Does `v` lie in the row space?
    pub fn row_space_contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let mut stacked: Vec<Vec<FieldElement>> =
            (0..self.rows).map(|i| self.row_vec(i)).collect();
        stacked.push(v.to_vec());
        let stacked = MatrixK::from_rows(&self.tower, stacked).expect("consistent widths");
        stacked.rank() == self.rank()
    }
}

/// A basis of rowspace(A) ∩ rowspace(B), via the kernel of the stacked
/// matrix [Aᵀ | −Bᵀ]: a kernel vector (x, y) means xA = yB.
pub fn intersect_rowspaces(a: &MatrixK, b: &MatrixK) -> Result<MatrixK> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "row spaces in K^{} and K^{}",
            a.cols, b.cols
        )));
    }
    let tower = &a.tower;
    let n = a.cols;
    let ka = a.rows;
    let kb = b.rows;
    let mut stacked = MatrixK::zero(tower, n, ka + kb);
    for i in 0..n {
        for j in 0..ka {
            *stacked.at_mut(i, j) = a.at(j, i).clone();
        }
        for j in 0..kb {
            *stacked.at_mut(i, ka + j) = -b.at(j, i);
        }
    }
    let kernel = stacked.right_kernel();
    let mut rows = Vec::new();
    for z in kernel {
        let mut v = vec![tower.zero(); n];
        for (j, coeff) in z.iter().take(ka).enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (slot, aj) in v.iter_mut().zip(a.row(j)) {
                let add = coeff * aj;
                *slot = &*slot + &add;
            }
        }
        rows.push(v);
    }
    if rows.is_empty() {
        return Ok(MatrixK::zero(tower, 0, n));
    }
    Ok(MatrixK::from_rows(tower, rows)?.row_space_basis())
}

// ---------------------------------------------------------------------------
// Matrices over F_q
// ---------------------------------------------------------------------------

/// A dense row-major matrix with entries in the subfield F_q, stored as
/// canonical codes.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    tower: Arc<FieldTower>,
}

impl std::fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixFq {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl MatrixFq {
    pub fn from_codes(tower: &Arc<FieldTower>, rows: Vec<Vec<u64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let q = tower.q();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for c in row {
                if c >= q {
                    return Err(Error::NotOverSubfield);
                }
                entries.push(c);
            }
        }
        Ok(MatrixFq {
            rows: nrows,
            cols: ncols,
            entries,
            tower: Arc::clone(tower),
        })
    }

    pub fn zero(tower: &Arc<FieldTower>, rows: usize, cols: usize) -> Self {
        MatrixFq {
            rows,
            cols,
            entries: vec![0; rows * cols],
            tower: Arc::clone(tower),
        }
    }

    pub fn identity(tower: &Arc<FieldTower>, n: usize) -> Self {
        let mut m = Self::zero(tower, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.tower.q());
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_codes(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = Self::zero(&self.tower, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let t = &self.tower;
        let mut out = Self::zero(t, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = t.fq_add(out.at(i, j), t.fq_mul(a, rhs.at(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Gauss–Jordan over F_q; returns (rref, rank, pivots, det-of-leading-
    /// square-part when the matrix is square, else 0).
    fn eliminate(&self) -> (MatrixFq, usize, Vec<usize>, u64) {
        let t = Arc::clone(&self.tower);
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        let mut det = 1u64;
        for col in 0..r.cols {
            if pivot_row == r.rows {
                break;
            }
            let found = (pivot_row..r.rows).find(|&i| r.at(i, col) != 0);
            let Some(found) = found else { continue };
            if found != pivot_row {
                for j in 0..r.cols {
                    r.entries.swap(pivot_row * r.cols + j, found * r.cols + j);
                }
                det = t.fq_neg(det);
            }
            let pivot = r.at(pivot_row, col);
            det = t.fq_mul(det, pivot);
            let inv = t.fq_inv(pivot);
            for j in col..r.cols {
                r.set(pivot_row, j, t.fq_mul(r.at(pivot_row, j), inv));
            }
            for i in 0..r.rows {
                if i == pivot_row {
                    continue;
                }
                let factor = r.at(i, col);
                if factor == 0 {
                    continue;
                }
                for j in col..r.cols {
                    let v = t.fq_sub(r.at(i, j), t.fq_mul(factor, r.at(pivot_row, j)));
                    r.set(i, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let det = if self.rows == self.cols && pivots.len() == self.rows {
            det
        } else {
            0
        };
        (r, pivots.len(), pivots, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> (MatrixFq, usize, Vec<usize>) {
        let (r, rank, pivots, _) = self.eliminate();
        (r, rank, pivots)
    }

    /// Determinant (square matrices).
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.eliminate().3
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<MatrixFq> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = MatrixFq::zero(&self.tower, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, _, pivots, _) = aug.eliminate();
        // Invertible iff the left block reduces to the identity, i.e. the
        // first n pivots are the first n columns.
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        let mut out = MatrixFq::zero(&self.tower, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.at(i, n + j));
            }
        }
        Ok(out)
    }

    /// Embed into K entrywise.
    pub fn embed(&self) -> MatrixK {
        let mut out = MatrixK::zero(&self.tower, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.tower.from_fq(self.at(i, j));
            }
        }
        out
    }

    /// Reinterpret a K-matrix whose entries happen to be constants.
    pub fn try_from_k(m: &MatrixK) -> Result<MatrixFq> {
        let mut rows = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for j in 0..m.cols() {
                row.push(m.at(i, j).as_fq_code().ok_or(Error::NotOverSubfield)?);
            }
            rows.push(row);
        }
        MatrixFq::from_codes(m.tower(), rows)
    }
}

/// Coordinates of the entries of `v` relative to the F_q-basis `beta` of K:
/// column j holds the beta-coordinates of v_j. The F_q-rank of the result is
/// the rank weight of `v`, independent of the basis choice.
pub fn subfield_expansion(v: &[FieldElement], beta: &[FieldElement]) -> Result<MatrixFq> {
    let tower = beta
        .first()
        .map(|x| Arc::clone(x.tower()))
        .ok_or(Error::NotABasis)?;
    let d = tower.ext_degree();
    if beta.len() != d {
        return Err(Error::NotABasis);
    }
    // Columns of E are the power-basis coordinates of the beta vectors.
    let mut e = MatrixFq::zero(&tower, d, d);
    for (j, b) in beta.iter().enumerate() {
        for (i, &c) in b.coeffs().iter().enumerate() {
            e.set(i, j, c);
        }
    }
    let e_inv = e.inverse().map_err(|_| Error::NotABasis)?;
    let mut out = MatrixFq::zero(&tower, d, v.len());
    for (j, x) in v.iter().enumerate() {
        for i in 0..d {
            let mut acc = 0u64;
            for (l, &c) in x.coeffs().iter().enumerate() {
                acc = tower.fq_add(acc, tower.fq_mul(e_inv.at(i, l), c));
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Check that `beta` is an F_q-basis of K.
pub fn is_fq_basis(beta: &[FieldElement]) -> bool {
    let Some(first) = beta.first() else {
        return false;
    };
    let tower = first.tower();
    let d = tower.ext_degree();
    if beta.len() != d {
        return false;
    }
    let mut e = MatrixFq::zero(tower, d, d);
    for (j, b) in beta.iter().enumerate() {
        for (i, &c) in b.coeffs().iter().enumerate() {
            e.set(i, j, c);
        }
    }
    e.is_invertible()
}

/// A seeded uniform sample from GL_n(F_q), by rejection; the result is
/// verified invertible.
pub fn random_invertible(n: usize, tower: &Arc<FieldTower>, seed: u64) -> MatrixFq {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = tower.q();
    loop {
        let mut m = MatrixFq::zero(tower, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rand::Rng::gen_range(&mut rng, 0..q));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;
    use rand::Rng;

    fn mk(tower: &Arc<FieldTower>, rows: &[&[u128]]) -> MatrixK {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&n| tower.from_canonical(n).unwrap())
                    .collect()
            })
            .collect();
        MatrixK::from_rows(tower, rows).unwrap()
    }

    #[test]
    fn rref_basics() {
        let f16 = fields::f16();
        let id = MatrixK::identity(&f16, 3);
        let (r, rank, pivots) = id.rref();
        assert_eq!((r, rank, pivots), (MatrixK::identity(&f16, 3), 3, vec![0, 1, 2]));

        let z = MatrixK::zero(&f16, 2, 4);
        let (r, rank, pivots) = z.rref();
        assert!(r.is_zero());
        assert_eq!((rank, pivots), (0, vec![]));

        // The worked 2x2 Gram matrix has rank 1.
        let g = mk(&f16, &[&[0, 0], &[0, 1]]);
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn rref_is_idempotent() {
        let f9 = fields::f9();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let rows: Vec<Vec<FieldElement>> = (0..3)
                .map(|_| (0..5).map(|_| f9.random_element(&mut rng)).collect())
                .collect();
            let a = MatrixK::from_rows(&f9, rows).unwrap();
            let (r, _, _) = a.rref();
            let (rr, _, _) = r.rref();
            assert_eq!(r, rr);
        }
    }

    #[test]
    fn kernel_of_the_worked_gram_matrix() {
        let f16 = fields::f16();
        let g = mk(&f16, &[&[0, 0], &[0, 1]]);
        let kernel = g.right_kernel();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], vec![f16.one(), f16.zero()]);

        assert!(MatrixK::identity(&f16, 3).right_kernel().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f9 = fields::f9();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let rows: Vec<Vec<FieldElement>> = (0..3)
                .map(|_| (0..5).map(|_| f9.random_element(&mut rng)).collect())
                .collect();
            let a = MatrixK::from_rows(&f9, rows).unwrap();
            let kernel = a.right_kernel();
            assert_eq!(kernel.len(), 5 - a.rank());
            for z in kernel {
                for i in 0..a.rows() {
                    let mut acc = f9.zero();
                    for j in 0..a.cols() {
                        let add = a.at(i, j) * &z[j];
                        acc = &acc + &add;
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn dagger_examples() {
        let f16 = fields::f16();
        let w = f16.omega();
        let row = MatrixK::from_rows(&f16, vec![vec![f16.one(), w.clone()]]).unwrap();
        let d = row.dagger();
        assert_eq!((d.rows(), d.cols()), (2, 1));
        assert_eq!(*d.at(0, 0), f16.one());
        assert_eq!(*d.at(1, 0), &w + &f16.one());
        assert_eq!(d.dagger(), row);

        let id = MatrixK::identity(&f16, 3);
        assert_eq!(id.dagger(), id);

        let f9 = fields::f9();
        let w = f9.omega();
        let row =
            MatrixK::from_rows(&f9, vec![vec![w.clone(), &f9.one() - &w]]).unwrap();
        let d = row.dagger();
        assert_eq!(*d.at(0, 0), -&w);
        assert_eq!(*d.at(1, 0), &f9.one() + &w);
    }

    #[test]
    fn dagger_reverses_products() {
        let f81 = fields::f81();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = MatrixK::from_rows(
            &f81,
            (0..2)
                .map(|_| (0..3).map(|_| f81.random_element(&mut rng)).collect())
                .collect(),
        )
        .unwrap();
        let b = MatrixK::from_rows(
            &f81,
            (0..3)
                .map(|_| (0..2).map(|_| f81.random_element(&mut rng)).collect())
                .collect(),
        )
        .unwrap();
        let left = a.mul(&b).unwrap().dagger();
        let right = b.dagger().mul(&a.dagger()).unwrap();
        assert_eq!(left, right);
        assert_eq!(a.rank(), a.dagger().rank());
    }

    #[test]
    fn subfield_expansion_ranks() {
        let f16 = fields::f16();
        let basis = f16.power_basis();
        let ones = vec![f16.one(); 5];
        assert_eq!(subfield_expansion(&ones, &basis).unwrap().rank(), 1);

        let w3 = f16.omega().pow(3);
        let v = vec![w3, f16.one(), f16.zero(), f16.zero()];
        assert_eq!(subfield_expansion(&v, &basis).unwrap().rank(), 2);
    }

    #[test]
    fn expansion_rank_is_basis_independent() {
        let f16 = fields::f16();
        let w = f16.omega();
        let power = f16.power_basis();
        // A second basis: (1, w+1, w^2, w^3 + w).
        let other = vec![
            f16.one(),
            &w + &f16.one(),
            w.pow(2),
            &w.pow(3) + &w,
        ];
        assert!(is_fq_basis(&other));
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let v: Vec<FieldElement> =
                (0..4).map(|_| f16.random_element(&mut rng)).collect();
            let r1 = subfield_expansion(&v, &power).unwrap().rank();
            let r2 = subfield_expansion(&v, &other).unwrap().rank();
            assert_eq!(r1, r2);
        }
    }

    #[test]
    fn expansion_rejects_non_basis() {
        let f16 = fields::f16();
        let w = f16.omega();
        let bad = vec![f16.one(), w.clone(), &w + &f16.one(), f16.zero()];
        assert_eq!(
            subfield_expansion(&[f16.one()], &bad).unwrap_err(),
            Error::NotABasis
        );
    }

    #[test]
    fn intersection_trivial_cases() {
        let f9 = fields::f9();
        let a = mk(&f9, &[&[1, 0, 0, 0], &[0, 3, 0, 0]]);
        let same = intersect_rowspaces(&a, &a).unwrap();
        assert!(same.row_space_eq(&a));

        let b = mk(&f9, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let empty = intersect_rowspaces(&a, &b).unwrap();
        assert_eq!(empty.rows(), 0);

        let c = mk(&f9, &[&[0, 0, 0]]);
        assert!(matches!(
            intersect_rowspaces(&a, &c),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn intersection_matches_exhaustive_membership() {
        // Enumerate every vector of rowspace(A) and test membership in
        // rowspace(B); compare dimensions with the kernel-based method.
        let f9 = fields::f9();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let a = MatrixK::from_rows(
                &f9,
                (0..2)
                    .map(|_| (0..4).map(|_| f9.random_element(&mut rng)).collect())
                    .collect(),
            )
            .unwrap()
            .row_space_basis();
            let b = MatrixK::from_rows(
                &f9,
                (0..2)
                    .map(|_| (0..4).map(|_| f9.random_element(&mut rng)).collect())
                    .collect(),
            )
            .unwrap()
            .row_space_basis();
            let inter = intersect_rowspaces(&a, &b).unwrap();

            let size = f9.field_size() as u64;
            let mut members = Vec::new();
            let ka = a.rows();
            for mask in 0..size.pow(ka as u32) {
                let mut rest = mask;
                let mut v = vec![f9.zero(); 4];
                for i in 0..ka {
                    let c = f9.from_canonical((rest % size) as u128).unwrap();
                    rest /= size;
                    for (slot, x) in v.iter_mut().zip(a.row(i)) {
                        let add = &c * x;
                        *slot = &*slot + &add;
                    }
                }
                if b.row_space_contains(&v) && v.iter().any(|x| !x.is_zero()) {
                    members.push(v);
                }
            }
            let dim_expected = if members.is_empty() {
                0
            } else {
                MatrixK::from_rows(&f9, members).unwrap().rank()
            };
            assert_eq!(inter.rows(), dim_expected);
            // Every basis vector of the intersection lies in both spaces.
            for i in 0..inter.rows() {
                assert!(a.row_space_contains(inter.row(i)));
                assert!(b.row_space_contains(inter.row(i)));
            }
        }
    }

    #[test]
    fn random_invertible_samples() {
        let f4 = fields::f4();
        let only = random_invertible(1, &f4, 0);
        assert_eq!(only.at(0, 0), 1);

        let m = random_invertible(2, &f4, 42);
        assert!(m.is_invertible());

        let f9 = fields::f9();
        for seed in 0..1000 {
            let m = random_invertible(3, &f9, seed);
            assert_ne!(m.det(), 0);
        }
    }

    #[test]
    fn fq_matrix_inverse_roundtrip() {
        let t = fields::f16_over_f4();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let mut m = MatrixFq::zero(&t, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, rng.gen_range(0..t.q()));
                }
            }
            if !m.is_invertible() {
                continue;
            }
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv).unwrap(), MatrixFq::identity(&t, 3));
        }
    }
}
