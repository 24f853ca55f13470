//! Vector rank-metric codes: duals, hulls (nullity formula and brute-force
//! intersection), rank weights, minimum rank distance, MRD testing, and the
//! GL_n(F_q) equivalence action.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, TowerExt};
use crate::linalg::{intersect_rowspaces, MatrixFq, MatrixK};

/// Default cap on the number of codeword classes enumerated by the
/// minimum-distance search.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

/// Which inner product the dual and hull are taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Hermitian,
    Euclidean,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Hermitian => "hermitian",
            Flavor::Euclidean => "euclidean",
        }
    }
}

/// ⟨v, w⟩ in the chosen flavor: Σ v_i σ(w_i) or Σ v_i w_i.
pub fn inner_product(v: &[FieldElement], w: &[FieldElement], flavor: Flavor) -> FieldElement {
    assert_eq!(v.len(), w.len());
    let tower = v[0].tower();
    let mut acc = tower.zero();
    for (x, y) in v.iter().zip(w) {
        let term = match flavor {
            Flavor::Hermitian => x * &y.sigma(),
            Flavor::Euclidean => x * y,
        };
        acc = &acc + &term;
    }
    acc
}

/// An [n, k] vector rank-metric code held by a full-row-rank generator
/// matrix over K.
#[derive(Debug, Clone, PartialEq)]
pub struct RankCode {
    g: MatrixK,
}

/// The dual of a full-space code is the zero code; keep that case explicit
/// instead of manufacturing 0-row matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum DualCode {
    Zero { n: usize },
    Code(RankCode),
}

/// Hull dimension, a hull basis, and the kernel witness of the Gram matrix.
#[derive(Debug, Clone)]
pub struct HullReport {
    pub h: usize,
    pub hull_basis: Vec<Vec<FieldElement>>,
    pub kernel_basis: Vec<Vec<FieldElement>>,
    pub flavor: Flavor,
}

impl RankCode {
    /// Wrap a generator matrix; rejects rank-deficient or empty generators.
    pub fn new(g: MatrixK) -> Result<Self> {
        if g.rows() == 0 || g.cols() == 0 || g.rows() > g.cols() {
            return Err(Error::InvalidParameters(format!(
                "generator must be k x n with 1 <= k <= n, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
        if g.rank() != g.rows() {
            return Err(Error::InvalidParameters(
                "generator matrix is not full row rank".into(),
            ));
        }
        Ok(RankCode { g })
    }

    pub fn generator(&self) -> &MatrixK {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.g.tower()
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.g.row_space_contains(v)
    }

    pub fn same_code(&self, other: &RankCode) -> bool {
        self.g.row_space_eq(&other.g)
    }

    /// GG† (Hermitian) or GGᵀ (Euclidean).
    pub fn gram(&self, flavor: Flavor) -> MatrixK {
        let gt = match flavor {
            Flavor::Hermitian => self.g.dagger(),
            Flavor::Euclidean => self.g.transpose(),
        };
        self.g.mul(&gt).expect("k x n times n x k")
    }

    /// Hull via the nullity formula: h = k − rank(Gram), with the hull basis
    /// obtained by pushing each kernel vector through z ↦ z†G (zᵀG in the
    /// Euclidean flavor).
    pub fn hull(&self, flavor: Flavor) -> HullReport {
        let gram = self.gram(flavor);
        let kernel = gram.right_kernel();
        let tower = self.tower();
        let hull_basis: Vec<Vec<FieldElement>> = kernel
            .iter()
            .map(|z| {
                let mut v = vec![tower.zero(); self.n()];
                for (i, zi) in z.iter().enumerate() {
                    let c = match flavor {
                        Flavor::Hermitian => zi.sigma(),
                        Flavor::Euclidean => zi.clone(),
                    };
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, gij) in v.iter_mut().zip(self.g.row(i)) {
                        let add = &c * gij;
                        *slot = &*slot + &add;
                    }
                }
                v
            })
            .collect();
        HullReport {
            h: kernel.len(),
            hull_basis,
            kernel_basis: kernel,
            flavor,
        }
    }

    /// Hull dimension alone (used by the exhaustive sweeps).
    pub fn hull_dim(&self, flavor: Flavor) -> usize {
        self.k() - self.gram(flavor).rank()
    }

    /// Hull computed literally as C ∩ C^⊥: the dual from the kernel of the
    /// (conjugated) generator, then a row-space intersection. Independent of
    /// `hull` except for sharing the elimination primitive.
    pub fn hull_oracle(&self, flavor: Flavor) -> Result<HullReport> {
        let tower = self.tower();
        let hull_rows = match self.dual(flavor) {
            DualCode::Zero { .. } => MatrixK::zero(tower, 0, self.n()),
            DualCode::Code(dual) => intersect_rowspaces(&self.g, dual.generator())?,
        };
        let mut hull_basis = Vec::new();
        let mut kernel_basis = Vec::new();
        for i in 0..hull_rows.rows() {
            let v = hull_rows.row_vec(i);
            // Invert the bijection z ↦ z†G: solve xG = v, then z = σ(x)ᵀ.
            let x = solve_row(&self.g, &v).expect("hull vector lies in the code");
            let z = x
                .iter()
                .map(|c| match flavor {
                    Flavor::Hermitian => c.sigma(),
                    Flavor::Euclidean => c.clone(),
                })
                .collect();
            hull_basis.push(v);
            kernel_basis.push(z);
        }
        Ok(HullReport {
            h: hull_rows.rows(),
            hull_basis,
            kernel_basis,
            flavor,
        })
    }

    /// The dual code under the chosen inner product.
    pub fn dual(&self, flavor: Flavor) -> DualCode {
        if self.k() == self.n() {
            return DualCode::Zero { n: self.n() };
        }
        // x is dual to C iff A x^T = 0 where A = σ(G) (Hermitian) or G.
        let a = match flavor {
            Flavor::Hermitian => self.g.dagger().transpose(),
            Flavor::Euclidean => self.g.clone(),
        };
        let kernel = a.right_kernel();
        let rows: Vec<Vec<FieldElement>> = kernel.into_iter().collect();
        let g = MatrixK::from_rows(self.tower(), rows).expect("kernel rows");
        DualCode::Code(RankCode::new(g).expect("kernel basis has full rank"))
    }

    /// Minimum rank distance by exhaustive enumeration of projective
    /// codeword-class representatives (first nonzero coefficient scaled
    /// to 1); linearity reduces distance to weight and rank weight is
    /// scalar-invariant, so this is lossless.
    pub fn min_rank_distance(&self, cap: u64) -> Result<usize> {
        let size = self.tower().field_size();
        let k = self.k() as u32;
        let classes = (size.pow(k) - 1) / (size - 1);
        if classes > cap as u128 {
            return Err(Error::TooLargeToEnumerate {
                required: classes,
                cap,
            });
        }
        let tower = self.tower();
        let mut best = usize::MAX;
        let mut seen = 0u128;
        for lead in 0..self.k() {
            let free = self.k() - lead - 1;
            let mut counter = vec![0u128; free];
            loop {
                // coefficients: 0, ..., 0, 1, counter...
                let mut word = self.g.row_vec(lead);
                for (offset, &code) in counter.iter().enumerate() {
                    if code == 0 {
                        continue;
                    }
                    let c = tower.from_canonical(code).expect("in range");
                    for (slot, gj) in word.iter_mut().zip(self.g.row(lead + 1 + offset)) {
                        let add = &c * gj;
                        *slot = &*slot + &add;
                    }
                }
                best = best.min(rank_weight(&word));
                seen += 1;

                // Odometer over K^free.
                let mut pos = 0;
                loop {
                    if pos == counter.len() {
                        break;
                    }
                    counter[pos] += 1;
                    if counter[pos] < size {
                        break;
                    }
                    counter[pos] = 0;
                    pos += 1;
                }
                if pos == counter.len() {
                    break;
                }
            }
        }
        debug_assert_eq!(seen, classes);
        Ok(best)
    }

    /// Does the code meet the rank-metric Singleton bound d = n − k + 1?
    pub fn is_mrd(&self, cap: u64) -> Result<bool> {
        if self.n() > self.tower().ext_degree() {
            return Err(Error::WrongParameters(format!(
                "MRD bound requires n <= 2m, got n = {} > {}",
                self.n(),
                self.tower().ext_degree()
            )));
        }
        Ok(self.min_rank_distance(cap)? == self.n() - self.k() + 1)
    }

    /// Right-multiply the generator by an equivalence matrix from GL_n(F_q).
    pub fn apply_equivalence(&self, m: &MatrixFq) -> Result<RankCode> {
        if m.rows() != self.n() || m.cols() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "equivalence matrix must be {0}x{0}",
                self.n()
            )));
        }
        if !m.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let g = self.g.mul(&m.embed())?;
        Ok(RankCode { g })
    }
}

/// Solve x G = v for the row vector x (unique when G has full row rank).
pub(crate) fn solve_row(g: &MatrixK, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let tower = g.tower();
    let k = g.rows();
    let n = g.cols();
    // Augmented system Gᵀ xᵀ = vᵀ.
    let mut aug = MatrixK::zero(tower, n, k + 1);
    for (i, vi) in v.iter().enumerate() {
        for j in 0..k {
            *aug.at_mut(i, j) = g.at(j, i).clone();
        }
        *aug.at_mut(i, k) = vi.clone();
    }
    let (r, _, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None; // inconsistent
    }
    let mut x = vec![tower.zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = r.at(row, k).clone();
    }
    Some(x)
}

/// The rank weight of a vector: the F_q-dimension of the span of its
/// coordinates. Expanding in the power basis is a no-op, so the coordinate
/// matrix is assembled directly.
pub fn rank_weight(v: &[FieldElement]) -> usize {
    let Some(first) = v.first() else { return 0 };
    let tower = first.tower();
    let d = tower.ext_degree();
    let mut m = MatrixFq::zero(tower, d, v.len());
    for (j, x) in v.iter().enumerate() {
        for (i, &c) in x.coeffs().iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m.rank()
}

/// A uniformly random [n, k] code (full-row-rank generator) for test grids.
pub fn random_code<R: Rng>(
    tower: &Arc<FieldTower>,
    n: usize,
    k: usize,
    rng: &mut R,
) -> RankCode {
    assert!(k >= 1 && k <= n);
    loop {
        let rows = (0..k)
            .map(|_| (0..n).map(|_| tower.random_element(rng)).collect())
            .collect();
        let g = MatrixK::from_rows(tower, rows).expect("consistent rows");
        if g.rank() == k {
            return RankCode { g };
        }
    }
}
