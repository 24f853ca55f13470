//! Independent brute-force verification: exhaustive hull spectra over
//! GL_n(F_q), the (q, n) = (2, 2) obstruction, and the even-characteristic
//! Euclidean self-orthogonal MRD nonexistence search.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::codes::{Flavor, RankCode};
use crate::error::{Error, Result};
use crate::gf::{FieldTower, TowerExt};
use crate::linalg::{MatrixFq, MatrixK};

/// Default cap on |GL_n(F_q)| for exhaustive spectra.
pub const DEFAULT_GROUP_CAP: u64 = 1_000_000;

/// Exhaustive ground truth for hull variation: the hull dimension of C·M
/// for every M in GL_n(F_q).
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub flavor: Flavor,
    pub group_size: u128,
    pub histogram: BTreeMap<usize, u64>,
    pub attained: Vec<usize>,
}

/// |GL_n(F_q)| = Π_{i<n} (q^n − q^i).
pub fn gl_order(n: usize, q: u64) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

fn decode_vector(mut idx: u64, n: usize, q: u64) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for slot in v.iter_mut() {
        *slot = idx % q;
        idx /= q;
    }
    v
}

/// Visit every element of GL_n(F_q) once, building matrices row by row and
/// only extending with rows outside the span of the previous ones.
pub fn enumerate_gl<F: FnMut(&MatrixFq)>(tower: &Arc<FieldTower>, n: usize, mut visit: F) {
    let q = tower.q();
    let total = q.pow(n as u32);

    // Echelonized copies of the chosen rows, as (pivot, row) pairs.
    fn reduce(tower: &FieldTower, echelon: &[(usize, Vec<u64>)], v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (pivot, row) in echelon {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for (slot, &r) in v.iter_mut().zip(row) {
                *slot = tower.fq_sub(*slot, tower.fq_mul(c, r));
            }
        }
        v
    }

    fn recurse<F: FnMut(&MatrixFq)>(
        tower: &Arc<FieldTower>,
        n: usize,
        total: u64,
        rows: &mut Vec<Vec<u64>>,
        echelon: &mut Vec<(usize, Vec<u64>)>,
        visit: &mut F,
    ) {
        if rows.len() == n {
            let m = MatrixFq::from_codes(tower, rows.clone()).expect("codes below q");
            visit(&m);
            return;
        }
        for idx in 1..total {
            let v = decode_vector(idx, n, tower.q());
            let reduced = reduce(tower, echelon, &v);
            let Some(pivot) = reduced.iter().position(|&c| c != 0) else {
                continue; // in the span of the previous rows
            };
            let inv = tower.fq_inv(reduced[pivot]);
            let normalized: Vec<u64> =
                reduced.iter().map(|&c| tower.fq_mul(c, inv)).collect();
            rows.push(v);
            echelon.push((pivot, normalized));
            recurse(tower, n, total, rows, echelon, visit);
            echelon.pop();
            rows.pop();
        }
    }

    let mut rows = Vec::with_capacity(n);
    let mut echelon = Vec::with_capacity(n);
    recurse(tower, n, total, &mut rows, &mut echelon, &mut visit);
}

/// The exact histogram of hull dimensions over the whole equivalence class
/// of `code`.
pub fn hull_spectrum(code: &RankCode, flavor: Flavor, cap: u64) -> Result<SpectrumReport> {
    let tower = code.tower();
    let n = code.n();
    let q = tower.q();
    let size = gl_order(n, q);
    if size > cap as u128 {
        return Err(Error::GroupTooLarge { n, q, size, cap });
    }
    let mut histogram: BTreeMap<usize, u64> = BTreeMap::new();
    let g = code.generator();
    let k = code.k();
    enumerate_gl(tower, n, |m| {
        let gm = g.mul(&m.embed()).expect("n x n");
        let gram = match flavor {
            Flavor::Hermitian => gm.mul(&gm.dagger()),
            Flavor::Euclidean => gm.mul(&gm.transpose()),
        }
        .expect("k x k");
        let h = k - gram.rank();
        *histogram.entry(h).or_insert(0) += 1;
    });
    let counted: u128 = histogram.values().map(|&c| c as u128).sum();
    debug_assert_eq!(counted, size);
    let attained = histogram.keys().copied().collect();
    Ok(SpectrumReport {
        flavor,
        group_size: size,
        histogram,
        attained,
    })
}

/// The (q, n) = (2, 2) obstruction: does every 1-dimensional Hermitian
/// self-orthogonal code of full rank weight over the given binary tower
/// keep hull dimension 1 under all six matrices of GL_2(F_2)?
///
/// The class swept is K·(1, x) with x outside F_2, which is where the norm
/// argument lives: self-orthogonal codes with F_2-dependent coordinates
/// (such as K·1_2) can lose a coordinate under GL_2(F_2) and escape. Over
/// F_4 the answer is true; for m ≥ 2 the sweep settles it instance by
/// instance (and finds escapes).
pub fn check_22_obstruction(tower: &Arc<FieldTower>) -> Result<bool> {
    if tower.q() != 2 {
        return Err(Error::WrongParameters(format!(
            "the obstruction concerns q = 2, got q = {}",
            tower.q()
        )));
    }
    let size = tower.field_size();
    let mut checked_any = false;
    for i in 0..size {
        let v = vec![tower.one(), tower.from_canonical(i).expect("in range")];
        if !crate::codes::inner_product(&v, &v, Flavor::Hermitian).is_zero() {
            continue; // not self-orthogonal
        }
        if crate::codes::rank_weight(&v) != 2 {
            continue; // K·1_2-like codes are outside the obstructed class
        }
        checked_any = true;
        let code = RankCode::new(MatrixK::from_rows(tower, vec![v])?)?;
        let spectrum = hull_spectrum(&code, Flavor::Hermitian, DEFAULT_GROUP_CAP)?;
        if spectrum.histogram != BTreeMap::from([(1usize, 6u64)]) {
            return Ok(false);
        }
    }
    debug_assert!(checked_any, "x^(q^m + 1) = 1 has solutions outside F_2");
    Ok(checked_any)
}

/// Search for Euclidean self-orthogonal MRD codes of dimension k in K^n,
/// reading the tower as K = F_{q^M} with M = 2m (so the admissible range is
/// 1 ≤ n ≤ M). For even q the list is provably empty; odd q is allowed for
/// exploration behind `allow_odd` and carries no claim.
pub fn euclidean_so_mrd_search(
    tower: &Arc<FieldTower>,
    n: usize,
    k: usize,
    allow_odd: bool,
    cap: u64,
) -> Result<Vec<RankCode>> {
    let q = tower.q();
    if q % 2 == 1 && !allow_odd {
        return Err(Error::OddCharacteristic(q));
    }
    let m_degree = tower.ext_degree();
    if n < 1 || n > m_degree {
        return Err(Error::WrongParameters(format!(
            "the search needs 1 <= n <= {m_degree}, got n = {n}"
        )));
    }
    if k < 1 || k > n {
        return Err(Error::WrongParameters(format!(
            "the search needs 1 <= k <= n, got k = {k}"
        )));
    }

    let size = tower.field_size();
    let total = gaussian_binomial(n, k, size);
    if total > cap as u128 {
        return Err(Error::TooLargeToEnumerate {
            required: total,
            cap,
        });
    }

    let mut violations = Vec::new();
    for_each_subspace(tower, n, k, |g| {
        let code = RankCode::new(g.clone()).expect("echelon form has full rank");
        if !code.gram(Flavor::Euclidean).is_zero() {
            return;
        }
        if code.is_mrd(cap).expect("n <= 2m and within cap") {
            violations.push(code);
        }
    });
    Ok(violations)
}

/// Number of k-dimensional subspaces of (F_size)^n.
fn gaussian_binomial(n: usize, k: usize, size: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= size.pow((n - i) as u32) - 1;
        den *= size.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Visit one canonical (reduced echelon) generator matrix per k-dimensional
/// subspace of K^n.
fn for_each_subspace<F: FnMut(&MatrixK)>(
    tower: &Arc<FieldTower>,
    n: usize,
    k: usize,
    mut visit: F,
) {
    let size = tower.field_size();
    // All increasing pivot-column choices.
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: to the right of each pivot, excluding pivot columns.
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for col in p + 1..n {
                if !pivots.contains(&col) {
                    free.push((i, col));
                }
            }
        }
        let mut counter = vec![0u128; free.len()];
        loop {
            let mut g = MatrixK::zero(tower, k, n);
            for (i, &p) in pivots.iter().enumerate() {
                *g.at_mut(i, p) = tower.one();
            }
            for (&(i, col), &code) in free.iter().zip(&counter) {
                *g.at_mut(i, col) = tower.from_canonical(code).expect("in range");
            }
            visit(&g);

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

        // Next pivot combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
