//! Hull variation: rank-one descent witnesses, one-step hull reduction with
//! all case splits, iterated variation to any target hull dimension, LCD
//! normalization, and MRD codes with a prescribed Hermitian hull dimension.

use std::sync::Arc;

use crate::codes::{inner_product, Flavor, RankCode};
use crate::construct::hermitian_so_gabidulin;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, TowerExt};
use crate::linalg::{MatrixFq, MatrixK};

/// A pair (u, M) with M Mᵀ = I_n + lam uᵀu and w uᵀ ≠ 0: multiplying the
/// generator by M adds the rank-one update lam·aa† (a = Guᵀ) to the Gram
/// matrix, which drops its nullity by one.
#[derive(Debug, Clone)]
pub struct DescentWitness {
    pub u: Vec<u64>,
    pub m: MatrixFq,
    pub lam: u64,
}

/// Audit trail of an iterated descent: the equivalence matrix of each step
/// and the hull dimension after it.
#[derive(Debug, Clone)]
pub struct VariationTrace {
    pub flavor: Flavor,
    pub initial_h: usize,
    pub final_h: usize,
    pub steps: Vec<(MatrixFq, usize)>,
}

fn is_all_ones_multiple(w: &[FieldElement]) -> bool {
    !w[0].is_zero() && w.iter().all(|x| *x == w[0])
}

/// w uᵀ = Σ u_i w_i, computed in K.
fn pair_with_codes(w: &[FieldElement], u: &[u64]) -> FieldElement {
    let tower = w[0].tower();
    let mut acc = tower.zero();
    for (x, &c) in w.iter().zip(u) {
        if c == 0 {
            continue;
        }
        let add = x.scale_fq(c);
        acc = &acc + &add;
    }
    acc
}

fn outer_update(tower: &Arc<FieldTower>, u: &[u64], scale: u64) -> MatrixFq {
    // I_n + scale * uᵀu
    let n = u.len();
    let mut m = MatrixFq::identity(tower, n);
    for i in 0..n {
        for j in 0..n {
            let add = tower.fq_mul(scale, tower.fq_mul(u[i], u[j]));
            m.set(i, j, tower.fq_add(m.at(i, j), add));
        }
    }
    m
}

/// A descent witness for the nonzero vector `w`: a deterministic choice of
/// the case construction for the given q, always taking the smallest valid
/// indices so that outputs are reproducible.
///
/// Shapes: q ≥ 4 works for every n ≥ 1, q ∈ {2, 3} need n ≥ 3; for q = 2
/// the vector must leave the line K·1_n.
pub fn descent_witness(w: &[FieldElement], _seed: u64) -> Result<DescentWitness> {
    let tower = Arc::clone(w.first().ok_or(Error::NotABasis)?.tower());
    let n = w.len();
    let q = tower.q();
    if w.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidParameters("w must be nonzero".into()));
    }

    let witness = if q >= 4 {
        let i = w.iter().position(|x| !x.is_zero()).expect("w nonzero");
        let mu = (2..q)
            .find(|&c| tower.fq_mul(c, c) != 1)
            .expect("q >= 4 has a non-unit square");
        let lam = tower.fq_sub(tower.fq_mul(mu, mu), 1);
        let mut u = vec![0u64; n];
        u[i] = 1;
        let mut m = MatrixFq::identity(&tower, n);
        m.set(i, i, mu);
        DescentWitness { u, m, lam }
    } else if q == 3 {
        if n < 3 {
            return Err(Error::UnsupportedShape { q, n });
        }
        let i = w.iter().position(|x| !x.is_zero()).expect("w nonzero");
        let mut rest = (0..n).filter(|&t| t != i);
        let j = rest.next().expect("n >= 3");
        let l = rest.next().expect("n >= 3");
        // Try u = e_i + e_j + e_l first, then -e_i + e_j + e_l; at least one
        // pairs nontrivially with w because their difference is 2 w_i.
        let mut u = vec![0u64; n];
        u[i] = 1;
        u[j] = 1;
        u[l] = 1;
        if pair_with_codes(w, &u).is_zero() {
            u[i] = 2;
            debug_assert!(!pair_with_codes(w, &u).is_zero());
        }
        // M = I + 2 uᵀu is symmetric with M Mᵀ = I + uᵀu (u uᵀ = 3 = 0).
        let m = outer_update(&tower, &u, 2);
        DescentWitness { u, m, lam: 1 }
    } else {
        // q = 2
        if n < 3 {
            return Err(Error::UnsupportedShape { q, n });
        }
        if w.iter().all(|x| *x == w[0]) {
            return Err(Error::AllOnesHullBinary);
        }
        let (i, j) = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .find(|&(a, b)| w[a] != w[b])
            .expect("w has two distinct coordinates");
        let mut u = vec![0u64; n];
        u[i] = 1;
        u[j] = 1;
        let l = (0..n).find(|t| *t != i && *t != j).expect("n >= 3");

        // The fixed 3x3 block L with L Lᵀ = I_3 + (0,1,1)ᵀ(0,1,1), conjugated
        // by the permutation sending (1, 2, 3) to (l, i, j).
        let lblock = [[1u64, 1, 1], [0, 1, 1], [1, 0, 1]];
        let mut perm = vec![usize::MAX; n];
        perm[0] = l;
        perm[1] = i;
        perm[2] = j;
        let mut remaining = (0..n).filter(|t| *t != i && *t != j && *t != l);
        for slot in perm.iter_mut().skip(3) {
            *slot = remaining.next().expect("counts match");
        }
        let mut m = MatrixFq::zero(&tower, n, n);
        for r in 0..n {
            for c in 0..n {
                let v = if r < 3 && c < 3 {
                    lblock[r][c]
                } else {
                    u64::from(r == c)
                };
                m.set(perm[r], perm[c], v);
            }
        }
        DescentWitness { u, m, lam: 1 }
    };

    debug_assert!(!pair_with_codes(w, &witness.u).is_zero());
    debug_assert_eq!(
        witness.m.mul(&witness.m.transpose()).unwrap(),
        outer_update(&tower, &witness.u, witness.lam)
    );
    Ok(witness)
}

/// One step of hull reduction: an equivalent code with hull dimension
/// h − 1 together with the equivalence matrix used.
///
/// Case dispatch: the row-normalization construction when q = 2 and the
/// hull is exactly K·1_n; the lower-triangular M_t search when n = 2 (q = 3
/// Hermitian, or any q Euclidean); the rank-one descent witness otherwise.
pub fn reduce_hull_once(
    code: &RankCode,
    flavor: Flavor,
    seed: u64,
) -> Result<(RankCode, MatrixFq)> {
    let tower = Arc::clone(code.tower());
    let q = tower.q();
    let n = code.n();
    let hull = code.hull(flavor);
    if hull.h == 0 {
        return Err(Error::AlreadyLCD);
    }
    if flavor == Flavor::Hermitian && q == 2 && n == 2 {
        return Err(Error::Obstructed22);
    }

    // n = 2 with a nonzero hull forces k = 1 and C = Kv self-orthogonal;
    // search M_t = [[1,0],[t,1]] for the first t with <vM_t, vM_t> != 0.
    let mt_path = n == 2 && (flavor == Flavor::Euclidean || q == 3);
    if mt_path {
        debug_assert_eq!(code.k(), 1);
        let v = code.generator().row_vec(0);
        for t in 0..q {
            let vt = vec![&v[0] + &v[1].scale_fq(t), v[1].clone()];
            if !inner_product(&vt, &vt, flavor).is_zero() {
                let m =
                    MatrixFq::from_codes(&tower, vec![vec![1, 0], vec![t, 1]]).unwrap();
                let reduced = code.apply_equivalence(&m)?;
                return Ok((reduced, m));
            }
        }
        unreachable!("the norm polynomial P(t) has at most two roots");
    }

    // Binary constant hull K·1_n: normalize the first row to 1_n and clear
    // the first column with M = [[1, 1_{n-1}], [0, I_{n-1}]].
    if q == 2 && hull.h == 1 && is_all_ones_multiple(&hull.hull_basis[0]) {
        let one_row = vec![tower.one(); n];
        let g = code.generator();
        let cleared: Vec<Vec<FieldElement>> = (0..code.k())
            .map(|i| {
                let lead = g.at(i, 0).clone();
                g.row(i).iter().map(|x| x - &lead).collect()
            })
            .collect();
        let cleared = MatrixK::from_rows(&tower, cleared)?.row_space_basis();
        debug_assert_eq!(cleared.rows(), code.k() - 1);
        let mut rows = vec![one_row];
        rows.extend((0..cleared.rows()).map(|i| cleared.row_vec(i)));
        let normalized = RankCode::new(MatrixK::from_rows(&tower, rows)?)?;

        let mut m = MatrixFq::identity(&tower, n);
        for j in 1..n {
            m.set(0, j, 1);
        }
        let reduced = normalized.apply_equivalence(&m)?;
        return Ok((reduced, m));
    }

    // General rank-one descent: pick a hull vector (outside K·1_n when
    // q = 2, which exists because the constant-hull case was handled above).
    let w = if q == 2 && is_all_ones_multiple(&hull.hull_basis[0]) {
        hull.hull_basis[1].clone()
    } else {
        hull.hull_basis[0].clone()
    };
    let witness = descent_witness(&w, seed)?;
    let reduced = code.apply_equivalence(&witness.m)?;
    Ok((reduced, witness.m))
}

/// Walk the hull dimension down to `target`, recording one equivalence
/// matrix per step. Each step is checked to reduce the dimension by
/// exactly one.
pub fn vary_hull(
    code: &RankCode,
    target: usize,
    flavor: Flavor,
    seed: u64,
) -> Result<(RankCode, VariationTrace)> {
    let initial_h = code.hull_dim(flavor);
    if target > initial_h {
        return Err(Error::TargetAboveHull {
            target,
            h: initial_h,
        });
    }
    if flavor == Flavor::Hermitian
        && code.tower().q() == 2
        && code.n() == 2
        && target < initial_h
    {
        return Err(Error::Obstructed22);
    }
    let mut current = code.clone();
    let mut h = initial_h;
    let mut steps = Vec::new();
    while h > target {
        let (next, m) = reduce_hull_once(&current, flavor, seed)?;
        let h_after = next.hull_dim(flavor);
        assert_eq!(h_after, h - 1, "descent must drop the hull by exactly 1");
        steps.push((m, h_after));
        current = next;
        h = h_after;
    }
    Ok((
        current,
        VariationTrace {
            flavor,
            initial_h,
            final_h: h,
            steps,
        },
    ))
}

/// An equivalent code with trivial hull.
pub fn to_lcd(code: &RankCode, flavor: Flavor, seed: u64) -> Result<RankCode> {
    Ok(vary_hull(code, 0, flavor, seed)?.0)
}

/// An MRD code with parameters [2m, k, 2m−k+1] and Hermitian hull dimension
/// exactly `ell`: start from the self-orthogonal Gabidulin construction
/// (hull dimension k) and descend to `ell`.
pub fn mrd_with_hull(
    tower: &Arc<FieldTower>,
    k: usize,
    ell: usize,
    s: u64,
    seed: u64,
) -> Result<RankCode> {
    let q = tower.q();
    let m = tower.m();
    if q == 2 && m == 1 {
        return Err(Error::ExcludedParameters { q, m });
    }
    if k < 1 || k > m as usize {
        return Err(Error::InvalidK { k, max: m as usize });
    }
    if ell > k {
        return Err(Error::InvalidEll { ell, max: k });
    }
    let code = hermitian_so_gabidulin(tower, k, s, seed)?;
    debug_assert_eq!(code.hull_dim(Flavor::Hermitian), k);
    let (varied, _) = vary_hull(&code, ell, Flavor::Hermitian, seed)?;
    Ok(varied)
}
