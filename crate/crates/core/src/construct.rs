//! Constructions: Moore matrices and generalized Gabidulin codes, power
//! sums of a basis, scaled trace-self-dual bases, and Hermitian
//! self-orthogonal MRD codes built from them.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::RankCode;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, TowerExt};
use crate::linalg::{is_fq_basis, MatrixFq, MatrixK};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Evaluation data for a generalized Gabidulin code: an F_q-basis of K, a
/// dimension k, and a Frobenius step s coprime to 2m.
#[derive(Debug, Clone)]
pub struct GabidulinSpec {
    pub alpha: Vec<FieldElement>,
    pub k: usize,
    pub s: u64,
}

impl GabidulinSpec {
    pub fn new(alpha: Vec<FieldElement>, k: usize, s: u64) -> Result<Self> {
        if !is_fq_basis(&alpha) {
            return Err(Error::NotABasis);
        }
        let two_m = alpha[0].tower().ext_degree() as u64;
        if gcd(s, two_m) != 1 {
            return Err(Error::InvalidStep { s, two_m });
        }
        if k < 1 || k as u64 > two_m {
            return Err(Error::InvalidK {
                k,
                max: two_m as usize,
            });
        }
        Ok(GabidulinSpec { alpha, k, s })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.alpha[0].tower()
    }
}

/// The k x 2m matrix whose i-th row is α^{q^{si}} (row 0 is α itself).
pub fn moore_matrix(spec: &GabidulinSpec) -> MatrixK {
    let tower = spec.tower();
    let mut rows = Vec::with_capacity(spec.k);
    let mut row = spec.alpha.clone();
    for _ in 0..spec.k {
        rows.push(row.clone());
        row = row
            .iter()
            .map(|x| x.frobenius_power(spec.s as i64))
            .collect();
    }
    MatrixK::from_rows(tower, rows).expect("basis rows share a tower")
}

/// The generalized Gabidulin code G_{k,s}(α): MRD with parameters
/// [2m, k, 2m−k+1].
pub fn gabidulin_code(spec: &GabidulinSpec) -> RankCode {
    RankCode::new(moore_matrix(spec)).expect("Moore matrix of a basis has full rank")
}

/// The power sums S_r = Σ_i α_i α_i^{q^r} for r = 0..2m-1. For a scaled
/// trace-self-dual basis (α, λ), S_0 = λ^{-1} and all other S_r vanish.
#[derive(Debug, Clone)]
pub struct PowerSums {
    pub values: Vec<FieldElement>,
}

pub fn power_sums(alpha: &[FieldElement]) -> Result<PowerSums> {
    if !is_fq_basis(alpha) {
        return Err(Error::NotABasis);
    }
    let tower = alpha[0].tower();
    let values = (0..tower.ext_degree())
        .map(|r| {
            let mut acc = tower.zero();
            for a in alpha {
                let term = a * &a.frobenius_power(r as i64);
                acc = &acc + &term;
            }
            acc
        })
        .collect();
    Ok(PowerSums { values })
}

/// A pair (α, λ) with Tr(λ α_i α_j) = δ_ij.
#[derive(Debug, Clone)]
pub struct ScaledSelfDualBasis {
    pub alpha: Vec<FieldElement>,
    pub lambda: FieldElement,
}

/// All (2m)^2 trace identities Tr(λ α_i α_j) = δ_ij.
pub fn verify_scaled_basis(basis: &ScaledSelfDualBasis) -> bool {
    let tower = basis.lambda.tower();
    let two_m = tower.ext_degree();
    if basis.alpha.len() != two_m {
        return false;
    }
    for i in 0..two_m {
        for j in 0..two_m {
            let t = (&(&basis.lambda * &basis.alpha[i]) * &basis.alpha[j]).trace_code();
            let expected = if i == j { 1 } else { 0 };
            if t != expected {
                return false;
            }
        }
    }
    true
}

/// Gram matrix M_λ = (Tr(λ β_i β_j))_{ij} of the scaled trace form in the
/// basis β; symmetric and nondegenerate over F_q.
pub fn gram_of_scaled_form(beta: &[FieldElement], lambda: &FieldElement) -> Result<MatrixFq> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if !is_fq_basis(beta) {
        return Err(Error::NotABasis);
    }
    let tower = lambda.tower();
    let two_m = tower.ext_degree();
    let mut m = MatrixFq::zero(tower, two_m, two_m);
    for i in 0..two_m {
        for j in i..two_m {
            let t = (&(lambda * &beta[i]) * &beta[j]).trace_code();
            m.set(i, j, t);
            m.set(j, i, t);
        }
    }
    Ok(m)
}

/// A generator of K*, found by order testing in canonical encoding order.
pub fn primitive_element(tower: &Arc<FieldTower>) -> Result<FieldElement> {
    let size = tower.field_size();
    if size > 1 << 32 {
        return Err(Error::WrongParameters(
            "generator search is desk-scale only (|K| <= 2^32)".into(),
        ));
    }
    let order = (size - 1) as u64;
    let primes = prime_factors(order);
    'cand: for n in 2..size {
        let x = tower.from_canonical(n).expect("in range");
        for &r in &primes {
            if x.pow(order / r).is_one() {
                continue 'cand;
            }
        }
        return Ok(x);
    }
    unreachable!("K* is cyclic");
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A scale λ with N(λ) = Δ^{-1}, where Δ = det of the unscaled trace Gram
/// matrix in the basis β, so that det(M_λ) = N(λ)Δ = 1. For even q the
/// ordinary self-dual basis exists and λ = 1 is returned.
pub fn find_scale_lambda(beta: &[FieldElement]) -> Result<FieldElement> {
    if !is_fq_basis(beta) {
        return Err(Error::NotABasis);
    }
    let tower = Arc::clone(beta[0].tower());
    if tower.p() == 2 {
        return Ok(tower.one());
    }
    let m1 = gram_of_scaled_form(beta, &tower.one())?;
    let delta = m1.det();
    debug_assert_ne!(delta, 0, "trace form is nondegenerate");
    let target = tower.fq_inv(delta);
    // The norm of a generator of K* generates F_q*; a linear search over
    // exponents avoids any discrete-log machinery.
    let g = primitive_element(&tower)?;
    let ng = g.norm_code();
    let q = tower.q();
    for j in 0..q - 1 {
        if tower.fq_pow(ng, j) == target {
            return Ok(g.pow(j));
        }
    }
    unreachable!("the norm map is onto F_q*");
}

/// Change-of-basis A with A S Aᵀ = I for a symmetric nondegenerate S over
/// F_q. For odd q the input must have det(S) = 1 (otherwise the final
/// 1-dimensional block carries a non-square and the form is not equivalent
/// to the standard one); for q even S must not be alternating.
///
/// The loop extracts unit vectors one at a time. Over F_2^e the residual
/// form can turn alternating; in that case one previously extracted unit g
/// plus a hyperbolic pair (e, f) from the residual are traded for the
/// orthonormal triple {g+e, g+f, g+e+f}.
pub fn orthonormalize_form(s: &MatrixFq, seed: u64) -> Result<MatrixFq> {
    let n = s.rows();
    if n != s.cols() {
        return Err(Error::NotSymmetric);
    }
    if *s != s.transpose() {
        return Err(Error::NotSymmetric);
    }
    if s.rank() != n {
        return Err(Error::Degenerate);
    }
    let tower = Arc::clone(s.tower());
    let q = tower.q();
    let char2 = tower.p() == 2;

    // Smallest square root per F_q code (None for non-squares).
    let mut sqrt: Vec<Option<u64>> = vec![None; q as usize];
    for y in 0..q {
        let sq = tower.fq_mul(y, y) as usize;
        if sqrt[sq].is_none() {
            sqrt[sq] = Some(y);
        }
    }

    let bform = |u: &[u64], v: &[u64]| -> u64 {
        let mut acc = 0u64;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let mut row = 0u64;
            for (j, &vj) in v.iter().enumerate() {
                row = tower.fq_add(row, tower.fq_mul(s.at(i, j), vj));
            }
            acc = tower.fq_add(acc, tower.fq_mul(ui, row));
        }
        acc
    };
    let add_scaled = |u: &[u64], v: &[u64], c: u64| -> Vec<u64> {
        u.iter()
            .zip(v)
            .map(|(&a, &b)| tower.fq_add(a, tower.fq_mul(c, b)))
            .collect()
    };
    let reduce = |rows: Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        if rows.is_empty() {
            return rows;
        }
        let m = MatrixFq::from_codes(&tower, rows).expect("uniform width");
        let (r, rank, _) = m.rref();
        (0..rank).map(|i| r.row_codes(i).to_vec()).collect()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut res: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0u64; n];
            v[i] = 1;
            v
        })
        .collect();

    while !res.is_empty() {
        let unit_norm = |v: &Vec<u64>| -> Option<u64> {
            let b = bform(v, v);
            if b == 0 {
                return None;
            }
            sqrt[b as usize].map(|r| tower.fq_inv(r))
        };

        // Search for a vector of square nonzero norm: residual basis first,
        // then two-term combinations, then seeded random, then exhaustive.
        let mut found: Option<Vec<u64>> = None;
        for v in &res {
            if unit_norm(v).is_some() {
                found = Some(v.clone());
                break;
            }
        }
        if found.is_none() {
            'pairs: for i in 0..res.len() {
                for j in i + 1..res.len() {
                    for c in 1..q {
                        let v = add_scaled(&res[i], &res[j], c);
                        if unit_norm(&v).is_some() {
                            found = Some(v);
                            break 'pairs;
                        }
                    }
                }
            }
        }
        if found.is_none() && res.len() >= 2 {
            for _ in 0..200 {
                let mut v = vec![0u64; n];
                for w in &res {
                    v = add_scaled(&v, w, rng.gen_range(0..q));
                }
                if v.iter().any(|&c| c != 0) && unit_norm(&v).is_some() {
                    found = Some(v);
                    break;
                }
            }
        }
        if found.is_none() && !char2 {
            // Exhaustive fallback over the span of the residual.
            let dim = res.len();
            let mut counter = vec![0u64; dim];
            'sweep: loop {
                let mut pos = 0;
                loop {
                    if pos == dim {
                        break 'sweep;
                    }
                    counter[pos] += 1;
                    if counter[pos] < q {
                        break;
                    }
                    counter[pos] = 0;
                    pos += 1;
                }
                let mut v = vec![0u64; n];
                for (w, &c) in res.iter().zip(&counter) {
                    v = add_scaled(&v, w, c);
                }
                if unit_norm(&v).is_some() {
                    found = Some(v);
                    break;
                }
            }
        }

        match found {
            Some(v) => {
                let scale = unit_norm(&v).expect("selected for square norm");
                let u: Vec<u64> = v.iter().map(|&c| tower.fq_mul(c, scale)).collect();
                debug_assert_eq!(bform(&u, &u), 1);
                let projected: Vec<Vec<u64>> = res
                    .iter()
                    .map(|w| {
                        let c = tower.fq_neg(bform(w, &u));
                        add_scaled(w, &u, c)
                    })
                    .collect();
                res = reduce(projected);
                out.push(u);
            }
            None if char2 => {
                // Alternating residual: trade one unit for a triple.
                let Some(g) = out.pop() else {
                    return Err(Error::NotOrthonormalizable(
                        "alternating form over F_{2^e}".into(),
                    ));
                };
                let e = res[0].clone();
                let fpos = (1..res.len())
                    .find(|&j| bform(&e, &res[j]) != 0)
                    .expect("nondegenerate residual pairs every vector");
                let scale = tower.fq_inv(bform(&e, &res[fpos]));
                let f: Vec<u64> = res[fpos].iter().map(|&c| tower.fq_mul(c, scale)).collect();
                let ge = add_scaled(&g, &e, 1);
                let gf = add_scaled(&g, &f, 1);
                let gef = add_scaled(&ge, &f, 1);
                out.push(ge);
                out.push(gf);
                out.push(gef);
                let rest: Vec<Vec<u64>> = res
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != 0 && j != fpos)
                    .map(|(_, w)| {
                        // Symplectic complement of the pair (e, f).
                        let w1 = add_scaled(w, &e, tower.fq_neg(bform(w, &f)));
                        add_scaled(&w1, &f, tower.fq_neg(bform(&w1, &e)))
                    })
                    .collect();
                res = reduce(rest);
            }
            None => {
                return Err(Error::NotOrthonormalizable(
                    "residual block represents no nonzero square".into(),
                ));
            }
        }
    }

    let a = MatrixFq::from_codes(&tower, out).expect("n unit vectors");
    let check = a.mul(s).expect("n x n").mul(&a.transpose()).expect("n x n");
    assert_eq!(
        check,
        MatrixFq::identity(&tower, n),
        "orthonormalization postcondition"
    );
    Ok(a)
}

/// A scaled trace-self-dual basis of K/F_q: λ from the determinant search,
/// then an orthonormal basis of the scaled trace form, expressed against
/// the power basis.
pub fn scaled_self_dual_basis(
    tower: &Arc<FieldTower>,
    seed: u64,
) -> Result<ScaledSelfDualBasis> {
    let beta = tower.power_basis();
    let lambda = find_scale_lambda(&beta)?;
    let gram = gram_of_scaled_form(&beta, &lambda)?;
    let a = orthonormalize_form(&gram, seed)?;
    // Rows of A are coordinates against the power basis, so they are the
    // coefficient vectors of the α_i themselves.
    let alpha: Vec<FieldElement> = (0..tower.ext_degree())
        .map(|i| tower.from_coeffs(a.row_codes(i)).expect("codes below q"))
        .collect();
    let basis = ScaledSelfDualBasis { alpha, lambda };
    debug_assert!(verify_scaled_basis(&basis));
    Ok(basis)
}

/// A Hermitian self-orthogonal MRD code: the generalized Gabidulin code of
/// a scaled trace-self-dual basis, for any 1 ≤ k ≤ m and gcd(s, 2m) = 1.
/// For k = m the result is Hermitian self-dual.
pub fn hermitian_so_gabidulin(
    tower: &Arc<FieldTower>,
    k: usize,
    s: u64,
    seed: u64,
) -> Result<RankCode> {
    let m = tower.m() as usize;
    if k < 1 || k > m {
        return Err(Error::InvalidK { k, max: m });
    }
    let two_m = tower.ext_degree() as u64;
    if gcd(s, two_m) != 1 {
        return Err(Error::InvalidStep { s, two_m });
    }
    let basis = scaled_self_dual_basis(tower, seed)?;
    let spec = GabidulinSpec::new(basis.alpha, k, s)?;
    Ok(gabidulin_code(&spec))
}
