//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them) and enforcing its own wall-clock budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankhull::codes::{inner_product, random_code, rank_weight, DualCode, Flavor, RankCode};
use rankhull::construct::{
    find_scale_lambda, gabidulin_code, gram_of_scaled_form, hermitian_so_gabidulin,
    moore_matrix, power_sums, scaled_self_dual_basis, verify_scaled_basis, GabidulinSpec,
};
use rankhull::fields;
use rankhull::gf::{FieldElement, FieldTower, TowerExt};
use rankhull::hullvary::{descent_witness, mrd_with_hull, reduce_hull_once, vary_hull};
use rankhull::linalg::{MatrixFq, MatrixK};
use rankhull::oracle::{euclidean_so_mrd_search, hull_spectrum};

const ENUM_CAP: u64 = 1 << 20;

struct Criterion {
    number: usize,
    name: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn new(number: usize, name: &'static str, budget_secs: u64) -> Criterion {
        Criterion {
            number,
            name,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed();
        let pass = elapsed <= self.budget;
        println!(
            "criterion {:>2}: {} ({:.3}s) — {}",
            self.number,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            self.name
        );
        assert!(
            pass,
            "criterion {} exceeded its {}s budget ({:.3}s)",
            self.number,
            self.budget.as_secs(),
            elapsed.as_secs_f64()
        );
    }
}

fn mk_rows(tower: &Arc<FieldTower>, rows: &[&[u128]]) -> MatrixK {
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

fn ones_hull_code(f16: &Arc<FieldTower>) -> RankCode {
    // G = [[1,1,1,1],[0,1,w,w+1]]; w has canonical code 2, w+1 code 3.
    RankCode::new(mk_rows(f16, &[&[1, 1, 1, 1], &[0, 1, 2, 3]])).unwrap()
}

#[test]
fn criterion_01_binary_constant_hull_golden() {
    let c = Criterion::new(1, "binary constant-hull example reduces to LCD", 1);
    let f16 = fields::f16();
    let code = ones_hull_code(&f16);

    let gram = code.gram(Flavor::Hermitian);
    assert_eq!(gram, mk_rows(&f16, &[&[0, 0], &[0, 1]]));

    let hull = code.hull(Flavor::Hermitian);
    assert_eq!(hull.h, 1);
    let all_ones = mk_rows(&f16, &[&[1, 1, 1, 1]]);
    let hull_m = MatrixK::from_rows(&f16, hull.hull_basis.clone()).unwrap();
    assert!(hull_m.row_space_eq(&all_ones));

    // The stated M and the reduction step agree, and G' is bit-exact.
    let stated_m = MatrixFq::from_codes(
        &f16,
        vec![
            vec![1, 1, 1, 1],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ],
    )
    .unwrap();
    let expected_g = mk_rows(&f16, &[&[1, 0, 0, 0], &[0, 1, 2, 3]]);
    let applied = code.apply_equivalence(&stated_m).unwrap();
    assert_eq!(*applied.generator(), expected_g);
    assert_eq!(applied.hull_dim(Flavor::Hermitian), 0);

    let (reduced, m) = reduce_hull_once(&code, Flavor::Hermitian, 0).unwrap();
    assert_eq!(m, stated_m);
    assert_eq!(*reduced.generator(), expected_g);
    assert_eq!(reduced.hull_dim(Flavor::Hermitian), 0);
    c.finish();
}

#[test]
fn criterion_02_binary_descent_golden() {
    let c = Criterion::new(2, "binary rank-one descent reproduces the worked step", 1);
    let f16 = fields::f16();
    // G = [[w^3,1,0,0],[0,0,1,0]]; w^3 has canonical code 8.
    let code = RankCode::new(mk_rows(&f16, &[&[8, 1, 0, 0], &[0, 0, 1, 0]])).unwrap();

    let hull = code.hull(Flavor::Hermitian);
    assert_eq!(hull.h, 1);
    let w = hull.hull_basis[0].clone();
    assert_eq!(w, mk_rows(&f16, &[&[8, 1, 0, 0]]).row_vec(0));

    let witness = descent_witness(&w, 0).unwrap();
    assert_eq!(witness.u, vec![1, 1, 0, 0]);
    let stated_m = MatrixFq::from_codes(
        &f16,
        vec![
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![1, 1, 1, 0],
            vec![0, 0, 0, 1],
        ],
    )
    .unwrap();
    assert_eq!(witness.m, stated_m);

    // M Mᵀ = I_4 + uᵀu.
    let mut expected = MatrixFq::identity(&f16, 4);
    for i in 0..2 {
        for j in 0..2 {
            let v = if i == j { 0 } else { 1 };
            expected.set(i, j, v);
        }
    }
    assert_eq!(stated_m.mul(&stated_m.transpose()).unwrap(), expected);

    let (reduced, m) = reduce_hull_once(&code, Flavor::Hermitian, 0).unwrap();
    assert_eq!(m, stated_m);
    // G'(G')† = [[w^2+w+1, 0], [0, 1]]; w^2+w+1 has canonical code 7.
    assert_eq!(
        reduced.gram(Flavor::Hermitian),
        mk_rows(&f16, &[&[7, 0], &[0, 1]])
    );
    assert_eq!(reduced.hull_dim(Flavor::Hermitian), 0);
    c.finish();
}

#[test]
fn criterion_03_f9_scaled_basis_golden() {
    let c = Criterion::new(3, "scaled basis over F9 gives a self-dual MRD code", 1);
    let f9 = fields::f9();
    let one = f9.one();
    let w = f9.omega();

    // Δ = det M_1 = 2 and λ = 1 + w has N(λ) = 2 = Δ^{-1}.
    let beta = f9.power_basis();
    let m1 = gram_of_scaled_form(&beta, &one).unwrap();
    assert_eq!(m1.det(), 2);
    let lambda = find_scale_lambda(&beta).unwrap();
    assert_eq!(lambda, &one + &w);
    assert_eq!(lambda.norm_code(), 2);

    // (α, λ) with α = (w, 1−w) passes all four trace identities.
    let basis = scaled_self_dual_basis(&f9, 0).unwrap();
    assert_eq!(basis.alpha, vec![w.clone(), &one - &w]);
    assert_eq!(basis.lambda, lambda);
    assert!(verify_scaled_basis(&basis));

    // G_{1,1}(α) is Hermitian self-dual with minimum rank distance 2.
    let spec = GabidulinSpec::new(basis.alpha.clone(), 1, 1).unwrap();
    let code = gabidulin_code(&spec);
    match code.dual(Flavor::Hermitian) {
        DualCode::Code(d) => assert!(d.same_code(&code)),
        DualCode::Zero { .. } => panic!("dual of a [2,1] code is 1-dimensional"),
    }
    assert_eq!(code.min_rank_distance(ENUM_CAP).unwrap(), 2);
    assert!(code.is_mrd(ENUM_CAP).unwrap());

    // Exhaustive in the strongest sense: all 8 nonzero codewords.
    for n in 1..9u128 {
        let a = f9.from_canonical(n).unwrap();
        let word: Vec<FieldElement> = code.generator().row(0).iter().map(|g| &a * g).collect();
        assert_eq!(rank_weight(&word), 2);
    }
    c.finish();
}

#[test]
fn criterion_04_f4_obstruction() {
    let c = Criterion::new(4, "no LCD code in the class of K(1,w) over F4", 1);
    let f4 = fields::f4();
    let code = RankCode::new(mk_rows(&f4, &[&[1, 2]])).unwrap();
    let report = hull_spectrum(&code, Flavor::Hermitian, 1_000_000).unwrap();
    assert_eq!(report.group_size, 6);
    assert_eq!(report.histogram.len(), 1);
    assert_eq!(report.histogram.get(&1), Some(&6));
    assert_eq!(report.attained, vec![1]);
    c.finish();
}

/// The (q, m, n, k) grid shared by criteria 5 and 11.
fn variation_grid(include_22: bool) -> Vec<(Arc<FieldTower>, usize, usize)> {
    let mut grid = Vec::new();
    let f16 = fields::f16();
    let f9 = fields::f9();
    let f81 = fields::f81();
    let f16q4 = fields::f16_over_f4();
    for n in 3..=4 {
        for k in 1..=3.min(n) {
            grid.push((Arc::clone(&f16), n, k));
        }
    }
    if include_22 {
        for k in 1..=2 {
            grid.push((Arc::clone(&f16), 2, k));
        }
    }
    grid.push((Arc::clone(&f9), 2, 1));
    for n in 3..=4 {
        for k in 1..=3.min(n) {
            grid.push((Arc::clone(&f81), n, k));
        }
    }
    for n in 2..=3 {
        for k in 1..=2.min(n) {
            grid.push((Arc::clone(&f16q4), n, k));
        }
    }
    grid
}

/// vary_hull to every admissible target, re-walking the trace and verifying
/// every intermediate hull dimension by the nullity formula and by the
/// intersection oracle.
fn exercise_variation(code: &RankCode, flavor: Flavor, seed: u64) {
    let h = code.hull_dim(flavor);
    assert_eq!(h, code.hull_oracle(flavor).unwrap().h);
    for target in 0..=h {
        let (varied, trace) = vary_hull(code, target, flavor, seed).unwrap();
        assert_eq!(varied.hull_dim(flavor), target);
        assert_eq!(varied.hull_oracle(flavor).unwrap().h, target);
        assert_eq!(trace.initial_h, h);
        assert_eq!(trace.final_h, target);
        assert_eq!(trace.steps.len(), h - target);

        let mut current = code.clone();
        let mut expected_h = h;
        for (m, h_after) in &trace.steps {
            current = current.apply_equivalence(m).unwrap();
            expected_h -= 1;
            assert_eq!(*h_after, expected_h);
            assert_eq!(current.hull_dim(flavor), expected_h);
            assert_eq!(current.hull_oracle(flavor).unwrap().h, expected_h);
        }
        assert!(current.same_code(&varied));
    }
}

fn run_variation_suite(flavor: Flavor, include_22: bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_809);
    let mut code_count = 0usize;
    for (tower, n, k) in variation_grid(include_22) {
        if flavor == Flavor::Hermitian && tower.q() == 2 && n == 2 {
            continue;
        }
        for _ in 0..4 {
            let code = random_code(&tower, n, k, &mut rng);
            exercise_variation(&code, flavor, 7);
            code_count += 1;
        }
        // Self-orthogonal Gabidulin codes push the hull to its maximum and
        // force multi-step descents when the geometry allows it.
        if n == tower.ext_degree() && k <= tower.m() as usize {
            let so = hermitian_so_gabidulin(&tower, k, 1, 0).unwrap();
            exercise_variation(&so, flavor, 7);
            code_count += 1;
        }
    }
    if flavor == Flavor::Euclidean {
        // The all-ones line in K^2 is the one Euclidean self-orthogonal
        // shape at (q, n) = (2, 2).
        let f16 = fields::f16();
        let ones = RankCode::new(mk_rows(&f16, &[&[1, 1]])).unwrap();
        assert_eq!(ones.hull_dim(Flavor::Euclidean), 1);
        exercise_variation(&ones, Flavor::Euclidean, 7);

        // A [4,3] binary code whose Euclidean hull is exactly K·1_4, which
        // drives the constant-hull row normalization.
        let constant = RankCode::new(mk_rows(
            &f16,
            &[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]],
        ))
        .unwrap();
        let hull = constant.hull(Flavor::Euclidean);
        assert_eq!(hull.h, 1);
        assert!(MatrixK::from_rows(&f16, hull.hull_basis)
            .unwrap()
            .row_space_eq(&mk_rows(&f16, &[&[1, 1, 1, 1]])));
        exercise_variation(&constant, Flavor::Euclidean, 7);
        code_count += 2;
    }
    assert!(code_count >= 60, "grid produced only {code_count} codes");
}

#[test]
fn criterion_05_hermitian_variation_suite() {
    let c = Criterion::new(5, "every Hermitian hull dimension below h is attained", 60);
    run_variation_suite(Flavor::Hermitian, false);
    c.finish();
}

const SO_GRID: [(u64, u32, u64); 5] = [(2, 2, 1), (2, 2, 3), (3, 1, 1), (3, 2, 1), (4, 1, 1)];

fn tower_for(q: u64, m: u32) -> Arc<FieldTower> {
    fields::by_parameters(q, m).expect("grid towers ship with the crate")
}

#[test]
fn criterion_06_self_orthogonal_gabidulin_suite() {
    let c = Criterion::new(6, "scaled bases give self-orthogonal MRD codes", 120);
    for (q, m, s) in SO_GRID {
        let tower = tower_for(q, m);
        for k in 1..=m as usize {
            let code = hermitian_so_gabidulin(&tower, k, s, 0).unwrap();
            assert_eq!((code.n(), code.k()), (2 * m as usize, k));
            assert!(code.gram(Flavor::Hermitian).is_zero(), "GG† must vanish");
            let predicted = 2 * m as usize - k + 1;
            assert_eq!(code.min_rank_distance(ENUM_CAP).unwrap(), predicted);
        }
    }
    c.finish();
}

#[test]
fn criterion_07_power_sum_identities() {
    let c = Criterion::new(7, "power sums vanish and drive the orthogonality", 120);
    for (q, m, s) in SO_GRID {
        let tower = tower_for(q, m);
        let two_m = tower.ext_degree();
        let basis = scaled_self_dual_basis(&tower, 0).unwrap();
        let sums = power_sums(&basis.alpha).unwrap();
        assert!(
            (&basis.lambda * &sums.values[0]).is_one(),
            "S_0 λ = 1 for q = {q}, m = {m}"
        );
        for r in 1..two_m {
            assert!(sums.values[r].is_zero(), "S_{r} = 0 for q = {q}, m = {m}");
        }

        // <v_i, v_j>_H = (S_{(j-i)s+m})^(q^{is}) for all Moore rows.
        let k = m as usize;
        let spec = GabidulinSpec::new(basis.alpha.clone(), k, s).unwrap();
        let moore = moore_matrix(&spec);
        for i in 0..k {
            for j in 0..k {
                let lhs = inner_product(moore.row(i), moore.row(j), Flavor::Hermitian);
                let r = ((j as i64 - i as i64) * s as i64 + m as i64)
                    .rem_euclid(two_m as i64) as usize;
                let rhs = sums.values[r].frobenius_power(i as i64 * s as i64);
                assert_eq!(lhs, rhs, "row pair ({i}, {j}) for q = {q}, m = {m}, s = {s}");
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_08_mrd_with_prescribed_hull() {
    let c = Criterion::new(8, "MRD codes exist with every admissible hull", 120);
    for (q, m) in [(3u64, 1u32), (2, 2), (3, 2)] {
        let tower = tower_for(q, m);
        for k in 1..=m as usize {
            for ell in 0..=k {
                let code = mrd_with_hull(&tower, k, ell, 1, 0).unwrap();
                assert_eq!((code.n(), code.k()), (2 * m as usize, k));
                assert_eq!(code.hull_dim(Flavor::Hermitian), ell);
                assert_eq!(code.hull_oracle(Flavor::Hermitian).unwrap().h, ell);
                let predicted = 2 * m as usize - k + 1;
                assert_eq!(code.min_rank_distance(ENUM_CAP).unwrap(), predicted);
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_09_hull_cross_validation() {
    let c = Criterion::new(9, "nullity hull equals the intersection oracle", 60);
    for tower in [
        fields::f16(),
        fields::f9(),
        fields::f4(),
        fields::f81(),
        fields::f16_over_f4(),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(9_000 + tower.q());
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=n);
            let code = random_code(&tower, n, k, &mut rng);
            let direct = code.hull(Flavor::Hermitian);
            let oracle = code.hull_oracle(Flavor::Hermitian).unwrap();
            assert_eq!(direct.h, oracle.h);
            if direct.h > 0 {
                let a = MatrixK::from_rows(&tower, direct.hull_basis.clone()).unwrap();
                let b = MatrixK::from_rows(&tower, oracle.hull_basis.clone()).unwrap();
                assert!(a.row_space_eq(&b));
            }

            // The oracle's kernel witnesses annihilate the Gram matrix.
            let gram = code.gram(Flavor::Hermitian);
            for z in &oracle.kernel_basis {
                for i in 0..k {
                    let mut acc = tower.zero();
                    for (j, zj) in z.iter().enumerate() {
                        let add = gram.at(i, j) * zj;
                        acc = &acc + &add;
                    }
                    assert!(acc.is_zero());
                }
            }

            // The σ-semilinear bijection z ↦ z†G lands in C ∩ C^⊥H.
            for (z, v) in direct.kernel_basis.iter().zip(&direct.hull_basis) {
                let mapped: Vec<FieldElement> = (0..n)
                    .map(|col| {
                        let mut acc = tower.zero();
                        for (row, zi) in z.iter().enumerate() {
                            let add = &zi.sigma() * code.generator().at(row, col);
                            acc = &acc + &add;
                        }
                        acc
                    })
                    .collect();
                assert_eq!(&mapped, v);
                assert!(code.contains(v));
                for i in 0..k {
                    assert!(inner_product(v, code.generator().row(i), Flavor::Hermitian)
                        .is_zero());
                }
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_10_no_euclidean_so_mrd_in_even_characteristic() {
    let c = Criterion::new(10, "Euclidean self-orthogonal MRD search is empty", 10);
    // Smallest admissible (m, n, k) = (2, 2, 1) with K = F_{q^m}: q = 2
    // reads F_4 as F_{2^2}, q = 4 reads F_16 as F_{4^2}.
    for tower in [fields::f4(), fields::f16_over_f4()] {
        let violations = euclidean_so_mrd_search(&tower, 2, 1, false, ENUM_CAP).unwrap();
        assert!(violations.is_empty());
    }
    c.finish();
}

#[test]
fn criterion_11_euclidean_variation_suite() {
    let c = Criterion::new(11, "Euclidean variation covers (q, n) = (2, 2) too", 60);
    run_variation_suite(Flavor::Euclidean, true);
    c.finish();
}
