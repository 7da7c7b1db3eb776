mod common;

use fracpx::modular::*;
use fracpx::operators::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;

const N: usize = 16;

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, N)
}

fn grid(v: Vec<f64>) -> GridFunction {
    GridFunction::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_identity(k in 0usize..5, u in values()) {
        let data = common::problem(&common::pair_presets()[k], 1.0 / N as f64, 10.0);
        let u = grid(u);
        let lhs = pairing(&apply_l(&u, &data).unwrap(), &u);
        let rho = data.gagliardo().eval(u.values());
        prop_assert!((lhs - rho).abs() <= 1e-12 * rho.max(1e-300));
    }

    #[test]
    fn l_is_strictly_monotone_and_odd(k in 0usize..5, u in values(), v in values()) {
        prop_assume!(u != v);
        let data = common::problem(&common::pair_presets()[k], 1.0 / N as f64, 10.0);
        let (u, v) = (grid(u), grid(v));
        let (lu, lv) = (apply_l(&u, &data).unwrap(), apply_l(&v, &data).unwrap());
        prop_assert!(pairing(&lu.sub(&lv), &u.sub(&v)) > 0.0);
        let lneg = apply_l(&u.scaled(-1.0), &data).unwrap();
        let flipped = lu.scaled(-1.0);
        prop_assert_eq!(lneg.values(), flipped.values());
    }

    #[test]
    fn energy_gradient_matches_central_differences(k in 0usize..5, u in values(), lambda in -5.0f64..20.0) {
        let data = common::problem(&common::pair_presets()[k], 1.0 / N as f64, lambda);
        let u = grid(u);
        let g = residual(&u, &data).unwrap();
        let floor = 1e-3 * u.sup_norm();
        for i in 0..N {
            let scale = u.values()[i].abs().max(floor);
            let step = if scale > 0.0 { f64::EPSILON.cbrt() * scale } else { 1e-6 };
            let mut up = u.values().to_vec();
            let mut dn = u.values().to_vec();
            up[i] += step;
            dn[i] -= step;
            let fd = (energy(&grid(up), &data).unwrap() - energy(&grid(dn), &data).unwrap()) / (2.0 * step);
            let gi = g.values()[i];
            prop_assert!((fd - gi).abs() <= 1e-5 * g.sup_norm(), "node {i}: fd {fd} vs {gi}");
        }
    }

    #[test]
    fn inverse_round_trip(k in 0usize..5, u in values()) {
        let data = common::problem(&common::pair_presets()[k], 1.0 / N as f64, 10.0);
        let u = grid(u);
        let back = apply_t(&apply_l(&u, &data).unwrap(), &data, 1e-12).unwrap();
        prop_assert!(back.sub(&u).sup_norm() <= 1e-6);
    }
}

#[test]
fn inverse_matches_dense_solve_for_quadratic_exponent() {
    let data = common::fixed_instance(10.0);
    let n = data.len();
    // L is linear for p = q = 2: assemble it column by column
    let mut a = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let col = apply_l(&grid(e), &data).unwrap();
        for i in 0..n {
            a[(i, j)] = col.values()[i];
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for f in random_grid_functions(data.mesh(), 10, &mut rng) {
        let v = DualVector::new(f.values().to_vec()).unwrap();
        let dense = a.clone().lu().solve(&DVector::from_column_slice(v.values())).unwrap();
        let u = apply_t(&v, &data, 1e-12).unwrap();
        let err = u.values().iter().zip(dense.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(err <= 1e-8 * dense.amax().max(1.0), "{err}");
    }
}

#[test]
fn source_operator_is_bounded() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for pair in common::pair_presets() {
        let data = common::problem(&pair, 1.0 / N as f64, 10.0);
        let samples = random_grid_functions(data.mesh(), 40, &mut rng);
        let alpha = source_exponent(data.field());
        let la = LebesgueModular::on_mesh(&alpha, data.mesh()).unwrap();
        for u in &samples {
            let with_u: Vec<_> = samples.iter().chain(std::iter::once(u)).collect();
            let c_q = embedding_constant(&data.lebesgue_q(), &data.gagliardo(), with_u.iter().copied()).unwrap();
            let c_a = embedding_constant(&la, &data.gagliardo(), with_u.iter().copied()).unwrap();
            let check = check_s_bounds(u, &data, c_q, c_a).unwrap();
            assert!(check.holds, "{check:?}");
        }
    }
}

#[test]
fn zero_maps_to_zero() {
    let data = common::fixed_instance(10.0);
    let zero = GridFunction::zeros(data.len());
    assert!(apply_l(&zero, &data).unwrap().values().iter().all(|v| *v == 0.0));
    assert!(apply_s(&zero, &data).unwrap().values().iter().all(|v| *v == 0.0));
    assert_eq!(energy(&zero, &data).unwrap(), 0.0);
    assert!(apply_t(&DualVector::zeros(data.len()), &data, 1e-12).unwrap().is_zero());
}
