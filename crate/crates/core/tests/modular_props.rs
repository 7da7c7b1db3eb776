mod common;

use fracpx::exponents::ExponentField;
use fracpx::mesh::{BoxDomain, KernelTable, Mesh};
use fracpx::modular::*;
use proptest::prelude::*;

fn values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, n)
        .prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
}

fn lebesgue_setup(k: usize) -> (Mesh, Vec<f64>) {
    let mesh = Mesh::build(&BoxDomain::unit(1), 1.0 / 24.0).unwrap();
    let preset = &common::point_presets()[k];
    let expo = (0..mesh.len()).map(|i| preset.eval(mesh.node(i))).collect();
    (mesh, expo)
}

fn gagliardo_setup(k: usize) -> (KernelTable, ExponentField) {
    let mesh = Mesh::build(&BoxDomain::unit(1), 1.0 / 24.0).unwrap();
    let field = ExponentField::from_presets(
        &mesh,
        &common::pair_presets()[k],
        &fracpx::exponents::PointExponent::Constant { value: 1.3 },
    )
    .unwrap();
    let kernel = KernelTable::build(&mesh, 0.5, &field).unwrap();
    (kernel, field)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lebesgue_norm_is_a_norm(k in 0usize..5, u in values(24), v in values(24), c in -20.0f64..20.0) {
        let (mesh, expo) = lebesgue_setup(k);
        let m = LebesgueModular::on_mesh(&expo, &mesh).unwrap();
        let (u, v) = (GridFunction::new(u).unwrap(), GridFunction::new(v).unwrap());
        let nu = luxemburg_tight(&m, &u).unwrap();
        let nv = luxemburg_tight(&m, &v).unwrap();
        let ncu = luxemburg_tight(&m, &u.scaled(c)).unwrap();
        prop_assert!((ncu - c.abs() * nu).abs() <= 1e-9 * (c.abs() * nu).max(1e-300));
        let nsum = luxemburg_tight(&m, &u.add(&v)).unwrap();
        prop_assert!(nsum <= (nu + nv) * (1.0 + 1e-9));
        prop_assert!((m.eval(u.scaled(1.0 / nu).values()) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn lebesgue_norm_is_monotone(k in 0usize..5, u in values(24), grow in prop::collection::vec(1.0f64..3.0, 24)) {
        let (mesh, expo) = lebesgue_setup(k);
        let m = LebesgueModular::on_mesh(&expo, &mesh).unwrap();
        let u = GridFunction::new(u).unwrap();
        let bigger = GridFunction::new(u.values().iter().zip(&grow).map(|(a, b)| a * b).collect()).unwrap();
        prop_assert!(luxemburg_tight(&m, &u).unwrap() <= luxemburg_tight(&m, &bigger).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn gagliardo_norm_is_a_norm(k in 0usize..5, u in values(24), v in values(24), c in -20.0f64..20.0) {
        let (kernel, field) = gagliardo_setup(k);
        let m = GagliardoModular::new(&kernel, &field).unwrap();
        let (u, v) = (GridFunction::new(u).unwrap(), GridFunction::new(v).unwrap());
        let nu = luxemburg_tight(&m, &u).unwrap();
        let nv = luxemburg_tight(&m, &v).unwrap();
        let ncu = luxemburg_tight(&m, &u.scaled(c)).unwrap();
        prop_assert!((ncu - c.abs() * nu).abs() <= 1e-9 * (c.abs() * nu).max(1e-300));
        let nsum = luxemburg_tight(&m, &u.add(&v)).unwrap();
        prop_assert!(nsum <= (nu + nv) * (1.0 + 1e-9));
        prop_assert!((m.eval(u.scaled(1.0 / nu).values()) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn norm_modular_comparisons_hold(k in 0usize..5, u in values(24), scale in -3.0f64..3.0) {
        let u = GridFunction::new(u).unwrap().scaled(10f64.powf(scale));
        let (mesh, expo) = lebesgue_setup(k);
        let p1 = check_prop1(&u, &expo, &mesh).unwrap();
        prop_assert!(p1.passed(-1e-12), "{p1:?}");
        let (kernel, field) = gagliardo_setup(k);
        let p2 = check_prop2(&u, &kernel, &field).unwrap();
        prop_assert!(p2.passed(-1e-12), "{p2:?}");
    }
}

#[test]
fn constant_exponent_closed_form() {
    let domain = BoxDomain::new(vec![0.0, 0.0], vec![2.0, 1.5]).unwrap();
    let mesh = Mesh::build(&domain, 0.25).unwrap();
    for p in [1.1, 2.0, 3.7] {
        let expo = vec![p; mesh.len()];
        let m = LebesgueModular::on_mesh(&expo, &mesh).unwrap();
        for c in [-4.0, 0.3, 7.5] {
            let u = GridFunction::constant(mesh.len(), c);
            let norm = luxemburg(&m, &u, DEFAULT_NORM_TOL).unwrap().luxemburg;
            let exact = domain.volume().powf(1.0 / p) * f64::abs(c);
            assert!((norm - exact).abs() <= 1e-9 * exact, "{p} {c}: {norm} vs {exact}");
        }
    }
}

#[test]
fn zero_function_has_zero_norm() {
    let (mesh, expo) = lebesgue_setup(0);
    let m = LebesgueModular::on_mesh(&expo, &mesh).unwrap();
    let report = luxemburg(&m, &GridFunction::zeros(mesh.len()), DEFAULT_NORM_TOL).unwrap();
    assert_eq!(report.luxemburg, 0.0);
}
