mod common;

use fracpx::degree::*;
use fracpx::exponents::{PairExponent, PointExponent};
use fracpx::mesh::BoxDomain;
use fracpx::operators::ProblemData;
use fracpx::solver::SolverConfig;

fn deg(preset: MapPreset, region: BoxDomain) -> i64 {
    let target = vec![0.0; region.dim()];
    let f = move |x: &[f64]| preset.eval(x);
    degree(&DegreeProblem::new(&f, region, target)).unwrap().degree
}

fn square(a: f64, b: f64, c: f64, d: f64) -> BoxDomain {
    BoxDomain::new(vec![a, c], vec![b, d]).unwrap()
}

#[test]
fn additivity_on_cubic() {
    let whole = deg(MapPreset::Cubic, BoxDomain::interval(-2.0, 2.0));
    let parts: Vec<i64> = [(-2.0, -0.5), (-0.5, 0.5), (0.5, 2.0)]
        .iter()
        .map(|&(a, b)| deg(MapPreset::Cubic, BoxDomain::interval(a, b)))
        .collect();
    assert_eq!(parts, vec![1, -1, 1]);
    assert_eq!(parts.iter().sum::<i64>(), whole);
}

#[test]
fn additivity_on_z_squared_minus_one() {
    let whole = deg(MapPreset::ZSquaredMinusOne, square(-2.0, 2.0, -2.0, 2.0));
    let left = deg(MapPreset::ZSquaredMinusOne, square(-2.0, 0.0, -2.0, 2.0));
    let right = deg(MapPreset::ZSquaredMinusOne, square(0.0, 2.0, -2.0, 2.0));
    assert_eq!((whole, left, right), (2, 1, 1));
}

#[test]
fn nonzero_degree_yields_root() {
    for (preset, region) in [
        (MapPreset::Cubic, BoxDomain::interval(-2.0, 2.0)),
        (MapPreset::ComplexSquare, square(-1.0, 1.0, -1.0, 1.0)),
        (MapPreset::ZSquaredMinusOne, square(-2.0, 2.0, -2.0, 2.0)),
    ] {
        let f = move |x: &[f64]| preset.eval(x);
        let target = vec![0.0; region.dim()];
        let root = find_root(&DegreeProblem::new(&f, region, target)).unwrap();
        assert!(root.residual <= 1e-10, "{preset:?}: {root:?}");
    }
}

#[test]
fn homotopy_invariance_on_reductions() {
    for h in [1.0, 0.5] {
        for lambda in [0.0, 10.0] {
            for pair in [
                PairExponent::Constant { value: 2.0 },
                PairExponent::Affine { base: 1.8, slope: 0.4 },
            ] {
                let data = ProblemData::from_presets(
                    &BoxDomain::unit(1),
                    h,
                    0.5,
                    &pair,
                    &PointExponent::Constant { value: 1.5 },
                    lambda,
                )
                .unwrap();
                let verdict = verify_homotopy_invariance(&data, &SolverConfig::default()).unwrap();
                assert!(verdict.passed, "{verdict:?}");
                assert_eq!(verdict.steps.len(), 5);
                assert!(verdict.picard_distance.unwrap() <= 1e-6);
                if lambda == 0.0 {
                    assert!(verdict.root_v.iter().all(|v| v.abs() <= 1e-12));
                }
            }
        }
    }
}

#[test]
fn homotopy_refuses_large_meshes() {
    let data = common::fixed_instance(10.0);
    assert!(verify_homotopy_invariance(&data, &SolverConfig::default()).is_err());
}
