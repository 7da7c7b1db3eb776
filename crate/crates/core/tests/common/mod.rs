#![allow(dead_code)]

use fracpx::exponents::{PairExponent, PointExponent};
use fracpx::mesh::BoxDomain;
use fracpx::operators::ProblemData;

pub fn pair_presets() -> Vec<PairExponent> {
    vec![
        PairExponent::Constant { value: 2.0 },
        PairExponent::Affine { base: 1.5, slope: 1.0 },
        PairExponent::Distance { base: 1.6, slope: 0.8 },
        PairExponent::Radial { base: 1.7, amplitude: 0.6, center: vec![] },
        PairExponent::Oscillating { base: 2.0, amplitude: 0.4, frequency: 6.0 },
    ]
}

pub fn point_presets() -> Vec<PointExponent> {
    vec![
        PointExponent::Constant { value: 2.5 },
        PointExponent::Affine { base: 1.5, slope: 1.0 },
        PointExponent::Radial { base: 1.2, amplitude: 2.0, center: vec![0.5] },
        PointExponent::Oscillating { base: 2.0, amplitude: 0.7, frequency: 5.0 },
        PointExponent::Constant { value: 1.1 },
    ]
}

pub fn problem(pair: &PairExponent, h: f64, lambda: f64) -> ProblemData {
    ProblemData::from_presets(
        &BoxDomain::unit(1),
        h,
        0.5,
        pair,
        &PointExponent::Constant { value: 1.3 },
        lambda,
    )
    .unwrap()
}

/// The fixed 1D instance: n = 16, s = 0.5, p = q = 2, r = 1.5.
pub fn fixed_instance(lambda: f64) -> ProblemData {
    ProblemData::from_presets(
        &BoxDomain::unit(1),
        1.0 / 16.0,
        0.5,
        &PairExponent::Constant { value: 2.0 },
        &PointExponent::Constant { value: 1.5 },
        lambda,
    )
    .unwrap()
}

/// Variable-exponent instance: p = 1.8 + 0.4 mean(x, y), r = 1.3.
pub fn variable_instance(lambda: f64) -> ProblemData {
    ProblemData::from_presets(
        &BoxDomain::unit(1),
        1.0 / 16.0,
        0.5,
        &PairExponent::Affine { base: 1.8, slope: 0.4 },
        &PointExponent::Constant { value: 1.3 },
        lambda,
    )
    .unwrap()
}
