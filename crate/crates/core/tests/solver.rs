mod common;

use fracpx::operators::residual;
use fracpx::solver::*;

const STRATEGIES: [Strategy; 3] = [Strategy::Minimize, Strategy::Picard, Strategy::Continuation];

#[test]
fn reported_residuals_are_genuine() {
    for data in [common::fixed_instance(10.0), common::variable_instance(10.0)] {
        for strategy in STRATEGIES {
            let cfg = SolverConfig::default().with_strategy(strategy);
            let report = solve(&data, &cfg).unwrap();
            let res = residual(&report.u, &data).unwrap().sup_norm();
            assert_eq!(res, report.residual);
            assert!(res <= cfg.tol, "{strategy}: {res}");
        }
    }
}

#[test]
fn zero_lambda_gives_trivial_solution_from_every_seed() {
    for data in [common::fixed_instance(0.0), common::variable_instance(0.0)] {
        for strategy in STRATEGIES {
            for preset in [SeedPreset::Zero, SeedPreset::Constant, SeedPreset::Random, SeedPreset::Bump] {
                let mut cfg = SolverConfig::default().with_strategy(strategy);
                cfg.seed = SeedFunction::new(preset);
                let report = solve(&data, &cfg).unwrap();
                assert!(report.u.is_zero(), "{strategy} {preset:?}: {}", report.sup_norm);
            }
        }
    }
}

#[test]
fn strategies_agree() {
    for data in [common::fixed_instance(10.0), common::variable_instance(10.0)] {
        let cfg = SolverConfig::default();
        let reports: Vec<_> = STRATEGIES
            .iter()
            .map(|&s| solve(&data, &cfg.with_strategy(s)).unwrap())
            .collect();
        for a in &reports {
            for b in &reports {
                let d = a.u.sub(&b.u).sup_norm();
                assert!(d <= 10.0 * cfg.tol, "{} vs {}: {d}", a.strategy, b.strategy);
            }
        }
    }
}

#[test]
fn sweep_finds_nontrivial_solutions_satisfying_the_bound() {
    let data = common::fixed_instance(0.0);
    let lambdas: Vec<f64> = (0..=8).map(|k| 2.5 * k as f64).collect();
    let entries = lambda_sweep(&data, &SolverConfig::default(), &lambdas);
    assert_eq!(entries.iter().map(|e| e.lambda).collect::<Vec<_>>(), lambdas);
    let mut found = false;
    for e in &entries {
        let report = e.outcome.as_ref().unwrap();
        if report.nontrivial {
            let bound = report.apriori.as_ref().unwrap();
            assert!(bound.holds && bound.links_hold, "{bound:?}");
            found |= report.energy < 0.0 && report.sup_norm > 1e-4;
        }
    }
    assert!(found);
}

#[test]
fn runs_are_deterministic() {
    let data = common::variable_instance(10.0);
    for strategy in STRATEGIES {
        let mut cfg = SolverConfig::default().with_strategy(strategy);
        cfg.seed = SeedFunction { preset: SeedPreset::Random, amplitude: 0.5, rng_seed: 42 };
        let a = serde_json::to_string(&solve(&data, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&solve(&data, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn negative_lambda_stays_trivial_under_continuation() {
    let data = common::fixed_instance(-5.0);
    let cfg = SolverConfig::default().with_strategy(Strategy::Continuation);
    let report = solve(&data, &cfg).unwrap();
    assert!(report.u.is_zero());
}

#[test]
fn iteration_cap_reports_best_iterate() {
    let data = common::variable_instance(10.0);
    let mut cfg = SolverConfig::default().with_strategy(Strategy::Picard);
    cfg.max_iter = 2;
    match solve(&data, &cfg) {
        Err(SolveError::NoConvergence(report)) => {
            assert!(!report.converged);
            assert!(report.apriori.is_none());
            assert_eq!(report.iterations, 2);
        }
        other => panic!("unexpected {other:?}"),
    }
}
