//! Behavioral contracts every optimizer honors: determinism under a fixed
//! seed, box feasibility after every iteration, monotone best-so-far
//! traces, and the marine predator state machine specifics.

mod common;

use common::default_context;
use fogplace::baselines::{HhoParams, HhoState, PsoParams, PsoState, ScaParams, ScaState};
use fogplace::lab::{run_algorithm, OptimizerBudget};
use fogplace::mpa::{self, phase_for, MpaParams, MpaState, Phase};
use fogplace::objective::EvaluationContext;
use fogplace::search::{Algorithm, Optimizer};
use fogplace::{EdgeNode, FogNode, PlacementVector, Point2D, Scenario};

fn small_context() -> EvaluationContext<f64> {
    let spec = fogplace::lab::GeneratorSpec::<f64> {
        fog_count: 8,
        edge_count: 15,
        seed: 42,
        ..Default::default()
    };
    let scenario = fogplace::lab::generate_scenario(&spec).unwrap();
    EvaluationContext::new(scenario, 0.5).unwrap()
}

/// Steps an optimizer to completion, checking feasibility at every
/// iteration and the trace contract at the end.
fn drive_and_check<O: Optimizer<f64>>(mut opt: O, ctx: &EvaluationContext<f64>) {
    let bounds = ctx.bounds();
    let budget = opt.iteration_budget();
    while opt.iteration() < budget {
        opt.step();
        for row in opt.population() {
            assert!(
                bounds.contains(row.values()),
                "{} left the box at iteration {}",
                opt.algorithm(),
                opt.iteration()
            );
        }
    }
    let trace = opt.trace();
    assert_eq!(trace.len(), budget);
    assert!(
        trace.windows(2).all(|w| w[0].best_f <= w[1].best_f),
        "{} trace decreased",
        opt.algorithm()
    );
    assert_eq!(opt.best().breakdown.f, trace.last().unwrap().best_f);
}

#[test]
fn every_optimizer_stays_feasible_with_monotone_trace() {
    let ctx = small_context();
    drive_and_check(MpaState::new(&ctx, MpaParams::new(10, 45, 3)), &ctx);
    drive_and_check(PsoState::new(&ctx, PsoParams::new(10, 45, 3)), &ctx);
    drive_and_check(ScaState::new(&ctx, ScaParams::new(10, 45, 3)), &ctx);
    drive_and_check(HhoState::new(&ctx, HhoParams::new(10, 45, 3)), &ctx);
}

#[test]
fn identical_seeds_reproduce_identical_runs() {
    let ctx = small_context();
    let budget = OptimizerBudget {
        population: 8,
        t_max: 30,
    };
    for algo in Algorithm::ALL {
        let a = run_algorithm(&ctx, algo, budget, 77);
        let b = run_algorithm(&ctx, algo, budget, 77);
        assert_eq!(a.trace, b.trace, "{algo} trace diverged");
        assert_eq!(a.best.placement, b.best.placement, "{algo} best diverged");
        let c = run_algorithm(&ctx, algo, budget, 78);
        assert_ne!(a.trace, c.trace, "{algo} ignored the seed");
    }
}

#[test]
fn minimal_budget_runs_one_iteration_of_each_phase() {
    let ctx = small_context();
    let mut state = MpaState::new(&ctx, MpaParams::new(2, 3, 5));
    let phases = [state.advance(), state.advance(), state.advance()];
    assert_eq!(phases, [Phase::Explore, Phase::Mixed, Phase::Exploit]);
    assert_eq!(state.trace().len(), 3);
}

#[test]
fn executed_phases_follow_the_partition() {
    let ctx = small_context();
    let t_max = 40;
    let mut state = MpaState::new(&ctx, MpaParams::new(6, t_max, 9));
    for t in 0..t_max {
        let executed = state.advance();
        assert_eq!(executed, phase_for(t, t_max), "iteration {t}");
    }
}

#[test]
fn per_agent_memory_never_regresses() {
    let ctx = small_context();
    let mut state = MpaState::new(&ctx, MpaParams::new(8, 60, 11));
    let mut previous: Option<Vec<f64>> = None;
    for _ in 0..60 {
        state.advance();
        let current = state.memory().unwrap().fitness().to_vec();
        if let Some(prev) = previous {
            for (agent, (old, new)) in prev.iter().zip(&current).enumerate() {
                assert!(new >= old, "agent {agent} memory dropped: {old} -> {new}");
            }
        }
        previous = Some(current);
    }
}

#[test]
fn elite_trace_equals_running_maximum_of_memory() {
    let ctx = small_context();
    let mut state = MpaState::new(&ctx, MpaParams::new(6, 30, 13));
    for _ in 0..30 {
        state.advance();
        let best_memory = state
            .memory()
            .unwrap()
            .fitness()
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        assert!(state.elite().top_fitness() >= best_memory);
    }
}

#[test]
fn coincident_pair_reaches_perfect_fitness_within_100_iterations() {
    // one fog node and one edge node at the same spot: any placement that
    // covers the edge scores 1.0, which a coarse grid enumeration confirms
    // is attainable
    let scenario = Scenario::new(
        1000.0,
        1000.0,
        None,
        vec![FogNode::new(0, Point2D::new(500.0, 500.0), 200.0)],
        vec![EdgeNode::new(0, Point2D::new(500.0, 500.0))],
    )
    .unwrap();
    let ctx = EvaluationContext::new(scenario, 0.5).unwrap();

    let mut grid_best: f64 = 0.0;
    for gx in 0..20 {
        for gy in 0..20 {
            let v = PlacementVector::new(vec![50.0 + 50.0 * gx as f64, 50.0 + 50.0 * gy as f64]);
            grid_best = grid_best.max(ctx.fitness(&v).f);
        }
    }
    assert_eq!(grid_best, 1.0, "grid oracle must find a perfect placement");

    for seed in [0u64, 1, 2] {
        let record = mpa::run(&ctx, &MpaParams::new(30, 100, seed));
        assert_eq!(
            record.final_fitness(),
            1.0,
            "seed {seed} failed to cover the coincident edge node"
        );
    }
}

#[test]
fn infeasible_scenarios_still_optimize_and_score_low() {
    // region much larger than any range: nothing can connect or cover
    let scenario = Scenario::new(
        1000.0,
        1000.0,
        None,
        vec![
            FogNode::new(0, Point2D::new(0.0, 0.0), 1.0),
            FogNode::new(1, Point2D::new(1000.0, 1000.0), 1.0),
        ],
        vec![EdgeNode::new(0, Point2D::new(500.0, 500.0))],
    )
    .unwrap();
    let ctx = EvaluationContext::new(scenario, 0.5).unwrap();
    let record = mpa::run(&ctx, &MpaParams::new(5, 10, 1));
    assert_eq!(record.trace.len(), 10);
    // best possible here: two singleton components, edge maybe covered
    assert!(record.final_fitness() <= 0.75 + 1e-12);
}

#[test]
fn hho_branch_counts_account_for_every_update() {
    let ctx = default_context(0.5);
    let mut state = HhoState::new(&ctx, HhoParams::new(12, 40, 6));
    for _ in 0..40 {
        state.step();
    }
    assert_eq!(state.branch_counts().total(), 12 * 40);
}

#[test]
fn single_precision_instantiation_behaves() {
    let spec = fogplace::lab::GeneratorSpec::<f32> {
        fog_count: 6,
        edge_count: 10,
        seed: 17,
        ..Default::default()
    };
    let scenario = fogplace::lab::generate_scenario(&spec).unwrap();
    let ctx = EvaluationContext::new(scenario, 0.5f32).unwrap();
    let record = mpa::run(&ctx, &MpaParams::<f32>::new(6, 15, 2));
    assert_eq!(record.trace.len(), 15);
    assert!((0.0..=1.0).contains(&record.final_fitness()));
    assert!(record
        .trace
        .windows(2)
        .all(|w| w[0].best_f <= w[1].best_f));
    let again = mpa::run(&ctx, &MpaParams::<f32>::new(6, 15, 2));
    assert_eq!(record.trace, again.trace);
}
