use super::*;
use crate::limiting::LimiterConfig;
use crate::state::{BoundarySpec, Grid, GridState, PrimState};
use std::f64::consts::PI;

fn smooth_state(n: usize) -> GridState {
    let grid = Grid::new(n, n, 0.0, 1.0, 0.0, 1.0).unwrap();
    GridState::sample(grid, |x, y| {
        PrimState::new(
            1.0 + 0.2 * (2.0 * PI * x).sin() * (2.0 * PI * y).cos(),
            0.5 + 0.1 * (2.0 * PI * y).sin(),
            -0.3 + 0.1 * (2.0 * PI * x).cos(),
            1.0 + 0.1 * (2.0 * PI * (x + y)).sin(),
        )
    })
}

fn all_configs() -> Vec<SchemeConfig> {
    let mut out = Vec::new();
    for strategy in [
        LinearisationStrategy::Nested,
        LinearisationStrategy::Simplified,
        LinearisationStrategy::NeighborAvg,
    ] {
        for limiter in [LimiterConfig::off(), LimiterConfig::bound_and_shock()] {
            out.push(SchemeConfig {
                strategy,
                limiter,
                ..Default::default()
            });
        }
    }
    out
}

#[test]
fn constant_state_is_preserved() {
    let grid = Grid::new(8, 6, 0.0, 1.0, 0.0, 2.0).unwrap();
    let w = PrimState::new(1.3, 0.4, -0.7, 2.1);
    let s = GridState::sample(grid, |_, _| w);
    let q = w.to_cons();
    for cfg in all_configs() {
        for bc in [BoundarySpec::periodic(), BoundarySpec::outflow()] {
            let (next, _) = advance(&s, &cfg, &bc, None, 0).unwrap();
            for j in 0..6 {
                for i in 0..8 {
                    assert!(next.avg.get(i, j).max_abs_diff(&q) < 1e-13, "{cfg:?} {bc:?}");
                }
            }
            for kind in SiteKind::ALL {
                let f = next.points(kind);
                for site in domain_sites(&grid, &bc, kind) {
                    assert!(f.get(site.i, site.j).max_abs_diff(&q) < 1e-13, "{site:?}");
                }
            }
        }
    }
}

#[test]
fn periodic_totals_are_conserved() {
    let s = smooth_state(12);
    let before = s.totals();
    for cfg in all_configs() {
        let mut cur = s.clone();
        for step in 0..3 {
            cur = advance(&cur, &cfg, &BoundarySpec::periodic(), None, step).unwrap().0;
        }
        let after = cur.totals();
        assert!(after.max_abs_diff(&before) < 1e-13, "{cfg:?}: {before:?} vs {after:?}");
    }
}

#[test]
fn stable_dt_matches_hand_value() {
    let grid = Grid::new(10, 10, 0.0, 1.0, 0.0, 1.0).unwrap();
    let avgs = grid.cell_field(PrimState::new(1.0, 0.0, 0.0, 1.0));
    let dt = stable_dt(&grid, &avgs, 0.279);
    assert!((dt - 0.279 * 0.1 / 1.4f64.sqrt()).abs() < 1e-15);
    assert!((dt - 0.023580).abs() < 1e-6);

    let avgs = grid.cell_field(PrimState::new(1.0, -2.0, 1.0, 1.0));
    let dt = stable_dt(&grid, &avgs, 0.27);
    assert!((dt - 0.27 * 0.1 / (2.0 + 1.4f64.sqrt())).abs() < 1e-15);
}

#[test]
fn cfl_above_limit_requires_override() {
    let cfg = SchemeConfig {
        cfl: 0.3,
        ..Default::default()
    };
    assert!(matches!(cfg.validate(), Err(AfError::Config(_))));
    let cfg = SchemeConfig {
        allow_large_cfl: true,
        ..cfg
    };
    assert!(cfg.validate().is_ok());
    assert!(SchemeConfig {
        cfl: 0.0,
        ..Default::default()
    }
    .validate()
    .is_err());
}

#[test]
fn final_step_lands_on_end_time() {
    let s = smooth_state(8);
    let cfg = SchemeConfig::default();
    let (out, steps) = run_until(&s, &cfg, &BoundarySpec::periodic(), 0.05, |_, st, _| {
        assert!(st.dt > 0.0);
        Ok(())
    })
    .unwrap();
    assert_eq!(out.t, 0.05);
    assert!(steps >= 2);
}

#[test]
fn simpson_flux_weights() {
    let q = |r: f64| ConsState::new(r, 0.3 * r, -0.1, 2.0 + r);
    let nodes = [
        [q(1.0), q(1.1), q(1.2)],
        [q(1.3), q(1.4), q(1.5)],
        [q(1.6), q(1.7), q(1.8)],
    ];
    let got = simpson_flux(flux_x, &nodes);
    let w = [1.0, 4.0, 1.0];
    let mut want = [0.0; 4];
    for t in 0..3 {
        for s in 0..3 {
            let f = flux_x(&nodes[t][s]).as_array();
            for k in 0..4 {
                want[k] += w[t] * w[s] * f[k] / 36.0;
            }
        }
    }
    for k in 0..4 {
        assert!((got.as_array()[k] - want[k]).abs() < 1e-14);
    }
    let same = [[q(1.0); 3]; 3];
    assert!(simpson_flux(flux_y, &same).max_abs_diff(&flux_y(&q(1.0))) < 1e-14);
}

#[test]
fn fv_update_single_cell_by_hand() {
    let grid = Grid::new(2, 1, 0.0, 2.0, 0.0, 0.5).unwrap();
    let q0 = PrimState::new(1.0, 0.0, 0.0, 1.0).to_cons();
    let s = GridState::uniform(grid, q0);
    let mut fx = Field::new(0, 3, 0, 1, ConsState::ZERO);
    let mut fy = Field::new(0, 2, 0, 2, ConsState::ZERO);
    fx.set(0, 0, ConsState::new(0.2, 0.0, 0.0, 0.0));
    fx.set(1, 0, ConsState::new(0.1, 0.0, 0.0, 0.0));
    fy.set(0, 1, ConsState::new(0.0, 0.0, 0.05, 0.0));
    let (avg, clipped) = fv_update(&s, &EdgeFluxes { fx, fy }, 0.1, 0, None).unwrap();
    assert_eq!(clipped, 0);
    let got = avg.get(0, 0);
    assert!((got.rho - (1.0 - 0.1 / 1.0 * (0.1 - 0.2))).abs() < 1e-15);
    assert!((got.my - (0.0 - 0.1 / 0.5 * 0.05)).abs() < 1e-15);
    assert!((avg.get(1, 0).rho - (1.0 - 0.1 * (0.0 - 0.1))).abs() < 1e-15);
}

#[test]
fn fv_update_reports_or_clips_inadmissible_average() {
    let grid = Grid::new(1, 1, 0.0, 1.0, 0.0, 1.0).unwrap();
    let s = GridState::uniform(grid, PrimState::new(1.0, 0.0, 0.0, 1.0).to_cons());
    let mut fx = Field::new(0, 2, 0, 1, ConsState::ZERO);
    let fy = Field::new(0, 1, 0, 2, ConsState::ZERO);
    fx.set(1, 0, ConsState::new(20.0, 0.0, 0.0, 0.0));
    let fl = EdgeFluxes { fx, fy };
    assert!(matches!(
        fv_update(&s, &fl, 0.1, 7, None),
        Err(AfError::InadmissibleAverage {
            i: 0,
            j: 0,
            step: 7,
            ..
        })
    ));
    let (avg, n) = fv_update(&s, &fl, 0.1, 7, Some(1e-10)).unwrap();
    assert_eq!(n, 1);
    assert!(avg.get(0, 0).to_prim().unwrap().is_admissible(0.0));
}

#[test]
fn one_dimensional_data_stays_one_dimensional() {
    let grid = Grid::new(16, 8, 0.0, 1.0, 0.0, 0.5).unwrap();
    let s = GridState::sample(grid, |x, _| {
        PrimState::new(
            1.0 + 0.3 * (2.0 * PI * x).sin(),
            0.4,
            0.0,
            1.0 + 0.2 * (2.0 * PI * x).cos(),
        )
    });
    for cfg in all_configs() {
        let mut cur = s.clone();
        for step in 0..3 {
            cur = advance(&cur, &cfg, &BoundarySpec::periodic(), None, step).unwrap().0;
        }
        for i in 0..16 {
            let a = *cur.avg.get(i, 0);
            assert!(a.my.abs() < 1e-13);
            for j in 1..8 {
                assert!(cur.avg.get(i, j).max_abs_diff(&a) < 1e-13);
            }
        }
    }
}

#[test]
fn mirror_symmetry_in_x_is_kept() {
    let grid = Grid::new(10, 10, -1.0, 1.0, 0.0, 2.0).unwrap();
    let s = GridState::sample(grid, |x, y| {
        PrimState::new(
            1.0 + 0.3 * (-4.0 * (x * x + (y - 1.0).powi(2))).exp(),
            0.2 * x * (-x * x).exp(),
            0.1,
            1.0 + 0.2 * (PI * x).cos(),
        )
    });
    let cfg = SchemeConfig {
        limiter: LimiterConfig::bound_and_shock(),
        ..Default::default()
    };
    let mut cur = s;
    for step in 0..2 {
        cur = advance(&cur, &cfg, &BoundarySpec::outflow(), None, step).unwrap().0;
    }
    for j in 0..10 {
        for i in 0..5 {
            let a = cur.avg.get(i, j);
            let b = cur.avg.get(9 - i, j).reflect(crate::state::Axis::X);
            assert!(a.max_abs_diff(&b) < 1e-12, "cell {i},{j}");
        }
    }
}

#[test]
fn strategy_parses() {
    for s in ["nested", "simplified", "neighbor_avg"] {
        let k: LinearisationStrategy = s.parse().unwrap();
        assert_eq!(k.to_string(), s);
    }
    assert!("x".parse::<LinearisationStrategy>().is_err());
}
