use fredkin_zeno::gate::{computational_states, fredkin_target, gate_time};
use fredkin_zeno::hamiltonian::{build_conditional, build_total};
use fredkin_zeno::{
    evolve_conditional, fidelity_run, fidelity_run_with, ideal_fredkin, truth_table_check,
    AtomLevel, Basis, BasisState, InputState, ModelParams, StateVector, C64,
};
use proptest::prelude::*;

use AtomLevel::{G0, GL, GR};

fn resonant() -> ModelParams {
    ModelParams::resonant(1.0, 0.03)
}

fn detuned() -> ModelParams {
    ModelParams::detuned(1.0, 0.03, 0.3)
}

fn superposition(basis: &Basis, amps: &[(f64, f64)]) -> StateVector {
    let mut psi = StateVector::zeros(basis.dim());
    for (s, (re, im)) in computational_states().iter().zip(amps) {
        psi.amplitudes[basis.index_of(s).unwrap()] = C64::new(*re, *im);
    }
    psi
}

proptest! {
    #[test]
    fn fredkin_is_an_involution(amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8)) {
        let basis = Basis::new(1).unwrap();
        let psi = superposition(&basis, &amps);
        let once = ideal_fredkin(&basis, &psi).unwrap();
        let twice = ideal_fredkin(&basis, &once).unwrap();
        prop_assert!(twice.distance(&psi).unwrap() <= 1e-12);
        let sorted = |v: &StateVector| {
            let mut a: Vec<(f64, f64)> = v.amplitudes.iter().map(|z| (z.re, z.im)).collect();
            a.sort_by(|x, y| x.partial_cmp(y).unwrap());
            a
        };
        prop_assert_eq!(sorted(&once), sorted(&psi));
    }
}

#[test]
fn truth_table_targets() {
    let swapped = fredkin_target(&BasisState::vacuum(G0, GL, GR)).unwrap();
    assert_eq!(swapped, BasisState::vacuum(G0, GR, GL));
    assert_eq!(
        fredkin_target(&BasisState::vacuum(G0, GL, GL)).unwrap(),
        BasisState::vacuum(G0, GL, GL)
    );
    for t1 in [GL, GR] {
        for t2 in [GL, GR] {
            let s = BasisState::vacuum(GR, t1, t2);
            assert_eq!(fredkin_target(&s).unwrap(), s);
        }
    }
}

#[test]
fn uniform_input_is_swap_invariant() {
    let basis = Basis::new(1).unwrap();
    let psi = InputState::Uniform.build(&basis).unwrap();
    assert_eq!(ideal_fredkin(&basis, &psi).unwrap(), psi);
}

#[test]
fn phased_input_is_moved_by_the_gate() {
    let basis = Basis::new(1).unwrap();
    let psi = InputState::Phased.build(&basis).unwrap();
    let out = ideal_fredkin(&basis, &psi).unwrap();
    // <in|out> = (4 + 2) / 8 from the unchanged gR half and the swapped g0 half.
    assert!((psi.overlap_sq(&out).unwrap() - 0.5625).abs() < 1e-12);
}

#[test]
fn control_gr_states_are_annihilated() {
    for p in [resonant(), detuned()] {
        let basis = p.basis().unwrap();
        let h = build_total(&p).unwrap();
        for t1 in [GL, GR] {
            for t2 in [GL, GR] {
                let psi = basis.ket(&BasisState::vacuum(GR, t1, t2)).unwrap();
                assert_eq!(h.apply(&psi).unwrap().norm(), 0.0);
            }
        }
    }
}

#[test]
fn truth_tables_meet_floor() {
    for p in [resonant(), detuned()] {
        let rows = truth_table_check(&p).unwrap();
        assert_eq!(rows.len(), 8);
        for row in &rows {
            assert!(row.overlap_sq >= 0.99, "{}: {:?}", p.model, row);
            assert!(row.residual_population < 0.01);
            if row.input.levels[0] == GR {
                assert!((row.overlap_sq - 1.0).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn swap_sectors_are_mirror_images() {
    for p in [resonant(), detuned()] {
        let p = p.with_decay(0.1, 0.1);
        let basis = p.basis().unwrap();
        let h = build_conditional(&p).unwrap();
        let t = gate_time(&p).unwrap();
        let forward = BasisState::vacuum(G0, GL, GR);
        let backward = BasisState::vacuum(G0, GR, GL);
        let run = |s: &BasisState| evolve_conditional(&h, &basis.ket(s).unwrap(), t).unwrap();
        let (a, b) = (run(&forward), run(&backward));
        assert!((a.survival - b.survival).abs() < 1e-10);
        let hit = |r: &fredkin_zeno::PropagationResult, s: &BasisState| {
            r.state.amplitudes[basis.index_of(s).unwrap()].norm_sqr()
        };
        assert!((hit(&a, &backward) - hit(&b, &forward)).abs() < 1e-10);
        assert!((hit(&a, &forward) - hit(&b, &backward)).abs() < 1e-10);
    }
}

#[test]
fn phase_on_either_target_gives_same_figures() {
    let p = resonant().with_decay(0.1, 0.1);
    let basis = p.basis().unwrap();
    let norm = 1.0 / 8f64.sqrt();
    let mut psi = StateVector::zeros(basis.dim());
    for c in [G0, GR] {
        for t1 in [GL, GR] {
            for t2 in [GL, GR] {
                let amp = if t1 == GR { C64::new(0.0, norm) } else { C64::new(norm, 0.0) };
                psi.amplitudes[basis.index_of(&BasisState::vacuum(c, t1, t2)).unwrap()] = amp;
            }
        }
    }
    let a = fidelity_run_with(&p, &psi).unwrap();
    let b = fidelity_run(&p).unwrap();
    assert!((a.fidelity - b.fidelity).abs() < 1e-10);
    assert!((a.success_probability - b.success_probability).abs() < 1e-10);
}

fn gamma_grid(p: &ModelParams, kappa: f64) -> Vec<(f64, f64)> {
    (0..5)
        .map(|j| {
            let r = fidelity_run(&p.clone().with_decay(kappa, 0.025 * j as f64)).unwrap();
            (r.fidelity, r.success_probability)
        })
        .collect()
}

#[test]
fn fidelity_degrades_with_atomic_decay() {
    for p in [resonant(), detuned()] {
        for kappa in [0.0, 0.05, 0.1] {
            let grid = gamma_grid(&p, kappa);
            for w in grid.windows(2) {
                assert!(w[1].0 <= w[0].0, "{} kappa {kappa}: {grid:?}", p.model);
            }
        }
    }
}

#[test]
fn detuned_success_degrades_with_atomic_decay() {
    for kappa in [0.0, 0.05, 0.1] {
        let grid = gamma_grid(&detuned(), kappa);
        for w in grid.windows(2) {
            assert!(w[1].1 <= w[0].1, "kappa {kappa}: {grid:?}");
        }
    }
}

#[test]
fn resonant_success_recovers_past_strong_damping() {
    // Once gamma is comparable to the drive the excited intermediate state
    // is itself Zeno-suppressed, so the no-jump probability climbs again.
    let grid = gamma_grid(&resonant(), 0.0);
    assert!(grid[2].1 < grid[1].1);
    assert!(grid[4].1 > grid[2].1);
    assert!((grid[2].1 - 0.87676).abs() < 1e-4);
}

#[test]
fn figures_of_merit_stay_in_range() {
    for p in [resonant(), detuned()] {
        let r = fidelity_run(&p.clone().with_decay(0.1, 0.1)).unwrap();
        assert!((0.0..=1.0).contains(&r.fidelity));
        assert!((0.0..=1.0).contains(&r.success_probability));
        assert_eq!(r.t_gate, gate_time(&p).unwrap());
    }
}
