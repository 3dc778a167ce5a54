use fredkin_zeno::gate::gate_time;
use fredkin_zeno::hamiltonian::{build_conditional, build_total};
use fredkin_zeno::linalg::{expm, OdeTolerance};
use fredkin_zeno::zeno::SWAP_SECTOR;
use fredkin_zeno::{
    evolve_conditional, evolve_conditional_ode, evolve_hermitian, InputState, ModelParams,
    SpectralPropagator, StateVector, C64,
};
use proptest::prelude::*;

fn golden_resonant() -> ModelParams {
    ModelParams::resonant(1.0, 0.03).with_decay(0.1, 0.1)
}

fn golden_detuned() -> ModelParams {
    ModelParams::detuned(1.0, 0.03, 0.3).with_decay(0.1, 0.1)
}

fn phased(p: &ModelParams) -> StateVector {
    InputState::Phased.build(&p.basis().unwrap()).unwrap()
}

#[test]
fn closed_resonant_swap_reaches_target() {
    let p = ModelParams::resonant(1.0, 0.03);
    let basis = p.basis().unwrap();
    let psi0 = basis.ket(&SWAP_SECTOR[0]).unwrap();
    let psi = evolve_hermitian(&build_total(&p).unwrap(), &psi0, gate_time(&p).unwrap()).unwrap();
    let target = basis.ket(&SWAP_SECTOR[13]).unwrap();
    assert!(target.overlap_sq(&psi).unwrap() >= 0.99);
}

#[test]
fn null_vector_is_stationary() {
    let p = ModelParams::resonant(1.0, 0.03);
    let basis = p.basis().unwrap();
    let dark = fredkin_zeno::BasisState::vacuum(
        fredkin_zeno::AtomLevel::GR,
        fredkin_zeno::AtomLevel::GR,
        fredkin_zeno::AtomLevel::GR,
    );
    let psi0 = basis.ket(&dark).unwrap();
    let h = build_total(&p).unwrap();
    assert!(h.apply(&psi0).unwrap().norm() == 0.0);
    for t in [0.5, 17.0, 1e4] {
        let psi = evolve_hermitian(&h, &psi0, t).unwrap();
        assert!(psi.distance(&psi0).unwrap() < 1e-14);
    }
}

#[test]
fn unitarity_up_to_ten_gate_times() {
    for p in [
        ModelParams::resonant(1.0, 0.03),
        ModelParams::detuned(1.0, 0.03, 0.3),
    ] {
        let psi0 = phased(&p);
        let prop = SpectralPropagator::new(&build_total(&p).unwrap(), &psi0).unwrap();
        let t_gate = gate_time(&p).unwrap();
        for k in 0..=40 {
            let t = 10.0 * t_gate * k as f64 / 40.0;
            let psi = prop.evolve(&psi0, t).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-10, "{} at t = {t}", p.model);
        }
    }
}

#[test]
fn survival_non_increasing() {
    for p in [golden_resonant(), golden_detuned()] {
        let psi0 = phased(&p);
        let h = build_conditional(&p).unwrap();
        let t_gate = gate_time(&p).unwrap();
        let mut last = 1.0;
        for k in 0..100 {
            let t = t_gate * k as f64 / 99.0;
            let s = evolve_conditional(&h, &psi0, t).unwrap().survival;
            assert!(s <= last + 1e-12, "{}: survival rose at t = {t}", p.model);
            assert!((0.0..=1.0 + 1e-12).contains(&s));
            last = s;
        }
    }
}

#[test]
fn closed_system_conditional_matches_hermitian() {
    for p in [
        ModelParams::resonant(1.0, 0.03),
        ModelParams::detuned(1.0, 0.03, 0.3),
    ] {
        let psi0 = phased(&p);
        let t = gate_time(&p).unwrap();
        let herm = evolve_hermitian(&build_total(&p).unwrap(), &psi0, t).unwrap();
        let cond = evolve_conditional(&build_conditional(&p).unwrap(), &psi0, t).unwrap();
        assert!((cond.survival - 1.0).abs() < 1e-8);
        assert!(cond.state.distance(&herm).unwrap() < 1e-8);
    }
}

fn relative_gap(a: &StateVector, b: &StateVector) -> f64 {
    a.distance(b).unwrap() / b.norm()
}

#[test]
fn pade_agrees_with_ode_on_golden_cases() {
    for p in [golden_resonant(), golden_detuned()] {
        let psi0 = phased(&p);
        let h = build_conditional(&p).unwrap();
        let t = gate_time(&p).unwrap();
        let pade = evolve_conditional(&h, &psi0, t).unwrap();
        let ode = evolve_conditional_ode(&h, &psi0, t, OdeTolerance::default()).unwrap();
        let raw = |r: &fredkin_zeno::PropagationResult| r.state.scale(C64::new(r.raw_norm_sq.sqrt(), 0.0));
        let gap = relative_gap(&raw(&pade), &raw(&ode));
        assert!(gap < 1e-6, "{}: relative gap {gap:e}", p.model);
        assert!((pade.survival - ode.survival).abs() / ode.survival < 1e-6);
    }
}

#[test]
fn block_reduction_matches_full_space_expm() {
    let p = golden_resonant();
    let psi0 = phased(&p);
    let h = build_conditional(&p).unwrap();
    let t = 0.37 * gate_time(&p).unwrap();
    let u = expm(&h.entries().map(|z| z * C64::new(0.0, -t))).unwrap();
    let full = StateVector::from_amplitudes(u * &psi0.amplitudes);
    let block = evolve_conditional(&h, &psi0, t).unwrap();
    assert!((full.norm_sq() - block.survival).abs() < 1e-10);
    assert!(full.normalized().distance(&block.state).unwrap() < 1e-9);
}

#[test]
fn truncation_does_not_matter_for_propagation() {
    for p in [golden_resonant(), golden_detuned()] {
        let t = gate_time(&p).unwrap();
        let run = |q: &ModelParams| {
            evolve_conditional(&build_conditional(q).unwrap(), &phased(q), t).unwrap()
        };
        let small = run(&p);
        let large = run(&p.clone().with_n_max(2));
        assert!((small.survival - large.survival).abs() < 1e-10);
    }
}

/// Distance of the closed-system swap output from the ideal target.
fn swap_error(p: &ModelParams) -> f64 {
    let basis = p.basis().unwrap();
    let psi0 = basis.ket(&SWAP_SECTOR[0]).unwrap();
    let psi = evolve_hermitian(&build_total(p).unwrap(), &psi0, gate_time(p).unwrap()).unwrap();
    psi.distance(&basis.ket(&SWAP_SECTOR[13]).unwrap()).unwrap()
}

#[test]
fn zeno_limit_convergence() {
    // Halving Omega should never make the gate worse, and the error stays
    // below a bound linear in Omega / g. The detuned family keeps Delta
    // fixed at 0.3 g.
    for model in ["resonant", "detuned"] {
        let mut omega = 0.004;
        let mut previous = f64::INFINITY;
        while omega >= 0.0005 {
            let p = match model {
                "resonant" => ModelParams::resonant(1.0, omega),
                _ => ModelParams::detuned(1.0, omega, 0.3),
            };
            let err = swap_error(&p);
            assert!(err <= 5.0 * omega, "{model}: error {err:e} at omega {omega}");
            assert!(err <= previous, "{model}: error grew at omega {omega}");
            previous = err;
            omega /= 2.0;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semigroup_hermitian(t1 in 0.0f64..400.0, t2 in 0.0f64..400.0, omega in 0.005f64..0.08) {
        let p = ModelParams::resonant(1.0, omega);
        let h = build_total(&p).unwrap();
        let psi0 = phased(&p);
        let two = evolve_hermitian(&h, &evolve_hermitian(&h, &psi0, t1).unwrap(), t2).unwrap();
        let one = evolve_hermitian(&h, &psi0, t1 + t2).unwrap();
        prop_assert!(two.distance(&one).unwrap() < 1e-8);
    }

    #[test]
    fn semigroup_conditional(
        t1 in 0.0f64..300.0,
        t2 in 0.0f64..300.0,
        kappa in 0.0f64..0.1,
        gamma in 0.0f64..0.1,
    ) {
        let p = ModelParams::detuned(1.0, 0.03, 0.3).with_decay(kappa, gamma);
        let h = build_conditional(&p).unwrap();
        let psi0 = phased(&p);
        let first = evolve_conditional(&h, &psi0, t1).unwrap();
        let mid = first.state.scale(C64::new(first.raw_norm_sq.sqrt(), 0.0));
        let second = evolve_conditional(&h, &mid, t2).unwrap();
        let direct = evolve_conditional(&h, &psi0, t1 + t2).unwrap();
        prop_assert!(second.state.distance(&direct.state).unwrap() < 1e-8);
        prop_assert!((second.raw_norm_sq - direct.raw_norm_sq).abs() < 1e-8);
    }

    #[test]
    fn hermitian_norm_preserved(t in 0.0f64..2000.0, omega in 0.001f64..0.1) {
        let p = ModelParams::resonant(1.0, omega).with_n_max(2);
        let psi = evolve_hermitian(&build_total(&p).unwrap(), &phased(&p), t).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-10);
    }
}
