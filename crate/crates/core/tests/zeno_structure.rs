use fredkin_zeno::gate::gate_time;
use fredkin_zeno::hamiltonian::{build_cavity_coupling, build_laser, build_total};
use fredkin_zeno::linalg::max_abs;
use fredkin_zeno::zeno::{
    analytic_state, effective_detuned, effective_resonant, parallel_photonic_dark,
    reachable_subspace, swap_excited_dark, swap_photonic_dark, zero_subspace_span_check,
    zeno_decompose, DEFAULT_DEGENERACY_TOL, DEFAULT_REACH_TOL, PARALLEL_SECTOR, SWAP_SECTOR,
};
use fredkin_zeno::{
    evolve_hermitian, BasisState, ClosedSubspace, Model, ModelParams, ZenoDecomposition, C64,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn closure(p: &ModelParams, seed: BasisState) -> ClosedSubspace {
    reachable_subspace(
        &build_total(p).unwrap(),
        &p.basis().unwrap(),
        seed,
        DEFAULT_REACH_TOL,
    )
    .unwrap()
}

fn decompose(p: &ModelParams, sub: &ClosedSubspace) -> ZenoDecomposition {
    let hc = sub.restrict(&build_cavity_coupling(p).unwrap()).unwrap();
    zeno_decompose(&hc, p.g, DEFAULT_DEGENERACY_TOL).unwrap()
}

fn assert_spectrum(d: &ZenoDecomposition, expected: &[(f64, usize)]) {
    let got = d.spectrum_over_g();
    assert_eq!(got.len(), expected.len(), "{got:?}");
    for (value, mult) in expected {
        let hit = got
            .iter()
            .find(|(v, _)| (v - value).abs() < 1e-8)
            .unwrap_or_else(|| panic!("eigenvalue {value} missing from {got:?}"));
        assert_eq!(hit.1, *mult, "multiplicity of {value}");
    }
}

fn swap_spectrum() -> Vec<(f64, usize)> {
    let s3 = 3f64.sqrt();
    vec![
        (0.0, 4),
        (1.0, 2),
        (-1.0, 2),
        (2.0, 1),
        (-2.0, 1),
        (s3, 2),
        (-s3, 2),
    ]
}

fn parallel_spectrum() -> Vec<(f64, usize)> {
    vec![(0.0, 2), (1.0, 2), (-1.0, 2), (2.0, 1), (-2.0, 1)]
}

#[test]
fn swap_sector_spectrum() {
    let p = ModelParams::resonant(1.0, 0.03);
    let sub = closure(&p, SWAP_SECTOR[0]);
    assert_spectrum(&decompose(&p, &sub), &swap_spectrum());
}

#[test]
fn parallel_sector_spectrum() {
    let p = ModelParams::resonant(1.0, 0.03);
    let sub = closure(&p, PARALLEL_SECTOR[0]);
    assert_spectrum(&decompose(&p, &sub), &parallel_spectrum());
}

#[test]
fn reference_vectors_span_dark_subspaces() {
    let p = ModelParams::resonant(1.0, 0.03);
    let basis = p.basis().unwrap();

    let sub = closure(&p, SWAP_SECTOR[0]);
    let d = decompose(&p, &sub);
    let refs: Vec<DVector<C64>> = [
        basis.ket(&SWAP_SECTOR[0]).unwrap(),
        basis.ket(&SWAP_SECTOR[13]).unwrap(),
        swap_photonic_dark(&basis).unwrap(),
        swap_excited_dark(&basis).unwrap(),
    ]
    .iter()
    .map(|v| sub.project(v).unwrap())
    .collect();
    let check = zero_subspace_span_check(&d, &refs).unwrap();
    assert!(check.contained && check.residual <= 1e-8, "{check:?}");
    assert_eq!(d.zero_group().unwrap().multiplicity(), refs.len());

    let sub = closure(&p, PARALLEL_SECTOR[0]);
    let d = decompose(&p, &sub);
    let refs: Vec<DVector<C64>> = [
        basis.ket(&PARALLEL_SECTOR[0]).unwrap(),
        parallel_photonic_dark(&basis).unwrap(),
    ]
    .iter()
    .map(|v| sub.project(v).unwrap())
    .collect();
    let check = zero_subspace_span_check(&d, &refs).unwrap();
    assert!(check.contained && check.residual <= 1e-8, "{check:?}");
    assert_eq!(d.zero_group().unwrap().multiplicity(), 2);
}

#[test]
fn decomposition_is_complete() {
    let p = ModelParams::resonant(1.0, 0.03);
    for seed in [SWAP_SECTOR[0], PARALLEL_SECTOR[0]] {
        let sub = closure(&p, seed);
        let d = decompose(&p, &sub);
        let n = sub.dim();
        let id_gap = max_abs(&(d.projector_sum() - DMatrix::<C64>::identity(n, n)));
        assert!(id_gap < 1e-10);
        let hc = sub.restrict(&build_cavity_coupling(&p).unwrap()).unwrap();
        assert!(max_abs(&(d.reconstruct() - hc)) < 1e-10);
    }
}

#[test]
fn photonic_dark_vector_decouples_from_drive() {
    // Dark projector built directly from the four reference vectors.
    let p = ModelParams::resonant(1.0, 0.03);
    let basis = p.basis().unwrap();
    let sub = closure(&p, SWAP_SECTOR[0]);
    let vectors: Vec<DVector<C64>> = [
        basis.ket(&SWAP_SECTOR[0]).unwrap(),
        basis.ket(&SWAP_SECTOR[13]).unwrap(),
        swap_photonic_dark(&basis).unwrap(),
        swap_excited_dark(&basis).unwrap(),
    ]
    .iter()
    .map(|v| sub.project(v).unwrap())
    .collect();
    let n = sub.dim();
    let p0 = vectors
        .iter()
        .fold(DMatrix::<C64>::zeros(n, n), |acc, v| acc + v * v.adjoint());
    assert!(max_abs(&(&p0 - decompose(&p, &sub).zero_projector())) < 1e-10);

    let laser = sub.restrict(&build_laser(&p).unwrap()).unwrap();
    let m = &p0 * laser * &p0;
    let photonic = &vectors[2];
    assert!((&m * photonic).norm() <= 1e-12);
    assert!((photonic.adjoint() * &m).norm() <= 1e-12);
}

#[test]
fn resonant_effective_matrix() {
    let omega = 0.03;
    let p = ModelParams::resonant(1.0, omega);
    let model = effective_resonant(&closure(&p, SWAP_SECTOR[0]), &p).unwrap();
    assert_eq!(model.labels, ["phi1", "phi14", "varphi2"]);
    let c = omega / 6f64.sqrt();
    let expected = DMatrix::from_row_slice(
        3,
        3,
        &[0.0, 0.0, -c, 0.0, 0.0, c, -c, c, 0.0],
    )
    .map(|x| C64::new(x, 0.0));
    assert!(max_abs(&(&model.h_eff - expected)) < 1e-14);
}

#[test]
fn detuned_effective_matrices() {
    let (omega, delta) = (0.03, 0.3);
    let p = ModelParams::detuned(1.0, omega, delta);
    let swap = effective_detuned(&closure(&p, SWAP_SECTOR[0]), &p).unwrap();
    assert_eq!(swap.labels, ["phi1", "phi14"]);
    let a = omega * omega / (6.0 * delta);
    let expected = DMatrix::from_row_slice(2, 2, &[-a, a, a, -a]).map(|x| C64::new(x, 0.0));
    assert!(max_abs(&(&swap.h_eff - expected)) < 1e-14);

    let parallel = effective_detuned(&closure(&p, PARALLEL_SECTOR[0]), &p).unwrap();
    assert_eq!(parallel.dim(), 1);
    assert!(parallel.h_eff[(0, 0)].norm() < 1e-14);
}

fn check_closed_form(p: &ModelParams, model: fredkin_zeno::EffectiveModel, which: Model) {
    let t_gate = gate_time(p).unwrap();
    let mut start = DVector::zeros(model.dim());
    start[model.index_of("phi1").unwrap()] = C64::new(1.0, 0.0);
    for k in 0..50 {
        let t = t_gate * k as f64 / 49.0;
        let evolved = model.to_full(&model.evolve(&start, t)).unwrap();
        let closed = analytic_state(which, t, p).unwrap();
        assert!(evolved.distance(&closed).unwrap() <= 1e-10, "{which} at t = {t}");
    }
    let target = p.basis().unwrap().ket(&SWAP_SECTOR[13]).unwrap();
    let at_gate = analytic_state(which, t_gate, p).unwrap();
    assert!(at_gate.distance(&target).unwrap() < 1e-12);
}

#[test]
fn closed_forms_match_effective_propagation() {
    let p = ModelParams::resonant(1.0, 0.03);
    check_closed_form(&p, effective_resonant(&closure(&p, SWAP_SECTOR[0]), &p).unwrap(), Model::Resonant);
    let p = ModelParams::detuned(1.0, 0.03, 0.3);
    check_closed_form(&p, effective_detuned(&closure(&p, SWAP_SECTOR[0]), &p).unwrap(), Model::Detuned);
}

#[test]
fn full_dynamics_approach_closed_form() {
    let p = ModelParams::resonant(1.0, 0.001);
    let basis = p.basis().unwrap();
    let psi0 = basis.ket(&SWAP_SECTOR[0]).unwrap();
    let h = build_total(&p).unwrap();
    for frac in [0.25, 0.5, 1.0] {
        let t = frac * gate_time(&p).unwrap();
        let full = evolve_hermitian(&h, &psi0, t).unwrap();
        let closed = analytic_state(Model::Resonant, t, &p).unwrap();
        assert!(full.distance(&closed).unwrap() <= 5.0 * p.omega / p.g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn spectrum_scales_with_coupling(g in 0.2f64..5.0, n_max in 1usize..3) {
        let p = ModelParams::resonant(g, 0.01 * g).with_n_max(n_max);
        let sub = closure(&p, SWAP_SECTOR[0]);
        prop_assert_eq!(sub.dim(), 14);
        let spectrum = decompose(&p, &sub).spectrum_over_g();
        let mut mults: Vec<usize> = spectrum.iter().map(|s| s.1).collect();
        mults.sort_unstable();
        prop_assert_eq!(mults, vec![1, 1, 2, 2, 2, 2, 4]);
    }

    #[test]
    fn detuned_rate_matches_closed_form(omega in 0.001f64..0.05, delta in 0.1f64..1.0) {
        let p = ModelParams::detuned(1.0, omega, delta);
        let model = effective_detuned(&closure(&p, SWAP_SECTOR[0]), &p).unwrap();
        let a = omega * omega / (6.0 * delta);
        prop_assert!((model.h_eff[(0, 1)].re - a).abs() < 1e-12 * a.max(1.0));
        prop_assert!((model.h_eff[(0, 0)].re + a).abs() < 1e-12 * a.max(1.0));
    }
}
