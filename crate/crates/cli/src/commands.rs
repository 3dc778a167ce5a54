//! Subcommand bodies. Each returns data plus a rendered report so the
//! binary only decides where output goes and which exit code to use.

use std::fmt::Write as _;

use fredkin_zeno::gate::gate_time;
use fredkin_zeno::hamiltonian::{build_cavity_coupling, build_total};
use fredkin_zeno::zeno::{
    analytic_state, effective_detuned, effective_resonant, parallel_photonic_dark,
    reachable_subspace, swap_excited_dark, swap_photonic_dark, zero_subspace_span_check,
    zeno_decompose, DEFAULT_REACH_TOL, PARALLEL_SECTOR, SWAP_SECTOR,
};
use fredkin_zeno::{
    fidelity_run_with, truth_table_check, BasisState, Model, ModelParams, SpectralPropagator,
    StateVector, TruthTableRow, C64,
};
use nalgebra::DVector;
use rayon::prelude::*;

use crate::config::{Config, ModelSection, PhysicalSection};
use crate::error::{CliError, Result};
use crate::table::{format_human, format_sig, SweepRow};

const HUMAN_DIGITS: usize = 4;

fn h(x: f64) -> String {
    format_human(x, HUMAN_DIGITS)
}

/// Rendered text and whether the command's acceptance floor held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub passed: bool,
}

fn describe(p: &ModelParams) -> String {
    let mut s = format!("{} model, omega/g = {}", p.model, h(p.omega / p.g));
    if let Some(d) = p.delta {
        let _ = write!(s, ", delta/g = {}", h(d / p.g));
    }
    let _ = write!(s, ", n_max = {}", p.n_max);
    s
}

pub fn truth_table(cfg: &Config) -> Result<(Vec<TruthTableRow>, Outcome)> {
    let p = cfg.model.params_for(cfg.model.kind()?, 0.0, 0.0)?;
    let floor = cfg.truth_table.floor;
    if !(0.0..=1.0).contains(&floor) {
        return Err(CliError::invalid("truth_table.floor", format!("{floor} is not in [0, 1]")));
    }
    let rows = truth_table_check(&p)?;
    let passed = rows.iter().all(|r| r.overlap_sq >= floor);

    let mut report = format!(
        "truth table: {}, t_gate*g = {}\n",
        describe(&p),
        h(gate_time(&p)? * p.g)
    );
    let _ = writeln!(report, "{:<16} {:<16} {:>10} {:>12}", "input", "target", "overlap^2", "residual");
    for r in &rows {
        let _ = writeln!(
            report,
            "{:<16} {:<16} {:>10} {:>12}",
            r.input.to_string(),
            r.target.to_string(),
            h(r.overlap_sq),
            format!("{:.3e}", r.residual_population)
        );
    }
    let _ = writeln!(
        report,
        "floor {}: {}",
        h(floor),
        if passed { "PASS" } else { "FAIL" }
    );
    Ok((rows, Outcome { report, passed }))
}

/// One fidelity run per grid point, `kappa` outer and `gamma` inner. Points
/// run in parallel; the returned order is fixed by the grid.
pub fn sweep(cfg: &Config) -> Result<Vec<SweepRow>> {
    let model = cfg.model.kind()?;
    let kappas = cfg.sweep.kappa_grid()?;
    let gammas = cfg.sweep.gamma_grid()?;
    let input = cfg.model.input_state()?;
    // Validate once up front so a bad config fails before any work.
    let reference = cfg.model.params_for(model, kappas[0], gammas[0])?;
    let psi0 = input.build(&reference.basis()?)?;

    let points: Vec<(f64, f64)> = kappas
        .iter()
        .flat_map(|&k| gammas.iter().map(move |&g| (k, g)))
        .collect();
    points
        .par_iter()
        .map(|&(kappa, gamma)| {
            let p = cfg.model.params_for(model, kappa, gamma)?;
            let r = fidelity_run_with(&p, &psi0)?;
            Ok(SweepRow {
                model,
                kappa_over_g: kappa,
                gamma_over_g: gamma,
                omega_over_g: p.omega / p.g,
                delta_over_g: p.delta.map(|d| d / p.g),
                t_gate_g: r.t_gate * p.g,
                fidelity: r.fidelity,
                success_probability: r.success_probability,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalResult {
    pub model: Model,
    pub kappa_over_g: f64,
    pub gamma_over_g: f64,
    pub fidelity: f64,
    pub success_probability: f64,
    pub t_gate_us: f64,
}

/// Runs one model at rates given in `2 pi MHz`. Times come back in
/// microseconds: `t_us = t_dimensionless / (2 pi g_MHz)`.
pub fn physical_run(
    section: &PhysicalSection,
    model_cfg: &ModelSection,
    model: Model,
) -> Result<PhysicalResult> {
    if !(section.g_mhz > 0.0) || !section.g_mhz.is_finite() {
        return Err(CliError::invalid("physical.g_mhz", format!("must be positive (got {})", section.g_mhz)));
    }
    let kappa = section.kappa_mhz / section.g_mhz;
    let gamma = section.gamma_mhz / section.g_mhz;
    let mut ratios = model_cfg.clone();
    ratios.omega_over_g = section.omega_over_g;
    ratios.delta_over_g = section.delta_over_g;
    let p = ratios.params_for(model, kappa, gamma)?;
    let psi0 = ratios.input_state()?.build(&p.basis()?)?;
    let r = fidelity_run_with(&p, &psi0)?;
    let g_rad_per_us = 2.0 * std::f64::consts::PI * section.g_mhz;
    Ok(PhysicalResult {
        model,
        kappa_over_g: kappa,
        gamma_over_g: gamma,
        fidelity: r.fidelity,
        success_probability: r.success_probability,
        t_gate_us: r.t_gate / g_rad_per_us,
    })
}

pub fn physical(cfg: &Config, models: &[Model]) -> Result<(Vec<PhysicalResult>, Outcome)> {
    let s = &cfg.physical;
    let mut report = format!(
        "physical rates (2 pi MHz): g = {}, kappa = {}, gamma = {}\n",
        h(s.g_mhz),
        h(s.kappa_mhz),
        h(s.gamma_mhz)
    );
    let mut results = Vec::new();
    for &model in models {
        let r = physical_run(s, &cfg.model, model)?;
        let _ = writeln!(
            report,
            "{:<9} kappa/g = {}, gamma/g = {}: F = {}, P = {}, t_gate = {} us",
            model.to_string(),
            h(r.kappa_over_g),
            h(r.gamma_over_g),
            h(r.fidelity),
            h(r.success_probability),
            h(r.t_gate_us)
        );
        results.push(r);
    }
    Ok((results, Outcome { report, passed: true }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenRow {
    pub sector: String,
    pub eigenvalue_over_g: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanVerdict {
    pub sector: String,
    pub vector: String,
    pub contained: bool,
    pub residual: f64,
}

pub struct ZenoReport {
    pub eigen: Vec<EigenRow>,
    pub spans: Vec<SpanVerdict>,
    pub outcome: Outcome,
}

impl ZenoReport {
    pub fn eigen_csv(&self) -> String {
        let mut s = String::from("sector,eigenvalue_over_g,multiplicity\n");
        for r in &self.eigen {
            let _ = writeln!(s, "{},{},{}", r.sector, format_sig(r.eigenvalue_over_g, 12), r.multiplicity);
        }
        s
    }
}

pub fn zeno_report(cfg: &Config) -> Result<ZenoReport> {
    let p = cfg.model.params_for(cfg.model.kind()?, 0.0, 0.0)?;
    let tol = cfg.zeno_report.degeneracy_tol;
    if !(tol > 0.0) {
        return Err(CliError::invalid("zeno_report.degeneracy_tol", "must be positive"));
    }
    let basis = p.basis()?;
    let h_total = build_total(&p)?;
    let h_c = build_cavity_coupling(&p)?;

    type Named = (&'static str, StateVector);
    let sectors: [(&str, BasisState, Vec<Named>); 2] = [
        (
            "swap",
            SWAP_SECTOR[0],
            vec![
                ("phi1", basis.ket(&SWAP_SECTOR[0])?),
                ("phi14", basis.ket(&SWAP_SECTOR[13])?),
                ("photonic_dark", swap_photonic_dark(&basis)?),
                ("excited_dark", swap_excited_dark(&basis)?),
            ],
        ),
        (
            "parallel",
            PARALLEL_SECTOR[0],
            vec![
                ("phi1'", basis.ket(&PARALLEL_SECTOR[0])?),
                ("photonic_dark'", parallel_photonic_dark(&basis)?),
            ],
        ),
    ];

    let mut eigen = Vec::new();
    let mut spans = Vec::new();
    let mut report = format!("zeno structure of H_c, {}\n", describe(&p));
    for (name, seed, refs) in &sectors {
        let sub = reachable_subspace(&h_total, &basis, *seed, DEFAULT_REACH_TOL)?;
        let d = zeno_decompose(&sub.restrict(&h_c)?, p.g, tol)?;
        let _ = writeln!(
            report,
            "{name} sector (seed {seed}): {} states, {} eigenspaces",
            sub.dim(),
            d.groups().len()
        );
        for (value, mult) in d.spectrum_over_g() {
            let _ = writeln!(report, "  eigenvalue/g = {:>8}  multiplicity {mult}", h(value + 0.0));
            eigen.push(EigenRow {
                sector: name.to_string(),
                eigenvalue_over_g: value,
                multiplicity: mult,
            });
        }
        for (label, v) in refs {
            let check = zero_subspace_span_check(&d, &[sub.project(v)?])?;
            let _ = writeln!(
                report,
                "  {label} in dark subspace: {} (residual {:.1e})",
                check.contained, check.residual
            );
            spans.push(SpanVerdict {
                sector: name.to_string(),
                vector: label.to_string(),
                contained: check.contained,
                residual: check.residual,
            });
        }
    }
    let passed = spans.iter().all(|s| s.contained);
    Ok(ZenoReport {
        eigen,
        spans,
        outcome: Outcome { report, passed },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticComparison {
    pub model: Model,
    /// Largest `|psi_full(t) - psi_closed_form(t)|` over the samples.
    pub full_max: f64,
    pub full_at_gate: f64,
    /// Same for propagation under the effective Hamiltonian.
    pub effective_max: f64,
}

pub fn analytic_compare_one(model_cfg: &ModelSection, model: Model, samples: usize) -> Result<AnalyticComparison> {
    if samples < 2 {
        return Err(CliError::invalid("analytic_compare.samples", "need at least 2 samples"));
    }
    let p = model_cfg.params_for(model, 0.0, 0.0)?;
    let basis = p.basis()?;
    let h_total = build_total(&p)?;
    let psi0 = basis.ket(&SWAP_SECTOR[0])?;
    let full = SpectralPropagator::new(&h_total, &psi0)?;
    let sub = reachable_subspace(&h_total, &basis, SWAP_SECTOR[0], DEFAULT_REACH_TOL)?;
    let effective = match model {
        Model::Resonant => effective_resonant(&sub, &p)?,
        Model::Detuned => effective_detuned(&sub, &p)?,
    };
    let mut start = DVector::<C64>::zeros(effective.dim());
    let phi1 = effective
        .index_of("phi1")
        .ok_or_else(|| CliError::invalid("model", "effective model lacks phi1"))?;
    start[phi1] = C64::new(1.0, 0.0);

    let t_gate = gate_time(&p)?;
    let mut out = AnalyticComparison {
        model,
        full_max: 0.0,
        full_at_gate: 0.0,
        effective_max: 0.0,
    };
    for k in 0..samples {
        let t = t_gate * k as f64 / (samples - 1) as f64;
        let closed = analytic_state(model, t, &p)?;
        let d_full = full.evolve(&psi0, t)?.distance(&closed)?;
        let d_eff = effective.to_full(&effective.evolve(&start, t))?.distance(&closed)?;
        out.full_max = out.full_max.max(d_full);
        out.effective_max = out.effective_max.max(d_eff);
        if k == samples - 1 {
            out.full_at_gate = d_full;
        }
    }
    Ok(out)
}

pub fn analytic_compare(cfg: &Config, models: &[Model]) -> Result<(Vec<AnalyticComparison>, Outcome)> {
    let tol = cfg.analytic_compare.tolerance;
    let mut report = format!(
        "full vs closed-form evolution of {} over one gate time ({} samples)\n",
        SWAP_SECTOR[0], cfg.analytic_compare.samples
    );
    let mut results = Vec::new();
    for &model in models {
        let c = analytic_compare_one(&cfg.model, model, cfg.analytic_compare.samples)?;
        let _ = writeln!(
            report,
            "{:<9} max deviation {:.3e} (at t_gate {:.3e}); effective model {:.3e}",
            model.to_string(),
            c.full_max,
            c.full_at_gate,
            c.effective_max
        );
        results.push(c);
    }
    let passed = results.iter().all(|c| c.full_max <= tol);
    let _ = writeln!(report, "tolerance {}: {}", h(tol), if passed { "PASS" } else { "FAIL" });
    Ok((results, Outcome { report, passed }))
}
