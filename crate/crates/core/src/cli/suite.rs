//! The ordered property suite behind `check all`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::commands::irrep_of;
use super::config::RunConfig;
use crate::error::Result;
use crate::jackpoly::{cherednik_apply, eigen_residual, labels_of_degree, LaurentVPoly, NsjpBuilder};
use crate::linalg::{c, dist, op_norm};
use crate::localseries::{
    b_stream, closed_form_bound, matching_constant, near_face_point, overlap_residual, base_u_angle, FaceChart,
    SeriesExpansion, det_alpha0_closed_form,
};
use crate::odeflow::{flow_invariants, CheckLine, FlowConfig};
use crate::symgroup::IrrepData;
use crate::torusquad::{fcrec_residual, FCREC_FLOOR, gram_matrix, zero_sum_labels, FourierK, Quadrature, QuadratureGrid};
use crate::weightsolve::{face_commutation_check, solve_h, window_tag, WeightSolveResult, RANK_GAP};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Section {
    pub name: String,
    pub lines: Vec<CheckLine>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub pass: bool,
    pub first_failure: Option<String>,
    pub window: String,
    pub sections: Vec<Section>,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn flag(name: &str, ok: bool) -> CheckLine {
    CheckLine { name: name.into(), value: if ok { 1.0 } else { 0.0 }, threshold: 1.0, pass: ok }
}

pub fn symgroup_checks(ir: &IrrepData) -> Vec<CheckLine> {
    let r = ir.invariant_residuals();
    vec![
        CheckLine::at_most("generators are involutions", r.involution, 1e-12),
        CheckLine::at_most("braid relations", r.braid, 1e-12),
        CheckLine::at_most("Jucys-Murphy eigenvalues", r.jucys_murphy, 1e-12),
        CheckLine::at_most("form invariance", r.form_invariance, 1e-12),
        CheckLine::at_most("sigma block shape", r.sigma_diagonal, 0.0),
    ]
}

pub fn jackpoly_checks(ir: &IrrepData, kappa: f64, cap: i32, seed: u64) -> Result<Vec<CheckLine>> {
    let n = ir.n();
    let cap = cap.min(crate::jackpoly::default_degree_cap(n));
    let mut builder = NsjpBuilder::new(ir, kappa).with_degree_cap(cap);
    let mut worst: f64 = 0.0;
    for d in 0..=cap {
        for l in labels_of_degree(ir, d) {
            let p = builder.build(&l)?;
            worst = worst.max(eigen_residual(ir, kappa, &l, &p) / p.max_coeff());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = LaurentVPoly::zero(n, ir.n_tau);
    for _ in 0..6 {
        let alpha: Vec<i32> = (0..n).map(|_| rng.gen_range(-1..=2)).collect();
        let k = rng.gen_range(0..ir.n_tau);
        let coef = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        p = p.add(&LaurentVPoly::basis_monomial(alpha, ir.n_tau, k).scale(coef));
    }
    let mut comm: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let a = cherednik_apply(ir, kappa, i, &cherednik_apply(ir, kappa, j, &p));
            let b = cherednik_apply(ir, kappa, j, &cherednik_apply(ir, kappa, i, &p));
            comm = comm.max(a.dist(&b));
        }
    }
    Ok(vec![
        CheckLine::at_most("NSJP eigen-equations", worst, 1e-8),
        CheckLine::at_most("Cherednik operators commute", comm, 1e-9),
    ])
}

pub fn localseries_checks(ir: &IrrepData, kappa: f64, fc: &FlowConfig) -> Result<Vec<CheckLine>> {
    let n = ir.n();
    let (chart, _) = FaceChart::for_x0(n);
    let s = SeriesExpansion::new(ir, kappa, chart.clone(), 24, fc)?;
    let b = b_stream(ir, &chart, 0);
    let mut a1 = &s.alphas[0] * &b[0];
    for (r, sg) in ir.sigma_signs().iter().enumerate() {
        let f = if *sg < 0.0 { kappa / (1.0 - 2.0 * kappa) } else { kappa / (1.0 + 2.0 * kappa) };
        for col in 0..ir.n_tau {
            a1[(r, col)] *= f;
        }
    }
    let a0 = op_norm(&s.alphas[0]);
    let d0 = chart.delta0();
    let bound_excess = (0..=24)
        .map(|k| op_norm(&s.alphas[k]) / (a0 * closed_form_bound(n, kappa, d0, k)).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    let sg = ir.sigma();
    let parity = s
        .alphas
        .iter()
        .enumerate()
        .map(|(k, a)| dist(&(sg * a * sg), &(a * c(if k % 2 == 0 { 1.0 } else { -1.0 }))))
        .fold(0.0, f64::max);
    let det = s.alphas[0].determinant();
    let closed = det_alpha0_closed_form(ir, kappa, &chart);
    let mc = matching_constant(ir, kappa, fc)?;
    let mut overlap: f64 = 0.0;
    for (dt, eps) in [(0.0, 0.05), (0.2, 0.01), (-0.15, 0.1)] {
        let x = near_face_point(n, base_u_angle(n) + dt, eps);
        overlap = overlap.max(overlap_residual(ir, kappa, &mc.value, &x, fc)?.residual);
    }
    Ok(vec![
        CheckLine::at_most("sigma parity of alpha_n", parity, 0.0),
        CheckLine::at_most("alpha_1 formula", dist(&a1, &s.alphas[1]), 1e-12),
        CheckLine::at_most("coefficient bounds, ratio to majorant (n<=24)", bound_excess, 1.0 + 1e-9),
        CheckLine::at_most("det alpha_0 closed form (relative)", (det - closed).norm() / closed.norm(), 1e-8),
        CheckLine::at_most("matching constant tail bound", mc.tail_bound, 1e-10),
        CheckLine::at_most("overlap L1(x) = L1(x0) L(x)", overlap, 1e-8),
    ])
}

pub fn weightsolve_checks(ir: &IrrepData, kappa: f64, fc: &FlowConfig) -> Result<(Vec<CheckLine>, WeightSolveResult)> {
    let sol = solve_h(ir, kappa, fc)?;
    let face = face_commutation_check(ir, kappa, &sol, fc)?;
    let mut lines = vec![
        CheckLine { name: "singular value gap".into(), value: sol.gap(), threshold: RANK_GAP, pass: sol.gap() >= RANK_GAP },
        CheckLine::at_most("H Hermitian", sol.residuals.hermitian, 1e-10),
        CheckLine::at_most("upsilon H = H upsilon", sol.residuals.upsilon_h, 1e-9),
        CheckLine::at_most("sigma H1 = H1 sigma", face.sigma_h1, 1e-6),
        CheckLine::at_most("second face H2", face.second_face, 1e-6),
        CheckLine::at_most("sigma H1 = H1 sigma near the face", face.sigma_h1_near_face, 1e-6),
    ];
    if kappa.abs() < 1.0 / ir.tau.max_hook() as f64 {
        lines.push(flag("H positive definite", sol.positive));
    }
    Ok((lines, sol))
}

pub fn torusquad_checks(ir: &IrrepData, cfg: &RunConfig, sol: &WeightSolveResult) -> Result<Vec<CheckLine>> {
    let n = ir.n();
    let fc = cfg.flow();
    let q = Quadrature::new(ir, cfg.kappa, sol.h.clone(), &QuadratureGrid::new(n, cfg.points), &fc)?;
    let g = gram_matrix(&q, cfg.degree_cap)?;
    let mut lines = vec![CheckLine::at_most("Gram off-diagonal ratio", g.off_diag_max, cfg.gram_tol)];
    if let (Some(r), Some(e)) = (g.degree0_weight_ratio, g.expected_weight_ratio) {
        lines.push(CheckLine::within("degree-0 weight ratio / expected", r / e, 1.0, 1e-2));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut random_poly = |deg: i32| {
        let mut p = LaurentVPoly::zero(n, ir.n_tau);
        for alpha in crate::jackpoly::compositions(n, deg) {
            for k in 0..ir.n_tau {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                p = p.add(&LaurentVPoly::basis_monomial(alpha.clone(), ir.n_tau, k).scale(z));
            }
        }
        p
    };
    let (f, h) = (random_poly(1), random_poly(1));
    let mut adj: f64 = 0.0;
    let mut iso: f64 = 0.0;
    for i in 0..n {
        adj = adj.max(q.adjointness_residual(i, &f, &h));
        iso = iso.max(q.isometry_residual(i, &f, &h));
    }
    lines.push(CheckLine::at_most("adjointness of x_i D_i", adj, cfg.gram_tol));
    lines.push(CheckLine::at_most("isometry of x_i", iso, cfg.gram_tol));
    let fk = FourierK::new(&q);
    let mut fails = 0;
    let mut worst: f64 = 0.0;
    for a in zero_sum_labels(n, 2) {
        for i in 0..n {
            let l = fcrec_residual(ir, cfg.kappa, &fk, &a, i)?;
            worst = worst.max(l.residual / l.error_estimate.max(FCREC_FLOOR));
            if !l.pass {
                fails += 1;
            }
        }
    }
    lines.push(CheckLine::at_most("FCrec residual / two-grid estimate", worst, 3.0));
    lines.push(CheckLine::at_most("FCrec failures", fails as f64, 0.0));
    Ok(lines)
}

/// Runs every section in dependency order; passes iff all lines pass.
pub fn run_check_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let ir = irrep_of(cfg)?;
    let fc = cfg.flow();
    let mut sections = vec![
        Section { name: "symgroup".into(), lines: symgroup_checks(&ir) },
        Section { name: "jackpoly".into(), lines: jackpoly_checks(&ir, cfg.kappa, cfg.degree_cap, cfg.seed)? },
        Section { name: "odeflow".into(), lines: flow_invariants(&ir, cfg.kappa, cfg.seed, &fc)? },
        Section { name: "localseries".into(), lines: localseries_checks(&ir, cfg.kappa, &fc)? },
    ];
    let (lines, sol) = weightsolve_checks(&ir, cfg.kappa, &fc)?;
    sections.push(Section { name: "weightsolve".into(), lines });
    sections.push(Section { name: "torusquad".into(), lines: torusquad_checks(&ir, cfg, &sol)? });
    Ok(finish(sections, window_tag(ir.n(), cfg.kappa)))
}

pub fn finish(sections: Vec<Section>, window: &str) -> SuiteReport {
    let first_failure = sections.iter().find_map(|s| {
        s.lines.iter().find(|l| !l.pass).map(|l| format!("{}: {} = {:e} (threshold {:e})", s.name, l.name, l.value, l.threshold))
    });
    SuiteReport { pass: first_failure.is_none(), first_failure, window: window.into(), sections }
}
