//! Serializable results of the subcommands.

use serde::Serialize;

use super::config::RunConfig;
use super::report::{matrix_out, MatrixOut};
use crate::error::{Error, Result};
use crate::jackpoly::{eigen_residual, spectral_vector, Label, NsjpBuilder, TermOut};
use crate::linalg::op_norm;
use crate::localseries::{FaceChart, SeriesExpansion, SeriesSummary, DEFAULT_RADIUS_FRACTION};
use crate::odeflow::{extend_l, l_in_c0, FlowConfig, TorusPoint};
use crate::symgroup::{build_irrep, stembridge_profile, IrrepData, IrrepSummary, StembridgeProfile};
use crate::torusquad::{fcrec_residual, gram_matrix, zero_sum_labels, FcrecLine, FourierK, GramReport, Quadrature, QuadratureGrid};
use crate::weightsolve::{face_commutation_check, solve_h, window_tag, CommutationResiduals, FaceCommutationReport};

pub fn irrep_of(cfg: &RunConfig) -> Result<IrrepData> {
    build_irrep(&cfg.partition()?)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReprOut {
    #[serde(flatten)]
    pub summary: IrrepSummary,
    pub weights_f64: Vec<f64>,
    pub stembridge: StembridgeProfile,
    /// Orthogonal-form `τ(s_i)`.
    pub generators: Vec<MatrixOut>,
    pub sigma: MatrixOut,
    pub upsilon: MatrixOut,
}

pub fn repr(cfg: &RunConfig) -> Result<ReprOut> {
    let ir = irrep_of(cfg)?;
    let n = ir.n();
    Ok(ReprOut {
        summary: IrrepSummary::from(&ir),
        weights_f64: ir.weights_f64(),
        stembridge: stembridge_profile(&ir),
        generators: (0..n - 1).map(|i| matrix_out(ir.transposition(i, i + 1))).collect(),
        sigma: matrix_out(ir.sigma()),
        upsilon: matrix_out(ir.upsilon()),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NsjpOut {
    pub label: String,
    pub spectral_vector: Vec<f64>,
    pub eigen_residual: f64,
    pub terms: Vec<TermOut>,
}

pub fn nsjp(cfg: &RunConfig, alpha: Vec<i32>, tableau: usize) -> Result<NsjpOut> {
    let ir = irrep_of(cfg)?;
    if alpha.len() != ir.n() || tableau >= ir.n_tau {
        return Err(Error::InvalidConfig(format!(
            "alpha needs {} entries and tableau must be below {}",
            ir.n(),
            ir.n_tau
        )));
    }
    let label = Label { alpha, tableau };
    let d: i32 = label.alpha.iter().map(|a| a.max(&0)).sum::<i32>();
    let p = NsjpBuilder::new(&ir, cfg.kappa).with_degree_cap(d.max(cfg.degree_cap)).build(&label)?;
    Ok(NsjpOut {
        label: label.to_string(),
        spectral_vector: spectral_vector(&ir, cfg.kappa, &label).values,
        eigen_residual: eigen_residual(&ir, cfg.kappa, &label, &p),
        terms: p.to_terms(),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FlowOut {
    pub theta: Vec<f64>,
    pub chamber_perm: Vec<usize>,
    pub l: MatrixOut,
    pub det: [f64; 2],
    pub error_estimate: f64,
    pub step_count: usize,
}

pub fn flow(cfg: &RunConfig, theta: Vec<f64>) -> Result<FlowOut> {
    let ir = irrep_of(cfg)?;
    if theta.len() != ir.n() {
        return Err(Error::InvalidConfig(format!("target needs {} angles", ir.n())));
    }
    let x = TorusPoint::new(theta);
    let fc = cfg.flow();
    let w = x.chamber_perm();
    let inner = l_in_c0(&ir, cfg.kappa, &x.permute(&w.inverse()), &fc)?;
    let l = extend_l(&ir, cfg.kappa, &x, &fc)?;
    let det = l.determinant();
    Ok(FlowOut {
        theta: x.theta.clone(),
        chamber_perm: w.images().to_vec(),
        l: matrix_out(&l),
        det: [det.re, det.im],
        error_estimate: inner.error_estimate,
        step_count: inner.step_count,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesOut {
    pub u_angle: f64,
    #[serde(flatten)]
    pub summary: SeriesSummary,
    /// Truncation bound at `|z| = δ₀/4`.
    pub tail_bound: f64,
    pub radius: f64,
}

pub fn series(cfg: &RunConfig, u_angle: f64, terms: usize) -> Result<SeriesOut> {
    let ir = irrep_of(cfg)?;
    let n = ir.n();
    let base: Vec<f64> = crate::odeflow::base_angles(n)[..n - 2].to_vec();
    let chart = FaceChart::from_angles(&base, u_angle, 1.0);
    let s = SeriesExpansion::new(&ir, cfg.kappa, chart, terms, &cfg.flow())?;
    let radius = DEFAULT_RADIUS_FRACTION * s.delta0();
    Ok(SeriesOut { u_angle, summary: s.summary(&ir), tail_bound: s.tail_bound(radius), radius })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveOut {
    pub h: MatrixOut,
    pub b1: MatrixOut,
    pub l1_x0: MatrixOut,
    pub singular_values: Vec<f64>,
    pub gap: f64,
    pub unknowns: usize,
    pub equations: usize,
    pub eigenvalues: Vec<f64>,
    pub positive: bool,
    pub residuals: CommutationResiduals,
    pub face: FaceCommutationReport,
    pub normalization: [f64; 2],
    pub window: String,
}

pub fn solve(cfg: &RunConfig) -> Result<SolveOut> {
    let ir = irrep_of(cfg)?;
    let fc = cfg.flow();
    let sol = solve_h(&ir, cfg.kappa, &fc)?;
    let face = face_commutation_check(&ir, cfg.kappa, &sol, &fc)?;
    Ok(SolveOut {
        h: matrix_out(&sol.h),
        b1: matrix_out(&sol.b1),
        l1_x0: matrix_out(&sol.l1x0),
        gap: sol.gap(),
        singular_values: sol.singular_values.clone(),
        unknowns: sol.n_unknowns,
        equations: sol.n_equations,
        eigenvalues: sol.positivity.clone(),
        positive: sol.positive,
        residuals: sol.residuals.clone(),
        face,
        normalization: [sol.normalization.re, sol.normalization.im],
        window: window_tag(ir.n(), cfg.kappa).into(),
    })
}

fn quadrature<'a>(ir: &'a IrrepData, cfg: &RunConfig, fc: &FlowConfig) -> Result<Quadrature<'a>> {
    let sol = solve_h(ir, cfg.kappa, fc)?;
    Quadrature::new(ir, cfg.kappa, sol.h, &QuadratureGrid::new(ir.n(), cfg.points), fc)
}

pub fn gram(cfg: &RunConfig) -> Result<GramReport> {
    let ir = irrep_of(cfg)?;
    let fc = cfg.flow();
    gram_matrix(&quadrature(&ir, cfg, &fc)?, cfg.degree_cap)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FourierOut {
    pub alpha: Vec<i32>,
    pub coefficient: MatrixOut,
    pub error_estimate: f64,
    pub norm: f64,
}

pub fn fourier(cfg: &RunConfig, alphas: &[Vec<i32>]) -> Result<Vec<FourierOut>> {
    let ir = irrep_of(cfg)?;
    let fc = cfg.flow();
    let q = quadrature(&ir, cfg, &fc)?;
    let fk = FourierK::new(&q);
    alphas
        .iter()
        .map(|a| {
            if a.len() != ir.n() {
                return Err(Error::InvalidConfig(format!("alpha needs {} entries", ir.n())));
            }
            let c = fk.coefficient(a)?;
            Ok(FourierOut { alpha: a.clone(), norm: op_norm(&c.value), coefficient: matrix_out(&c.value), error_estimate: c.error })
        })
        .collect()
}

pub fn fcrec_table(cfg: &RunConfig, max_norm: i32) -> Result<Vec<FcrecLine>> {
    let ir = irrep_of(cfg)?;
    let fc = cfg.flow();
    let q = quadrature(&ir, cfg, &fc)?;
    let fk = FourierK::new(&q);
    let mut out = Vec::new();
    for a in zero_sum_labels(ir.n(), max_norm) {
        for i in 0..ir.n() {
            out.push(fcrec_residual(&ir, cfg.kappa, &fk, &a, i)?);
        }
    }
    Ok(out)
}

