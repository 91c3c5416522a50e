//! Command dispatch.

use nikolskii_core::bandlimited::TorusGrid;
use nikolskii_core::besov::{embedding_shift, verify_embedding, BesovParams};
use nikolskii_core::lznorm::{lz_norm, NormMethod};
use nikolskii_core::nikolskii::{
    assemble_sweep, check_sweep_len, classify_space, nikolskii_bound, probe_sharpness, sweep_row,
    verify_inequality, BoundResult, FamilySpec, SweepRow,
};
use nikolskii_core::{ExtReal, SpaceParams};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{spectrum, Command, ExperimentConfig, FamilyConfig};
use crate::report::{Cell, Report};
use crate::CliError;

pub const SWEEP_HEADER: [&str; 12] = [
    "omega",
    "mu_omega",
    "lhs",
    "rhs",
    "ratio",
    "theorem_id",
    "power_exp",
    "log_exp_0",
    "log_exp_inf",
    "loglog_exp_0",
    "loglog_exp_inf",
    "slope",
];

const BOUND_HEADER: [&str; 11] = [
    "theorem_id",
    "class",
    "base_measure",
    "power_exp",
    "log_exp_0",
    "log_exp_inf",
    "loglog_exp_0",
    "loglog_exp_inf",
    "value",
    "requires_bounded",
    "rho",
];

fn ext(v: ExtReal) -> Value {
    match v {
        ExtReal::Finite(x) => json!(x),
        ExtReal::Infinity => json!("inf"),
    }
}

fn space_json(s: &SpaceParams) -> Value {
    json!({"p": ext(s.p), "b": ext(s.b), "a": [s.a.alpha0, s.a.alpha_inf]})
}

fn bound_json(b: &BoundResult) -> Value {
    json!({
        "theorem_id": b.theorem.as_str(),
        "class": b.class.map(|c| c.to_string()),
        "rho": b.class.and_then(|c| c.rho),
        "base_measure": b.base_measure,
        "power_exp": b.power_exponent,
        "log_exp": [b.log_exponents.alpha0, b.log_exponents.alpha_inf],
        "loglog_exp": [b.loglog_exponents.alpha0, b.loglog_exponents.alpha_inf],
        "value": b.value,
        "requires_bounded": b.requires_bounded,
    })
}

fn sweep_cells(r: &SweepRow, slope: Option<f64>) -> Vec<Cell> {
    let b = &r.bound;
    vec![
        r.omega.into(),
        r.mu_omega.into(),
        r.lhs.into(),
        r.rhs.into(),
        r.ratio.into(),
        b.theorem.as_str().into(),
        b.power_exponent.into(),
        b.log_exponents.alpha0.into(),
        b.log_exponents.alpha_inf.into(),
        b.loglog_exponents.alpha0.into(),
        b.loglog_exponents.alpha_inf.into(),
        slope.map_or(Cell::Empty, Cell::Num),
    ]
}

fn sweep_json(r: &SweepRow) -> Value {
    json!({
        "omega": r.omega,
        "mu_omega": r.mu_omega,
        "lhs": r.lhs,
        "source_norm": r.source_norm,
        "rhs": r.rhs,
        "ratio": r.ratio,
        "bound": bound_json(&r.bound),
    })
}

fn besov_json(b: &BesovParams) -> Value {
    json!({
        "sigma": b.sigma,
        "gamma": b.gamma,
        "gamma_pair": [b.gamma_pair.alpha0, b.gamma_pair.alpha_inf],
        "u": ext(b.u),
        "base": space_json(&b.base),
    })
}

fn method_name(m: NormMethod) -> &'static str {
    match m {
        NormMethod::ClosedForm => "closed-form",
        NormMethod::ExactStep => "exact-step",
        NormMethod::Quadrature => "quadrature",
    }
}

fn family(cfg: &ExperimentConfig) -> Result<FamilySpec, CliError> {
    cfg.require(&cfg.family, "family")?.spec(cfg.seed)
}

fn family_dim(cfg: &ExperimentConfig) -> usize {
    match cfg.family {
        Some(FamilyConfig::Random { dim, .. }) => dim,
        _ => 1,
    }
}

/// Executes the configured command.
pub fn run(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Norm => norm(cfg),
        Command::Rearrange => rearrange(cfg),
        Command::Classify => classify(cfg),
        Command::Bound => bound(cfg),
        Command::Verify => verify(cfg),
        Command::Sweep => sweep(cfg),
        Command::Probe => probe(cfg),
        Command::BesovShift => besov_shift(cfg),
        Command::BesovVerify => besov_verify(cfg),
    }
}

fn norm(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let r = match (&cfg.function, &cfg.family) {
        (Some(f), _) => lz_norm(&f.step()?.rearrange(), &target, f.domain_measure.ext()?)?,
        (None, Some(_)) => {
            let omega = *cfg.require(&cfg.omega, "omega")?;
            family(cfg)?.build(omega)?.norm(&target)?
        }
        (None, None) => {
            return Err(CliError::Config(
                "command `norm` needs `function` or `family`".into(),
            ))
        }
    };
    Ok(Report {
        header: vec!["value", "method", "estimated_rel_error"],
        rows: vec![vec![
            r.value.into(),
            method_name(r.method).into(),
            r.estimated_rel_error.into(),
        ]],
        result: json!({
            "value": r.value,
            "method": method_name(r.method),
            "estimated_rel_error": r.estimated_rel_error,
        }),
    })
}

fn rearrange(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let f = cfg.require(&cfg.function, "function")?.step()?.rearrange();
    let pieces: Vec<[f64; 2]> = f.pieces().iter().map(|p| [p.value, p.measure]).collect();
    Ok(Report {
        header: vec!["value", "measure"],
        rows: pieces
            .iter()
            .map(|p| vec![p[0].into(), p[1].into()])
            .collect(),
        result: json!({ "pieces": pieces }),
    })
}

fn classify(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = cfg.require(&cfg.source, "source")?.params()?;
    let c = classify_space(&s)?;
    let rho = c.rho.map_or(Cell::Empty, |r| Cell::Int(r as i64));
    Ok(Report {
        header: vec!["class", "rho"],
        rows: vec![vec![c.to_string().into(), rho]],
        result: json!({"source": space_json(&s), "class": c.to_string(), "rho": c.rho}),
    })
}

fn bound(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let source = cfg.require(&cfg.source, "source")?.params()?;
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let s = spectrum(cfg.require(&cfg.spectrum, "spectrum")?)?;
    let b = nikolskii_bound(&source, &target, &s)?;
    let rho = b
        .class
        .and_then(|c| c.rho)
        .map_or(Cell::Empty, |r| Cell::Int(r as i64));
    Ok(Report {
        header: BOUND_HEADER.to_vec(),
        rows: vec![vec![
            b.theorem.as_str().into(),
            b.class.map_or(Cell::Empty, |c| c.to_string().into()),
            b.base_measure.into(),
            b.power_exponent.into(),
            b.log_exponents.alpha0.into(),
            b.log_exponents.alpha_inf.into(),
            b.loglog_exponents.alpha0.into(),
            b.loglog_exponents.alpha_inf.into(),
            b.value.into(),
            if b.requires_bounded { "true" } else { "false" }.into(),
            rho,
        ]],
        result: bound_json(&b),
    })
}

fn verify(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let source = cfg.require(&cfg.source, "source")?.params()?;
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let omega = *cfg.require(&cfg.omega, "omega")?;
    let f = family(cfg)?.build(omega)?;
    let v = verify_inequality(&f, &source, &target)?;
    let row = SweepRow {
        omega,
        mu_omega: f.spectrum().measure(),
        lhs: v.lhs,
        source_norm: v.source_norm,
        rhs: v.rhs,
        ratio: v.ratio,
        bound: v.bound,
    };
    Ok(Report {
        header: SWEEP_HEADER.to_vec(),
        rows: vec![sweep_cells(&row, None)],
        result: sweep_json(&row),
    })
}

fn sweep(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let source = cfg.require(&cfg.source, "source")?.params()?;
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let omegas = &cfg.require(&cfg.sweep, "sweep")?.omegas;
    let fam = family(cfg)?;
    check_sweep_len(omegas)?;
    // Points run concurrently; collect keeps input order.
    let rows = omegas
        .par_iter()
        .map(|&w| sweep_row(&fam, w, &source, &target))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = assemble_sweep(rows)?;
    Ok(Report {
        header: SWEEP_HEADER.to_vec(),
        rows: rep
            .rows
            .iter()
            .map(|r| sweep_cells(r, Some(rep.slope)))
            .collect(),
        result: json!({
            "rows": rep.rows.iter().map(sweep_json).collect::<Vec<_>>(),
            "slope": rep.slope,
        }),
    })
}

fn probe(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let source = cfg.require(&cfg.source, "source")?.params()?;
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let s = spectrum(cfg.require(&cfg.spectrum, "spectrum")?)?;
    let p = cfg.require(&cfg.probe, "probe")?;
    let grid = TorusGrid {
        dim: s.dim(),
        period: p.period,
        points: p.points,
    };
    let r = probe_sharpness(&source, &target, &s, grid, p.budget, cfg.seed)?;
    let mut rows = vec![vec![Cell::Int(0), r.initial_ratio.into()]];
    rows.extend(
        r.history
            .iter()
            .enumerate()
            .map(|(i, &v)| vec![Cell::Int(i as i64 + 1), v.into()]),
    );
    Ok(Report {
        header: vec!["iteration", "best_ratio"],
        rows,
        result: json!({
            "best_ratio": r.best_ratio,
            "initial_ratio": r.initial_ratio,
            "accepted": r.accepted,
            "history": r.history,
            "best_coefficients": r
                .best_coefficients
                .iter()
                .map(|c| [c.re, c.im])
                .collect::<Vec<_>>(),
        }),
    })
}

fn besov_shift(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let source = cfg.require(&cfg.source, "source")?.params()?;
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let b = cfg.require(&cfg.besov, "besov")?;
    let n = b.dim.unwrap_or_else(|| family_dim(cfg));
    let shifted = embedding_shift(b.corollary()?, &source, &target, n, &b.params(target)?)?;
    Ok(Report {
        header: vec!["sigma", "gamma", "gamma_0", "gamma_inf", "u"],
        rows: vec![vec![
            shifted.sigma.into(),
            shifted.gamma.into(),
            shifted.gamma_pair.alpha0.into(),
            shifted.gamma_pair.alpha_inf.into(),
            match shifted.u {
                ExtReal::Finite(u) => u.into(),
                ExtReal::Infinity => "inf".into(),
            },
        ]],
        result: json!({ "corollary": b.corollary, "shifted": besov_json(&shifted) }),
    })
}

fn besov_verify(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let source = cfg.require(&cfg.source, "source")?.params()?;
    let target = cfg.require(&cfg.target, "target")?.params()?;
    let b = cfg.require(&cfg.besov, "besov")?;
    let omegas = &cfg.require(&cfg.sweep, "sweep")?.omegas;
    let rep = verify_embedding(
        b.corollary()?,
        &family(cfg)?,
        omegas,
        b.count,
        cfg.seed,
        &source,
        &target,
        &b.params(target)?,
    )?;
    Ok(Report {
        header: vec!["omega", "index", "target_norm", "source_norm", "ratio"],
        rows: rep
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.omega.into(),
                    Cell::Int(r.index as i64),
                    r.target_norm.into(),
                    r.source_norm.into(),
                    r.ratio.into(),
                ]
            })
            .collect(),
        result: json!({
            "shifted": besov_json(&rep.shifted),
            "max_ratio": rep.max_ratio,
            "min_ratio": rep.min_ratio,
            "rows": rep.rows.iter().map(|r| json!({
                "omega": r.omega, "index": r.index, "target_norm": r.target_norm,
                "source_norm": r.source_norm, "ratio": r.ratio,
            })).collect::<Vec<_>>(),
        }),
    })
}
