use crate::output::{Report, Status};
use amvp_core::asymptotics::{
    amvp_residual_sweep, verify_elliptic, verify_parabolic, AsymptoticReport, Engine, ExtrapolationModel, Setting,
    Subject, SweepSettings,
};
use amvp_core::catalog::{self, CatalogField};
use amvp_core::measure::{heat_ball_rule, unit_ball_rule, unit_sphere_rule, DEFAULT_TAU_MAX};
use amvp_core::oracles::{self, threshold, Discrepancy, OracleMatrix};
use amvp_core::plaplace::Geometry;
use amvp_core::pmean::compare::{
    continuity_contrast, monotonicity_search, ContrastRow, MeanKind, SearchConfig, SearchReport,
};
use amvp_core::pmean::{
    alt_mean_hr1, alt_mean_hr2, alt_mean_mpr, p_mean_ball, p_mean_heat, p_mean_sphere, Exponent, PMeanResult,
};
use amvp_core::solver::{residual_report, solve, Domain, GridNode, GridProblem, ResidualReport};
use amvp_core::{Error, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryArg {
    Ball,
    Sphere,
    Heat,
}

fn point(x: &mut Vec<f64>, n: usize) -> Result<()> {
    if x.is_empty() {
        *x = vec![0.0; n];
    }
    if x.len() != n {
        return Err(Error::InvalidParameter(format!("--x has {} coordinates, expected N = {n}", x.len())));
    }
    Ok(())
}

fn lookup(spec: &str, n: usize) -> Result<CatalogField> {
    catalog::field(spec, n)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PMeanArgs {
    /// Catalog field, e.g. `const:7`, `linear`, `normsq`, `radial:4`.
    #[arg(long)]
    pub field: String,
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    /// Exponent p >= 1, or `inf`.
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    /// Evaluation point, comma separated; defaults to the origin.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Time of the evaluation point (heat geometry).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = GeometryArg::Ball)]
    pub geometry: GeometryArg,
    #[arg(long, default_value_t = 16)]
    pub order: usize,
}

#[derive(Debug, Serialize)]
pub struct PMeanOutput {
    pub field: String,
    pub value_at_x: f64,
    pub mean: PMeanResult,
}

pub fn pmean(mut args: PMeanArgs) -> Result<Report<PMeanArgs, PMeanOutput>> {
    point(&mut args.x, args.n)?;
    let field = lookup(&args.field, args.n)?.field;
    let u = |y: &[f64]| field.eval(y, args.t);
    let mean = match args.geometry {
        GeometryArg::Ball => {
            let ball = unit_ball_rule(args.n, args.order)?;
            let sphere = if args.n >= 2 { Some(unit_sphere_rule(args.n, 2 * args.order)?) } else { None };
            p_mean_ball(&u, &args.x, args.eps, args.p, &ball, sphere.as_ref())?
        }
        GeometryArg::Sphere => p_mean_sphere(&u, &args.x, args.eps, args.p, &unit_sphere_rule(args.n, args.order)?)?,
        GeometryArg::Heat => {
            let rule = heat_ball_rule(args.n, args.order, DEFAULT_TAU_MAX)?;
            p_mean_heat(&|y: &[f64], s| field.eval(y, s), &args.x, args.t, args.eps, args.p, &rule)?
        }
    };
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["field", "mean", "residual", "iterations", "bracket_width"])?;
    csv.write_record([
        args.field.clone(),
        mean.mean.to_string(),
        mean.residual.to_string(),
        mean.iterations.to_string(),
        mean.bracket_width.to_string(),
    ])?;
    let output = PMeanOutput { field: field.name.clone(), value_at_x: u(&args.x), mean };
    Ok(Report { command: "pmean", status: Status::Pass, config: args, result: output, csv: into_bytes(csv)? })
}

fn into_bytes(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Compare the fitted limit with the closed-form coefficient.
    Coefficient,
    /// Sweep a field expected to satisfy the mean value property (limit 0).
    Residual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineArg {
    Resolved,
    Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelArg {
    /// Even model for probes, quadratic for other fields.
    Auto,
    Linear,
    Quadratic,
    Even,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = GeometryArg::Ball)]
    pub geometry: GeometryArg,
    #[arg(long, value_enum, default_value_t = VerifyMode::Coefficient)]
    pub mode: VerifyMode,
    /// Strictly decreasing radii of the sweep.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.025")]
    pub eps: Vec<f64>,
    #[arg(long, value_enum, default_value_t = EngineArg::Resolved)]
    pub engine: EngineArg,
    /// Refinement level of the resolved engine.
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    /// Order of the rule engine.
    #[arg(long, default_value_t = 16)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ModelArg::Auto)]
    pub model: ModelArg,
    /// Do not refine the engine when the largest-radius delta moves.
    #[arg(long)]
    pub no_escalate: bool,
    /// Relative bound in coefficient mode, bound on |fitted| in residual mode.
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
    /// Coefficient magnitude below which the error is measured in absolute terms.
    #[arg(long, default_value_t = 1e-3)]
    pub absolute_floor: f64,
    /// Replaces the closed-form coefficient; used to exercise the failure path.
    #[arg(long, allow_hyphen_values = true)]
    pub expect: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub passed: bool,
    /// `|fitted - expected| / max(|expected|, absolute_floor)`, or `|fitted|` in residual mode.
    pub score: f64,
    pub report: AsymptoticReport,
}

pub fn verify(mut args: VerifyArgs) -> Result<Report<VerifyArgs, VerifyOutput>> {
    point(&mut args.x, args.n)?;
    let entry = lookup(&args.field, args.n)?;
    let settings = SweepSettings {
        epsilons: args.eps.clone(),
        engine: match args.engine {
            EngineArg::Resolved => Engine::Resolved { level: args.level },
            EngineArg::Rule => Engine::Rule { order: args.order },
        },
        model: match args.model {
            ModelArg::Auto => None,
            ModelArg::Linear => Some(ExtrapolationModel::Linear),
            ModelArg::Quadratic => Some(ExtrapolationModel::Quadratic),
            ModelArg::Even => Some(ExtrapolationModel::Even),
        },
        escalate: !args.no_escalate,
    };
    let setting = match args.geometry {
        GeometryArg::Ball => Setting::Ball,
        GeometryArg::Sphere => Setting::Sphere,
        GeometryArg::Heat => Setting::Heat { time: args.t },
    };
    let mut report = match args.mode {
        VerifyMode::Residual => amvp_residual_sweep(&entry.field, &args.x, args.p, setting, &settings)?,
        VerifyMode::Coefficient => {
            let subject = match entry.probe {
                Some(q) => Subject::Probe(q),
                None => Subject::Field(entry.field),
            };
            match args.geometry {
                GeometryArg::Ball => verify_elliptic(&subject, &args.x, args.p, Geometry::Ball, &settings)?,
                GeometryArg::Sphere => verify_elliptic(&subject, &args.x, args.p, Geometry::Sphere, &settings)?,
                GeometryArg::Heat => verify_parabolic(&subject, &args.x, args.t, args.p, &settings)?,
            }
        }
    };
    if let Some(expected) = args.expect {
        report.theoretical = expected;
        report.abs_error = (report.fitted_limit - expected).abs();
        report.rel_error = report.abs_error / expected.abs().max(1e-12);
    }
    let score = match args.mode {
        VerifyMode::Residual if args.expect.is_none() => report.fitted_limit.abs(),
        _ => report.abs_error / report.theoretical.abs().max(args.absolute_floor),
    };
    let passed = score <= args.tolerance;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    Ok(Report {
        command: "verify",
        status: if passed { Status::Pass } else { Status::ToleranceFail },
        config: args,
        result: VerifyOutput { passed, score, report },
        csv,
    })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub dimensions: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1.5,2,3,4")]
    pub exponents: Vec<f64>,
    /// Random (A, xi) pairs per dimension and exponent.
    #[arg(long, default_value_t = 20)]
    pub pairs: usize,
    /// Random pairs for the heat-ball moment ratios.
    #[arg(long, default_value_t = 3)]
    pub heat_pairs: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub order: usize,
    #[arg(long, default_value_t = 24)]
    pub heat_order: usize,
}

#[derive(Debug, Serialize)]
pub struct OracleOutput {
    pub rows: usize,
    pub over_threshold: usize,
    pub worst_rel_gap: f64,
    pub discrepancies: Vec<Discrepancy>,
}

pub fn oracle_check(args: OracleArgs) -> Result<Report<OracleArgs, OracleOutput>> {
    let matrix = OracleMatrix {
        dimensions: args.dimensions.clone(),
        exponents: args.exponents.clone(),
        pairs: args.pairs,
        heat_pairs: args.heat_pairs,
        seed: args.seed,
        order: args.order,
        heat_order: args.heat_order,
    };
    let rows = matrix.run()?;
    let over = rows.iter().filter(|d| d.rel_gap.is_nan() || d.rel_gap > threshold(d.formula_id)).count();
    let worst = rows.iter().map(|d| d.rel_gap).fold(0.0, f64::max);
    let mut csv = Vec::new();
    oracles::write_csv(&rows, &mut csv)?;
    Ok(Report {
        command: "oracle-check",
        status: if over == 0 { Status::Pass } else { Status::ToleranceFail },
        config: args,
        result: OracleOutput { rows: rows.len(), over_threshold: over, worst_rel_gap: worst, discrepancies: rows },
        csv,
    })
}

/// `square`, `box:x0,y0,x1,y1` or `annulus:cx,cy,inner,outer`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DomainArg(pub Domain);

impl FromStr for DomainArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<f64> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|v| v.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad number in domain `{s}`"))))
                .collect::<Result<_>>()?
        };
        match (name, nums.as_slice()) {
            ("square", []) => Ok(DomainArg(Domain::Box { lower: [0.0, 0.0], upper: [1.0, 1.0] })),
            ("box", &[x0, y0, x1, y1]) => Ok(DomainArg(Domain::Box { lower: [x0, y0], upper: [x1, y1] })),
            ("annulus", &[cx, cy, inner, outer]) => Ok(DomainArg(Domain::Annulus { center: [cx, cy], inner, outer })),
            _ => Err(Error::InvalidParameter(format!(
                "unknown domain `{s}`; use square, box:x0,y0,x1,y1 or annulus:cx,cy,r0,r1"
            ))),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    #[arg(long, default_value = "square")]
    pub domain: DomainArg,
    /// Catalog field supplying the boundary data (N = 2).
    #[arg(long)]
    pub boundary: String,
    #[arg(long, default_value = "2")]
    pub p: Exponent,
    /// Grid spacing.
    #[arg(long, default_value_t = 1.0 / 32.0)]
    pub h: f64,
    /// Mean radius; defaults to 4h.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 20_000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    /// Treat the boundary field as the exact solution and report the error.
    #[arg(long)]
    pub exact: bool,
    /// Fail (exit 1) when the sup error against the exact solution exceeds this.
    #[arg(long, requires = "exact")]
    pub error_bound: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub iterations_used: usize,
    pub converged: bool,
    pub final_update_norm: f64,
    pub update_norms: Vec<f64>,
    pub boundary_min: f64,
    pub boundary_max: f64,
    pub report: ResidualReport,
    pub nodes: Vec<GridNode>,
}

pub fn solve_grid(mut args: SolveArgs) -> Result<Report<SolveArgs, SolveOutput>> {
    let boundary = lookup(&args.boundary, 2)?.field;
    let mut problem = GridProblem::new(args.domain.0.clone(), args.h, args.p, boundary.clone());
    problem.epsilon = *args.eps.get_or_insert(4.0 * args.h);
    problem.max_iterations = args.max_iterations;
    problem.tolerance = args.tolerance;
    problem.rule_order = args.order;
    let sol = solve(&problem)?;
    let report = residual_report(&sol, args.exact.then_some(&boundary));
    let status = if !sol.converged {
        Status::NotConverged
    } else if matches!((args.error_bound, report.error_sup), (Some(b), Some(e)) if e.is_nan() || e > b) {
        Status::ToleranceFail
    } else {
        Status::Pass
    };
    let mut csv = Vec::new();
    sol.write_csv(&mut csv)?;
    let output = SolveOutput {
        iterations_used: sol.iterations_used,
        converged: sol.converged,
        final_update_norm: sol.final_update_norm,
        update_norms: sol.update_norms,
        boundary_min: sol.boundary_min,
        boundary_max: sol.boundary_max,
        report,
        nodes: sol.nodes,
    };
    Ok(Report { command: "solve", status, config: args, result: output, csv })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, default_value = "normsq")]
    pub field: String,
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value = "4")]
    pub p: Exponent,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 16)]
    pub order: usize,
    /// Power n of the contrast sequence |z|^n.
    #[arg(long, default_value_t = 200)]
    pub contrast_power: u32,
    #[arg(long, default_value_t = 10_000)]
    pub search_pairs: usize,
    #[arg(long, default_value_t = 606)]
    pub search_seed: u64,
    #[arg(long, default_value_t = 16)]
    pub sample_size: usize,
}

#[derive(Debug, Serialize)]
pub struct MeanRow {
    pub name: &'static str,
    /// `None` where the mean is undefined for this p.
    pub value: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct CompareOutput {
    pub means: Vec<MeanRow>,
    pub contrast: ContrastRow,
    /// Search on the explicit combination mean; absent for p <= 1.
    pub combination_search: Option<SearchReport>,
    pub p_mean_search: SearchReport,
}

pub fn compare_means(mut args: CompareArgs) -> Result<Report<CompareArgs, CompareOutput>> {
    point(&mut args.x, args.n)?;
    let field = lookup(&args.field, args.n)?.field;
    let u = |y: &[f64]| field.eval(y, 0.0);
    let ball = unit_ball_rule(args.n, args.order)?;
    let sphere = unit_sphere_rule(args.n, 2 * args.order)?;
    let p = args.p.value();
    let optional = |r: Result<f64>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::OutOfRange(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let means = vec![
        MeanRow { name: "mu_p", value: Some(p_mean_ball(&u, &args.x, args.eps, args.p, &ball, Some(&sphere))?.mean) },
        MeanRow { name: "mu_p_star", value: optional(alt_mean_mpr(&u, &args.x, args.eps, p, &ball, &sphere))? },
        MeanRow { name: "mu_p_prime", value: optional(alt_mean_hr1(&u, &args.x, args.eps, p, &sphere))? },
        MeanRow { name: "mu_p_double_prime", value: optional(alt_mean_hr2(&u, &args.x, args.eps, p, &sphere))? },
    ];
    let contrast = continuity_contrast(args.contrast_power, args.n)?;
    let search = |mean| {
        monotonicity_search(SearchConfig {
            mean,
            dimension: args.n,
            pairs: args.search_pairs,
            sample_size: args.sample_size,
            seed: args.search_seed,
        })
    };
    let combination_search = if p > 1.0 { Some(search(MeanKind::Mpr(p))?) } else { None };
    let p_mean_search = search(MeanKind::PMean(args.p))?;

    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["quantity", "value"])?;
    for m in &means {
        csv.write_record([m.name.to_string(), m.value.map_or(String::new(), |v| v.to_string())])?;
    }
    csv.write_record(["contrast_mean_two".to_string(), contrast.mean_two.to_string()])?;
    csv.write_record(["contrast_mean_two_exact".to_string(), contrast.mean_two_exact.to_string()])?;
    csv.write_record(["contrast_mean_inf".to_string(), contrast.mean_inf.to_string()])?;
    if let Some(s) = &combination_search {
        csv.write_record(["combination_violations".to_string(), s.violations.to_string()])?;
    }
    csv.write_record(["p_mean_violations".to_string(), p_mean_search.violations.to_string()])?;

    // The variational mean is monotone; a violation means a numerical defect.
    let status = if p_mean_search.violations == 0 { Status::Pass } else { Status::ToleranceFail };
    Ok(Report {
        command: "compare-means",
        status,
        config: args,
        result: CompareOutput { means, contrast, combination_search, p_mean_search },
        csv: into_bytes(csv)?,
    })
}
