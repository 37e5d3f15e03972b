//! Experiment runners producing [`ResultTable`]s.

use std::time::Instant;

use minnaert::bubble::{
    characteristic_value, extract_monopole, grid_scan, normal_modes_two_bubbles, regime_of, resonance_formula_2d,
    resonance_formula_3d, BubbleConfiguration, MaterialParams, Regime, SearchOptions,
};
use minnaert::exec;
use minnaert::geometry::{make_circle, make_ellipse, CurveDescriptor, DiscreteBoundary, ParametricCurve};
use minnaert::layerpot::expansion_remainders;
use minnaert::{Error as CoreError, C64};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::CliError;
use crate::table::{Kind, ResultTable, Value};

fn options(config: &ExperimentConfig) -> SearchOptions {
    SearchOptions { tol: config.tol, max_iter: config.max_iter, allow_any_quadrant: false }
}

fn boundary(config: &ExperimentConfig) -> Result<DiscreteBoundary, CliError> {
    let curve = ParametricCurve::new(config.geometry.clone()).map_err(CliError::from_validation)?;
    DiscreteBoundary::new(curve, config.n).map_err(CliError::from_validation)
}

fn single(config: &ExperimentConfig, materials: MaterialParams) -> Result<BubbleConfiguration, CliError> {
    BubbleConfiguration::single(boundary(config)?, materials).map_err(CliError::from_validation)
}

fn pair(config: &ExperimentConfig, d: f64, materials: MaterialParams) -> Result<BubbleConfiguration, CliError> {
    let CurveDescriptor::Circle { radius, .. } = config.geometry else {
        return Err(CliError::Validation {
            key: "geometry".into(),
            reason: "two-bubble experiments use circles".into(),
        });
    };
    BubbleConfiguration::two_circles(radius, d, config.distance_convention, config.n, materials)
        .map_err(CliError::from_validation)
}

/// Single-bubble ω_c seeded by the transcendental formula root.
fn single_resonance(config: &BubbleConfiguration, options: &SearchOptions) -> Result<(C64, C64, usize), CoreError> {
    let formula = resonance_formula_2d(config, options)?;
    let numeric = characteristic_value(config, formula.omega, options)?;
    Ok((numeric.omega, formula.omega, numeric.iterations))
}

fn finish(mut table: ResultTable, config: &ExperimentConfig, started: Instant) -> ResultTable {
    table.metadata.config_hash = config.hash();
    table.metadata.runtime_seconds = started.elapsed().as_secs_f64();
    table
}

pub fn run(config: &ExperimentConfig) -> Result<ResultTable, CliError> {
    match config.experiment {
        Experiment::Table1 => run_table1(config),
        Experiment::Table2 => run_table2(config),
        Experiment::SpectrumMap => run_spectrum_map(config),
        Experiment::DistanceSweep => run_distance_sweep(config),
        Experiment::ScatterSweep => run_scatter_sweep(config),
    }
}

/// One row per δ: numerical ω_c, formula ω_f and |ω_c − ω_f|/|ω_c| in percent.
pub fn run_table1(config: &ExperimentConfig) -> Result<ResultTable, CliError> {
    let started = Instant::now();
    let opts = options(config);
    let deltas = config.deltas();
    let rows = exec::map(&deltas, |&delta| -> Result<Vec<Value>, CliError> {
        let materials = MaterialParams::matched(config.background, delta).map_err(CliError::from_validation)?;
        let bubble = single(config, materials)?;
        let (omega_c, omega_f, iterations) =
            single_resonance(&bubble, &opts).map_err(|e| CliError::solver(format!("table1 row delta={delta}"), e))?;
        let error = (omega_c - omega_f).norm() / omega_c.norm() * 100.0;
        Ok(vec![
            Value::Real(delta),
            Value::Complex(omega_c),
            Value::Complex(omega_f),
            Value::Real(error),
            Value::Int(iterations as i64),
        ])
    });
    let mut table = ResultTable::new(
        "table1",
        &[
            ("delta", Kind::Real),
            ("omega_c", Kind::Complex),
            ("omega_f", Kind::Complex),
            ("relative_error_percent", Kind::Real),
            ("iterations", Kind::Int),
        ],
    );
    for row in rows {
        table.push(row?);
    }
    Ok(finish(table, config, started))
}

/// Normal modes (ω_s, ω_a) of two bubbles per distance, seeded at ω_c·(1 ∓ 0.1).
pub fn run_table2(config: &ExperimentConfig) -> Result<ResultTable, CliError> {
    let started = Instant::now();
    let opts = options(config);
    let materials = config.pair_materials();
    materials.validate().map_err(CliError::from_validation)?;
    let CurveDescriptor::Circle { radius, .. } = config.geometry else {
        return Err(CliError::Validation { key: "geometry".into(), reason: "two-bubble experiments use circles".into() });
    };
    let lone = BubbleConfiguration::single(
        make_circle([0.0, 0.0], radius, config.n).map_err(CliError::from_validation)?,
        materials,
    )
    .map_err(CliError::from_validation)?;
    let (omega_c, _, _) = single_resonance(&lone, &opts).map_err(|e| CliError::solver("table2 single bubble", e))?;
    let guesses = (omega_c * 0.9, omega_c * 1.1);
    let distances = config.distances();
    let rows = exec::map(&distances, |&d| -> Result<Vec<Value>, CliError> {
        let two = pair(config, d, materials)?;
        let nan = C64::new(f64::NAN, f64::NAN);
        let row = |s: C64, a: C64, status: &str, classified: bool| {
            vec![
                Value::Real(d),
                Value::Complex(s),
                Value::Complex(a),
                Value::Complex(omega_c),
                Value::Text(status.to_string()),
                Value::Int(classified as i64),
            ]
        };
        match normal_modes_two_bubbles(&two, guesses, &opts) {
            Ok(m) => Ok(row(m.symmetric.omega, m.antisymmetric.omega, "ok", m.classified)),
            Err(CoreError::ModeCollapse { .. }) => Ok(row(nan, nan, "mode_collapse", false)),
            Err(e @ (CoreError::NoConvergence { .. } | CoreError::Branch { .. } | CoreError::DegenerateParabola { .. })) => {
                eprintln!("table2 row d={d}: {e}");
                Ok(row(nan, nan, "no_convergence", false))
            }
            Err(e) => Err(CliError::solver(format!("table2 row d={d}"), e)),
        }
    });
    let mut table = ResultTable::new(
        "table2",
        &[
            ("d", Kind::Real),
            ("omega_s", Kind::Complex),
            ("omega_a", Kind::Complex),
            ("omega_c", Kind::Complex),
            ("status", Kind::Text),
            ("classified", Kind::Int),
        ],
    );
    for row in rows {
        table.push(row?);
    }
    Ok(finish(table, config, started))
}

fn grid(config: &ExperimentConfig) -> ((f64, f64, usize), (f64, f64, usize)) {
    let g = config.omega_grid.expect("validated");
    (g.re.as_tuple(), g.im.as_tuple())
}

/// Normalized minimum-modulus eigenvalue of A(ω) over a complex ω grid.
pub fn run_spectrum_map(config: &ExperimentConfig) -> Result<ResultTable, CliError> {
    let started = Instant::now();
    let bubble = single(config, config.single_materials()?)?;
    let (re, im) = grid(config);
    let scan = grid_scan(&bubble, re, im).map_err(|e| CliError::solver("spectrum_map", e))?;
    let mut table = ResultTable::new("spectrum_map", &[("omega", Kind::Complex), ("objective", Kind::Real)]);
    for (w, f) in scan {
        table.push(vec![Value::Complex(w), Value::Real(f)]);
    }
    Ok(finish(table, config, started))
}

/// Objective of A₂(ω) over the ω grid, for every distance.
pub fn run_distance_sweep(config: &ExperimentConfig) -> Result<ResultTable, CliError> {
    let started = Instant::now();
    let materials = config.pair_materials();
    let (re, im) = grid(config);
    let mut table = ResultTable::new(
        "distance_sweep",
        &[("d", Kind::Real), ("omega", Kind::Complex), ("objective", Kind::Real)],
    );
    for d in config.distances() {
        let two = pair(config, d, materials)?;
        let scan = grid_scan(&two, re, im).map_err(|e| CliError::solver(format!("distance_sweep d={d}"), e))?;
        for (w, f) in scan {
            table.push(vec![Value::Real(d), Value::Complex(w), Value::Real(f)]);
        }
    }
    Ok(finish(table, config, started))
}

fn regime_tag(r: Regime) -> &'static str {
    match r {
        Regime::I => "I",
        Regime::II => "II",
        Regime::III => "III",
    }
}

/// Monopole coefficient |g| and arg g of a single bubble over real ω.
pub fn run_scatter_sweep(config: &ExperimentConfig) -> Result<ResultTable, CliError> {
    let started = Instant::now();
    let materials = config.single_materials()?;
    let bubble = single(config, materials)?;
    let center = bubble.centers[0];
    let probe = [center[0] + config.far_radius, center[1]];
    let omegas = config.omega_grid.expect("validated").re.samples();
    let delta = materials.delta();
    let rows = exec::map(&omegas, |&w| -> Result<Vec<Value>, CliError> {
        let tag = Value::Text(regime_tag(regime_of(w, delta)).to_string());
        match extract_monopole(&bubble, C64::new(w, 0.0), probe) {
            Ok(g) => Ok(vec![Value::Real(w), Value::Real(g.norm()), Value::Real(g.arg()), tag, Value::Int(0)]),
            Err(CoreError::NearResonance { .. }) => {
                Ok(vec![Value::Real(w), Value::Real(f64::NAN), Value::Real(f64::NAN), tag, Value::Int(1)])
            }
            Err(e @ CoreError::Proximity { .. }) => Err(CliError::Validation { key: "far_radius".into(), reason: e.to_string() }),
            Err(e) => Err(CliError::solver(format!("scatter_sweep omega={w}"), e)),
        }
    });
    let mut table = ResultTable::new(
        "scatter_sweep",
        &[
            ("omega", Kind::Real),
            ("abs_g", Kind::Real),
            ("arg_g", Kind::Real),
            ("regime", Kind::Text),
            ("near_resonance", Kind::Int),
        ],
    );
    for row in rows {
        table.push(row?);
    }
    Ok(finish(table, config, started))
}

/// ω₀,₀ and ω₀,₁ from the three-dimensional formula.
pub fn run_formula3d(cap: f64, vol: f64, tau: f64, v: f64, delta: f64) -> Result<ResultTable, CliError> {
    let (w0, w1) = resonance_formula_3d(cap, vol, tau, v, delta).map_err(CliError::from_validation)?;
    let mut table = ResultTable::new(
        "formula3d",
        &[
            ("cap", Kind::Real),
            ("vol", Kind::Real),
            ("tau", Kind::Real),
            ("v", Kind::Real),
            ("delta", Kind::Real),
            ("omega00", Kind::Complex),
            ("omega01", Kind::Complex),
        ],
    );
    table.push(vec![
        Value::Real(cap),
        Value::Real(vol),
        Value::Real(tau),
        Value::Real(v),
        Value::Real(delta),
        Value::Complex(w0),
        Value::Complex(w1),
    ]);
    Ok(table)
}

/// Remainders of the small-k expansions of S^k and K^{k,*} on a circle and an ellipse.
pub fn run_verify_expansions(n: usize) -> Result<ResultTable, CliError> {
    let shapes = [
        ("circle", make_circle([0.0, 0.0], 1.0, n).map_err(CliError::from_validation)?),
        ("ellipse", make_ellipse([0.0, 0.0], [1.5, 0.8], n).map_err(CliError::from_validation)?),
    ];
    let ks = [0.1, 0.05, 0.025];
    let mut table = ResultTable::new(
        "verify_expansions",
        &[
            ("shape", Kind::Text),
            ("k", Kind::Real),
            ("s_remainder", Kind::Real),
            ("k_remainder", Kind::Real),
            ("s_ratio", Kind::Real),
            ("k_ratio", Kind::Real),
            ("predicted_ratio", Kind::Real),
        ],
    );
    for (name, b) in &shapes {
        let mut previous: Option<(f64, f64, f64)> = None;
        for &k in &ks {
            let (s, kk) = expansion_remainders(b, k).map_err(|e| CliError::solver("verify_expansions", e))?;
            let (sr, kr, pr) = match previous {
                Some((k0, s0, kk0)) => (s0 / s, kk0 / kk, (k0.powi(4) * k0.ln()) / (k.powi(4) * k.ln())),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            table.push(vec![
                Value::Text(name.to_string()),
                Value::Real(k),
                Value::Real(s),
                Value::Real(kk),
                Value::Real(sr),
                Value::Real(kr),
                Value::Real(pr),
            ]);
            previous = Some((k, s, kk));
        }
    }
    Ok(table)
}
