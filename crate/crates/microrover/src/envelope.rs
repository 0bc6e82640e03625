//! The feasibility solver: combines every subsystem model into
//! per-constraint minimum rover scales, a binding-constraint report, scale
//! categories, and generic parameter sweeps.

use serde::Serialize;

use crate::environments::{floor_scale, Environment};
use crate::error::{Error, Result};
use crate::instruments::{analysis_time, InstrumentModel};
use crate::interp;
use crate::locomotion::{self, LocomotionModel};
use crate::power::{
    achievable_data_rate, compute_load, generated_power, store_lifetime, transmit_load,
    EnergyStore, PowerKind, RoverDesign,
};
use crate::thermal::{venus_compute_power, ComputeStyle, HighTempComputeModel};

/// Search interval for minimum-scale solves, metres.
pub const SCALE_MIN: f64 = 1e-4;
pub const SCALE_MAX: f64 = 1.0;
/// Relative tolerance of the bisection.
pub const SCALE_TOL: f64 = 1e-3;
/// Coarse bracketing grid: power curves are piecewise (generator clamp
/// regions), so bracket on a grid first, then bisect inside one cell.
const BRACKET_POINTS: usize = 64;

/// How the housekeeping computer is modelled inside a power constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComputeDuty {
    None,
    /// 1 uW at 1 cm, scaling with silicon area.
    Scaled,
    /// Hot-ambient electronics with a fixed dissipation.
    HighTemp {
        memory_bits: u64,
        transistors: u64,
        style: ComputeStyle,
    },
}

/// Scale-aware duty cycle evaluated inside the feasibility predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDuty {
    /// bit/s on the default surface link, if transmitting.
    pub transmit_rate: Option<f64>,
    pub compute: ComputeDuty,
    /// Drive at the nominal lengths-per-second pace.
    pub locomote: bool,
    /// W of fixed instrument draw.
    pub instrument_power: f64,
}

impl PowerDuty {
    pub fn none() -> Self {
        PowerDuty {
            transmit_rate: None,
            compute: ComputeDuty::None,
            locomote: false,
            instrument_power: 0.0,
        }
    }

    /// Electrical load of this duty at a design scale.
    pub fn load(&self, design: &RoverDesign, env: &Environment) -> Result<f64> {
        let mut total = self.instrument_power;
        if let Some(rate) = self.transmit_rate {
            total += transmit_load(design, env, rate)?;
        }
        total += match self.compute {
            ComputeDuty::None => 0.0,
            ComputeDuty::Scaled => compute_load(design.scale),
            ComputeDuty::HighTemp {
                memory_bits,
                transistors,
                style,
            } => venus_compute_power(&HighTempComputeModel::default(), memory_bits, transistors, style),
        };
        if self.locomote {
            total += locomotion::traverse_power(design, &LocomotionModel::default());
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintKind {
    /// Technology floor independent of power.
    HardFloor(f64),
    /// Generated power must cover the duty load.
    Power(PowerDuty),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub kind: ConstraintKind,
}

impl Constraint {
    pub fn floor(name: &str, scale: f64) -> Self {
        Constraint {
            name: name.to_string(),
            kind: ConstraintKind::HardFloor(scale),
        }
    }

    pub fn power(name: &str, duty: PowerDuty) -> Self {
        Constraint {
            name: name.to_string(),
            kind: ConstraintKind::Power(duty),
        }
    }
}

fn design_at(template: &RoverDesign, scale: f64) -> RoverDesign {
    RoverDesign { scale, ..*template }
}

/// Power margin (generated minus load) at a scale; negative is infeasible.
pub fn power_margin(
    duty: &PowerDuty,
    env: &Environment,
    power_kind: PowerKind,
    template: &RoverDesign,
    scale: f64,
) -> Result<f64> {
    let design = design_at(template, scale);
    Ok(generated_power(power_kind, &design, env) - duty.load(&design, env)?)
}

/// Smallest scale in [SCALE_MIN, SCALE_MAX] satisfying a constraint.
pub fn min_feasible_scale(
    constraint: &Constraint,
    env: &Environment,
    power_kind: PowerKind,
    template: &RoverDesign,
) -> Result<f64> {
    match &constraint.kind {
        ConstraintKind::HardFloor(s) => Ok(*s),
        ConstraintKind::Power(duty) => {
            let feasible = |scale: f64| {
                power_margin(duty, env, power_kind, template, scale)
                    .map(|m| m >= 0.0)
                    .unwrap_or(false)
            };
            // Bracket on a log grid, then bisect within the first feasible cell.
            let grid: Vec<f64> = (0..BRACKET_POINTS)
                .map(|i| {
                    SCALE_MIN
                        * (SCALE_MAX / SCALE_MIN).powf(i as f64 / (BRACKET_POINTS - 1) as f64)
                })
                .collect();
            let first = grid.iter().position(|&s| feasible(s));
            match first {
                None => {
                    let m_lo = power_margin(duty, env, power_kind, template, SCALE_MIN)
                        .unwrap_or(f64::NEG_INFINITY);
                    let m_hi = power_margin(duty, env, power_kind, template, SCALE_MAX)
                        .unwrap_or(f64::NEG_INFINITY);
                    Err(Error::Infeasible {
                        lo: SCALE_MIN,
                        hi: SCALE_MAX,
                        margin_lo: m_lo,
                        margin_hi: m_hi,
                    })
                }
                Some(0) => Ok(SCALE_MIN),
                Some(i) => Ok(interp::bisect_min_feasible(grid[i - 1], grid[i], SCALE_TOL, feasible)
                    .expect("bracketed by construction")),
            }
        }
    }
}

/// Conclusion-style scale category, closed-open at 1, 10, and 100 mm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleCategory {
    SubMm,
    Mm1To10,
    Cm10To100,
    Over100Mm,
}

pub fn categorize(scale: f64) -> ScaleCategory {
    if scale < 1e-3 {
        ScaleCategory::SubMm
    } else if scale < 10e-3 {
        ScaleCategory::Mm1To10
    } else if scale < 100e-3 {
        ScaleCategory::Cm10To100
    } else {
        ScaleCategory::Over100Mm
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintResult {
    pub name: String,
    /// m; None when infeasible over the whole search interval.
    pub min_scale: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub body: String,
    pub power_kind: PowerKind,
    pub per_constraint: Vec<ConstraintResult>,
    /// m; None when any constraint is infeasible.
    pub overall_min_scale: Option<f64>,
    pub binding_constraint: Option<String>,
    pub category: Option<ScaleCategory>,
    pub warnings: Vec<String>,
}

/// Instruments the report knows how to gate on.
pub const KNOWN_INSTRUMENTS: [&str; 9] = [
    "imaging",
    "apx",
    "ir_spectrometer",
    "raman",
    "qcl",
    "abrasion",
    "gamma",
    "libs",
    "mass_spectrometry",
];

fn instrument_floor(name: &str) -> Result<(f64, f64)> {
    // (floor scale m, steady instrument power W)
    let floor = |key: &str| floor_scale(key).expect("builtin floor");
    match name {
        "imaging" => Ok((floor("optical_imaging"), 0.0)),
        "apx" => Ok((floor("apx"), 0.0)),
        "ir_spectrometer" => Ok((floor("ir_spectroscopy_sub3um"), 0.0)),
        "raman" => Ok((floor("raman"), InstrumentModel::raman().min_power)),
        "qcl" => Ok((floor("qcl"), 0.0)),
        "abrasion" => Ok((floor("abrasion"), 1.5e-3)),
        "gamma" => Ok((floor("gamma_minimal"), 0.0)),
        "libs" => Ok((floor("libs"), 0.0)),
        "mass_spectrometry" => Ok((floor("mass_spectrometry"), 0.0)),
        other => Err(Error::Invalid {
            field: "instrument".to_string(),
            reason: format!(
                "unknown instrument `{other}`; known: {}",
                KNOWN_INSTRUMENTS.join(", ")
            ),
        }),
    }
}

/// Build the applicable constraint set for a body, power source, and
/// instrument fit.
pub fn constraint_set(
    env: &Environment,
    power_kind: PowerKind,
    instruments: &[&str],
) -> Result<Vec<Constraint>> {
    let mut out = vec![
        Constraint::floor("communication_floor", floor_scale("communication").unwrap()),
        Constraint::floor("computation_floor", floor_scale("computation").unwrap()),
        Constraint::power(
            "communication_power",
            PowerDuty {
                transmit_rate: Some(crate::commlink::default_per_rover_rate()),
                compute: compute_duty_for(env),
                locomote: false,
                instrument_power: 0.0,
            },
        ),
    ];
    match power_kind {
        PowerKind::RtgCurrent => {
            out.push(Constraint::floor("rtg_floor", floor_scale("rtg_current").unwrap()))
        }
        PowerKind::RtgVacuum => {
            out.push(Constraint::floor("rtg_floor", floor_scale("rtg_vacuum").unwrap()))
        }
        _ => {}
    }
    let mut instrument_power = 0.0;
    for inst in instruments {
        let (scale, pwr) = instrument_floor(inst)?;
        out.push(Constraint::floor(&format!("{inst}_floor"), scale));
        instrument_power += pwr;
    }
    if instrument_power > 0.0 {
        out.push(Constraint::power(
            "instrument_power",
            PowerDuty {
                transmit_rate: None,
                compute: compute_duty_for(env),
                locomote: false,
                instrument_power,
            },
        ));
    }
    Ok(out)
}

/// Ambient-appropriate compute duty: hot bodies force high-temperature
/// electronics at their fixed dissipation.
fn compute_duty_for(env: &Environment) -> ComputeDuty {
    if env.surface_temp > 573.0 {
        ComputeDuty::HighTemp {
            memory_bits: 200_000,
            transistors: 5000,
            style: ComputeStyle::GaasLike,
        }
    } else {
        ComputeDuty::Scaled
    }
}

/// Solve every applicable constraint and aggregate.
pub fn feasibility_report(
    env: &Environment,
    power_kind: PowerKind,
    instruments: &[&str],
    template: &RoverDesign,
) -> Result<FeasibilityReport> {
    let constraints = constraint_set(env, power_kind, instruments)?;
    let mut per_constraint = Vec::with_capacity(constraints.len());
    let mut overall: Option<f64> = Some(SCALE_MIN);
    let mut binding: Option<String> = None;
    let mut warnings = Vec::new();

    if matches!(env.surface_temp, t if t > 573.0) {
        warnings.push("ambient exceeds conventional silicon limit; high-temperature electronics assumed".to_string());
    }
    if env.surface_temp < 233.0 {
        warnings.push("ambient below electrolyte freezing; battery storage unavailable".to_string());
    }
    if crate::radiation::DoseCurve::for_regime(env.radiation_regime).is_some() {
        warnings.push("trapped-radiation belt: add shielding per the dose model".to_string());
    }

    for c in &constraints {
        match min_feasible_scale(c, env, power_kind, template) {
            Ok(s) => {
                per_constraint.push(ConstraintResult {
                    name: c.name.clone(),
                    min_scale: Some(s),
                    note: None,
                });
                if let Some(cur) = overall {
                    if s > cur {
                        overall = Some(s);
                        binding = Some(c.name.clone());
                    }
                }
            }
            Err(e) => {
                per_constraint.push(ConstraintResult {
                    name: c.name.clone(),
                    min_scale: None,
                    note: Some(e.to_string()),
                });
                overall = None;
            }
        }
    }

    Ok(FeasibilityReport {
        body: env.name.clone(),
        power_kind,
        per_constraint,
        overall_min_scale: overall,
        binding_constraint: if overall.is_some() { binding } else { None },
        category: overall.map(categorize),
        warnings,
    })
}

/// Quantities the sweep engine can evaluate at a scale.
pub const KNOWN_QUANTITIES: [&str; 10] = [
    "datarate",
    "battery_life",
    "capacitor_life",
    "apx_time",
    "traverse_power",
    "annual_range",
    "generated_power",
    "transmit_power",
    "compute_power",
    "equilibration_time",
];

/// Reference transmit load for the store-lifetime curves: 10 uW at 1 cm,
/// scaling as the inverse antenna gain.
fn reference_transmit_load(scale: f64) -> f64 {
    10e-6 * (0.01 / scale).powi(2)
}

pub fn evaluate_quantity(
    name: &str,
    scale: f64,
    env: &Environment,
    power_kind: PowerKind,
    template: &RoverDesign,
) -> Result<f64> {
    let design = design_at(template, scale);
    match name {
        "datarate" => {
            let gen = generated_power(power_kind, &design, env);
            achievable_data_rate(&design, env, gen)
        }
        "battery_life" => Ok(store_lifetime(
            &design,
            &EnergyStore::battery_secondary(),
            reference_transmit_load(scale),
        )),
        "capacitor_life" => Ok(store_lifetime(
            &design,
            &EnergyStore::capacitor_thin_film(),
            reference_transmit_load(scale),
        )),
        "apx_time" => analysis_time(&InstrumentModel::apx(), scale, 1.0),
        "traverse_power" => Ok(locomotion::traverse_power(&design, &LocomotionModel::default())),
        "annual_range" => Ok(locomotion::annual_range(&design, &LocomotionModel::default())),
        "generated_power" => Ok(generated_power(power_kind, &design, env)),
        "transmit_power" => transmit_load(&design, env, crate::commlink::default_per_rover_rate()),
        "compute_power" => Ok(compute_load(scale)),
        "equilibration_time" => Ok(crate::thermal::equilibration_time(
            scale,
            env.surface_temp,
            crate::thermal::DEFAULT_VOLUMETRIC_HEAT_CAPACITY,
            0.9,
        )),
        other => Err(Error::Invalid {
            field: "quantity".to_string(),
            reason: format!(
                "unknown quantity `{other}`; known: {}",
                KNOWN_QUANTITIES.join(", ")
            ),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// m
    pub scale: f64,
    pub value: Option<f64>,
    pub error: Option<String>,
}

/// Logarithmic scale grid.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && points >= 1);
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
        .collect()
}

/// Evaluate a quantity over a grid; per-row errors are recorded, not fatal.
pub fn sweep(
    quantity: &str,
    env: &Environment,
    power_kind: PowerKind,
    template: &RoverDesign,
    grid: &[f64],
) -> Result<Vec<SweepRow>> {
    if !KNOWN_QUANTITIES.contains(&quantity) {
        // Surface the name error eagerly with suggestions.
        evaluate_quantity(quantity, 0.01, env, power_kind, template)?;
    }
    Ok(grid
        .iter()
        .map(|&scale| match evaluate_quantity(quantity, scale, env, power_kind, template) {
            Ok(v) => SweepRow {
                scale,
                value: Some(v),
                error: None,
            },
            Err(e) => SweepRow {
                scale,
                value: None,
                error: Some(e.to_string()),
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environments::{builtin_catalog, find_environment};
    use approx::assert_relative_eq;

    fn env(name: &str) -> Environment {
        find_environment(&builtin_catalog(), name).unwrap().clone()
    }

    fn template() -> RoverDesign {
        RoverDesign::new(0.01)
    }

    #[test]
    fn hard_floor_passthrough() {
        let c = Constraint::floor("raman_floor", 8e-3);
        let s = min_feasible_scale(&c, &env("mars"), PowerKind::Solar, &template()).unwrap();
        assert_relative_eq!(s, 8e-3);
    }

    #[test]
    fn comm_power_minimum_rtg() {
        // Benign 300 K body at 1e4 km relay range.
        let mut e = env("moon dayside");
        e.surface_temp = 300.0;
        let c = Constraint::power(
            "communication_power",
            PowerDuty {
                transmit_rate: Some(crate::commlink::default_per_rover_rate()),
                compute: ComputeDuty::Scaled,
                locomote: false,
                instrument_power: 0.0,
            },
        );
        let s = min_feasible_scale(&c, &e, PowerKind::RtgCurrent, &template()).unwrap();
        assert!(s > 3e-3 / 1.5 && s < 3e-3 * 1.5, "{s}");
    }

    #[test]
    fn raman_abrasion_at_jupiter_distance() {
        let e = env("europa");
        let c = Constraint::power(
            "instrument_power",
            PowerDuty {
                transmit_rate: None,
                compute: ComputeDuty::Scaled,
                locomote: false,
                instrument_power: 1.5e-3 + 0.3e-3,
            },
        );
        let s = min_feasible_scale(&c, &e, PowerKind::Solar, &template()).unwrap();
        assert!(s > 5e-3 && s < 2e-2, "{s}");
    }

    #[test]
    fn venus_rtg_minimum() {
        let r = feasibility_report(&env("venus"), PowerKind::RtgCurrent, &[], &template()).unwrap();
        let min = r.overall_min_scale.unwrap();
        assert!(min >= 0.06, "{min}");
        assert_eq!(r.category, Some(ScaleCategory::Cm10To100));
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn pluto_solar_cm_rover_feasible() {
        let r = feasibility_report(
            &env("pluto"),
            PowerKind::Solar,
            &["imaging"],
            &template(),
        )
        .unwrap();
        let min = r.overall_min_scale.unwrap();
        assert!(min <= 0.01, "{min}");
    }

    #[test]
    fn mars_instrument_report() {
        let r = feasibility_report(
            &env("mars"),
            PowerKind::Solar,
            &["imaging", "apx", "ir_spectrometer"],
            &template(),
        )
        .unwrap();
        let min = r.overall_min_scale.unwrap();
        assert!(min >= 2.4e-3 && min <= 4e-3, "{min}");
        assert_eq!(r.category, Some(ScaleCategory::Mm1To10));
        assert_eq!(r.binding_constraint.as_deref(), Some("apx_floor"));
    }

    #[test]
    fn report_monotone_in_instruments() {
        let base = feasibility_report(&env("mars"), PowerKind::Solar, &[], &template()).unwrap();
        let more = feasibility_report(&env("mars"), PowerKind::Solar, &["raman"], &template()).unwrap();
        assert!(more.overall_min_scale.unwrap() >= base.overall_min_scale.unwrap());
    }

    #[test]
    fn unknown_instrument_rejected() {
        let e = feasibility_report(&env("mars"), PowerKind::Solar, &["sonar"], &template());
        assert!(e.is_err());
    }

    #[test]
    fn categories_exact_at_boundaries() {
        assert_eq!(categorize(0.999e-3), ScaleCategory::SubMm);
        assert_eq!(categorize(1e-3), ScaleCategory::Mm1To10);
        assert_eq!(categorize(9.999e-3), ScaleCategory::Mm1To10);
        assert_eq!(categorize(10e-3), ScaleCategory::Cm10To100);
        assert_eq!(categorize(99.99e-3), ScaleCategory::Cm10To100);
        assert_eq!(categorize(100e-3), ScaleCategory::Over100Mm);
    }

    #[test]
    fn bisection_matches_grid_oracle() {
        // Independent 200-point scan; solver must land within one cell.
        let bodies = builtin_catalog();
        let t = template();
        for body in &bodies {
            for pk in [PowerKind::Solar, PowerKind::RtgCurrent, PowerKind::RtgVacuum] {
                let duty = PowerDuty {
                    transmit_rate: Some(crate::commlink::default_per_rover_rate()),
                    compute: compute_duty_for(body),
                    locomote: false,
                    instrument_power: 0.0,
                };
                let c = Constraint::power("comm", duty);
                let solved = min_feasible_scale(&c, body, pk, &t);
                let grid = log_grid(SCALE_MIN, SCALE_MAX, 200);
                let oracle = grid.iter().position(|&s| {
                    power_margin(&duty, body, pk, &t, s)
                        .map(|m| m >= 0.0)
                        .unwrap_or(false)
                });
                match (solved, oracle) {
                    (Ok(s), Some(i)) => {
                        let lo = if i == 0 { SCALE_MIN } else { grid[i - 1] };
                        assert!(
                            s >= lo * 0.999 && s <= grid[i] * 1.001,
                            "{} {:?}: solved {s}, oracle cell [{lo}, {}]",
                            body.name,
                            pk,
                            grid[i]
                        );
                    }
                    (Err(_), None) => {}
                    (s, o) => panic!("{} {:?}: solver {:?} vs oracle {:?}", body.name, pk, s, o),
                }
            }
        }
    }

    #[test]
    fn sweep_slopes() {
        let mars = env("mars");
        let t = template();
        // Volumetric source in its flat-density region: L^5.
        let grid = log_grid(5e-3, 2e-2, 30);
        let rows = sweep("datarate", &mars, PowerKind::RtgCurrent, &t, &grid).unwrap();
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.scale, r.value.unwrap())).collect();
        assert!((interp::log_log_slope(&pts) - 5.0).abs() < 0.1);

        let rows = sweep("datarate", &mars, PowerKind::Solar, &t, &log_grid(5e-3, 0.1, 30)).unwrap();
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.scale, r.value.unwrap())).collect();
        assert!((interp::log_log_slope(&pts) - 4.0).abs() < 0.1);

        let rows = sweep("apx_time", &mars, PowerKind::Solar, &t, &log_grid(2e-3, 0.1, 20)).unwrap();
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.scale, r.value.unwrap())).collect();
        assert_relative_eq!(interp::log_log_slope(&pts), 2.0, max_relative = 1e-9);

        let rows = sweep("battery_life", &mars, PowerKind::Solar, &t, &log_grid(5e-3, 0.1, 20)).unwrap();
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.scale, r.value.unwrap())).collect();
        assert_relative_eq!(interp::log_log_slope(&pts), 5.0, max_relative = 1e-9);
    }

    #[test]
    fn sweep_misc() {
        let mars = env("mars");
        let t = template();
        assert_eq!(log_grid(0.01, 1.0, 1), vec![0.01]);
        let one = sweep("compute_power", &mars, PowerKind::Solar, &t, &[0.01]).unwrap();
        assert_relative_eq!(one[0].value.unwrap(), 1e-6);
        assert!(sweep("nosuch", &mars, PowerKind::Solar, &t, &[0.01]).is_err());

        // Venus sweep at 300 GHz default gets per-row errors (atmosphere cap).
        let venus = env("venus");
        let rows = sweep("datarate", &venus, PowerKind::RtgCurrent, &t, &[0.01]).unwrap();
        assert!(rows[0].value.is_some()); // capped to 20 GHz internally, still works
    }
}
