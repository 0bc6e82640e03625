//! Thermal gating of technologies, radiative equilibrium, equilibration
//! time constants, and the high-ambient-temperature electronics power model.

use serde::{Deserialize, Serialize};

use crate::environments::{Environment, CONSTANTS};

/// Operating temperature window for a spacecraft technology. `None` means
/// unconstrained on that side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TechnologyTempWindow {
    pub name: String,
    /// K
    pub min_temp: Option<f64>,
    /// K
    pub max_temp: Option<f64>,
}

impl TechnologyTempWindow {
    pub fn new(name: &str, min_temp: Option<f64>, max_temp: Option<f64>) -> Self {
        if let (Some(lo), Some(hi)) = (min_temp, max_temp) {
            assert!(lo < hi, "window {name}: min must be below max");
        }
        TechnologyTempWindow {
            name: name.to_string(),
            min_temp,
            max_temp,
        }
    }
}

/// Catalog of temperature windows for common technologies.
pub fn technology_windows() -> Vec<TechnologyTempWindow> {
    vec![
        TechnologyTempWindow::new("si_electronics", None, Some(573.0)),
        TechnologyTempWindow::new("si_electronics_extended", None, Some(673.0)),
        TechnologyTempWindow::new("elastomers", Some(173.0), Some(473.0)),
        TechnologyTempWindow::new("li_ion_current", Some(233.0), None),
        TechnologyTempWindow::new("li_ion_extended", Some(213.0), None),
        TechnologyTempWindow::new("reactive_propellants", Some(70.0), None),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TempGate {
    pub pass: bool,
    /// K; positive margin means the ambient is inside the window by that
    /// much on the tighter side, negative means outside.
    pub margin: f64,
}

/// Compare an environment's ambient temperature against a window. Rovers are
/// assumed to run at ambient, with no active thermal control.
pub fn temp_gate(env: &Environment, window: &TechnologyTempWindow) -> TempGate {
    let t = env.surface_temp;
    let lo_margin = window.min_temp.map(|lo| t - lo).unwrap_or(f64::INFINITY);
    let hi_margin = window.max_temp.map(|hi| hi - t).unwrap_or(f64::INFINITY);
    let margin = lo_margin.min(hi_margin);
    TempGate {
        pass: margin >= 0.0,
        margin,
    }
}

/// Default volumetric heat capacity for a generic solid, J/(m^3 K).
pub const DEFAULT_VOLUMETRIC_HEAT_CAPACITY: f64 = 2e6;

/// Radiative equilibration time constant of a body of the given scale:
/// tau = rho*c*L / (4 eps sigma T^3). Linear in scale, steeply shorter when
/// hot.
pub fn equilibration_time(
    scale: f64,
    temp: f64,
    volumetric_heat_capacity: f64,
    emissivity: f64,
) -> f64 {
    assert!(scale > 0.0 && temp > 0.0 && volumetric_heat_capacity > 0.0);
    assert!(emissivity > 0.0 && emissivity <= 1.0);
    volumetric_heat_capacity * scale / (4.0 * emissivity * CONSTANTS.stefan_boltzmann * temp.powi(3))
}

/// Equilibrium temperature of a radiator dissipating `dissipated` W over
/// `area` m^2 against an environment sink at `env_temp`.
pub fn radiative_equilibrium(dissipated: f64, area: f64, emissivity: f64, env_temp: f64) -> f64 {
    assert!(dissipated >= 0.0 && area > 0.0 && env_temp > 0.0);
    assert!(emissivity > 0.0 && emissivity <= 1.0);
    (dissipated / (emissivity * CONSTANTS.stefan_boltzmann * area) + env_temp.powi(4)).powf(0.25)
}

/// High-ambient-temperature computing style.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComputeStyle {
    /// Conventional stored-program machine in wide-bandgap III-V logic.
    GaasLike,
    /// Reflexive layered controller in SiC static logic.
    SubsumptionSic,
}

/// Dissipation model for electronics running at several hundred kelvin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighTempComputeModel {
    /// W per Mbit of memory
    pub memory_power: f64,
    /// W per block of ~`transistors_per_block` processor transistors
    pub cpu_power_per_block: f64,
    pub transistors_per_block: u64,
    /// W per logic gate, static
    pub subsumption_gate_power: f64,
    pub transistors_per_gate: u64,
}

impl Default for HighTempComputeModel {
    fn default() -> Self {
        HighTempComputeModel {
            memory_power: 1.0,
            cpu_power_per_block: 0.3,
            transistors_per_block: 5000,
            subsumption_gate_power: 0.4e-6,
            transistors_per_gate: 4,
        }
    }
}

/// Electrical dissipation of a hot-ambient computer.
pub fn venus_compute_power(
    model: &HighTempComputeModel,
    memory_bits: u64,
    transistors: u64,
    style: ComputeStyle,
) -> f64 {
    match style {
        ComputeStyle::GaasLike => {
            let memory = memory_bits as f64 / 1e6 * model.memory_power;
            let blocks = transistors.div_ceil(model.transistors_per_block);
            memory + blocks as f64 * model.cpu_power_per_block
        }
        ComputeStyle::SubsumptionSic => {
            let gates = transistors as f64 / model.transistors_per_gate as f64;
            gates * model.subsumption_gate_power
        }
    }
}

/// Ratio of thermal switching energies between two operating temperatures.
pub fn thermal_noise_power_ratio(t1: f64, t2: f64) -> f64 {
    assert!(t1 > 0.0 && t2 > 0.0);
    t1 / t2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environments::{builtin_catalog, find_environment};
    use approx::assert_relative_eq;

    fn window(name: &str) -> TechnologyTempWindow {
        technology_windows()
            .into_iter()
            .find(|w| w.name == name)
            .unwrap()
    }

    #[test]
    fn temp_gates() {
        let cat = builtin_catalog();
        let venus = find_environment(&cat, "venus").unwrap();
        let g = temp_gate(venus, &window("si_electronics"));
        assert!(!g.pass);
        assert_relative_eq!(g.margin, -160.0, max_relative = 1e-12);

        let night = find_environment(&cat, "moon night").unwrap();
        assert!(!temp_gate(night, &window("li_ion_current")).pass);

        let mars = find_environment(&cat, "mars").unwrap();
        let m = temp_gate(mars, &window("li_ion_extended"));
        assert!(!m.pass);
        assert_relative_eq!(m.margin, -3.0, max_relative = 1e-12);
        assert!(temp_gate(mars, &window("si_electronics")).pass);
    }

    #[test]
    fn equilibration_scaling() {
        let t_cm = equilibration_time(0.01, 300.0, DEFAULT_VOLUMETRIC_HEAT_CAPACITY, 1.0);
        let t_mm = equilibration_time(0.001, 300.0, DEFAULT_VOLUMETRIC_HEAT_CAPACITY, 1.0);
        assert_relative_eq!(t_cm / t_mm, 10.0, max_relative = 1e-12);
        // Closed form: 2e6 * 1e-3 / (4 * sigma * 300^3) = 326.6 s.
        assert_relative_eq!(t_mm, 326.6, max_relative = 1e-3);
        let hot = equilibration_time(0.001, 600.0, DEFAULT_VOLUMETRIC_HEAT_CAPACITY, 1.0);
        assert_relative_eq!(t_mm / hot, 8.0, max_relative = 1e-12);
    }

    #[test]
    fn equilibrium_temperature() {
        assert_relative_eq!(radiative_equilibrium(0.0, 1.0, 0.9, 210.0), 210.0);
        // mm cube, 5 mW, low emissivity in a cold sink
        let t = radiative_equilibrium(5e-3, 6e-6, 0.05, 4.0);
        assert_relative_eq!(t, 736.0, max_relative = 0.01);
        let t16 = radiative_equilibrium(16.0 * 5e-3, 6e-6, 0.05, 4.0);
        assert_relative_eq!(t16 / t, 2.0, max_relative = 1e-4);
    }

    #[test]
    fn compute_power_anchors() {
        let m = HighTempComputeModel::default();
        // Rocky III class: 0.2 Mbit memory plus ~5000 transistors.
        let rocky = venus_compute_power(&m, 200_000, 5000, ComputeStyle::GaasLike);
        assert_relative_eq!(rocky, 0.5, max_relative = 1e-12);
        let small = venus_compute_power(&m, 80_000, 5000, ComputeStyle::GaasLike);
        assert!(small >= 0.33 && small <= 0.5);
        let sub = venus_compute_power(&m, 0, 1600, ComputeStyle::SubsumptionSic);
        assert_relative_eq!(sub, 0.16e-3, max_relative = 1e-12);
        assert_eq!(venus_compute_power(&m, 0, 0, ComputeStyle::SubsumptionSic), 0.0);
        // Subsumption beats the stored-program machine for any real config.
        for tr in [100u64, 5000, 50_000] {
            assert!(
                venus_compute_power(&m, 1_000_000, tr, ComputeStyle::SubsumptionSic)
                    < venus_compute_power(&m, 1_000_000, tr, ComputeStyle::GaasLike)
            );
        }
    }

    #[test]
    fn noise_ratio() {
        assert_relative_eq!(thermal_noise_power_ratio(760.0, 300.0), 2.533, max_relative = 1e-3);
        assert_relative_eq!(thermal_noise_power_ratio(300.0, 300.0), 1.0);
        assert_relative_eq!(thermal_noise_power_ratio(30.0, 300.0), 0.1);
    }
}
