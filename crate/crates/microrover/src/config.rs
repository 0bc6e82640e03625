//! Runtime configuration: every physical default the CLI exposes, loadable
//! from a JSON file. Missing fields fall back to builtins, so a partial
//! config is valid; serialization round-trips losslessly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mission::OrbiterModel;
use crate::power::RoverDesign;

fn d_snr() -> f64 {
    2.0
}
fn d_frequency() -> f64 {
    300e9
}
fn d_rx_dish() -> f64 {
    1.0
}
fn d_range() -> f64 {
    1e7
}
fn d_background() -> f64 {
    300.0
}
fn d_tx_diameter() -> f64 {
    0.01
}
fn d_rf_power() -> f64 {
    1e-3
}
fn d_area() -> f64 {
    1.0
}
fn d_hours() -> f64 {
    24.0
}
fn d_bulk_density() -> f64 {
    1000.0
}
fn d_store_fraction() -> f64 {
    0.5
}
fn d_power_fraction() -> f64 {
    0.5
}
fn d_delta_v() -> f64 {
    13_000.0
}
fn d_isp() -> f64 {
    350.0
}
fn d_mission_days() -> f64 {
    1000.0
}
fn d_dose_limit() -> f64 {
    1e6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// Link signal-to-noise ratio.
    pub snr: f64,
    /// Hz, surface-to-orbiter carrier.
    pub frequency: f64,
    /// m, orbiter receive dish.
    pub rx_dish_diameter: f64,
    /// m, surface-to-orbiter range.
    pub range: f64,
    /// K, receiver background.
    pub background_temp: f64,
    /// m, rover dish for the reference link table.
    pub tx_diameter: f64,
    /// W radiated, reference link table.
    pub rf_power: f64,
    /// cm^2, gamma detector.
    pub detector_area_cm2: f64,
    /// h, gamma integration.
    pub integration_hours: f64,
    /// kg/m^3
    pub bulk_density: f64,
    pub store_mass_fraction: f64,
    pub power_volume_fraction: f64,
    /// m/s, campaign average.
    pub avg_delta_v: f64,
    /// s
    pub isp_s: f64,
    /// days, shield sizing.
    pub mission_days: f64,
    /// Gy, electronics lifetime dose.
    pub dose_limit: f64,
    pub orbiter: OrbiterModel,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            snr: d_snr(),
            frequency: d_frequency(),
            rx_dish_diameter: d_rx_dish(),
            range: d_range(),
            background_temp: d_background(),
            tx_diameter: d_tx_diameter(),
            rf_power: d_rf_power(),
            detector_area_cm2: d_area(),
            integration_hours: d_hours(),
            bulk_density: d_bulk_density(),
            store_mass_fraction: d_store_fraction(),
            power_volume_fraction: d_power_fraction(),
            avg_delta_v: d_delta_v(),
            isp_s: d_isp(),
            mission_days: d_mission_days(),
            dose_limit: d_dose_limit(),
            orbiter: OrbiterModel::default(),
        }
    }
}

impl Params {
    /// Rover design template at a scale, honoring the configured fractions.
    pub fn design(&self, scale: f64) -> RoverDesign {
        RoverDesign {
            scale,
            bulk_density: self.bulk_density,
            store_mass_fraction: self.store_mass_fraction,
            power_volume_fraction: self.power_volume_fraction,
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("params serialize")
    }
}
