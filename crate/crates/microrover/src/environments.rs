//! Physical constants, target-body environments, and technology size floors.
//!
//! All computation elsewhere in the crate is in SI units; astronomical units,
//! days and years are converted at this boundary.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fundamental and calibration constants shared by every model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// J/K
    pub boltzmann: f64,
    /// W/(m^2 K^4)
    pub stefan_boltzmann: f64,
    /// m
    pub au: f64,
    /// s
    pub seconds_per_day: f64,
    /// s
    pub seconds_per_year: f64,
    /// W/m^2 delivered by a reference multilayer panel at 1 AU. This is a
    /// panel-output calibration, not the raw solar constant.
    pub solar_reference_panel_output: f64,
}

pub const CONSTANTS: Constants = Constants {
    boltzmann: 1.380649e-23,
    stefan_boltzmann: 5.670374419e-8,
    au: 1.495978707e11,
    seconds_per_day: 86_400.0,
    seconds_per_year: 3.156e7,
    solar_reference_panel_output: 400.0,
};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

impl Default for Constants {
    fn default() -> Self {
        CONSTANTS
    }
}

/// Trapped-particle radiation severity class of a target body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiationRegime {
    Benign,
    JovianEuropa,
    JovianIo,
}

/// A target-body surface environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Environment {
    pub name: String,
    /// AU
    pub solar_distance: f64,
    /// K
    pub surface_temp: f64,
    /// m/s^2
    pub gravity: f64,
    pub has_atmosphere: bool,
    /// Earth sea level = 1
    #[serde(default)]
    pub atmosphere_rel_density: f64,
    /// K seen by the orbiter receive antenna; defaults to surface_temp.
    #[serde(default)]
    pub link_background_temp: Option<f64>,
    pub radiation_regime: RadiationRegime,
    /// m; rover-to-orbiter slant range. 1e7 for large bodies, 2e6 for
    /// ~1000 km class moons.
    #[serde(default = "default_orbiter_range")]
    pub orbiter_range: f64,
}

fn default_orbiter_range() -> f64 {
    1.0e7
}

impl Environment {
    /// Background temperature used in link budgets.
    pub fn link_temp(&self) -> f64 {
        self.link_background_temp.unwrap_or(self.surface_temp)
    }

    /// Dense atmospheres absorb strongly above 20 GHz; surface links there
    /// are capped. The threshold of 10x Earth density singles out thick
    /// greenhouse atmospheres without naming bodies.
    pub fn max_link_frequency(&self) -> Option<f64> {
        if self.has_atmosphere && self.atmosphere_rel_density >= 10.0 {
            Some(2.0e10)
        } else {
            None
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |field: &str, reason: String| {
            Err(Error::Invalid {
                field: format!("{} ({})", field, self.name),
                reason,
            })
        };
        if !(self.solar_distance > 0.0) {
            return fail("solar_distance", format!("must be > 0, got {}", self.solar_distance));
        }
        if !(10.0..=800.0).contains(&self.surface_temp) {
            return fail(
                "surface_temp",
                format!("must be within [10, 800] K, got {}", self.surface_temp),
            );
        }
        if !(self.gravity > 0.0) {
            return fail("gravity", format!("must be > 0, got {}", self.gravity));
        }
        if let Some(t) = self.link_background_temp {
            if !(t > 0.0) {
                return fail("link_background_temp", format!("must be > 0, got {t}"));
            }
        }
        if !(self.orbiter_range > 0.0) {
            return fail("orbiter_range", format!("must be > 0, got {}", self.orbiter_range));
        }
        if self.atmosphere_rel_density < 0.0 {
            return fail(
                "atmosphere_rel_density",
                format!("must be >= 0, got {}", self.atmosphere_rel_density),
            );
        }
        Ok(())
    }
}

fn env(
    name: &str,
    solar_distance: f64,
    surface_temp: f64,
    gravity: f64,
    atmosphere: Option<f64>,
    radiation_regime: RadiationRegime,
    orbiter_range: f64,
) -> Environment {
    Environment {
        name: name.to_string(),
        solar_distance,
        surface_temp,
        gravity,
        has_atmosphere: atmosphere.is_some(),
        atmosphere_rel_density: atmosphere.unwrap_or(0.0),
        link_background_temp: None,
        radiation_regime,
        orbiter_range,
    }
}

/// Built-in catalog of exploration targets.
pub fn builtin_catalog() -> Vec<Environment> {
    use RadiationRegime::*;
    vec![
        env("Moon dayside", 1.0, 393.0, 1.62, None, Benign, 1.0e7),
        env("Moon night", 1.0, 100.0, 1.62, None, Benign, 1.0e7),
        env("Mars", 1.52, 210.0, 3.71, Some(0.006), Benign, 1.0e7),
        // Mean-elevation surface temperature 733 K (460 C); dense CO2
        // atmosphere at ~90x Earth density caps surface links at 20 GHz.
        env("Venus", 0.72, 733.0, 8.87, Some(90.0), Benign, 1.0e7),
        env("Mercury dayside", 0.39, 753.0, 3.70, None, Benign, 1.0e7),
        env("Europa", 5.2, 100.0, 1.31, None, JovianEuropa, 2.0e6),
        env("Io", 5.2, 110.0, 1.80, None, JovianIo, 2.0e6),
        env("Pluto", 40.0, 40.0, 0.62, None, Benign, 1.0e7),
        // Near-perihelion distance; noon temperature around 30 K.
        env("Sedna", 90.0, 30.0, 0.27, None, Benign, 1.0e7),
    ]
}

/// Look up a catalog entry by case-insensitive name.
pub fn find_environment<'a>(catalog: &'a [Environment], name: &str) -> Option<&'a Environment> {
    let want = name.to_ascii_lowercase().replace(['_', '-'], " ");
    catalog
        .iter()
        .find(|e| e.name.to_ascii_lowercase() == want)
}

/// Load and validate a JSON catalog (an array of environment objects; see
/// schema/environment_catalog.schema.json).
pub fn load_catalog(path: &Path) -> Result<Vec<Environment>> {
    let text = std::fs::read_to_string(path)?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Vec<Environment>> {
    let envs: Vec<Environment> = serde_json::from_str(text)?;
    for e in &envs {
        e.validate()?;
    }
    Ok(envs)
}

/// A minimum feasible scale for one technology, as a (low, high) range in
/// metres with an explanatory note. Point floors have low == high.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechnologyFloor {
    pub name: &'static str,
    /// m
    pub low: f64,
    /// m
    pub high: f64,
    pub note: &'static str,
}

/// Minimum device scales for sensor, power and support technologies.
pub fn technology_floors() -> Vec<TechnologyFloor> {
    let f = |name, low, high, note| TechnologyFloor { name, low, high, note };
    vec![
        f("uv_imaging", 30e-6, 30e-6, "diffraction"),
        f("optical_imaging", 0.175e-3, 0.175e-3, "diffraction"),
        f("ir_imaging_sub3um", 0.75e-3, 0.75e-3, "diffraction"),
        f("ir_spectroscopy_sub3um", 2.4e-3, 2.4e-3, "diffraction"),
        f("apx", 2e-3, 4e-3, "source shielding; 3 mm nominal"),
        f("qcl", 3e-3, 3e-3, "laser length"),
        f("gamma_minimal", 5e-3, 5e-3, "major silicate elements, 1 g detector"),
        f("raman", 8e-3, 8e-3, "laser power and diffraction"),
        f("ir_spectroscopy_10_20um", 8e-3, 16e-3, "diffraction"),
        f("gamma_efficient", 12e-3, 12e-3, "15 g class detector"),
        f("libs", 100e-3, 100e-3, "high pulsed power"),
        f("mass_spectrometry", 100e-3, 100e-3, "beam optics and detector array"),
        f("rtg_current", 20e-3, 20e-3, "thermal gradient maintenance"),
        f("rtg_vacuum", 2e-3, 4e-3, "K-alpha shielding"),
        f("betavoltaic", 1e-6, 1e-6, "beta absorption depth"),
        f("communication", 1e-3, 1e-3, "receiver thermal expansion"),
        f("computation", 0.2e-3, 0.2e-3, "memory areal density"),
        f("abrasion", 2e-3, 2e-3, "power at 1 AU"),
    ]
}

/// Nominal floor value used by the feasibility solver (low end of a range,
/// except APX where the stored nominal is 3 mm).
pub fn floor_scale(name: &str) -> Option<f64> {
    if name == "apx" {
        return Some(3e-3);
    }
    technology_floors().iter().find(|t| t.name == name).map(|t| t.low)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_satisfies_invariants() {
        let cat = builtin_catalog();
        assert!(cat.len() >= 9);
        for e in &cat {
            e.validate().unwrap();
        }
    }

    #[test]
    fn builtin_lookups() {
        let cat = builtin_catalog();
        assert_eq!(find_environment(&cat, "Moon dayside").unwrap().surface_temp, 393.0);
        let sedna = find_environment(&cat, "sedna").unwrap();
        assert_eq!(sedna.solar_distance, 90.0);
        assert_eq!(sedna.surface_temp, 30.0);
        assert_eq!(
            find_environment(&cat, "europa").unwrap().radiation_regime,
            RadiationRegime::JovianEuropa
        );
        assert_eq!(find_environment(&cat, "europa").unwrap().orbiter_range, 2.0e6);
    }

    #[test]
    fn catalog_round_trip_is_lossless() {
        let cat = builtin_catalog();
        let json = serde_json::to_string_pretty(&cat).unwrap();
        let back = parse_catalog(&json).unwrap();
        assert_eq!(cat, back);
    }

    #[test]
    fn parse_applies_defaults() {
        let text = r#"[{"name":"Venus","solar_distance":0.72,"surface_temp":733.0,
            "gravity":8.87,"has_atmosphere":true,"atmosphere_rel_density":90.0,
            "radiation_regime":"benign"}]"#;
        let cat = parse_catalog(text).unwrap();
        assert_eq!(cat[0].link_temp(), 733.0);
        assert_eq!(cat[0].orbiter_range, 1.0e7);
        assert_eq!(cat[0].max_link_frequency(), Some(2.0e10));
    }

    #[test]
    fn parse_rejects_bad_fields() {
        let empty = parse_catalog("[]").unwrap();
        assert!(empty.is_empty());

        let bad = r#"[{"name":"X","solar_distance":-1.0,"surface_temp":300.0,
            "gravity":1.0,"has_atmosphere":false,"radiation_regime":"benign"}]"#;
        let err = parse_catalog(bad).unwrap_err().to_string();
        assert!(err.contains("solar_distance"), "{err}");

        let unknown = r#"[{"name":"X","solar_distance":1.0,"surface_temp":300.0,
            "gravity":1.0,"has_atmosphere":false,"radiation_regime":"benign",
            "bogus_key":1}]"#;
        assert!(parse_catalog(unknown).is_err());
    }

    #[test]
    fn floors_are_positive_ordered_ranges() {
        for t in technology_floors() {
            assert!(t.low > 0.0 && t.low <= t.high, "{}", t.name);
        }
        assert_eq!(floor_scale("raman"), Some(8e-3));
        assert_eq!(floor_scale("apx"), Some(3e-3));
    }

    #[test]
    fn constants_sanity() {
        let c = Constants::default();
        assert!((c.seconds_per_year - 3.156e7).abs() / 3.156e7 < 0.002);
        assert!(c.boltzmann > 0.0 && c.stefan_boltzmann > 0.0 && c.au > 0.0);
    }
}
