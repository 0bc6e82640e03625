//! Trapped-radiation-belt dose rates versus shielding, time to a dose
//! limit, shield sizing, and shielding mass.

use serde::{Deserialize, Serialize};

use crate::environments::RadiationRegime;
use crate::error::{Error, Result};
use crate::interp;
use crate::power::RoverDesign;

/// Shield material class: light (water-equivalent) or high-Z, the latter
/// treated as an areal-density multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShieldMaterial {
    WaterEquiv,
    HighZ,
}

/// Dose-versus-shielding curve for a trapped-belt environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoseCurve {
    pub regime: RadiationRegime,
    /// (areal density g/cm^2, Gy per 30 days) knots, sorted by density.
    pub knots: Vec<(f64, f64)>,
    /// Dose multiplier for the inner-moon regime.
    pub io_multiplier: f64,
    /// Stopping-power advantage of dense shielding, as an areal-density factor.
    pub high_z_equivalence: f64,
}

impl DoseCurve {
    /// Curve for a regime, or None where there is no trapped belt.
    pub fn for_regime(regime: RadiationRegime) -> Option<Self> {
        match regime {
            RadiationRegime::Benign => None,
            RadiationRegime::JovianEuropa | RadiationRegime::JovianIo => Some(DoseCurve {
                regime,
                knots: vec![(0.1, 2e4), (1.0, 3e3), (10.0, 80.0)],
                io_multiplier: 10.0,
                high_z_equivalence: 10.0,
            }),
        }
    }

    pub fn validate(&self) {
        assert!(
            self.knots.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1),
            "dose knots must be sorted with strictly decreasing dose"
        );
        assert!(self.io_multiplier > 0.0 && self.high_z_equivalence >= 1.0);
    }

    fn regime_factor(&self) -> f64 {
        match self.regime {
            RadiationRegime::JovianIo => self.io_multiplier,
            _ => 1.0,
        }
    }

    /// Water-equivalent areal density of a shield.
    pub fn water_equivalent(&self, shield: f64, material: ShieldMaterial) -> f64 {
        match material {
            ShieldMaterial::WaterEquiv => shield,
            ShieldMaterial::HighZ => shield * self.high_z_equivalence,
        }
    }
}

/// Gy/day behind a shield.
pub fn dose_rate(curve: &DoseCurve, shield: f64, material: ShieldMaterial) -> Result<f64> {
    curve.validate();
    let weq = curve.water_equivalent(shield, material);
    let per_30d = interp::log_log("shield areal density", &curve.knots, weq)?;
    Ok(per_30d * curve.regime_factor() / 30.0)
}

/// Days until the accumulated dose reaches `limit` Gy.
pub fn time_to_dose(curve: &DoseCurve, shield: f64, material: ShieldMaterial, limit: f64) -> Result<f64> {
    assert!(limit > 0.0, "dose limit must be positive");
    Ok(limit / dose_rate(curve, shield, material)?)
}

/// Shield mass over the full six-face surface of a cube rover.
pub fn rover_shielding_mass(design: &RoverDesign, shield: f64) -> f64 {
    shielding_mass(6.0 * design.scale * design.scale, shield)
}

/// Shield mass over a given area; `shield` is areal density in g/cm^2
/// (equal to 10 kg/m^2).
pub fn shielding_mass(area: f64, shield: f64) -> f64 {
    assert!(area > 0.0 && shield >= 0.0);
    shield * 10.0 * area
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShieldRequirement {
    /// g/cm^2 water-equivalent
    pub areal_density: f64,
    /// True when even the thinnest tabulated shield already survives the
    /// mission and the result was clamped to that thinnest knot.
    pub clamped_to_min: bool,
}

/// Smallest water-equivalent shield letting a mission of `mission_days`
/// stay under `limit` Gy. Solved by bisection on the tabulated curve.
pub fn mission_shield_requirement(
    curve: &DoseCurve,
    mission_days: f64,
    limit: f64,
) -> Result<ShieldRequirement> {
    assert!(mission_days > 0.0 && limit > 0.0);
    curve.validate();
    let lo = curve.knots.first().unwrap().0;
    let hi = curve.knots.last().unwrap().0;
    let survives = |s: f64| {
        time_to_dose(curve, s, ShieldMaterial::WaterEquiv, limit)
            .map(|t| t >= mission_days)
            .unwrap_or(false)
    };
    if survives(lo) {
        return Ok(ShieldRequirement {
            areal_density: lo,
            clamped_to_min: true,
        });
    }
    match interp::bisect_min_feasible(lo, hi, 1e-6, survives) {
        Some(s) => Ok(ShieldRequirement {
            areal_density: s,
            clamped_to_min: false,
        }),
        None => Err(Error::OutOfDomain {
            quantity: "mission shield requirement",
            value: mission_days,
            min: lo,
            max: hi,
        }),
    }
}
