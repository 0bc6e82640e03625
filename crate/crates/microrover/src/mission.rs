//! Orbiter sizing versus Earth distance, ion-drive delta-V, landing
//! propellant, and whole-campaign mass rollups.

use serde::{Deserialize, Serialize};

use crate::environments::CONSTANTS;
use crate::error::{Error, Result};

pub const STANDARD_GRAVITY: f64 = 9.81;

/// Relay-orbiter mass model: fixed dishes and subsystems plus a power
/// system sized for the downlink back to Earth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbiterModel {
    /// m
    pub dish_diameter: f64,
    /// kg each
    pub dish_mass: f64,
    pub n_dishes: u32,
    /// kg
    pub subsystem_mass: f64,
    /// kg/m^2
    pub panel_mass_per_area: f64,
    /// W/kg
    pub rtg_specific_power: f64,
    /// bit/s per electrical watt on the Earth link at 1 AU
    pub rate_per_watt_at_1au: f64,
    /// bit/s delivered to Earth
    pub required_rate: f64,
    pub margin: f64,
}

impl Default for OrbiterModel {
    fn default() -> Self {
        OrbiterModel {
            dish_diameter: 1.0,
            dish_mass: 1.0,
            n_dishes: 2,
            subsystem_mass: 1.0,
            panel_mass_per_area: 1.0,
            rtg_specific_power: 5.0,
            rate_per_watt_at_1au: 25_000.0,
            required_rate: 100.0,
            margin: 1.3,
        }
    }
}

impl OrbiterModel {
    pub fn validate(&self) {
        assert!(self.dish_diameter > 0.0 && self.dish_mass > 0.0 && self.n_dishes > 0);
        assert!(self.subsystem_mass > 0.0 && self.panel_mass_per_area > 0.0);
        assert!(self.rtg_specific_power > 0.0 && self.rate_per_watt_at_1au > 0.0);
        assert!(self.required_rate > 0.0 && self.margin >= 1.0);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbiterPowerKind {
    Solar,
    Rtg,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbiterMass {
    /// W on the Earth link
    pub link_power: f64,
    /// kg
    pub dish_mass: f64,
    /// kg
    pub subsystem_mass: f64,
    /// kg; floored at 1 kg
    pub power_mass: f64,
    /// kg, with margin applied
    pub total: f64,
}

/// Orbiter mass at an Earth distance. Link power grows as d^2; a solar
/// panel pays another d^2 in area, an isotope generator does not.
pub fn orbiter_mass(model: &OrbiterModel, earth_distance_au: f64, power: OrbiterPowerKind) -> OrbiterMass {
    model.validate();
    assert!(earth_distance_au > 0.0, "distance must be positive");
    let d2 = earth_distance_au * earth_distance_au;
    let link_power = model.required_rate / model.rate_per_watt_at_1au * d2;
    let power_mass = match power {
        OrbiterPowerKind::Solar => {
            let area = link_power * d2 / CONSTANTS.solar_reference_panel_output;
            (area * model.panel_mass_per_area).max(1.0)
        }
        OrbiterPowerKind::Rtg => (link_power / model.rtg_specific_power).max(1.0),
    };
    let dish_mass = model.n_dishes as f64 * model.dish_mass;
    OrbiterMass {
        link_power,
        dish_mass,
        subsystem_mass: model.subsystem_mass,
        power_mass,
        total: (dish_mass + model.subsystem_mass + power_mass) * model.margin,
    }
}

/// Delta-V accumulated in one year of continuous low-thrust operation:
/// thrust = 2 eta P / v_e.
pub fn ion_delta_v_per_year(
    electrical: f64,
    total_mass: f64,
    thruster_efficiency: f64,
    exhaust_velocity: f64,
) -> f64 {
    assert!(electrical > 0.0 && total_mass > 0.0);
    assert!(thruster_efficiency > 0.0 && thruster_efficiency <= 1.0);
    assert!(exhaust_velocity > 0.0);
    let accel = 2.0 * thruster_efficiency * electrical / (exhaust_velocity * total_mass);
    accel * CONSTANTS.seconds_per_year
}

/// Propellant to give `delivered` kg a chemical delta-V at a specific
/// impulse (rocket equation, inverted for propellant mass).
pub fn landing_propellant(delivered: f64, delta_v: f64, isp_s: f64) -> f64 {
    assert!(delivered > 0.0 && delta_v >= 0.0 && isp_s > 0.0);
    delivered * ((delta_v / (STANDARD_GRAVITY * isp_s)).exp() - 1.0)
}

/// One target of a multi-body campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignTarget {
    pub name: String,
    pub earth_distance_au: f64,
    #[serde(default)]
    pub has_atmosphere: bool,
    pub n_rovers: u32,
    /// kg each
    pub rover_mass: f64,
    /// kg each; historically comparable to the rover it delivers
    pub lander_mass: f64,
    pub orbiter_power: OrbiterPowerKind,
}

impl CampaignTarget {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: &str| {
            Err(Error::Invalid {
                field: format!("target {}: {}", self.name, field),
                reason: reason.to_string(),
            })
        };
        if self.earth_distance_au <= 0.0 {
            return bad("earth_distance_au", "must be positive");
        }
        if self.rover_mass < 0.0 || self.lander_mass < 0.0 {
            return bad("rover_mass/lander_mass", "must be non-negative");
        }
        Ok(())
    }

    /// Mass delivered toward the target: orbiter plus the rover/lander
    /// stacks, with an aeroshell equal to lander + rover where there is an
    /// atmosphere to enter.
    pub fn delivered_mass(&self, orbiter: &OrbiterModel) -> f64 {
        let per_stack = {
            let base = self.rover_mass + self.lander_mass;
            if self.has_atmosphere {
                2.0 * base
            } else {
                base
            }
        };
        orbiter_mass(orbiter, self.earth_distance_au, self.orbiter_power).total
            + self.n_rovers as f64 * per_stack
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetMass {
    pub name: String,
    /// kg injected toward the target
    pub delivered: f64,
    /// kg in low Earth orbit, including propellant
    pub at_leo: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignMass {
    pub per_target: Vec<TargetMass>,
    /// kg
    pub total_leo: f64,
}

/// Roll a campaign up to low-Earth-orbit mass with a single-delta-V rocket
/// equation factor per target.
pub fn campaign_mass(
    targets: &[CampaignTarget],
    orbiter: &OrbiterModel,
    avg_delta_v: f64,
    isp_s: f64,
) -> Result<CampaignMass> {
    if targets.is_empty() {
        return Err(Error::Invalid {
            field: "targets".to_string(),
            reason: "campaign must name at least one target".to_string(),
        });
    }
    assert!(avg_delta_v >= 0.0 && isp_s > 0.0);
    let factor = (avg_delta_v / (STANDARD_GRAVITY * isp_s)).exp();
    let mut per_target = Vec::with_capacity(targets.len());
    let mut total = 0.0;
    for t in targets {
        t.validate()?;
        let delivered = t.delivered_mass(orbiter);
        let at_leo = delivered * factor;
        total += at_leo;
        per_target.push(TargetMass {
            name: t.name.clone(),
            delivered,
            at_leo,
        });
    }
    Ok(CampaignMass {
        per_target,
        total_leo: total,
    })
}

/// Default outer-system survey: twenty targets, fifty 10 g rovers each.
pub fn builtin_campaign() -> Vec<CampaignTarget> {
    let mk = |name: &str, d: f64, atm: bool| {
        let orbiter_power = if d <= 10.0 {
            OrbiterPowerKind::Solar
        } else {
            OrbiterPowerKind::Rtg
        };
        CampaignTarget {
            name: name.to_string(),
            earth_distance_au: d,
            has_atmosphere: atm,
            n_rovers: 50,
            rover_mass: 0.01,
            lander_mass: 0.01,
            orbiter_power,
        }
    };
    vec![
        mk("moon", 1.0, false),
        mk("mercury", 1.0, false),
        mk("venus", 1.0, true),
        mk("mars", 1.5, true),
        mk("phobos", 1.5, false),
        mk("ceres", 2.8, false),
        mk("vesta", 2.4, false),
        mk("io", 5.2, false),
        mk("europa", 5.2, false),
        mk("ganymede", 5.2, false),
        mk("callisto", 5.2, false),
        mk("enceladus", 9.5, false),
        mk("titan", 9.5, true),
        mk("iapetus", 9.5, false),
        mk("ariel", 19.2, false),
        mk("titania", 19.2, false),
        mk("triton", 30.0, true),
        mk("pluto", 40.0, false),
        mk("charon", 40.0, false),
        mk("sedna", 90.0, false),
    ]
}

/// Parse campaign targets from JSON.
pub fn parse_campaign(json: &str) -> Result<Vec<CampaignTarget>> {
    let targets: Vec<CampaignTarget> = serde_json::from_str(json)?;
    for t in &targets {
        t.validate()?;
    }
    Ok(targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn orbiter_anchors() {
        let m = OrbiterModel::default();
        let near = orbiter_mass(&m, 1.0, OrbiterPowerKind::Solar);
        assert_relative_eq!(near.total, 5.2, max_relative = 1e-9);
        assert_relative_eq!(near.power_mass, 1.0);

        // Flat out to 10 AU on solar: the panel floor still binds.
        for d in [2.0, 5.0, 10.0] {
            let o = orbiter_mass(&m, d, OrbiterPowerKind::Solar);
            assert!(o.total >= 4.0 && o.total <= 5.5, "{d} AU: {}", o.total);
        }

        let far = orbiter_mass(&m, 500.0, OrbiterPowerKind::Rtg);
        assert!(far.total >= 200.0 && far.total <= 450.0, "{}", far.total);
        assert_relative_eq!(far.link_power, 1000.0, max_relative = 1e-9);

        // Solar pays d^4 overall, isotope d^2: the ratio diverges.
        let r40 = orbiter_mass(&m, 40.0, OrbiterPowerKind::Solar).total
            / orbiter_mass(&m, 40.0, OrbiterPowerKind::Rtg).total;
        let r100 = orbiter_mass(&m, 100.0, OrbiterPowerKind::Solar).total
            / orbiter_mass(&m, 100.0, OrbiterPowerKind::Rtg).total;
        assert!(r100 > r40 && r40 > 1.0);

        let tiny = orbiter_mass(&m, 1e-3, OrbiterPowerKind::Solar);
        assert_relative_eq!(tiny.power_mass, 1.0);
    }

    #[test]
    fn ion_drive() {
        let dv = ion_delta_v_per_year(5.0, 4.0, 0.5, 5e4);
        assert_relative_eq!(dv, 789.0, max_relative = 0.01);
        assert_relative_eq!(ion_delta_v_per_year(10.0, 4.0, 0.5, 5e4), 2.0 * dv);
        let big = ion_delta_v_per_year(100.0, 4.0, 0.5, 5e4);
        assert!(big > 5000.0); // consistent with multi-km/s annual budgets
    }

    #[test]
    fn propellant_anchors() {
        assert_eq!(landing_propellant(1.0, 0.0, 300.0), 0.0);
        let half = landing_propellant(1.0, STANDARD_GRAVITY * 300.0 * 2.0f64.ln(), 300.0);
        assert_relative_eq!(half, 1.0, max_relative = 1e-12);
        assert_relative_eq!(landing_propellant(1.0, 2000.0, 300.0), 0.974, max_relative = 1e-3);
        // Convex increasing in delta-V.
        let a = landing_propellant(1.0, 1000.0, 300.0);
        let b = landing_propellant(1.0, 2000.0, 300.0);
        let c = landing_propellant(1.0, 3000.0, 300.0);
        assert!(b - a < c - b);
    }

    #[test]
    fn campaign_anchors() {
        let orbiter = OrbiterModel::default();
        let targets = builtin_campaign();
        assert_eq!(targets.len(), 20);
        let roll = campaign_mass(&targets, &orbiter, 13_000.0, 350.0).unwrap();
        assert!(
            roll.total_leo > 1e4 / 3.0 && roll.total_leo < 3.0 * 1e4,
            "{}",
            roll.total_leo
        );

        // Single airless target: order 1e1-1e2 kg.
        let one = campaign_mass(&targets[..1], &orbiter, 13_000.0, 350.0).unwrap();
        assert!(one.total_leo > 10.0 && one.total_leo < 1000.0, "{}", one.total_leo);

        // Orbiter-only target at 1 AU: 5.2 kg times the rocket factor.
        let empty = CampaignTarget {
            n_rovers: 0,
            ..targets[0].clone()
        };
        let factor = (13_000.0f64 / (STANDARD_GRAVITY * 350.0)).exp();
        let solo = campaign_mass(&[empty], &orbiter, 13_000.0, 350.0).unwrap();
        assert_relative_eq!(solo.total_leo, 5.2 * factor, max_relative = 1e-9);

        assert!(campaign_mass(&[], &orbiter, 13_000.0, 350.0).is_err());
    }

    #[test]
    fn campaign_round_trip() {
        let targets = builtin_campaign();
        let json = serde_json::to_string(&targets).unwrap();
        assert_eq!(parse_campaign(&json).unwrap(), targets);
        assert!(parse_campaign("[{\"name\":\"x\"}]").is_err());
    }
}
