//! Traverse energetics, nominal speed, annual range, and jump height.

use serde::{Deserialize, Serialize};

use crate::environments::CONSTANTS;
use crate::power::RoverDesign;

/// Constant cost-of-transport model: terrain and gait complexities collapse
/// into a single specific energy per kilogram-metre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocomotionModel {
    /// J/(kg*m)
    pub specific_energy: f64,
    /// rover lengths per second
    pub speed_in_lengths: f64,
    /// J/kg of the jump spring material
    pub jump_spring_energy: f64,
    /// fraction of rover mass that is spring
    pub spring_mass_fraction: f64,
}

impl Default for LocomotionModel {
    fn default() -> Self {
        LocomotionModel {
            specific_energy: 1.0,
            speed_in_lengths: 0.1,
            jump_spring_energy: 25.0,
            spring_mass_fraction: 1.0,
        }
    }
}

impl LocomotionModel {
    pub fn validate(&self) {
        assert!(self.specific_energy > 0.0, "specific_energy must be positive");
        assert!(self.speed_in_lengths > 0.0, "speed_in_lengths must be positive");
        assert!(self.jump_spring_energy > 0.0, "jump_spring_energy must be positive");
        assert!(self.spring_mass_fraction > 0.0, "spring_mass_fraction must be positive");
    }
}

/// m/s at the nominal lengths-per-second pace.
pub fn nominal_speed(design: &RoverDesign, model: &LocomotionModel) -> f64 {
    model.validate();
    model.speed_in_lengths * design.scale
}

/// Power to sustain an arbitrary ground speed: mass * specific energy * v.
pub fn traverse_power_at_speed(design: &RoverDesign, model: &LocomotionModel, speed: f64) -> f64 {
    design.validate();
    model.validate();
    assert!(speed >= 0.0, "speed must be non-negative");
    design.mass() * model.specific_energy * speed
}

/// Power at the nominal speed; scales as L^4 at fixed bulk density.
pub fn traverse_power(design: &RoverDesign, model: &LocomotionModel) -> f64 {
    traverse_power_at_speed(design, model, nominal_speed(design, model))
}

/// Ground covered in a year of continuous driving at the nominal speed.
pub fn annual_range(design: &RoverDesign, model: &LocomotionModel) -> f64 {
    nominal_speed(design, model) * CONSTANTS.seconds_per_year
}

/// Ballistic jump height from a fully wound spring: all stored energy goes
/// to lifting the whole rover, so h is scale-free and inverse in gravity.
pub fn jump_height(model: &LocomotionModel, gravity: f64) -> f64 {
    model.validate();
    assert!(gravity > 0.0, "gravity must be positive");
    model.jump_spring_energy * model.spring_mass_fraction / gravity
}
