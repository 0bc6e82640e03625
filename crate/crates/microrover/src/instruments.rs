//! Non-gamma instrument sizing and energy/time models: diffraction-limited
//! optics, spectrometers, alpha-X-ray analysis, laser spectroscopy,
//! abrasion, star tracking, and landing guidance compute budgets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A framing camera described by its sampling requirement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalSystem {
    pub pixels_across: u32,
    /// m
    pub wavelength: f64,
    /// degrees
    pub field_of_view: f64,
}

impl OpticalSystem {
    pub fn new(wavelength: f64) -> Self {
        OpticalSystem {
            pixels_across: 250,
            wavelength,
            field_of_view: 90.0,
        }
    }

    pub fn validate(&self) {
        assert!(self.pixels_across >= 1, "need at least one pixel");
        assert!(self.wavelength > 0.0, "wavelength must be positive");
        assert!(
            self.field_of_view > 0.0 && self.field_of_view <= 180.0,
            "field of view must be in (0, 180] degrees"
        );
    }
}

/// Diffraction-limited aperture: the lens must resolve one pixel's worth of
/// angle, D = 1.22 lambda / (fov / pixels).
pub fn min_aperture(sys: &OpticalSystem) -> f64 {
    sys.validate();
    let pixel_angle = sys.field_of_view.to_radians() / sys.pixels_across as f64;
    1.22 * sys.wavelength / pixel_angle
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrometerKind {
    Simple,
    Raman,
}

/// Dispersive spectrometer length floor: ~8 wavelengths of optical path per
/// resolved channel; a Raman instrument needs 10x that at its laser line.
pub fn spectrometer_min_size(wavelength: f64, channels: u32, kind: SpectrometerKind) -> f64 {
    assert!(wavelength > 0.0 && channels >= 1);
    let simple = 8.0 * channels as f64 * wavelength;
    match kind {
        SpectrometerKind::Simple => simple,
        SpectrometerKind::Raman => 10.0 * simple,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstrumentKind {
    Apx,
    Raman,
    QclIr,
    IrSpectrometer,
    Abrasion,
}

/// Time/energy model for one analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstrumentModel {
    pub kind: InstrumentKind,
    /// s, at `reference_scale` (geometry-limited kinds)
    pub reference_time: f64,
    /// m
    pub reference_scale: f64,
    pub scaling_exponent: f64,
    /// J electrical per analysis (energy-limited kinds)
    pub energy_per_analysis: f64,
    /// W; lasers will not lase below threshold
    pub min_power: f64,
}

impl InstrumentModel {
    /// Alpha-X-ray analysis: count rate falls as the source-sample solid
    /// angle shrinks, time rises as L^2 from 15 min on a 20 mm unit.
    pub fn apx() -> Self {
        InstrumentModel {
            kind: InstrumentKind::Apx,
            reference_time: 900.0,
            reference_scale: 0.02,
            scaling_exponent: 2.0,
            energy_per_analysis: 0.0,
            min_power: 0.0,
        }
    }

    /// Raman: 0.1 J of optical excitation at 10% laser efficiency.
    pub fn raman() -> Self {
        InstrumentModel {
            kind: InstrumentKind::Raman,
            reference_time: 0.0,
            reference_scale: 0.0,
            scaling_exponent: 0.0,
            energy_per_analysis: 1.08,
            min_power: 0.3e-3,
        }
    }

    /// Quantum-cascade laser IR scan: 100 bands over an hour at 10 uW
    /// average; peak lasing power comes from pulse storage, so there is no
    /// average-power threshold.
    pub fn qcl_ir() -> Self {
        InstrumentModel {
            kind: InstrumentKind::QclIr,
            reference_time: 0.0,
            reference_scale: 0.0,
            scaling_exponent: 0.0,
            energy_per_analysis: 10e-6 * 3600.0,
            min_power: 0.0,
        }
    }

    /// Grinding a 5 x 5 x 2 mm patch at 0.1 J/mm^3.
    pub fn abrasion() -> Self {
        InstrumentModel {
            kind: InstrumentKind::Abrasion,
            reference_time: 0.0,
            reference_scale: 0.0,
            scaling_exponent: 0.0,
            energy_per_analysis: 50.0 * 0.1,
            min_power: 0.0,
        }
    }
}

/// Seconds for one analysis at a rover scale and available power.
pub fn analysis_time(model: &InstrumentModel, scale: f64, available_power: f64) -> Result<f64> {
    assert!(scale > 0.0 && available_power > 0.0);
    match model.kind {
        InstrumentKind::Apx => {
            Ok(model.reference_time * (scale / model.reference_scale).powf(model.scaling_exponent))
        }
        _ => {
            if available_power < model.min_power {
                return Err(Error::Invalid {
                    field: "available_power".to_string(),
                    reason: format!(
                        "{:.2e} W is below the {:.2e} W operating threshold",
                        available_power, model.min_power
                    ),
                });
            }
            Ok(model.energy_per_analysis / available_power)
        }
    }
}

/// Pulsed-laser duty via a storage capacitor: true when `capacitor_mass` kg
/// at `specific_energy` J/kg covers one pulse of `pulse_energy` J.
pub fn pulse_storage_feasible(capacitor_mass: f64, specific_energy: f64, pulse_energy: f64) -> bool {
    capacitor_mass * specific_energy >= pulse_energy
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarTrackerBudget {
    /// photons/s collected from a guide star
    pub signal: f64,
    /// over one second of integration
    pub snr: f64,
}

/// Photon budget of a tiny star tracker staring at bright guide stars.
pub fn star_tracker_budget(
    aperture_side: f64,
    target_flux_per_um2: f64,
    background_per_star: f64,
) -> StarTrackerBudget {
    assert!(aperture_side > 0.0 && target_flux_per_um2 >= 0.0 && background_per_star >= 0.0);
    let area_um2 = (aperture_side * 1e6).powi(2);
    let signal = target_flux_per_um2 * area_um2;
    let denom = (signal + background_per_star).sqrt();
    StarTrackerBudget {
        signal,
        snr: if denom > 0.0 { signal / denom } else { 0.0 },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceBudget {
    pub operations: u64,
    pub memory_bits: u64,
}

/// Optical landing guidance: correlation tracking over binary images.
pub fn landing_guidance_budget(pixels: u64, ops_per_pixel: u64, images: u64) -> GuidanceBudget {
    GuidanceBudget {
        operations: pixels * ops_per_pixel * images,
        memory_bits: 3 * pixels,
    }
}
