//! Far-field link budgets: aperture gains, free-space loss, thermal-noise
//! limited bit rates, transmitter efficiency versus frequency, and the
//! inverse problem of required transmit power.

use serde::Serialize;

use crate::environments::{Environment, CONSTANTS, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::interp;

/// A parabolic aperture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Antenna {
    /// m
    pub diameter: f64,
    /// (0, 1]
    pub aperture_efficiency: f64,
}

impl Antenna {
    pub fn new(diameter: f64) -> Self {
        Antenna {
            diameter,
            aperture_efficiency: 0.75,
        }
    }
}

/// Electrical-to-RF conversion technology, as efficiency knots over frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransmitterKind {
    Amplifier,
    ImpattSiSic,
    ImpattGan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransmitterTech {
    pub kind: TransmitterKind,
    /// (frequency Hz, efficiency) knots, sorted by frequency.
    pub efficiency_curve: Vec<(f64, f64)>,
}

impl TransmitterTech {
    /// Solid-state amplifier chain: efficiency falls steeply with frequency.
    pub fn amplifier() -> Self {
        TransmitterTech {
            kind: TransmitterKind::Amplifier,
            efficiency_curve: vec![
                (30e9, 0.50),
                (90e9, 0.25),
                (190e9, 0.10),
                (270e9, 0.05),
            ],
        }
    }

    /// Si-SiC avalanche diode source: flat 25% to 500 GHz.
    pub fn impatt_si_sic() -> Self {
        TransmitterTech {
            kind: TransmitterKind::ImpattSiSic,
            efficiency_curve: vec![(1e9, 0.25), (500e9, 0.25)],
        }
    }

    /// GaN avalanche diode source: 6% out to 5 THz.
    pub fn impatt_gan() -> Self {
        TransmitterTech {
            kind: TransmitterKind::ImpattGan,
            efficiency_curve: vec![(1e9, 0.06), (5e12, 0.06)],
        }
    }
}

/// Electrical-to-RF efficiency at a frequency, interpolated linearly in
/// log(frequency) between knots.
pub fn efficiency_at(tech: &TransmitterTech, frequency: f64) -> Result<f64> {
    interp::semilog_x("transmitter frequency", &tech.efficiency_curve, frequency)
}

/// One computed link budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkBudget {
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub free_space_loss: f64,
    /// W
    pub received_power: f64,
    /// J; thermal noise spectral density kT
    pub noise_density: f64,
    /// bit/s at unit energy-per-bit over noise density
    pub max_bit_rate: f64,
    /// bit/s at the requested signal-to-noise ratio
    pub bit_rate_at_snr: f64,
}

/// Aperture gain eta (pi D / lambda)^2.
pub fn antenna_gain(a: &Antenna, wavelength: f64) -> f64 {
    assert!(wavelength > 0.0, "wavelength must be positive");
    let x = std::f64::consts::PI * a.diameter / wavelength;
    a.aperture_efficiency * x * x
}

pub fn wavelength(frequency: f64) -> f64 {
    SPEED_OF_LIGHT / frequency
}

/// Full link budget for a radiated RF power.
pub fn link_budget(
    tx: &Antenna,
    rx: &Antenna,
    rf_power: f64,
    frequency: f64,
    range: f64,
    background_temp: f64,
    snr: f64,
) -> LinkBudget {
    assert!(rf_power > 0.0 && frequency > 0.0 && range > 0.0 && background_temp > 0.0);
    assert!(snr >= 1.0, "snr must be >= 1");
    let lambda = wavelength(frequency);
    let tx_gain = antenna_gain(tx, lambda);
    let rx_gain = antenna_gain(rx, lambda);
    let fsl = {
        let x = 4.0 * std::f64::consts::PI * range / lambda;
        x * x
    };
    let received_power = rf_power * tx_gain * rx_gain / fsl;
    let noise_density = CONSTANTS.boltzmann * background_temp;
    let max_bit_rate = received_power / noise_density;
    LinkBudget {
        tx_gain,
        rx_gain,
        free_space_loss: fsl,
        received_power,
        noise_density,
        max_bit_rate,
        bit_rate_at_snr: max_bit_rate / snr,
    }
}

/// Electrical transmit power needed for a data rate: the exact algebraic
/// inverse of `link_budget`, divided by the technology's efficiency at the
/// chosen frequency.
pub fn required_tx_electrical_power(
    tx: &Antenna,
    rx: &Antenna,
    data_rate: f64,
    frequency: f64,
    range: f64,
    background_temp: f64,
    snr: f64,
    tech: &TransmitterTech,
) -> Result<f64> {
    assert!(data_rate > 0.0, "data_rate must be positive");
    let eff = efficiency_at(tech, frequency)?;
    let lambda = wavelength(frequency);
    let fsl = {
        let x = 4.0 * std::f64::consts::PI * range / lambda;
        x * x
    };
    let rf = data_rate * snr * CONSTANTS.boltzmann * background_temp * fsl
        / (antenna_gain(tx, lambda) * antenna_gain(rx, lambda));
    Ok(rf / eff)
}

/// Reject frequencies a thick atmosphere absorbs. Returns the frequency to
/// use (unchanged when legal).
pub fn check_surface_frequency(env: &Environment, frequency: f64) -> Result<f64> {
    if let Some(fmax) = env.max_link_frequency() {
        if frequency > fmax {
            return Err(Error::OutOfDomain {
                quantity: "surface link frequency",
                value: frequency,
                min: 0.0,
                max: fmax,
            });
        }
    }
    Ok(frequency)
}

/// Aggregate downlink requirement for a rover fleet.
///
/// Per rover: (pixels x bits/pixel + channels x bits/channel) / cadence.
pub fn rover_data_requirement(
    n_rovers: u32,
    image_pixels: u64,
    bits_per_pixel_compressed: u64,
    spectral_channels: u64,
    bits_per_channel: u64,
    cadence: f64,
) -> f64 {
    assert!(cadence > 0.0, "cadence must be positive");
    let bits = (image_pixels * bits_per_pixel_compressed + spectral_channels * bits_per_channel)
        as f64;
    n_rovers as f64 * bits / cadence
}

/// Default per-rover downlink: one 256x256 image compressed to 1 bit/pixel
/// plus a 100-channel, 10-bit spectrum per hour (~20 bit/s).
pub fn default_per_rover_rate() -> f64 {
    rover_data_requirement(1, 256 * 256, 1, 100, 10, 3600.0)
}
