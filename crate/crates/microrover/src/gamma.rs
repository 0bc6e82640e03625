//! Gamma-ray detection: energy-dependent attenuation per interaction
//! mechanism, detector efficiency and sizing, and Poisson counting errors
//! for regolith emission lines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp;

/// Semiconductor detector material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorMaterial {
    pub name: String,
    /// g/cm^3
    pub density: f64,
    pub notes: String,
}

impl DetectorMaterial {
    fn new(name: &str, density: f64, notes: &str) -> Self {
        assert!(density > 0.0);
        DetectorMaterial {
            name: name.to_string(),
            density,
            notes: notes.to_string(),
        }
    }

    pub fn hgi2() -> Self {
        Self::new("HgI2", 6.4, "room-temperature operation, band gap 2.1 eV")
    }

    pub fn pbo() -> Self {
        Self::new("PbO", 9.7, "high density oxide, experimental")
    }

    pub fn tl6sei4() -> Self {
        Self::new("Tl6SeI4", 7.4, "emerging high-Z chalcohalide")
    }

    pub fn ge() -> Self {
        Self::new("Ge", 5.3, "benchmark material, cryogenic operation")
    }

    pub fn catalog() -> Vec<Self> {
        vec![Self::hgi2(), Self::pbo(), Self::tl6sei4(), Self::ge()]
    }
}

/// Gamma-ray interaction mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    Photoelectric,
    Pair,
}

/// Minimum detector thickness (one attenuation length) per mechanism versus
/// photon energy, in areal density so it applies to any material.
#[derive(Debug, Clone, PartialEq)]
pub struct AttenuationTable {
    /// (MeV, g/cm^2)
    pub photoelectric: Vec<(f64, f64)>,
    /// (MeV, g/cm^2); pair production only exists above ~1 MeV
    pub pair: Vec<(f64, f64)>,
}

impl AttenuationTable {
    pub fn builtin() -> Self {
        AttenuationTable {
            photoelectric: vec![
                (0.2, 0.2),
                (0.3, 0.4),
                (0.4, 0.5),
                (0.5, 0.7),
                (0.7, 1.0),
                (0.8, 1.3),
                (0.9, 1.4),
                (1.1, 2.0),
                (1.3, 2.6),
                (1.4, 2.8),
                (1.5, 3.0),
                (1.7, 3.4),
                (1.8, 3.6),
                (1.9, 3.8),
                (2.3, 4.6),
                (4.5, 7.0),
            ],
            pair: vec![
                (1.1, 2.0),
                (1.3, 2.6),
                (1.4, 2.8),
                (1.5, 3.0),
                (1.7, 0.5),
                (1.8, 0.6),
                (1.9, 0.7),
                (2.3, 0.9),
                (4.5, 3.5),
            ],
        }
    }
}

/// Pair production contributes no usable full-energy efficiency below this.
pub const PAIR_EFFICIENCY_THRESHOLD_MEV: f64 = 1.7;

/// One attenuation length at an energy, interpolated log-log per column.
pub fn min_thickness(table: &AttenuationTable, energy: f64, mechanism: Mechanism) -> Result<f64> {
    match mechanism {
        Mechanism::Photoelectric => {
            interp::log_log("photon energy (photoelectric)", &table.photoelectric, energy)
        }
        Mechanism::Pair => interp::log_log("photon energy (pair)", &table.pair, energy),
    }
}

/// Areal density to linear thickness in a material.
pub fn thickness_cm(t: f64, mat: &DetectorMaterial) -> f64 {
    assert!(t >= 0.0);
    t / mat.density
}

/// Full-energy detection efficiency of a slab of the given linear thickness:
/// 1 - exp(-rho t / min_t) per active mechanism, summed and capped at 1.
/// Pair production only counts toward efficiency well above its threshold,
/// where the created quanta stay in the crystal.
pub fn spectroscopic_efficiency(
    mat: &DetectorMaterial,
    thickness: f64,
    energy: f64,
) -> Result<f64> {
    assert!(thickness >= 0.0);
    let table = AttenuationTable::builtin();
    let areal = mat.density * thickness;
    let mut eff = {
        let t0 = min_thickness(&table, energy, Mechanism::Photoelectric)?;
        1.0 - (-areal / t0).exp()
    };
    if energy >= PAIR_EFFICIENCY_THRESHOLD_MEV {
        let t0 = min_thickness(&table, energy, Mechanism::Pair)?;
        eff += 1.0 - (-areal / t0).exp();
    }
    Ok(eff.min(1.0))
}

/// Efficiency averaged over an energy band (uniform grid).
pub fn band_average_efficiency(
    mat: &DetectorMaterial,
    thickness: f64,
    band: (f64, f64),
    points: usize,
) -> Result<f64> {
    assert!(points >= 2 && band.0 < band.1);
    let mut sum = 0.0;
    for i in 0..points {
        let e = band.0 + (band.1 - band.0) * i as f64 / (points - 1) as f64;
        sum += spectroscopic_efficiency(mat, thickness, e)?;
    }
    Ok(sum / points as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSizing {
    /// kg
    pub mass: f64,
    /// m, cube edge
    pub edge: f64,
}

/// Smallest cube of a material whose 1-2 MeV band-average efficiency
/// reaches the target. The slab model is optimistic at high efficiency
/// (no Compton leakage), so treat results as lower bounds.
pub fn detector_mass_for_efficiency(
    mat: &DetectorMaterial,
    target_eff: f64,
    band: (f64, f64),
) -> Result<DetectorSizing> {
    if target_eff <= 0.0 {
        return Ok(DetectorSizing { mass: 0.0, edge: 0.0 });
    }
    if target_eff >= 1.0 {
        return Err(Error::Invalid {
            field: "target_eff".to_string(),
            reason: "full-energy efficiency asymptotes below 1".to_string(),
        });
    }
    // Edge in cm; 1 m of detector is far beyond any target < 1.
    let reaches = |edge_cm: f64| {
        band_average_efficiency(mat, edge_cm, band, 41)
            .map(|e| e >= target_eff)
            .unwrap_or(false)
    };
    let edge_cm = interp::bisect_min_feasible(1e-6, 100.0, 1e-6, reaches).ok_or_else(|| {
        Error::Invalid {
            field: "target_eff".to_string(),
            reason: format!("unreachable efficiency {target_eff}"),
        }
    })?;
    Ok(DetectorSizing {
        mass: mat.density * edge_cm.powi(3) * 1e-3,
        edge: edge_cm * 1e-2,
    })
}

/// One regolith gamma emission line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaLine {
    pub element: String,
    /// MeV
    pub energy: f64,
    /// counts/cm^2/day at the surface
    pub flux: f64,
    /// ppm by mass in the reference regolith
    pub concentration: f64,
    /// True when a stronger low-energy line can substitute, keeping
    /// efficiency high even in a thin detector.
    #[serde(default)]
    pub low_energy_alternative: bool,
}

/// Reference lunar-regolith line list.
pub fn builtin_lines() -> Vec<GammaLine> {
    let mk = |element: &str, energy: f64, concentration: f64, flux: f64, alt: bool| GammaLine {
        element: element.to_string(),
        energy,
        flux,
        concentration,
        low_energy_alternative: alt,
    };
    vec![
        mk("K", 1.46, 1200.0, 3456.0, false),
        mk("U", 0.61, 0.5, 1584.0, true),
        mk("Th", 2.61, 1.9, 3168.0, true),
        mk("Na", 0.44, 3500.0, 86.4, true),
        mk("Lu", 0.31, 0.5, 11.0, true),
        mk("Sm", 0.33, 7.0, 20.0, true),
        mk("Gd", 1.19, 8.0, 20.0, true),
        mk("Ni", 9.0, 400.0, 10.0, false),
        mk("Fe", 0.85, 9e4, 1656.0, false),
        mk("Al", 2.21, 1.1e5, 972.0, false),
        mk("Ca", 3.74, 1.0e5, 504.0, false),
        mk("O", 6.13, 4.35e5, 3744.0, false),
        mk("Si", 1.79, 2.0e5, 4636.8, false),
        mk("Ti", 6.76, 1.4e4, 593.28, false),
    ]
}

/// Parse a gamma line list from JSON.
pub fn parse_lines(json: &str) -> Result<Vec<GammaLine>> {
    let lines: Vec<GammaLine> = serde_json::from_str(json)?;
    for l in &lines {
        if l.energy <= 0.0 || l.flux < 0.0 {
            return Err(Error::Invalid {
                field: format!("line {}", l.element),
                reason: "energy must be positive and flux non-negative".to_string(),
            });
        }
    }
    Ok(lines)
}

/// Detector efficiency model applied to a line list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyModel {
    /// Efficiency for hard lines in a thin detector.
    pub high_energy_efficiency: f64,
    /// Below this the photoelectric cross-section keeps even a small
    /// crystal near full efficiency.
    pub full_efficiency_below_mev: f64,
}

impl EfficiencyModel {
    pub fn full() -> Self {
        EfficiencyModel {
            high_energy_efficiency: 1.0,
            full_efficiency_below_mev: 0.8,
        }
    }

    pub fn thin_detector() -> Self {
        EfficiencyModel {
            high_energy_efficiency: 0.1,
            full_efficiency_below_mev: 0.8,
        }
    }

    /// Effective efficiency for a line: soft lines and lines with a soft
    /// alternative stay at full efficiency.
    pub fn for_line(&self, line: &GammaLine) -> f64 {
        if line.energy < self.full_efficiency_below_mev || line.low_energy_alternative {
            1.0
        } else {
            self.high_energy_efficiency
        }
    }
}

/// Counts below this are treated as no detection (error would exceed 50%).
pub const MIN_DETECTABLE_COUNTS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectionError {
    /// 1-sigma relative error, percent.
    Percent(f64),
    NotDetectable,
}

impl DetectionError {
    pub fn percent(&self) -> Option<f64> {
        match self {
            DetectionError::Percent(p) => Some(*p),
            DetectionError::NotDetectable => None,
        }
    }
}

/// Poisson counting error of a line measurement: N = flux * area * days *
/// efficiency, error = 100/sqrt(N) percent.
pub fn detection_error(
    line: &GammaLine,
    area_cm2: f64,
    duration_s: f64,
    model: &EfficiencyModel,
) -> DetectionError {
    assert!(area_cm2 > 0.0 && duration_s > 0.0);
    let eff = model.for_line(line);
    let counts = line.flux * area_cm2 * (duration_s / 86400.0) * eff;
    if counts < MIN_DETECTABLE_COUNTS {
        DetectionError::NotDetectable
    } else {
        DetectionError::Percent(100.0 / counts.sqrt())
    }
}
