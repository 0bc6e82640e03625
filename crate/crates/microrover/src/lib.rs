//! Scaling-law engine and feasibility solver for miniature planetary
//! rovers.
//!
//! The crate models each subsystem of a centimetre-class rover as explicit
//! scaling laws in the rover scale length L: communications (far-field
//! link budgets), power generation and storage, gamma-ray and other
//! instruments, locomotion, thermal behaviour, trapped-belt radiation, and
//! the orbiter/delivery stack. The [`envelope`] module combines them into
//! feasibility envelopes (minimum viable rover size per constraint), and
//! [`mission`] rolls whole multi-body campaigns up to launch mass.

pub mod commlink;
pub mod config;
pub mod envelope;
pub mod environments;
pub mod error;
pub mod gamma;
pub mod instruments;
pub mod interp;
pub mod locomotion;
pub mod mission;
pub mod output;
pub mod power;
pub mod radiation;
pub mod thermal;
