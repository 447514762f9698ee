//! Teleportation of one- and two-qubit states through a channel shared with
//! a uniformly accelerated observer, protected by a partial measurement and
//! its reversal.
//!
//! The crate builds the resource state both by simulating the preparation
//! pipeline and from closed forms, teleports through the resulting
//! depolarizing channel and evaluates quantum Fisher information, l1
//! coherence, concurrence, discord and fidelity of the output.
//!
//! ```
//! use unruh_teleport::channel::ChannelParams;
//! use unruh_teleport::metrics::{evaluate, Scenario};
//! use unruh_teleport::teleport::InputParams;
//!
//! let params = ChannelParams::new(std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0).unwrap();
//! let input = InputParams::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
//! let row = evaluate(Scenario::Single, &params, &input).unwrap();
//! assert!((row.fidelity - 1.0).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod output;
pub mod qmat;
pub mod teleport;

pub use error::{Error, Result};
