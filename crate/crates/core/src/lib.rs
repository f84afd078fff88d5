//! Consistency engine for simple, hyper and conditional temporal networks.
//!
//! The crate decides STN consistency, multi-head HyTN consistency and
//! (ε-)dynamic consistency of conditional networks, producing machine
//! checkable certificates in both directions: feasible schedules and
//! execution strategies on the positive side, negative cycles on the
//! negative side.

pub mod chytn;
pub mod dc;
pub mod hytn;
pub mod error;
pub mod label;
pub mod network;
pub mod scenario;
pub mod stn;
pub mod schedule;

pub use chytn::{Chytn, ChytnBuilder, GeneralChytn, Restriction, WdRule, WdViolation};
pub use error::{DcError, InternalError, ModelError, ResourceError};
pub use label::{Label, PropId};
pub use network::{Head, Hyperarc, Hytn, NodeId, Stn, StnArc, Weight};
pub use scenario::{enumerate_scenarios, eval_label, Scenario, DEFAULT_SCENARIO_CAP};
pub use schedule::{format_time, parse_time, Eps, ExecutionStrategy, Schedule, Time};
pub use hytn::{check_hytn, satisfies, verify_negative_cycle, HytnVerdict, NegativeCycleCert};
pub use stn::{check_stn, StnVerdict};
pub use dc::{check_dc, check_eps_dc, eps_hat_bounds, DcOutcome, DcVerdict, EpsHatBounds};
