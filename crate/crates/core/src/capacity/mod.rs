//! Zero-error communication: confusability graphs, one-shot capacity, and
//! entanglement-assisted protocols built from quantum certificates.

mod channel;
mod protocol;

pub use channel::{
    canonical_channel, capacity_series, capacity_series_with, confusability_graph, one_shot_capacity,
    one_shot_capacity_with, supermultiplicativity, Channel, STOCHASTIC_TOL,
};
pub use protocol::{
    classical_protocol, lift_factorization_residual, lift_protocol, lift_protocol_with, protocol_from_independence_cert,
    residual_states, verify_protocol, EAProtocol, ProtocolClass, ProtocolReport, ProtocolViolation, PROTOCOL_TOL,
};
