//! Branching rules `Res_K π` and their analyses.

mod profile;
mod series;
mod tails;

pub use profile::{classify_from_profile, dimension_identity, packet_profile, DimensionReport, PacketProfile};
pub use series::{branch, leading_term, BranchingSeries, Entry};
pub use tails::{
    intertwining_rule, is_tail_normal, k_intertwines, tail_conforms, tail_descriptor, tail_end, tail_pattern, tails_match,
    IntertwiningRule, TailDescriptor, TailMatch, TailPattern,
};
