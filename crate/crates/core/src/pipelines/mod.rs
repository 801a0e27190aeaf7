//! End-to-end constructions: two-colour flip Cayley graphs, the gaps product
//! `H ⊠ (F □ K)`, and colour merging.

mod br;
mod gaps;
mod merge;

pub use br::{build_br, plan_br, BrCertificate, BrPlan, ParityCase};
pub use gaps::{
    build_gaps, build_k, flipping_interval_feasible, k_class_sizes, k_connecting_set, k_group_shape, plan_gaps,
    plan_gaps_relaxed, Affine, ChainCase, ChainLink, GapCheck, GapsInput, GapsOutcome, GapsPlan, GapsResult, Ratio,
    DEFAULT_MATERIALIZE_LIMIT,
};
pub use merge::colour_merge;
