//! k-fold covers, F-coloring counts, the DP color function by exhaustive
//! search, and the two bound formulas.

mod bounds;
mod count;
mod cover;
mod search;
mod spec;

pub use bounds::{
    cwd1_hypothesis, cwd1_quotient, cwd1_value, cwd_bound, cwd_bound_with_offset, Cwd1Branch,
    Cwd1Value, CwdBound,
};
pub use count::{count_colorings_brute, count_colorings_ie, DEFAULT_IE_BUDGET};
pub(crate) use count::{positions, Kernel};
pub use cover::{check_permutation, Cover, CoverViolation, PartialMap, VertexRef};
pub use search::{
    all_slots, conjugacy_representatives, dp_exact, dp_upper_search, gauge_fixed_slots,
    natural_off_edge_min, permutations, DpExact, SearchBudget, Slot, UpperSearch, UpperStrategy,
    DEFAULT_COVER_BUDGET,
};
pub use spec::{identity, EdgePerms, PermCoverSpec, ShiftSpec};
