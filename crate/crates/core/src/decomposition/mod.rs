//! Static tree decompositions: validation, nice form, treewidth and the
//! cops-and-robber characterisation.

pub mod cops;
pub mod elimination;
pub mod exact;
pub mod nice;
pub mod td;

pub use cops::{cops_win, cops_win_with_budget, DEFAULT_COPS_BUDGET};
pub use elimination::{decomposition_from_order, min_fill_order, treewidth_heuristic};
pub use exact::{treewidth_exact, DEFAULT_EXACT_BUDGET};
pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};
pub use td::{parse_td, validate_tdc, write_td, TdcReport, TreeDecomposition};
