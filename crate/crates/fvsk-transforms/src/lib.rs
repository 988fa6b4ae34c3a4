//! GF(2) tables over vectors of small states, with the transforms and
//! convolutions used by the dynamic programs.

pub mod conv;
pub mod filter;
pub mod map;
pub mod poset;
pub mod table;

pub use conv::{
    cfvs_union_state, conv18, conv3, conv6, conv_naive, cw_union_state, tw_join_state, AcycConv, CfvsConv, TwConv,
};
pub use filter::{class_of, CountPlan};
pub use map::CoordMap;
pub use poset::{builtin_posets, BasePoset, Builtins};
pub use table::{GfTable, Layout};
