//! Brute-force character theory over `SL2(Z/p^n)` for checking the finite-level
//! consequences of the branching rules in `sl2_branching`.
//!
//! Everything that touches all group elements goes through [`Execution`],
//! which is rayon-backed when the `parallel` feature is on and sequential
//! otherwise; results are identical in both modes.

pub mod classfn;
pub mod error;
pub mod exec;
pub mod group;
pub mod report;
pub mod sample;
pub mod shalika;
pub mod subgroup;
pub mod table;
pub mod verify;

pub use classfn::{induce, inner_product, ClassFunction, Linear, SubgroupCharacter, TOLERANCE};
pub use error::{OracleError, Result};
pub use exec::Execution;
pub use group::{FiniteGroup, Mat, DEFAULT_BUDGET};
pub use shalika::{psi_x_character, shalika_character, ShalikaSpec, ShalikaSubgroup, PSI_SCALE};
pub use subgroup::Subgroup;
pub use table::{character_table_sl2fp, CharacterTable, RowKind, TableRow};
pub use report::{summarize, Report, Verdict};
pub use verify::{run_suite, Groups, SigmaKind, Suite};
