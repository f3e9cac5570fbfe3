//! Prerequisite hierarchies among judgment targets, mined from which models
//! judged which targets correctly.
//!
//! The pipeline: a [`JudgmentTable`] of 0/1 results, pairwise
//! [`PairCounts`], the flexible order over classes of equally informative
//! targets ([`order`]), its covering edges and layers ([`hasse`]), and
//! DOT / JSON / text output ([`io`]). The [`kst`] module works directly on
//! families of knowledge states, and [`synth`] generates tables from planted
//! orders.

pub mod cli;
pub mod fixtures;
pub mod hasse;
pub mod io;
pub mod kst;
pub mod natural;
pub mod order;
pub mod relation;
pub mod synth;
pub mod table;

pub use hasse::{HasseDiagram, HasseNode};
pub use kst::{KnowledgeState, KnowledgeStructure};
pub use order::{Execution, OrderMatrix};
pub use relation::{BoolMatrix, Partition};
pub use table::{Flexibility, JudgmentTable, PairCounts};
