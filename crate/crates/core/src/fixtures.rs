//! Small reference datasets: a twelve-model, ten-target judgment table and a
//! five-item knowledge structure.

use crate::io::csv::parse_csv;
use crate::kst::KnowledgeStructure;
use crate::table::JudgmentTable;

/// Twelve models judged on targets `t0..t9`.
pub const TABLE4_CSV: &str = include_str!("../tests/fixtures/table4.csv");

/// The states `∅, {b,c}, {a,b,c}, {a,b,c,d}, {a,b,c,e}, Q` over `Q = {a,b,c,d,e}`,
/// one per row.
pub const FIVE_ITEMS_CSV: &str = include_str!("../tests/fixtures/five_items.csv");

pub fn table4() -> JudgmentTable {
    parse_csv(TABLE4_CSV.as_bytes()).expect("bundled table parses")
}

/// The five-item structure, completed.
pub fn five_item_structure() -> KnowledgeStructure {
    let table = parse_csv(FIVE_ITEMS_CSV.as_bytes()).expect("bundled table parses");
    KnowledgeStructure::from_table(&table, true)
}
