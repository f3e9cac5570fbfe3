//! Judgment tables: which model judged which target correctly, plus the
//! pairwise response counts and the flexibility threshold that the order
//! module consumes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised while building or querying a [`JudgmentTable`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table has no targets")]
    NoTargets,
    #[error("table has no models")]
    NoModels,
    #[error("target name at column {column} is invalid: {reason}")]
    InvalidTargetName { column: usize, reason: NameProblem },
    #[error("model name at row {row} is invalid: {reason}")]
    InvalidModelName { row: usize, reason: NameProblem },
    #[error("duplicate target name {name:?} at columns {first} and {second}")]
    DuplicateTarget {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("duplicate model name {name:?} at rows {first} and {second}")]
    DuplicateModel {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("{models} model names but {rows} rows of cells")]
    RowCountMismatch { models: usize, rows: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cell at row {row}, column {column} is {value}, expected 0 or 1")]
    NonBinary {
        row: usize,
        column: usize,
        value: u8,
    },
    #[error("model index {index} out of range (table has {len} models)")]
    ModelOutOfRange { index: usize, len: usize },
    #[error("target index {index} out of range (table has {len} targets)")]
    TargetOutOfRange { index: usize, len: usize },
    #[error("unknown target {0:?}")]
    UnknownTarget(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameProblem {
    Empty,
    ContainsQuote,
    ContainsComma,
}

impl fmt::Display for NameProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameProblem::Empty => "name is empty",
            NameProblem::ContainsQuote => "name contains a double quote",
            NameProblem::ContainsComma => "name contains a comma",
        })
    }
}

/// Names feed straight into CSV and DOT output, so quotes and commas are
/// rejected up front instead of escaped later.
pub fn check_name(name: &str) -> Result<(), NameProblem> {
    if name.is_empty() {
        Err(NameProblem::Empty)
    } else if name.contains('"') {
        Err(NameProblem::ContainsQuote)
    } else if name.contains(',') {
        Err(NameProblem::ContainsComma)
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetId {
    pub index: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelId {
    pub index: usize,
    pub name: String,
}

/// Models × targets matrix of correct (1) / incorrect (0) judgments.
///
/// Immutable once built; all accessors take `&self`, so a table can be shared
/// freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JudgmentTable {
    models: Vec<ModelId>,
    targets: Vec<TargetId>,
    // row-major, models.len() * targets.len()
    cells: Vec<bool>,
}

impl JudgmentTable {
    /// Validates names and cells and builds the table. Indices follow the
    /// order of the given name lists.
    pub fn build<S, T>(
        target_names: &[S],
        model_names: &[T],
        bits: &[Vec<u8>],
    ) -> Result<Self, TableError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        if target_names.is_empty() {
            return Err(TableError::NoTargets);
        }
        if model_names.is_empty() {
            return Err(TableError::NoModels);
        }

        let mut seen = HashMap::new();
        let mut targets = Vec::with_capacity(target_names.len());
        for (column, name) in target_names.iter().enumerate() {
            let name = name.as_ref();
            check_name(name).map_err(|reason| TableError::InvalidTargetName { column, reason })?;
            if let Some(&first) = seen.get(name) {
                return Err(TableError::DuplicateTarget {
                    name: name.to_owned(),
                    first,
                    second: column,
                });
            }
            seen.insert(name, column);
            targets.push(TargetId {
                index: column,
                name: name.to_owned(),
            });
        }

        let mut seen = HashMap::new();
        let mut models = Vec::with_capacity(model_names.len());
        for (row, name) in model_names.iter().enumerate() {
            let name = name.as_ref();
            check_name(name).map_err(|reason| TableError::InvalidModelName { row, reason })?;
            if let Some(&first) = seen.get(name) {
                return Err(TableError::DuplicateModel {
                    name: name.to_owned(),
                    first,
                    second: row,
                });
            }
            seen.insert(name, row);
            models.push(ModelId {
                index: row,
                name: name.to_owned(),
            });
        }

        if bits.len() != models.len() {
            return Err(TableError::RowCountMismatch {
                models: models.len(),
                rows: bits.len(),
            });
        }
        let width = targets.len();
        let mut cells = Vec::with_capacity(models.len() * width);
        for (row, values) in bits.iter().enumerate() {
            if values.len() != width {
                return Err(TableError::RaggedRow {
                    row,
                    expected: width,
                    found: values.len(),
                });
            }
            for (column, &value) in values.iter().enumerate() {
                match value {
                    0 => cells.push(false),
                    1 => cells.push(true),
                    _ => return Err(TableError::NonBinary { row, column, value }),
                }
            }
        }

        Ok(JudgmentTable {
            models,
            targets,
            cells,
        })
    }

    pub fn models(&self) -> &[ModelId] {
        &self.models
    }

    pub fn targets(&self) -> &[TargetId] {
        &self.targets
    }

    pub fn model_count(&self) -> usize {
        self.models.len()
    }

    pub fn target_count(&self) -> usize {
        self.targets.len()
    }

    pub fn target_index(&self, name: &str) -> Result<usize, TableError> {
        self.targets
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| TableError::UnknownTarget(name.to_owned()))
    }

    /// The `Tab(i, j)` value: 1 if model `i` judged target `j` correctly.
    pub fn tab(&self, model: usize, target: usize) -> Result<u8, TableError> {
        self.check_model(model)?;
        self.check_target(target)?;
        Ok(u8::from(self.cell(model, target)))
    }

    /// Models that judged `target` correctly, ascending.
    pub fn support(&self, target: usize) -> Result<Vec<usize>, TableError> {
        self.check_target(target)?;
        Ok((0..self.models.len())
            .filter(|&i| self.cell(i, target))
            .collect())
    }

    /// The column for `target` as one bool per model.
    pub fn column(&self, target: usize) -> Result<Vec<bool>, TableError> {
        self.check_target(target)?;
        Ok((0..self.models.len())
            .map(|i| self.cell(i, target))
            .collect())
    }

    /// The row for `model`: one bool per target.
    pub fn row(&self, model: usize) -> Result<&[bool], TableError> {
        self.check_model(model)?;
        let width = self.targets.len();
        Ok(&self.cells[model * width..(model + 1) * width])
    }

    /// Counts models by their response pattern on the ordered pair `(p, q)`.
    pub fn pair_counts(&self, p: usize, q: usize) -> Result<PairCounts, TableError> {
        self.check_target(p)?;
        self.check_target(q)?;
        let mut counts = PairCounts::default();
        for i in 0..self.models.len() {
            match (self.cell(i, p), self.cell(i, q)) {
                (true, true) => counts.n1 += 1,
                (true, false) => counts.n2 += 1,
                (false, true) => counts.n3 += 1,
                (false, false) => counts.n4 += 1,
            }
        }
        Ok(counts)
    }

    fn cell(&self, model: usize, target: usize) -> bool {
        self.cells[model * self.targets.len() + target]
    }

    fn check_model(&self, index: usize) -> Result<(), TableError> {
        if index < self.models.len() {
            Ok(())
        } else {
            Err(TableError::ModelOutOfRange {
                index,
                len: self.models.len(),
            })
        }
    }

    fn check_target(&self, index: usize) -> Result<(), TableError> {
        if index < self.targets.len() {
            Ok(())
        } else {
            Err(TableError::TargetOutOfRange {
                index,
                len: self.targets.len(),
            })
        }
    }
}

/// Model counts for the response patterns 11, 10, 01 and 00 on an ordered
/// target pair `(p, q)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PairCounts {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.n1 + self.n2 + self.n3 + self.n4
    }

    /// Counts for the swapped pair `(q, p)`.
    pub fn swapped(&self) -> PairCounts {
        PairCounts {
            n1: self.n1,
            n2: self.n3,
            n3: self.n2,
            n4: self.n4,
        }
    }
}

impl fmt::Display for PairCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n1={} n2={} n3={} n4={}",
            self.n1, self.n2, self.n3, self.n4
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlexibilityError {
    #[error("flexibility {0:?} is not a percentage with at most two decimal digits")]
    Malformed(String),
    #[error("flexibility {0} is out of range; it must satisfy 0 <= P < 50")]
    OutOfRange(String),
}

/// Tolerated percentage of counterexample models, stored in hundredths of a
/// percent (25.5% is 2550). Always strictly below 50%.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flexibility {
    basis_points: u32,
}

impl Flexibility {
    pub const ZERO: Flexibility = Flexibility { basis_points: 0 };
    /// Exclusive upper bound: 50.00%.
    pub const LIMIT: u32 = 5000;

    pub fn from_basis_points(basis_points: u32) -> Result<Self, FlexibilityError> {
        if basis_points < Self::LIMIT {
            Ok(Flexibility { basis_points })
        } else {
            Err(FlexibilityError::OutOfRange(format_basis_points(
                basis_points,
            )))
        }
    }

    pub fn basis_points(self) -> u32 {
        self.basis_points
    }

    /// Two-decimal percent text, e.g. `"19.99"`.
    pub fn percent_text(self) -> String {
        format_basis_points(self.basis_points)
    }
}

fn format_basis_points(bp: u32) -> String {
    format!("{}.{:02}", bp / 100, bp % 100)
}

impl fmt::Display for Flexibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}%", self.percent_text())
    }
}

impl FromStr for Flexibility {
    type Err = FlexibilityError;

    /// Accepts `"20"`, `"20."`, `"19.9"`, `"19.99"`, optionally with a trailing
    /// `%`. A leading `-` parses but is rejected as out of range.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || FlexibilityError::Malformed(s.to_owned());
        let text = s.trim();
        let text = text.strip_suffix('%').unwrap_or(text);
        let (negative, text) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let (whole, frac) = text.split_once('.').unwrap_or((text, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(malformed());
        }
        if !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || frac.len() > 2
        {
            return Err(malformed());
        }
        let whole_value: u64 = if whole.is_empty() {
            0
        } else {
            // Anything this long is out of range anyway; clamp to avoid overflow.
            whole.parse().unwrap_or(u64::MAX / 1000)
        };
        let frac_value: u64 = match frac.len() {
            0 => 0,
            1 => u64::from(frac.as_bytes()[0] - b'0') * 10,
            _ => frac.parse().map_err(|_| malformed())?,
        };
        let bp = whole_value.saturating_mul(100).saturating_add(frac_value);
        if negative && bp > 0 {
            return Err(FlexibilityError::OutOfRange(s.trim().to_owned()));
        }
        if bp >= u64::from(Self::LIMIT) {
            return Err(FlexibilityError::OutOfRange(s.trim().to_owned()));
        }
        Ok(Flexibility {
            basis_points: bp as u32,
        })
    }
}
