//! The flexible prerequisite order over the targets of a judgment table.
//!
//! `p -> q` ("p is a prerequisite of q") holds when, among the models that
//! separate the two targets, at most the flexibility percentage judged `q`
//! correctly but `p` incorrectly. With flexibility 0 this is plain support
//! containment: every model correct on `q` is also correct on `p`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::relation::{BoolMatrix, Partition, Representative};
use crate::table::{Flexibility, JudgmentTable, PairCounts};

/// Whether pairwise work may be spread over the rayon thread pool. Results
/// are identical either way.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order relation failed verification: {0}")]
    NotPartialOrder(Diagnostics),
}

/// The threshold test on one ordered pair, in exact integer arithmetic:
/// `10000 * n3 <= basis_points * (n2 + n3)`.
///
/// Holds trivially for a target compared with itself, and when no model
/// separates the two targets (`n2 + n3 == 0`).
pub fn flexible_leq(counts: PairCounts, alpha: Flexibility, same_target: bool) -> bool {
    if same_target {
        return true;
    }
    let separating = u128::from(counts.n2) + u128::from(counts.n3);
    if separating == 0 {
        return true;
    }
    10_000 * u128::from(counts.n3) <= u128::from(alpha.basis_points()) * separating
}

fn leq(table: &JudgmentTable, p: usize, q: usize, alpha: Flexibility) -> bool {
    let counts = table.pair_counts(p, q).expect("target indices in range");
    flexible_leq(counts, alpha, p == q)
}

/// Groups targets that are mutually ordered. Below 50% flexibility this is
/// exactly the grouping by identical columns.
pub type EquivalenceClasses = Partition;

/// Classes of mutually ordered targets. Each class is named by its
/// natural-order-largest member, so `{t0, t1}` is represented by `t1`.
pub fn equivalence_classes(table: &JudgmentTable, alpha: Flexibility) -> EquivalenceClasses {
    let names: Vec<&str> = table.targets().iter().map(|t| t.name.as_str()).collect();
    Partition::group_with(&names, Representative::NaturalMax, |p, q| {
        leq(table, p, q, alpha) && leq(table, q, p, alpha)
    })
}

/// The order restricted to class representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMatrix {
    /// Target indices of the representatives, in natural order of their names.
    pub reps: Vec<usize>,
    /// `bits.get(a, b)` is `Ord(reps[a], reps[b])`.
    pub bits: BoolMatrix,
}

impl OrderMatrix {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.bits.get(a, b)
    }

    pub fn position_of(&self, target: usize) -> Option<usize> {
        self.reps.iter().position(|&r| r == target)
    }
}

/// The full order analysis: classes plus the verified order on their
/// representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderAnalysis {
    pub classes: EquivalenceClasses,
    pub matrix: OrderMatrix,
}

/// Builds and verifies the order matrix over class representatives.
pub fn order_matrix(table: &JudgmentTable, alpha: Flexibility) -> Result<OrderMatrix, OrderError> {
    analyze_order(table, alpha, Execution::default()).map(|o| o.matrix)
}

/// [`equivalence_classes`] followed by the order on the representatives,
/// verified with [`verify_partial_order`].
pub fn analyze_order(
    table: &JudgmentTable,
    alpha: Flexibility,
    execution: Execution,
) -> Result<OrderAnalysis, OrderError> {
    let classes = equivalence_classes(table, alpha);
    let reps = classes.representatives();
    let k = reps.len();
    let row = |a: usize| -> Vec<bool> {
        (0..k)
            .map(|b| leq(table, reps[a], reps[b], alpha))
            .collect()
    };
    let rows: Vec<Vec<bool>> = match execution {
        Execution::Serial => (0..k).map(row).collect(),
        Execution::Parallel => (0..k).into_par_iter().map(row).collect(),
    };
    let bits = BoolMatrix::from_rows(&rows).expect("square by construction");
    let matrix = OrderMatrix { reps, bits };
    let diagnostics = verify_partial_order(&matrix.bits);
    if !diagnostics.is_partial_order() {
        return Err(OrderError::NotPartialOrder(diagnostics));
    }
    Ok(OrderAnalysis { classes, matrix })
}

/// Outcome of one axiom check; failures carry a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

/// Results of checking the three partial-order axioms on a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    /// Witness: an element missing its diagonal entry.
    pub reflexive: Check<usize>,
    /// Witness: distinct `(a, b)` related both ways.
    pub antisymmetric: Check<(usize, usize)>,
    /// Witness: `(a, b, c)` with `a~b`, `b~c` but not `a~c`.
    pub transitive: Check<(usize, usize, usize)>,
}

impl Diagnostics {
    pub fn is_partial_order(&self) -> bool {
        self.reflexive.passed() && self.antisymmetric.passed() && self.transitive.passed()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reflexive {
            Check::Pass => write!(f, "reflexive: pass")?,
            Check::Fail(a) => write!(f, "reflexive: fail at {a}")?,
        }
        match self.antisymmetric {
            Check::Pass => write!(f, "; antisymmetric: pass")?,
            Check::Fail((a, b)) => write!(f, "; antisymmetric: fail at ({a}, {b})")?,
        }
        match self.transitive {
            Check::Pass => write!(f, "; transitive: pass"),
            Check::Fail((a, b, c)) => write!(f, "; transitive: fail at ({a}, {b}, {c})"),
        }
    }
}

/// Checks reflexivity, anti-symmetry and transitivity, reporting the first
/// counterexample (in index order) for each failing axiom.
pub fn verify_partial_order(relation: &BoolMatrix) -> Diagnostics {
    let n = relation.size();
    let reflexive = match (0..n).find(|&a| !relation.get(a, a)) {
        Some(a) => Check::Fail(a),
        None => Check::Pass,
    };
    let antisymmetric = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| relation.get(a, b) && relation.get(b, a))
        .map_or(Check::Pass, Check::Fail);
    let mut transitive = Check::Pass;
    'outer: for a in 0..n {
        for b in 0..n {
            if !relation.get(a, b) {
                continue;
            }
            for c in 0..n {
                if relation.get(b, c) && !relation.get(a, c) {
                    transitive = Check::Fail((a, b, c));
                    break 'outer;
                }
            }
        }
    }
    Diagnostics {
        reflexive,
        antisymmetric,
        transitive,
    }
}
