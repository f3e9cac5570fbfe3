//! Knowledge structures over explicit families of states: the states
//! containing an item, the surmise quasi-order, equally informative items,
//! and the discriminative reduction.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::relation::{BoolMatrix, Partition, Representative};
use crate::table::{check_name, JudgmentTable, NameProblem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KstError {
    #[error("item name at position {position} is invalid: {reason}")]
    InvalidItemName {
        position: usize,
        reason: NameProblem,
    },
    #[error("duplicate item name {0:?}")]
    DuplicateItem(String),
    #[error("state refers to item {index}, but the ground set has {len} items")]
    ItemOutOfRange { index: usize, len: usize },
    #[error("unknown item {0:?}")]
    UnknownItem(String),
}

/// A set of items (indices into the ground set), kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnowledgeState {
    members: Vec<usize>,
}

impl KnowledgeState {
    pub fn empty() -> Self {
        KnowledgeState {
            members: Vec::new(),
        }
    }

    pub fn full(size: usize) -> Self {
        KnowledgeState {
            members: (0..size).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, item: usize) -> bool {
        self.members.binary_search(&item).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl FromIterator<usize> for KnowledgeState {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let set: BTreeSet<usize> = iter.into_iter().collect();
        KnowledgeState {
            members: set.into_iter().collect(),
        }
    }
}

/// A ground set of named items together with a family of distinct states.
///
/// States are kept in a canonical order: by size, then lexicographically by
/// member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeStructure {
    ground: Vec<String>,
    states: Vec<KnowledgeState>,
    completed: bool,
}

impl KnowledgeStructure {
    /// Builds an (uncompleted) structure. Duplicate states collapse to one.
    pub fn new<S: AsRef<str>>(
        ground: &[S],
        states: impl IntoIterator<Item = KnowledgeState>,
    ) -> Result<Self, KstError> {
        let mut names: Vec<String> = Vec::with_capacity(ground.len());
        for (position, name) in ground.iter().enumerate() {
            let name = name.as_ref();
            check_name(name).map_err(|reason| KstError::InvalidItemName { position, reason })?;
            if names.iter().any(|n| n == name) {
                return Err(KstError::DuplicateItem(name.to_owned()));
            }
            names.push(name.to_owned());
        }
        let mut family = BTreeSet::new();
        for state in states {
            if let Some(&index) = state.members.iter().find(|&&i| i >= names.len()) {
                return Err(KstError::ItemOutOfRange {
                    index,
                    len: names.len(),
                });
            }
            family.insert(state);
        }
        let mut structure = KnowledgeStructure {
            ground: names,
            states: family.into_iter().collect(),
            completed: false,
        };
        structure.canonicalize();
        Ok(structure)
    }

    /// One state per distinct model row: the targets that model judged
    /// correctly. With `complete`, the empty set and the full target set are
    /// added when absent.
    pub fn from_table(table: &JudgmentTable, complete: bool) -> Self {
        let ground: Vec<String> = table.targets().iter().map(|t| t.name.clone()).collect();
        let states: BTreeSet<KnowledgeState> = (0..table.model_count())
            .map(|i| {
                let row = table.row(i).expect("row index in range");
                row.iter()
                    .enumerate()
                    .filter(|(_, &c)| c)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let mut structure = KnowledgeStructure {
            ground,
            states: states.into_iter().collect(),
            completed: false,
        };
        structure.canonicalize();
        if complete {
            structure.complete()
        } else {
            structure
        }
    }

    /// Adds the empty state and the full state if either is missing.
    pub fn complete(mut self) -> Self {
        let empty = KnowledgeState::empty();
        let full = KnowledgeState::full(self.ground.len());
        for s in [empty, full] {
            if !self.states.contains(&s) {
                self.states.push(s);
            }
        }
        self.completed = true;
        self.canonicalize();
        self
    }

    fn canonicalize(&mut self) {
        self.states.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members.cmp(&b.members))
        });
        self.states.dedup();
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn states(&self) -> &[KnowledgeState] {
        &self.states
    }

    pub fn is_completed(&self) -> bool {
        self.completed
    }

    pub fn item_index(&self, name: &str) -> Result<usize, KstError> {
        self.ground
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| KstError::UnknownItem(name.to_owned()))
    }

    /// The states that contain `item`.
    pub fn states_containing(&self, item: usize) -> Result<Vec<&KnowledgeState>, KstError> {
        if item >= self.ground.len() {
            return Err(KstError::ItemOutOfRange {
                index: item,
                len: self.ground.len(),
            });
        }
        Ok(self.states.iter().filter(|s| s.contains(item)).collect())
    }

    /// The surmise relation: entry `(p, q)` holds when `p` belongs to every
    /// state containing `q`. Reflexive and transitive.
    ///
    /// An item contained in no state surmises every item (the intersection
    /// over an empty family is the whole ground set).
    pub fn surmise(&self) -> BoolMatrix {
        let n = self.ground.len();
        BoolMatrix::from_fn(n, |p, q| {
            self.states.iter().all(|s| !s.contains(q) || s.contains(p))
        })
    }

    /// Partition of the ground set into concepts: items contained in exactly
    /// the same states. Each concept is named by its natural-order-smallest
    /// item.
    pub fn equally_informative(&self) -> Partition {
        Partition::group_by(&self.ground, Representative::NaturalMin, |item| {
            self.states
                .iter()
                .map(|s| s.contains(item))
                .collect::<Vec<bool>>()
        })
    }

    pub fn is_discriminative(&self) -> bool {
        self.equally_informative().is_discrete()
    }

    /// Quotient by [`equally_informative`](Self::equally_informative). Ground
    /// items of the result are the concept representatives, in concept order.
    pub fn discriminative_reduction(&self) -> KnowledgeStructure {
        let concepts = self.equally_informative();
        let ground: Vec<String> = concepts
            .representatives()
            .into_iter()
            .map(|r| self.ground[r].clone())
            .collect();
        let states: BTreeSet<KnowledgeState> = self
            .states
            .iter()
            .map(|s| s.members.iter().map(|&m| concepts.block_of(m)).collect())
            .collect();
        let mut reduced = KnowledgeStructure {
            ground,
            states: states.into_iter().collect(),
            completed: self.completed,
        };
        reduced.canonicalize();
        reduced
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{five_item_structure, table4};

    fn state(s: &KnowledgeStructure, names: &str) -> KnowledgeState {
        names
            .chars()
            .map(|c| s.item_index(&c.to_string()).unwrap())
            .collect()
    }

    #[test]
    fn table4_structure_has_fourteen_states() {
        let t = table4();
        let raw = KnowledgeStructure::from_table(&t, false);
        assert_eq!(raw.states().len(), 12);
        assert!(!raw.states().contains(&KnowledgeState::empty()));
        assert!(!raw.states().contains(&KnowledgeState::full(10)));
        let full = KnowledgeStructure::from_table(&t, true);
        assert_eq!(full.states().len(), 14);
        assert!(full.is_completed());
    }

    #[test]
    fn completion_of_single_all_correct_model() {
        let t = JudgmentTable::build(&["a", "b"], &["M1"], &[vec![1, 1]]).unwrap();
        let s = KnowledgeStructure::from_table(&t, true);
        assert_eq!(
            s.states(),
            &[KnowledgeState::empty(), KnowledgeState::full(2)]
        );
    }

    #[test]
    fn identical_rows_collapse() {
        let t =
            JudgmentTable::build(&["a", "b"], &["M1", "M2"], &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(KnowledgeStructure::from_table(&t, false).states().len(), 1);
    }

    #[test]
    fn states_containing_items() {
        let s = five_item_structure();
        let d = s.states_containing(s.item_index("d").unwrap()).unwrap();
        assert_eq!(d, vec![&state(&s, "abcd"), &state(&s, "abcde")]);
        let b = s.states_containing(s.item_index("b").unwrap()).unwrap();
        assert_eq!(b.len(), 5);
        assert!(s.states_containing(5).is_err());
        assert_eq!(s.item_index("z"), Err(KstError::UnknownItem("z".into())));

        let lonely = KnowledgeStructure::new(&["a", "b"], [state_of(&[0])]).unwrap();
        assert!(lonely.states_containing(1).unwrap().is_empty());
    }

    fn state_of(items: &[usize]) -> KnowledgeState {
        items.iter().copied().collect()
    }

    #[test]
    fn surmise_on_worked_example() {
        let s = five_item_structure();
        let rel = s.surmise();
        let idx = |c: &str| s.item_index(c).unwrap();
        let mut expected: Vec<(usize, usize)> = [
            ("b", "a"),
            ("c", "a"),
            ("b", "c"),
            ("c", "b"),
            ("a", "d"),
            ("b", "d"),
            ("c", "d"),
            ("a", "e"),
            ("b", "e"),
            ("c", "e"),
        ]
        .iter()
        .map(|(p, q)| (idx(p), idx(q)))
        .chain((0..5).map(|i| (i, i)))
        .collect();
        expected.sort_unstable();
        assert_eq!(rel.pairs().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn surmise_extremes() {
        let trivial = KnowledgeStructure::new(&["a", "b", "c"], [])
            .unwrap()
            .complete();
        assert_eq!(trivial.surmise().count(), 9);

        let power = KnowledgeStructure::new(
            &["a", "b", "c", "d"],
            (0u32..16).map(|mask| (0..4).filter(|i| mask >> i & 1 == 1).collect()),
        )
        .unwrap();
        assert_eq!(power.surmise(), BoolMatrix::identity(4));
    }

    #[test]
    fn concepts_of_worked_example() {
        let s = five_item_structure();
        let concepts = s.equally_informative();
        let named: Vec<Vec<&str>> = concepts
            .blocks()
            .iter()
            .map(|b| b.members.iter().map(|&m| s.ground()[m].as_str()).collect())
            .collect();
        assert_eq!(named, vec![vec!["a"], vec!["b", "c"], vec!["d"], vec!["e"]]);
        assert_eq!(s.ground()[concepts.blocks()[1].representative], "b");
        assert!(!s.is_discriminative());
    }

    #[test]
    fn table4_concepts() {
        let s = KnowledgeStructure::from_table(&table4(), true);
        let concepts = s.equally_informative();
        assert_eq!(concepts.len(), 9);
        assert_eq!(concepts.blocks()[0].members, vec![0, 1]);
        assert!(concepts.blocks()[1..].iter().all(|b| b.members.len() == 1));
    }

    #[test]
    fn reduction_of_worked_example() {
        let s = five_item_structure();
        let r = s.discriminative_reduction();
        assert_eq!(r.ground(), &["a", "b", "d", "e"]);
        let names: Vec<String> = r
            .states()
            .iter()
            .map(|st| {
                st.members()
                    .iter()
                    .map(|&m| r.ground()[m].as_str())
                    .collect()
            })
            .collect();
        assert_eq!(names, ["", "b", "ab", "abd", "abe", "abde"]);
        assert!(r.is_discriminative());
        assert!(r.is_completed());
    }

    #[test]
    fn reduction_of_discriminative_structure_is_identity() {
        let s = KnowledgeStructure::new(
            &["a", "b"],
            [state_of(&[]), state_of(&[0]), state_of(&[0, 1])],
        )
        .unwrap();
        assert!(s.is_discriminative());
        assert_eq!(s.discriminative_reduction(), s);
    }

    #[test]
    fn reduction_merging_everything() {
        let s = KnowledgeStructure::new(&["a", "b"], [state_of(&[]), state_of(&[0, 1])]).unwrap();
        let r = s.discriminative_reduction();
        assert_eq!(r.ground(), &["a"]);
        assert_eq!(
            r.states(),
            &[KnowledgeState::empty(), KnowledgeState::full(1)]
        );
    }

    #[test]
    fn single_item_is_discriminative() {
        let s = KnowledgeStructure::new(&["x"], [state_of(&[0])]).unwrap();
        assert!(s.is_discriminative());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            KnowledgeStructure::new(&["a", "a"], []).unwrap_err(),
            KstError::DuplicateItem("a".into())
        );
        assert_eq!(
            KnowledgeStructure::new(&["a"], [state_of(&[3])]).unwrap_err(),
            KstError::ItemOutOfRange { index: 3, len: 1 }
        );
    }
}
