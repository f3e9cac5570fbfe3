//! Synthetic judgment tables generated from a planted prerequisite order, so
//! that hierarchy recovery can be checked against a known answer.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kst::{KnowledgeState, KnowledgeStructure};
use crate::relation::BoolMatrix;
use crate::table::{check_name, JudgmentTable, NameProblem};

/// Largest poset whose downsets are enumerated.
pub const MAX_ELEMENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("poset has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("poset needs at least one element")]
    NoElements,
    #[error("element name at position {position} is invalid: {reason}")]
    InvalidName {
        position: usize,
        reason: NameProblem,
    },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("cover ({0}, {1}) refers to a missing element")]
    CoverOutOfRange(usize, usize),
    #[error("cover ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("covers contain a cycle")]
    Cyclic,
    #[error("model count must be positive")]
    NoModels,
    #[error("{name} {value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
}

/// A ground-truth prerequisite order, given by its covering edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedPoset {
    elements: Vec<String>,
    /// `(lower, upper)`: `lower` is a prerequisite of `upper`.
    covers: Vec<(usize, usize)>,
}

impl PlantedPoset {
    pub fn new<S: AsRef<str>>(
        elements: &[S],
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, SynthError> {
        let mut names: Vec<String> = Vec::with_capacity(elements.len());
        for (position, name) in elements.iter().enumerate() {
            let name = name.as_ref();
            check_name(name).map_err(|reason| SynthError::InvalidName { position, reason })?;
            if names.iter().any(|n| n == name) {
                return Err(SynthError::DuplicateName(name.to_owned()));
            }
            names.push(name.to_owned());
        }
        let n = names.len();
        for &(lo, hi) in &covers {
            if lo >= n || hi >= n {
                return Err(SynthError::CoverOutOfRange(lo, hi));
            }
            if lo == hi {
                return Err(SynthError::SelfLoop(lo));
            }
        }
        let poset = PlantedPoset {
            elements: names,
            covers,
        };
        let reach = crate::hasse::transitive_closure(&poset.cover_matrix());
        if (0..n).any(|i| reach.get(i, i)) {
            return Err(SynthError::Cyclic);
        }
        Ok(poset)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The cover edges as a relation matrix (no diagonal).
    pub fn cover_matrix(&self) -> BoolMatrix {
        BoolMatrix::from_pairs(self.elements.len(), self.covers.iter().copied())
    }

    /// Reflexive-transitive closure of the covers: entry `(a, b)` holds when
    /// `a` is (transitively) a prerequisite of `b`.
    pub fn order(&self) -> BoolMatrix {
        crate::hasse::transitive_closure(
            &self.cover_matrix().union(&BoolMatrix::identity(self.len())),
        )
    }
}

/// Downsets as bit masks over element indices, ascending by mask value.
fn downset_masks(poset: &PlantedPoset) -> Result<Vec<u32>, SynthError> {
    let n = poset.len();
    if n > MAX_ELEMENTS {
        return Err(SynthError::TooLarge(n));
    }
    let mut required = vec![0u32; n];
    for &(lo, hi) in &poset.covers {
        required[hi] |= 1 << lo;
    }
    Ok((0u32..1 << n)
        .filter(|&mask| (0..n).all(|i| mask >> i & 1 == 0 || required[i] & !mask == 0))
        .collect())
}

fn mask_state(mask: u32, n: usize) -> KnowledgeState {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Every subset closed under prerequisites, as a (completed) knowledge
/// structure over the poset's elements.
pub fn all_downsets(poset: &PlantedPoset) -> Result<KnowledgeStructure, SynthError> {
    let n = poset.len();
    let states = downset_masks(poset)?.into_iter().map(|m| mask_state(m, n));
    let structure =
        KnowledgeStructure::new(poset.elements(), states).expect("names validated by PlantedPoset");
    Ok(structure.complete())
}

/// Parameters for [`sample_models`].
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub poset: PlantedPoset,
    pub model_count: usize,
    /// Probability of flipping each cell after sampling.
    pub noise: f64,
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(
        poset: PlantedPoset,
        model_count: usize,
        noise: f64,
        seed: u64,
    ) -> Result<Self, SynthError> {
        if model_count == 0 {
            return Err(SynthError::NoModels);
        }
        check_probability("noise", noise)?;
        Ok(SynthSpec {
            poset,
            model_count,
            noise,
            seed,
        })
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<(), SynthError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(SynthError::Probability { name, value })
    }
}

/// One row per model: a downset drawn uniformly at random, then each cell
/// flipped independently with probability `noise`. Models are named
/// `M1..Mm`. The output depends only on `spec`.
pub fn sample_models(spec: &SynthSpec) -> Result<JudgmentTable, SynthError> {
    if spec.model_count == 0 {
        return Err(SynthError::NoModels);
    }
    check_probability("noise", spec.noise)?;
    let n = spec.poset.len();
    if n == 0 {
        return Err(SynthError::NoElements);
    }
    let masks = downset_masks(&spec.poset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows: Vec<Vec<u8>> = (0..spec.model_count)
        .map(|_| {
            let mask = *masks
                .choose(&mut rng)
                .expect("the empty set is always a downset");
            (0..n)
                .map(|i| {
                    let bit = (mask >> i & 1) as u8;
                    // One draw per cell, whatever the noise level.
                    if rng.gen::<f64>() < spec.noise {
                        1 - bit
                    } else {
                        bit
                    }
                })
                .collect()
        })
        .collect();
    let models: Vec<String> = (1..=spec.model_count).map(|i| format!("M{i}")).collect();
    Ok(JudgmentTable::build(spec.poset.elements(), &models, &rows)
        .expect("generated table is well formed"))
}

/// A random order on `t0..t{n-1}`: each pair `i < j` becomes a prerequisite
/// edge with probability `density`, and the result is reduced to covers.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Result<PlantedPoset, SynthError> {
    if n == 0 {
        return Err(SynthError::NoElements);
    }
    check_probability("density", density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BoolMatrix::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < density {
                edges.set(i, j, true);
            }
        }
    }
    let order = crate::hasse::transitive_closure(&edges).union(&BoolMatrix::identity(n));
    let covers = crate::hasse::transitive_reduction(&order)
        .expect("closure of a forward-only relation is a partial order")
        .pairs()
        .collect();
    let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    PlantedPoset::new(&names, covers)
}
