//! Plain-text rendering of a knowledge structure: its states, the states
//! containing each item, the concepts, and the discriminative reduction.
//!
//! The full ground set is written `Q` (and `Q*` after reduction), the empty
//! state `∅`, and reduced items carry a trailing `*`.

use std::fmt::Write;

use crate::kst::{KnowledgeState, KnowledgeStructure};

fn set(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    format!("{{{}}}", items.join(","))
}

fn state_text(structure: &KnowledgeStructure, state: &KnowledgeState, suffix: &str) -> String {
    if state.is_empty() {
        "∅".to_owned()
    } else if state.len() == structure.ground().len() {
        format!("Q{suffix}")
    } else {
        set(state
            .members()
            .iter()
            .map(|&m| format!("{}{suffix}", structure.ground()[m])))
    }
}

fn family_text<'a>(
    structure: &KnowledgeStructure,
    states: impl IntoIterator<Item = &'a KnowledgeState>,
    suffix: &str,
) -> String {
    set(states.into_iter().map(|s| state_text(structure, s, suffix)))
}

pub fn render_structure(structure: &KnowledgeStructure) -> String {
    let mut out = String::new();
    let ground = structure.ground();
    let _ = writeln!(out, "Q = {}", set(ground.iter().cloned()));
    let _ = writeln!(
        out,
        "completed: {}",
        if structure.is_completed() {
            "yes"
        } else {
            "no"
        }
    );
    let _ = writeln!(
        out,
        "K = {}",
        family_text(structure, structure.states(), "")
    );
    for (q, name) in ground.iter().enumerate() {
        let containing = structure.states_containing(q).expect("item index in range");
        let _ = writeln!(out, "K_{name} = {}", family_text(structure, containing, ""));
    }

    let concepts = structure.equally_informative();
    let listed: Vec<String> = concepts
        .blocks()
        .iter()
        .map(|b| {
            format!(
                "{}* = {}",
                ground[b.representative],
                set(b.members.iter().map(|&m| ground[m].clone()))
            )
        })
        .collect();
    let _ = writeln!(out, "concepts: {}", listed.join("; "));
    let _ = writeln!(
        out,
        "discriminative: {}",
        if concepts.is_discrete() { "yes" } else { "no" }
    );

    let reduced = structure.discriminative_reduction();
    let _ = writeln!(
        out,
        "Q* = {}",
        set(reduced.ground().iter().map(|g| format!("{g}*")))
    );
    let _ = writeln!(out, "K* = {}", family_text(&reduced, reduced.states(), "*"));
    out
}
