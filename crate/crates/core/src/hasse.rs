//! Covering edges of the order (its transitive reduction) and a layered
//! placement for drawing them.

use thiserror::Error;

use crate::natural::natural_cmp;
use crate::order::{verify_partial_order, Diagnostics, OrderAnalysis};
use crate::relation::BoolMatrix;
use crate::table::JudgmentTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HasseError {
    #[error("input is not a partial order: {0}")]
    NotPartialOrder(Diagnostics),
    #[error("edge set contains a cycle through node {0}")]
    Cycle(usize),
    #[error("edge ({0}, {1}) refers to a missing node")]
    EdgeOutOfRange(usize, usize),
}

/// A class representative and every target it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseNode {
    pub name: String,
    /// Member names in natural order, including `name` itself.
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub nodes: Vec<HasseNode>,
    /// `(lower, upper)` node indices: `lower` is a prerequisite of `upper`
    /// with nothing in between. Sorted by (lower name, upper name).
    pub edges: Vec<(usize, usize)>,
    /// One layer per node.
    pub layers: Vec<usize>,
}

impl HasseDiagram {
    /// Node names grouped by layer, bottom first, each layer in natural order.
    pub fn layer_names(&self) -> Vec<Vec<String>> {
        let depth = self.layers.iter().max().map_or(0, |&m| m + 1);
        let mut out = vec![Vec::new(); depth];
        for (i, &layer) in self.layers.iter().enumerate() {
            out[layer].push(self.nodes[i].name.clone());
        }
        for layer in &mut out {
            layer.sort_by(|a, b| natural_cmp(a, b));
        }
        out
    }

    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(lo, hi)| (self.nodes[lo].name.as_str(), self.nodes[hi].name.as_str()))
            .collect()
    }

    /// Builds the diagram of an order analysis, naming nodes after the table's
    /// targets.
    pub fn from_order(table: &JudgmentTable, analysis: &OrderAnalysis) -> Result<Self, HasseError> {
        let names = |i: usize| table.targets()[i].name.clone();
        let nodes = analysis
            .classes
            .blocks()
            .iter()
            .map(|b| HasseNode {
                name: names(b.representative),
                members: b.members.iter().map(|&m| names(m)).collect(),
            })
            .collect();
        build(nodes, &analysis.matrix.bits)
    }

    /// Builds a diagram over `nodes` from a partial order on them.
    pub fn from_relation(nodes: Vec<HasseNode>, order: &BoolMatrix) -> Result<Self, HasseError> {
        build(nodes, order)
    }
}

fn build(nodes: Vec<HasseNode>, order: &BoolMatrix) -> Result<HasseDiagram, HasseError> {
    assert_eq!(nodes.len(), order.size(), "one node per order element");
    let reduced = transitive_reduction(order)?;
    let mut edges: Vec<(usize, usize)> = reduced.pairs().collect();
    edges.sort_by(|&(a, b), &(c, d)| {
        natural_cmp(&nodes[a].name, &nodes[c].name)
            .then_with(|| natural_cmp(&nodes[b].name, &nodes[d].name))
    });
    let mut diagram = HasseDiagram {
        nodes,
        edges,
        layers: Vec::new(),
    };
    diagram.layers = assign_layers(&diagram)?;
    Ok(diagram)
}

/// Covering pairs of a partial order: `(p, r)` with `p != r`, `p <= r`, and no
/// third element `q` with `p <= q <= r`.
pub fn transitive_reduction(order: &BoolMatrix) -> Result<BoolMatrix, HasseError> {
    let diagnostics = verify_partial_order(order);
    if !diagnostics.is_partial_order() {
        return Err(HasseError::NotPartialOrder(diagnostics));
    }
    let n = order.size();
    Ok(BoolMatrix::from_fn(n, |p, r| {
        p != r
            && order.get(p, r)
            && !(0..n).any(|q| q != p && q != r && order.get(p, q) && order.get(q, r))
    }))
}

/// Longest-path layering: nodes without incoming edges sit on layer 0, every
/// other node one above its highest lower neighbour.
pub fn assign_layers(diagram: &HasseDiagram) -> Result<Vec<usize>, HasseError> {
    let n = diagram.nodes.len();
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(lo, hi) in &diagram.edges {
        if lo >= n || hi >= n {
            return Err(HasseError::EdgeOutOfRange(lo, hi));
        }
        below[hi].push(lo);
        above[lo].push(hi);
        indegree[hi] += 1;
    }

    // Kahn's algorithm; a node is placed once all its lower neighbours are.
    let mut layers = vec![0usize; n];
    let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut placed = 0;
    while let Some(node) = ready.pop() {
        placed += 1;
        layers[node] = below[node]
            .iter()
            .map(|&b| layers[b] + 1)
            .max()
            .unwrap_or(0);
        for &up in &above[node] {
            indegree[up] -= 1;
            if indegree[up] == 0 {
                ready.push(up);
            }
        }
    }
    if placed < n {
        let stuck = (0..n)
            .find(|&i| indegree[i] > 0)
            .expect("some node left unplaced");
        return Err(HasseError::Cycle(stuck));
    }
    Ok(layers)
}

/// Smallest transitive relation containing `relation` (Warshall).
pub fn transitive_closure(relation: &BoolMatrix) -> BoolMatrix {
    let n = relation.size();
    let mut closure = relation.clone();
    for k in 0..n {
        for i in 0..n {
            if !closure.get(i, k) {
                continue;
            }
            for j in 0..n {
                if closure.get(k, j) {
                    closure.set(i, j, true);
                }
            }
        }
    }
    closure
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table4;
    use crate::order::{analyze_order, Execution};
    use crate::table::Flexibility;

    fn node(name: &str) -> HasseNode {
        HasseNode {
            name: name.into(),
            members: vec![name.into()],
        }
    }

    fn chain_closure() -> BoolMatrix {
        BoolMatrix::from_fn(3, |a, b| a <= b)
    }

    #[test]
    fn chain_reduces_to_successors() {
        let r = transitive_reduction(&chain_closure()).unwrap();
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn antichain_has_no_edges() {
        assert_eq!(
            transitive_reduction(&BoolMatrix::identity(4))
                .unwrap()
                .count(),
            0
        );
    }

    #[test]
    fn non_order_is_rejected() {
        let bad = BoolMatrix::from_pairs(2, [(0, 0), (1, 1), (0, 1), (1, 0)]);
        assert!(matches!(
            transitive_reduction(&bad),
            Err(HasseError::NotPartialOrder(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let edges = BoolMatrix::from_pairs(3, [(0, 1), (1, 2)]);
        let c = transitive_closure(&edges);
        assert_eq!(c.pairs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(transitive_closure(&c), c);
        assert_eq!(transitive_closure(&chain_closure()), chain_closure());
    }

    #[test]
    fn layers_of_small_diagrams() {
        let single = HasseDiagram {
            nodes: vec![node("x")],
            edges: vec![],
            layers: vec![],
        };
        assert_eq!(assign_layers(&single).unwrap(), vec![0]);
        let chain =
            HasseDiagram::from_relation(vec![node("a"), node("b"), node("c")], &chain_closure())
                .unwrap();
        assert_eq!(chain.layers, vec![0, 1, 2]);
        assert_eq!(chain.edge_names(), vec![("a", "b"), ("b", "c")]);
    }

    #[test]
    fn cycles_are_reported() {
        let cyclic = HasseDiagram {
            nodes: vec![node("a"), node("b"), node("c")],
            edges: vec![(0, 1), (1, 2), (2, 1)],
            layers: vec![],
        };
        assert_eq!(assign_layers(&cyclic), Err(HasseError::Cycle(1)));
        let dangling = HasseDiagram {
            nodes: vec![node("a")],
            edges: vec![(0, 3)],
            layers: vec![],
        };
        assert_eq!(
            assign_layers(&dangling),
            Err(HasseError::EdgeOutOfRange(0, 3))
        );
    }

    #[test]
    fn table4_diagram() {
        let t = table4();
        let analysis = analyze_order(&t, Flexibility::ZERO, Execution::Serial).unwrap();
        let d = HasseDiagram::from_order(&t, &analysis).unwrap();
        assert_eq!(d.nodes[0].name, "t1");
        assert_eq!(d.nodes[0].members, vec!["t0", "t1"]);
        assert_eq!(
            d.edge_names(),
            vec![
                ("t1", "t4"),
                ("t1", "t6"),
                ("t2", "t3"),
                ("t2", "t9"),
                ("t3", "t8"),
                ("t4", "t7"),
                ("t4", "t9"),
                ("t5", "t3"),
                ("t5", "t9"),
                ("t6", "t2"),
                ("t6", "t5"),
                ("t8", "t7"),
            ]
        );
        assert_eq!(
            d.layer_names(),
            vec![
                vec!["t1"],
                vec!["t4", "t6"],
                vec!["t2", "t5"],
                vec!["t3", "t9"],
                vec!["t8"],
                vec!["t7"]
            ]
        );
        let with_diagonal =
            BoolMatrix::from_pairs(9, d.edges.iter().copied()).union(&BoolMatrix::identity(9));
        assert_eq!(transitive_closure(&with_diagonal), analysis.matrix.bits);
    }
}
