use serde::{Deserialize, Serialize};

use crate::graph::{Multigraph, Vertex};

/// Which reduction produced a trace entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    IrrelevantVertex,
    Flower,
    CExpansion,
    ProtrusionReplace,
}

/// One reduction step, recorded with enough detail to replay it on the
/// original instance: the graph edits are stored explicitly rather than as
/// rule parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleKind,
    /// Vertices deleted by this step (with all incident edges).
    pub deleted_vertices: Vec<Vertex>,
    /// New vertices introduced by this step (protrusion representatives).
    pub added_vertices: Vec<Vertex>,
    /// Pairs whose multiplicity this step sets explicitly (0 deletes).
    pub set_edges: Vec<(Vertex, Vertex, u32)>,
    /// Change to the budget, always <= 0.
    pub k_delta: i64,
}

impl RuleApplication {
    pub fn deletion(rule: RuleKind, vs: Vec<Vertex>, k_delta: i64) -> Self {
        RuleApplication {
            rule,
            deleted_vertices: vs,
            added_vertices: Vec::new(),
            set_edges: Vec::new(),
            k_delta,
        }
    }
}

/// A problem instance: hit all theta_c minors of `graph` by deleting at most
/// `k` vertices. Reductions transform the instance in place and append to
/// `trace`; `k < 0` marks the instance as rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Instance {
    pub graph: Multigraph,
    pub k: i64,
    pub c: u32,
    pub trace: Vec<RuleApplication>,
}

impl Instance {
    pub fn new(graph: Multigraph, k: i64, c: u32) -> Self {
        assert!(c >= 1);
        assert!(graph.cap() >= c, "graph multiplicity cap below c");
        Instance { graph, k, c, trace: Vec::new() }
    }

    pub fn rejected(&self) -> bool {
        self.k < 0
    }

    /// Applies a recorded step to the graph and budget and appends it to the
    /// trace.
    pub fn apply(&mut self, step: RuleApplication) {
        Self::apply_to_graph(&mut self.graph, &step);
        self.k += step.k_delta;
        self.trace.push(step);
    }

    fn apply_to_graph(g: &mut Multigraph, step: &RuleApplication) {
        for &v in &step.deleted_vertices {
            g.remove_vertex(v);
        }
        for &v in &step.added_vertices {
            g.add_vertex(v);
        }
        for &(u, v, m) in &step.set_edges {
            g.set_edge(u, v, m);
        }
    }

    /// Replays a trace against an untouched copy of the original instance.
    /// The result is bit-identical to the instance the trace was recorded on.
    pub fn replay(original: &Instance, trace: &[RuleApplication]) -> Instance {
        let mut inst = original.clone();
        for step in trace {
            inst.apply(step.clone());
        }
        inst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders;

    #[test]
    fn replay_reproduces_instance() {
        let g = builders::bowtie(2);
        let original = Instance::new(g, 2, 2);
        let mut inst = original.clone();
        inst.apply(RuleApplication::deletion(RuleKind::Flower, vec![Vertex(1)], -1));
        let mut step = RuleApplication::deletion(RuleKind::CExpansion, vec![], 0);
        step.set_edges.push((Vertex(2), Vertex(3), 0));
        step.set_edges.push((Vertex(2), Vertex(4), 2));
        inst.apply(step);

        let replayed = Instance::replay(&original, &inst.trace);
        assert_eq!(replayed.graph, inst.graph);
        assert_eq!(replayed.k, inst.k);
    }

    #[test]
    fn k_never_increases() {
        let g = builders::cycle(2, 4);
        let mut inst = Instance::new(g, 1, 2);
        inst.apply(RuleApplication::deletion(RuleKind::Flower, vec![Vertex(1)], -1));
        inst.apply(RuleApplication::deletion(RuleKind::Flower, vec![Vertex(2)], -1));
        assert!(inst.rejected());
        assert!(inst.trace.iter().all(|s| s.k_delta <= 0));
    }
}
