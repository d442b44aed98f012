use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Opaque vertex id. Ids are stable across reduction passes; traces refer to
/// ids, never to positions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected multigraph: per-pair edge multiplicities, no self-loops.
///
/// Multiplicities saturate at `cap` on construction. Any statement about
/// theta_c minors with c <= cap is invariant under this truncation, so every
/// graph in an instance with parameter c carries `cap = c` (or more).
///
/// Values are immutable in spirit: all algorithm-facing operations are pure
/// functions returning new graphs. The mutating primitives below exist for
/// builders and for trace replay.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    cap: u32,
    adj: BTreeMap<Vertex, BTreeMap<Vertex, u32>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, pairs={}, cap={})", self.vertex_count(), self.pair_count(), self.cap)?;
        for ((u, v), m) in self.edge_pairs() {
            write!(f, " {}-{}", u, v)?;
            if m > 1 {
                write!(f, "x{}", m)?;
            }
        }
        Ok(())
    }
}

impl Multigraph {
    pub fn new(cap: u32) -> Self {
        assert!(cap >= 1, "multiplicity cap must be positive");
        Multigraph { cap, adj: BTreeMap::new() }
    }

    /// Graph with vertices 1..=n and no edges.
    pub fn with_vertices(cap: u32, n: u32) -> Self {
        let mut g = Multigraph::new(cap);
        for i in 1..=n {
            g.add_vertex(Vertex(i));
        }
        g
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    /// Removes `v` and all incident edges. Unknown vertices are ignored.
    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs.keys() {
                if let Some(m) = self.adj.get_mut(u) {
                    m.remove(&v);
                }
            }
        }
    }

    /// Adds `mult` parallel edges between `u` and `v`, saturating at the cap.
    /// Self-loops are dropped. Both endpoints are created if missing.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, mult: u32) {
        if u == v || mult == 0 {
            self.add_vertex(u);
            self.add_vertex(v);
            return;
        }
        self.add_vertex(u);
        self.add_vertex(v);
        let m = (self.edge_mult(u, v) + mult).min(self.cap);
        self.adj.get_mut(&u).unwrap().insert(v, m);
        self.adj.get_mut(&v).unwrap().insert(u, m);
    }

    /// Sets the multiplicity of `{u, v}` exactly (capped); 0 removes the pair.
    pub fn set_edge(&mut self, u: Vertex, v: Vertex, mult: u32) {
        if u == v {
            return;
        }
        self.add_vertex(u);
        self.add_vertex(v);
        let m = mult.min(self.cap);
        if m == 0 {
            self.adj.get_mut(&u).unwrap().remove(&v);
            self.adj.get_mut(&v).unwrap().remove(&u);
        } else {
            self.adj.get_mut(&u).unwrap().insert(v, m);
            self.adj.get_mut(&v).unwrap().insert(u, m);
        }
    }

    pub fn edge_mult(&self, u: Vertex, v: Vertex) -> u32 {
        self.adj.get(&u).and_then(|m| m.get(&v)).copied().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Distinct adjacent vertices of `v`, with multiplicities.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.adj.get(&v).into_iter().flat_map(|m| m.iter().map(|(&u, &c)| (u, c)))
    }

    /// d(v): the number of incident edges, counted with multiplicity.
    pub fn degree(&self, v: Vertex) -> u32 {
        self.adj.get(&v).map(|m| m.values().sum()).unwrap_or(0)
    }

    /// Each unordered pair once, with its multiplicity.
    pub fn edge_pairs(&self) -> impl Iterator<Item = ((Vertex, Vertex), u32)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, m)| m.iter().map(move |(&v, &c)| ((u, v), c)))
            .filter(|((u, v), _)| u < v)
    }

    /// Number of adjacent pairs (parallel edges counted once).
    pub fn pair_count(&self) -> usize {
        self.adj.values().map(|m| m.len()).sum::<usize>() / 2
    }

    /// Number of edges counted with multiplicity.
    pub fn total_multiplicity(&self) -> u64 {
        self.adj.values().flat_map(|m| m.values()).map(|&c| c as u64).sum::<u64>() / 2
    }

    /// An id strictly larger than every vertex currently in the graph.
    pub fn fresh_vertex(&self) -> Vertex {
        Vertex(self.adj.keys().next_back().map(|v| v.0 + 1).unwrap_or(1))
    }

    /// Contracts the edge `{u, v}`: identifies the endpoints (keeping the
    /// smaller id), accumulates parallel edges to common neighbors (capped)
    /// and drops the loop that the contracted edge becomes.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<Multigraph> {
        if self.edge_mult(u, v) == 0 {
            return Err(Error::NotAdjacent(u, v));
        }
        let (keep, gone) = ordered(u, v);
        let mut g = self.clone();
        let nbrs: Vec<(Vertex, u32)> = g.neighbors(gone).collect();
        g.remove_vertex(gone);
        for (w, m) in nbrs {
            if w != keep {
                g.add_edge(keep, w, m);
            }
        }
        Ok(g)
    }

    fn check_subset(&self, s: &BTreeSet<Vertex>) -> Result<()> {
        if s.iter().all(|v| self.has_vertex(*v)) {
            Ok(())
        } else {
            Err(Error::NotASubset)
        }
    }

    /// Subgraph induced by `s`.
    pub fn induced(&self, s: &BTreeSet<Vertex>) -> Result<Multigraph> {
        self.check_subset(s)?;
        let mut g = Multigraph::new(self.cap);
        for &v in s {
            g.add_vertex(v);
        }
        for ((u, v), m) in self.edge_pairs() {
            if s.contains(&u) && s.contains(&v) {
                g.add_edge(u, v, m);
            }
        }
        Ok(g)
    }

    /// The graph with the vertices of `s` deleted. Vertices of `s` absent
    /// from the graph are ignored.
    pub fn without(&self, s: &BTreeSet<Vertex>) -> Multigraph {
        let keep: BTreeSet<Vertex> = self.vertices().filter(|v| !s.contains(v)).collect();
        self.induced(&keep).expect("keep is a subset by construction")
    }

    pub fn without_vertex(&self, v: Vertex) -> Multigraph {
        let mut s = BTreeSet::new();
        s.insert(v);
        self.without(&s)
    }

    /// Connected components, each as a vertex set, in sorted order of their
    /// minimum vertex.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.component_of(v);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, start: Vertex) -> BTreeSet<Vertex> {
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::new();
        comp.insert(start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.neighbors(x) {
                if comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => self.component_of(v).len() == self.vertex_count(),
        }
    }

    /// True if `s` induces a connected, nonempty subgraph.
    pub fn is_connected_set(&self, s: &BTreeSet<Vertex>) -> bool {
        let Some(&start) = s.iter().next() else { return false };
        if !s.iter().all(|v| self.has_vertex(*v)) {
            return false;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::new();
        comp.insert(start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.neighbors(x) {
                if s.contains(&y) && comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        comp.len() == s.len()
    }

    /// Open neighborhood N(s): vertices outside `s` adjacent to `s`.
    pub fn neighborhood(&self, s: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
        self.check_subset(s)?;
        let mut out = BTreeSet::new();
        for &v in s {
            for (u, _) in self.neighbors(v) {
                if !s.contains(&u) {
                    out.insert(u);
                }
            }
        }
        Ok(out)
    }

    /// Boundary of `s` in the graph: the members of `s` with a neighbor
    /// outside `s`.
    pub fn boundary_of(&self, s: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>> {
        self.check_subset(s)?;
        Ok(s.iter()
            .copied()
            .filter(|&v| self.neighbors(v).any(|(u, _)| !s.contains(&u)))
            .collect())
    }

    /// Total multiplicity of edges with one end in `a` and the other in `b`.
    /// The sets are assumed disjoint.
    pub fn cross_multiplicity(&self, a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>) -> u32 {
        let mut total = 0;
        for &v in a {
            for (u, m) in self.neighbors(v) {
                if b.contains(&u) {
                    total += m;
                }
            }
        }
        total
    }

    /// True if the graph contains a cycle; a pair with multiplicity >= 2
    /// counts as one.
    pub fn has_cycle(&self) -> bool {
        if self.edge_pairs().any(|(_, m)| m >= 2) {
            return true;
        }
        let n = self.vertex_count();
        let comps = self.components().len();
        (self.pair_count() + comps) > n
    }

    /// Biconnected blocks: vertex sets of the blocks of the graph. A pair
    /// with multiplicity >= 2 forms a block on its own even where a single
    /// edge would be a bridge.
    pub fn blocks(&self) -> Vec<BTreeSet<Vertex>> {
        let verts: Vec<Vertex> = self.vertices().collect();
        let idx: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = verts.len();
        let mut disc = vec![0usize; n];
        let mut low = vec![0usize; n];
        let mut timer = 1usize;
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut out: Vec<BTreeSet<Vertex>> = Vec::new();

        // Iterative Tarjan over the simple skeleton; multiplicities matter
        // only when cutting blocks off the edge stack.
        for s in 0..n {
            if disc[s] != 0 {
                continue;
            }
            let mut call: Vec<(usize, Option<usize>, Vec<usize>, usize)> = Vec::new();
            let nbrs: Vec<usize> = self.neighbors(verts[s]).map(|(u, _)| idx[&u]).collect();
            disc[s] = timer;
            low[s] = timer;
            timer += 1;
            call.push((s, None, nbrs, 0));
            while let Some((u, parent, nbrs, i)) = call.pop() {
                if i < nbrs.len() {
                    let v = nbrs[i];
                    call.push((u, parent, nbrs.clone(), i + 1));
                    if disc[v] == 0 {
                        stack.push((u, v));
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        let vn: Vec<usize> = self.neighbors(verts[v]).map(|(w, _)| idx[&w]).collect();
                        call.push((v, Some(u), vn, 0));
                    } else if Some(v) != parent && disc[v] < disc[u] {
                        stack.push((u, v));
                        low[u] = low[u].min(disc[v]);
                    } else if Some(v) == parent && self.edge_mult(verts[u], verts[v]) >= 2 {
                        // A parallel edge back to the parent behaves like a
                        // back edge: the pair is 2-edge-connected.
                        low[u] = low[u].min(disc[v]);
                    }
                } else if let Some(p) = parent {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p is an articulation point (or root edge): pop the block.
                        let mut block = BTreeSet::new();
                        while let Some(&(a, b)) = stack.last() {
                            if disc[a] >= disc[u] {
                                block.insert(verts[a]);
                                block.insert(verts[b]);
                                stack.pop();
                            } else {
                                break;
                            }
                        }
                        if let Some(&(a, b)) = stack.last() {
                            if (a, b) == (p, u) {
                                block.insert(verts[a]);
                                block.insert(verts[b]);
                                stack.pop();
                            }
                        }
                        if !block.is_empty() {
                            out.push(block);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Small named graphs used throughout the test suites.
pub mod builders {
    use super::{Multigraph, Vertex};

    pub fn path(cap: u32, n: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(cap, n);
        for i in 1..n {
            g.add_edge(Vertex(i), Vertex(i + 1), 1);
        }
        g
    }

    pub fn cycle(cap: u32, n: u32) -> Multigraph {
        assert!(n >= 3);
        let mut g = path(cap, n);
        g.add_edge(Vertex(n), Vertex(1), 1);
        g
    }

    pub fn complete(cap: u32, n: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(cap, n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                g.add_edge(Vertex(i), Vertex(j), 1);
            }
        }
        g
    }

    /// Star with the center at vertex 1 and `leaves` leaves.
    pub fn star(cap: u32, leaves: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(cap, leaves + 1);
        for i in 2..=(leaves + 1) {
            g.add_edge(Vertex(1), Vertex(i), 1);
        }
        g
    }

    /// Two triangles sharing vertex 1.
    pub fn bowtie(cap: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(cap, 5);
        g.add_edge(Vertex(1), Vertex(2), 1);
        g.add_edge(Vertex(1), Vertex(3), 1);
        g.add_edge(Vertex(2), Vertex(3), 1);
        g.add_edge(Vertex(1), Vertex(4), 1);
        g.add_edge(Vertex(1), Vertex(5), 1);
        g.add_edge(Vertex(4), Vertex(5), 1);
        g
    }

    /// Two vertices joined by `c` parallel edges: theta_c itself.
    pub fn theta(cap: u32, c: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(cap, 2);
        g.add_edge(Vertex(1), Vertex(2), c);
        g
    }
}

#[cfg(test)]
mod tests {
    use super::builders::*;
    use super::*;

    fn vs(ids: &[u32]) -> BTreeSet<Vertex> {
        ids.iter().map(|&i| Vertex(i)).collect()
    }

    #[test]
    fn contract_triangle_gives_digon() {
        let g = cycle(2, 3);
        let h = g.contract_edge(Vertex(1), Vertex(2)).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_mult(Vertex(1), Vertex(3)), 2);
    }

    #[test]
    fn contract_single_edge_drops_loop() {
        let g = path(2, 2);
        let h = g.contract_edge(Vertex(1), Vertex(2)).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.total_multiplicity(), 0);
    }

    #[test]
    fn contract_k4_accumulates_parallels() {
        let g = complete(3, 4);
        let h = g.contract_edge(Vertex(1), Vertex(2)).unwrap();
        assert_eq!(h.vertex_count(), 3);
        let mut mults: Vec<u32> = h.edge_pairs().map(|(_, m)| m).collect();
        mults.sort();
        // 1 absorbs 2: pairs {1,3} and {1,4} doubled, {3,4} single.
        assert_eq!(mults, vec![1, 2, 2]);
    }

    #[test]
    fn contract_missing_edge_errors() {
        let g = Multigraph::with_vertices(2, 3);
        assert!(matches!(g.contract_edge(Vertex(1), Vertex(2)), Err(Error::NotAdjacent(_, _))));
    }

    #[test]
    fn contract_shrinks_by_one_and_never_gains_multiplicity() {
        let g = bowtie(2);
        for ((u, v), m) in g.edge_pairs().collect::<Vec<_>>() {
            let h = g.contract_edge(u, v).unwrap();
            assert_eq!(h.vertex_count(), g.vertex_count() - 1);
            assert!(h.total_multiplicity() <= g.total_multiplicity() - m as u64);
        }
    }

    #[test]
    fn neighborhood_and_boundary_on_path() {
        let g = path(2, 3);
        let s = vs(&[2]);
        assert_eq!(g.neighborhood(&s).unwrap(), vs(&[1, 3]));
        assert_eq!(g.boundary_of(&s).unwrap(), vs(&[2]));
        let all = g.vertex_set();
        assert!(g.neighborhood(&all).unwrap().is_empty());
        assert!(g.boundary_of(&all).unwrap().is_empty());
    }

    #[test]
    fn boundary_on_bowtie() {
        let g = bowtie(2);
        // One triangle minus the shared vertex 1.
        let s = vs(&[2, 3]);
        assert_eq!(g.boundary_of(&s).unwrap(), vs(&[2, 3]));
        assert_eq!(g.neighborhood(&s).unwrap(), vs(&[1]));
    }

    #[test]
    fn neighborhood_rejects_foreign_vertices() {
        let g = path(2, 3);
        assert!(g.neighborhood(&vs(&[9])).is_err());
    }

    #[test]
    fn components_partition_and_are_connected() {
        let mut g = path(2, 3);
        g.add_edge(Vertex(5), Vertex(6), 1);
        g.add_vertex(Vertex(9));
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        let total: usize = comps.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.vertex_count());
        for c in &comps {
            assert!(g.induced(c).unwrap().is_connected());
        }
    }

    #[test]
    fn multiplicity_saturates_at_cap() {
        let mut g = Multigraph::with_vertices(2, 2);
        g.add_edge(Vertex(1), Vertex(2), 5);
        assert_eq!(g.edge_mult(Vertex(1), Vertex(2)), 2);
    }

    #[test]
    fn cycle_detection_counts_digons() {
        assert!(theta(2, 2).has_cycle());
        assert!(!path(2, 4).has_cycle());
        assert!(cycle(2, 5).has_cycle());
        let mut g = path(2, 4);
        g.add_vertex(Vertex(9));
        assert!(!g.has_cycle());
    }

    #[test]
    fn blocks_of_bowtie_are_two_triangles() {
        let g = bowtie(2);
        let blocks = g.blocks();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert_eq!(b.len(), 3);
            assert!(b.contains(&Vertex(1)));
        }
    }

    #[test]
    fn blocks_of_path_are_edges() {
        let g = path(2, 4);
        let blocks = g.blocks();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.len() == 2));
    }
}
