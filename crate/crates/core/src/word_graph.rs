//! Birooted inverse word graphs.
//!
//! Only positively labelled edges are stored. The inverse edge `(v, x⁻¹, u)`
//! of a stored edge `(u, x, v)` is implied, which makes the involution
//! closure structural: every vertex keeps its outgoing and incoming positive
//! edges, and reading `x⁻¹` at a vertex follows an incoming `x` edge
//! backwards.
//!
//! Vertex ids are allocated monotonically and never reused. When folding
//! merges two vertices the smaller id survives and the larger one is
//! redirected to it, so ids handed out earlier (segment endpoints, region
//! boundaries) can still be resolved with [`BirootedGraph::resolve`].

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::presentation::{Letter, SignedLetter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is not deterministic")]
    NotDeterministic,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn from_index(i: usize) -> VertexId {
        VertexId(u32::try_from(i).expect("vertex index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A stored, positively labelled edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub label: Letter,
    pub target: VertexId,
}

/// A path sewn onto or read in a graph. `vertices` has `label.len() + 1`
/// entries, the first being `from` and the last `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub label: Word,
    pub vertices: Vec<VertexId>,
}

impl Segment {
    pub fn from(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn to(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[VertexId] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }

    /// The segment's steps as `(from, signed label, to)`.
    pub fn steps(&self) -> impl Iterator<Item = (VertexId, SignedLetter, VertexId)> + '_ {
        self.label
            .iter()
            .enumerate()
            .map(move |(i, l)| (self.vertices[i], l, self.vertices[i + 1]))
    }

    /// The stored positive edges traversed by the segment.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.steps().map(|(u, l, v)| {
            if l.inverse {
                Edge {
                    source: v,
                    label: l.letter,
                    target: u,
                }
            } else {
                Edge {
                    source: u,
                    label: l.letter,
                    target: v,
                }
            }
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Node {
    // Both sorted by (letter, neighbour) and free of duplicates.
    out: Vec<(Letter, VertexId)>,
    inc: Vec<(Letter, VertexId)>,
}

fn insert_sorted(list: &mut Vec<(Letter, VertexId)>, item: (Letter, VertexId)) -> bool {
    match list.binary_search(&item) {
        Ok(_) => false,
        Err(pos) => {
            list.insert(pos, item);
            true
        }
    }
}

fn remove_sorted(list: &mut Vec<(Letter, VertexId)>, item: (Letter, VertexId)) {
    if let Ok(pos) = list.binary_search(&item) {
        list.remove(pos);
    }
}

fn first_conflict(list: &[(Letter, VertexId)]) -> Option<(VertexId, VertexId)> {
    list.windows(2)
        .find(|w| w[0].0 == w[1].0)
        .map(|w| (w[0].1, w[1].1))
}

fn neighbours_with(list: &[(Letter, VertexId)], letter: Letter) -> impl Iterator<Item = VertexId> + '_ {
    let start = list.partition_point(|&(l, _)| l < letter);
    list[start..]
        .iter()
        .take_while(move |&&(l, _)| l == letter)
        .map(|&(_, v)| v)
}

#[derive(Clone, Debug)]
pub struct BirootedGraph {
    nodes: Vec<Option<Node>>,
    // parent[i] == i for live vertices; merged vertices point at their survivor.
    parent: Vec<VertexId>,
    live: usize,
    start: VertexId,
    end: VertexId,
}

impl BirootedGraph {
    /// A single vertex that is both start and end.
    pub fn trivial() -> BirootedGraph {
        let mut g = BirootedGraph {
            nodes: Vec::new(),
            parent: Vec::new(),
            live: 0,
            start: VertexId(0),
            end: VertexId(0),
        };
        g.add_vertex();
        g
    }

    /// The linear graph of `w`: a simple path of `|w| + 1` vertices from
    /// start to end labelled by `w`. Not folded.
    pub fn linear(w: &Word) -> BirootedGraph {
        let mut g = BirootedGraph::trivial();
        let mut prev = g.start;
        for l in w.iter() {
            let next = g.add_vertex();
            g.add_edge(prev, l, next);
            prev = next;
        }
        g.end = prev;
        g
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    /// Number of stored (positive) edges.
    pub fn edge_count(&self) -> usize {
        self.nodes.iter().flatten().map(|n| n.out.len()).sum()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        matches!(self.nodes.get(v.index()), Some(Some(_)))
    }

    /// Follows merge redirects to the live vertex that `v` became.
    pub fn resolve(&self, mut v: VertexId) -> VertexId {
        while self.parent[v.index()] != v {
            v = self.parent[v.index()];
        }
        v
    }

    fn resolve_compress(&mut self, v: VertexId) -> VertexId {
        let root = self.resolve(v);
        let mut cur = v;
        while self.parent[cur.index()] != root && cur != root {
            let next = self.parent[cur.index()];
            self.parent[cur.index()] = root;
            cur = next;
        }
        root
    }

    /// Live vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_some())
            .map(|(i, _)| VertexId(i as u32))
    }

    /// Stored edges ordered by `(source, label, target)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices().flat_map(move |v| {
            self.node(v).out.iter().map(move |&(label, target)| Edge {
                source: v,
                label,
                target,
            })
        })
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains(e.source)
            && self
                .node(e.source)
                .out
                .binary_search(&(e.label, e.target))
                .is_ok()
    }

    fn node(&self, v: VertexId) -> &Node {
        self.nodes[v.index()].as_ref().expect("live vertex")
    }

    fn node_mut(&mut self, v: VertexId) -> &mut Node {
        self.nodes[v.index()].as_mut().expect("live vertex")
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(u32::try_from(self.nodes.len()).expect("vertex id overflow"));
        self.nodes.push(Some(Node::default()));
        self.parent.push(id);
        self.live += 1;
        id
    }

    /// Adds the edge `(from, label, to)` together with its implied inverse.
    /// Returns false if the edge already existed.
    pub fn add_edge(&mut self, from: VertexId, label: SignedLetter, to: VertexId) -> bool {
        let (s, t) = if label.inverse { (to, from) } else { (from, to) };
        let added = insert_sorted(&mut self.node_mut(s).out, (label.letter, t));
        if added {
            insert_sorted(&mut self.node_mut(t).inc, (label.letter, s));
        }
        added
    }

    /// All vertices reachable from `v` by one step labelled `label`.
    pub fn successors(&self, v: VertexId, label: SignedLetter) -> impl Iterator<Item = VertexId> + '_ {
        let node = self.node(v);
        let list = if label.inverse { &node.inc } else { &node.out };
        neighbours_with(list, label.letter)
    }

    /// One step on a deterministic graph.
    pub fn step(&self, v: VertexId, label: SignedLetter) -> Option<VertexId> {
        self.successors(v, label).next()
    }

    /// Reads `letters` from `from`, taking the first matching edge at each
    /// step. Only meaningful on deterministic graphs.
    pub(crate) fn walk(&self, from: VertexId, letters: impl IntoIterator<Item = SignedLetter>) -> Option<VertexId> {
        letters.into_iter().try_fold(from, |v, l| self.step(v, l))
    }

    /// Like [`walk`](Self::walk) but returns the whole path.
    pub(crate) fn walk_path(&self, from: VertexId, w: &Word) -> Option<Segment> {
        let mut vertices = Vec::with_capacity(w.len() + 1);
        vertices.push(from);
        let mut v = from;
        for l in w.iter() {
            v = self.step(v, l)?;
            vertices.push(v);
        }
        Some(Segment {
            label: w.clone(),
            vertices,
        })
    }

    /// Walks `w` backwards so that the returned path ends at `to`.
    pub(crate) fn walk_path_into(&self, to: VertexId, w: &Word) -> Option<Segment> {
        let mut vertices = Vec::with_capacity(w.len() + 1);
        vertices.push(to);
        let mut v = to;
        for l in w.iter().rev() {
            v = self.step(v, l.invert())?;
            vertices.push(v);
        }
        vertices.reverse();
        Some(Segment {
            label: w.clone(),
            vertices,
        })
    }

    pub fn is_deterministic(&self) -> bool {
        self.nodes
            .iter()
            .flatten()
            .all(|n| first_conflict(&n.out).is_none() && first_conflict(&n.inc).is_none())
    }

    /// The endpoint of the path labelled `w` starting at `from`, if any.
    pub fn read_word(&self, from: VertexId, w: &Word) -> Result<Option<VertexId>, GraphError> {
        if !self.contains(from) {
            return Err(GraphError::UnknownVertex(from));
        }
        if !self.is_deterministic() {
            return Err(GraphError::NotDeterministic);
        }
        Ok(self.walk(from, w.iter()))
    }

    /// Sews a fresh path labelled `w` from `from` to `to`. The interior
    /// vertices are new; no folding is performed.
    pub fn sew_segment(&mut self, from: VertexId, to: VertexId, w: &Word) -> Result<Segment, GraphError> {
        for v in [from, to] {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let mut vertices = Vec::with_capacity(w.len() + 1);
        vertices.push(from);
        let mut prev = from;
        for (i, l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() { to } else { self.add_vertex() };
            self.add_edge(prev, l, next);
            vertices.push(next);
            prev = next;
        }
        Ok(Segment {
            label: w.clone(),
            vertices,
        })
    }

    /// Folds until deterministic. Returns the number of vertex merges.
    pub fn fold(&mut self) -> usize {
        self.fold_by(&mut |_| 0)
    }

    /// Folds until deterministic, letting `pick` choose which pending vertex
    /// to examine next (`pick(n)` must return an index below `n`). The result
    /// does not depend on the choices.
    pub fn fold_by(&mut self, pick: &mut dyn FnMut(usize) -> usize) -> usize {
        let mut pending: Vec<VertexId> = self.vertices().collect();
        pending.reverse();
        let mut queued: Vec<bool> = vec![false; self.nodes.len()];
        for v in &pending {
            queued[v.index()] = true;
        }
        let mut merges = 0;
        while !pending.is_empty() {
            let idx = pick(pending.len()).min(pending.len() - 1);
            let v = pending.swap_remove(idx);
            queued[v.index()] = false;
            if !self.contains(v) {
                continue;
            }
            let node = self.node(v);
            let conflict = first_conflict(&node.out).or_else(|| first_conflict(&node.inc));
            let Some((a, b)) = conflict else { continue };
            let touched = self.merge(a, b);
            merges += 1;
            for t in std::iter::once(v).chain(touched) {
                if !queued[t.index()] && self.contains(t) {
                    queued[t.index()] = true;
                    pending.push(t);
                }
            }
        }
        merges
    }

    /// Identifies `a` and `b`; the smaller id survives. Returns the survivor
    /// and all vertices whose adjacency changed.
    fn merge(&mut self, a: VertexId, b: VertexId) -> Vec<VertexId> {
        let a = self.resolve_compress(a);
        let b = self.resolve_compress(b);
        if a == b {
            return vec![a];
        }
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        let node = self.nodes[gone.index()].take().expect("live vertex");
        self.parent[gone.index()] = keep;
        self.live -= 1;
        if self.start == gone {
            self.start = keep;
        }
        if self.end == gone {
            self.end = keep;
        }

        let mut touched = vec![keep];
        for &(l, t) in &node.out {
            if t != gone {
                remove_sorted(&mut self.node_mut(t).inc, (l, gone));
            }
        }
        for &(l, s) in &node.inc {
            if s != gone {
                remove_sorted(&mut self.node_mut(s).out, (l, gone));
            }
        }
        let redirect = |x: VertexId| if x == gone { keep } else { x };
        for &(l, t) in &node.out {
            let t = redirect(t);
            self.add_edge(keep, l.positive(), t);
            touched.push(t);
        }
        for &(l, s) in &node.inc {
            let s = redirect(s);
            self.add_edge(s, l.positive(), keep);
            touched.push(s);
        }
        touched
    }

    /// True iff some root-preserving, label-preserving bijection maps `self`
    /// onto `other`.
    pub fn iso_birooted(&self, other: &BirootedGraph) -> Result<bool, GraphError> {
        if !self.is_deterministic() || !other.is_deterministic() {
            return Err(GraphError::NotDeterministic);
        }
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.root_morphism(other).is_some())
    }

    /// True iff `self` embeds in `other` by an injective, label-preserving map
    /// sending start to start and end to end.
    pub fn embeds_in(&self, other: &BirootedGraph) -> Result<bool, GraphError> {
        if !self.is_deterministic() || !other.is_deterministic() {
            return Err(GraphError::NotDeterministic);
        }
        Ok(self.root_morphism(other).is_some())
    }

    // Synchronised BFS from the start roots. On connected deterministic
    // graphs the map is forced, so a single traversal decides existence.
    fn root_morphism(&self, other: &BirootedGraph) -> Option<Vec<Option<VertexId>>> {
        let mut image: Vec<Option<VertexId>> = vec![None; self.nodes.len()];
        let mut used: Vec<bool> = vec![false; other.nodes.len()];
        image[self.start.index()] = Some(other.start);
        used[other.start.index()] = true;
        let mut queue = VecDeque::from([self.start]);
        let mut mapped = 1;
        while let Some(x) = queue.pop_front() {
            let fx = image[x.index()].expect("queued vertices are mapped");
            let node = self.node(x);
            let moves = node
                .out
                .iter()
                .map(|&(l, y)| (l.positive(), y))
                .chain(node.inc.iter().map(|&(l, y)| (l.inverse(), y)));
            for (l, y) in moves {
                let fy = other.step(fx, l)?;
                match image[y.index()] {
                    Some(prev) if prev != fy => return None,
                    Some(_) => {}
                    None => {
                        if used[fy.index()] {
                            return None;
                        }
                        used[fy.index()] = true;
                        image[y.index()] = Some(fy);
                        mapped += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        if mapped != self.vertex_count() || image[self.end.index()] != Some(other.end) {
            return None;
        }
        Some(image)
    }

    /// Vertices with no incoming positive edge, and vertices with no outgoing one.
    pub fn sources_and_sinks(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        let sources = self.vertices().filter(|&v| self.node(v).inc.is_empty()).collect();
        let sinks = self.vertices().filter(|&v| self.node(v).out.is_empty()).collect();
        (sources, sinks)
    }

    /// True iff the positive edges contain a directed cycle.
    pub fn has_positive_cycle(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Colour {
            White,
            Grey,
            Black,
        }
        let mut colour = vec![Colour::White; self.nodes.len()];
        for root in self.vertices() {
            if colour[root.index()] != Colour::White {
                continue;
            }
            colour[root.index()] = Colour::Grey;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let out = &self.node(v).out;
                if *next < out.len() {
                    let t = out[*next].1;
                    *next += 1;
                    match colour[t.index()] {
                        Colour::Grey => return true,
                        Colour::White => {
                            colour[t.index()] = Colour::Grey;
                            stack.push((t, 0));
                        }
                        Colour::Black => {}
                    }
                } else {
                    colour[v.index()] = Colour::Black;
                    stack.pop();
                }
            }
        }
        false
    }

    /// Vertices reachable from `from` along positive edges, forwards or backwards.
    pub fn positive_reach(&self, from: VertexId, forwards: bool) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            let node = self.node(v);
            let list = if forwards { &node.out } else { &node.inc };
            for &(_, t) in list {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.start];
        seen[self.start.index()] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let node = self.node(v);
            for &(_, t) in node.out.iter().chain(node.inc.iter()) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    count += 1;
                    stack.push(t);
                }
            }
        }
        count == self.live
    }

    /// Scans the structural invariants: adjacency lists mirror each other
    /// (involution closure), redirects point at live vertices, the roots are
    /// live and the graph is connected.
    pub fn check_invariants(&self) -> Result<(), String> {
        for v in self.vertices() {
            let node = self.node(v);
            for &(l, t) in &node.out {
                if !self.contains(t) {
                    return Err(format!("edge {v} -{l}-> {t} points at a dead vertex"));
                }
                if self.node(t).inc.binary_search(&(l, v)).is_err() {
                    return Err(format!("edge {v} -{l}-> {t} lacks its inverse"));
                }
            }
            for &(l, s) in &node.inc {
                if !self.contains(s) || self.node(s).out.binary_search(&(l, v)).is_err() {
                    return Err(format!("inverse edge {v} -{}-> {s} lacks its positive edge", l.inverse()));
                }
            }
        }
        for i in 0..self.parent.len() {
            if !self.contains(self.resolve(VertexId(i as u32))) {
                return Err(format!("vertex {i} resolves to a dead vertex"));
            }
        }
        if !self.contains(self.start) || !self.contains(self.end) {
            return Err("root is not a live vertex".into());
        }
        if !self.is_connected() {
            return Err("graph is not connected".into());
        }
        Ok(())
    }

    /// GraphViz rendering: one directed edge per stored positive edge, the
    /// start root drawn as a double circle and the end root as a double octagon.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n  rankdir=LR;\n  node [shape=circle];\n");
        for v in self.vertices() {
            let shape = match (v == self.start, v == self.end) {
                (true, true) => Some("tripleoctagon"),
                (true, false) => Some("doublecircle"),
                (false, true) => Some("doubleoctagon"),
                (false, false) => None,
            };
            match shape {
                Some(shape) => writeln!(s, "  {v} [shape={shape}];").unwrap(),
                None => writeln!(s, "  {v};").unwrap(),
            }
        }
        for e in self.edges() {
            writeln!(s, "  {} -> {} [label=\"{}\"];", e.source, e.target, e.label).unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Line-based dump sorted by id: `v <id>`, `e <src> <label> <dst>`, `roots <start> <end>`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for v in self.vertices() {
            writeln!(s, "v {v}").unwrap();
        }
        for e in self.edges() {
            writeln!(s, "e {} {} {}", e.source, e.label, e.target).unwrap();
        }
        writeln!(s, "roots {} {}", self.start, self.end).unwrap();
        s
    }
}

/// The linear graph of `w`.
pub fn linear_graph(w: &Word) -> BirootedGraph {
    BirootedGraph::linear(w)
}

/// Returns a folded copy of `g`.
pub fn fold_to_deterministic(g: &BirootedGraph) -> BirootedGraph {
    let mut g = g.clone();
    g.fold();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn pos(c: char) -> SignedLetter {
        SignedLetter::from_char(c).unwrap()
    }

    #[test]
    fn linear_graph_shapes() {
        let g = linear_graph(&w("aabbaabb"));
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 8);
        assert_ne!(g.start(), g.end());

        let g = linear_graph(&w("a"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        let g = linear_graph(&w("aA"));
        assert_eq!(g.vertex_count(), 3);
        assert!(!g.is_deterministic());
        assert_eq!(g.dump(), "v 0\nv 1\nv 2\ne 0 a 1\ne 2 a 1\nroots 0 2\n");
    }

    #[test]
    fn folding_a_backtrack_merges_the_roots() {
        let mut g = linear_graph(&w("aA"));
        assert_eq!(g.fold(), 1);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.start(), g.end());
        assert_eq!(g.start(), VertexId(0));
        assert_eq!(g.dump(), "v 0\nv 1\ne 0 a 1\nroots 0 0\n");
        assert_eq!(g.resolve(VertexId(2)), VertexId(0));
    }

    #[test]
    fn folding_a_deterministic_graph_is_identity() {
        let g = linear_graph(&w("abc"));
        let f = fold_to_deterministic(&g);
        assert_eq!(f.dump(), g.dump());
        let again = fold_to_deterministic(&f);
        assert_eq!(again.dump(), f.dump());
    }

    #[test]
    fn two_equal_out_edges_merge_their_targets() {
        let mut g = BirootedGraph::trivial();
        let root = g.start();
        let x = g.add_vertex();
        let y = g.add_vertex();
        g.add_edge(root, pos('a'), x);
        g.add_edge(root, pos('a'), y);
        g.add_edge(y, pos('b'), root);
        assert_eq!(g.fold(), 1);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.dump(), "v 0\nv 1\ne 0 a 1\ne 1 b 0\nroots 0 0\n");
    }

    #[test]
    fn folding_cascades() {
        // a a a A A A folds to a single a-path of length 3 with start = end.
        let mut g = linear_graph(&w("aaaAAA"));
        assert_eq!(g.fold(), 3);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.start(), g.end());
        g.check_invariants().unwrap();
    }

    #[test]
    fn reading_words() {
        let g = fold_to_deterministic(&linear_graph(&w("ab")));
        assert_eq!(g.read_word(g.start(), &w("ab")).unwrap(), Some(g.end()));
        assert_eq!(g.read_word(g.start(), &w("ba")).unwrap(), None);
        assert_eq!(g.read_word(g.end(), &w("BA")).unwrap(), Some(g.start()));

        let g = fold_to_deterministic(&linear_graph(&w("aA")));
        assert_eq!(g.read_word(g.start(), &w("aA")).unwrap(), Some(g.start()));

        let nd = linear_graph(&w("aA"));
        assert_eq!(nd.read_word(nd.start(), &w("a")), Err(GraphError::NotDeterministic));
        assert_eq!(g.read_word(VertexId(7), &w("a")), Err(GraphError::UnknownVertex(VertexId(7))));
    }

    #[test]
    fn sewing_a_segment() {
        let mut g = linear_graph(&w("ab"));
        let (s, e) = (g.start(), g.end());
        let seg = g.sew_segment(s, e, &w("ba")).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(seg.from(), s);
        assert_eq!(seg.to(), e);
        assert_eq!(seg.interior(), &[VertexId(3)]);
        assert_eq!(seg.edges().count(), 2);
        assert!(g.is_deterministic());

        let mut g = linear_graph(&w("ab"));
        let v = VertexId(1);
        let seg = g.sew_segment(v, v, &w("c")).unwrap();
        assert!(seg.interior().is_empty());
        assert!(g.contains_edge(Edge { source: v, label: Letter::new('c').unwrap(), target: v }));
        assert!(g.has_positive_cycle());

        assert_eq!(
            g.sew_segment(VertexId(9), v, &w("c")),
            Err(GraphError::UnknownVertex(VertexId(9)))
        );
    }

    #[test]
    fn isomorphism_of_folded_munn_graphs() {
        let g1 = fold_to_deterministic(&linear_graph(&w("aA")));
        let g2 = fold_to_deterministic(&linear_graph(&w("aAaA")));
        assert!(g1.iso_birooted(&g2).unwrap());

        let ab = linear_graph(&w("ab"));
        let ba = linear_graph(&w("ba"));
        assert!(!ab.iso_birooted(&ba).unwrap());
        assert!(ab.iso_birooted(&ab).unwrap());

        let g3 = fold_to_deterministic(&linear_graph(&w("Aa")));
        assert!(!g1.iso_birooted(&g3).unwrap());

        let nd = linear_graph(&w("aA"));
        assert_eq!(nd.iso_birooted(&g1), Err(GraphError::NotDeterministic));
    }

    #[test]
    fn embedding_along_roots() {
        let small = linear_graph(&w("ab"));
        let mut big = linear_graph(&w("ab"));
        let (s, e) = (big.start(), big.end());
        big.sew_segment(s, e, &w("ba")).unwrap();
        assert!(small.embeds_in(&big).unwrap());
        assert!(!big.embeds_in(&small).unwrap());
        assert!(!linear_graph(&w("a")).embeds_in(&small).unwrap());
    }

    #[test]
    fn sources_sinks_and_cycles() {
        let g = linear_graph(&w("ab"));
        assert_eq!(g.sources_and_sinks(), (vec![g.start()], vec![g.end()]));
        assert!(!g.has_positive_cycle());

        let g = fold_to_deterministic(&linear_graph(&w("aA")));
        assert_eq!(g.sources_and_sinks(), (vec![VertexId(0)], vec![VertexId(1)]));

        let mut g = linear_graph(&w("ab"));
        let (s, e) = (g.start(), g.end());
        g.add_edge(e, pos('c'), s);
        assert!(g.has_positive_cycle());
        assert!(!linear_graph(&w("abAB")).has_positive_cycle());
    }

    #[test]
    fn dot_marks_roots() {
        let dot = linear_graph(&w("a")).to_dot();
        assert!(dot.starts_with("digraph G {"));
        assert!(dot.contains("0 [shape=doublecircle];"));
        assert!(dot.contains("1 [shape=doubleoctagon];"));
        assert!(dot.contains("0 -> 1 [label=\"a\"];"));
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn invariants_hold_after_operations() {
        let mut g = linear_graph(&w("abBAabAAb"));
        g.check_invariants().unwrap();
        g.fold();
        g.check_invariants().unwrap();
        assert!(g.is_deterministic());
    }
}
