//! Subgraphs of a Schützenberger graph generated by one occurrence of an
//! R-word.
//!
//! Starting from the linear graph of `w`, the first step expands only the
//! chosen occurrence. Every later step expands exactly the unsaturated
//! segments that start or end at an interior vertex of a segment sewn in
//! the previous step. Each step creates one generation of regions.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::presentation::{Presentation, Word};
use crate::stephen::{expand_all, scan_unsaturated, side_word, Budget, Side, UnsaturatedSegment};
use crate::word_graph::{BirootedGraph, Edge, Segment, VertexId};

#[derive(Debug, Clone, Error)]
pub enum DeltaError {
    #[error("'{rword}' does not occur at position {pos} of '{word}'")]
    OccurrenceMismatch { rword: String, word: String, pos: usize },
    #[error("'{0}' is not a side of any relation")]
    NotAnRWord(String),
    #[error("generated subgraph did not close within the budget")]
    BudgetExceeded(Box<DeltaGraph>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub rword: Word,
    /// 1-based, counted left to right including overlapping occurrences.
    pub index: usize,
    /// 0-based letter offset in `w`.
    pub start_pos: usize,
}

/// All occurrences of `r` in `w`, overlapping ones included.
pub fn occurrences(r: &Word, w: &Word) -> Vec<Occurrence> {
    if r.len() > w.len() {
        return Vec::new();
    }
    w.letters()
        .windows(r.len())
        .enumerate()
        .filter(|(_, win)| *win == r.letters())
        .enumerate()
        .map(|(k, (pos, _))| Occurrence {
            rword: r.clone(),
            index: k + 1,
            start_pos: pos,
        })
        .collect()
}

/// A region created by one elementary expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRegion {
    pub generation: usize,
    pub relation: usize,
    /// The unsaturated side that was already present.
    pub existing: Segment,
    /// The side sewn on to complete the relation.
    pub sewn: Segment,
}

impl GenRegion {
    pub fn boundary_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.existing.edges().chain(self.sewn.edges())
    }
}

#[derive(Clone, Debug)]
pub struct DeltaGraph {
    pub occurrence: Occurrence,
    pub graph: BirootedGraph,
    pub regions: Vec<GenRegion>,
    /// Edges of the linear graph of `w`.
    pub linear_edges: BTreeSet<Edge>,
    pub closed: bool,
    pub steps_used: usize,
    /// Vertex merges over the whole construction.
    pub merges: usize,
}

impl DeltaGraph {
    /// Number of regions in each generation, starting with the first.
    pub fn generation_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.steps_used];
        for r in &self.regions {
            sizes[r.generation - 1] += 1;
        }
        sizes
    }

    fn is_linear(&self, e: Edge) -> bool {
        let g = &self.graph;
        self.linear_edges.iter().any(|l| {
            g.resolve(l.source) == g.resolve(e.source)
                && l.label == e.label
                && g.resolve(l.target) == g.resolve(e.target)
        })
    }

    /// True iff some boundary edge of `region` lies on the linear graph of `w`.
    pub fn uses_linear_edge(&self, region: &GenRegion) -> bool {
        region.boundary_edges().any(|e| self.is_linear(e))
    }
}

fn relation_sides(p: &Presentation, rword: &Word) -> Vec<(usize, Side)> {
    let mut out = Vec::new();
    for i in 0..p.relations().len() {
        for side in [Side::Lhs, Side::Rhs] {
            if side_word(p, i, side) == rword {
                out.push((i, side));
            }
        }
    }
    out
}

/// Builds Δ(r_w(i)) for the occurrence `occ` of an R-word in the positive word `w`.
pub fn delta(w: &Word, occ: &Occurrence, p: &Presentation, budget: Budget) -> Result<DeltaGraph, DeltaError> {
    delta_observed(w, occ, p, budget, |_, _| {})
}

/// As [`delta`], calling `observe(n, Δₙ)` for `n = 0, 1, ...`.
pub fn delta_observed(
    w: &Word,
    occ: &Occurrence,
    p: &Presentation,
    budget: Budget,
    mut observe: impl FnMut(usize, &BirootedGraph),
) -> Result<DeltaGraph, DeltaError> {
    let end_pos = occ.start_pos + occ.rword.len();
    if w.factor(occ.start_pos, end_pos).as_ref() != Some(&occ.rword) {
        return Err(DeltaError::OccurrenceMismatch {
            rword: occ.rword.to_string(),
            word: w.to_string(),
            pos: occ.start_pos,
        });
    }
    let sides = relation_sides(p, &occ.rword);
    if sides.is_empty() {
        return Err(DeltaError::NotAnRWord(occ.rword.to_string()));
    }

    let mut graph = BirootedGraph::linear(w);
    let mut merges = graph.fold();
    let linear_edges: BTreeSet<Edge> = graph.edges().collect();
    observe(0, &graph);

    // The linear graph of a positive word is a path with ids 0..=|w|.
    let mut path = Vec::with_capacity(occ.rword.len() + 1);
    let mut v = graph.resolve(VertexId::from_index(occ.start_pos));
    path.push(v);
    for l in occ.rword.iter() {
        v = graph.step(v, l).expect("occurrence lies on the linear path");
        path.push(v);
    }
    let segment = Segment {
        label: occ.rword.clone(),
        vertices: path,
    };
    let mut pending: Vec<UnsaturatedSegment> = sides
        .into_iter()
        .filter(|&(i, side)| graph.walk(segment.from(), side_word(p, i, side.opposite()).iter()) != Some(segment.to()))
        .map(|(relation, side)| UnsaturatedSegment {
            segment: segment.clone(),
            relation,
            side,
        })
        .collect();

    let mut regions = Vec::new();
    let mut steps_used = 0;
    let mut closed = false;
    loop {
        if pending.is_empty() {
            closed = true;
            break;
        }
        if steps_used >= budget.max_full_expansions() || graph.vertex_count() > budget.max_vertices() {
            break;
        }
        steps_used += 1;
        let full = expand_all(&mut graph, p, pending);
        merges += full.merges;
        let mut frontier: HashSet<VertexId> = HashSet::new();
        for (u, sewn) in full.expanded.into_iter().zip(full.sewn) {
            frontier.extend(sewn.interior().iter().map(|&x| graph.resolve(x)));
            regions.push(GenRegion {
                generation: steps_used,
                relation: u.relation,
                existing: u.segment,
                sewn,
            });
        }
        observe(steps_used, &graph);
        pending = scan_unsaturated(&graph, p)
            .into_iter()
            .filter(|u| frontier.contains(&u.segment.from()) || frontier.contains(&u.segment.to()))
            .collect();
    }

    let d = DeltaGraph {
        occurrence: occ.clone(),
        graph,
        regions,
        linear_edges,
        closed,
        steps_used,
        merges,
    };
    if closed {
        Ok(d)
    } else {
        Err(DeltaError::BudgetExceeded(Box::new(d)))
    }
}

/// Vertices at which some R-word can be read both ending and starting.
pub fn special_vertices(g: &BirootedGraph, p: &Presentation) -> Vec<VertexId> {
    let rwords: BTreeSet<&Word> = p.relations().iter().flat_map(|r| [r.lhs(), r.rhs()]).collect();
    g.vertices()
        .filter(|&v| {
            rwords
                .iter()
                .any(|r| g.walk(v, r.iter()).is_some() && g.walk_path_into(v, r).is_some())
        })
        .collect()
}

/// Third-generation regions that use no edge of the linear graph of `w`.
pub fn special_regions(d: &DeltaGraph) -> Vec<&GenRegion> {
    d.regions
        .iter()
        .filter(|r| r.generation == 3 && !d.uses_linear_edge(r))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReportEntry {
    pub rword: Word,
    pub index: usize,
    pub pos: usize,
    pub closed: bool,
    pub steps: usize,
    pub regions: usize,
    pub vertices: usize,
}

/// `<rword> occ=<i> pos=<p> closed=<bool> steps=<n> regions=<k> vertices=<V>`
impl fmt::Display for DeltaReportEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} occ={} pos={} closed={} steps={} regions={} vertices={}",
            self.rword, self.index, self.pos, self.closed, self.steps, self.regions, self.vertices
        )
    }
}

impl From<&DeltaGraph> for DeltaReportEntry {
    fn from(d: &DeltaGraph) -> DeltaReportEntry {
        DeltaReportEntry {
            rword: d.occurrence.rword.clone(),
            index: d.occurrence.index,
            pos: d.occurrence.start_pos,
            closed: d.closed,
            steps: d.steps_used,
            regions: d.regions.len(),
            vertices: d.graph.vertex_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub entries: Vec<DeltaReportEntry>,
    pub all_closed: bool,
}

impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Every occurrence of every R-word in `w`, in relation order.
pub fn rword_occurrences(w: &Word, p: &Presentation) -> Vec<Occurrence> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in p.relations() {
        for side in [r.lhs(), r.rhs()] {
            if seen.insert(side.clone()) {
                out.extend(occurrences(side, w));
            }
        }
    }
    out
}

/// Runs [`delta`] for every R-word occurrence in `w`, in parallel.
pub fn all_deltas_finite(w: &Word, p: &Presentation, budget: Budget) -> DeltaReport {
    let entries: Vec<DeltaReportEntry> = rword_occurrences(w, p)
        .par_iter()
        .map(|occ| match delta(w, occ, p, budget) {
            Ok(d) => DeltaReportEntry::from(&d),
            Err(DeltaError::BudgetExceeded(d)) => DeltaReportEntry::from(d.as_ref()),
            Err(e) => unreachable!("occurrences are valid by construction: {e}"),
        })
        .collect();
    let all_closed = entries.iter().all(|e| e.closed);
    DeltaReport { entries, all_closed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn comm() -> Presentation {
        parse_presentation("a b\nab = ba").unwrap()
    }

    #[test]
    fn occurrence_positions() {
        let word = w("aabbaabb");
        let ab = occurrences(&w("ab"), &word);
        assert_eq!(
            ab.iter().map(|o| (o.index, o.start_pos)).collect::<Vec<_>>(),
            vec![(1, 1), (2, 5)]
        );
        let ba = occurrences(&w("ba"), &word);
        assert_eq!(ba.iter().map(|o| (o.index, o.start_pos)).collect::<Vec<_>>(), vec![(1, 3)]);
        assert_eq!(occurrences(&w("aa"), &w("aaa")).len(), 2);
        assert!(occurrences(&w("aaaa"), &w("aaa")).is_empty());
    }

    #[test]
    fn first_ab_occurrence_generates_three_generations() {
        let p = comm();
        let word = w("aabbaabb");
        let occ = &occurrences(&w("ab"), &word)[0];
        let d = delta(&word, occ, &p, Budget::default()).unwrap();
        assert!(d.closed);
        assert_eq!(d.steps_used, 3);
        assert_eq!(d.generation_sizes(), vec![1, 2, 1]);
        assert_eq!(d.merges, 0);
        assert!(d.regions.iter().all(|r| r.sewn.label.to_string() == "ba"));
    }

    #[test]
    fn occurrence_validation() {
        let p = comm();
        let word = w("aabbaabb");
        let bad = Occurrence {
            rword: w("ab"),
            index: 1,
            start_pos: 0,
        };
        assert!(matches!(delta(&word, &bad, &p, Budget::default()), Err(DeltaError::OccurrenceMismatch { .. })));
        let not_rword = Occurrence {
            rword: w("aa"),
            index: 1,
            start_pos: 0,
        };
        assert!(matches!(delta(&word, &not_rword, &p, Budget::default()), Err(DeltaError::NotAnRWord(_))));
    }

    #[test]
    fn isolated_occurrence_closes_after_one_step() {
        let p = parse_presentation("a b c d e\nab = cd").unwrap();
        let word = w("eabe");
        let occ = &occurrences(&w("ab"), &word)[0];
        let d = delta(&word, occ, &p, Budget::default()).unwrap();
        assert_eq!(d.steps_used, 1);
        assert_eq!(d.regions.len(), 1);
        assert!(special_regions(&d).is_empty());
    }

    #[test]
    fn special_vertices_on_paths() {
        let p = parse_presentation("a b c\naba = cc").unwrap();
        let g = BirootedGraph::linear(&w("cccc"));
        assert_eq!(special_vertices(&g, &p), vec![VertexId::from_index(2)]);
        let g = BirootedGraph::linear(&w("abaaba"));
        assert_eq!(special_vertices(&g, &p), vec![VertexId::from_index(3)]);
        assert!(special_vertices(&BirootedGraph::linear(&w("ab")), &comm()).is_empty());
    }

    #[test]
    fn report_lines() {
        let report = all_deltas_finite(&w("aabbaabb"), &comm(), Budget::default());
        assert!(report.all_closed);
        assert_eq!(report.entries.len(), 3);
        assert!(report.to_string().starts_with("ab occ=1 pos=1 closed=true steps=3 regions=4 vertices=13\n"));

        let empty = all_deltas_finite(&w("aaaa"), &comm(), Budget::default());
        assert!(empty.entries.is_empty());
        assert!(empty.all_closed);
    }
}
