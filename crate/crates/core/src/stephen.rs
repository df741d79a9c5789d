//! Stephen's procedure: P-expansions iterated to closure, Schützenberger
//! automata, language membership and the word problem.
//!
//! A full expansion snapshots every unsaturated segment of the current
//! graph, sews the missing side across each of them and only then folds.
//! Segments that appear while sewing wait for the next full expansion.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::adian_analysis::{classify, DecidableClass};
use crate::presentation::{Presentation, Word};
use crate::word_graph::{BirootedGraph, GraphError, Segment, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StephenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("segment is no longer unsaturated")]
    Stale,
    #[error("membership needs a closed automaton")]
    NotClosed,
    #[error("budget limits must be positive")]
    InvalidBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        })
    }
}

pub(crate) fn side_word(p: &Presentation, relation: usize, side: Side) -> &Word {
    let r = &p.relations()[relation];
    match side {
        Side::Lhs => r.lhs(),
        Side::Rhs => r.rhs(),
    }
}

/// A path labelled by one side of a relation whose other side cannot be
/// read between the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsaturatedSegment {
    pub segment: Segment,
    pub relation: usize,
    /// The side that labels `segment`.
    pub side: Side,
}

impl UnsaturatedSegment {
    /// The side that has to be sewn on.
    pub fn missing<'p>(&self, p: &'p Presentation) -> &'p Word {
        side_word(p, self.relation, self.side.opposite())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    max_full_expansions: usize,
    max_vertices: usize,
}

impl Budget {
    pub fn new(max_full_expansions: usize, max_vertices: usize) -> Result<Budget, StephenError> {
        if max_full_expansions == 0 || max_vertices == 0 {
            return Err(StephenError::InvalidBudget);
        }
        Ok(Budget {
            max_full_expansions,
            max_vertices,
        })
    }

    pub fn max_full_expansions(&self) -> usize {
        self.max_full_expansions
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_full_expansions: 64,
            max_vertices: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionStep {
    /// 1-based.
    pub index: usize,
    pub expanded: Vec<UnsaturatedSegment>,
    /// Vertex merges performed by the fold that ended the step.
    pub merges: usize,
    pub vertices_after: usize,
    pub edges_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionTrace {
    pub steps: Vec<ExpansionStep>,
    pub closed: bool,
}

/// One line per step, `step <n> expanded <k> vertices <V> edges <E>`, then
/// `closed` or `budget-exceeded`.
impl fmt::Display for ExpansionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(
                f,
                "step {} expanded {} vertices {} edges {}",
                s.index,
                s.expanded.len(),
                s.vertices_after,
                s.edges_after
            )?;
        }
        writeln!(f, "{}", if self.closed { "closed" } else { "budget-exceeded" })
    }
}

// Unchecked scan; the caller guarantees determinism.
pub(crate) fn scan_unsaturated(g: &BirootedGraph, p: &Presentation) -> Vec<UnsaturatedSegment> {
    let mut seen: BTreeSet<(VertexId, VertexId, &Word)> = BTreeSet::new();
    let mut out = Vec::new();
    for v in g.vertices() {
        for (i, _) in p.relations().iter().enumerate() {
            for side in [Side::Lhs, Side::Rhs] {
                let present = side_word(p, i, side);
                let Some(segment) = g.walk_path(v, present) else { continue };
                let missing = side_word(p, i, side.opposite());
                if g.walk(v, missing.iter()) == Some(segment.to()) {
                    continue;
                }
                if seen.insert((v, segment.to(), missing)) {
                    out.push(UnsaturatedSegment {
                        segment,
                        relation: i,
                        side,
                    });
                }
            }
        }
    }
    out
}

/// Every unsaturated segment of `g`, ordered by (start vertex, relation,
/// side). A segment is reported once per (endpoints, missing word).
pub fn find_unsaturated(g: &BirootedGraph, p: &Presentation) -> Result<Vec<UnsaturatedSegment>, StephenError> {
    if !g.is_deterministic() {
        return Err(GraphError::NotDeterministic.into());
    }
    Ok(scan_unsaturated(g, p))
}

fn still_unsaturated(g: &BirootedGraph, u: &UnsaturatedSegment, p: &Presentation) -> Option<(VertexId, VertexId)> {
    let from = g.resolve(u.segment.from());
    let to = g.resolve(u.segment.to());
    let present = side_word(p, u.relation, u.side);
    if g.walk(from, present.iter()) != Some(to) || g.walk(from, u.missing(p).iter()) == Some(to) {
        return None;
    }
    Some((from, to))
}

/// Sews the missing side across `u` and folds. Returns the sewn segment
/// (in pre-fold ids) and the number of merges.
pub fn elementary_expansion(
    g: &mut BirootedGraph,
    u: &UnsaturatedSegment,
    p: &Presentation,
) -> Result<(Segment, usize), StephenError> {
    let (from, to) = still_unsaturated(g, u, p).ok_or(StephenError::Stale)?;
    let sewn = g.sew_segment(from, to, u.missing(p))?;
    let merges = g.fold();
    Ok((sewn, merges))
}

/// Result of one full expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullExpansion {
    pub expanded: Vec<UnsaturatedSegment>,
    /// The segments sewn on, in the same order, with pre-fold ids.
    pub sewn: Vec<Segment>,
    pub merges: usize,
}

/// Expands every unsaturated segment present in `g`, then folds.
pub fn full_expansion(g: &mut BirootedGraph, p: &Presentation) -> Result<FullExpansion, StephenError> {
    let expanded = find_unsaturated(g, p)?;
    Ok(expand_all(g, p, expanded))
}

pub(crate) fn expand_all(g: &mut BirootedGraph, p: &Presentation, expanded: Vec<UnsaturatedSegment>) -> FullExpansion {
    let sewn = expanded
        .iter()
        .map(|u| {
            g.sew_segment(u.segment.from(), u.segment.to(), u.missing(p))
                .expect("segment endpoints are live before folding")
        })
        .collect();
    let merges = g.fold();
    FullExpansion {
        expanded,
        sewn,
        merges,
    }
}

/// A (possibly partial) Schützenberger automaton with the trace that built it.
#[derive(Clone, Debug)]
pub struct SchutzenbergerAutomaton {
    pub word: Word,
    pub graph: BirootedGraph,
    pub trace: ExpansionTrace,
}

impl SchutzenbergerAutomaton {
    pub fn is_closed(&self) -> bool {
        self.trace.closed
    }
}

/// Construction stopped before closure. Carries the partial automaton.
#[derive(Clone, Debug, Error)]
#[error("budget exceeded after {} full expansions ({} vertices)", .0.trace.steps.len(), .0.graph.vertex_count())]
pub struct BudgetExceeded(pub Box<SchutzenbergerAutomaton>);

/// Iterates full expansions from the folded linear graph of `w` until the
/// graph is closed or the budget runs out.
pub fn schutzenberger(w: &Word, p: &Presentation, budget: Budget) -> Result<SchutzenbergerAutomaton, BudgetExceeded> {
    schutzenberger_observed(w, p, budget, |_, _| {})
}

/// As [`schutzenberger`], calling `observe` on the folded linear graph
/// (with `None`) and after every full expansion.
pub fn schutzenberger_observed(
    w: &Word,
    p: &Presentation,
    budget: Budget,
    mut observe: impl FnMut(&BirootedGraph, Option<&ExpansionStep>),
) -> Result<SchutzenbergerAutomaton, BudgetExceeded> {
    let mut graph = BirootedGraph::linear(w);
    graph.fold();
    observe(&graph, None);
    let mut trace = ExpansionTrace::default();
    loop {
        let pending = scan_unsaturated(&graph, p);
        if pending.is_empty() {
            trace.closed = true;
            return Ok(SchutzenbergerAutomaton {
                word: w.clone(),
                graph,
                trace,
            });
        }
        if trace.steps.len() >= budget.max_full_expansions || graph.vertex_count() > budget.max_vertices {
            return Err(BudgetExceeded(Box::new(SchutzenbergerAutomaton {
                word: w.clone(),
                graph,
                trace,
            })));
        }
        let full = expand_all(&mut graph, p, pending);
        let step = ExpansionStep {
            index: trace.steps.len() + 1,
            expanded: full.expanded,
            merges: full.merges,
            vertices_after: graph.vertex_count(),
            edges_after: graph.edge_count(),
        };
        observe(&graph, Some(&step));
        trace.steps.push(step);
    }
}

/// Closes the linear graph of `w` one elementary expansion at a time,
/// letting `pick` choose both the next unsaturated segment and the fold
/// order. Returns `None` if `max_expansions` is reached first.
pub fn schutzenberger_by_elementary_expansions(
    w: &Word,
    p: &Presentation,
    max_expansions: usize,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Option<BirootedGraph> {
    let mut graph = BirootedGraph::linear(w);
    graph.fold_by(pick);
    for _ in 0..=max_expansions {
        let pending = scan_unsaturated(&graph, p);
        if pending.is_empty() {
            return Some(graph);
        }
        let u = &pending[pick(pending.len()).min(pending.len() - 1)];
        graph
            .sew_segment(u.segment.from(), u.segment.to(), u.missing(p))
            .expect("fresh segment endpoints are live");
        graph.fold_by(pick);
    }
    None
}

/// `w ∈ L(u)` for the closed automaton of `u`.
pub fn membership(w: &Word, automaton: &SchutzenbergerAutomaton) -> Result<bool, StephenError> {
    if !automaton.is_closed() {
        return Err(StephenError::NotClosed);
    }
    let g = &automaton.graph;
    Ok(g.read_word(g.start(), w)? == Some(g.end()))
}

/// Answer available from a partial automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproxMembership {
    /// `w` labels a start-to-end path, so `w ≥ u` in the natural order.
    YesGeq,
    Unknown,
}

pub fn approx_membership(w: &Word, g: &BirootedGraph) -> Result<ApproxMembership, StephenError> {
    Ok(if g.read_word(g.start(), w)? == Some(g.end()) {
        ApproxMembership::YesGeq
    } else {
        ApproxMembership::Unknown
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
    BudgetExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::NotEqual => "not-equal",
            Verdict::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    pub trace_u: ExpansionTrace,
    pub trace_v: ExpansionTrace,
    /// The presentation lies in a class whose word problem is known to be
    /// decidable, so closure is guaranteed given enough budget.
    pub guaranteed: bool,
}

/// `u = v` iff `u ∈ L(v)` and `v ∈ L(u)`.
pub fn verdict_between(a_u: &SchutzenbergerAutomaton, a_v: &SchutzenbergerAutomaton) -> Verdict {
    match (membership(&a_u.word, a_v), membership(&a_v.word, a_u)) {
        (Ok(true), Ok(true)) => Verdict::Equal,
        (Ok(_), Ok(_)) => Verdict::NotEqual,
        _ => Verdict::BudgetExceeded,
    }
}

/// True for the free presentation and for one-relation presentations in
/// one of the decidable classes.
pub fn decidability_guaranteed(p: &Presentation) -> bool {
    match p.relations().len() {
        0 => true,
        1 => classify(p).is_ok_and(|c| c.decidable_class != DecidableClass::Unknown),
        _ => false,
    }
}

fn build(w: &Word, p: &Presentation, budget: Budget) -> SchutzenbergerAutomaton {
    schutzenberger(w, p, budget).unwrap_or_else(|e| *e.0)
}

/// Decides `u = v` in `Inv<X | R>`. Both automata are built concurrently.
pub fn decide_equal(u: &Word, v: &Word, p: &Presentation, budget: Budget) -> DecisionOutcome {
    let (a_u, a_v) = rayon::join(|| build(u, p, budget), || build(v, p, budget));
    DecisionOutcome {
        verdict: verdict_between(&a_u, &a_v),
        trace_u: a_u.trace,
        trace_v: a_v.trace,
        guaranteed: decidability_guaranteed(p),
    }
}

/// Decides whether `w` is idempotent, i.e. `w = ww`.
pub fn is_idempotent(w: &Word, p: &Presentation, budget: Budget) -> DecisionOutcome {
    decide_equal(w, &w.concat(w), p, budget)
}
