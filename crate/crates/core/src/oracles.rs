//! Brute-force ground truth: rewriting closure for positive words and
//! Munn graphs for the relation-free case.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::presentation::{Presentation, SignedLetter, Word};
use crate::word_graph::{BirootedGraph, GraphError};

/// Words obtained from `w` by replacing one factor equal to a relation side
/// with the other side.
pub fn rewrite_neighbors(w: &Word, p: &Presentation) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let letters = w.letters();
    for r in p.relations() {
        for (from, to) in [(r.lhs(), r.rhs()), (r.rhs(), r.lhs())] {
            if from.len() > letters.len() {
                continue;
            }
            for pos in 0..=letters.len() - from.len() {
                if &letters[pos..pos + from.len()] == from.letters() {
                    let mut next: Vec<SignedLetter> = Vec::with_capacity(letters.len() - from.len() + to.len());
                    next.extend_from_slice(&letters[..pos]);
                    next.extend_from_slice(to.letters());
                    next.extend_from_slice(&letters[pos + from.len()..]);
                    out.insert(Word::new(next).expect("relation sides are non-empty"));
                }
            }
        }
    }
    out
}

/// Positive words reachable from `center` in at most `radius` rewrites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteBall {
    pub center: Word,
    pub radius: usize,
    pub members: BTreeSet<Word>,
    /// The search ran out of new words before reaching the radius, so
    /// `members` is the whole equivalence class.
    pub complete: bool,
}

impl RewriteBall {
    pub fn new(center: &Word, p: &Presentation, radius: usize) -> RewriteBall {
        let mut members: BTreeSet<Word> = BTreeSet::from([center.clone()]);
        let mut frontier = vec![center.clone()];
        let mut depth = 0;
        while depth < radius && !frontier.is_empty() {
            let next: BTreeSet<Word> = frontier
                .par_iter()
                .map(|w| rewrite_neighbors(w, p))
                .reduce(BTreeSet::new, |mut a, b| {
                    a.extend(b);
                    a
                });
            frontier = next.into_iter().filter(|w| members.insert(w.clone())).collect();
            depth += 1;
        }
        RewriteBall {
            center: center.clone(),
            radius,
            members,
            complete: frontier.is_empty(),
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfsVerdict {
    Equal,
    NotEqualWithinRadius,
}

pub fn positive_equal_bfs(u: &Word, v: &Word, p: &Presentation, radius: usize) -> BfsVerdict {
    if RewriteBall::new(u, p, radius).contains(v) {
        BfsVerdict::Equal
    } else {
        BfsVerdict::NotEqualWithinRadius
    }
}

/// Folded linear graph of a word in the free inverse monoid.
#[derive(Clone, Debug)]
pub struct MunnGraph {
    pub graph: BirootedGraph,
}

impl MunnGraph {
    pub fn new(w: &Word) -> MunnGraph {
        let mut graph = BirootedGraph::linear(w);
        graph.fold();
        MunnGraph { graph }
    }

    pub fn iso(&self, other: &MunnGraph) -> bool {
        match self.graph.iso_birooted(&other.graph) {
            Ok(b) => b,
            Err(GraphError::NotDeterministic | GraphError::UnknownVertex(_)) => {
                unreachable!("folded graphs are deterministic")
            }
        }
    }
}

pub fn munn_equal(u: &Word, v: &Word) -> bool {
    MunnGraph::new(u).iso(&MunnGraph::new(v))
}
