//! Left/right graphs, the Adian (cycle-free) test, and the overlap
//! classification of one-relation presentations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::presentation::{Letter, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("classification needs exactly one relation, found {0}")]
    MultipleRelations(usize),
}

/// Undirected multigraph on the alphabet with one edge per relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideGraph {
    pub nodes: BTreeSet<Letter>,
    pub edges: Vec<(Letter, Letter)>,
}

impl SideGraph {
    /// No self-loops, no parallel edges and no cycles.
    pub fn is_forest(&self) -> bool {
        let index: BTreeMap<Letter, usize> = self.nodes.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut parent: Vec<usize> = (0..index.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, index[&a]);
            let rb = find(&mut parent, index[&b]);
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

fn side_graph(p: &Presentation, pick: impl Fn(&Word) -> Letter) -> SideGraph {
    SideGraph {
        nodes: p.alphabet().letters().collect(),
        edges: p
            .relations()
            .iter()
            .map(|r| (pick(r.lhs()), pick(r.rhs())))
            .collect(),
    }
}

/// Joins the first letters of the two sides of every relation.
pub fn build_left_graph(p: &Presentation) -> SideGraph {
    side_graph(p, |w| w.first().letter)
}

/// Joins the last letters of the two sides of every relation.
pub fn build_right_graph(p: &Presentation) -> SideGraph {
    side_graph(p, |w| w.last().letter)
}

pub fn is_adian(p: &Presentation) -> bool {
    build_left_graph(p).is_forest() && build_right_graph(p).is_forest()
}

/// Length of the longest proper border of every prefix (KMP failure function).
pub(crate) fn border_array(t: &Word) -> Vec<usize> {
    let s = t.letters();
    let mut border = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = border[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i] = k;
    }
    border
}

/// How a self-overlapping word decomposes around its maximal border.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfOverlapForm {
    /// No non-empty proper prefix is also a suffix.
    None,
    /// `t ≡ rootⁿ` with `root` primitive and `n ≥ 2`.
    Power { root: Word, exponent: usize },
    /// `t ≡ x s x`, `x` the maximal border, its two occurrences disjoint.
    Xsx { x: Word, s: Word },
    /// `t ≡ x s x s x` with `xsx` the maximal border.
    Xsxsx { x: Word, s: Word },
    /// `t ≡ (x s)ᵏ x` with `k ≥ 3`; the maximal border `(xs)ᵏ⁻¹x` is not
    /// of the form `xsx` for its own maximal border, so neither of the two
    /// forms above applies.
    Periodic { x: Word, s: Word, repeats: usize },
}

impl SelfOverlapForm {
    pub fn overlaps(&self) -> bool {
        !matches!(self, SelfOverlapForm::None)
    }

    pub fn is_power(&self) -> bool {
        matches!(self, SelfOverlapForm::Power { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SelfOverlapForm::None => "none",
            SelfOverlapForm::Power { .. } => "power",
            SelfOverlapForm::Xsx { .. } => "xsx",
            SelfOverlapForm::Xsxsx { .. } => "xsxsx",
            SelfOverlapForm::Periodic { .. } => "periodic",
        }
    }

    /// Rebuilds the word from its components.
    pub fn reconstruct(&self) -> Option<Word> {
        match self {
            SelfOverlapForm::None => None,
            SelfOverlapForm::Power { root, exponent } => {
                let mut w = root.clone();
                for _ in 1..*exponent {
                    w = w.concat(root);
                }
                Some(w)
            }
            SelfOverlapForm::Xsx { x, s } => Some(x.concat(s).concat(x)),
            SelfOverlapForm::Xsxsx { x, s } => Some(x.concat(s).concat(x).concat(s).concat(x)),
            SelfOverlapForm::Periodic { x, s, repeats } => {
                let xs = x.concat(s);
                let mut w = xs.clone();
                for _ in 1..*repeats {
                    w = w.concat(&xs);
                }
                Some(w.concat(x))
            }
        }
    }
}

/// Decomposes a positive word according to its maximal proper border.
///
/// With `b` the maximal border length and `p = |t| - b` the smallest
/// period: if `p` divides `|t|` the word is a proper power of its
/// primitive root of length `p`. Otherwise `t ≡ (xs)ᵏx` with `|xs| = p`
/// and `|x| = |t| mod p`, and `k` selects the form.
pub fn self_overlap_form(t: &Word) -> SelfOverlapForm {
    let n = t.len();
    let b = border_array(t).last().copied().unwrap_or(0);
    if b == 0 {
        return SelfOverlapForm::None;
    }
    let period = n - b;
    if n.is_multiple_of(period) {
        return SelfOverlapForm::Power {
            root: t.factor(0, period).expect("non-empty period"),
            exponent: n / period,
        };
    }
    let x_len = n % period;
    let repeats = n / period;
    let x = t.factor(0, x_len).expect("non-empty border remainder");
    let s = t.factor(x_len, period).expect("non-empty spacer");
    match repeats {
        1 => SelfOverlapForm::Xsx { x, s },
        2 => SelfOverlapForm::Xsxsx { x, s },
        _ => SelfOverlapForm::Periodic { x, s, repeats },
    }
}

/// Direction of the overlaps between two R-words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossOverlap {
    None,
    /// A non-empty proper suffix of `u` is a prefix of `v`.
    OneWayUv,
    /// A non-empty proper suffix of `v` is a prefix of `u`.
    OneWayVu,
    TwoWay,
}

fn suffix_is_prefix(u: &Word, v: &Word) -> bool {
    (1..u.len())
        .filter(|&k| k <= v.len())
        .any(|k| v.starts_with(&u.letters()[u.len() - k..]))
}

pub fn cross_overlap(u: &Word, v: &Word) -> CrossOverlap {
    match (suffix_is_prefix(u, v), suffix_is_prefix(v, u)) {
        (false, false) => CrossOverlap::None,
        (true, false) => CrossOverlap::OneWayUv,
        (false, true) => CrossOverlap::OneWayVu,
        (true, true) => CrossOverlap::TwoWay,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlapType {
    NoOverlap,
    Type1,
    Type2a,
    Type2b,
    Type3,
    Type4,
}

impl fmt::Display for OverlapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OverlapType::NoOverlap => "none",
            OverlapType::Type1 => "1",
            OverlapType::Type2a => "2a",
            OverlapType::Type2b => "2b",
            OverlapType::Type3 => "3",
            OverlapType::Type4 => "4",
        })
    }
}

/// The classes of one-relation Adian presentations with a decidable word problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecidableClass {
    Class1,
    Class2,
    Class3,
    Class4,
    Unknown,
}

impl fmt::Display for DecidableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecidableClass::Class1 => "1",
            DecidableClass::Class2 => "2",
            DecidableClass::Class3 => "3",
            DecidableClass::Class4 => "4",
            DecidableClass::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_adian: bool,
    pub lhs_subword_of_rhs: bool,
    pub rhs_subword_of_lhs: bool,
    /// `None` when one side is a subword of the other.
    pub overlap_type: Option<OverlapType>,
    pub lhs_form: SelfOverlapForm,
    pub rhs_form: SelfOverlapForm,
    pub decidable_class: DecidableClass,
}

/// `adian=<bool> subword=<none|lhs-in-rhs|rhs-in-lhs> overlap_type=<...> class=<...>`
impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let subword = match (self.lhs_subword_of_rhs, self.rhs_subword_of_lhs) {
            (false, false) => "none",
            (true, false) => "lhs-in-rhs",
            (false, true) => "rhs-in-lhs",
            (true, true) => "both",
        };
        let overlap = self
            .overlap_type
            .map_or_else(|| "n/a".to_string(), |t| t.to_string());
        write!(
            f,
            "adian={} subword={} overlap_type={} class={}",
            self.is_adian, subword, overlap, self.decidable_class
        )
    }
}

fn proper_factors(w: &Word) -> BTreeSet<Word> {
    let n = w.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..=n {
            if j - i < n {
                out.insert(w.factor(i, j).expect("in range"));
            }
        }
    }
    out
}

pub fn classify(p: &Presentation) -> Result<Classification, AnalysisError> {
    let [relation] = p.relations() else {
        return Err(AnalysisError::MultipleRelations(p.relations().len()));
    };
    let (u, v) = (relation.lhs(), relation.rhs());
    let is_adian = is_adian(p);
    let lhs_subword_of_rhs = v.contains_factor(u);
    let rhs_subword_of_lhs = u.contains_factor(v);
    let lhs_form = self_overlap_form(u);
    let rhs_form = self_overlap_form(v);

    let overlap_type = (!lhs_subword_of_rhs && !rhs_subword_of_lhs).then(|| {
        match cross_overlap(u, v) {
            CrossOverlap::TwoWay => OverlapType::Type4,
            CrossOverlap::OneWayUv | CrossOverlap::OneWayVu => OverlapType::Type3,
            CrossOverlap::None => match (lhs_form.overlaps(), rhs_form.overlaps()) {
                (false, false) => OverlapType::NoOverlap,
                (true, false) | (false, true) => OverlapType::Type1,
                (true, true) => {
                    if proper_factors(u).is_disjoint(&proper_factors(v)) {
                        OverlapType::Type2a
                    } else {
                        OverlapType::Type2b
                    }
                }
            },
        }
    });

    let decidable_class = match overlap_type {
        _ if !is_adian => DecidableClass::Unknown,
        Some(OverlapType::NoOverlap) => DecidableClass::Class1,
        Some(OverlapType::Type1) => DecidableClass::Class2,
        Some(OverlapType::Type2a | OverlapType::Type2b)
            if !(lhs_form.is_power() && rhs_form.is_power()) =>
        {
            DecidableClass::Class3
        }
        Some(OverlapType::Type3) if !lhs_form.overlaps() && !rhs_form.overlaps() => DecidableClass::Class4,
        _ => DecidableClass::Unknown,
    };

    Ok(Classification {
        is_adian,
        lhs_subword_of_rhs,
        rhs_subword_of_lhs,
        overlap_type,
        lhs_form,
        rhs_form,
        decidable_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(c: char) -> Letter {
        Letter::new(c).unwrap()
    }

    fn p(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn left_graphs() {
        assert_eq!(build_left_graph(&p("a b\nab=ba")).edges, vec![(l('a'), l('b'))]);
        let g = build_left_graph(&p("a b\nab=abb"));
        assert_eq!(g.edges, vec![(l('a'), l('a'))]);
        assert!(!g.is_forest());
        assert_eq!(build_left_graph(&p("a b c\naba=cc")).edges, vec![(l('a'), l('c'))]);
    }

    #[test]
    fn right_graphs() {
        assert_eq!(build_right_graph(&p("a b\nab=ba")).edges, vec![(l('b'), l('a'))]);
        assert_eq!(build_right_graph(&p("a b c\naba=cc")).edges, vec![(l('a'), l('c'))]);
        let g = build_right_graph(&p("a b\naab=b"));
        assert_eq!(g.edges, vec![(l('b'), l('b'))]);
        assert!(!g.is_forest());
    }

    #[test]
    fn adian_property() {
        assert!(is_adian(&p("a b\nab=ba")));
        assert!(!is_adian(&p("a b\nab=abba")));
        assert!(is_adian(&p("a b c\naba=cc")));
        // Parallel edges close a cycle in the multigraph sense.
        assert!(!is_adian(&p("a b c d\nac=bd\nad=bc")));
        // Left triangle a-b, b-c, c-a.
        assert!(!is_adian(&p("a b c d e f\nad=be\nbf=cd\nce=af")));
        assert!(is_adian(&p("a b c d e f\nad=be\nbf=ce")));
    }

    #[test]
    fn self_overlap_forms() {
        assert_eq!(
            self_overlap_form(&w("abab")),
            SelfOverlapForm::Power { root: w("ab"), exponent: 2 }
        );
        assert_eq!(self_overlap_form(&w("aba")), SelfOverlapForm::Xsx { x: w("a"), s: w("b") });
        assert_eq!(self_overlap_form(&w("ababa")), SelfOverlapForm::Xsxsx { x: w("a"), s: w("b") });
        assert_eq!(self_overlap_form(&w("ab")), SelfOverlapForm::None);
        assert_eq!(self_overlap_form(&w("a")), SelfOverlapForm::None);
        assert_eq!(
            self_overlap_form(&w("aaa")),
            SelfOverlapForm::Power { root: w("a"), exponent: 3 }
        );
        assert_eq!(
            self_overlap_form(&w("abcab")),
            SelfOverlapForm::Xsx { x: w("ab"), s: w("c") }
        );
        // Maximal border ababa overlaps itself twice over; the word is (ab)³a.
        assert_eq!(
            self_overlap_form(&w("abababa")),
            SelfOverlapForm::Periodic { x: w("a"), s: w("b"), repeats: 3 }
        );
    }

    #[test]
    fn cross_overlaps() {
        assert_eq!(cross_overlap(&w("ab"), &w("ba")), CrossOverlap::TwoWay);
        assert_eq!(cross_overlap(&w("aba"), &w("cc")), CrossOverlap::None);
        assert_eq!(cross_overlap(&w("ab"), &w("bc")), CrossOverlap::OneWayUv);
        assert_eq!(cross_overlap(&w("bc"), &w("ab")), CrossOverlap::OneWayVu);
    }

    #[test]
    fn classification_examples() {
        let c = classify(&p("a b c\naba=cc")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::Type2a));
        assert_eq!(c.decidable_class, DecidableClass::Class3);
        assert_eq!(c.to_string(), "adian=true subword=none overlap_type=2a class=3");

        let c = classify(&p("a b\naba=bbb")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::Type2b));

        let c = classify(&p("a b c d\nab=cd")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::NoOverlap));
        assert_eq!(c.decidable_class, DecidableClass::Class1);

        let c = classify(&p("a b\nab=ba")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::Type4));
        assert_eq!(c.decidable_class, DecidableClass::Unknown);

        let c = classify(&p("a b c\nab=bc")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::Type3));
        assert_eq!(c.decidable_class, DecidableClass::Class4);
    }

    #[test]
    fn classification_of_subword_and_power_cases() {
        let c = classify(&p("a b\nab=abb")).unwrap();
        assert!(c.lhs_subword_of_rhs);
        assert_eq!(c.overlap_type, None);
        assert_eq!(c.decidable_class, DecidableClass::Unknown);
        assert_eq!(c.to_string(), "adian=false subword=lhs-in-rhs overlap_type=n/a class=unknown");

        let c = classify(&p("a b\naa=bb")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::Type2a));
        assert_eq!(c.decidable_class, DecidableClass::Unknown);

        let c = classify(&p("a b c\naab=c")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::NoOverlap));

        let c = classify(&p("a b c\naba=c")).unwrap();
        assert_eq!(c.overlap_type, Some(OverlapType::Type1));
        assert_eq!(c.decidable_class, DecidableClass::Class2);
    }

    #[test]
    fn classify_needs_one_relation() {
        assert_eq!(classify(&p("a b")), Err(AnalysisError::MultipleRelations(0)));
        assert_eq!(
            classify(&p("a b c d\nab=cd\nac=bd")),
            Err(AnalysisError::MultipleRelations(2))
        );
    }
}
