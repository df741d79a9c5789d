//! Presentations and words shared by the benchmarks.

use adian::{parse_presentation, Presentation, Word};

pub struct Case {
    pub name: &'static str,
    pub presentation: Presentation,
    pub word: Word,
}

fn case(name: &'static str, presentation: &str, word: &str) -> Case {
    let presentation = parse_presentation(presentation).expect("corpus presentations parse");
    let word = presentation.word(word).expect("corpus words parse");
    Case {
        name,
        presentation,
        word,
    }
}

/// One closed construction per decidable class plus the commutation example.
pub fn corpus() -> Vec<Case> {
    vec![
        case("commutation", "a b\nab = ba", "aabbaabb"),
        case("commutation_long", "a b\nab = ba", "aaabbbaaabbb"),
        case("class1", "a b c d\nab = cd", "abababcdcd"),
        case("class3_2a", "a b c\naba = cc", "abacccaba"),
        case("class4", "a b c\nab = bc", "aabbbcc"),
        case("free", "a b", "abBAaABbaabAB"),
    ]
}
