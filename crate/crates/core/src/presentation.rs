//! Positive presentations `<X | R>` and words over `X ∪ X⁻¹`.
//!
//! Generators are single lowercase ASCII letters. The formal inverse of a
//! generator is written with the corresponding uppercase letter, so `aB`
//! is the word `a·b⁻¹`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown letter '{letter}'")]
    UnknownLetter {
        letter: char,
        line: usize,
        column: usize,
    },
    #[error("line {line}: empty relation side")]
    EmptySide { line: usize },
    #[error("line {line}: relation sides must be positive words (found inverse letter '{letter}')")]
    NonPositiveSide { letter: char, line: usize },
    #[error("line {line}: trivial relation {word} = {word}")]
    TrivialRelation { word: String, line: usize },
    #[error("duplicate alphabet letter '{0}'")]
    DuplicateLetter(char),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("empty word")]
    EmptyWord,
    #[error("position {position}: letter '{letter}' is not in the alphabet")]
    UnknownWordLetter { letter: char, position: usize },
}

/// A generator of the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    /// Returns `None` unless `c` is a lowercase ASCII letter.
    pub fn new(c: char) -> Option<Letter> {
        c.is_ascii_lowercase().then_some(Letter(c as u8))
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }

    pub fn positive(self) -> SignedLetter {
        SignedLetter {
            letter: self,
            inverse: false,
        }
    }

    pub fn inverse(self) -> SignedLetter {
        SignedLetter {
            letter: self,
            inverse: true,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLetter {
    pub letter: Letter,
    pub inverse: bool,
}

impl SignedLetter {
    pub fn is_positive(self) -> bool {
        !self.inverse
    }

    #[must_use]
    pub fn invert(self) -> SignedLetter {
        SignedLetter {
            letter: self.letter,
            inverse: !self.inverse,
        }
    }

    pub fn as_char(self) -> char {
        if self.inverse {
            self.letter.as_char().to_ascii_uppercase()
        } else {
            self.letter.as_char()
        }
    }

    /// Decodes the letter syntax: lowercase is a generator, uppercase its inverse.
    pub fn from_char(c: char) -> Option<SignedLetter> {
        if c.is_ascii_lowercase() {
            Letter::new(c).map(Letter::positive)
        } else if c.is_ascii_uppercase() {
            Letter::new(c.to_ascii_lowercase()).map(Letter::inverse)
        } else {
            None
        }
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite non-empty set of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(BTreeSet<Letter>);

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Alphabet, PresentationError> {
        let mut set = BTreeSet::new();
        for l in letters {
            if !set.insert(l) {
                return Err(PresentationError::DuplicateLetter(l.as_char()));
            }
        }
        if set.is_empty() {
            return Err(PresentationError::EmptyAlphabet);
        }
        Ok(Alphabet(set))
    }

    /// Builds an alphabet from a string of distinct lowercase letters, e.g. `"abc"`.
    pub fn from_letters(s: &str) -> Result<Alphabet, PresentationError> {
        let mut letters = Vec::new();
        for (i, c) in s.chars().enumerate() {
            let l = Letter::new(c).ok_or(PresentationError::UnknownWordLetter {
                letter: c,
                position: i,
            })?;
            letters.push(l);
        }
        Alphabet::new(letters)
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A non-empty word over `X ∪ X⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<SignedLetter>);

impl Word {
    pub fn new(letters: Vec<SignedLetter>) -> Result<Word, PresentationError> {
        if letters.is_empty() {
            return Err(PresentationError::EmptyWord);
        }
        Ok(Word(letters))
    }

    /// Parses `text` in the letter syntax, checking every letter against `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word, PresentationError> {
        let word: Word = text.parse()?;
        for (i, sl) in word.iter().enumerate() {
            if !alphabet.contains(sl.letter) {
                return Err(PresentationError::UnknownWordLetter {
                    letter: sl.as_char(),
                    position: i,
                });
            }
        }
        Ok(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = SignedLetter> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    pub fn first(&self) -> SignedLetter {
        self.0[0]
    }

    pub fn last(&self) -> SignedLetter {
        self.0[self.0.len() - 1]
    }

    /// The formal inverse: reversed, with every sign flipped.
    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.invert()).collect())
    }

    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Returns the factor `[start, end)`, or `None` if it would be empty or out of range.
    pub fn factor(&self, start: usize, end: usize) -> Option<Word> {
        (start < end && end <= self.len()).then(|| Word(self.0[start..end].to_vec()))
    }

    /// True iff `other` occurs as a contiguous factor of `self`.
    pub fn contains_factor(&self, other: &Word) -> bool {
        other.len() <= self.len() && self.0.windows(other.len()).any(|w| w == other.0.as_slice())
    }

    pub fn starts_with(&self, other: &[SignedLetter]) -> bool {
        self.0.starts_with(other)
    }

    pub fn ends_with(&self, other: &[SignedLetter]) -> bool {
        self.0.ends_with(other)
    }

    /// Generators occurring in the word, ignoring sign.
    pub fn support(&self) -> BTreeSet<Letter> {
        self.0.iter().map(|l| l.letter).collect()
    }
}

/// `w⁻¹`.
pub fn invert_word(w: &Word) -> Word {
    w.inverse()
}

/// Parses a word and validates it against `alphabet`.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, PresentationError> {
    Word::parse(text, alphabet)
}

impl FromStr for Word {
    type Err = PresentationError;

    /// Parses without an alphabet check.
    fn from_str(text: &str) -> Result<Word, PresentationError> {
        let mut letters = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            let sl = SignedLetter::from_char(c).ok_or(PresentationError::UnknownWordLetter {
                letter: c,
                position: i,
            })?;
            letters.push(sl);
        }
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Word {
    type Output = SignedLetter;

    fn index(&self, i: usize) -> &SignedLetter {
        &self.0[i]
    }
}

/// A positive relation `lhs = rhs`. Both sides are R-words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    lhs: Word,
    rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Result<Relation, PresentationError> {
        for side in [&lhs, &rhs] {
            if let Some(l) = side.iter().find(|l| l.inverse) {
                return Err(PresentationError::NonPositiveSide {
                    letter: l.as_char(),
                    line: 0,
                });
            }
        }
        if lhs == rhs {
            return Err(PresentationError::TrivialRelation {
                word: lhs.to_string(),
                line: 0,
            });
        }
        Ok(Relation { lhs, rhs })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A positive presentation `<X | R>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Result<Presentation, PresentationError> {
        for r in &relations {
            for side in [r.lhs(), r.rhs()] {
                if let Some(l) = side.iter().find(|l| !alphabet.contains(l.letter)) {
                    return Err(PresentationError::UnknownLetter {
                        letter: l.as_char(),
                        line: 0,
                        column: 0,
                    });
                }
            }
        }
        Ok(Presentation {
            alphabet,
            relations,
        })
    }

    /// The presentation with no relations; its inverse monoid is free.
    pub fn free(alphabet: Alphabet) -> Presentation {
        Presentation {
            alphabet,
            relations: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Parses a word against this presentation's alphabet.
    pub fn word(&self, text: &str) -> Result<Word, PresentationError> {
        Word::parse(text, &self.alphabet)
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(text: &str) -> Result<Presentation, PresentationError> {
        parse_presentation(text)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.alphabet.letters().map(|l| l.to_string()).collect();
        writeln!(f, "{}", letters.join(" "))?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Parses the presentation file format.
///
/// The first non-blank line lists the alphabet letters separated by spaces.
/// Every later non-blank line is a relation `LHS = RHS` between positive
/// words. `#` starts a comment running to the end of the line.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relations = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        match &alphabet {
            None => alphabet = Some(parse_alphabet_line(line, line_no)?),
            Some(a) => relations.push(parse_relation_line(line, line_no, a)?),
        }
    }

    let alphabet = alphabet.ok_or(PresentationError::EmptyAlphabet)?;
    Ok(Presentation {
        alphabet,
        relations,
    })
}

fn parse_alphabet_line(line: &str, line_no: usize) -> Result<Alphabet, PresentationError> {
    let mut letters = Vec::new();
    let mut seen = BTreeSet::new();
    for (col, c) in line.char_indices() {
        if c == ' ' || c == '\t' {
            continue;
        }
        let l = Letter::new(c).ok_or_else(|| PresentationError::Syntax {
            line: line_no,
            column: col + 1,
            message: format!("alphabet letters must be single lowercase characters, found '{c}'"),
        })?;
        let next = line[col + c.len_utf8()..].chars().next();
        if matches!(next, Some(n) if !n.is_whitespace()) {
            return Err(PresentationError::Syntax {
                line: line_no,
                column: col + 2,
                message: "alphabet letters must be separated by spaces".into(),
            });
        }
        if !seen.insert(l) {
            return Err(PresentationError::DuplicateLetter(c));
        }
        letters.push(l);
    }
    Alphabet::new(letters)
}

fn parse_relation_line(
    line: &str,
    line_no: usize,
    alphabet: &Alphabet,
) -> Result<Relation, PresentationError> {
    let Some(eq) = line.find('=') else {
        return Err(PresentationError::Syntax {
            line: line_no,
            column: 1,
            message: "expected 'LHS = RHS'".into(),
        });
    };
    if let Some(extra) = line[eq + 1..].find('=') {
        return Err(PresentationError::Syntax {
            line: line_no,
            column: eq + extra + 2,
            message: "more than one '='".into(),
        });
    }
    let lhs = parse_side(line, 0, eq, line_no, alphabet)?;
    let rhs = parse_side(line, eq + 1, line.len(), line_no, alphabet)?;
    if lhs == rhs {
        return Err(PresentationError::TrivialRelation {
            word: lhs.to_string(),
            line: line_no,
        });
    }
    Ok(Relation { lhs, rhs })
}

fn parse_side(
    line: &str,
    from: usize,
    to: usize,
    line_no: usize,
    alphabet: &Alphabet,
) -> Result<Word, PresentationError> {
    let raw = &line[from..to];
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(PresentationError::EmptySide { line: line_no });
    }
    let offset = from + (raw.len() - raw.trim_start().len());
    let mut letters = Vec::with_capacity(trimmed.len());
    for (i, c) in trimmed.char_indices() {
        let column = offset + i + 1;
        if c.is_whitespace() {
            return Err(PresentationError::Syntax {
                line: line_no,
                column,
                message: "whitespace inside a relation side".into(),
            });
        }
        let sl = SignedLetter::from_char(c).ok_or_else(|| PresentationError::Syntax {
            line: line_no,
            column,
            message: format!("invalid character '{c}'"),
        })?;
        if !alphabet.contains(sl.letter) {
            return Err(PresentationError::UnknownLetter {
                letter: c,
                line: line_no,
                column,
            });
        }
        if sl.inverse {
            return Err(PresentationError::NonPositiveSide {
                letter: c,
                line: line_no,
            });
        }
        letters.push(sl);
    }
    Word::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(letters: &[char], max_len: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &c in letters {
                    let mut s = w.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn parses_commutation_presentation() {
        let p = parse_presentation("a b\nab = ba").unwrap();
        assert_eq!(p.alphabet().len(), 2);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].lhs().to_string(), "ab");
        assert_eq!(p.relations()[0].rhs().to_string(), "ba");
    }

    #[test]
    fn parses_aba_cc_with_comments() {
        let p = parse_presentation("# type 2a\na b c   # generators\n\naba = cc # relation\n").unwrap();
        assert_eq!(p.alphabet().len(), 3);
        assert_eq!(p.relations()[0].to_string(), "aba = cc");
    }

    #[test]
    fn rejects_empty_relation_side() {
        assert_eq!(
            parse_presentation("a\n = a"),
            Err(PresentationError::EmptySide { line: 2 })
        );
        assert_eq!(
            parse_presentation("a\na = "),
            Err(PresentationError::EmptySide { line: 2 })
        );
    }

    #[test]
    fn rejects_unknown_and_duplicate_letters() {
        assert!(matches!(
            parse_presentation("a b\nab = bc"),
            Err(PresentationError::UnknownLetter { letter: 'c', line: 2, column: 7 })
        ));
        assert_eq!(
            parse_presentation("a b a\nab = ba"),
            Err(PresentationError::DuplicateLetter('a'))
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_presentation("a b\nab ba"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("a b\nab = b = a"),
            Err(PresentationError::Syntax { line: 2, column: 8, .. })
        ));
        assert!(matches!(
            parse_presentation("ab\nab = ba"),
            Err(PresentationError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("a b\naB = ba"),
            Err(PresentationError::NonPositiveSide { letter: 'B', line: 2 })
        ));
        assert!(matches!(
            parse_presentation("a b\nab = ab"),
            Err(PresentationError::TrivialRelation { line: 2, .. })
        ));
        assert_eq!(parse_presentation("# nothing\n"), Err(PresentationError::EmptyAlphabet));
    }

    #[test]
    fn parses_words_over_alphabet() {
        let ab = Alphabet::from_letters("ab").unwrap();
        let w = parse_word("aabbaabb", &ab).unwrap();
        assert!(w.is_positive());
        assert_eq!(w.len(), 8);

        let a = Alphabet::from_letters("a").unwrap();
        let w = parse_word("aA", &a).unwrap();
        assert_eq!(w.letters(), &[Letter::new('a').unwrap().positive(), Letter::new('a').unwrap().inverse()]);
        assert!(!w.is_positive());

        assert_eq!(
            parse_word("ax", &ab),
            Err(PresentationError::UnknownWordLetter { letter: 'x', position: 1 })
        );
        assert_eq!(
            parse_word("aX", &ab),
            Err(PresentationError::UnknownWordLetter { letter: 'X', position: 1 })
        );
        assert_eq!(parse_word("", &ab), Err(PresentationError::EmptyWord));
    }

    #[test]
    fn inverts_words() {
        let w: Word = "aB".parse().unwrap();
        assert_eq!(invert_word(&w).to_string(), "bA");
        let w: Word = "abc".parse().unwrap();
        assert_eq!(invert_word(&w).to_string(), "CBA");
        let w: Word = "a".parse().unwrap();
        assert_eq!(invert_word(&w).to_string(), "A");
    }

    #[test]
    fn render_parse_round_trip_is_exhaustive_identity() {
        let ab = Alphabet::from_letters("ab").unwrap();
        let words = all_words(&['a', 'b', 'A', 'B'], 8);
        for text in &words {
            let w = parse_word(text, &ab).unwrap();
            assert_eq!(&w.to_string(), text);
            assert_eq!(parse_word(&w.to_string(), &ab).unwrap(), w);
        }
    }

    #[test]
    fn involution_is_a_self_inverse_bijection() {
        let words = all_words(&['a', 'b', 'A', 'B'], 6);
        let mut images = BTreeSet::new();
        for text in &words {
            let w: Word = text.parse().unwrap();
            let inv = w.inverse();
            assert_eq!(inv.inverse(), w);
            assert_eq!(inv.len(), w.len());
            images.insert(inv);
        }
        assert_eq!(images.len(), words.len());
    }

    #[test]
    fn presentation_display_reparses() {
        let p = parse_presentation("a b c\naba = cc\nab = cb").unwrap();
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}
