//! Double occurrence words and paragraphs.
//!
//! A paragraph is a list of cyclic words in which every character occurs
//! exactly twice overall. Characters are arbitrary tokens, so alphabets with
//! more than nine letters stay unambiguous.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty input")]
    Empty,
    #[error("character `{token}` occurs {count} time(s), expected exactly 2")]
    DoubleOccurrenceViolation { token: String, count: usize },
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("malformed JSON paragraph: {0}")]
    Json(String),
}

/// A letter of the alphabet. Equality is exact token equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(String);

impl Character {
    pub fn new(token: impl Into<String>) -> Result<Self, WordError> {
        let token = token.into();
        if token.is_empty() || token.chars().any(is_separator) {
            return Err(WordError::InvalidToken(token));
        }
        Ok(Character(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == ',' || c == '/'
}

/// A cyclic word. The stored sequence is one representative of its rotation
/// class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Character>);

impl Word {
    pub fn letters(&self) -> &[Character] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least rotation under token order.
    pub fn canonical_rotation(&self) -> Vec<Character> {
        let n = self.0.len();
        let best = (0..n)
            .min_by(|&a, &b| {
                (0..n)
                    .map(|k| &self.0[(a + k) % n])
                    .cmp((0..n).map(|k| &self.0[(b + k) % n]))
            })
            .unwrap_or(0);
        (0..n).map(|k| self.0[(best + k) % n].clone()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A double occurrence paragraph.
///
/// Positions are numbered consecutively through the concatenation of the
/// words; [`Paragraph::partner`] gives the other position holding the same
/// character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph {
    words: Vec<Word>,
    alphabet: Vec<Character>,
    partner: Vec<usize>,
    word_start: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ParagraphDoc {
    words: Vec<Vec<serde_json::Value>>,
}

impl Paragraph {
    /// Builds a paragraph from token sequences, validating double occurrence.
    pub fn new(words: Vec<Vec<Character>>) -> Result<Self, WordError> {
        let words: Vec<Vec<Character>> = words.into_iter().filter(|w| !w.is_empty()).collect();
        if words.is_empty() {
            return Err(WordError::Empty);
        }
        let mut first: HashMap<&Character, usize> = HashMap::new();
        let mut counts: HashMap<&Character, usize> = HashMap::new();
        let mut order: Vec<&Character> = Vec::new();
        let total: usize = words.iter().map(Vec::len).sum();
        let mut partner = vec![usize::MAX; total];
        let mut pos = 0;
        for w in &words {
            for c in w {
                let n = counts.entry(c).or_insert(0);
                *n += 1;
                match first.get(c) {
                    None => {
                        first.insert(c, pos);
                        order.push(c);
                    }
                    Some(&p) if *n == 2 => {
                        partner[p] = pos;
                        partner[pos] = p;
                    }
                    Some(_) => {}
                }
                pos += 1;
            }
        }
        if let Some(bad) = order.iter().find(|c| counts[*c] != 2) {
            return Err(WordError::DoubleOccurrenceViolation {
                token: bad.to_string(),
                count: counts[*bad],
            });
        }
        let alphabet = order.into_iter().cloned().collect();
        let mut word_start = Vec::with_capacity(words.len() + 1);
        let mut acc = 0;
        for w in &words {
            word_start.push(acc);
            acc += w.len();
        }
        word_start.push(acc);
        Ok(Paragraph {
            words: words.into_iter().map(Word).collect(),
            alphabet,
            partner,
            word_start,
        })
    }

    /// Builds a paragraph of integer labels, e.g. `&[&[1, 2, 1, 2]]`.
    pub fn from_labels<T: fmt::Display>(words: &[&[T]]) -> Result<Self, WordError> {
        let words = words
            .iter()
            .map(|w| w.iter().map(|c| Character::new(c.to_string())).collect())
            .collect::<Result<Vec<_>, _>>()?;
        Paragraph::new(words)
    }

    /// Parses the JSON form `{"words": [["1","2",...], ...]}`. Numeric
    /// tokens are accepted as well.
    pub fn from_json(text: &str) -> Result<Self, WordError> {
        let doc: ParagraphDoc =
            serde_json::from_str(text).map_err(|e| WordError::Json(e.to_string()))?;
        let words = doc
            .words
            .into_iter()
            .map(|w| {
                w.into_iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => Character::new(s),
                        serde_json::Value::Number(n) => Character::new(n.to_string()),
                        other => Err(WordError::InvalidToken(other.to_string())),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Paragraph::new(words)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "words": self.words.iter()
                .map(|w| w.letters().iter().map(|c| c.as_str()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Characters in order of first occurrence.
    pub fn alphabet(&self) -> &[Character] {
        &self.alphabet
    }

    /// Total number of letters, `2 * alphabet().len()`.
    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, pos: usize) -> usize {
        self.partner[pos]
    }

    pub fn letter(&self, pos: usize) -> &Character {
        let w = self.word_of(pos);
        &self.words[w].0[pos - self.word_start[w]]
    }

    pub fn word_of(&self, pos: usize) -> usize {
        self.word_start.partition_point(|&s| s <= pos) - 1
    }

    /// Range of positions covered by word `w`.
    pub fn word_range(&self, w: usize) -> std::ops::Range<usize> {
        self.word_start[w]..self.word_start[w + 1]
    }

    /// Cyclically next position within the same word.
    pub fn next(&self, pos: usize) -> usize {
        let w = self.word_of(pos);
        let r = self.word_range(w);
        if pos + 1 == r.end {
            r.start
        } else {
            pos + 1
        }
    }

    /// Next-position table for every position, computed in one pass.
    pub fn next_table(&self) -> Vec<usize> {
        let mut next = Vec::with_capacity(self.len());
        for w in 0..self.words.len() {
            let r = self.word_range(w);
            next.extend(r.start + 1..r.end);
            next.push(r.start);
        }
        next
    }
}

impl fmt::Display for Paragraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Parses the text format: tokens separated by whitespace or commas, words
/// separated by `/` or newlines.
pub fn parse_paragraph(text: &str) -> Result<Paragraph, WordError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return Paragraph::from_json(trimmed);
    }
    let words = text
        .split(['/', '\n'])
        .map(|w| {
            w.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(Character::new)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Paragraph::new(words)
}

/// True iff the words of `a` and `b` can be matched one-to-one so that
/// matched words are rotations of each other.
pub fn cyclic_equal(a: &Paragraph, b: &Paragraph) -> bool {
    if a.words.len() != b.words.len() || a.len() != b.len() {
        return false;
    }
    let canon = |p: &Paragraph| {
        let mut ws: Vec<Vec<Character>> = p.words.iter().map(Word::canonical_rotation).collect();
        ws.sort();
        ws
    };
    canon(a) == canon(b)
}

/// Gauss's parity condition: between the two copies of each character lying
/// in the same word there is an even number of letters. Cross-word pairs are
/// not constrained.
pub fn parity_precheck(p: &Paragraph) -> bool {
    (0..p.len()).all(|i| {
        let j = p.partner(i);
        i > j || p.word_of(i) != p.word_of(j) || (j - i - 1).is_multiple_of(2)
    })
}
