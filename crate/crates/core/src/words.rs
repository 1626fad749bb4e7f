//! Elements of a free group as freely reduced words.
//!
//! Words carry no reference to their alphabet; letters are `(generator index, sign)`
//! pairs and range checks happen wherever a word meets an [`Alphabet`].

use std::fmt;

use crate::error::{Error, Result};

/// Ordered, duplicate-free list of generator names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Malformed("alphabet must be nonempty".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Malformed(format!("invalid generator name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Malformed(format!("duplicate generator name {name:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Alphabet `x0, x1, ...` of the given size. Used for basis words.
    pub fn indexed(prefix: &str, len: usize) -> Result<Self> {
        Alphabet::new((0..len.max(1)).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Checks that every letter of `word` names a generator of this alphabet.
    pub fn check(&self, word: &Word) -> Result<()> {
        match word.letters.iter().find(|l| l.generator >= self.len()) {
            Some(l) => Err(Error::AlphabetMismatch(format!(
                "generator index {} outside alphabet of size {}",
                l.generator,
                self.len()
            ))),
            None => Ok(()),
        }
    }

    /// Free reduction of a raw letter sequence, rejecting out-of-range letters.
    pub fn reduce(&self, raw: impl IntoIterator<Item = Letter>) -> Result<Word> {
        let raw: Vec<Letter> = raw.into_iter().collect();
        if let Some(l) = raw.iter().find(|l| l.generator >= self.len()) {
            return Err(Error::Malformed(format!(
                "letter index {} outside alphabet of size {}",
                l.generator,
                self.len()
            )));
        }
        Ok(Word::reduce(raw))
    }

    /// Parses whitespace-separated tokens `name` or `name^-1`. `1` (or blank) is the identity.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity());
        }
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.split_once('^') {
                None => (token, false),
                Some((name, "-1")) => (name, true),
                Some(_) => {
                    return Err(Error::Malformed(format!("malformed exponent in token {token:?}")))
                }
            };
            let generator = self
                .position(name)
                .ok_or_else(|| Error::Malformed(format!("unknown generator {name:?}")))?;
            raw.push(Letter { generator, inverse });
        }
        Ok(Word::reduce(raw))
    }

    pub fn format(&self, word: &Word) -> String {
        WordDisplay { alphabet: self, word }.to_string()
    }
}

struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.generator))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// A generator or its inverse.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(generator: usize) -> Self {
        Word { letters: vec![Letter::pos(generator)] }
    }

    pub fn letter(letter: Letter) -> Self {
        Word { letters: vec![letter] }
    }

    /// Single stack pass: push each letter, popping instead when it cancels the top.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let raw = raw.into_iter();
        let mut letters: Vec<Letter> = Vec::with_capacity(raw.size_hint().0);
        for l in raw {
            match letters.last() {
                Some(&top) if top.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        let mut rest = other.letters.iter().copied().peekable();
        while let (Some(&top), Some(&next)) = (letters.last(), rest.peek()) {
            if !top.cancels(next) {
                break;
            }
            letters.pop();
            rest.next();
        }
        letters.extend(rest);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// All `len + 1` prefixes, shortest first.
    pub fn prefixes(&self) -> Vec<Word> {
        (0..=self.letters.len()).map(|k| self.prefix(k)).collect()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { letters: self.letters[..len].to_vec() }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }
}

impl From<Letter> for Word {
    fn from(letter: Letter) -> Self {
        Word::letter(letter)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}
