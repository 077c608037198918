use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Symbol = u16;

/// A finite word, stored as symbol indices.
pub type Word = Vec<Symbol>;

/// Ordered, prefix-free set of symbol names.
///
/// Prefix-freeness lets words be written without separators: `"0110"` over
/// `{0, 1}`, `"(0,1)(1,0)"` over a product alphabet, `"e00e01"` over edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols".into()));
        }
        if symbols.len() > Symbol::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty()
                || s.chars()
                    .any(|c| c.is_whitespace() || c == '=' || c == ';' || c == '#')
            {
                return Err(Error::InvalidAlphabet(format!("bad symbol name `{s}`")));
            }
            for t in &symbols[..i] {
                if t == s {
                    return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
                }
                if t.starts_with(s.as_str()) || s.starts_with(t.as_str()) {
                    return Err(Error::InvalidAlphabet(format!(
                        "symbols `{t}` and `{s}` are not prefix-free"
                    )));
                }
            }
        }
        Ok(Self { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Symbol> + ExactSizeIterator {
        0..self.symbols.len() as Symbol
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn index(&self, name: &str) -> Option<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as Symbol)
    }

    /// Tokenizes `text` into symbols, ignoring whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut rest = text.trim_start();
        while !rest.is_empty() {
            let hit = self
                .symbols
                .iter()
                .position(|s| rest.starts_with(s.as_str()))
                .ok_or_else(|| {
                    let bad: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                    Error::UnknownSymbol(bad)
                })?;
            out.push(hit as Symbol);
            rest = rest[self.symbols[hit].len()..].trim_start();
        }
        Ok(out)
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.name(s)).collect()
    }

    /// Alphabet of pairs `(a,b)`; the pair `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for a in &self.symbols {
            for b in &other.symbols {
                names.push(format!("({a},{b})"));
            }
        }
        Alphabet::new(names)
    }

    pub fn all_words(&self, len: usize) -> WordsOfLength {
        WordsOfLength {
            base: self.len() as Symbol,
            next: Some(vec![0; len]),
        }
    }
}

/// Lexicographic enumeration of every word of a fixed length.
pub struct WordsOfLength {
    base: Symbol,
    next: Option<Word>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.base {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_multi_character_symbols() {
        let a = Alphabet::new(["(0,0)", "(0,1)", "e1"]).unwrap();
        assert_eq!(a.parse_word("(0,1) e1(0,0)").unwrap(), vec![1, 2, 0]);
        assert_eq!(a.render(&[2, 1]), "e1(0,1)");
    }

    #[test]
    fn rejects_prefix_collisions_and_duplicates() {
        assert!(Alphabet::new(["a", "ab"]).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        assert_eq!(a.parse_word("012"), Err(Error::UnknownSymbol("2".into())));
    }

    #[test]
    fn enumerates_words_in_order() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let words: Vec<_> = a.all_words(2).collect();
        assert_eq!(words, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(a.all_words(0).count(), 1);
    }
}
