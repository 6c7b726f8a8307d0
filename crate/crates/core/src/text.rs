//! Word tokenization shared by document search and the store's text index.
//!
//! A token is a maximal run of alphanumeric characters, lowercased. Queries
//! wrapped in double quotes are exact-phrase searches; anything else matches
//! when all its words are present.

/// Lowercased word tokens in order of appearance.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            current.extend(ch.to_lowercase());
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// A parsed search query: its word tokens and whether they must appear as a
/// consecutive phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchQuery {
    pub tokens: Vec<String>,
    pub exact_phrase: bool,
}

impl SearchQuery {
    /// `"..."` means exact phrase; otherwise all words must match.
    pub fn parse(raw: &str) -> SearchQuery {
        let trimmed = raw.trim();
        let (body, exact_phrase) = match trimmed
            .strip_prefix('"')
            .and_then(|rest| rest.strip_suffix('"'))
        {
            Some(inner) if trimmed.len() >= 2 => (inner, true),
            _ => (trimmed, false),
        };
        SearchQuery {
            tokens: tokenize(body),
            exact_phrase,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Whether the query matches the given token stream.
    pub fn matches(&self, tokens: &[String]) -> bool {
        if self.tokens.is_empty() {
            return false;
        }
        if self.exact_phrase {
            tokens
                .windows(self.tokens.len())
                .any(|window| window == self.tokens.as_slice())
        } else {
            self.tokens
                .iter()
                .all(|needle| tokens.iter().any(|t| t == needle))
        }
    }

    /// Number of phrase (or single-word) occurrences in the token stream.
    /// For multi-word "all words" queries this counts occurrences of the
    /// rarest word, the closest analog of a hit count.
    pub fn count_hits(&self, tokens: &[String]) -> usize {
        if self.tokens.is_empty() {
            return 0;
        }
        if self.exact_phrase || self.tokens.len() == 1 {
            if tokens.len() < self.tokens.len() {
                return 0;
            }
            tokens
                .windows(self.tokens.len())
                .filter(|window| *window == self.tokens.as_slice())
                .count()
        } else {
            self.tokens
                .iter()
                .map(|needle| tokens.iter().filter(|t| *t == needle).count())
                .min()
                .unwrap_or(0)
        }
    }
}
