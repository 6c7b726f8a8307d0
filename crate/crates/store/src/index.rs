//! Positional inverted index over record text.
//!
//! Stores token positions per record so quoted queries can require the words
//! to appear consecutively. Matching is case-insensitive at the token level.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use peyedf_core::text::{tokenize, SearchQuery};

#[derive(Debug, Default)]
pub struct TextIndex {
    postings: HashMap<String, BTreeMap<i64, Vec<u32>>>,
    tokens_by_record: HashMap<i64, Vec<String>>,
}

impl TextIndex {
    pub fn insert(&mut self, record_id: i64, text: &str) {
        self.remove(record_id);
        let tokens = tokenize(text);
        for (position, token) in tokens.iter().enumerate() {
            self.postings
                .entry(token.clone())
                .or_default()
                .entry(record_id)
                .or_default()
                .push(position as u32);
        }
        self.tokens_by_record.insert(record_id, tokens);
    }

    pub fn remove(&mut self, record_id: i64) {
        let Some(tokens) = self.tokens_by_record.remove(&record_id) else {
            return;
        };
        for token in tokens {
            if let Some(per_record) = self.postings.get_mut(&token) {
                per_record.remove(&record_id);
                if per_record.is_empty() {
                    self.postings.remove(&token);
                }
            }
        }
    }

    /// Record ids matching the query, ascending (= insertion order, since ids
    /// are assigned densely). Relevance ranking is deliberately absent.
    pub fn search(&self, query: &SearchQuery) -> Vec<i64> {
        if query.tokens.is_empty() {
            return Vec::new();
        }
        let mut candidates: Option<BTreeSet<i64>> = None;
        for token in &query.tokens {
            let ids: BTreeSet<i64> = match self.postings.get(token) {
                Some(per_record) => per_record.keys().copied().collect(),
                None => return Vec::new(),
            };
            candidates = Some(match candidates {
                None => ids,
                Some(existing) => existing.intersection(&ids).copied().collect(),
            });
        }
        let candidates = candidates.unwrap_or_default();
        if !query.exact_phrase || query.tokens.len() == 1 {
            return candidates.into_iter().collect();
        }
        candidates
            .into_iter()
            .filter(|id| self.has_phrase(*id, &query.tokens))
            .collect()
    }

    fn has_phrase(&self, record_id: i64, tokens: &[String]) -> bool {
        let Some(first) = self
            .postings
            .get(&tokens[0])
            .and_then(|per_record| per_record.get(&record_id))
        else {
            return false;
        };
        first.iter().any(|&start| {
            tokens[1..].iter().enumerate().all(|(offset, token)| {
                self.postings
                    .get(token)
                    .and_then(|per_record| per_record.get(&record_id))
                    .map(|positions| {
                        positions.binary_search(&(start + offset as u32 + 1)).is_ok()
                    })
                    .unwrap_or(false)
            })
        })
    }
}
