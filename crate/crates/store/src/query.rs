//! Query-parameter filters for the data endpoints.
//!
//! Filters are conjunctive: a record matches only if it satisfies every
//! supplied parameter, so any permutation of the same parameters selects the
//! same set. Unknown parameter names are rejected.

use peyedf_core::wire::{DimeEvent, InformationElement};

use crate::error::StoreError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventFilter {
    pub type_uri: Option<String>,
    pub actor: Option<String>,
    pub session_id: Option<String>,
    pub elem_id: Option<i64>,
    pub content_hash: Option<String>,
}

impl EventFilter {
    pub fn session(session_id: impl Into<String>) -> EventFilter {
        EventFilter {
            session_id: Some(session_id.into()),
            ..Default::default()
        }
    }

    /// Parse `key=value` pairs; `allow_query` admits the eventsearch `query`
    /// parameter (returned separately).
    pub fn from_pairs(
        pairs: &[(String, String)],
        allow_query: bool,
    ) -> Result<(EventFilter, Option<String>), StoreError> {
        let mut filter = EventFilter::default();
        let mut query = None;
        for (key, value) in pairs {
            match key.as_str() {
                "type" => filter.type_uri = Some(value.clone()),
                "actor" => filter.actor = Some(value.clone()),
                "sessionId" => filter.session_id = Some(value.clone()),
                "elemId" => {
                    filter.elem_id = Some(value.parse().map_err(|_| {
                        StoreError::bad_request(format!("elemId must be an integer, got {value:?}"))
                    })?)
                }
                "contentHash" => filter.content_hash = Some(value.clone()),
                "query" if allow_query => query = Some(value.clone()),
                other => {
                    return Err(StoreError::bad_request(format!(
                        "unknown parameter {other:?}"
                    )))
                }
            }
        }
        Ok((filter, query))
    }

    /// Whether the event matches; `event_hash` is the content hash of the
    /// event's targetted element, resolved by the store.
    pub fn matches(&self, event: &DimeEvent, event_hash: Option<&str>) -> bool {
        if let Some(t) = &self.type_uri {
            if event.type_uri() != t {
                return false;
            }
        }
        if let Some(actor) = &self.actor {
            if event.actor() != actor {
                return false;
            }
        }
        if let Some(session) = &self.session_id {
            if event.session_id().as_str() != session {
                return false;
            }
        }
        if let Some(elem) = self.elem_id {
            if event.targetted_resource_id() != Some(elem) {
                return false;
            }
        }
        if let Some(hash) = &self.content_hash {
            if event_hash != Some(hash.as_str()) {
                return false;
            }
        }
        true
    }

    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        if let Some(v) = &self.type_uri {
            pairs.push(("type".into(), v.clone()));
        }
        if let Some(v) = &self.actor {
            pairs.push(("actor".into(), v.clone()));
        }
        if let Some(v) = &self.session_id {
            pairs.push(("sessionId".into(), v.clone()));
        }
        if let Some(v) = self.elem_id {
            pairs.push(("elemId".into(), v.to_string()));
        }
        if let Some(v) = &self.content_hash {
            pairs.push(("contentHash".into(), v.clone()));
        }
        pairs
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ElementFilter {
    pub content_hash: Option<String>,
    pub type_uri: Option<String>,
    pub tag: Option<String>,
}

impl ElementFilter {
    pub fn from_pairs(
        pairs: &[(String, String)],
        allow_query: bool,
    ) -> Result<(ElementFilter, Option<String>), StoreError> {
        let mut filter = ElementFilter::default();
        let mut query = None;
        for (key, value) in pairs {
            match key.as_str() {
                "contentHash" => filter.content_hash = Some(value.clone()),
                "type" => filter.type_uri = Some(value.clone()),
                "tag" => filter.tag = Some(value.clone()),
                "query" if allow_query => query = Some(value.clone()),
                other => {
                    return Err(StoreError::bad_request(format!(
                        "unknown parameter {other:?}"
                    )))
                }
            }
        }
        Ok((filter, query))
    }

    pub fn matches(&self, element: &InformationElement) -> bool {
        let doc = element.document();
        if let Some(hash) = &self.content_hash {
            if doc.content_hash.as_str() != hash {
                return false;
            }
        }
        if let Some(t) = &self.type_uri {
            if element.type_uri() != t {
                return false;
            }
        }
        if let Some(tag) = &self.tag {
            if !doc.tags.iter().any(|t| &t.text == tag) {
                return false;
            }
        }
        true
    }

    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        if let Some(v) = &self.content_hash {
            pairs.push(("contentHash".into(), v.clone()));
        }
        if let Some(v) = &self.type_uri {
            pairs.push(("type".into(), v.clone()));
        }
        if let Some(v) = &self.tag {
            pairs.push(("tag".into(), v.clone()));
        }
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_parameters_are_rejected() {
        let pairs = vec![("actor".to_string(), "PeyeDF".to_string()),
                         ("bogus".to_string(), "x".to_string())];
        assert!(EventFilter::from_pairs(&pairs, false).is_err());
        assert!(ElementFilter::from_pairs(&pairs, false).is_err());
    }

    #[test]
    fn elem_id_must_be_integer() {
        let pairs = vec![("elemId".to_string(), "abc".to_string())];
        assert!(EventFilter::from_pairs(&pairs, false).is_err());
    }

    #[test]
    fn query_only_allowed_when_enabled() {
        let pairs = vec![("query".to_string(), "pipe".to_string())];
        assert!(EventFilter::from_pairs(&pairs, false).is_err());
        let (filter, query) = EventFilter::from_pairs(&pairs, true).unwrap();
        assert_eq!(filter, EventFilter::default());
        assert_eq!(query.as_deref(), Some("pipe"));
    }
}
