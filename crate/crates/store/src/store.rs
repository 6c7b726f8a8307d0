//! The store engine: events and information elements with dense per-kind
//! ids, conjunctive filters and full-text search.
//!
//! Elements are upserted keyed by content hash, so re-registering a renamed
//! file lands on the same element id. Events always append and must
//! reference an existing element when they carry a `targettedResourceId`.
//! Writers are serialized behind a write lock; readers run concurrently.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use peyedf_core::text::SearchQuery;
use peyedf_core::wire::{DimeEvent, InformationElement};

use crate::error::StoreError;
use crate::index::TextIndex;
use crate::log::{LogEntry, RecordLog};
use crate::query::{ElementFilter, EventFilter};

pub struct Store {
    inner: RwLock<Inner>,
}

struct Inner {
    dir: PathBuf,
    log: RecordLog,
    events: BTreeMap<i64, DimeEvent>,
    elements: BTreeMap<i64, InformationElement>,
    next_event_id: i64,
    next_element_id: i64,
    element_by_hash: HashMap<String, i64>,
    events_by_session: HashMap<String, Vec<i64>>,
    events_by_element: HashMap<i64, Vec<i64>>,
    event_text: TextIndex,
    element_text: TextIndex,
}

impl Inner {
    fn apply(&mut self, entry: &LogEntry) {
        match entry {
            LogEntry::PutEvent { id, payload } => {
                self.next_event_id = self.next_event_id.max(id + 1);
                self.events_by_session
                    .entry(payload.session_id().as_str().to_string())
                    .or_default()
                    .push(*id);
                if let Some(elem) = payload.targetted_resource_id() {
                    self.events_by_element.entry(elem).or_default().push(*id);
                }
                self.event_text.insert(*id, payload.plain_text_content());
                self.events.insert(*id, payload.clone());
            }
            LogEntry::PutElement { id, payload } => {
                self.next_element_id = self.next_element_id.max(id + 1);
                if let Some(previous) = self.elements.get(id) {
                    self.element_by_hash
                        .remove(previous.document().content_hash.as_str());
                }
                self.element_by_hash
                    .insert(payload.document().content_hash.as_str().to_string(), *id);
                self.element_text
                    .insert(*id, &payload.document().plain_text_content);
                self.elements.insert(*id, payload.clone());
            }
            LogEntry::DeleteEvent { id } => {
                if let Some(event) = self.events.remove(id) {
                    if let Some(ids) = self
                        .events_by_session
                        .get_mut(event.session_id().as_str())
                    {
                        ids.retain(|i| i != id);
                    }
                    if let Some(elem) = event.targetted_resource_id() {
                        if let Some(ids) = self.events_by_element.get_mut(&elem) {
                            ids.retain(|i| i != id);
                        }
                    }
                    self.event_text.remove(*id);
                }
            }
            LogEntry::DeleteElement { id } => {
                if let Some(element) = self.elements.remove(id) {
                    self.element_by_hash
                        .remove(element.document().content_hash.as_str());
                    self.element_text.remove(*id);
                }
            }
        }
    }

    fn commit(&mut self, entry: LogEntry) -> Result<(), StoreError> {
        self.log.append(&entry)?;
        self.apply(&entry);
        Ok(())
    }

    fn event_hash(&self, event: &DimeEvent) -> Option<String> {
        event
            .targetted_resource_id()
            .and_then(|id| self.elements.get(&id))
            .map(|e| e.document().content_hash.as_str().to_string())
    }
}

impl Store {
    /// Open the store in `dir`, replaying any existing log.
    pub fn open(dir: &Path) -> Result<Store, StoreError> {
        let (log, entries) = RecordLog::open(dir)?;
        let mut inner = Inner {
            dir: dir.to_path_buf(),
            log,
            events: BTreeMap::new(),
            elements: BTreeMap::new(),
            next_event_id: 1,
            next_element_id: 1,
            element_by_hash: HashMap::new(),
            events_by_session: HashMap::new(),
            events_by_element: HashMap::new(),
            event_text: TextIndex::default(),
            element_text: TextIndex::default(),
        };
        for entry in &entries {
            inner.apply(entry);
        }
        Ok(Store {
            inner: RwLock::new(inner),
        })
    }

    pub fn dir(&self) -> PathBuf {
        self.inner.read().unwrap().dir.clone()
    }

    /// Append an event. The payload is validated and, when it references an
    /// element, the reference must resolve.
    pub fn post_event(&self, event: &DimeEvent) -> Result<DimeEvent, StoreError> {
        event.validate()?;
        let mut inner = self.inner.write().unwrap();
        if let Some(elem) = event.targetted_resource_id() {
            if !inner.elements.contains_key(&elem) {
                return Err(StoreError::bad_request(format!(
                    "targettedResourceId {elem} does not reference a stored element"
                )));
            }
        }
        let id = inner.next_event_id;
        let mut stored = event.clone();
        stored.set_id(id);
        inner.commit(LogEntry::PutEvent {
            id,
            payload: stored.clone(),
        })?;
        Ok(stored)
    }

    /// Upsert an element keyed by content hash. A new payload for an existing
    /// hash keeps the element id, takes the new uri/title/text and unions the
    /// tag sets.
    pub fn post_element(
        &self,
        element: &InformationElement,
    ) -> Result<InformationElement, StoreError> {
        element.validate()?;
        let mut inner = self.inner.write().unwrap();
        let hash = element.document().content_hash.as_str().to_string();
        let (id, merged) = match inner.element_by_hash.get(&hash) {
            Some(&existing_id) => {
                let mut merged = element.clone();
                merged.document_mut().id = Some(existing_id);
                let previous = inner.elements.get(&existing_id).cloned();
                if let Some(previous) = previous {
                    for tag in &previous.document().tags {
                        if !merged.document().tags.contains(tag) {
                            merged.document_mut().tags.push(tag.clone());
                        }
                    }
                }
                (existing_id, merged)
            }
            None => {
                let id = inner.next_element_id;
                let mut fresh = element.clone();
                fresh.document_mut().id = Some(id);
                (id, fresh)
            }
        };
        inner.commit(LogEntry::PutElement {
            id,
            payload: merged.clone(),
        })?;
        Ok(merged)
    }

    pub fn get_event(&self, id: i64) -> Result<DimeEvent, StoreError> {
        self.inner
            .read()
            .unwrap()
            .events
            .get(&id)
            .cloned()
            .ok_or_else(|| StoreError::not_found(format!("event {id}")))
    }

    pub fn get_element(&self, id: i64) -> Result<InformationElement, StoreError> {
        self.inner
            .read()
            .unwrap()
            .elements
            .get(&id)
            .cloned()
            .ok_or_else(|| StoreError::not_found(format!("element {id}")))
    }

    pub fn delete_event(&self, id: i64) -> Result<(), StoreError> {
        let mut inner = self.inner.write().unwrap();
        if !inner.events.contains_key(&id) {
            return Err(StoreError::not_found(format!("event {id}")));
        }
        inner.commit(LogEntry::DeleteEvent { id })
    }

    /// Delete an element; refuses while events still reference it.
    pub fn delete_element(&self, id: i64) -> Result<(), StoreError> {
        let mut inner = self.inner.write().unwrap();
        if !inner.elements.contains_key(&id) {
            return Err(StoreError::not_found(format!("element {id}")));
        }
        let dependents = inner
            .events_by_element
            .get(&id)
            .map(Vec::len)
            .unwrap_or(0);
        if dependents > 0 {
            return Err(StoreError::Conflict(format!(
                "element {id} has {dependents} dependent event(s)"
            )));
        }
        inner.commit(LogEntry::DeleteElement { id })
    }

    pub fn query_events(&self, filter: &EventFilter) -> Result<Vec<DimeEvent>, StoreError> {
        let inner = self.inner.read().unwrap();
        // Start from the most selective index available.
        let candidates: Vec<i64> = if let Some(session) = &filter.session_id {
            inner
                .events_by_session
                .get(session)
                .cloned()
                .unwrap_or_default()
        } else if let Some(elem) = filter.elem_id {
            inner.events_by_element.get(&elem).cloned().unwrap_or_default()
        } else {
            inner.events.keys().copied().collect()
        };
        let mut out = Vec::new();
        for id in candidates {
            let Some(event) = inner.events.get(&id) else {
                continue;
            };
            let hash = inner.event_hash(event);
            if filter.matches(event, hash.as_deref()) {
                out.push(event.clone());
            }
        }
        out.sort_by_key(|e| e.id());
        Ok(out)
    }

    pub fn query_elements(
        &self,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        let inner = self.inner.read().unwrap();
        let mut out: Vec<InformationElement> = inner
            .elements
            .values()
            .filter(|e| filter.matches(e))
            .cloned()
            .collect();
        out.sort_by_key(|e| e.document().id);
        Ok(out)
    }

    /// Textual search across events, AND-composed with the event filters.
    pub fn event_search(
        &self,
        query: &str,
        filter: &EventFilter,
    ) -> Result<Vec<DimeEvent>, StoreError> {
        let parsed = SearchQuery::parse(query);
        if parsed.is_empty() {
            return Err(StoreError::bad_request("query must be non-empty"));
        }
        let inner = self.inner.read().unwrap();
        let mut out = Vec::new();
        for id in inner.event_text.search(&parsed) {
            let Some(event) = inner.events.get(&id) else {
                continue;
            };
            let hash = inner.event_hash(event);
            if filter.matches(event, hash.as_deref()) {
                out.push(event.clone());
            }
        }
        Ok(out)
    }

    /// Textual search across element bodies.
    pub fn element_search(
        &self,
        query: &str,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        let parsed = SearchQuery::parse(query);
        if parsed.is_empty() {
            return Err(StoreError::bad_request("query must be non-empty"));
        }
        let inner = self.inner.read().unwrap();
        let mut out = Vec::new();
        for id in inner.element_text.search(&parsed) {
            let Some(element) = inner.elements.get(&id) else {
                continue;
            };
            if filter.matches(element) {
                out.push(element.clone());
            }
        }
        Ok(out)
    }

    pub fn find_element_by_hash(&self, hash: &str) -> Option<InformationElement> {
        let inner = self.inner.read().unwrap();
        inner
            .element_by_hash
            .get(hash)
            .and_then(|id| inner.elements.get(id))
            .cloned()
    }

    pub fn find_element_by_uri(&self, uri: &str) -> Option<InformationElement> {
        let inner = self.inner.read().unwrap();
        inner
            .elements
            .values()
            .find(|e| e.document().uri == uri)
            .cloned()
    }

    pub fn has_session(&self, session_id: &str) -> bool {
        let inner = self.inner.read().unwrap();
        inner
            .events_by_session
            .get(session_id)
            .map(|ids| !ids.is_empty())
            .unwrap_or(false)
    }

    pub fn event_count(&self) -> usize {
        self.inner.read().unwrap().events.len()
    }

    pub fn element_count(&self) -> usize {
        self.inner.read().unwrap().elements.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use peyedf_core::identity::SessionId;
    use peyedf_core::model::{ReadingEvent, ScientificDocument, Tag, ACTOR_PEYEDF};
    use peyedf_core::wire::READING_EVENT_TYPE;

    fn document(text: &str, uri: &str) -> InformationElement {
        InformationElement::ScientificDocument(ScientificDocument::from_text(uri, "T", text))
    }

    fn event(session: [u8; 16], elem: Option<i64>, text: &str) -> DimeEvent {
        DimeEvent::Reading(ReadingEvent {
            id: None,
            session_id: SessionId::from_random_bytes(session),
            start: 0,
            end: 1000,
            page_numbers: vec![0],
            page_labels: vec!["0".into()],
            page_rects: vec![],
            plain_text_content: text.into(),
            page_eye_data: vec![],
            targetted_resource_id: elem,
            actor: ACTOR_PEYEDF.into(),
        })
    }

    #[test]
    fn upsert_by_content_hash_keeps_id_and_merges_tags() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let mut first = document("same text", "/old/path.pdf");
        first
            .document_mut()
            .tags
            .push(Tag::plain("done").unwrap());
        let stored = store.post_element(&first).unwrap();
        let id = stored.document().id.unwrap();

        let renamed = document("same text", "/new/path.pdf");
        let restored = store.post_element(&renamed).unwrap();
        assert_eq!(restored.document().id, Some(id));
        assert_eq!(restored.document().uri, "/new/path.pdf");
        assert_eq!(restored.document().tags.len(), 1, "tags survive upsert");
        assert_eq!(store.element_count(), 1);
    }

    #[test]
    fn event_referencing_unknown_element_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let err = store.post_event(&event([1; 16], Some(99), "text")).unwrap_err();
        assert_eq!(err.status_code(), 400);
    }

    #[test]
    fn post_then_get_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let elem = store.post_element(&document("body", "/a.pdf")).unwrap();
        let posted = store
            .post_event(&event([2; 16], elem.document().id, "visible words"))
            .unwrap();
        let fetched = store.get_event(posted.id().unwrap()).unwrap();
        assert_eq!(fetched, posted);
    }

    #[test]
    fn filters_are_conjunctive_and_commutative() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let elem = store.post_element(&document("body", "/a.pdf")).unwrap();
        let elem_id = elem.document().id;
        for i in 0..3 {
            store.post_event(&event([i; 16], elem_id, "words")).unwrap();
        }
        let by_session = store
            .query_events(&EventFilter::session(
                SessionId::from_random_bytes([1; 16]).as_str(),
            ))
            .unwrap();
        assert_eq!(by_session.len(), 1);

        let mut filter = EventFilter::session(SessionId::from_random_bytes([1; 16]).as_str());
        filter.type_uri = Some(READING_EVENT_TYPE.into());
        filter.actor = Some(ACTOR_PEYEDF.into());
        assert_eq!(store.query_events(&filter).unwrap(), by_session);

        // Disjoint conjunction is empty.
        let mut disjoint = filter.clone();
        disjoint.content_hash = Some("0".repeat(64));
        assert!(store.query_events(&disjoint).unwrap().is_empty());
    }

    #[test]
    fn delete_semantics() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let elem = store.post_element(&document("body", "/a.pdf")).unwrap();
        let elem_id = elem.document().id.unwrap();
        let ev = store.post_event(&event([3; 16], Some(elem_id), "x")).unwrap();

        // Element with dependents refuses deletion.
        assert_eq!(store.delete_element(elem_id).unwrap_err().status_code(), 409);
        store.delete_event(ev.id().unwrap()).unwrap();
        assert_eq!(store.get_event(ev.id().unwrap()).unwrap_err().status_code(), 404);
        store.delete_element(elem_id).unwrap();
        assert_eq!(store.delete_element(elem_id).unwrap_err().status_code(), 404);
    }

    #[test]
    fn restart_preserves_records() {
        let dir = tempfile::tempdir().unwrap();
        let (posted_elem, posted_event);
        {
            let store = Store::open(dir.path()).unwrap();
            posted_elem = store.post_element(&document("body", "/a.pdf")).unwrap();
            posted_event = store
                .post_event(&event([4; 16], posted_elem.document().id, "persist me"))
                .unwrap();
        }
        let reopened = Store::open(dir.path()).unwrap();
        assert_eq!(reopened.get_element(1).unwrap(), posted_elem);
        assert_eq!(reopened.get_event(1).unwrap(), posted_event);
        // Search indexes are rebuilt too.
        assert_eq!(
            reopened
                .event_search("persist", &EventFilter::default())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(reopened.event_count(), 1);
    }

    #[test]
    fn wiping_data_dir_resets_store() {
        let dir = tempfile::tempdir().unwrap();
        {
            let store = Store::open(dir.path()).unwrap();
            store.post_element(&document("body", "/a.pdf")).unwrap();
        }
        std::fs::remove_dir_all(dir.path()).unwrap();
        let fresh = Store::open(dir.path()).unwrap();
        assert_eq!(fresh.element_count(), 0);
        assert_eq!(fresh.event_count(), 0);
    }

    #[test]
    fn search_word_and_phrase() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let elem = store
            .post_element(&document("the pipe organ is large", "/a.pdf"))
            .unwrap();
        store
            .post_event(&event([5; 16], elem.document().id, "a pipe appeared in the viewport"))
            .unwrap();
        store
            .post_event(&event([6; 16], elem.document().id, "no match here"))
            .unwrap();

        let hits = store.event_search("pipe", &EventFilter::default()).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(store
            .event_search("absent", &EventFilter::default())
            .unwrap()
            .is_empty());

        let docs = store
            .element_search("pipe", &ElementFilter::default())
            .unwrap();
        assert_eq!(docs.len(), 1);
        // Phrase must match word order.
        assert_eq!(
            store
                .element_search("\"organ pipe\"", &ElementFilter::default())
                .unwrap()
                .len(),
            0
        );
        assert_eq!(
            store
                .element_search("\"pipe organ\"", &ElementFilter::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn tag_filter_matches_any_tag() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let mut tagged = document("tagged doc", "/t.pdf");
        tagged.document_mut().tags.push(Tag::plain("done").unwrap());
        store.post_element(&tagged).unwrap();
        store.post_element(&document("plain doc", "/p.pdf")).unwrap();

        let filter = ElementFilter {
            tag: Some("done".into()),
            ..Default::default()
        };
        assert_eq!(store.query_elements(&filter).unwrap().len(), 1);
        let missing = ElementFilter {
            tag: Some("todo".into()),
            ..Default::default()
        };
        assert!(store.query_elements(&missing).unwrap().is_empty());
    }
}
