//! One interface over the store, whether embedded or behind HTTP.

use peyedf_core::wire::{DimeEvent, InformationElement};

use crate::client::DimeClient;
use crate::error::StoreError;
use crate::query::{ElementFilter, EventFilter};
use crate::store::Store;

/// Read/write access to the store, implemented by the embedded [`Store`] and
/// by [`DimeClient`] for a remote service.
pub trait DimeApi {
    fn post_event(&self, event: &DimeEvent) -> Result<DimeEvent, StoreError>;
    fn post_element(&self, element: &InformationElement)
        -> Result<InformationElement, StoreError>;
    fn get_event(&self, id: i64) -> Result<DimeEvent, StoreError>;
    fn get_element(&self, id: i64) -> Result<InformationElement, StoreError>;
    fn query_events(&self, filter: &EventFilter) -> Result<Vec<DimeEvent>, StoreError>;
    fn query_elements(&self, filter: &ElementFilter)
        -> Result<Vec<InformationElement>, StoreError>;
    fn event_search(&self, query: &str, filter: &EventFilter)
        -> Result<Vec<DimeEvent>, StoreError>;
    fn element_search(
        &self,
        query: &str,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError>;

    fn find_element_by_hash(&self, hash: &str) -> Result<Option<InformationElement>, StoreError> {
        let filter = ElementFilter {
            content_hash: Some(hash.to_string()),
            ..Default::default()
        };
        Ok(self.query_elements(&filter)?.into_iter().next())
    }

    /// The API has no uri filter, so this scans the element list.
    fn find_element_by_uri(&self, uri: &str) -> Result<Option<InformationElement>, StoreError> {
        Ok(self
            .query_elements(&ElementFilter::default())?
            .into_iter()
            .find(|e| e.document().uri == uri))
    }

    fn session_events(&self, session_id: &str) -> Result<Vec<DimeEvent>, StoreError> {
        self.query_events(&EventFilter::session(session_id))
    }

    fn has_session(&self, session_id: &str) -> Result<bool, StoreError> {
        Ok(!self.session_events(session_id)?.is_empty())
    }
}

impl DimeApi for Store {
    fn post_event(&self, event: &DimeEvent) -> Result<DimeEvent, StoreError> {
        Store::post_event(self, event)
    }

    fn post_element(
        &self,
        element: &InformationElement,
    ) -> Result<InformationElement, StoreError> {
        Store::post_element(self, element)
    }

    fn get_event(&self, id: i64) -> Result<DimeEvent, StoreError> {
        Store::get_event(self, id)
    }

    fn get_element(&self, id: i64) -> Result<InformationElement, StoreError> {
        Store::get_element(self, id)
    }

    fn query_events(&self, filter: &EventFilter) -> Result<Vec<DimeEvent>, StoreError> {
        Store::query_events(self, filter)
    }

    fn query_elements(
        &self,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        Store::query_elements(self, filter)
    }

    fn event_search(
        &self,
        query: &str,
        filter: &EventFilter,
    ) -> Result<Vec<DimeEvent>, StoreError> {
        Store::event_search(self, query, filter)
    }

    fn element_search(
        &self,
        query: &str,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        Store::element_search(self, query, filter)
    }

    fn find_element_by_hash(&self, hash: &str) -> Result<Option<InformationElement>, StoreError> {
        Ok(Store::find_element_by_hash(self, hash))
    }

    fn find_element_by_uri(&self, uri: &str) -> Result<Option<InformationElement>, StoreError> {
        Ok(Store::find_element_by_uri(self, uri))
    }

    fn has_session(&self, session_id: &str) -> Result<bool, StoreError> {
        Ok(Store::has_session(self, session_id))
    }
}

impl DimeApi for DimeClient {
    fn post_event(&self, event: &DimeEvent) -> Result<DimeEvent, StoreError> {
        DimeClient::post_event(self, event)
    }

    fn post_element(
        &self,
        element: &InformationElement,
    ) -> Result<InformationElement, StoreError> {
        DimeClient::post_element(self, element)
    }

    fn get_event(&self, id: i64) -> Result<DimeEvent, StoreError> {
        DimeClient::get_event(self, id)
    }

    fn get_element(&self, id: i64) -> Result<InformationElement, StoreError> {
        DimeClient::get_element(self, id)
    }

    fn query_events(&self, filter: &EventFilter) -> Result<Vec<DimeEvent>, StoreError> {
        DimeClient::query_events(self, filter)
    }

    fn query_elements(
        &self,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        DimeClient::query_elements(self, filter)
    }

    fn event_search(
        &self,
        query: &str,
        filter: &EventFilter,
    ) -> Result<Vec<DimeEvent>, StoreError> {
        DimeClient::event_search(self, query, filter)
    }

    fn element_search(
        &self,
        query: &str,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        DimeClient::element_search(self, query, filter)
    }
}
