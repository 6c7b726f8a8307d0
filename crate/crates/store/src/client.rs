//! Blocking HTTP client for the store API.

use base64::Engine;
use serde::de::DeserializeOwned;

use peyedf_core::wire::{DimeEvent, InformationElement};

use crate::error::StoreError;
use crate::query::{ElementFilter, EventFilter};

#[derive(Debug, Clone)]
pub struct DimeClient {
    base_url: String,
    auth_header: String,
    agent: ureq::Agent,
}

impl DimeClient {
    pub fn new(base_url: &str, username: &str, password: &str) -> DimeClient {
        let config = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .build();
        DimeClient {
            base_url: base_url.trim_end_matches('/').to_string(),
            auth_header: format!(
                "Basic {}",
                base64::engine::general_purpose::STANDARD
                    .encode(format!("{username}:{password}"))
            ),
            agent: config.into(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base_url
    }

    fn url(&self, path: &str, pairs: &[(String, String)]) -> String {
        let mut url = format!("{}{path}", self.base_url);
        let mut sep = '?';
        for (k, v) in pairs {
            url.push(sep);
            url.push_str(k);
            url.push('=');
            url.push_str(&percent_encode(v));
            sep = '&';
        }
        url
    }

    fn check<T: DeserializeOwned>(
        &self,
        mut response: ureq::http::Response<ureq::Body>,
    ) -> Result<T, StoreError> {
        let status = response.status().as_u16();
        if (200..300).contains(&status) {
            return response
                .body_mut()
                .read_json::<T>()
                .map_err(|e| StoreError::Http(format!("bad response body: {e}")));
        }
        let message = response
            .body_mut()
            .read_to_string()
            .unwrap_or_else(|_| String::new());
        Err(match status {
            401 => StoreError::Unauthorized,
            404 => StoreError::not_found(message),
            409 => StoreError::Conflict(message),
            400 => StoreError::bad_request(message),
            other => StoreError::Http(format!("status {other}: {message}")),
        })
    }

    fn get_json<T: DeserializeOwned>(
        &self,
        path: &str,
        pairs: &[(String, String)],
    ) -> Result<T, StoreError> {
        let response = self
            .agent
            .get(&self.url(path, pairs))
            .header("Authorization", &self.auth_header)
            .call()
            .map_err(|e| StoreError::Http(e.to_string()))?;
        self.check(response)
    }

    fn post_json<T: DeserializeOwned>(
        &self,
        path: &str,
        body: &impl serde::Serialize,
    ) -> Result<T, StoreError> {
        let response = self
            .agent
            .post(&self.url(path, &[]))
            .header("Authorization", &self.auth_header)
            .send_json(body)
            .map_err(|e| StoreError::Http(e.to_string()))?;
        self.check(response)
    }

    pub fn post_event(&self, event: &DimeEvent) -> Result<DimeEvent, StoreError> {
        self.post_json("/api/data/event", event)
    }

    pub fn post_element(
        &self,
        element: &InformationElement,
    ) -> Result<InformationElement, StoreError> {
        self.post_json("/api/data/informationelement", element)
    }

    pub fn get_event(&self, id: i64) -> Result<DimeEvent, StoreError> {
        self.get_json(&format!("/api/data/event/{id}"), &[])
    }

    pub fn get_element(&self, id: i64) -> Result<InformationElement, StoreError> {
        self.get_json(&format!("/api/data/informationelement/{id}"), &[])
    }

    pub fn delete_event(&self, id: i64) -> Result<(), StoreError> {
        let _: serde_json::Value = {
            let response = self
                .agent
                .delete(&self.url(&format!("/api/data/event/{id}"), &[]))
                .header("Authorization", &self.auth_header)
                .call()
                .map_err(|e| StoreError::Http(e.to_string()))?;
            self.check(response)?
        };
        Ok(())
    }

    pub fn delete_element(&self, id: i64) -> Result<(), StoreError> {
        let _: serde_json::Value = {
            let response = self
                .agent
                .delete(&self.url(&format!("/api/data/informationelement/{id}"), &[]))
                .header("Authorization", &self.auth_header)
                .call()
                .map_err(|e| StoreError::Http(e.to_string()))?;
            self.check(response)?
        };
        Ok(())
    }

    pub fn query_events(&self, filter: &EventFilter) -> Result<Vec<DimeEvent>, StoreError> {
        self.get_json("/api/data/events", &filter.to_pairs())
    }

    pub fn query_elements(
        &self,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        self.get_json("/api/data/informationelements", &filter.to_pairs())
    }

    pub fn event_search(
        &self,
        query: &str,
        filter: &EventFilter,
    ) -> Result<Vec<DimeEvent>, StoreError> {
        let mut pairs = vec![("query".to_string(), query.to_string())];
        pairs.extend(filter.to_pairs());
        self.get_json("/api/eventsearch", &pairs)
    }

    pub fn element_search(
        &self,
        query: &str,
        filter: &ElementFilter,
    ) -> Result<Vec<InformationElement>, StoreError> {
        let mut pairs = vec![("query".to_string(), query.to_string())];
        pairs.extend(filter.to_pairs());
        self.get_json("/api/search", &pairs)
    }

    /// True once the service answers any request (readiness probe).
    pub fn is_up(&self) -> bool {
        self.query_events(&EventFilter {
            actor: Some("PeyeDF".into()),
            ..Default::default()
        })
        .is_ok()
    }
}

fn percent_encode(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for byte in value.bytes() {
        match byte {
            b'A'..=b'Z' | b'a'..=b'z' | b'0'..=b'9' | b'-' | b'_' | b'.' | b'~' | b'(' | b')'
            | b',' | b'/' | b':' | b'#' => out.push(byte as char),
            other => out.push_str(&format!("%{other:02X}")),
        }
    }
    out
}
