//! Canonical JSON wire format.
//!
//! Records carry an `@type` discriminator whose value is the type name
//! prefixed with the ontology URI, so consumers can distinguish producers.
//! Unknown fields are ignored on input; deserialization re-checks the model
//! invariants and names the offending field on failure.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::model::{ReadingEvent, ScientificDocument, SummaryReadingEvent};

pub const ONTOLOGY_PREFIX: &str = "http://www.hiit.fi/ontologies/dime/";

pub const READING_EVENT_TYPE: &str = "http://www.hiit.fi/ontologies/dime/#ReadingEvent";
pub const SUMMARY_READING_EVENT_TYPE: &str =
    "http://www.hiit.fi/ontologies/dime/#SummaryReadingEvent";
pub const SCIENTIFIC_DOCUMENT_TYPE: &str =
    "http://www.hiit.fi/ontologies/dime/#ScientificDocument";

/// Any event the toolkit stores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "@type")]
pub enum DimeEvent {
    #[serde(rename = "http://www.hiit.fi/ontologies/dime/#ReadingEvent")]
    Reading(ReadingEvent),
    #[serde(rename = "http://www.hiit.fi/ontologies/dime/#SummaryReadingEvent")]
    Summary(SummaryReadingEvent),
}

impl DimeEvent {
    pub fn type_uri(&self) -> &'static str {
        match self {
            DimeEvent::Reading(_) => READING_EVENT_TYPE,
            DimeEvent::Summary(_) => SUMMARY_READING_EVENT_TYPE,
        }
    }

    pub fn session_id(&self) -> &crate::identity::SessionId {
        match self {
            DimeEvent::Reading(e) => &e.session_id,
            DimeEvent::Summary(e) => &e.session_id,
        }
    }

    pub fn actor(&self) -> &str {
        match self {
            DimeEvent::Reading(e) => &e.actor,
            DimeEvent::Summary(e) => &e.actor,
        }
    }

    pub fn id(&self) -> Option<i64> {
        match self {
            DimeEvent::Reading(e) => e.id,
            DimeEvent::Summary(e) => e.id,
        }
    }

    pub fn set_id(&mut self, id: i64) {
        match self {
            DimeEvent::Reading(e) => e.id = Some(id),
            DimeEvent::Summary(e) => e.id = Some(id),
        }
    }

    pub fn targetted_resource_id(&self) -> Option<i64> {
        match self {
            DimeEvent::Reading(e) => e.targetted_resource_id,
            DimeEvent::Summary(e) => e.targetted_resource_id,
        }
    }

    pub fn plain_text_content(&self) -> &str {
        match self {
            DimeEvent::Reading(e) => &e.plain_text_content,
            DimeEvent::Summary(_) => "",
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            DimeEvent::Reading(e) => e.validate(),
            DimeEvent::Summary(e) => e.validate(),
        }
    }
}

/// Any information element the toolkit stores. Only one kind exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "@type")]
pub enum InformationElement {
    #[serde(rename = "http://www.hiit.fi/ontologies/dime/#ScientificDocument")]
    ScientificDocument(ScientificDocument),
}

impl InformationElement {
    pub fn type_uri(&self) -> &'static str {
        SCIENTIFIC_DOCUMENT_TYPE
    }

    pub fn document(&self) -> &ScientificDocument {
        match self {
            InformationElement::ScientificDocument(d) => d,
        }
    }

    pub fn document_mut(&mut self) -> &mut ScientificDocument {
        match self {
            InformationElement::ScientificDocument(d) => d,
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        self.document().validate()
    }
}

pub fn serialize_event(event: &DimeEvent) -> Result<String, CoreError> {
    Ok(serde_json::to_string(event)?)
}

/// Parse and invariant-check an event document.
pub fn deserialize_event(json: &str) -> Result<DimeEvent, CoreError> {
    let event: DimeEvent = serde_json::from_str(json)?;
    event.validate()?;
    Ok(event)
}

pub fn serialize_element(element: &InformationElement) -> Result<String, CoreError> {
    Ok(serde_json::to_string(element)?)
}

pub fn deserialize_element(json: &str) -> Result<InformationElement, CoreError> {
    let element: InformationElement = serde_json::from_str(json)?;
    element.validate()?;
    Ok(element)
}
