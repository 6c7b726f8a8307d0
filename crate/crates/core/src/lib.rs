//! Core data model and geometry for the PeyeDF reading-data toolkit.
//!
//! This crate hosts everything the other crates share:
//!
//! - document identity ([`ContentHash`], [`AppId`], [`SessionId`])
//! - the event/element data model ([`ReadingEvent`], [`SummaryReadingEvent`],
//!   [`ScientificDocument`]) and its JSON wire format
//! - abstract document layouts ([`DocumentLayout`]) standing in for rendered
//!   PDF pages
//! - gaze geometry: visual-angle spans, fixation-to-paragraph mapping,
//!   rectangle uniting/splitting and viewport computation

pub mod error;
pub mod geometry;
pub mod identity;
pub mod layout;
pub mod model;
pub mod text;
pub mod viewport;
pub mod wire;

pub use error::CoreError;
pub use geometry::{EyeRectangle, PagePoint, ViewGeometry};
pub use identity::{AppId, ContentHash, SessionId};
pub use layout::{DocumentLayout, PageLayout, TextBlock};
pub use model::{
    ClassSource, PageEyeData, ReadingClass, ReadingEvent, Rect, ScientificDocument,
    SearchQueryStat, SummaryReadingEvent, Tag, TagAnchor,
};
pub use viewport::ViewportState;
pub use wire::{DimeEvent, InformationElement, ONTOLOGY_PREFIX};
