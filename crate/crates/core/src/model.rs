//! Event and information-element data model.
//!
//! Events are snapshots of user activity; information elements represent
//! documents. `ScientificDocument` is the only element kind. Rects classify
//! rectangles in page space (origin at the page's bottom left) by what they
//! mean (`readingClass`) and where they came from (`classSource`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::identity::{AppId, ContentHash, SessionId};

/// What a rectangle means. The viewport code is fixed at 10; a paragraph
/// counts as read once it has received at least three fixations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum ReadingClass {
    Unknown,
    Viewport,
    Read,
    Important,
    Critical,
}

impl ReadingClass {
    pub fn code(self) -> u32 {
        match self {
            ReadingClass::Unknown => 0,
            ReadingClass::Viewport => 10,
            ReadingClass::Read => 20,
            ReadingClass::Important => 25,
            ReadingClass::Critical => 30,
        }
    }

    pub fn from_code(code: u32) -> Result<ReadingClass, CoreError> {
        match code {
            0 => Ok(ReadingClass::Unknown),
            10 => Ok(ReadingClass::Viewport),
            20 => Ok(ReadingClass::Read),
            25 => Ok(ReadingClass::Important),
            30 => Ok(ReadingClass::Critical),
            other => Err(CoreError::invalid(
                "readingClass",
                format!("unknown code {other}"),
            )),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ReadingClass::Unknown => "unknown",
            ReadingClass::Viewport => "viewport",
            ReadingClass::Read => "read",
            ReadingClass::Important => "important",
            ReadingClass::Critical => "critical",
        }
    }
}

impl TryFrom<u32> for ReadingClass {
    type Error = CoreError;
    fn try_from(value: u32) -> Result<Self, Self::Error> {
        ReadingClass::from_code(value)
    }
}

impl From<ReadingClass> for u32 {
    fn from(value: ReadingClass) -> u32 {
        value.code()
    }
}

/// Where a rectangle came from. Viewport rects always carry source 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum ClassSource {
    Unknown,
    Viewport,
    Click,
    Eye,
    ManualSelection,
}

impl ClassSource {
    pub fn code(self) -> u32 {
        match self {
            ClassSource::Unknown => 0,
            ClassSource::Viewport => 1,
            ClassSource::Click => 2,
            ClassSource::Eye => 3,
            ClassSource::ManualSelection => 4,
        }
    }

    pub fn from_code(code: u32) -> Result<ClassSource, CoreError> {
        match code {
            0 => Ok(ClassSource::Unknown),
            1 => Ok(ClassSource::Viewport),
            2 => Ok(ClassSource::Click),
            3 => Ok(ClassSource::Eye),
            4 => Ok(ClassSource::ManualSelection),
            other => Err(CoreError::invalid(
                "classSource",
                format!("unknown code {other}"),
            )),
        }
    }
}

impl TryFrom<u32> for ClassSource {
    type Error = CoreError;
    fn try_from(value: u32) -> Result<Self, Self::Error> {
        ClassSource::from_code(value)
    }
}

impl From<ClassSource> for u32 {
    fn from(value: ClassSource) -> u32 {
        value.code()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct RectOrigin {
    x: f64,
    y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct RectSize {
    width: f64,
    height: f64,
}

#[derive(Debug, Clone, Deserialize)]
struct RawRect {
    origin: RectOrigin,
    size: RectSize,
    #[serde(rename = "pageIndex")]
    page_index: usize,
    #[serde(rename = "readingClass")]
    reading_class: ReadingClass,
    #[serde(rename = "classSource")]
    class_source: ClassSource,
}

/// A classified rectangle in page space: origin at the page's bottom left,
/// units in points. Construction rejects negative or non-finite dimensions,
/// so any `Rect` in circulation satisfies the invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRect")]
pub struct Rect {
    origin: RectOrigin,
    size: RectSize,
    #[serde(rename = "pageIndex")]
    page_index: usize,
    #[serde(rename = "readingClass")]
    reading_class: ReadingClass,
    #[serde(rename = "classSource")]
    class_source: ClassSource,
}

impl Rect {
    pub fn new(
        x: f64,
        y: f64,
        width: f64,
        height: f64,
        page_index: usize,
        reading_class: ReadingClass,
        class_source: ClassSource,
    ) -> Result<Rect, CoreError> {
        for (field, v) in [("x", x), ("y", y), ("width", width), ("height", height)] {
            if !v.is_finite() {
                return Err(CoreError::invalid(field, "must be finite"));
            }
        }
        if width < 0.0 || height < 0.0 {
            return Err(CoreError::invalid("size", "width and height must be >= 0"));
        }
        Ok(Rect {
            origin: RectOrigin { x, y },
            size: RectSize { width, height },
            page_index,
            reading_class,
            class_source,
        })
    }

    pub fn x(&self) -> f64 {
        self.origin.x
    }

    pub fn y(&self) -> f64 {
        self.origin.y
    }

    pub fn width(&self) -> f64 {
        self.size.width
    }

    pub fn height(&self) -> f64 {
        self.size.height
    }

    pub fn page_index(&self) -> usize {
        self.page_index
    }

    pub fn reading_class(&self) -> ReadingClass {
        self.reading_class
    }

    pub fn class_source(&self) -> ClassSource {
        self.class_source
    }

    pub fn min_x(&self) -> f64 {
        self.origin.x
    }

    pub fn max_x(&self) -> f64 {
        self.origin.x + self.size.width
    }

    pub fn min_y(&self) -> f64 {
        self.origin.y
    }

    pub fn max_y(&self) -> f64 {
        self.origin.y + self.size.height
    }

    pub fn area(&self) -> f64 {
        self.size.width * self.size.height
    }

    pub fn center(&self) -> (f64, f64) {
        (
            self.origin.x + self.size.width / 2.0,
            self.origin.y + self.size.height / 2.0,
        )
    }

    /// Edge-inclusive point containment.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.min_x() && x <= self.max_x() && y >= self.min_y() && y <= self.max_y()
    }

    /// True when the rects share positive area (touching edges do not count).
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.page_index == other.page_index
            && self.min_x() < other.max_x()
            && other.min_x() < self.max_x()
            && self.min_y() < other.max_y()
            && other.min_y() < self.max_y()
    }

    /// Smallest rect covering both; classification is taken from `self`.
    pub fn union_bounds(&self, other: &Rect) -> Rect {
        let min_x = self.min_x().min(other.min_x());
        let min_y = self.min_y().min(other.min_y());
        let max_x = self.max_x().max(other.max_x());
        let max_y = self.max_y().max(other.max_y());
        Rect::new(
            min_x,
            min_y,
            max_x - min_x,
            max_y - min_y,
            self.page_index,
            self.reading_class,
            self.class_source,
        )
        .expect("bounds of valid rects are valid")
    }

    pub fn with_classification(&self, class: ReadingClass, source: ClassSource) -> Rect {
        let mut r = self.clone();
        r.reading_class = class;
        r.class_source = source;
        r
    }
}

impl TryFrom<RawRect> for Rect {
    type Error = CoreError;
    fn try_from(raw: RawRect) -> Result<Self, Self::Error> {
        Rect::new(
            raw.origin.x,
            raw.origin.y,
            raw.size.width,
            raw.size.height,
            raw.page_index,
            raw.reading_class,
            raw.class_source,
        )
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawPageEyeData {
    #[serde(rename = "pageIndex")]
    page_index: usize,
    xs: Vec<f64>,
    ys: Vec<f64>,
    durations: Vec<f64>,
    #[serde(rename = "pupilSizes")]
    pupil_sizes: Vec<f64>,
    #[serde(rename = "startTimes")]
    start_times: Vec<f64>,
}

/// Per-page fixation arrays, in chronological order. All five arrays have
/// the same length; a pupil size of 0 means the tracker could not measure it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPageEyeData")]
pub struct PageEyeData {
    #[serde(rename = "pageIndex")]
    pub page_index: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Fixation durations in milliseconds.
    pub durations: Vec<f64>,
    #[serde(rename = "pupilSizes")]
    pub pupil_sizes: Vec<f64>,
    /// Millisecond offsets from the owning event's start time.
    #[serde(rename = "startTimes")]
    pub start_times: Vec<f64>,
}

impl PageEyeData {
    pub fn new(
        page_index: usize,
        xs: Vec<f64>,
        ys: Vec<f64>,
        durations: Vec<f64>,
        pupil_sizes: Vec<f64>,
        start_times: Vec<f64>,
    ) -> Result<PageEyeData, CoreError> {
        let n = xs.len();
        if [ys.len(), durations.len(), pupil_sizes.len(), start_times.len()]
            .iter()
            .any(|&len| len != n)
        {
            return Err(CoreError::invalid(
                "pageEyeData",
                "fixation arrays must have equal lengths",
            ));
        }
        Ok(PageEyeData {
            page_index,
            xs,
            ys,
            durations,
            pupil_sizes,
            start_times,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

impl TryFrom<RawPageEyeData> for PageEyeData {
    type Error = CoreError;
    fn try_from(raw: RawPageEyeData) -> Result<Self, Self::Error> {
        PageEyeData::new(
            raw.page_index,
            raw.xs,
            raw.ys,
            raw.durations,
            raw.pupil_sizes,
            raw.start_times,
        )
    }
}

pub const ACTOR_PEYEDF: &str = "PeyeDF";

/// One uninterrupted reading period: the visible pages, the viewport and
/// paragraph rects, the visible text, and per-page gaze arrays when an eye
/// tracker was active.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadingEvent {
    /// Store-assigned id; absent until the event has been posted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<i64>,
    #[serde(rename = "sessionId")]
    pub session_id: SessionId,
    /// UTC milliseconds since epoch.
    pub start: i64,
    /// UTC milliseconds since epoch.
    pub end: i64,
    #[serde(rename = "pageNumbers")]
    pub page_numbers: Vec<usize>,
    #[serde(rename = "pageLabels")]
    pub page_labels: Vec<String>,
    #[serde(rename = "pageRects")]
    pub page_rects: Vec<Rect>,
    #[serde(rename = "plainTextContent")]
    pub plain_text_content: String,
    #[serde(rename = "pageEyeData", default, skip_serializing_if = "Vec::is_empty")]
    pub page_eye_data: Vec<PageEyeData>,
    /// Store id of the document this event targets.
    #[serde(
        rename = "targettedResourceId",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub targetted_resource_id: Option<i64>,
    pub actor: String,
}

impl ReadingEvent {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.page_numbers.len() != self.page_labels.len() {
            return Err(CoreError::invalid(
                "pageLabels",
                format!(
                    "pageNumbers has {} entries but pageLabels has {}",
                    self.page_numbers.len(),
                    self.page_labels.len()
                ),
            ));
        }
        if self.end < self.start {
            return Err(CoreError::invalid("end", "end time precedes start time"));
        }
        for rect in &self.page_rects {
            if !self.page_numbers.contains(&rect.page_index()) {
                return Err(CoreError::invalid(
                    "pageRects",
                    format!("rect on page {} not listed in pageNumbers", rect.page_index()),
                ));
            }
        }
        Ok(())
    }
}

/// One recorded in-document search: the query, how many hits it produced,
/// and which pages the hits fell on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchQueryStat {
    pub query: String,
    #[serde(rename = "hitCount")]
    pub hit_count: usize,
    pub pages: Vec<usize>,
}

/// Emitted once, when the document closes: searched keywords with their hit
/// statistics and the fraction of the document's text covered by each
/// reading class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReadingEvent {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<i64>,
    #[serde(rename = "sessionId")]
    pub session_id: SessionId,
    pub start: i64,
    pub end: i64,
    #[serde(rename = "pageNumbers")]
    pub page_numbers: Vec<usize>,
    #[serde(rename = "pageLabels")]
    pub page_labels: Vec<String>,
    #[serde(rename = "searchQueries", default)]
    pub search_queries: Vec<SearchQueryStat>,
    /// Keyed by reading-class name; values in [0, 1].
    #[serde(rename = "perClassProportions", default)]
    pub per_class_proportions: BTreeMap<String, f64>,
    #[serde(
        rename = "targettedResourceId",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub targetted_resource_id: Option<i64>,
    pub actor: String,
}

impl SummaryReadingEvent {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.page_numbers.len() != self.page_labels.len() {
            return Err(CoreError::invalid(
                "pageLabels",
                "pageNumbers and pageLabels must have equal lengths",
            ));
        }
        if self.end < self.start {
            return Err(CoreError::invalid("end", "end time precedes start time"));
        }
        for (class, p) in &self.per_class_proportions {
            if !(*p >= 0.0 && *p <= 1.0) {
                return Err(CoreError::invalid(
                    "perClassProportions",
                    format!("proportion for {class} is {p}, outside [0,1]"),
                ));
            }
        }
        Ok(())
    }
}

/// A short textual tag, optionally anchored to a rectangle of text on a page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tag {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<TagAnchor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TagAnchor {
    #[serde(rename = "pageIndex")]
    pub page_index: usize,
    pub rect: Rect,
    #[serde(rename = "selectedText")]
    pub selected_text: String,
}

impl Tag {
    pub fn plain(text: impl Into<String>) -> Result<Tag, CoreError> {
        let text = text.into();
        if text.is_empty() {
            return Err(CoreError::invalid("tag", "tag text must be non-empty"));
        }
        Ok(Tag { text, anchor: None })
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        if self.text.is_empty() {
            return Err(CoreError::invalid("tag", "tag text must be non-empty"));
        }
        Ok(())
    }
}

/// The only information-element kind: a document identified by the hash of
/// its textual content.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScientificDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<i64>,
    #[serde(rename = "contentHash")]
    pub content_hash: ContentHash,
    #[serde(rename = "appId")]
    pub app_id: AppId,
    pub uri: String,
    pub title: String,
    #[serde(rename = "plainTextContent")]
    pub plain_text_content: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<Tag>,
}

impl ScientificDocument {
    /// Build a document from its text; hash and appId are derived.
    pub fn from_text(
        uri: impl Into<String>,
        title: impl Into<String>,
        plain_text: impl Into<String>,
    ) -> ScientificDocument {
        let plain_text = plain_text.into();
        let content_hash = ContentHash::compute(&plain_text);
        let app_id = AppId::from_hash(&content_hash);
        ScientificDocument {
            id: None,
            content_hash,
            app_id,
            uri: uri.into(),
            title: title.into(),
            plain_text_content: plain_text,
            tags: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        if self.app_id.content_hash() != self.content_hash {
            return Err(CoreError::invalid(
                "appId",
                "appId suffix does not match contentHash",
            ));
        }
        if ContentHash::compute(&self.plain_text_content) != self.content_hash {
            return Err(CoreError::invalid(
                "contentHash",
                "digest of plainTextContent does not match contentHash",
            ));
        }
        for tag in &self.tags {
            tag.validate()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reading_class_codes_are_pinned() {
        assert_eq!(ReadingClass::Viewport.code(), 10);
        assert_eq!(ClassSource::Viewport.code(), 1);
        assert_eq!(ReadingClass::Read.code(), 20);
        assert_eq!(ReadingClass::Important.code(), 25);
        assert_eq!(ReadingClass::Critical.code(), 30);
        assert!(ReadingClass::from_code(11).is_err());
        assert!(ClassSource::from_code(9).is_err());
    }

    #[test]
    fn rect_rejects_negative_and_non_finite_sizes() {
        assert!(Rect::new(0.0, 0.0, -1.0, 5.0, 0, ReadingClass::Unknown, ClassSource::Unknown)
            .is_err());
        assert!(Rect::new(
            0.0,
            0.0,
            f64::NAN,
            5.0,
            0,
            ReadingClass::Unknown,
            ClassSource::Unknown
        )
        .is_err());
    }

    #[test]
    fn rect_deserialization_enforces_invariants() {
        let bad = r#"{"origin":{"x":0,"y":0},"size":{"width":-3,"height":2},"pageIndex":0,"readingClass":0,"classSource":0}"#;
        assert!(serde_json::from_str::<Rect>(bad).is_err());
        let ok = r#"{"origin":{"x":1,"y":2},"size":{"width":3,"height":4},"pageIndex":1,"readingClass":10,"classSource":1}"#;
        let rect: Rect = serde_json::from_str(ok).unwrap();
        assert_eq!(rect.reading_class(), ReadingClass::Viewport);
        assert_eq!(rect.class_source(), ClassSource::Viewport);
    }

    #[test]
    fn overlap_is_strict() {
        let a = Rect::new(0.0, 0.0, 10.0, 10.0, 0, ReadingClass::Unknown, ClassSource::Eye)
            .unwrap();
        let touching =
            Rect::new(10.0, 0.0, 10.0, 10.0, 0, ReadingClass::Unknown, ClassSource::Eye).unwrap();
        let crossing =
            Rect::new(5.0, 5.0, 10.0, 10.0, 0, ReadingClass::Unknown, ClassSource::Eye).unwrap();
        assert!(!a.overlaps(&touching));
        assert!(a.overlaps(&crossing));
    }

    #[test]
    fn page_eye_data_requires_equal_lengths() {
        assert!(PageEyeData::new(0, vec![1.0], vec![1.0, 2.0], vec![1.0], vec![0.0], vec![0.0])
            .is_err());
    }

    #[test]
    fn document_from_text_satisfies_identity_invariants() {
        let doc = ScientificDocument::from_text("/tmp/a.pdf", "A", "body text");
        doc.validate().unwrap();
        assert!(doc.app_id.as_str().starts_with("PeyeDF_"));
    }
}
