//! Abstract document layouts.
//!
//! A layout stands in for a rendered PDF: ordered pages with crop boxes and
//! positioned text blocks. Consecutive blocks on a page belong to the same
//! paragraph unless a paragraph break (a double newline in the original
//! text) separates them. Layouts load from a versioned JSON file.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::geometry::{visual_span_points, PagePoint, ViewGeometry};
use crate::identity::ContentHash;
use crate::model::{ClassSource, ReadingClass, Rect};

pub const LAYOUT_VERSION: u32 = 1;

/// A block of text at a fixed position on a page.
#[derive(Debug, Clone, PartialEq)]
pub struct TextBlock {
    pub rect: Rect,
    pub text: String,
    pub paragraph_break_above: bool,
    pub paragraph_break_below: bool,
}

/// One page: its visible size and its text blocks, top to bottom.
#[derive(Debug, Clone, PartialEq)]
pub struct PageLayout {
    pub width: f64,
    pub height: f64,
    pub label: String,
    pub text_blocks: Vec<TextBlock>,
}

impl PageLayout {
    pub fn text(&self) -> String {
        self.text_blocks
            .iter()
            .map(|b| b.text.as_str())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A whole document: pages plus the derived plain text and content hash.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentLayout {
    pub pages: Vec<PageLayout>,
    pub title: String,
    pub plain_text: String,
    pub content_hash: ContentHash,
}

#[derive(Debug, Serialize, Deserialize)]
struct LayoutFile {
    #[serde(rename = "layoutVersion")]
    layout_version: u32,
    #[serde(default)]
    title: String,
    pages: Vec<PageFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PageFile {
    #[serde(rename = "cropBox")]
    crop_box: CropBoxFile,
    #[serde(default)]
    label: Option<String>,
    #[serde(rename = "textBlocks", default)]
    text_blocks: Vec<TextBlockFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CropBoxFile {
    width: f64,
    height: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TextBlockFile {
    x: f64,
    y: f64,
    width: f64,
    height: f64,
    text: String,
    #[serde(rename = "paragraphBreakAbove", default)]
    paragraph_break_above: bool,
    #[serde(rename = "paragraphBreakBelow", default)]
    paragraph_break_below: bool,
}

impl DocumentLayout {
    pub fn from_json(json: &str) -> Result<DocumentLayout, CoreError> {
        let file: LayoutFile = serde_json::from_str(json)?;
        if file.layout_version != LAYOUT_VERSION {
            return Err(CoreError::invalid(
                "layoutVersion",
                format!("expected {LAYOUT_VERSION}, got {}", file.layout_version),
            ));
        }
        if file.pages.is_empty() {
            return Err(CoreError::invalid("pages", "a layout needs at least one page"));
        }
        let mut pages = Vec::with_capacity(file.pages.len());
        for (index, page) in file.pages.into_iter().enumerate() {
            if !(page.crop_box.width > 0.0) || !(page.crop_box.height > 0.0) {
                return Err(CoreError::invalid(
                    "cropBox",
                    format!("page {index} crop box must be positive"),
                ));
            }
            let mut blocks = Vec::with_capacity(page.text_blocks.len());
            for block in page.text_blocks {
                let rect = Rect::new(
                    block.x,
                    block.y,
                    block.width,
                    block.height,
                    index,
                    ReadingClass::Unknown,
                    ClassSource::Unknown,
                )?;
                if rect.min_x() < 0.0
                    || rect.min_y() < 0.0
                    || rect.max_x() > page.crop_box.width
                    || rect.max_y() > page.crop_box.height
                {
                    return Err(CoreError::invalid(
                        "textBlocks",
                        format!("page {index} has a block outside its crop box"),
                    ));
                }
                blocks.push(TextBlock {
                    rect,
                    text: block.text,
                    paragraph_break_above: block.paragraph_break_above,
                    paragraph_break_below: block.paragraph_break_below,
                });
            }
            // Reading order: top of the page first.
            blocks.sort_by(|a, b| {
                (-a.rect.max_y(), a.rect.min_x())
                    .partial_cmp(&(-b.rect.max_y(), b.rect.min_x()))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            pages.push(PageLayout {
                width: page.crop_box.width,
                height: page.crop_box.height,
                label: page.label.unwrap_or_else(|| index.to_string()),
                text_blocks: blocks,
            });
        }
        let plain_text = pages
            .iter()
            .map(PageLayout::text)
            .collect::<Vec<_>>()
            .join("\n");
        let content_hash = ContentHash::compute(&plain_text);
        Ok(DocumentLayout {
            pages,
            title: file.title,
            plain_text,
            content_hash,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<DocumentLayout, CoreError> {
        let json = std::fs::read_to_string(path)
            .map_err(|e| CoreError::invalid("layout", format!("{}: {e}", path.display())))?;
        DocumentLayout::from_json(&json)
    }

    pub fn page(&self, index: usize) -> Result<&PageLayout, CoreError> {
        self.pages
            .get(index)
            .ok_or_else(|| CoreError::invalid("pageIndex", format!("no page {index}")))
    }

    /// Vertical offset of a page's top edge in document space (pages are
    /// stacked top to bottom with no gap, left-aligned at x = 0).
    pub fn page_offset(&self, index: usize) -> f64 {
        self.pages[..index].iter().map(|p| p.height).sum()
    }

    pub fn total_height(&self) -> f64 {
        self.pages.iter().map(|p| p.height).sum()
    }

    /// Area covered by text blocks, the denominator for per-class coverage.
    pub fn total_text_area(&self) -> f64 {
        self.pages
            .iter()
            .flat_map(|p| p.text_blocks.iter())
            .map(|b| b.rect.area())
            .sum()
    }

    /// The paragraph rectangle a fixation belongs to, clipped so its height
    /// fits within 3 degrees of visual angle. Misses (whitespace, margins)
    /// return `None`. The clip window is centered on the fixation and
    /// clamped to the paragraph bounds; paragraph extent never crosses a
    /// paragraph break.
    pub fn paragraph_rect_at(
        &self,
        page_index: usize,
        point: PagePoint,
        geometry: &ViewGeometry,
    ) -> Result<Option<Rect>, CoreError> {
        let page = self.page(page_index)?;
        let blocks = &page.text_blocks;
        let Some(hit) = blocks.iter().position(|b| b.rect.contains(point.x, point.y)) else {
            return Ok(None);
        };
        let mut first = hit;
        while first > 0
            && !blocks[first].paragraph_break_above
            && !blocks[first - 1].paragraph_break_below
        {
            first -= 1;
        }
        let mut last = hit;
        while last + 1 < blocks.len()
            && !blocks[last].paragraph_break_below
            && !blocks[last + 1].paragraph_break_above
        {
            last += 1;
        }
        let mut bounds = blocks[first].rect.clone();
        for block in &blocks[first + 1..=last] {
            bounds = bounds.union_bounds(&block.rect);
        }
        let span = visual_span_points(3.0, geometry)?;
        let rect = if bounds.height() <= span {
            bounds
        } else {
            let bottom = (point.y - span / 2.0)
                .clamp(bounds.min_y(), bounds.max_y() - span);
            Rect::new(
                bounds.min_x(),
                bottom,
                bounds.width(),
                span,
                page_index,
                ReadingClass::Unknown,
                ClassSource::Unknown,
            )?
        };
        Ok(Some(rect))
    }
}
