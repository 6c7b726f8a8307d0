//! Viewport computation and screen/page coordinate conversion.
//!
//! Pages are stacked vertically in a shared document space (page 0 on top,
//! left-aligned, no gaps). A viewport is the window rectangle positioned in
//! that space; intersecting it with each page yields per-page rects carrying
//! reading class 10 and class source 1.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::geometry::PagePoint;
use crate::layout::DocumentLayout;
use crate::model::{ClassSource, ReadingClass, Rect};

/// Where the window sits over the document and how big it is.
///
/// `scroll` is the document-space position of the window's top-left corner
/// (x right, y down from the top of page 0); `window` is its size in points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViewportState {
    pub scroll: (f64, f64),
    pub window: (f64, f64),
}

impl ViewportState {
    pub fn new(scroll: (f64, f64), window: (f64, f64)) -> Result<ViewportState, CoreError> {
        if !(window.0 > 0.0 && window.1 > 0.0) {
            return Err(CoreError::geometry("window size must be positive"));
        }
        Ok(ViewportState { scroll, window })
    }
}

/// One viewport rect per page the window overlaps, in page order.
/// Zero-area intersections are excluded.
pub fn compute_viewport(
    state: &ViewportState,
    layout: &DocumentLayout,
) -> Result<Vec<Rect>, CoreError> {
    if !(state.window.0 > 0.0 && state.window.1 > 0.0) {
        return Err(CoreError::geometry("window size must be positive"));
    }
    let (wx0, wy0) = state.scroll;
    let (wx1, wy1) = (wx0 + state.window.0, wy0 + state.window.1);
    let mut rects = Vec::new();
    for (index, page) in layout.pages.iter().enumerate() {
        let top = layout.page_offset(index);
        let bottom = top + page.height;
        let ix0 = wx0.max(0.0);
        let ix1 = wx1.min(page.width);
        let iy0 = wy0.max(top);
        let iy1 = wy1.min(bottom);
        if ix1 <= ix0 || iy1 <= iy0 {
            continue;
        }
        rects.push(Rect::new(
            ix0,
            page.height - (iy1 - top),
            ix1 - ix0,
            iy1 - iy0,
            index,
            ReadingClass::Viewport,
            ClassSource::Viewport,
        )?);
    }
    Ok(rects)
}

/// Pages the viewport overlaps, ascending.
pub fn pages_in_viewport(
    state: &ViewportState,
    layout: &DocumentLayout,
) -> Result<Vec<usize>, CoreError> {
    Ok(compute_viewport(state, layout)?
        .iter()
        .map(Rect::page_index)
        .collect())
}

/// Text of every block that overlaps the viewport, in reading order.
pub fn text_in_viewport(
    state: &ViewportState,
    layout: &DocumentLayout,
) -> Result<String, CoreError> {
    let rects = compute_viewport(state, layout)?;
    let mut parts = Vec::new();
    for rect in &rects {
        let page = layout.page(rect.page_index())?;
        for block in &page.text_blocks {
            if block.rect.overlaps(rect) {
                parts.push(block.text.as_str());
            }
        }
    }
    Ok(parts.join("\n"))
}

/// Map a window-relative screen point (y down from the window's top-left)
/// to page coordinates. Points that hit no page return `None`.
pub fn screen_to_page(
    screen: (f64, f64),
    state: &ViewportState,
    layout: &DocumentLayout,
) -> Option<(usize, PagePoint)> {
    let doc_x = state.scroll.0 + screen.0;
    let doc_y = state.scroll.1 + screen.1;
    if doc_x < 0.0 || doc_y < 0.0 {
        return None;
    }
    let mut top = 0.0;
    for (index, page) in layout.pages.iter().enumerate() {
        let bottom = top + page.height;
        if doc_y >= top && doc_y < bottom {
            if doc_x > page.width {
                return None;
            }
            return Some((index, PagePoint::new(doc_x, page.height - (doc_y - top))));
        }
        top = bottom;
    }
    None
}

/// Inverse of [`screen_to_page`].
pub fn page_to_screen(
    page_index: usize,
    point: PagePoint,
    state: &ViewportState,
    layout: &DocumentLayout,
) -> Result<(f64, f64), CoreError> {
    let page = layout.page(page_index)?;
    let doc_x = point.x;
    let doc_y = layout.page_offset(page_index) + (page.height - point.y);
    Ok((doc_x - state.scroll.0, doc_y - state.scroll.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::DocumentLayout;

    fn layout() -> DocumentLayout {
        DocumentLayout::from_json(
            r#"{
                "layoutVersion": 1,
                "pages": [
                    {"cropBox": {"width": 612, "height": 792}, "textBlocks": [
                        {"x": 50, "y": 100, "width": 500, "height": 80, "text": "bottom of page one"}
                    ]},
                    {"cropBox": {"width": 612, "height": 792}, "textBlocks": [
                        {"x": 50, "y": 700, "width": 500, "height": 60, "text": "top of page two"}
                    ]}
                ]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn window_inside_single_page() {
        let layout = layout();
        let state = ViewportState::new((0.0, 100.0), (612.0, 500.0)).unwrap();
        let rects = compute_viewport(&state, &layout).unwrap();
        assert_eq!(rects.len(), 1);
        assert_eq!(rects[0].page_index(), 0);
        assert_eq!(rects[0].reading_class(), ReadingClass::Viewport);
        assert_eq!(rects[0].class_source(), ClassSource::Viewport);
        // Document y in [100, 600] maps to page y in [192, 692].
        assert_eq!(rects[0].min_y(), 192.0);
        assert_eq!(rects[0].height(), 500.0);
        assert_eq!(pages_in_viewport(&state, &layout).unwrap(), vec![0]);
    }

    #[test]
    fn window_straddling_two_pages() {
        let layout = layout();
        let state = ViewportState::new((0.0, 600.0), (612.0, 500.0)).unwrap();
        let rects = compute_viewport(&state, &layout).unwrap();
        assert_eq!(rects.len(), 2);
        assert_eq!(rects[0].page_index(), 0);
        assert_eq!(rects[1].page_index(), 1);
        // Page 0 gets its bottom 192pt, page 1 its top 308pt.
        assert_eq!(rects[0].min_y(), 0.0);
        assert_eq!(rects[0].height(), 192.0);
        assert_eq!(rects[1].max_y(), 792.0);
        assert_eq!(rects[1].height(), 308.0);
        let total: f64 = rects.iter().map(Rect::area).sum();
        assert!((total - 612.0 * 500.0).abs() < 1e-9);
    }

    #[test]
    fn zero_area_intersection_is_excluded() {
        let layout = layout();
        // Window ends exactly at the page boundary.
        let state = ViewportState::new((0.0, 292.0), (612.0, 500.0)).unwrap();
        let rects = compute_viewport(&state, &layout).unwrap();
        assert_eq!(rects.len(), 1);
        assert_eq!(rects[0].page_index(), 0);
    }

    #[test]
    fn viewport_area_never_exceeds_window_area() {
        let layout = layout();
        // Window wider than the page and hanging past the last page.
        let state = ViewportState::new((-50.0, 1400.0), (800.0, 400.0)).unwrap();
        let rects = compute_viewport(&state, &layout).unwrap();
        let total: f64 = rects.iter().map(Rect::area).sum();
        assert!(total <= 800.0 * 400.0);
        assert!(total > 0.0);
    }

    #[test]
    fn rejects_empty_window() {
        let layout = layout();
        assert!(ViewportState::new((0.0, 0.0), (0.0, 100.0)).is_err());
        let state = ViewportState {
            scroll: (0.0, 0.0),
            window: (0.0, 100.0),
        };
        assert!(compute_viewport(&state, &layout).is_err());
    }

    #[test]
    fn screen_page_round_trip() {
        let layout = layout();
        let state = ViewportState::new((10.0, 700.0), (600.0, 500.0)).unwrap();
        let (page, point) = screen_to_page((300.0, 250.0), &state, &layout).unwrap();
        assert_eq!(page, 1);
        let screen = page_to_screen(page, point, &state, &layout).unwrap();
        assert!((screen.0 - 300.0).abs() < 1e-6);
        assert!((screen.1 - 250.0).abs() < 1e-6);
    }

    #[test]
    fn chrome_points_miss() {
        let layout = layout();
        let state = ViewportState::new((0.0, 0.0), (800.0, 500.0)).unwrap();
        // Beyond the right edge of the page.
        assert!(screen_to_page((700.0, 100.0), &state, &layout).is_none());
        // Above the document.
        assert!(screen_to_page((100.0, -10.0), &state, &layout).is_none());
        // Below the last page.
        let state = ViewportState::new((0.0, 1500.0), (612.0, 500.0)).unwrap();
        assert!(screen_to_page((100.0, 200.0), &state, &layout).is_none());
    }

    #[test]
    fn viewport_center_maps_to_page_zero() {
        let layout = layout();
        let state = ViewportState::new((0.0, 0.0), (612.0, 500.0)).unwrap();
        let (page, point) = screen_to_page((306.0, 250.0), &state, &layout).unwrap();
        assert_eq!(page, 0);
        assert_eq!(point.x, 306.0);
        assert_eq!(point.y, 792.0 - 250.0);
    }
}
