//! Gaze geometry: visual-angle spans and eye-rectangle operations.
//!
//! All coordinates are page points with the origin at the page's bottom left.
//! The central quantity is the on-screen span subtended by a visual angle at
//! the viewer's eye distance; 3 degrees bounds both paragraph capture height
//! and the answer-inclusion radius used by the analysis pipeline.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::model::{ClassSource, Rect};

/// Points per inch divided by centimeters per inch (72 / 2.54).
pub const DEFAULT_POINTS_PER_CM: f64 = 28.346;
pub const DEFAULT_EYE_DISTANCE_CM: f64 = 60.0;

/// Screen density and viewer distance used to convert visual angles into
/// page points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViewGeometry {
    #[serde(rename = "pointsPerCentimeter")]
    pub points_per_cm: f64,
    #[serde(rename = "eyeDistanceCm")]
    pub eye_distance_cm: f64,
}

impl Default for ViewGeometry {
    fn default() -> Self {
        ViewGeometry {
            points_per_cm: DEFAULT_POINTS_PER_CM,
            eye_distance_cm: DEFAULT_EYE_DISTANCE_CM,
        }
    }
}

impl ViewGeometry {
    pub fn new(points_per_cm: f64, eye_distance_cm: f64) -> Result<ViewGeometry, CoreError> {
        if !(points_per_cm > 0.0) || !(eye_distance_cm > 0.0) {
            return Err(CoreError::geometry(
                "points per centimeter and eye distance must be positive",
            ));
        }
        Ok(ViewGeometry {
            points_per_cm,
            eye_distance_cm,
        })
    }

    /// Same density, different eye distance (e.g. reported by the tracker).
    pub fn with_distance(self, eye_distance_cm: f64) -> ViewGeometry {
        if eye_distance_cm > 0.0 {
            ViewGeometry {
                eye_distance_cm,
                ..self
            }
        } else {
            self
        }
    }
}

/// Centimeters of screen covered by the given visual angle.
pub fn visual_span_cm(angle_degrees: f64, geometry: &ViewGeometry) -> Result<f64, CoreError> {
    if !(angle_degrees > 0.0 && angle_degrees < 90.0) {
        return Err(CoreError::geometry(format!(
            "visual angle must be in (0, 90) degrees, got {angle_degrees}"
        )));
    }
    if !(geometry.points_per_cm > 0.0) || !(geometry.eye_distance_cm > 0.0) {
        return Err(CoreError::geometry("geometry values must be positive"));
    }
    let half = (angle_degrees / 2.0).to_radians();
    Ok(2.0 * geometry.eye_distance_cm * half.tan())
}

/// Page points covered by the given visual angle.
pub fn visual_span_points(angle_degrees: f64, geometry: &ViewGeometry) -> Result<f64, CoreError> {
    Ok(visual_span_cm(angle_degrees, geometry)? * geometry.points_per_cm)
}

/// A point in page space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PagePoint {
    pub x: f64,
    pub y: f64,
}

impl PagePoint {
    pub fn new(x: f64, y: f64) -> PagePoint {
        PagePoint { x, y }
    }

    pub fn distance_to(&self, other: &PagePoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// A gaze-derived rectangle plus the fixations that produced it.
///
/// `fixation_indices` point into whatever fixation sequence the caller is
/// tracking. Pieces produced by [`split_and_crop`] may end up without any
/// fixations when all of an input's fixations fall into one slice.
#[derive(Debug, Clone, PartialEq)]
pub struct EyeRectangle {
    pub rect: Rect,
    pub fixation_indices: Vec<usize>,
    pub united_count: usize,
}

impl EyeRectangle {
    /// Wrap a paragraph rect produced by one fixation. The rect is re-tagged
    /// with an eye class source.
    pub fn from_fixation(rect: &Rect, fixation_index: usize) -> EyeRectangle {
        EyeRectangle {
            rect: rect.with_classification(rect.reading_class(), ClassSource::Eye),
            fixation_indices: vec![fixation_index],
            united_count: 1,
        }
    }

    pub fn fixation_count(&self) -> usize {
        self.fixation_indices.len()
    }
}

/// Repeatedly merge overlapping rectangles into their bounding boxes until
/// no two outputs overlap. Fixation indices are merged (sorted, deduped) and
/// united counts are summed. All inputs must lie on the same page.
pub fn unite_colliding_rects(rects: &[EyeRectangle]) -> Result<Vec<EyeRectangle>, CoreError> {
    if rects.is_empty() {
        return Ok(Vec::new());
    }
    let page = rects[0].rect.page_index();
    if rects.iter().any(|r| r.rect.page_index() != page) {
        return Err(CoreError::geometry(
            "unite_colliding_rects requires all rects on the same page",
        ));
    }

    let mut current: Vec<EyeRectangle> = rects.to_vec();
    loop {
        let n = current.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        let mut merged_any = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if current[i].rect.overlaps(&current[j].rect) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                        merged_any = true;
                    }
                }
            }
        }
        if !merged_any {
            break;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        let mut next = Vec::with_capacity(groups.len());
        for members in groups.values() {
            let mut rect = current[members[0]].rect.clone();
            let mut indices = Vec::new();
            let mut united = 0;
            for &m in members {
                rect = rect.union_bounds(&current[m].rect);
                indices.extend_from_slice(&current[m].fixation_indices);
                united += current[m].united_count;
            }
            indices.sort_unstable();
            indices.dedup();
            next.push(EyeRectangle {
                rect,
                fixation_indices: indices,
                united_count: united,
            });
        }
        current = next;
        // Bounding boxes of merged groups may overlap each other; iterate.
    }
    sort_canonical(&mut current);
    Ok(current)
}

fn sort_canonical(rects: &mut [EyeRectangle]) {
    rects.sort_by(|a, b| {
        (a.rect.min_x(), a.rect.min_y(), a.rect.max_x(), a.rect.max_y())
            .partial_cmp(&(b.rect.min_x(), b.rect.min_y(), b.rect.max_x(), b.rect.max_y()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Split rectangles taller than `max_height` into a top-down stack of pieces
/// whose heights sum exactly to the original. Fixations (resolved through
/// `fixations`) follow the piece containing their y coordinate.
pub fn split_and_crop(
    rects: &[EyeRectangle],
    max_height: f64,
    fixations: &[PagePoint],
) -> Result<Vec<EyeRectangle>, CoreError> {
    if !(max_height > 0.0) {
        return Err(CoreError::geometry("max_height must be positive"));
    }
    let mut out = Vec::new();
    for er in rects {
        let h = er.rect.height();
        if h <= max_height {
            out.push(er.clone());
            continue;
        }
        let pieces = (h / max_height).ceil() as usize;
        let top = er.rect.max_y();
        let bottom = er.rect.min_y();
        for k in 0..pieces {
            let piece_top = top - k as f64 * max_height;
            let piece_bottom = if k + 1 == pieces {
                bottom
            } else {
                top - (k + 1) as f64 * max_height
            };
            let rect = Rect::new(
                er.rect.min_x(),
                piece_bottom,
                er.rect.width(),
                piece_top - piece_bottom,
                er.rect.page_index(),
                er.rect.reading_class(),
                er.rect.class_source(),
            )?;
            let indices: Vec<usize> = er
                .fixation_indices
                .iter()
                .copied()
                .filter(|&idx| {
                    let Some(p) = fixations.get(idx) else {
                        return false;
                    };
                    let y = p.y.clamp(bottom, top);
                    if k == 0 {
                        y >= piece_bottom
                    } else {
                        y >= piece_bottom && y < piece_top
                    }
                })
                .collect();
            out.push(EyeRectangle {
                rect,
                fixation_indices: indices,
                united_count: er.united_count,
            });
        }
    }
    Ok(out)
}

/// Exact area of the union of rectangles (coordinate-compression grid).
/// Rects may span multiple pages; pages never overlap, so areas add up.
pub fn union_area(rects: &[Rect]) -> f64 {
    let mut pages: std::collections::BTreeMap<usize, Vec<&Rect>> = Default::default();
    for r in rects {
        pages.entry(r.page_index()).or_default().push(r);
    }
    let mut total = 0.0;
    for page_rects in pages.values() {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for r in page_rects {
            xs.push(r.min_x());
            xs.push(r.max_x());
            ys.push(r.min_y());
            ys.push(r.max_y());
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ys.dedup();
        for xi in 0..xs.len().saturating_sub(1) {
            for yi in 0..ys.len().saturating_sub(1) {
                let (cx, cy) = ((xs[xi] + xs[xi + 1]) / 2.0, (ys[yi] + ys[yi + 1]) / 2.0);
                if page_rects.iter().any(|r| r.contains(cx, cy) && r.area() > 0.0) {
                    total += (xs[xi + 1] - xs[xi]) * (ys[yi + 1] - ys[yi]);
                }
            }
        }
    }
    total
}
