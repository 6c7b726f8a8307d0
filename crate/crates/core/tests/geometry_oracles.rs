//! Randomized checks of the rectangle operations against brute-force
//! reference implementations that share nothing with the library code paths.

use peyedf_core::geometry::{
    split_and_crop, union_area, unite_colliding_rects, EyeRectangle, PagePoint,
};
use peyedf_core::model::{ClassSource, ReadingClass, Rect};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rect(x: f64, y: f64, w: f64, h: f64) -> Rect {
    Rect::new(x, y, w, h, 0, ReadingClass::Unknown, ClassSource::Eye).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng) -> (Vec<EyeRectangle>, Vec<PagePoint>) {
    let n = rng.gen_range(1..=10);
    let mut rects = Vec::with_capacity(n);
    let mut fixations = Vec::with_capacity(n);
    for i in 0..n {
        let x = rng.gen_range(0.0..400.0f64).round();
        let y = rng.gen_range(0.0..600.0f64).round();
        let w = rng.gen_range(1.0..200.0f64).round();
        let h = rng.gen_range(1.0..300.0f64).round();
        fixations.push(PagePoint::new(x + w / 2.0, y + h / 2.0));
        rects.push(EyeRectangle {
            rect: rect(x, y, w, h),
            fixation_indices: vec![i],
            united_count: 1,
        });
    }
    (rects, fixations)
}

/// Reference: repeatedly merge the first overlapping pair found, until none
/// remain. Completely independent of the union-find implementation.
fn brute_force_unite(rects: &[EyeRectangle]) -> Vec<EyeRectangle> {
    let mut current: Vec<EyeRectangle> = rects.to_vec();
    'outer: loop {
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                if current[i].rect.overlaps(&current[j].rect) {
                    let b = current.remove(j);
                    let a = current.remove(i);
                    let mut indices = a.fixation_indices.clone();
                    indices.extend_from_slice(&b.fixation_indices);
                    indices.sort_unstable();
                    indices.dedup();
                    current.push(EyeRectangle {
                        rect: a.rect.union_bounds(&b.rect),
                        fixation_indices: indices,
                        united_count: a.united_count + b.united_count,
                    });
                    continue 'outer;
                }
            }
        }
        break;
    }
    current.sort_by(|a, b| {
        (a.rect.min_x(), a.rect.min_y(), a.rect.max_x(), a.rect.max_y())
            .partial_cmp(&(b.rect.min_x(), b.rect.min_y(), b.rect.max_x(), b.rect.max_y()))
            .unwrap()
    });
    current
}

#[test]
fn unite_matches_brute_force_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..1000 {
        let (rects, _) = random_instance(&mut rng);
        let got = unite_colliding_rects(&rects).unwrap();
        let want = brute_force_unite(&rects);
        assert_eq!(got, want, "case {case} diverged for input {rects:#?}");
    }
}

#[test]
fn unite_is_idempotent_and_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let (mut rects, _) = random_instance(&mut rng);
        let once = unite_colliding_rects(&rects).unwrap();
        let twice = unite_colliding_rects(&once).unwrap();
        assert_eq!(once, twice);
        rects.reverse();
        assert_eq!(unite_colliding_rects(&rects).unwrap(), once);
    }
}

#[test]
fn unite_output_is_pairwise_disjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let (rects, _) = random_instance(&mut rng);
        let united = unite_colliding_rects(&rects).unwrap();
        for i in 0..united.len() {
            for j in (i + 1)..united.len() {
                assert!(!united[i].rect.overlaps(&united[j].rect));
            }
        }
    }
}

#[test]
fn split_pieces_respect_height_and_preserve_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..1000 {
        let (rects, fixations) = random_instance(&mut rng);
        let max_height = rng.gen_range(20.0..150.0f64).round();
        let pieces = split_and_crop(&rects, max_height, &fixations).unwrap();

        let in_area: f64 = rects.iter().map(|r| r.rect.area()).sum();
        let out_area: f64 = pieces.iter().map(|r| r.rect.area()).sum();
        assert!((in_area - out_area).abs() < 1e-6 * in_area.max(1.0));

        for piece in &pieces {
            assert!(piece.rect.height() <= max_height + 1e-9);
        }

        // Expected piece count is pure arithmetic on each input height.
        let want: usize = rects
            .iter()
            .map(|r| ((r.rect.height() / max_height).ceil() as usize).max(1))
            .sum();
        assert_eq!(pieces.len(), want);

        // No fixation is lost or duplicated.
        let mut in_idx: Vec<usize> = rects.iter().flat_map(|r| r.fixation_indices.clone()).collect();
        let mut out_idx: Vec<usize> =
            pieces.iter().flat_map(|r| r.fixation_indices.clone()).collect();
        in_idx.sort_unstable();
        out_idx.sort_unstable();
        assert_eq!(in_idx, out_idx);
    }
}

#[test]
fn split_after_unite_never_exceeds_max_height() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..300 {
        let (rects, fixations) = random_instance(&mut rng);
        let united = unite_colliding_rects(&rects).unwrap();
        let pieces = split_and_crop(&united, 89.0, &fixations).unwrap();
        assert!(pieces.iter().all(|p| p.rect.height() <= 89.0 + 1e-9));
    }
}

/// Reference union area by Monte Carlo-free cell counting on integer grid.
/// Inputs above use whole-point coordinates, so a unit grid is exact.
fn grid_union_area(rects: &[Rect]) -> f64 {
    let mut covered = std::collections::HashSet::new();
    for r in rects {
        for x in (r.min_x() as i64)..(r.max_x() as i64) {
            for y in (r.min_y() as i64)..(r.max_y() as i64) {
                covered.insert((x, y));
            }
        }
    }
    covered.len() as f64
}

#[test]
fn union_area_matches_unit_grid_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(555);
    for _ in 0..100 {
        let (rects, _) = random_instance(&mut rng);
        let plain: Vec<Rect> = rects.iter().map(|r| r.rect.clone()).collect();
        let got = union_area(&plain);
        let want = grid_union_area(&plain);
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
    }
}
