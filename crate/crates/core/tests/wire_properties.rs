//! Property tests for the JSON wire format: serialization round-trips for
//! generated events, and totality of the deserializer over junk input.

use std::collections::BTreeMap;

use peyedf_core::identity::SessionId;
use peyedf_core::model::{
    ClassSource, PageEyeData, ReadingClass, ReadingEvent, Rect, SearchQueryStat,
    SummaryReadingEvent, ACTOR_PEYEDF,
};
use peyedf_core::wire::{deserialize_event, serialize_event, DimeEvent};
use proptest::prelude::*;

fn class_strategy() -> impl Strategy<Value = ReadingClass> {
    prop_oneof![
        Just(ReadingClass::Unknown),
        Just(ReadingClass::Viewport),
        Just(ReadingClass::Read),
        Just(ReadingClass::Important),
        Just(ReadingClass::Critical),
    ]
}

fn source_strategy() -> impl Strategy<Value = ClassSource> {
    prop_oneof![
        Just(ClassSource::Unknown),
        Just(ClassSource::Viewport),
        Just(ClassSource::Click),
        Just(ClassSource::Eye),
        Just(ClassSource::ManualSelection),
    ]
}

prop_compose! {
    fn rect_strategy(pages: usize)(
        x in -100.0..1000.0f64,
        y in -100.0..1000.0f64,
        w in 0.0..700.0f64,
        h in 0.0..900.0f64,
        page in 0..pages,
        class in class_strategy(),
        source in source_strategy(),
    ) -> Rect {
        Rect::new(x, y, w, h, page, class, source).unwrap()
    }
}

prop_compose! {
    fn eye_data_strategy(pages: usize)(page in 0..pages, n in 0usize..6)(
        page in Just(page),
        xs in prop::collection::vec(0.0..612.0f64, n),
        ys in prop::collection::vec(0.0..792.0f64, n),
        durations in prop::collection::vec(50.0..900.0f64, n),
        pupils in prop::collection::vec(0.0..9.0f64, n),
        starts in prop::collection::vec(0.0..60_000.0f64, n),
    ) -> PageEyeData {
        PageEyeData::new(page, xs, ys, durations, pupils, starts).unwrap()
    }
}

prop_compose! {
    fn reading_event_strategy()(pages in 1usize..4)(
        seed in any::<[u8; 16]>(),
        start in 0i64..10_000_000,
        extra in 0i64..10_000_000,
        labels in prop::collection::vec("[a-z0-9]{1,4}", pages),
        rects in prop::collection::vec(rect_strategy(pages), 0..6),
        eye in prop::collection::vec(eye_data_strategy(pages), 0..3),
        text in "[ -~]{0,60}",
        resource in prop::option::of(1i64..50),
    ) -> ReadingEvent {
        ReadingEvent {
            id: None,
            session_id: SessionId::from_random_bytes(seed),
            start,
            end: start + extra,
            page_numbers: (0..labels.len()).collect(),
            page_labels: labels,
            page_rects: rects,
            plain_text_content: text,
            page_eye_data: eye,
            targetted_resource_id: resource,
            actor: ACTOR_PEYEDF.into(),
        }
    }
}

prop_compose! {
    fn summary_event_strategy()(
        seed in any::<[u8; 16]>(),
        start in 0i64..10_000_000,
        extra in 0i64..10_000_000,
        pages in 1usize..4,
        queries in prop::collection::vec(("[a-z]{1,8}", 0usize..20), 0..3),
        read in 0.0..1.0f64,
        critical in 0.0..1.0f64,
    ) -> SummaryReadingEvent {
        SummaryReadingEvent {
            id: None,
            session_id: SessionId::from_random_bytes(seed),
            start,
            end: start + extra,
            page_numbers: (0..pages).collect(),
            page_labels: (0..pages).map(|i| i.to_string()).collect(),
            search_queries: queries
                .into_iter()
                .map(|(query, hit_count)| SearchQueryStat { query, hit_count, pages: vec![0] })
                .collect(),
            per_class_proportions: BTreeMap::from([
                ("read".to_string(), read),
                ("critical".to_string(), critical),
            ]),
            targetted_resource_id: None,
            actor: ACTOR_PEYEDF.into(),
        }
    }
}

proptest! {
    #[test]
    fn reading_events_round_trip(event in reading_event_strategy()) {
        // Rects may reference pages outside pageNumbers in generated data;
        // keep only well-formed events, as producers do.
        prop_assume!(event.validate().is_ok());
        let wrapped = DimeEvent::Reading(event);
        let json = serialize_event(&wrapped).unwrap();
        prop_assert_eq!(deserialize_event(&json).unwrap(), wrapped);
    }

    #[test]
    fn summary_events_round_trip(event in summary_event_strategy()) {
        let wrapped = DimeEvent::Summary(event);
        let json = serialize_event(&wrapped).unwrap();
        prop_assert_eq!(deserialize_event(&json).unwrap(), wrapped);
    }

    #[test]
    fn deserializer_is_total_over_junk(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = deserialize_event(&text);
    }
}
