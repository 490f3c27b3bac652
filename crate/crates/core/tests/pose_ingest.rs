use std::path::Path;

use difem::pose::{
    frame_index_from_file_name, load_video_dir, parse_frame, to_frame_json, FramePoses, Keypoint,
    PersonPose, PoseError,
};
use proptest::prelude::*;

const FIXTURE: &str = "tests/fixtures/two_people_000000000007_keypoints.json";

#[test]
fn fixture_maps_positionally() {
    let raw = std::fs::read(FIXTURE).unwrap();
    let frame: FramePoses<f64> = parse_frame(&raw).unwrap();
    assert_eq!(frame.persons.len(), 2);
    // flat indices 12, 13, 14 of person 0 in the fixture are 112, 113, 0.54
    assert_eq!(
        frame.persons[0].keypoints[4],
        Keypoint::new(112.0, 113.0, 0.54)
    );
    assert_eq!(
        frame.persons[0].keypoints[0],
        Keypoint::new(100.0, 101.0, 0.5)
    );
    assert_eq!(
        frame.persons[1].keypoints[24],
        Keypoint::new(372.5, 373.5, 0.94)
    );
}

#[test]
fn fixture_directory_index() {
    let dir = Path::new("tests/fixtures");
    let seq = load_video_dir::<f64>(dir, "fixtures").unwrap();
    assert_eq!(seq.frames.len(), 1);
    assert_eq!(seq.frames[0].frame_index, 7);
    assert_eq!(
        frame_index_from_file_name("two_people_000000000007_keypoints.json"),
        Some(7)
    );
}

#[test]
fn missing_directory_is_io_error() {
    assert!(matches!(
        load_video_dir::<f64>(Path::new("tests/no_such_dir"), "x"),
        Err(PoseError::Io { .. })
    ));
}

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), 0.0..4000.0f64]
}

fn keypoint() -> impl Strategy<Value = Keypoint<f64>> {
    prop_oneof![
        Just(Keypoint::missing()),
        (coord(), coord(), 0.0..=1.0f64).prop_map(|(x, y, c)| Keypoint::new(x, y, c)),
    ]
}

fn person() -> impl Strategy<Value = PersonPose<f64>> {
    prop::collection::vec(keypoint(), 25).prop_map(|v| PersonPose::new(v.try_into().unwrap()))
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(persons in prop::collection::vec(person(), 0..5)) {
        let frame = FramePoses::new(0, persons);
        let back: FramePoses<f64> = parse_frame(&to_frame_json(&frame)).unwrap();
        prop_assert_eq!(back, frame);
    }

    #[test]
    fn parsing_is_total(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        // arbitrary input gives a frame or a typed error, never a panic
        let _ = parse_frame::<f64>(&bytes);
    }

    #[test]
    fn f32_round_trip(persons in prop::collection::vec(person(), 0..3)) {
        let frame = FramePoses::new(0, persons);
        let f32_frame: FramePoses<f32> = parse_frame(&to_frame_json(&frame)).unwrap();
        let again: FramePoses<f32> = parse_frame(&to_frame_json(&f32_frame)).unwrap();
        prop_assert_eq!(again, f32_frame);
    }
}
