use serde::{Deserialize, Serialize};

use super::{FramePoses, Keypoint, PersonPose, PoseError, FLAT_LEN};
use crate::Scalar;

#[derive(Deserialize)]
struct RawFrame {
    people: Vec<RawPerson>,
}

#[derive(Deserialize)]
struct RawPerson {
    pose_keypoints_2d: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct OutFrame<'a> {
    version: f64,
    people: Vec<OutPerson<'a>>,
}

#[derive(Serialize)]
struct OutPerson<'a> {
    pose_keypoints_2d: &'a [f64],
}

/// Parses one frame document (`{"people": [{"pose_keypoints_2d": [75 numbers]}, ...]}`).
///
/// Unknown keys are ignored. The returned frame has `frame_index` 0; callers
/// assembling a sequence assign the real index.
pub fn parse_frame<T: Scalar>(raw: &[u8]) -> Result<FramePoses<T>, PoseError> {
    let doc: RawFrame = serde_json::from_slice(raw).map_err(|e| PoseError::Parse {
        offset: byte_offset(raw, e.line(), e.column()),
        message: e.to_string(),
    })?;

    let mut persons = Vec::with_capacity(doc.people.len());
    for (idx, person) in doc.people.into_iter().enumerate() {
        let schema = |message: String| PoseError::Schema {
            person: idx,
            message,
        };
        let flat = person
            .pose_keypoints_2d
            .ok_or_else(|| schema("missing \"pose_keypoints_2d\"".into()))?;
        if flat.len() != FLAT_LEN {
            return Err(schema(format!(
                "keypoint list has {} numbers, expected {FLAT_LEN}",
                flat.len()
            )));
        }
        let mut keypoints = [Keypoint::missing(); super::BODY25_LEN];
        for (k, (kp, c)) in keypoints.iter_mut().zip(flat.chunks_exact(3)).enumerate() {
            if c[0] < 0.0 || c[1] < 0.0 {
                return Err(schema(format!("keypoint {k} has negative coordinates")));
            }
            if !(0.0..=1.0).contains(&c[2]) {
                return Err(schema(format!(
                    "keypoint {k} confidence {} outside [0, 1]",
                    c[2]
                )));
            }
            *kp = Keypoint::new(T::of(c[0]), T::of(c[1]), T::of(c[2]));
        }
        persons.push(PersonPose::new(keypoints));
    }
    Ok(FramePoses::new(0, persons))
}

/// Serializes a frame back into the frame-file format.
pub fn to_frame_json<T: Scalar>(frame: &FramePoses<T>) -> Vec<u8> {
    let flats: Vec<Vec<f64>> = frame
        .persons
        .iter()
        .map(|p| p.to_flat().into_iter().map(Scalar::as_f64).collect())
        .collect();
    let doc = OutFrame {
        version: 1.3,
        people: flats
            .iter()
            .map(|f| OutPerson {
                pose_keypoints_2d: f,
            })
            .collect(),
    };
    serde_json::to_vec(&doc).expect("frame document serializes")
}

/// Converts serde_json's 1-based line/column into a 0-based byte offset.
fn byte_offset(raw: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start = raw
        .split_inclusive(|&b| b == b'\n')
        .take(line - 1)
        .map(<[u8]>::len)
        .sum::<usize>();
    (line_start + column.saturating_sub(1)).min(raw.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pose::is_valid;

    #[test]
    fn empty_people() {
        let f: FramePoses<f64> = parse_frame(br#"{"version":1.3,"people":[]}"#).unwrap();
        assert!(f.persons.is_empty());
    }

    #[test]
    fn all_zero_person_is_all_missing() {
        let zeros = vec!["0"; 75].join(",");
        let doc = format!(r#"{{"people":[{{"pose_keypoints_2d":[{zeros}]}}]}}"#);
        let f: FramePoses<f64> = parse_frame(doc.as_bytes()).unwrap();
        assert_eq!(f.persons.len(), 1);
        assert!(f.persons[0].keypoints.iter().all(|k| !is_valid(k)));
    }

    #[test]
    fn unknown_keys_ignored() {
        let zeros = vec!["0"; 75].join(",");
        let doc = format!(
            r#"{{"version":1.3,"people":[{{"person_id":[-1],"pose_keypoints_2d":[{zeros}],"face_keypoints_2d":[]}}],"extra":{{}}}}"#
        );
        let f: FramePoses<f32> = parse_frame(doc.as_bytes()).unwrap();
        assert_eq!(f.persons.len(), 1);
    }

    #[test]
    fn wrong_length_names_person() {
        let ok = vec!["1"; 75].join(",");
        let short = vec!["1"; 72].join(",");
        let doc = format!(
            r#"{{"people":[{{"pose_keypoints_2d":[{ok}]}},{{"pose_keypoints_2d":[{short}]}}]}}"#
        );
        match parse_frame::<f64>(doc.as_bytes()) {
            Err(PoseError::Schema { person, .. }) => assert_eq!(person, 1),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn missing_keypoint_key_is_schema_error() {
        let doc = br#"{"people":[{"face_keypoints_2d":[]}]}"#;
        assert!(matches!(
            parse_frame::<f64>(doc),
            Err(PoseError::Schema { person: 0, .. })
        ));
    }

    #[test]
    fn malformed_reports_offset() {
        let doc = b"{\"people\": [\n  {\"pose_keypoints_2d\": [1, 2,, 3]}]}";
        match parse_frame::<f64>(doc) {
            Err(PoseError::Parse { offset, .. }) => {
                // the stray comma sits at byte 40
                assert_eq!(doc[offset - 1], b',');
                assert!(offset <= doc.len());
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_frame::<f64>(b"{}"),
            Err(PoseError::Parse { .. })
        ));
    }

    #[test]
    fn out_of_range_confidence_rejected() {
        let mut nums = vec!["1".to_string(); 75];
        nums[2] = "1.5".into();
        let doc = format!(
            r#"{{"people":[{{"pose_keypoints_2d":[{}]}}]}}"#,
            nums.join(",")
        );
        assert!(matches!(
            parse_frame::<f64>(doc.as_bytes()),
            Err(PoseError::Schema { person: 0, .. })
        ));
    }
}
