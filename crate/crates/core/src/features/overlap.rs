use serde::{Deserialize, Serialize};

use super::JointSpec;
use crate::pose::{FramePoses, PersonPose};
use crate::Scalar;

/// Axis-aligned box over a person's valid keypoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BBox<T: Scalar> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
}

impl<T: Scalar> BBox<T> {
    /// Closed-interval containment.
    pub fn contains(&self, x: T, y: T) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapObservation {
    pub frame_index: u64,
    pub count: u32,
}

/// Box spanning every valid keypoint of the person (all 25, not only the
/// selected joints). `None` with fewer than two valid keypoints.
pub fn person_bbox<T: Scalar>(p: &PersonPose<T>, confidence_floor: T) -> Option<BBox<T>> {
    let mut valid = p
        .keypoints
        .iter()
        .filter(|k| k.is_valid_with_floor(confidence_floor));
    let first = valid.next()?;
    let mut bbox = BBox {
        x_min: first.x,
        x_max: first.x,
        y_min: first.y,
        y_max: first.y,
    };
    let mut n = 1;
    for k in valid {
        bbox.x_min = bbox.x_min.min(k.x);
        bbox.x_max = bbox.x_max.max(k.x);
        bbox.y_min = bbox.y_min.min(k.y);
        bbox.y_max = bbox.y_max.max(k.y);
        n += 1;
    }
    (n >= 2).then_some(bbox)
}

/// Number of `p1`'s valid selected joints lying inside `p2_box`.
pub fn pair_overlap_count<T: Scalar>(
    p1: &PersonPose<T>,
    p2_box: &BBox<T>,
    joints: &[JointSpec<T>],
    confidence_floor: T,
) -> u32 {
    joints
        .iter()
        .map(|s| &p1.keypoints[s.body25_index])
        .filter(|k| k.is_valid_with_floor(confidence_floor) && p2_box.contains(k.x, k.y))
        .count() as u32
}

/// Joint-overlap count of a frame, summed over all ordered person pairs.
pub fn joint_overlap_count<T: Scalar>(
    frame: &FramePoses<T>,
    joints: &[JointSpec<T>],
    confidence_floor: T,
) -> OverlapObservation {
    let boxes: Vec<Option<BBox<T>>> = frame
        .persons
        .iter()
        .map(|p| person_bbox(p, confidence_floor))
        .collect();
    let mut count = 0;
    for (i, p1) in frame.persons.iter().enumerate() {
        for (j, bbox) in boxes.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(bbox) = bbox {
                count += pair_overlap_count(p1, bbox, joints, confidence_floor);
            }
        }
    }
    OverlapObservation {
        frame_index: frame.frame_index,
        count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::selected_joints;
    use crate::pose::Keypoint;

    #[test]
    fn bbox_rules() {
        let mut p = PersonPose::<f64>::empty();
        assert!(person_bbox(&p, 0.0).is_none());
        p.keypoints[0] = Keypoint::new(10.0, 20.0, 0.5);
        assert!(person_bbox(&p, 0.0).is_none());
        p.keypoints[24] = Keypoint::new(30.0, 5.0, 0.5);
        assert_eq!(
            person_bbox(&p, 0.0),
            Some(BBox {
                x_min: 10.0,
                x_max: 30.0,
                y_min: 5.0,
                y_max: 20.0
            })
        );
        // a zero-confidence point with coordinates does not widen the box
        p.keypoints[3] = Keypoint::new(500.0, 500.0, 0.0);
        assert_eq!(person_bbox(&p, 0.0).unwrap().x_max, 30.0);
    }

    #[test]
    fn small_frames_have_no_pairs() {
        let joints = selected_joints();
        let mut p = PersonPose::<f64>::empty();
        for k in p.keypoints.iter_mut() {
            *k = Keypoint::new(1.0, 1.0, 1.0);
        }
        assert_eq!(
            joint_overlap_count(&FramePoses::new(0, vec![]), &joints, 0.0).count,
            0
        );
        assert_eq!(
            joint_overlap_count(&FramePoses::new(0, vec![p]), &joints, 0.0).count,
            0
        );
    }

    #[test]
    fn closed_intervals_and_ordered_pairs() {
        let joints = selected_joints();
        // two identical full persons: each contains all 11 of the other's joints
        let mut p = PersonPose::<f64>::empty();
        for (i, k) in p.keypoints.iter_mut().enumerate() {
            *k = Keypoint::new(i as f64, 2.0 * i as f64, 0.8);
        }
        let frame = FramePoses::new(3, vec![p.clone(), p]);
        let obs = joint_overlap_count(&frame, &joints, 0.0);
        assert_eq!(
            obs,
            OverlapObservation {
                frame_index: 3,
                count: 22
            }
        );
    }
}
