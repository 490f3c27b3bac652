use serde::{Deserialize, Serialize};

use super::JointSpec;
use crate::pose::{FramePoses, Keypoint};
use crate::Scalar;

/// Weighted displacement of one joint between consecutive frames.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VelocityObservation<T: Scalar> {
    pub frame_index: u64,
    pub person_index: usize,
    pub joint: JointSpec<T>,
    pub velocity: T,
}

/// `sqrt(w * ((x' - x)^2 + (y' - y)^2))`. The weight sits inside the root.
///
/// Both keypoints must be valid; this is not checked.
pub fn joint_velocity<T: Scalar>(p_t: &Keypoint<T>, p_next: &Keypoint<T>, w: T) -> T {
    (w * squared_distance(p_t, p_next)).sqrt()
}

fn squared_distance<T: Scalar>(a: &Keypoint<T>, b: &Keypoint<T>) -> T {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    dx * dx + dy * dy
}

/// Velocities of every valid selected joint in `frame_t`.
///
/// Without person tracking, each joint is matched to the nearest valid
/// keypoint of the same joint type among all persons of `frame_next`
/// (unweighted distance, ties to the lowest person index). Joints with no
/// candidate produce no observation.
pub fn match_and_measure<T: Scalar>(
    frame_t: &FramePoses<T>,
    frame_next: &FramePoses<T>,
    joints: &[JointSpec<T>],
    confidence_floor: T,
) -> Vec<VelocityObservation<T>> {
    let mut out = Vec::new();
    for (person_index, person) in frame_t.persons.iter().enumerate() {
        for spec in joints {
            let kp = &person.keypoints[spec.body25_index];
            if !kp.is_valid_with_floor(confidence_floor) {
                continue;
            }
            let mut best: Option<(T, &Keypoint<T>)> = None;
            for candidate in &frame_next.persons {
                let next = &candidate.keypoints[spec.body25_index];
                if !next.is_valid_with_floor(confidence_floor) {
                    continue;
                }
                let d = squared_distance(kp, next);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, next));
                }
            }
            if let Some((_, next)) = best {
                out.push(VelocityObservation {
                    frame_index: frame_t.frame_index,
                    person_index,
                    joint: *spec,
                    velocity: joint_velocity(kp, next, spec.weight),
                });
            }
        }
    }
    out
}
