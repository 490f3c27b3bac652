use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// The joints that carry interaction signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Joint {
    RightWrist,
    LeftWrist,
    RightElbow,
    LeftElbow,
    RightHip,
    LeftHip,
    RightKnee,
    LeftKnee,
    RightAnkle,
    LeftAnkle,
    Neck,
}

impl Joint {
    pub const ALL: [Joint; 11] = [
        Joint::RightWrist,
        Joint::LeftWrist,
        Joint::RightElbow,
        Joint::LeftElbow,
        Joint::RightHip,
        Joint::LeftHip,
        Joint::RightKnee,
        Joint::LeftKnee,
        Joint::RightAnkle,
        Joint::LeftAnkle,
        Joint::Neck,
    ];

    /// Position of this joint in the BODY-25 layout.
    pub fn body25_index(self) -> usize {
        match self {
            Joint::Neck => 1,
            Joint::RightElbow => 3,
            Joint::RightWrist => 4,
            Joint::LeftElbow => 6,
            Joint::LeftWrist => 7,
            Joint::RightHip => 9,
            Joint::RightKnee => 10,
            Joint::RightAnkle => 11,
            Joint::LeftHip => 12,
            Joint::LeftKnee => 13,
            Joint::LeftAnkle => 14,
        }
    }

    pub fn default_weight(self) -> f64 {
        match self {
            Joint::RightElbow | Joint::LeftElbow => 0.8,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Joint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("joint serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

/// A selected joint, where to find it in a person's keypoint array, and its
/// velocity weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct JointSpec<T: Scalar> {
    pub joint: Joint,
    pub body25_index: usize,
    pub weight: T,
}

/// The eleven selected joints in canonical order with their default weights
/// and BODY-25 indices.
pub fn selected_joints<T: Scalar>() -> Vec<JointSpec<T>> {
    Joint::ALL
        .iter()
        .map(|&joint| JointSpec {
            joint,
            body25_index: joint.body25_index(),
            weight: T::of(joint.default_weight()),
        })
        .collect()
}
