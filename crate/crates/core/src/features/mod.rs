//! Per-video interaction features.
//!
//! Velocity group: weighted displacement of the selected joints between
//! consecutive frames, pooled over the whole video into mean, max and
//! population variance. Overlap group: per-frame count of selected joints that
//! fall inside another person's keypoint box, pooled into mean and population
//! variance. Together they form a five-value vector.

mod joints;
mod overlap;
mod velocity;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pose::VideoPoseSequence;
use crate::scalar::{mean, population_variance};
use crate::Scalar;

pub use joints::{selected_joints, Joint, JointSpec};
pub use overlap::{joint_overlap_count, pair_overlap_count, person_bbox, BBox, OverlapObservation};
pub use velocity::{joint_velocity, match_and_measure, VelocityObservation};

/// Column names of the full feature vector, in order.
pub const FEATURE_NAMES: [&str; 5] = [
    "mean_vel",
    "max_vel",
    "var_vel",
    "mean_overlap",
    "var_overlap",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeatureError {
    #[error("invalid feature configuration: {0}")]
    Config(String),
}

/// Which feature groups are active. Disabled groups are zero-filled in the
/// vector and dropped from [`FeatureVector::enabled_values`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureGroups {
    pub velocity: bool,
    pub overlap: bool,
}

impl Default for FeatureGroups {
    fn default() -> Self {
        FeatureGroups {
            velocity: true,
            overlap: true,
        }
    }
}

impl FeatureGroups {
    pub const VELOCITY_ONLY: FeatureGroups = FeatureGroups {
        velocity: true,
        overlap: false,
    };
    pub const OVERLAP_ONLY: FeatureGroups = FeatureGroups {
        velocity: false,
        overlap: true,
    };

    pub fn dim(self) -> usize {
        3 * self.velocity as usize + 2 * self.overlap as usize
    }

    /// Names of the enabled columns, in vector order.
    pub fn column_names(self) -> Vec<&'static str> {
        let mut names = Vec::with_capacity(5);
        if self.velocity {
            names.extend_from_slice(&FEATURE_NAMES[..3]);
        }
        if self.overlap {
            names.extend_from_slice(&FEATURE_NAMES[3..]);
        }
        names
    }

    /// Inverse of [`FeatureGroups::column_names`].
    pub fn from_column_names<S: AsRef<str>>(names: &[S]) -> Option<FeatureGroups> {
        let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
        [
            FeatureGroups::default(),
            FeatureGroups::VELOCITY_ONLY,
            FeatureGroups::OVERLAP_ONLY,
        ]
        .into_iter()
        .find(|g| g.column_names() == names)
    }
}

/// How velocity observations are pooled into the three velocity statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VelocityPooling {
    /// Every observation of the video in one pool.
    #[default]
    Flat,
    /// Mean per consecutive-frame pair first, then statistics over those means.
    PerFrameFirst,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FeatureConfig<T: Scalar> {
    pub groups: FeatureGroups,
    pub joints: Vec<JointSpec<T>>,
    pub confidence_floor: T,
    /// When set, velocities are expressed in frame diagonals instead of
    /// pixels. `(width, height)` of the source video.
    pub normalize_frame: Option<(T, T)>,
    pub pooling: VelocityPooling,
}

impl<T: Scalar> Default for FeatureConfig<T> {
    fn default() -> Self {
        FeatureConfig {
            groups: FeatureGroups::default(),
            joints: selected_joints(),
            confidence_floor: T::zero(),
            normalize_frame: None,
            pooling: VelocityPooling::Flat,
        }
    }
}

impl<T: Scalar> FeatureConfig<T> {
    pub fn with_groups(groups: FeatureGroups) -> Self {
        FeatureConfig {
            groups,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), FeatureError> {
        let err = |m: &str| Err(FeatureError::Config(m.into()));
        if !self.groups.velocity && !self.groups.overlap {
            return err("at least one of the velocity / overlap groups must be enabled");
        }
        if self.joints.is_empty() {
            return err("no joints selected");
        }
        if self.joints.iter().any(|j| {
            j.body25_index >= crate::pose::BODY25_LEN
                || !j.weight.is_finite()
                || j.weight <= T::zero()
        }) {
            return err("joint indices must be < 25 and weights finite and > 0");
        }
        if !(self.confidence_floor >= T::zero() && self.confidence_floor <= T::one()) {
            return err("confidence floor must lie in [0, 1]");
        }
        if let Some((w, h)) = self.normalize_frame {
            if !(w > T::zero() && h > T::zero()) {
                return err("normalization frame size must be positive");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VelocityStats<T: Scalar> {
    pub mean: T,
    pub max: T,
    pub var: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct OverlapStats<T: Scalar> {
    pub mean: T,
    pub var: T,
}

/// Mean, max and population variance of all observations; zeros when empty.
pub fn aggregate_velocity<T: Scalar>(obs: &[VelocityObservation<T>]) -> VelocityStats<T> {
    let v: Vec<T> = obs.iter().map(|o| o.velocity).collect();
    velocity_stats(&v)
}

fn velocity_stats<T: Scalar>(v: &[T]) -> VelocityStats<T> {
    let m = mean(v);
    VelocityStats {
        mean: m,
        max: v.iter().copied().fold(T::zero(), T::max),
        var: population_variance(v, m),
    }
}

/// Mean and population variance of per-frame counts; zeros when empty.
pub fn aggregate_overlap<T: Scalar>(obs: &[OverlapObservation]) -> OverlapStats<T> {
    let c: Vec<T> = obs.iter().map(|o| T::of(f64::from(o.count))).collect();
    let m = mean(&c);
    OverlapStats {
        mean: m,
        var: population_variance(&c, m),
    }
}

/// The five-value feature vector of one video.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FeatureVector<T: Scalar> {
    pub video_id: String,
    pub mean_velocity: T,
    pub max_velocity: T,
    pub var_velocity: T,
    pub mean_overlap: T,
    pub var_overlap: T,
    /// Groups that were computed; the others hold zeros.
    pub groups: FeatureGroups,
}

impl<T: Scalar> FeatureVector<T> {
    pub fn values(&self) -> [T; 5] {
        [
            self.mean_velocity,
            self.max_velocity,
            self.var_velocity,
            self.mean_overlap,
            self.var_overlap,
        ]
    }

    /// Only the enabled groups, in vector order (dimension 5, 3 or 2).
    pub fn enabled_values(&self) -> Vec<T> {
        let v = self.values();
        let mut out = Vec::with_capacity(5);
        if self.groups.velocity {
            out.extend_from_slice(&v[..3]);
        }
        if self.groups.overlap {
            out.extend_from_slice(&v[3..]);
        }
        out
    }
}

/// Extracts the feature vector of one video.
pub fn extract_features<T: Scalar>(
    seq: &VideoPoseSequence<T>,
    config: &FeatureConfig<T>,
) -> Result<FeatureVector<T>, FeatureError> {
    config.validate()?;
    let floor = config.confidence_floor;
    let mut fv = FeatureVector {
        video_id: seq.video_id.clone(),
        mean_velocity: T::zero(),
        max_velocity: T::zero(),
        var_velocity: T::zero(),
        mean_overlap: T::zero(),
        var_overlap: T::zero(),
        groups: config.groups,
    };

    if config.groups.velocity {
        let scale = config
            .normalize_frame
            .map_or(T::one(), |(w, h)| T::one() / (w * w + h * h).sqrt());
        let per_pair = seq
            .frames
            .windows(2)
            .map(|w| match_and_measure(&w[0], &w[1], &config.joints, floor));
        let stats = match config.pooling {
            VelocityPooling::Flat => {
                let v: Vec<T> = per_pair.flatten().map(|o| o.velocity * scale).collect();
                velocity_stats(&v)
            }
            VelocityPooling::PerFrameFirst => {
                let means: Vec<T> = per_pair
                    .filter(|obs| !obs.is_empty())
                    .map(|obs| aggregate_velocity(&obs).mean * scale)
                    .collect();
                velocity_stats(&means)
            }
        };
        fv.mean_velocity = stats.mean;
        fv.max_velocity = stats.max;
        fv.var_velocity = stats.var;
    }

    if config.groups.overlap {
        let counts: Vec<OverlapObservation> = seq
            .frames
            .iter()
            .map(|f| joint_overlap_count(f, &config.joints, floor))
            .collect();
        let stats = aggregate_overlap(&counts);
        fv.mean_overlap = stats.mean;
        fv.var_overlap = stats.var;
    }

    Ok(fv)
}
