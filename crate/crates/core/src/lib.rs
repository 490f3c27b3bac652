//! Skeleton-keypoint interaction features for violence recognition.
//!
//! The pipeline reads per-frame BODY-25 pose keypoints ([`pose`]), turns each
//! video into a five-value feature vector of weighted joint velocities and
//! joint-overlap counts ([`features`]), classifies the vectors with decision
//! trees, random forests, AdaBoost or k-nearest neighbours ([`classifiers`]),
//! and scores the predictions ([`evaluation`]). [`synthgen`] produces
//! deterministic synthetic fight / non-fight corpora for testing.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64` or `f32`.

pub mod cache;
pub mod classifiers;
pub mod evaluation;
pub mod features;
pub mod pose;
pub mod scalar;
pub mod synthgen;

pub use scalar::Scalar;

pub use classifiers::{ClassifierConfig, ClassifierError};
pub use evaluation::{ConfusionMatrix, CvReport, EvalError, EvaluationReport};
pub use features::{FeatureError, FeatureGroups};
pub use pose::{Label, PoseError};

pub type Keypoint = pose::Keypoint<f64>;
pub type PersonPose = pose::PersonPose<f64>;
pub type FramePoses = pose::FramePoses<f64>;
pub type VideoPoseSequence = pose::VideoPoseSequence<f64>;
pub type FeatureVector = features::FeatureVector<f64>;
pub type FeatureConfig = features::FeatureConfig<f64>;
pub type Dataset = classifiers::Dataset<f64>;
pub type Model = classifiers::TrainedModel<f64>;

pub type Keypoint32 = pose::Keypoint<f32>;
pub type PersonPose32 = pose::PersonPose<f32>;
pub type FramePoses32 = pose::FramePoses<f32>;
pub type VideoPoseSequence32 = pose::VideoPoseSequence<f32>;
pub type FeatureVector32 = features::FeatureVector<f32>;
pub type FeatureConfig32 = features::FeatureConfig<f32>;
pub type Dataset32 = classifiers::Dataset<f32>;
pub type Model32 = classifiers::TrainedModel<f32>;
