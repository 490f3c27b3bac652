//! Per-frame pose keypoints: types, frame-file parsing, sequence assembly and
//! the on-disk corpus layout.

mod frame;
mod layout;
mod sequence;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Scalar;

pub use frame::{parse_frame, to_frame_json};
pub use layout::{
    frame_index_from_file_name, load_video_dir, read_manifest, write_manifest, write_video_dir,
    ManifestEntry,
};
pub use sequence::load_sequence;

/// Keypoints per person in the BODY-25 layout.
pub const BODY25_LEN: usize = 25;
/// Numbers per person in a frame file (x, y, confidence per keypoint).
pub const FLAT_LEN: usize = BODY25_LEN * 3;

#[derive(Debug, Error)]
pub enum PoseError {
    #[error("malformed frame document at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("person {person}: {message}")]
    Schema { person: usize, message: String },
    #[error("duplicate frame index {0}")]
    DuplicateFrame(u64),
    #[error("frame {frame_index}: {source}")]
    Frame {
        frame_index: u64,
        #[source]
        source: Box<PoseError>,
    },
    #[error("{} frames failed to parse; first: {}", .0.len(), .0[0])]
    Frames(Vec<PoseError>),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: no numeric frame index in file name", .0.display())]
    FileName(PathBuf),
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
}

/// Class tag of a video. `Fight` is the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    NonFight = 0,
    Fight = 1,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::NonFight, Label::Fight];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Label> {
        match i {
            0 => Some(Label::NonFight),
            1 => Some(Label::Fight),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::NonFight => "NonFight",
            Label::Fight => "Fight",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    /// Accepts the common dataset spellings (`Fight`, `NonFight`, `Violence`,
    /// `NonViolence`, `1`, `0`), case-insensitively, ignoring `-`/`_`/spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "fight" | "violence" | "violent" | "1" => Ok(Label::Fight),
            "nonfight" | "nonviolence" | "nonviolent" | "0" => Ok(Label::NonFight),
            _ => Err(format!("unknown class label {s:?}")),
        }
    }
}

/// One detected keypoint in pixel coordinates.
///
/// The detector reports an undetected joint as `(0, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Keypoint<T: Scalar> {
    pub x: T,
    pub y: T,
    pub confidence: T,
}

impl<T: Scalar> Keypoint<T> {
    pub fn new(x: T, y: T, confidence: T) -> Self {
        Keypoint { x, y, confidence }
    }

    pub fn missing() -> Self {
        Keypoint::default()
    }

    /// A keypoint is usable iff it was detected (confidence > 0) and its
    /// confidence reaches `floor`.
    pub fn is_valid_with_floor(&self, floor: T) -> bool {
        self.confidence > T::zero() && self.confidence >= floor
    }
}

/// Validity under the default confidence floor of `0`.
pub fn is_valid<T: Scalar>(kp: &Keypoint<T>) -> bool {
    kp.is_valid_with_floor(T::zero())
}

/// All 25 BODY-25 keypoints of one detected person, positionally indexed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PersonPose<T: Scalar> {
    pub keypoints: [Keypoint<T>; BODY25_LEN],
}

impl<T: Scalar> PersonPose<T> {
    pub fn new(keypoints: [Keypoint<T>; BODY25_LEN]) -> Self {
        PersonPose { keypoints }
    }

    /// A person with every keypoint missing.
    pub fn empty() -> Self {
        PersonPose {
            keypoints: [Keypoint::missing(); BODY25_LEN],
        }
    }

    /// Builds a person from the flat `x0,y0,c0,...,x24,y24,c24` list.
    /// Returns `None` unless `flat` holds exactly 75 numbers.
    pub fn from_flat(flat: &[T]) -> Option<Self> {
        if flat.len() != FLAT_LEN {
            return None;
        }
        let mut person = PersonPose::empty();
        for (kp, chunk) in person.keypoints.iter_mut().zip(flat.chunks_exact(3)) {
            *kp = Keypoint::new(chunk[0], chunk[1], chunk[2]);
        }
        Some(person)
    }

    pub fn to_flat(&self) -> Vec<T> {
        self.keypoints
            .iter()
            .flat_map(|kp| [kp.x, kp.y, kp.confidence])
            .collect()
    }
}

/// All persons detected in one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct FramePoses<T: Scalar> {
    pub frame_index: u64,
    pub persons: Vec<PersonPose<T>>,
}

impl<T: Scalar> FramePoses<T> {
    pub fn new(frame_index: u64, persons: Vec<PersonPose<T>>) -> Self {
        FramePoses {
            frame_index,
            persons,
        }
    }
}

/// The pose stream of one video, frames in ascending `frame_index` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct VideoPoseSequence<T: Scalar> {
    pub video_id: String,
    pub frames: Vec<FramePoses<T>>,
    pub label: Option<Label>,
}

impl<T: Scalar> VideoPoseSequence<T> {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn with_label(mut self, label: Option<Label>) -> Self {
        self.label = label;
        self
    }
}
