//! Deterministic synthetic fight / non-fight pose sequences.
//!
//! Each person is a BODY-25 skeleton with fixed proportions scaled to a body
//! height. Limbs swing sinusoidally with seeded phases and jitter; every
//! temporal motion is proportional to `velocity_scale`, so a zero scale gives a
//! motionless video. Fight videos swing limbs fast and pull the persons
//! together until their boxes interpenetrate; non-fight videos walk slowly,
//! either side by side with a gap or past each other.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pose::{
    write_manifest, write_video_dir, FramePoses, Keypoint, Label, ManifestEntry, PersonPose,
    PoseError, VideoPoseSequence, BODY25_LEN,
};
use crate::Scalar;

pub const FIGHT_VELOCITY_SCALE: f64 = 32.0;
pub const NONFIGHT_VELOCITY_SCALE: f64 = 2.0;
pub const FIGHT_PROXIMITY_SCALE: f64 = 0.8;
pub const NONFIGHT_PROXIMITY_SCALE: f64 = 0.1;
pub const DEFAULT_DROP_RATE: f64 = 0.05;
/// Share of multi-person non-fight videos in which persons walk past each
/// other instead of strolling side by side.
pub const CROSSING_RATE: f64 = 0.3;
/// Relative per-video spread of `velocity_scale`.
pub const SCALE_SPREAD: f64 = 0.25;
pub const DEFAULT_FRAMES: usize = 150;
pub const DEFAULT_FRAME_SIZE: (f64, f64) = (640.0, 480.0);
/// Body height as a fraction of frame height.
pub const BODY_HEIGHT_FRACTION: f64 = 0.3;

/// Keypoint offsets from the mid-hip in body heights, y pointing down.
const TEMPLATE: [(f64, f64); BODY25_LEN] = [
    (0.0, -0.45),    // nose
    (0.0, -0.36),    // neck
    (-0.10, -0.36),  // right shoulder
    (-0.14, -0.22),  // right elbow
    (-0.15, -0.08),  // right wrist
    (0.10, -0.36),   // left shoulder
    (0.14, -0.22),   // left elbow
    (0.15, -0.08),   // left wrist
    (0.0, 0.0),      // mid hip
    (-0.06, 0.0),    // right hip
    (-0.065, 0.24),  // right knee
    (-0.07, 0.48),   // right ankle
    (0.06, 0.0),     // left hip
    (0.065, 0.24),   // left knee
    (0.07, 0.48),    // left ankle
    (-0.02, -0.47),  // right eye
    (0.02, -0.47),   // left eye
    (-0.045, -0.46), // right ear
    (0.045, -0.46),  // left ear
    (0.10, 0.52),    // left big toe
    (0.12, 0.51),    // left small toe
    (0.06, 0.50),    // left heel
    (-0.10, 0.52),   // right big toe
    (-0.12, 0.51),   // right small toe
    (-0.06, 0.50),   // right heel
];

/// Horizontal extent of the template in body heights.
const BODY_WIDTH: f64 = 0.30;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synthesis parameters: {0}")]
    Config(String),
    #[error(transparent)]
    Pose(#[from] PoseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub class_tag: Label,
    pub n_persons: usize,
    pub n_frames: usize,
    pub frame_size: (f64, f64),
    /// Typical per-frame displacement of a swinging wrist, in pixels.
    pub velocity_scale: f64,
    /// Closeness in [0, 1]: persons settle `2 * (1 - p)` body widths apart.
    pub proximity_scale: f64,
    /// Probability that any keypoint is reported missing.
    pub drop_rate: f64,
    pub seed: u64,
}

impl SynthParams {
    /// Default preset for a class.
    pub fn preset(class_tag: Label, seed: u64) -> Self {
        let (velocity_scale, proximity_scale) = match class_tag {
            Label::Fight => (FIGHT_VELOCITY_SCALE, FIGHT_PROXIMITY_SCALE),
            Label::NonFight => (NONFIGHT_VELOCITY_SCALE, NONFIGHT_PROXIMITY_SCALE),
        };
        SynthParams {
            class_tag,
            n_persons: 2,
            n_frames: DEFAULT_FRAMES,
            frame_size: DEFAULT_FRAME_SIZE,
            velocity_scale,
            proximity_scale,
            drop_rate: DEFAULT_DROP_RATE,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let err = |m: &str| Err(SynthError::Config(m.into()));
        let (w, h) = self.frame_size;
        if self.n_persons == 0 || self.n_persons > 5 {
            return err("n_persons must be in 1..=5");
        }
        if self.n_frames < 2 {
            return err("n_frames must be at least 2");
        }
        if !(w >= 64.0 && h >= 64.0 && w.is_finite() && h.is_finite()) {
            return err("frame size must be at least 64x64");
        }
        if !(self.velocity_scale >= 0.0 && self.velocity_scale.is_finite()) {
            return err("velocity_scale must be finite and non-negative");
        }
        if !(0.0..=1.0).contains(&self.proximity_scale) {
            return err("proximity_scale must lie in [0, 1]");
        }
        if !(0.0..1.0).contains(&self.drop_rate) {
            return err("drop_rate must lie in [0, 1)");
        }
        let body_w = BODY_WIDTH * BODY_HEIGHT_FRACTION * h;
        let span = (self.n_persons - 1) as f64 * 2.5 * body_w + body_w;
        if span > w {
            return err("frame too narrow for the requested number of persons");
        }
        Ok(())
    }
}

struct Actor {
    /// Per-joint phase of the limb swing.
    phase: [f64; BODY25_LEN],
    /// Vertical placement offset in pixels.
    dy: f64,
    /// Direction of the swing ellipse (±1) so persons are not in lockstep.
    turn: f64,
}

/// Swing amplitude multipliers per joint for (fight, non-fight) motion.
fn swing_weight(joint: usize, fight: bool) -> f64 {
    match (joint, fight) {
        (4 | 7, true) => 1.0,
        (3 | 6, true) => 0.55,
        (11 | 14 | 19..=24, true) => 0.6,
        (10 | 13, true) => 0.35,
        (4 | 7, false) => 0.5,
        (3 | 6, false) => 0.25,
        (11 | 14 | 19..=24, false) => 1.0,
        (10 | 13, false) => 0.5,
        _ => 0.15,
    }
}

/// Generates one synthetic video with `video_id` `synth_<seed>`.
pub fn generate<T: Scalar>(params: &SynthParams) -> Result<VideoPoseSequence<T>, SynthError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let fight = params.class_tag == Label::Fight;
    let (w, h) = params.frame_size;
    let body_h = BODY_HEIGHT_FRACTION * h;
    let body_w = BODY_WIDTH * body_h;
    // per-video spread around the requested scales
    let v = params.velocity_scale * rng.random_range(1.0 - SCALE_SPREAD..=1.0 + SCALE_SPREAD);
    let proximity = (params.proximity_scale + rng.random_range(-0.1..=0.1)).clamp(0.0, 1.0);
    let omega: f64 = if fight { 0.8 } else { 0.2 };
    let amplitude = v / omega;

    let actors: Vec<Actor> = (0..params.n_persons)
        .map(|_| {
            let mut phase = [0.0; BODY25_LEN];
            for p in phase.iter_mut() {
                *p = rng.random_range(0.0..TAU);
            }
            Actor {
                phase,
                dy: rng.random_range(-0.05..0.05) * body_h,
                turn: if rng.random_bool(0.5) { 1.0 } else { -1.0 },
            }
        })
        .collect();

    let target_gap = 2.0 * (1.0 - proximity) * body_w;
    let n = params.n_persons as f64;
    let lane = |i: usize| i as f64 - 0.5 * (n - 1.0);
    let hip_y = 0.55 * h;
    // non-fight persons either stroll side by side or walk past each other
    let crossing = !fight && params.n_persons >= 2 && rng.random_bool(CROSSING_RATE);
    let mut gap = if fight {
        target_gap.max(2.2 * body_w)
    } else {
        target_gap
    };
    let mut center_x = 0.5 * w;
    let mut drift = if rng.random_bool(0.5) { 1.0 } else { -1.0 } * 0.3 * v;
    let walk_speed = 0.5 * v;
    let cross_reach = (0.5 * walk_speed * params.n_frames as f64).min(0.5 * w - body_w);

    let mut frames = Vec::with_capacity(params.n_frames);
    for t in 0..params.n_frames {
        let tf = t as f64;
        let mut persons = Vec::with_capacity(params.n_persons);
        for (i, actor) in actors.iter().enumerate() {
            let root_x = if crossing {
                let dir = if i % 2 == 0 { 1.0 } else { -1.0 };
                let walked = (walk_speed * tf).min(2.0 * cross_reach);
                center_x + dir * (walked - cross_reach) + (i / 2) as f64 * dir * body_w
            } else {
                center_x + lane(i) * gap
            };
            let root_y = hip_y + actor.dy;
            // fighters face each other: mirror the swing of every other person
            let facing = if i % 2 == 0 { 1.0 } else { -1.0 };
            let mut kps = [Keypoint::missing(); BODY25_LEN];
            for (j, kp) in kps.iter_mut().enumerate() {
                let a = amplitude * swing_weight(j, fight);
                let angle = omega * tf + actor.phase[j];
                let sx = a * angle.cos() * if fight { facing } else { 1.0 };
                let sy = a * angle.sin() * actor.turn * if fight { 1.0 } else { 0.3 };
                let jx = rng.random_range(-0.15..=0.15) * v;
                let jy = rng.random_range(-0.15..=0.15) * v;
                let x = (root_x + TEMPLATE[j].0 * body_h + sx + jx).clamp(0.0, w - 1.0);
                let y = (root_y + TEMPLATE[j].1 * body_h + sy + jy).clamp(0.0, h - 1.0);
                let dropped = rng.random_bool(params.drop_rate);
                let conf = rng.random_range(0.35..=1.0);
                if !dropped {
                    *kp = Keypoint::new(T::of(x), T::of(y), T::of(conf));
                }
            }
            persons.push(PersonPose::new(kps));
        }
        frames.push(FramePoses::new(t as u64, persons));

        // fighters close in, never faster than v per frame
        if gap > target_gap {
            gap = (gap - 0.5 * v).max(target_gap);
        }
        if !fight && !crossing {
            center_x += drift;
            let hs = 0.5 * (n - 1.0) * gap + 0.5 * body_w;
            if center_x - hs < 0.0 || center_x + hs > w - 1.0 {
                drift = -drift;
                center_x = center_x.clamp(hs, w - 1.0 - hs);
            }
        }
    }

    Ok(VideoPoseSequence {
        video_id: format!("synth_{}", params.seed),
        frames,
        label: Some(params.class_tag),
    })
}

/// Seed of video `index` of class `class` in a corpus seeded with `base`.
pub fn video_seed(base: u64, class: Label, index: usize) -> u64 {
    // splitmix64 finalizer over a combined key
    let mut z = base.wrapping_add(
        0x9E37_79B9_7F4A_7C15u64.wrapping_mul(2 * index as u64 + class.index() as u64 + 1),
    );
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A balanced corpus of preset videos, `per_class` of each class, Fight first.
/// Video ids are `fight_NNNN` / `nonfight_NNNN`.
pub fn generate_corpus<T: Scalar>(
    per_class: usize,
    n_frames: usize,
    seed: u64,
) -> Result<Vec<VideoPoseSequence<T>>, SynthError> {
    let mut out = Vec::with_capacity(2 * per_class);
    for class in [Label::Fight, Label::NonFight] {
        for i in 0..per_class {
            let params = SynthParams {
                n_frames,
                ..SynthParams::preset(class, video_seed(seed, class, i))
            };
            let mut seq = generate::<T>(&params)?;
            seq.video_id = format!("{}_{i:04}", class.as_str().to_ascii_lowercase());
            out.push(seq);
        }
    }
    Ok(out)
}

/// Writes videos as per-frame files under `dir/<video_id>/` plus
/// `dir/manifest.csv`. Returns the manifest path.
pub fn write_corpus<T: Scalar>(
    dir: &Path,
    videos: &[VideoPoseSequence<T>],
) -> Result<PathBuf, SynthError> {
    let mut entries = Vec::with_capacity(videos.len());
    for v in videos {
        write_video_dir(&dir.join(&v.video_id), v)?;
        entries.push(ManifestEntry {
            video_dir: PathBuf::from(&v.video_id),
            label: v.label,
        });
    }
    let manifest = dir.join("manifest.csv");
    write_manifest(&manifest, &entries)?;
    Ok(manifest)
}
