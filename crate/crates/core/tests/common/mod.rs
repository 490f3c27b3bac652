//! Brute-force reference implementations and random fixtures shared by the
//! integration suites. Nothing here calls into the feature or classifier code
//! it is used to check.

#![allow(dead_code)]

use difem::pose::{FramePoses, Keypoint, PersonPose, VideoPoseSequence};
use rand::Rng;

/// (BODY-25 index, weight) of the selected joints, written out by hand.
pub const JOINTS: [(usize, f64); 11] = [
    (4, 1.0),  // right wrist
    (7, 1.0),  // left wrist
    (3, 0.8),  // right elbow
    (6, 0.8),  // left elbow
    (9, 1.0),  // right hip
    (12, 1.0), // left hip
    (10, 1.0), // right knee
    (13, 1.0), // left knee
    (11, 1.0), // right ankle
    (14, 1.0), // left ankle
    (1, 1.0),  // neck
];

/// A frame as raw `[x, y, c]` triples per person.
pub type RawFrame = Vec<[[f64; 3]; 25]>;

pub fn raw_frames(seq: &VideoPoseSequence<f64>) -> Vec<RawFrame> {
    seq.frames
        .iter()
        .map(|f| {
            f.persons
                .iter()
                .map(|p| {
                    let mut out = [[0.0; 3]; 25];
                    for (o, k) in out.iter_mut().zip(p.keypoints.iter()) {
                        *o = [k.x, k.y, k.confidence];
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn ok(kp: &[f64; 3], floor: f64) -> bool {
    kp[2] > 0.0 && kp[2] >= floor
}

/// Every velocity of a video, brute force.
pub fn oracle_velocities(frames: &[RawFrame], floor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for t in 0..frames.len().saturating_sub(1) {
        for person in &frames[t] {
            for &(j, w) in &JOINTS {
                if !ok(&person[j], floor) {
                    continue;
                }
                let mut best = f64::INFINITY;
                let mut found = false;
                for other in &frames[t + 1] {
                    if !ok(&other[j], floor) {
                        continue;
                    }
                    let dx = other[j][0] - person[j][0];
                    let dy = other[j][1] - person[j][1];
                    let d2 = dx * dx + dy * dy;
                    if !found || d2 < best {
                        best = d2;
                        found = true;
                    }
                }
                if found {
                    out.push((w * best).sqrt());
                }
            }
        }
    }
    out
}

/// Joint-overlap count of one frame, brute force over ordered pairs.
pub fn oracle_overlap(frame: &RawFrame, floor: f64) -> u32 {
    let mut count = 0;
    for a in 0..frame.len() {
        for b in 0..frame.len() {
            if a == b {
                continue;
            }
            let pts: Vec<&[f64; 3]> = frame[b].iter().filter(|k| ok(k, floor)).collect();
            if pts.len() < 2 {
                continue;
            }
            let x0 = pts.iter().map(|k| k[0]).fold(f64::INFINITY, f64::min);
            let x1 = pts.iter().map(|k| k[0]).fold(f64::NEG_INFINITY, f64::max);
            let y0 = pts.iter().map(|k| k[1]).fold(f64::INFINITY, f64::min);
            let y1 = pts.iter().map(|k| k[1]).fold(f64::NEG_INFINITY, f64::max);
            for &(j, _) in &JOINTS {
                let k = &frame[a][j];
                if ok(k, floor) && x0 <= k[0] && k[0] <= x1 && y0 <= k[1] && k[1] <= y1 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn stats(v: &[f64]) -> (f64, f64, f64) {
    if v.is_empty() {
        return (0.0, 0.0, 0.0);
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let max = v.iter().cloned().fold(0.0, f64::max);
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, max, var)
}

/// The five features of a video from first principles.
pub fn oracle_features(frames: &[RawFrame], floor: f64) -> [f64; 5] {
    let (mv, xv, vv) = stats(&oracle_velocities(frames, floor));
    let counts: Vec<f64> = frames
        .iter()
        .map(|f| f64::from(oracle_overlap(f, floor)))
        .collect();
    let (mo, _, vo) = stats(&counts);
    [mv, xv, vv, mo, vo]
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || a == b
}

/// Random person: a loose body around a center, some joints missing, some
/// low-confidence, coordinates on a 0.5 px lattice so ties and box-edge
/// contacts happen.
pub fn random_person<R: Rng>(rng: &mut R, cx: f64, cy: f64) -> PersonPose<f64> {
    let mut p = PersonPose::empty();
    let missing = rng.random_range(0.0..0.4);
    for k in p.keypoints.iter_mut() {
        if rng.random_bool(missing) {
            continue;
        }
        let x = (cx + rng.random_range(-60.0..60.0f64)).max(0.0);
        let y = (cy + rng.random_range(-120.0..120.0f64)).max(0.0);
        let c = if rng.random_bool(0.1) {
            0.0
        } else {
            rng.random_range(1..=20) as f64 / 20.0
        };
        *k = Keypoint::new((x * 2.0).round() / 2.0, (y * 2.0).round() / 2.0, c);
    }
    p
}

pub fn random_frame<R: Rng>(rng: &mut R, index: u64, max_persons: usize) -> FramePoses<f64> {
    let n = rng.random_range(0..=max_persons);
    let persons = (0..n)
        .map(|_| {
            let cx = rng.random_range(80.0..400.0);
            let cy = rng.random_range(150.0..300.0);
            random_person(rng, cx, cy)
        })
        .collect();
    FramePoses::new(index, persons)
}

/// Random video with up to `max_persons` per frame and up to `max_frames`
/// frames; persons move by random steps so matches are non-trivial.
pub fn random_sequence<R: Rng>(
    rng: &mut R,
    max_persons: usize,
    max_frames: usize,
) -> VideoPoseSequence<f64> {
    let n_frames = rng.random_range(0..=max_frames);
    let mut frames: Vec<FramePoses<f64>> = Vec::with_capacity(n_frames);
    for t in 0..n_frames {
        let frame = if t > 0 && rng.random_bool(0.7) {
            // perturb the previous frame, sometimes adding/removing persons
            let mut f = frames[t - 1].clone();
            f.frame_index = t as u64;
            for p in f.persons.iter_mut() {
                for k in p.keypoints.iter_mut() {
                    if k.confidence > 0.0 {
                        k.x = (k.x + rng.random_range(-10..=10) as f64 * 0.5).max(0.0);
                        k.y = (k.y + rng.random_range(-10..=10) as f64 * 0.5).max(0.0);
                    }
                    if rng.random_bool(0.05) {
                        *k = Keypoint::missing();
                    }
                }
            }
            if rng.random_bool(0.1) && !f.persons.is_empty() {
                let i = rng.random_range(0..f.persons.len());
                f.persons.remove(i);
            }
            if rng.random_bool(0.1) && f.persons.len() < max_persons {
                f.persons.push(random_person(rng, 200.0, 200.0));
            }
            f
        } else {
            random_frame(rng, t as u64, max_persons)
        };
        frames.push(frame);
    }
    VideoPoseSequence {
        video_id: "random".into(),
        frames,
        label: None,
    }
}

/// kNN by full sort of (distance, index); majority of the first k, ties to 0.
pub fn oracle_knn(rows: &[Vec<f64>], labels: &[usize], k: usize, q: &[f64]) -> usize {
    let mut d: Vec<(f64, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let s: f64 = r.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            (s.sqrt(), i)
        })
        .collect();
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let fights = d[..k].iter().filter(|(_, i)| labels[*i] == 1).count();
    usize::from(2 * fights > k)
}

/// Labels of a dataset by nearest class centroid: a separability check for
/// synthetic data that shares no code with the classifiers.
pub fn nearest_centroid_accuracy(rows: &[Vec<f64>], labels: &[usize]) -> f64 {
    let d = rows[0].len();
    let mut c = [vec![0.0; d], vec![0.0; d]];
    let mut n = [0.0; 2];
    for (r, &l) in rows.iter().zip(labels) {
        n[l] += 1.0;
        for (a, b) in c[l].iter_mut().zip(r) {
            *a += b;
        }
    }
    for l in 0..2 {
        for a in c[l].iter_mut() {
            *a /= n[l];
        }
    }
    let dist =
        |r: &[f64], c: &[f64]| -> f64 { r.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum() };
    let correct = rows
        .iter()
        .zip(labels)
        .filter(|(r, &l)| usize::from(dist(r, &c[1]) < dist(r, &c[0])) == l)
        .count();
    correct as f64 / rows.len() as f64
}

/// Linearly separable 2-class set: class 1 shifted along a fixed direction.
pub fn separable_set<R: Rng>(rng: &mut R, n: usize, dim: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let l = i % 2;
        let shift = if l == 1 { 3.0 } else { -3.0 };
        rows.push(
            (0..dim)
                .map(|_| rng.random_range(-1.0..1.0) + shift)
                .collect(),
        );
        labels.push(l);
    }
    (rows, labels)
}
