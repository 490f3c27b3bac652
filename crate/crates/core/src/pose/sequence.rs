use std::collections::HashSet;

use super::{parse_frame, PoseError, VideoPoseSequence};
use crate::Scalar;

/// Assembles a video from `(frame_index, frame document)` pairs in any order.
///
/// Frames come back sorted by index. Every frame is parsed; a single failure
/// is reported as [`PoseError::Frame`], several as [`PoseError::Frames`].
pub fn load_sequence<T, I, B>(
    frame_sources: I,
    video_id: impl Into<String>,
) -> Result<VideoPoseSequence<T>, PoseError>
where
    T: Scalar,
    I: IntoIterator<Item = (u64, B)>,
    B: AsRef<[u8]>,
{
    let mut seen = HashSet::new();
    let mut frames = Vec::new();
    let mut errors = Vec::new();
    for (frame_index, raw) in frame_sources {
        if !seen.insert(frame_index) {
            return Err(PoseError::DuplicateFrame(frame_index));
        }
        match parse_frame::<T>(raw.as_ref()) {
            Ok(mut frame) => {
                frame.frame_index = frame_index;
                frames.push(frame);
            }
            Err(e) => errors.push((frame_index, e)),
        }
    }
    if !errors.is_empty() {
        errors.sort_by_key(|(i, _)| *i);
        let mut wrapped: Vec<PoseError> = errors
            .into_iter()
            .map(|(frame_index, e)| PoseError::Frame {
                frame_index,
                source: Box::new(e),
            })
            .collect();
        return Err(if wrapped.len() == 1 {
            wrapped.remove(0)
        } else {
            PoseError::Frames(wrapped)
        });
    }
    frames.sort_by_key(|f| f.frame_index);
    Ok(VideoPoseSequence {
        video_id: video_id.into(),
        frames,
        label: None,
    })
}
