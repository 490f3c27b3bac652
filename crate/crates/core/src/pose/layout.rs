//! Corpus layout on disk: one directory per video holding
//! `<video>_<%012d>_keypoints.json` frame files, plus a `video_dir,label`
//! manifest CSV.

use std::fs;
use std::path::{Path, PathBuf};

use super::{load_sequence, to_frame_json, Label, PoseError, VideoPoseSequence};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub video_dir: PathBuf,
    pub label: Option<Label>,
}

impl ManifestEntry {
    /// Video id used in feature caches: the directory's final component.
    pub fn video_id(&self) -> String {
        self.video_dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.video_dir.to_string_lossy().into_owned())
    }
}

/// Frame index encoded in a frame file name: the last run of digits in the
/// stem, e.g. `clip_000000000042_keypoints.json` → 42.
pub fn frame_index_from_file_name(name: &str) -> Option<u64> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    let bytes = stem.as_bytes();
    let end = bytes.iter().rposition(u8::is_ascii_digit)? + 1;
    let start = bytes[..end]
        .iter()
        .rposition(|b| !b.is_ascii_digit())
        .map_or(0, |p| p + 1);
    stem[start..end].parse().ok()
}

/// Loads every `*.json` frame file of one video directory.
pub fn load_video_dir<T: Scalar>(
    dir: &Path,
    video_id: impl Into<String>,
) -> Result<VideoPoseSequence<T>, PoseError> {
    let io = |source| PoseError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut sources = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") || !path.is_file() {
            continue;
        }
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default();
        let index =
            frame_index_from_file_name(name).ok_or_else(|| PoseError::FileName(path.clone()))?;
        let raw = fs::read(&path).map_err(|source| PoseError::Io {
            path: path.clone(),
            source,
        })?;
        sources.push((index, raw));
    }
    load_sequence(sources, video_id)
}

/// Writes a sequence as per-frame files into `dir` (created if needed).
pub fn write_video_dir<T: Scalar>(dir: &Path, seq: &VideoPoseSequence<T>) -> Result<(), PoseError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| PoseError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    for frame in &seq.frames {
        let path = dir.join(format!(
            "{}_{:012}_keypoints.json",
            seq.video_id, frame.frame_index
        ));
        fs::write(&path, to_frame_json(frame)).map_err(io(&path))?;
    }
    Ok(())
}

/// Reads a `video_dir,label` manifest. Relative directories resolve against
/// the manifest's own directory; an empty label means unlabeled.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>, PoseError> {
    let base = path.parent().unwrap_or(Path::new(""));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| manifest_error(path, 0, e))?;
    let headers = reader
        .headers()
        .map_err(|e| manifest_error(path, 1, e))?
        .clone();
    if headers.get(0) != Some("video_dir") {
        return Err(PoseError::Manifest {
            line: 1,
            message: format!(
                "expected header video_dir,label, found {:?}",
                headers.as_slice()
            ),
        });
    }
    let mut entries = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| manifest_error(path, line, e))?;
        let dir = record.get(0).unwrap_or_default();
        if dir.is_empty() {
            return Err(PoseError::Manifest {
                line,
                message: "empty video_dir".into(),
            });
        }
        let label = match record.get(1).unwrap_or_default() {
            "" => None,
            s => Some(
                s.parse::<Label>()
                    .map_err(|message| PoseError::Manifest { line, message })?,
            ),
        };
        entries.push(ManifestEntry {
            video_dir: base.join(dir),
            label,
        });
    }
    Ok(entries)
}

/// Writes a manifest with paths as given (callers pass paths relative to the
/// manifest location to keep corpora relocatable).
pub fn write_manifest(path: &Path, entries: &[ManifestEntry]) -> Result<(), PoseError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| manifest_error(path, 0, e))?;
    let mut write = || -> Result<(), csv::Error> {
        w.write_record(["video_dir", "label"])?;
        for e in entries {
            w.write_record([
                e.video_dir.to_string_lossy().as_ref(),
                e.label.map(Label::as_str).unwrap_or(""),
            ])?;
        }
        w.flush()?;
        Ok(())
    };
    write().map_err(|e| manifest_error(path, 0, e))
}

fn manifest_error(path: &Path, line: usize, e: impl std::fmt::Display) -> PoseError {
    PoseError::Manifest {
        line,
        message: format!("{}: {e}", path.display()),
    }
}
