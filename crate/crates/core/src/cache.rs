//! Feature cache: one CSV row per video,
//! `video_id,label,mean_vel,max_vel,var_vel,mean_overlap,var_overlap`.
//!
//! Ablation caches carry only the enabled columns (`mean_vel,max_vel,var_vel`
//! or `mean_overlap,var_overlap`). Values are written with 9 significant
//! digits; an empty label marks an unlabeled video.

use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::classifiers::{ClassifierError, Dataset};
use crate::features::{FeatureGroups, FeatureVector};
use crate::pose::Label;
use crate::Scalar;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("feature cache schema: {0}")]
    Schema(String),
    #[error("feature cache row {line}: {message}")]
    Row { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Data(#[from] ClassifierError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CachedRow<T: Scalar> {
    pub video_id: String,
    pub label: Option<Label>,
    pub values: Vec<T>,
}

/// Parsed contents of a feature cache.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable<T: Scalar> {
    pub groups: FeatureGroups,
    pub rows: Vec<CachedRow<T>>,
}

impl<T: Scalar> FeatureTable<T> {
    pub fn new(groups: FeatureGroups) -> Self {
        FeatureTable {
            groups,
            rows: Vec::new(),
        }
    }

    /// Adds a vector, keeping only its enabled values. The vector's groups
    /// must match the table's.
    pub fn push(&mut self, fv: &FeatureVector<T>, label: Option<Label>) -> Result<(), CacheError> {
        if fv.groups != self.groups {
            return Err(CacheError::Schema(format!(
                "vector groups {:?} differ from table groups {:?}",
                fv.groups, self.groups
            )));
        }
        self.rows.push(CachedRow {
            video_id: fv.video_id.clone(),
            label,
            values: fv.enabled_values(),
        });
        Ok(())
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["video_id", "label"];
        h.extend(self.groups.column_names());
        h
    }

    /// Labeled dataset over all rows; fails if any row is unlabeled.
    pub fn to_dataset(&self) -> Result<Dataset<T>, CacheError> {
        let mut labels = Vec::with_capacity(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            labels.push(r.label.ok_or_else(|| CacheError::Row {
                line: i + 2,
                message: format!("video {:?} has no label", r.video_id),
            })?);
        }
        let rows = self.rows.iter().map(|r| r.values.clone()).collect();
        Ok(Dataset::new(rows, labels)?)
    }

    pub fn write_to<W: Write>(&self, w: W) -> Result<(), CacheError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(self.header())?;
        for r in &self.rows {
            let mut rec = vec![
                r.video_id.clone(),
                r.label.map(|l| l.as_str().to_string()).unwrap_or_default(),
            ];
            rec.extend(r.values.iter().map(|v| format_significant(v.as_f64(), 9)));
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_path(&self, path: &Path) -> Result<(), CacheError> {
        self.write_to(std::fs::File::create(path)?)
    }

    pub fn read_from<R: Read>(r: R) -> Result<Self, CacheError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(r);
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header.len() < 2 || header[0] != "video_id" || header[1] != "label" {
            return Err(CacheError::Schema(format!(
                "header must start with video_id,label; found {}",
                header.join(",")
            )));
        }
        let groups = FeatureGroups::from_column_names(&header[2..]).ok_or_else(|| {
            CacheError::Schema(format!(
                "unrecognized feature columns {}",
                header[2..].join(",")
            ))
        })?;
        let mut table = FeatureTable::new(groups);
        for (i, rec) in reader.records().enumerate() {
            let line = i + 2;
            let rec = rec?;
            let row_err = |message: String| CacheError::Row { line, message };
            if rec.len() != header.len() {
                return Err(row_err(format!(
                    "{} fields, expected {}",
                    rec.len(),
                    header.len()
                )));
            }
            let label = match &rec[1] {
                "" => None,
                s => Some(s.parse::<Label>().map_err(row_err)?),
            };
            let values = rec
                .iter()
                .skip(2)
                .map(|s| {
                    s.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .map(T::of)
                        .ok_or_else(|| row_err(format!("bad number {s:?}")))
                })
                .collect::<Result<Vec<T>, _>>()?;
            table.rows.push(CachedRow {
                video_id: rec[0].to_string(),
                label,
                values,
            });
        }
        Ok(table)
    }

    pub fn read_path(path: &Path) -> Result<Self, CacheError> {
        Self::read_from(std::fs::File::open(path)?)
    }
}

/// `printf("%.{digits}g")`-style formatting.
pub fn format_significant(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_fraction(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.0, 9), "0");
        assert_eq!(format_significant(4.0, 9), "4");
        assert_eq!(format_significant(2.0 / 3.0, 9), "0.666666667");
        assert_eq!(format_significant(20f64.sqrt(), 9), "4.47213595");
        assert_eq!(format_significant(123456789.4, 9), "123456789");
        assert_eq!(format_significant(1234567894.0, 9), "1.23456789e9");
        assert_eq!(format_significant(0.000012345, 9), "1.2345e-5");
        assert_eq!(format_significant(0.00012345, 9), "0.00012345");
        assert_eq!(format_significant(9.9999999999, 9), "10");
    }

    proptest! {
        #[test]
        fn nine_digits_are_accurate(v in 1e-8f64..1e8) {
            let back: f64 = format_significant(v, 9).parse().unwrap();
            prop_assert!(((back - v) / v).abs() <= 5e-9);
        }

        #[test]
        fn f32_values_survive(v in 0f32..1e6) {
            let back: f32 = format_significant(v as f64, 9).parse().unwrap();
            prop_assert_eq!(back, v);
        }
    }

    fn fv(id: &str, groups: FeatureGroups) -> FeatureVector<f64> {
        let mut f = FeatureVector {
            video_id: id.into(),
            mean_velocity: 1.5,
            max_velocity: 7.25,
            var_velocity: 2.0 / 3.0,
            mean_overlap: 0.0,
            var_overlap: 0.0,
            groups,
        };
        if groups.overlap {
            f.mean_overlap = 3.0;
            f.var_overlap = 0.125;
        }
        if !groups.velocity {
            f.mean_velocity = 0.0;
            f.max_velocity = 0.0;
            f.var_velocity = 0.0;
        }
        f
    }

    #[test]
    fn full_and_ablated_layouts() {
        for groups in [
            FeatureGroups::default(),
            FeatureGroups::VELOCITY_ONLY,
            FeatureGroups::OVERLAP_ONLY,
        ] {
            let mut t = FeatureTable::new(groups);
            t.push(&fv("a", groups), Some(Label::Fight)).unwrap();
            t.push(&fv("b", groups), None).unwrap();
            let mut buf = Vec::new();
            t.write_to(&mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let first = text.lines().next().unwrap();
            assert_eq!(first.split(',').count(), 2 + groups.dim());
            let back = FeatureTable::<f64>::read_from(text.as_bytes()).unwrap();
            assert_eq!(back.groups, groups);
            assert_eq!(back.rows[0].label, Some(Label::Fight));
            assert_eq!(back.rows[1].label, None);
            assert_eq!(back.rows[0].values.len(), groups.dim());
            assert!(back.to_dataset().is_err());
        }
        let mut t = FeatureTable::new(FeatureGroups::default());
        t.push(&fv("a", FeatureGroups::default()), Some(Label::NonFight))
            .unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "video_id,label,mean_vel,max_vel,var_vel,mean_overlap,var_overlap\n\
             a,NonFight,1.5,7.25,0.666666667,3,0.125\n"
        );
    }

    #[test]
    fn schema_errors() {
        let bad = "id,label,mean_vel\n";
        assert!(matches!(
            FeatureTable::<f64>::read_from(bad.as_bytes()),
            Err(CacheError::Schema(_))
        ));
        let bad = "video_id,label,mean_vel,max_vel\n";
        assert!(matches!(
            FeatureTable::<f64>::read_from(bad.as_bytes()),
            Err(CacheError::Schema(_))
        ));
        let bad = "video_id,label,mean_overlap,var_overlap\nv,Fight,1,x\n";
        assert!(matches!(
            FeatureTable::<f64>::read_from(bad.as_bytes()),
            Err(CacheError::Row { line: 2, .. })
        ));
        let mut t = FeatureTable::new(FeatureGroups::default());
        assert!(t
            .push(&fv("a", FeatureGroups::VELOCITY_ONLY), None)
            .is_err());
    }
}
