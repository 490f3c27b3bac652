//! Text and CSV renderings of evaluation results.

use std::fmt::Write;

use super::{ClassMetrics, ConfusionMatrix, CvReport, EvaluationReport};
use crate::pose::Label;

pub const REPORT_CSV_HEADER: &str = "fold,accuracy,tn,fp,fn,tp,\
nonfight_precision,nonfight_recall,nonfight_f1,fight_precision,fight_recall,fight_f1";

fn confusion_block(out: &mut String, cm: &ConfusionMatrix) {
    let _ = writeln!(
        out,
        "Confusion matrix (rows: true class, columns: predicted)"
    );
    let _ = writeln!(out, "{:<10}{:>10}{:>10}", "", "NonFight", "Fight");
    for t in Label::ALL {
        let _ = writeln!(
            out,
            "{:<10}{:>10}{:>10}",
            t.as_str(),
            cm.cell(t, Label::NonFight),
            cm.cell(t, Label::Fight)
        );
    }
}

fn class_table(out: &mut String, per_class: &[ClassMetrics; 2]) {
    let _ = writeln!(
        out,
        "{:<10}{:>11}{:>9}{:>10}{:>9}",
        "Class", "Precision", "Recall", "F1-score", "Support"
    );
    for c in Label::ALL {
        let m = &per_class[c.index()];
        let _ = writeln!(
            out,
            "{:<10}{:>11.4}{:>9.4}{:>10.4}{:>9}",
            c.as_str(),
            m.precision,
            m.recall,
            m.f1,
            m.support
        );
    }
}

/// Human-readable single-evaluation report.
pub fn report_text(r: &EvaluationReport) -> String {
    let mut out = String::new();
    confusion_block(&mut out, &r.confusion);
    out.push('\n');
    class_table(&mut out, &r.per_class);
    out.push('\n');
    let _ = writeln!(
        out,
        "Accuracy: {:.4} ({} samples)",
        r.accuracy,
        r.confusion.total()
    );
    out
}

/// Human-readable cross-validation report: averaged table, pooled confusion
/// matrix, then every fold.
pub fn cv_report_text(r: &CvReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}-fold stratified cross-validation ({}, fold seed {})",
        r.k,
        r.classifier.name(),
        r.seed
    );
    out.push('\n');
    let _ = writeln!(out, "Average over folds");
    class_table(&mut out, &r.averaged.per_class);
    let _ = writeln!(out, "Accuracy: {:.4}", r.averaged.accuracy);
    out.push('\n');
    let _ = writeln!(out, "Pooled over folds");
    confusion_block(&mut out, &r.pooled);
    for (i, f) in r.per_fold.iter().enumerate() {
        out.push('\n');
        let _ = writeln!(out, "--- Fold {i} ---");
        out.push_str(&report_text(f));
    }
    out
}

fn csv_row(
    out: &mut String,
    fold: &str,
    accuracy: f64,
    cm: Option<&ConfusionMatrix>,
    pc: &[ClassMetrics; 2],
) {
    let cells = match cm {
        Some(cm) => format!("{},{},{},{}", cm.tn, cm.fp, cm.fn_, cm.tp),
        None => ",,,".to_string(),
    };
    let _ = writeln!(
        out,
        "{fold},{accuracy},{cells},{},{},{},{},{},{}",
        pc[0].precision, pc[0].recall, pc[0].f1, pc[1].precision, pc[1].recall, pc[1].f1
    );
}

/// One-row CSV (`fold` = `all`).
pub fn report_csv(r: &EvaluationReport) -> String {
    let mut out = format!("{REPORT_CSV_HEADER}\n");
    csv_row(
        &mut out,
        "all",
        r.accuracy,
        Some(&r.confusion),
        &r.per_class,
    );
    out
}

/// One row per fold, then `mean` (confusion cells empty) and `pooled` (summed
/// confusion matrix with the metrics it implies).
pub fn cv_report_csv(r: &CvReport) -> String {
    let mut out = format!("{REPORT_CSV_HEADER}\n");
    for (i, f) in r.per_fold.iter().enumerate() {
        csv_row(
            &mut out,
            &i.to_string(),
            f.accuracy,
            Some(&f.confusion),
            &f.per_class,
        );
    }
    csv_row(
        &mut out,
        "mean",
        r.averaged.accuracy,
        None,
        &r.averaged.per_class,
    );
    if let Ok(p) = super::metrics(&r.pooled) {
        csv_row(
            &mut out,
            "pooled",
            p.accuracy,
            Some(&r.pooled),
            &p.per_class,
        );
    }
    out
}
