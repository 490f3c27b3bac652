//! `difem` command-line tool: synthetic corpora, feature extraction, training,
//! prediction, evaluation and cross-validation.
//!
//! Exit codes: 0 success, 2 input or configuration error, 3 data or contract
//! error.

mod commands;
mod failure;
mod run_config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use difem::ClassifierConfig;

#[derive(Parser)]
#[command(
    name = "difem",
    version,
    about = "Pose-based violence recognition pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic labeled corpus and its manifest.
    Synth(SynthArgs),
    /// Extract one feature row per manifest video into a CSV cache.
    Extract(ExtractArgs),
    /// Train a classifier on a feature CSV and save the model.
    Train(TrainArgs),
    /// Predict labels for every row of a feature CSV.
    Predict(PredictArgs),
    /// Score a saved model on a labeled feature CSV.
    Evaluate(EvaluateArgs),
    /// Stratified k-fold cross-validation on a labeled feature CSV.
    Cv(CvArgs),
}

#[derive(Args)]
pub struct SynthArgs {
    /// Output directory; receives one folder per video and manifest.csv.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Videos per class.
    #[arg(long, default_value_t = 100)]
    pub per_class: usize,
    #[arg(long, default_value_t = difem::synthgen::DEFAULT_FRAMES)]
    pub frames: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args)]
pub struct ExtractArgs {
    /// Manifest CSV with header `video_dir,label`.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Feature CSV to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Drop the velocity features.
    #[arg(long)]
    pub no_velocity: bool,
    /// Drop the joint-overlap features.
    #[arg(long)]
    pub no_overlap: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Express velocities in frame diagonals of a WIDTHxHEIGHT frame.
    #[arg(long, value_name = "WIDTHxHEIGHT", value_parser = parse_frame_size)]
    pub normalize: Option<(f64, f64)>,
    /// Keypoints below this confidence count as missing.
    #[arg(long, default_value_t = 0.0)]
    pub confidence_floor: f64,
    /// Average velocities per frame pair before pooling over the video.
    #[arg(long)]
    pub per_frame_pooling: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ClassifierKind {
    Dt,
    Rf,
    Adaboost,
    Knn,
}

#[derive(Args)]
pub struct ClassifierArgs {
    #[arg(long, value_enum, default_value = "rf")]
    pub classifier: ClassifierKind,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n_trees: usize,
    #[arg(long, default_value_t = 100)]
    pub n_estimators: usize,
    /// Neighbours for kNN.
    #[arg(long = "neighbours", default_value_t = 5)]
    pub neighbours: usize,
}

impl ClassifierArgs {
    pub fn config(&self) -> ClassifierConfig {
        match self.classifier {
            ClassifierKind::Dt => ClassifierConfig::DecisionTree { seed: self.seed },
            ClassifierKind::Rf => ClassifierConfig::RandomForest {
                n_trees: self.n_trees,
                seed: self.seed,
            },
            ClassifierKind::Adaboost => ClassifierConfig::AdaBoost {
                n_estimators: self.n_estimators,
            },
            ClassifierKind::Knn => ClassifierConfig::Knn { k: self.neighbours },
        }
    }
}

#[derive(Args)]
pub struct TrainArgs {
    /// Labeled feature CSV.
    #[arg(long)]
    pub features: PathBuf,
    #[command(flatten)]
    pub classifier: ClassifierArgs,
    #[arg(long)]
    pub model_out: PathBuf,
}

#[derive(Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Feature CSV; labels may be empty.
    #[arg(long)]
    pub features: PathBuf,
    /// Prediction CSV to write (`video_id,prediction`).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Labeled feature CSV.
    #[arg(long)]
    pub features: PathBuf,
    /// Receives report.txt, report.csv and run.json.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args)]
pub struct CvArgs {
    /// Labeled feature CSV.
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Seeds both the fold assignment and the classifier.
    #[command(flatten)]
    pub classifier: ClassifierArgs,
    /// Receives report.txt, report.csv and run.json.
    #[arg(long)]
    pub out_dir: PathBuf,
}

fn parse_frame_size(s: &str) -> Result<(f64, f64), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v > 0.0)
            .ok_or_else(|| format!("bad frame dimension {v:?}"))
    };
    Ok((parse(w)?, parse(h)?))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Extract(a) => commands::extract(a),
        Command::Train(a) => commands::train(a),
        Command::Predict(a) => commands::predict(a),
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Cv(a) => commands::cv(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            log::error!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
