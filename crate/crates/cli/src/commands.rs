use std::fs;
use std::path::Path;

use difem::cache::FeatureTable;
use difem::classifiers::{fit, Dataset};
use difem::evaluation::{
    cv_report_csv, cv_report_text, evaluate_model, kfold_cv, report_csv, report_text,
};
use difem::features::{extract_features, FeatureConfig, VelocityPooling};
use difem::pose::{load_video_dir, read_manifest, ManifestEntry};
use difem::synthgen::{generate_corpus, write_corpus};
use difem::{FeatureGroups, Label, Model};
use log::{error, info};
use rayon::prelude::*;
use serde_json::json;

use crate::failure::{CmdResult, Context, Failure};
use crate::run_config::{sidecar_for, FeatureSettings, RunConfig};
use crate::{CvArgs, EvaluateArgs, ExtractArgs, PredictArgs, SynthArgs, TrainArgs};

fn write_file(path: &Path, contents: &str) -> CmdResult<()> {
    fs::write(path, contents).ctx(format!("writing {}", path.display()))
}

fn create_dir(path: &Path) -> CmdResult<()> {
    fs::create_dir_all(path).ctx(format!("creating {}", path.display()))
}

fn read_table(path: &Path) -> CmdResult<FeatureTable<f64>> {
    FeatureTable::read_path(path).ctx(format!("reading {}", path.display()))
}

fn read_labeled(path: &Path) -> CmdResult<(FeatureTable<f64>, Dataset<f64>)> {
    let table = read_table(path)?;
    let data = table
        .to_dataset()
        .ctx(format!("reading {}", path.display()))?;
    if data.is_empty() {
        return Err(Failure::data(format!("{} has no rows", path.display())));
    }
    Ok((table, data))
}

fn read_model(path: &Path) -> CmdResult<Model> {
    let text = fs::read_to_string(path).ctx(format!("reading {}", path.display()))?;
    Model::from_json(&text).ctx(format!("loading model {}", path.display()))
}

fn check_model_dim(model: &Model, table: &FeatureTable<f64>, path: &Path) -> CmdResult<()> {
    let found = table.groups.dim();
    if found != model.dim() {
        return Err(Failure::data(format!(
            "model expects {} features but {} has {found} ({})",
            model.dim(),
            path.display(),
            table.groups.column_names().join(",")
        )));
    }
    Ok(())
}

pub fn synth(a: SynthArgs) -> CmdResult<()> {
    if a.per_class == 0 {
        return Err(Failure::input("--per-class must be at least 1"));
    }
    let videos = generate_corpus::<f64>(a.per_class, a.frames, a.seed)?;
    create_dir(&a.out_dir)?;
    let manifest = write_corpus(&a.out_dir, &videos)?;
    info!(
        "wrote {} videos, manifest {}",
        videos.len(),
        manifest.display()
    );

    let mut rc = RunConfig::new("synth").output("manifest", &manifest);
    rc.seed = Some(a.seed);
    rc.extra.insert("per_class", json!(a.per_class));
    rc.extra.insert("frames", json!(a.frames));
    rc.write(&a.out_dir.join("run.json"))
}

pub fn extract(a: ExtractArgs) -> CmdResult<()> {
    let groups = FeatureGroups {
        velocity: !a.no_velocity,
        overlap: !a.no_overlap,
    };
    let config = FeatureConfig::<f64> {
        groups,
        confidence_floor: a.confidence_floor,
        normalize_frame: a.normalize,
        pooling: if a.per_frame_pooling {
            VelocityPooling::PerFrameFirst
        } else {
            VelocityPooling::Flat
        },
        ..Default::default()
    };
    config.validate()?;
    let entries = read_manifest(&a.manifest).ctx(format!("reading {}", a.manifest.display()))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Failure::input(format!("thread pool: {e}")))?;
    let results: Vec<Result<_, String>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e: &ManifestEntry| {
                let seq = load_video_dir::<f64>(&e.video_dir, &e.video_id())
                    .map_err(|err| err.to_string())?;
                let fv = extract_features(&seq, &config).map_err(|err| err.to_string())?;
                Ok((fv, e.label))
            })
            .collect()
    });

    let mut table = FeatureTable::new(groups);
    let mut failures = Vec::new();
    for (entry, r) in entries.iter().zip(results) {
        match r {
            Ok((fv, label)) => table.push(&fv, label)?,
            Err(msg) => {
                error!("{}: {msg}", entry.video_dir.display());
                failures.push((entry.video_dir.display().to_string(), msg));
            }
        }
    }
    table
        .write_path(&a.out)
        .ctx(format!("writing {}", a.out.display()))?;
    info!("wrote {} rows to {}", table.rows.len(), a.out.display());

    let mut rc = RunConfig::new("extract")
        .input("manifest", &a.manifest)
        .output("features", &a.out);
    rc.features = Some(FeatureSettings {
        velocity: groups.velocity,
        overlap: groups.overlap,
        normalize: a.normalize,
        confidence_floor: a.confidence_floor,
        per_frame_pooling: a.per_frame_pooling,
    });
    rc.jobs = Some(a.jobs);

    if !failures.is_empty() {
        let report = a.out.with_extension("errors.csv");
        let mut w = csv_writer(&report)?;
        w.write_record(["video_dir", "error"]).map_err(csv_err)?;
        for (dir, msg) in &failures {
            w.write_record([dir, msg]).map_err(csv_err)?;
        }
        w.flush()?;
        rc = rc.output("errors", &report);
        rc.write(&sidecar_for(&a.out))?;
        return Err(Failure::data(format!(
            "{} of {} videos failed; see {}",
            failures.len(),
            entries.len(),
            report.display()
        )));
    }
    rc.write(&sidecar_for(&a.out))
}

fn csv_writer(path: &Path) -> CmdResult<csv::Writer<fs::File>> {
    csv::Writer::from_path(path)
        .map_err(|e| csv_err(e).context(format!("writing {}", path.display())))
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Input(e.into())
}

pub fn train(a: TrainArgs) -> CmdResult<()> {
    let (table, data) = read_labeled(&a.features)?;
    let config = a.classifier.config();
    let model = fit(&config, &data)?;
    let json = model.to_json();
    write_file(&a.model_out, &json)?;

    let preds = model.predict_all(data.rows())?;
    let correct = preds
        .iter()
        .zip(data.labels())
        .filter(|(p, t)| p == t)
        .count();
    let counts = data.class_counts();
    println!("classifier       {}", config.name());
    println!("features         {}", table.groups.column_names().join(","));
    println!(
        "rows             {} (Fight {}, NonFight {})",
        data.len(),
        counts[Label::Fight.index()],
        counts[Label::NonFight.index()]
    );
    println!("training acc     {:.4}", correct as f64 / data.len() as f64);
    println!("model            {}", a.model_out.display());

    let mut rc = RunConfig::new("train")
        .input("features", &a.features)
        .output("model", &a.model_out);
    rc.classifier = Some(config);
    rc.seed = Some(a.classifier.seed);
    rc.write(&sidecar_for(&a.model_out))
}

pub fn predict(a: PredictArgs) -> CmdResult<()> {
    let model = read_model(&a.model)?;
    let table = read_table(&a.features)?;
    check_model_dim(&model, &table, &a.features)?;
    let mut w = csv_writer(&a.out)?;
    w.write_record(["video_id", "prediction"])
        .map_err(csv_err)?;
    for row in &table.rows {
        let label = model.predict(&row.values)?;
        w.write_record([row.video_id.as_str(), label.as_str()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    info!(
        "wrote {} predictions to {}",
        table.rows.len(),
        a.out.display()
    );

    let mut rc = RunConfig::new("predict")
        .input("model", &a.model)
        .input("features", &a.features)
        .output("predictions", &a.out);
    rc.classifier = Some(*model.config());
    rc.write(&sidecar_for(&a.out))
}

pub fn evaluate(a: EvaluateArgs) -> CmdResult<()> {
    let model = read_model(&a.model)?;
    let (table, data) = read_labeled(&a.features)?;
    check_model_dim(&model, &table, &a.features)?;
    let report = evaluate_model(&model, &data)?;
    let text = report_text(&report);
    create_dir(&a.out_dir)?;
    write_file(&a.out_dir.join("report.txt"), &text)?;
    write_file(&a.out_dir.join("report.csv"), &report_csv(&report))?;
    print!("{text}");

    let mut rc = RunConfig::new("evaluate")
        .input("model", &a.model)
        .input("features", &a.features)
        .output("report_txt", &a.out_dir.join("report.txt"))
        .output("report_csv", &a.out_dir.join("report.csv"));
    rc.classifier = Some(*model.config());
    rc.write(&a.out_dir.join("run.json"))
}

pub fn cv(a: CvArgs) -> CmdResult<()> {
    let (_, data) = read_labeled(&a.features)?;
    let config = a.classifier.config();
    let report = kfold_cv(&data, a.k, &config, a.classifier.seed)?;
    let text = cv_report_text(&report);
    create_dir(&a.out_dir)?;
    write_file(&a.out_dir.join("report.txt"), &text)?;
    write_file(&a.out_dir.join("report.csv"), &cv_report_csv(&report))?;
    print!("{text}");

    let mut rc = RunConfig::new("cv")
        .input("features", &a.features)
        .output("report_txt", &a.out_dir.join("report.txt"))
        .output("report_csv", &a.out_dir.join("report.csv"));
    rc.classifier = Some(config);
    rc.seed = Some(a.classifier.seed);
    rc.k = Some(a.k);
    rc.write(&a.out_dir.join("run.json"))
}
