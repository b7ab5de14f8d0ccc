//! `generate`: seeded synthetic dataset emission (CSV + spec sidecar).

use std::path::PathBuf;

use serde::Serialize;

use infosel_core::synth::{generate, SynthError, SynthKind, SynthSpec};

use crate::csvio::write_csv;
use crate::error::CliError;
use crate::formats::{write_json, SCHEMA_VERSION};
use crate::manifest::ManifestBuilder;

#[derive(Debug, Clone)]
pub struct GenerateParams {
    pub kind: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub a: f64,
    pub b: f64,
    pub sigma_z: f64,
    pub weights: Option<Vec<f64>>,
    pub noise_std: f64,
    pub seed: u64,
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
struct SpecSidecar {
    schema_version: u32,
    kind: String,
    n: usize,
    d: usize,
    k: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma_z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_std: Option<f64>,
    target_column: String,
}

pub fn build_spec(params: &GenerateParams) -> Result<SynthSpec, CliError> {
    let spec = match params.kind.as_str() {
        "cond-gauss" => SynthSpec {
            n: params.n,
            d: params.d,
            k: params.k,
            seed: params.seed,
            kind: SynthKind::ConditionalGaussian,
        },
        "example1" => SynthSpec {
            n: params.n,
            d: 2,
            k: 1,
            seed: params.seed,
            kind: SynthKind::Example1 {
                a: params.a,
                b: params.b,
                sigma_z: params.sigma_z,
            },
        },
        "linear-gauss" => {
            let weights = params.weights.clone().ok_or_else(|| {
                CliError::Usage("linear-gauss needs --weights (comma-separated)".into())
            })?;
            SynthSpec {
                n: params.n,
                d: weights.len(),
                k: weights.len(),
                seed: params.seed,
                kind: SynthKind::LinearGaussian {
                    weights,
                    noise_std: params.noise_std,
                },
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown kind `{other}` (expected cond-gauss | example1 | linear-gauss)"
            )))
        }
    };
    Ok(spec)
}

pub fn run(params: &GenerateParams) -> Result<(), CliError> {
    let spec = build_spec(params)?;
    let dataset = generate(&spec).map_err(|e| match e {
        SynthError::InvalidSpec(_) => CliError::Usage(e.to_string()),
        other => CliError::Generation(other.to_string()),
    })?;
    let mut manifest = ManifestBuilder::new(
        "generate",
        serde_json::json!({
            "kind": params.kind,
            "n": spec.n,
            "d": spec.d,
            "k": spec.k,
            "a": params.a,
            "b": params.b,
            "sigma_z": params.sigma_z,
            "weights": params.weights,
            "noise_std": params.noise_std,
            "out": params.out.display().to_string(),
        }),
        Some(params.seed),
    );
    write_csv(&dataset, "y", &params.out)?;
    manifest.output(&params.out);

    let sidecar = SpecSidecar {
        schema_version: SCHEMA_VERSION,
        kind: params.kind.clone(),
        n: spec.n,
        d: spec.d,
        k: spec.k,
        seed: params.seed,
        a: (params.kind == "example1").then_some(params.a),
        b: (params.kind == "example1").then_some(params.b),
        sigma_z: (params.kind == "example1").then_some(params.sigma_z),
        weights: params.weights.clone(),
        noise_std: (params.kind == "linear-gauss").then_some(params.noise_std),
        target_column: "y".into(),
    };
    let stem = params
        .out
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "data".into());
    let sidecar_path = params.out.with_file_name(format!("{stem}.spec.json"));
    write_json(&sidecar, &sidecar_path)?;
    manifest.output(&sidecar_path);
    manifest.write(&params.out)?;

    println!(
        "wrote {} ({} rows x {} features) and {}",
        params.out.display(),
        dataset.n_rows(),
        dataset.n_features(),
        sidecar_path.display()
    );
    Ok(())
}
