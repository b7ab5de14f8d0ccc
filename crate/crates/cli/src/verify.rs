//! `verify`: runs the oracle property suite (removal bounds on random
//! joints, chain-rule telescoping, end-to-end budget safety) and prints one
//! pass/fail line per property. Exit code 0 only when everything passes.

use std::path::PathBuf;

use infosel_core::verify::{run_default_suite, single_joint_check, PropertyCheck};

use crate::error::CliError;
use crate::formats::{read_json, write_json, JointDoc, VerifyDoc};
use crate::manifest::ManifestBuilder;

#[derive(Debug, Clone)]
pub struct VerifyParams {
    pub joints: usize,
    pub seed: u64,
    pub from_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn run(params: &VerifyParams) -> Result<(), CliError> {
    let checks: Vec<PropertyCheck> = match &params.from_file {
        Some(path) => {
            let doc: JointDoc = read_json(path)?;
            let joint = doc.into_joint()?;
            vec![single_joint_check(&joint)]
        }
        None => run_default_suite(params.joints, params.seed),
    };

    for check in &checks {
        let verdict = if check.pass { "PASS" } else { "FAIL" };
        println!("{verdict}  {:<24} {}", check.name, check.detail);
    }
    let all_pass = checks.iter().all(|c| c.pass);

    if let Some(out) = &params.out {
        let doc = VerifyDoc::new(params.joints, params.seed, &checks);
        let mut manifest = ManifestBuilder::new(
            "verify",
            serde_json::json!({
                "joints": params.joints,
                "from_file": params.from_file.as_ref().map(|p| p.display().to_string()),
                "out": out.display().to_string(),
            }),
            Some(params.seed),
        );
        if let Some(path) = &params.from_file {
            manifest.input(path)?;
        }
        write_json(&doc, out)?;
        manifest.output(out);
        manifest.write(out)?;
    }

    if all_pass {
        Ok(())
    } else {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Property(failed.join(", ")))
    }
}
