use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::TrialBatchResult;
use crate::error::Result;

/// `results.csv` → `results.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes one CSV row per grid point plus a pretty-printed JSON sidecar
/// describing the run. Output bytes depend only on the inputs.
pub fn persist<M: Serialize>(results: &[TrialBatchResult], manifest: &M, path: &Path) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    writer.write_record(CSV_HEADER)?;
    for row in results {
        writer.serialize(row)?;
    }
    writer.flush()?;

    let mut json = BufWriter::new(File::create(sidecar_path(path))?);
    serde_json::to_writer_pretty(&mut json, manifest)?;
    json.write_all(b"\n")?;
    json.flush()?;
    Ok(())
}

pub fn reload(path: &Path) -> Result<Vec<TrialBatchResult>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader.deserialize().map(|row| row.map_err(Into::into)).collect()
}

// Written explicitly so an empty result set still produces the header.
const CSV_HEADER: [&str; 17] = [
    "code",
    "decoder",
    "r_p",
    "r_q",
    "ebn0_db",
    "words",
    "word_errors",
    "wer",
    "wer_ci_lo",
    "wer_ci_hi",
    "ber",
    "mean_fht",
    "mean_iters",
    "seed",
    "bit_errors",
    "truncated",
    "crossover",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Factor;
    use proptest::prelude::*;

    fn row(words: u64, errors: u64, wer: f64, fht: f64, ebn0: Option<f64>) -> TrialBatchResult {
        TrialBatchResult {
            code: "RM(7,2)".into(),
            decoder: "sdss".into(),
            r_p: Factor::new(1, 32).unwrap(),
            r_q: "0.85".parse().unwrap(),
            ebn0_db: ebn0,
            words,
            word_errors: errors,
            wer,
            wer_ci_lo: wer * 0.9,
            wer_ci_hi: wer * 1.1,
            ber: wer / 7.0,
            mean_fht: fht,
            mean_iters: 2.125,
            seed: 42,
            bit_errors: errors * 3,
            truncated: false,
            crossover: ebn0.is_none().then_some(0.1),
        }
    }

    #[test]
    fn empty_results_give_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        persist(&[], &serde_json::json!({"job": null}), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("code,decoder,r_p,r_q,ebn0_db,words,word_errors,wer,wer_ci_lo,wer_ci_hi,ber,mean_fht,mean_iters,seed"));
        assert!(reload(&path).unwrap().is_empty());
        assert!(sidecar_path(&path).exists());
    }

    #[test]
    fn one_point_two_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        persist(&[row(100, 7, 0.07, 12.5, Some(2.0))], &1, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        let line = text.lines().nth(1).unwrap();
        assert!(line.starts_with("\"RM(7,2)\",sdss,0.03125,0.85,2.0,100,7,"), "{line}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn reload_restores_every_field(
            words in 1u64..1_000_000,
            errors in 0u64..1000,
            wer in 0.0f64..1.0,
            fht in 0.0f64..1e5,
            ebn0 in proptest::option::of(-5.0f64..10.0),
        ) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("r.csv");
            let rows = vec![row(words, errors, wer, fht, ebn0), row(1, 0, 0.0, 1.0, Some(1.5))];
            persist(&rows, &(), &path).unwrap();
            prop_assert_eq!(reload(&path).unwrap(), rows);
        }
    }
}
