use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::detector::DetectorKind;

pub const CSV_HEADER: &str =
    "image,detector,metric,value_percent,corners_a,corners_b,matched,seconds";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    /// Stability factor over an illumination pair.
    Eta,
    /// Noise immunity over a clean/noisy pair.
    Rho,
}

impl MetricKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MetricKind::Eta => "eta",
            MetricKind::Rho => "rho",
        }
    }
}

/// Result for one image and one detector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub image: String,
    pub detector: DetectorKind,
    pub metric: MetricKind,
    /// Percent in `[0, 100]`; `None` when neither frame had corners.
    pub value: Option<f64>,
    pub corners_a: usize,
    pub corners_b: usize,
    pub matched: usize,
    /// Mean wall-clock detection time per frame.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileError {
    pub image: String,
    pub detector: Option<DetectorKind>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub detector: DetectorKind,
    pub metric: MetricKind,
    /// Records with a defined value.
    pub count: usize,
    pub mean: Option<f64>,
    /// Population standard deviation.
    pub std: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub std_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub records: Vec<Record>,
    pub errors: Vec<FileError>,
    pub aggregates: Vec<Aggregate>,
}

pub(crate) fn mean_std(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (Some(mean), Some(var.sqrt()))
}

impl MetricsReport {
    /// Sorts records and errors, then recomputes one aggregate per
    /// detector and metric present.
    pub fn assemble(mut records: Vec<Record>, mut errors: Vec<FileError>) -> Self {
        records.sort_by(|a, b| {
            (&a.image, a.detector, a.metric).cmp(&(&b.image, b.detector, b.metric))
        });
        errors.sort_by(|a, b| (&a.image, a.detector).cmp(&(&b.image, b.detector)));

        let mut keys: Vec<(DetectorKind, MetricKind)> =
            records.iter().map(|r| (r.detector, r.metric)).collect();
        keys.sort();
        keys.dedup();
        let aggregates = keys
            .into_iter()
            .map(|(detector, metric)| {
                let group: Vec<&Record> = records
                    .iter()
                    .filter(|r| r.detector == detector && r.metric == metric)
                    .collect();
                let values: Vec<f64> = group.iter().filter_map(|r| r.value).collect();
                let (mean, std) = mean_std(&values);
                let seconds: Vec<f64> = group.iter().filter_map(|r| r.seconds).collect();
                let (mean_seconds, std_seconds) = mean_std(&seconds);
                Aggregate {
                    detector,
                    metric,
                    count: values.len(),
                    mean,
                    std,
                    mean_seconds,
                    std_seconds,
                }
            })
            .collect();
        Self {
            records,
            errors,
            aggregates,
        }
    }

    /// A copy with every timing field cleared, for byte-reproducible output.
    pub fn without_timing(&self) -> Self {
        let mut out = self.clone();
        for r in &mut out.records {
            r.seconds = None;
        }
        for a in &mut out.aggregates {
            a.mean_seconds = None;
            a.std_seconds = None;
        }
        out
    }

    pub fn aggregate(&self, detector: DetectorKind) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.detector == detector)
    }

    /// CSV with one row per record, one per file error, and an aggregate
    /// trailer row per detector. Missing values are left empty, except an
    /// undefined metric which is written as `none`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                csv_field(&r.image),
                r.detector,
                r.metric.as_str(),
                percent(r.value),
                r.corners_a,
                r.corners_b,
                r.matched,
                seconds(r.seconds),
            );
        }
        for e in &self.errors {
            let _ = writeln!(
                out,
                "{},{},error,,,,,",
                csv_field(&e.image),
                e.detector.map(|d| d.as_str()).unwrap_or(""),
            );
        }
        for a in &self.aggregates {
            let _ = writeln!(
                out,
                "aggregate,{},{},{},,,{},{}",
                a.detector,
                a.metric.as_str(),
                percent(a.mean),
                a.count,
                seconds(a.mean_seconds),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn percent(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.4}"))
        .unwrap_or_else(|| "none".into())
}

fn seconds(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6}")).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
