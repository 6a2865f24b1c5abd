//! Serializable report structures: the JSON surface for Gram/PSD/theta
//! results and bundled check suites.

use serde::Serialize;

use crate::kernel::{PsdCertificate, Scalar};

use super::theta::{ThetaModel, ThetaReport};
use super::GramModel;

#[derive(Serialize, Clone, Debug)]
pub struct TruncationJson {
    pub n_left: usize,
    pub max_pairs: usize,
}

#[derive(Serialize, Clone, Debug)]
#[serde(untagged)]
pub enum PsdJson {
    Psd {
        psd: bool,
        rank: usize,
    },
    Indefinite {
        psd: bool,
        witness: Vec<Scalar>,
        witness_value: Scalar,
    },
}

#[derive(Serialize, Clone, Debug)]
pub struct GramReportJson {
    pub weight: String,
    pub sector: usize,
    pub truncation: TruncationJson,
    pub gram_dim: usize,
    pub gram_rank: Option<usize>,
    pub psd: PsdJson,
    /// Diagram literals of the basis, row/column order of the Gram matrix.
    pub basis: Vec<String>,
}

impl GramReportJson {
    pub fn from_model(model: &GramModel) -> Self {
        let psd = match &model.certificate {
            PsdCertificate::Psd { rank } => PsdJson::Psd {
                psd: true,
                rank: *rank,
            },
            PsdCertificate::Indefinite { witness } => PsdJson::Indefinite {
                psd: false,
                witness: witness.clone(),
                witness_value: model.gram.quadratic_form(witness),
            },
        };
        GramReportJson {
            weight: model.weight_name.clone(),
            sector: model.n_left,
            truncation: TruncationJson {
                n_left: model.n_left,
                max_pairs: model.max_pairs,
            },
            gram_dim: model.basis.len(),
            gram_rank: model.rank(),
            psd,
            basis: model.basis.iter().map(|d| d.to_string()).collect(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ThetaJson {
    pub spectrum: Vec<f64>,
    pub norm_perp: f64,
    pub eig1_multiplicity: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct ThetaReportJson {
    pub weight: String,
    pub sector: String,
    pub truncation: TruncationJson,
    pub gram_rank: usize,
    pub psd: bool,
    pub theta: ThetaJson,
    pub checks: std::collections::BTreeMap<String, String>,
}

impl ThetaReportJson {
    pub fn from_parts(model: &ThetaModel, report: &ThetaReport) -> Self {
        let mut checks = std::collections::BTreeMap::new();
        checks.insert(
            "metric_symmetric".into(),
            if report.metric_symmetric {
                "pass".into()
            } else {
                "fail".to_string()
            },
        );
        checks.insert(
            "theta_fixes_xi".into(),
            if report.theta_fixes_xi {
                "pass".into()
            } else {
                "fail".to_string()
            },
        );
        ThetaReportJson {
            weight: model.weight_name.clone(),
            sector: format!("0..={}", model.max_legs),
            truncation: TruncationJson {
                n_left: model.max_legs,
                max_pairs: model.max_pairs,
            },
            gram_rank: model.quotient.rank(),
            psd: true,
            theta: ThetaJson {
                spectrum: report.spectrum.clone(),
                norm_perp: report.norm_perp,
                eig1_multiplicity: report.eig1_multiplicity,
            },
            checks,
        }
    }
}
