//! JSON wire formats: field configurations, elements in the canonical
//! integer encoding, codes, hull reports, variation traces, and spectra.
//!
//! Elements are accepted either as canonical integers N = Σ c_i q^i or as
//! coefficient arrays, and always emitted in the integer form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{Flavor, HullReport, RankCode};
use crate::error::{Error, Result};
use crate::gf::{build_field, FieldElement, FieldTower, TowerExt};
use crate::hullvary::VariationTrace;
use crate::linalg::{MatrixFq, MatrixK};
use crate::oracle::SpectrumReport;

/// Tower parameters as carried in configuration files; polynomial
/// coefficients are listed from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub base_modulus: Option<Vec<u64>>,
    pub top_modulus: Vec<u64>,
}

impl FieldConfig {
    pub fn build(&self) -> Result<Arc<FieldTower>> {
        build_field(
            self.p,
            self.e,
            self.m,
            self.base_modulus.as_deref(),
            &self.top_modulus,
        )
    }

    pub fn of(tower: &FieldTower) -> FieldConfig {
        FieldConfig {
            p: tower.p(),
            e: tower.e(),
            m: tower.m(),
            base_modulus: tower.base_modulus().map(|f| f.to_vec()),
            top_modulus: tower.top_modulus().to_vec(),
        }
    }
}

/// Input form of one K-element.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Int(u64),
    Coeffs(Vec<u64>),
}

pub fn element_from_repr(tower: &Arc<FieldTower>, repr: &ElementRepr) -> Result<FieldElement> {
    match repr {
        ElementRepr::Int(n) => tower.from_canonical(*n as u128),
        ElementRepr::Coeffs(c) => tower.from_coeffs(c),
    }
}

/// Canonical integer of an element, for emission.
pub fn element_to_int(x: &FieldElement) -> Result<u64> {
    u64::try_from(x.canonical())
        .map_err(|_| Error::InvalidInput("element encoding exceeds u64".into()))
}

pub fn row_to_ints(row: &[FieldElement]) -> Result<Vec<u64>> {
    row.iter().map(element_to_int).collect()
}

pub fn matrix_k_to_ints(m: &MatrixK) -> Result<Vec<Vec<u64>>> {
    (0..m.rows()).map(|i| row_to_ints(m.row(i))).collect()
}

pub fn matrix_fq_to_ints(m: &MatrixFq) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row_codes(i).to_vec()).collect()
}

fn flavor_name(flavor: Flavor) -> String {
    flavor.as_str().to_string()
}

pub fn flavor_from_name(name: &str) -> Result<Flavor> {
    match name {
        "hermitian" => Ok(Flavor::Hermitian),
        "euclidean" => Ok(Flavor::Euclidean),
        other => Err(Error::InvalidInput(format!(
            "unknown flavor {other:?}; expected \"hermitian\" or \"euclidean\""
        ))),
    }
}

/// A code together with its field context.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldConfig,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "G")]
    pub g: Vec<Vec<ElementRepr>>,
}

impl CodeJson {
    pub fn of(code: &RankCode) -> Result<CodeJson> {
        let rows = matrix_k_to_ints(code.generator())?
            .into_iter()
            .map(|row| row.into_iter().map(ElementRepr::Int).collect())
            .collect();
        Ok(CodeJson {
            field: FieldConfig::of(code.tower()),
            n: code.n(),
            k: code.k(),
            g: rows,
        })
    }

    pub fn decode(&self) -> Result<(Arc<FieldTower>, RankCode)> {
        let tower = self.field.build()?;
        if self.g.len() != self.k {
            return Err(Error::InvalidInput(format!(
                "k = {} but G has {} rows",
                self.k,
                self.g.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.k);
        for row in &self.g {
            if row.len() != self.n {
                return Err(Error::InvalidInput(format!(
                    "n = {} but a row of G has {} entries",
                    self.n,
                    row.len()
                )));
            }
            rows.push(
                row.iter()
                    .map(|r| element_from_repr(&tower, r))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let code = RankCode::new(MatrixK::from_rows(&tower, rows)?)?;
        Ok((tower, code))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HullReportJson {
    pub flavor: String,
    pub h: usize,
    pub hull_basis: Vec<Vec<u64>>,
    pub kernel_basis: Vec<Vec<u64>>,
}

impl HullReportJson {
    pub fn of(report: &HullReport) -> Result<HullReportJson> {
        Ok(HullReportJson {
            flavor: flavor_name(report.flavor),
            h: report.h,
            hull_basis: report
                .hull_basis
                .iter()
                .map(|v| row_to_ints(v))
                .collect::<Result<_>>()?,
            kernel_basis: report
                .kernel_basis
                .iter()
                .map(|v| row_to_ints(v))
                .collect::<Result<_>>()?,
        })
    }
}

/// (α, λ) pairs on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisJson {
    pub alpha: Vec<ElementRepr>,
    pub lambda: ElementRepr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GabidulinSpecJson {
    pub alpha: Vec<ElementRepr>,
    pub k: usize,
    pub s: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStepJson {
    #[serde(rename = "M")]
    pub m: Vec<Vec<u64>>,
    pub h_after: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceJson {
    pub flavor: String,
    pub initial_h: usize,
    pub final_h: usize,
    pub steps: Vec<TraceStepJson>,
}

impl TraceJson {
    pub fn of(trace: &VariationTrace) -> TraceJson {
        TraceJson {
            flavor: flavor_name(trace.flavor),
            initial_h: trace.initial_h,
            final_h: trace.final_h,
            steps: trace
                .steps
                .iter()
                .map(|(m, h_after)| TraceStepJson {
                    m: matrix_fq_to_ints(m),
                    h_after: *h_after,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub flavor: String,
    pub group_size: u64,
    /// Pairs [hull dimension, count].
    pub histogram: Vec<[u64; 2]>,
    pub attained: Vec<usize>,
}

impl SpectrumJson {
    pub fn of(report: &SpectrumReport) -> Result<SpectrumJson> {
        Ok(SpectrumJson {
            flavor: flavor_name(report.flavor),
            group_size: u64::try_from(report.group_size)
                .map_err(|_| Error::InvalidInput("group size exceeds u64".into()))?,
            histogram: report
                .histogram
                .iter()
                .map(|(&h, &c)| [h as u64, c])
                .collect(),
            attained: report.attained.clone(),
        })
    }
}
