//! JSON instance and report formats.
//!
//! Scalars are written as strings `"a"` or `"a/b"`; plain JSON integers are
//! accepted on input. Submodule columns and form coefficients are coordinates
//! relative to the basis `lattice_M`, whose columns are the basis vectors.

use serde::{Deserialize, Serialize};

use crate::cycles::{
    decompose_intersection, generic_intersection, properness_check, verify_intersection_distance,
    CycleConfiguration, CycleDecomposition, DualForm, LinearCycle, Properness,
};
use crate::error::{Error, Result};
use crate::lattice::{LatticeBasis, SplitSubmodule};
use crate::matrix::Matrix;
use crate::padic::{PAdicContext, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CycleRecord {
    Hyperplane { coefficients: Vec<Scalar> },
    Submodule { columns: Vec<Vec<Scalar>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub p: u64,
    pub n: usize,
    #[serde(rename = "lattice_M")]
    pub lattice_m: Matrix,
    pub cycles: Vec<CycleRecord>,
}

fn field_error(field: &str, e: Error) -> Error {
    Error::InvalidParameter(format!("{field}: {e}"))
}

fn check_shape(field: &str, m: &Matrix, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(field_error(
            field,
            Error::InvalidParameter(format!("expected {n}x{n}, found {}x{}", m.rows(), m.cols())),
        ));
    }
    Ok(())
}

fn parse_lattice(field: &str, p: u64, n: usize, m: Matrix) -> Result<LatticeBasis> {
    let ctx = PAdicContext::new(p).map_err(|e| field_error("p", e))?;
    check_shape(field, &m, n)?;
    LatticeBasis::new(ctx, m).map_err(|e| field_error(field, e))
}

impl InstanceFile {
    pub fn to_config(&self) -> Result<CycleConfiguration> {
        let ambient = parse_lattice("lattice_M", self.p, self.n, self.lattice_m.clone())?;
        let mut cycles = Vec::with_capacity(self.cycles.len());
        for (i, c) in self.cycles.iter().enumerate() {
            let field = format!("cycles[{i}]");
            let cycle = match c {
                CycleRecord::Hyperplane { coefficients } => {
                    LinearCycle::Hyperplane(DualForm::new(ambient.clone(), coefficients.clone()).map_err(|e| field_error(&field, e))?)
                }
                CycleRecord::Submodule { columns } => {
                    let m = Matrix::from_columns(self.n, columns).map_err(|e| field_error(&field, e))?;
                    LinearCycle::Submodule(SplitSubmodule::new(ambient.clone(), m).map_err(|e| field_error(&field, e))?)
                }
            };
            cycles.push(cycle);
        }
        CycleConfiguration::new(ambient, cycles).map_err(|e| field_error("cycles", e))
    }

    pub fn from_config(cfg: &CycleConfiguration) -> Self {
        InstanceFile {
            p: cfg.ctx().p(),
            n: cfg.dim(),
            lattice_m: cfg.ambient().matrix().clone(),
            cycles: cfg
                .cycles()
                .iter()
                .map(|c| match c {
                    LinearCycle::Hyperplane(f) => CycleRecord::Hyperplane { coefficients: f.coefficients().to_vec() },
                    LinearCycle::Submodule(s) => CycleRecord::Submodule { columns: s.columns().columns() },
                })
                .collect(),
        }
    }
}

/// Two lattices for a distance computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistInstance {
    pub p: u64,
    pub n: usize,
    pub lattices: Vec<Matrix>,
}

impl DistInstance {
    pub fn to_lattices(&self) -> Result<(LatticeBasis, LatticeBasis)> {
        if self.lattices.len() != 2 {
            return Err(field_error(
                "lattices",
                Error::InvalidParameter(format!("expected 2 lattices, found {}", self.lattices.len())),
            ));
        }
        let a = parse_lattice("lattices[0]", self.p, self.n, self.lattices[0].clone())?;
        let b = parse_lattice("lattices[1]", self.p, self.n, self.lattices[1].clone())?;
        Ok((a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    /// Basis of `L_0` in `M`-coordinates.
    pub generic_component: Vec<Vec<Scalar>>,
    pub generic_multiplicity: u32,
    /// Basis of `∩ N_ik` in `M/pM`, entries in `[0, p)`.
    pub special_component: Vec<Vec<u64>>,
    pub special_multiplicity: u32,
}

impl From<&CycleDecomposition> for DecompositionRecord {
    fn from(d: &CycleDecomposition) -> Self {
        DecompositionRecord {
            generic_component: d.generic_component.columns().columns(),
            generic_multiplicity: d.generic_multiplicity,
            special_component: d.special_component.columns(),
            special_multiplicity: d.special_multiplicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub number: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub properness: Properness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionRecord>,
}

/// Intersection number (zero-dimensional case) or decomposition (higher
/// dimensional case). Improper configurations are errors:
/// `ImproperGenericIntersection` when the generic fibres already fail to meet
/// properly, `ProperFail` otherwise.
pub fn analyze(cfg: &CycleConfiguration) -> Result<Report> {
    let properness = properness_check(cfg);
    let mut report = Report { number: None, lhs: None, rhs: None, agree: None, properness, decomposition: None };
    let n = cfg.dim();
    let c = cfg.total_codimension();
    match properness {
        Properness::Proper0Dim | Properness::EmptyIntersection if c == n => {
            let r = verify_intersection_distance(cfg)?;
            report.number = Some(r.lhs);
            report.lhs = Some(r.lhs);
            report.rhs = Some(r.rhs);
            report.agree = Some(r.agree);
        }
        Properness::EmptyIntersection => report.number = Some(0),
        Properness::ProperHigherDim(_) => {
            report.decomposition = Some(DecompositionRecord::from(&decompose_intersection(cfg)?));
        }
        _ => {
            let generic = generic_intersection(cfg).rank();
            let expected = n.saturating_sub(c);
            return Err(if generic != expected {
                Error::ImproperGenericIntersection
            } else {
                Error::ProperFail("the special fibres do not meet properly".into())
            });
        }
    }
    Ok(report)
}
