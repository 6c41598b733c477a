//! Serialized result types. Big integers and rationals are decimal strings;
//! complex numbers use the `re,im@prec` tagged form so that values parse
//! back at the precision they were computed at.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use wesym_core::classify::{InfiniteCaseReport, StructureClaim};
use wesym_core::code::WeightEnumerator;
use wesym_core::invring::InvariantDecomposition;
use wesym_core::roots::BigComplex;
use wesym_core::symgroup::{CrossRatioCertificate, Finiteness, IsoType, SymmetryElement, SymmetryGroup};
use wesym_core::tables::{CellResult, CellValue};

use crate::CliError;

fn bad(what: &str, s: &str) -> CliError {
    CliError::Usage(format!("malformed {what} `{s}`"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorDto {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    /// `A_0..A_n`.
    pub coeffs: Vec<String>,
}

impl EnumeratorDto {
    pub fn new(w: &WeightEnumerator, q: u64, k: usize) -> Self {
        EnumeratorDto { q, n: w.degree(), k, coeffs: w.coeffs().iter().map(ToString::to_string).collect() }
    }

    pub fn to_enumerator(&self) -> Result<WeightEnumerator, CliError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.parse::<BigUint>().map_err(|_| bad("coefficient", c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightEnumerator::new(coeffs).with_provenance(self.q, self.k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoDto {
    #[serde(rename = "type")]
    pub kind: String,
    pub parameter: Option<usize>,
}

impl From<IsoType> for IsoDto {
    fn from(t: IsoType) -> Self {
        let (kind, parameter) = match t {
            IsoType::Cyclic(k) => ("Cyclic", Some(k)),
            IsoType::Dihedral(k) => ("Dihedral", Some(k)),
            IsoType::A4 => ("A4", None),
            IsoType::S4 => ("S4", None),
            IsoType::A5 => ("A5", None),
        };
        IsoDto { kind: kind.into(), parameter }
    }
}

impl IsoDto {
    pub fn to_iso(&self) -> Result<IsoType, CliError> {
        match (self.kind.as_str(), self.parameter) {
            ("Cyclic", Some(k)) => Ok(IsoType::Cyclic(k)),
            ("Dihedral", Some(k)) => Ok(IsoType::Dihedral(k)),
            ("A4", None) => Ok(IsoType::A4),
            ("S4", None) => Ok(IsoType::S4),
            ("A5", None) => Ok(IsoType::A5),
            _ => Err(bad("group type", &self.kind)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDto {
    /// Row-major `[a, b, c, d]`.
    pub matrix: [String; 4],
    pub lambda: String,
    pub order: usize,
}

impl From<&SymmetryElement> for ElementDto {
    fn from(e: &SymmetryElement) -> Self {
        ElementDto {
            matrix: e.proj.entries().clone().map(|z| z.to_tagged_string()),
            lambda: e.lambda.to_tagged_string(),
            order: e.order,
        }
    }
}

impl ElementDto {
    pub fn lambda(&self) -> Result<BigComplex, CliError> {
        BigComplex::parse_tagged(&self.lambda).ok_or_else(|| bad("complex number", &self.lambda))
    }

    pub fn matrix(&self) -> Result<[BigComplex; 4], CliError> {
        let parsed: Vec<BigComplex> = self
            .matrix
            .iter()
            .map(|s| BigComplex::parse_tagged(s).ok_or_else(|| bad("complex number", s)))
            .collect::<Result<_, _>>()?;
        Ok(parsed.try_into().expect("four entries"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryDto {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
    pub degree: usize,
    pub precision: usize,
    pub proj_order: Option<usize>,
    pub full_order: Option<usize>,
    pub iso: Option<IsoDto>,
    pub elements: Vec<ElementDto>,
    /// Root indices of a cross-ratio witness that the group is trivial.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificates: Option<Vec<[usize; 5]>>,
}

impl SymmetryDto {
    pub fn new(g: &SymmetryGroup, certificate: Option<&CrossRatioCertificate>) -> Self {
        let (kind, case) = match g.kind {
            Finiteness::Finite => ("Finite", None),
            Finiteness::Infinite(c) => ("Infinite", Some(c.name().to_string())),
        };
        SymmetryDto {
            kind: kind.into(),
            case,
            degree: g.degree,
            precision: g.prec,
            proj_order: g.proj_order(),
            full_order: g.full_order(),
            iso: g.iso.map(IsoDto::from),
            elements: g.elements.iter().map(ElementDto::from).collect(),
            certificates: certificate.map(|c| vec![c.indices]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub a: usize,
    pub b: usize,
    /// Exact rational `p/q`.
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDto {
    pub terms: Vec<TermDto>,
    pub unique: bool,
}

impl From<&InvariantDecomposition> for DecompositionDto {
    fn from(d: &InvariantDecomposition) -> Self {
        DecompositionDto {
            terms: d.terms.iter().map(|(a, b, c)| TermDto { a: *a, b: *b, coeff: format!("{}/{}", c.numer(), c.denom()) }).collect(),
            unique: d.unique,
        }
    }
}

impl DecompositionDto {
    pub fn terms(&self) -> Result<Vec<(usize, usize, BigRational)>, CliError> {
        self.terms
            .iter()
            .map(|t| Ok((t.a, t.b, wesym_core::wpoly::parse_rational(&t.coeff).ok_or_else(|| bad("rational", &t.coeff))?)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDto {
    pub kind: String,
    pub case: Option<String>,
    pub structure: Option<String>,
    pub notes: Vec<String>,
}

pub fn structure_name(s: &StructureClaim) -> String {
    match s {
        StructureClaim::Zero => "Zero".into(),
        StructureClaim::Full => "Full".into(),
        StructureClaim::DirectSumOfPairs { copies } => format!("DirectSumOfPairs({copies})"),
        StructureClaim::ClassificationOpen => "ClassificationOpen".into(),
        StructureClaim::NotACodeEnumerator => "NotACodeEnumerator".into(),
    }
}

impl From<&InfiniteCaseReport> for ClassifyDto {
    fn from(r: &InfiniteCaseReport) -> Self {
        ClassifyDto {
            kind: "Infinite".into(),
            case: Some(r.case.name().into()),
            structure: Some(structure_name(&r.structure)),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDto {
    pub r: usize,
    pub m: usize,
    pub route: String,
    pub expected: Option<String>,
    pub computed: Option<String>,
    pub matches: bool,
}

impl From<&CellResult> for CellDto {
    fn from(c: &CellResult) -> Self {
        CellDto {
            r: c.spec.r,
            m: c.spec.m,
            route: c.route.name().into(),
            expected: c.spec.expected.map(|v| v.to_string()),
            computed: c.computed.map(|v| v.to_string()),
            matches: c.matches(),
        }
    }
}

impl CellDto {
    pub fn computed(&self) -> Result<Option<CellValue>, CliError> {
        self.computed.as_deref().map(|s| s.parse().map_err(|_| bad("cell value", s))).transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDto {
    pub q: u64,
    pub max_m: usize,
    pub cells: Vec<CellDto>,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityDto {
    pub divisibility: usize,
    /// Order of the witness `diag(1, zeta)` in PGL2(C).
    pub witness_order: usize,
    /// The witness fixes the form at residual `2^(-prec/2)`.
    pub witness_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDto {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<u16>>,
}
