//! Reference tables of `S̄` for Reed-Muller codes over `F_2`, `F_3`, `F_4`,
//! and their recomputation.
//!
//! Each cell carries a feasibility annotation for the default budget:
//! enumerate the code directly, enumerate its dual and transform, or skip.

use std::fmt;
use std::sync::Arc;

use crate::code::{macwilliams, reed_muller, weight_enumerator, CodeError, WeightEnumerator, DEFAULT_BUDGET};
use crate::gf::Field;
use crate::roots::RootOptions;
use crate::symgroup::{classify_finiteness, enumerator_symmetry_group, Finiteness, IsoType, SymmetryError};

/// How a cell's enumerator is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Direct,
    ViaDual,
    Skipped,
}

impl Route {
    fn from_char(c: char) -> Route {
        match c {
            'd' => Route::Direct,
            'v' => Route::ViaDual,
            's' => Route::Skipped,
            _ => panic!("bad feasibility annotation {c:?}"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::ViaDual => "via-dual",
            Route::Skipped => "skipped",
        }
    }
}

/// `∞` or a finite group type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellValue {
    Infinite,
    Finite(IsoType),
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Infinite => write!(f, "∞"),
            CellValue::Finite(t) => write!(f, "{t}"),
        }
    }
}

impl std::str::FromStr for CellValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "∞" | "inf" => Ok(CellValue::Infinite),
            t => t.parse().map(CellValue::Finite),
        }
    }
}

/// One reference table: rows `r = 0..`, columns `m = 1..`.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceTable {
    pub q: u64,
    /// Cell labels; an empty label is a cell the reference leaves blank.
    labels: &'static [&'static [&'static str]],
    /// `d` direct, `v` via the dual, `s` skipped, per cell.
    routes: &'static [&'static str],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellSpec {
    pub r: usize,
    pub m: usize,
    pub expected: Option<CellValue>,
    pub route: Route,
}

impl ReferenceTable {
    pub fn rows(&self) -> usize {
        self.labels.len()
    }

    pub fn max_m(&self) -> usize {
        self.labels[0].len()
    }

    pub fn cell(&self, r: usize, m: usize) -> CellSpec {
        let label = self.labels[r][m - 1];
        let expected = (!label.is_empty()).then(|| label.parse().expect("valid reference label"));
        let route = Route::from_char(self.routes[r].chars().nth(m - 1).expect("annotation per cell"));
        CellSpec { r, m, expected, route }
    }

    pub fn cells(&self, max_m: usize) -> impl Iterator<Item = CellSpec> + '_ {
        let max_m = max_m.min(self.max_m());
        (0..self.rows()).flat_map(move |r| (1..=max_m).map(move |m| self.cell(r, m)))
    }
}

pub const BINARY: ReferenceTable = ReferenceTable {
    q: 2,
    labels: &[
        &["∞", "D_4", "D_8", "D_16", "D_32", "D_64", "D_128"],
        &["∞", "D_4", "S_4", "D_8", "D_16", "D_32", "D_64"],
        &["∞", "∞", "D_8", "D_8", "S_4", "D_4", "D_8"],
        &["∞", "∞", "∞", "D_16", "D_16", "D_4", "S_4"],
        &["∞", "∞", "∞", "∞", "D_32", "D_32", "D_8"],
        &["∞", "∞", "∞", "∞", "∞", "D_64", "D_64"],
        &["∞", "∞", "∞", "∞", "∞", "∞", "D_128"],
    ],
    routes: &["ddddddd", "vvddddd", "vvvvddd", "vvvvvvs", "vvvvvvv", "vvvvvvv", "vvvvvvv"],
};

pub const TERNARY: ReferenceTable = ReferenceTable {
    q: 3,
    labels: &[
        &["D_3", "D_9", "D_27", "D_81"],
        &["D_3", "C_3", "C_9", "C_27"],
        &["∞", "C_3", "C_3", "C_3"],
        &["∞", "D_9", "C_3", ""],
        &["∞", "∞", "C_9", ""],
        &["∞", "∞", "D_27", "C_3"],
        &["∞", "∞", "∞", "C_27"],
        &["∞", "∞", "∞", "D_81"],
    ],
    routes: &["dddd", "vddd", "vvdd", "vvvs", "vvvs", "vvvv", "vvvv", "vvvv"],
};

pub const QUATERNARY: ReferenceTable = ReferenceTable {
    q: 4,
    labels: &[
        &["D_8", "D_16", "D_64"],
        &["V_4", "C_4", "C_16"],
        &["D_8", "{Id}", "C_4"],
        &["∞", "{Id}", "{Id}"],
        &["∞", "C_4", ""],
        &["∞", "D_16", "{Id}"],
        &["∞", "∞", "C_4"],
        &["∞", "∞", "C_16"],
        &["∞", "∞", "D_64"],
    ],
    routes: &["ddd", "ddd", "vdd", "vvs", "vvs", "vvs", "vvv", "vvv", "vvv"],
};

pub fn reference_table(q: u64) -> Option<&'static ReferenceTable> {
    [&BINARY, &TERNARY, &QUATERNARY].into_iter().find(|t| t.q == q)
}

/// Direct when `q^dim` fits and is no larger than `q^codim`, via the dual
/// when `q^codim` fits, skipped otherwise.
pub fn route(q: u64, dim: usize, n: usize, budget: u128) -> Route {
    let fits = |k: usize| (q as u128).checked_pow(k as u32).is_some_and(|c| c <= budget);
    let codim = n - dim;
    if dim <= codim && fits(dim) {
        Route::Direct
    } else if fits(codim) {
        Route::ViaDual
    } else if fits(dim) {
        Route::Direct
    } else {
        Route::Skipped
    }
}

/// The enumerator of `RM_q(r, m)` along `route`; `None` when skipped.
pub fn cell_enumerator(q: u64, r: usize, m: usize, budget: u128) -> Result<(Route, Option<WeightEnumerator>), CodeError> {
    let field = Arc::new(Field::with_order(q)?);
    let code = reed_muller(field, r, m)?;
    let route = route(q, code.dim(), code.len(), budget);
    let w = match route {
        Route::Direct => Some(weight_enumerator(&code, budget)?),
        Route::ViaDual => {
            let dual = code.dual();
            Some(macwilliams(&weight_enumerator(&dual, budget)?, q, dual.dim())?)
        }
        Route::Skipped => None,
    };
    Ok((route, w))
}

/// `∞` or the type of `S̄(w)`.
pub fn evaluate(w: &WeightEnumerator, q: u64, opts: &RootOptions) -> Result<CellValue, SymmetryError> {
    if let Finiteness::Infinite(_) = classify_finiteness(w, q) {
        return Ok(CellValue::Infinite);
    }
    let g = enumerator_symmetry_group(w, q, opts)?;
    Ok(CellValue::Finite(g.iso.expect("finite groups are identified")))
}

/// A recomputed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellResult {
    pub spec: CellSpec,
    pub route: Route,
    pub computed: Option<CellValue>,
}

impl CellResult {
    /// Computed cells must equal the reference; skipped and blank cells are
    /// not compared.
    pub fn matches(&self) -> bool {
        match (self.computed, self.spec.expected) {
            (Some(c), Some(e)) => c == e,
            _ => true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

pub fn compute_cell(table: &ReferenceTable, spec: CellSpec, budget: u128, opts: &RootOptions) -> Result<CellResult, TableError> {
    let (route, w) = cell_enumerator(table.q, spec.r, spec.m, budget)?;
    let computed = w.map(|w| evaluate(&w, table.q, opts)).transpose()?;
    Ok(CellResult { spec, route, computed })
}

/// Text rendering: one row per `r`, mismatches marked `!`, skipped cells `-`.
pub fn render(table: &ReferenceTable, results: &[CellResult]) -> String {
    let max_m = results.iter().map(|c| c.spec.m).max().unwrap_or(0);
    let width = 9;
    let mut out = format!("{:>4} |", "r\\m");
    for m in 1..=max_m {
        out += &format!("{m:>width$}");
    }
    out.push('\n');
    for r in 0..table.rows() {
        out += &format!("{r:>4} |");
        for m in 1..=max_m {
            let text = match results.iter().find(|c| c.spec.r == r && c.spec.m == m) {
                Some(c) => match c.computed {
                    Some(v) if c.matches() => v.to_string(),
                    Some(v) => format!("!{v}"),
                    None => "-".into(),
                },
                None => String::new(),
            };
            out += &format!("{text:>width$}");
        }
        out.push('\n');
    }
    out
}

/// `(r, m, expected, computed)` for every mismatched cell.
pub fn diff(results: &[CellResult]) -> Vec<(usize, usize, CellValue, CellValue)> {
    results
        .iter()
        .filter(|c| !c.matches())
        .map(|c| (c.spec.r, c.spec.m, c.spec.expected.expect("compared"), c.computed.expect("compared")))
        .collect()
}

/// Default budget used by the embedded annotations.
pub const TABLE_BUDGET: u128 = DEFAULT_BUDGET;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annotations_match_the_default_budget() {
        for table in [&BINARY, &TERNARY, &QUATERNARY] {
            let field = Arc::new(Field::with_order(table.q).unwrap());
            for spec in table.cells(usize::MAX) {
                let code = reed_muller(field.clone(), spec.r, spec.m).unwrap();
                assert_eq!(route(table.q, code.dim(), code.len(), TABLE_BUDGET), spec.route, "q={} r={} m={}", table.q, spec.r, spec.m);
            }
        }
    }

    #[test]
    fn blank_reference_cells() {
        let blank: Vec<(u64, usize, usize)> = [&BINARY, &TERNARY, &QUATERNARY]
            .into_iter()
            .flat_map(|t| t.cells(usize::MAX).filter(|c| c.expected.is_none()).map(|c| (t.q, c.r, c.m)))
            .collect();
        assert_eq!(blank, vec![(3, 3, 4), (3, 4, 4), (4, 4, 3)]);
    }

    #[test]
    fn labels_parse() {
        assert_eq!(BINARY.cell(1, 3).expected, Some(CellValue::Finite(IsoType::S4)));
        assert_eq!(BINARY.cell(0, 7).expected, Some(CellValue::Finite(IsoType::Dihedral(128))));
        assert_eq!(QUATERNARY.cell(2, 2).expected, Some(CellValue::Finite(IsoType::Cyclic(1))));
        assert_eq!(QUATERNARY.cell(1, 1).expected, Some(CellValue::Finite(IsoType::Dihedral(2))));
        assert_eq!(TERNARY.cell(2, 1).expected, Some(CellValue::Infinite));
    }

    #[test]
    fn routing() {
        assert_eq!(route(2, 29, 128, TABLE_BUDGET), Route::Direct);
        assert_eq!(route(2, 99, 128, TABLE_BUDGET), Route::ViaDual);
        assert_eq!(route(2, 64, 128, TABLE_BUDGET), Route::Skipped);
        // The cheaper side wins when both fit.
        assert_eq!(route(3, 8, 9, TABLE_BUDGET), Route::ViaDual);
    }
}
