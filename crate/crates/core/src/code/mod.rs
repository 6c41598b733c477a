//! Linear codes over small finite fields.

mod catalog;
mod enumerate;
mod enumerator;
mod io;

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, Field, FieldError};

pub use catalog::{named_code, projective_reed_muller, reed_muller, NamedCode, MAX_LENGTH};
pub use enumerate::{enumerate_ranges, weight_enumerator, weight_enumerator_smart, DEFAULT_BUDGET};
pub use enumerator::{dimension_from_total, divisibility, macwilliams, WeightEnumerator};
pub use io::{parse_code, write_code};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("generator rows are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("generator rows have different lengths")]
    RaggedRows,
    #[error("element {value} out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("codes are over different fields")]
    FieldMismatch,
    #[error("code length {length} exceeds the cap {cap}")]
    LengthTooLarge { length: u64, cap: u64 },
    #[error("enumeration of {count} codewords exceeds the budget {budget}")]
    TooLarge { count: u128, budget: u128 },
    #[error("MacWilliams transform is not integral: input is not the enumerator of a linear code of the given dimension")]
    NonIntegerResult,
    #[error("unknown catalog code `{0}`")]
    UnknownName(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A linear code given by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    gen: Vec<Vec<Elem>>,
    name: Option<String>,
}

impl LinearCode {
    /// Builds a code from generator rows. Dependent rows are an error.
    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<Elem>>) -> Result<Self, CodeError> {
        let n = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_length(field, n, rows)
    }

    /// Like [`LinearCode::from_rows`], but with an explicit length so that the
    /// zero code (no rows) keeps its ambient dimension.
    pub fn from_rows_with_length(
        field: Arc<Field>,
        n: usize,
        rows: Vec<Vec<Elem>>,
    ) -> Result<Self, CodeError> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(CodeError::RaggedRows);
        }
        let q = field.order();
        if let Some(&bad) = rows.iter().flatten().find(|&&e| e as u32 >= q) {
            return Err(CodeError::ElementOutOfRange { value: bad as u64, q });
        }
        let rank = rank(&field, &rows);
        if rank < rows.len() {
            return Err(CodeError::RankDeficient { rank, rows: rows.len() });
        }
        Ok(LinearCode { field, n, gen: rows, name: None })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(field: Arc<Field>, n: usize) -> Self {
        LinearCode { field, n, gen: Vec::new(), name: None }
    }

    /// The full space `F_q^n`.
    pub fn full_space(field: Arc<Field>, n: usize) -> Self {
        let gen = (0..n)
            .map(|i| (0..n).map(|j| Elem::from(i == j)).collect())
            .collect();
        LinearCode { field, n, gen, name: None }
    }

    /// Row space of arbitrary rows; dependent rows are dropped.
    pub fn span(field: Arc<Field>, n: usize, rows: Vec<Vec<Elem>>) -> Self {
        let (reduced, _) = rref(&field, rows);
        LinearCode { field, n, gen: reduced, name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.gen
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Reduced row echelon form of the generator; identical for codes with the
    /// same row space.
    pub fn reduced_generator(&self) -> Vec<Vec<Elem>> {
        rref(&self.field, self.gen.clone()).0
    }

    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        self.field == other.field && self.n == other.n && self.reduced_generator() == other.reduced_generator()
    }

    /// Encodes a message (one coefficient per generator row).
    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.n];
        for (row, &a) in self.gen.iter().zip(message) {
            if a == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        out
    }

    /// All codewords, for small codes. Order: message index in base q.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let q = self.q() as u64;
        let k = self.dim();
        let total = q.pow(k as u32);
        (0..total).map(move |mut idx| {
            let msg: Vec<Elem> = (0..k)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    d as Elem
                })
                .collect();
            self.encode(&msg)
        })
    }

    /// The dual code, with generator rows orthogonal to every row of `self`.
    pub fn dual(&self) -> LinearCode {
        let f = &self.field;
        let (reduced, pivots) = rref(f, self.gen.clone());
        let mut is_pivot = vec![false; self.n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let rows = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.n];
                v[free] = 1;
                for (row, &pc) in reduced.iter().zip(&pivots) {
                    v[pc] = f.neg(row[free]);
                }
                v
            })
            .collect();
        LinearCode { field: self.field.clone(), n: self.n, gen: rows, name: None }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        if self.field != other.field {
            return Err(CodeError::FieldMismatch);
        }
        let n = self.n + other.n;
        let mut gen = Vec::with_capacity(self.dim() + other.dim());
        for row in &self.gen {
            let mut r = row.clone();
            r.resize(n, 0);
            gen.push(r);
        }
        for row in &other.gen {
            let mut r = vec![0; self.n];
            r.extend_from_slice(row);
            gen.push(r);
        }
        Ok(LinearCode { field: self.field.clone(), n, gen, name: None })
    }

    /// Standard inner product of two vectors.
    pub fn inner(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let f = &self.field;
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub(crate) fn rref(f: &Field, mut rows: Vec<Vec<Elem>>) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = f.neg(row[c]);
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                if pv != 0 {
                    *x = f.add(*x, f.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn rank(f: &Field, rows: &[Vec<Elem>]) -> usize {
    rref(f, rows.to_vec()).0.len()
}
