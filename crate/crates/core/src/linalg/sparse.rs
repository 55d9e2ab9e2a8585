use crate::error::{arg_err, Result};

use super::field::Field;

/// A sparse vector: strictly increasing column indices, no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<E> {
    entries: Vec<(u32, E)>,
}

impl<E: Clone> SparseVec<E> {
    pub fn zero() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Builds a vector from arbitrary `(column, value)` pairs, summing repeats.
    pub fn from_pairs<F: Field<Elem = E>>(field: &F, mut pairs: Vec<(u32, E)>) -> Self {
        pairs.sort_by_key(|&(c, _)| c);
        let mut entries: Vec<(u32, E)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = field.add(lv, &v),
                _ => {
                    if let Some((_, lv)) = entries.last() {
                        if field.is_zero(lv) {
                            entries.pop();
                        }
                    }
                    entries.push((c, v));
                }
            }
        }
        if let Some((_, lv)) = entries.last() {
            if field.is_zero(lv) {
                entries.pop();
            }
        }
        SparseVec { entries }
    }

    /// Entries must already be strictly increasing and nonzero.
    pub fn from_sorted(entries: Vec<(u32, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, col: u32) -> Self {
        SparseVec {
            entries: vec![(col, field.one())],
        }
    }

    pub fn entries(&self) -> &[(u32, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u32, E)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<u32> {
        self.entries.first().map(|&(c, _)| c)
    }

    pub fn get(&self, col: u32) -> Option<&E> {
        self.entries
            .binary_search_by_key(&col, |&(c, _)| c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn max_col(&self) -> Option<u32> {
        self.entries.last().map(|&(c, _)| c)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, a: &E) -> Self {
        if field.is_zero(a) {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(c, v)| (*c, field.mul(v, a)))
                .collect(),
        }
    }

    /// `self - a * other`.
    pub fn sub_scaled<F: Field<Elem = E>>(&self, field: &F, a: &E, other: &Self) -> Self {
        let (x, y) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let take = match (x.get(i), y.get(j)) {
                (Some(l), Some(r)) => l.0.cmp(&r.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match take {
                std::cmp::Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((y[j].0, field.neg(&field.mul(a, &y[j].1))));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = field.sub(&x[i].1, &field.mul(a, &y[j].1));
                    if !field.is_zero(&v) {
                        out.push((x[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparseVec { entries: out }
    }

    /// Relabels columns through `map` (which must be injective).
    pub fn map_columns<F: Field<Elem = E>>(&self, field: &F, map: impl Fn(u32) -> u32) -> Self {
        SparseVec::from_pairs(
            field,
            self.entries
                .iter()
                .map(|(c, v)| (map(*c), v.clone()))
                .collect(),
        )
    }
}

/// Row-major sparse matrix over a field.
#[derive(Debug, Clone)]
pub struct SparseMatrix<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.max_col().is_some_and(|c| c as usize >= ncols) {
                return arg_err(format!("row {i} has a column index beyond {ncols}"));
            }
            if r.entries().iter().any(|(_, v)| field.is_zero(v)) {
                return arg_err(format!("row {i} stores an explicit zero"));
            }
        }
        Ok(SparseMatrix { field, ncols, rows })
    }

    /// Parses dense integer rows; convenient for small examples.
    pub fn from_dense(field: F, rows: &[&[i64]]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut out = Vec::new();
        for r in rows {
            if r.len() != ncols {
                return arg_err("ragged dense matrix");
            }
            let pairs = r
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(c, &v)| (c as u32, field.from_i64(v)))
                .collect();
            out.push(SparseVec::from_pairs(&field, pairs));
        }
        SparseMatrix::new(field, ncols, out)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Appends the rows of `other`; both must share the column count and field.
    pub fn stack(&self, other: &SparseMatrix<F>) -> Result<Self> {
        if self.field.tag() != other.field.tag() {
            return arg_err(format!(
                "cannot mix fields {} and {}",
                self.field.tag(),
                other.field.tag()
            ));
        }
        if self.ncols != other.ncols {
            return arg_err(format!(
                "column counts {} and {} differ",
                self.ncols, other.ncols
            ));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(SparseMatrix {
            field: self.field.clone(),
            ncols: self.ncols,
            rows,
        })
    }
}
