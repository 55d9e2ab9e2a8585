use crate::error::{arg_err, Result};

use super::field::Field;
use super::sparse::{SparseMatrix, SparseVec};

const NONE: u32 = u32::MAX;

/// Incremental reduced row echelon form.
///
/// Every stored row has its pivot entry equal to one and no entries in any other
/// row's pivot column, so reducing a vector is a single pass over its entries.
#[derive(Debug, Clone)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
    // rows that may hold an entry in each column; stale ids are tolerated
    col_rows: Vec<Vec<u32>>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        EchelonBuilder {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NONE; ncols],
            col_rows: vec![Vec::new(); ncols],
        }
    }

    pub fn from_subspace(s: &Subspace<F>) -> Self {
        let mut b = EchelonBuilder::new(s.field.clone(), s.ncols);
        for (i, row) in s.rows.iter().enumerate() {
            b.pivot_row[s.pivots[i] as usize] = i as u32;
            for &(c, _) in &row.entries()[1..] {
                b.col_rows[c as usize].push(i as u32);
            }
        }
        b.rows = s.rows.clone();
        b
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Normal form of `v` modulo the current span.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        reduce_against(&self.field, &self.rows, &self.pivot_row, v)
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        debug_assert!(v.max_col().is_none_or(|c| (c as usize) < self.ncols));
        let r = self.reduce(v);
        let Some(lead) = r.leading() else {
            return false;
        };
        let f = &self.field;
        let lead_val = r.entries()[0].1.clone();
        let r = if lead_val == f.one() {
            r
        } else {
            r.scale(f, &f.inv(&lead_val))
        };
        let id = self.rows.len() as u32;
        for other in std::mem::take(&mut self.col_rows[lead as usize]) {
            let row = &self.rows[other as usize];
            let Some(a) = row.get(lead).cloned() else {
                continue;
            };
            for &(c, _) in &r.entries()[1..] {
                if row.get(c).is_none() {
                    self.col_rows[c as usize].push(other);
                }
            }
            self.rows[other as usize] = row.sub_scaled(f, &a, &r);
        }
        for &(c, _) in &r.entries()[1..] {
            self.col_rows[c as usize].push(id);
        }
        self.pivot_row[lead as usize] = id;
        self.rows.push(r);
        true
    }

    pub fn finish(self) -> Subspace<F> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading());
        let mut pivot_row = vec![NONE; self.ncols];
        let pivots: Vec<u32> = rows.iter().map(|r| r.leading().unwrap()).collect();
        for (i, &p) in pivots.iter().enumerate() {
            pivot_row[p as usize] = i as u32;
        }
        Subspace {
            field: self.field,
            ncols: self.ncols,
            rows,
            pivots,
            pivot_row,
        }
    }
}

fn reduce_against<F: Field>(
    field: &F,
    rows: &[SparseVec<F::Elem>],
    pivot_row: &[u32],
    v: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    if v.entries()
        .iter()
        .all(|&(c, _)| pivot_row[c as usize] == NONE)
    {
        return v.clone();
    }
    let mut pairs = Vec::new();
    for (c, a) in v.entries() {
        match pivot_row[*c as usize] {
            NONE => pairs.push((*c, a.clone())),
            r => {
                for (c2, b) in &rows[r as usize].entries()[1..] {
                    pairs.push((*c2, field.neg(&field.mul(a, b))));
                }
            }
        }
    }
    SparseVec::from_pairs(field, pairs)
}

/// A subspace held in reduced row echelon form, which is canonical: two
/// subspaces are equal exactly when their forms coincide.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<u32>,
    pivot_row: Vec<u32>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ncols: usize) -> Self {
        EchelonBuilder::new(field, ncols).finish()
    }

    pub fn spanned_by<'a>(
        field: F,
        ncols: usize,
        vectors: impl IntoIterator<Item = &'a SparseVec<F::Elem>>,
    ) -> Self {
        let mut b = EchelonBuilder::new(field, ncols);
        for v in vectors {
            b.insert(v);
        }
        b.finish()
    }

    /// Rebuilds a subspace from rows already in reduced echelon form, checking
    /// that form instead of eliminating again.
    pub fn from_echelon_rows(
        field: F,
        ncols: usize,
        rows: Vec<SparseVec<F::Elem>>,
    ) -> Result<Self> {
        let mut pivot_row = vec![NONE; ncols];
        let mut pivots = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let Some(lead) = r.leading() else {
                return arg_err(format!("echelon row {i} is zero"));
            };
            if r.max_col().is_some_and(|c| c as usize >= ncols) {
                return arg_err(format!(
                    "echelon row {i} exceeds the ambient dimension {ncols}"
                ));
            }
            if pivots.last().is_some_and(|&p| p >= lead) || r.entries()[0].1 != field.one() {
                return arg_err(format!("row {i} breaks the reduced echelon form"));
            }
            pivot_row[lead as usize] = i as u32;
            pivots.push(lead);
        }
        if rows.iter().any(|r| {
            r.entries()[1..]
                .iter()
                .any(|(c, _)| pivot_row[*c as usize] != NONE)
        }) {
            return arg_err("a pivot column holds a second entry");
        }
        Ok(Subspace {
            field,
            ncols,
            rows,
            pivots,
            pivot_row,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NONE
    }

    /// Non-pivot columns in increasing order; they index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<u32> {
        (0..self.ncols as u32)
            .filter(|&c| !self.is_pivot(c))
            .collect()
    }

    fn check_vec(&self, v: &SparseVec<F::Elem>) -> Result<()> {
        if v.max_col().is_some_and(|c| c as usize >= self.ncols) {
            return arg_err(format!(
                "vector exceeds the ambient dimension {}",
                self.ncols
            ));
        }
        Ok(())
    }

    /// Normal form of `v`: the unique representative supported on free columns.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        self.check_vec(v)?;
        Ok(reduce_against(&self.field, &self.rows, &self.pivot_row, v))
    }

    /// Normal form of the unit vector at `col`.
    pub fn reduce_unit(&self, col: u32) -> SparseVec<F::Elem> {
        match self.pivot_row[col as usize] {
            NONE => SparseVec::unit(&self.field, col),
            r => SparseVec::from_sorted(
                self.rows[r as usize].entries()[1..]
                    .iter()
                    .map(|(c, v)| (*c, self.field.neg(v)))
                    .collect(),
            ),
        }
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other
            .rows
            .iter()
            .all(|r| reduce_against(&self.field, &self.rows, &self.pivot_row, r).is_zero()))
    }

    fn check_compatible(&self, other: &Subspace<F>) -> Result<()> {
        if self.field.tag() != other.field.tag() {
            return arg_err(format!(
                "subspaces over different fields {} and {}",
                self.field.tag(),
                other.field.tag()
            ));
        }
        if self.ncols != other.ncols {
            return arg_err(format!(
                "ambient dimensions {} and {} differ",
                self.ncols, other.ncols
            ));
        }
        Ok(())
    }

    /// Equality of subspaces via their canonical forms.
    pub fn equals(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.pivots == other.pivots && self.rows == other.rows)
    }

    /// A canonical basis of `self / sub` written as normal forms modulo `sub`.
    /// `sub` is expected to lie inside `self`.
    pub fn relative_basis(&self, sub: &Subspace<F>) -> Result<Vec<SparseVec<F::Elem>>> {
        self.check_compatible(sub)?;
        let mut b = EchelonBuilder::new(self.field.clone(), self.ncols);
        for r in &self.rows {
            b.insert(&sub.reduce(r)?);
        }
        Ok(b.finish().rows)
    }
}

/// Reduced row echelon form of the row space of `m`.
pub fn row_reduce<F: Field>(m: &SparseMatrix<F>) -> Subspace<F> {
    Subspace::spanned_by(m.field().clone(), m.ncols(), m.rows())
}

/// Basis of the right null space of `m`: one vector per free column, in
/// increasing order, with a one in that column.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F::Elem>> {
    kernel_from_rref(&row_reduce(m))
}

/// Kernel of the map whose row space is given in echelon form.
pub fn kernel_from_rref<F: Field>(rref: &Subspace<F>) -> Vec<SparseVec<F::Elem>> {
    let f = rref.field();
    let mut pending: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); rref.ncols()];
    for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
        for (c, v) in &row.entries()[1..] {
            pending[*c as usize].push((p, f.neg(v)));
        }
    }
    rref.free_columns()
        .into_iter()
        .map(|free| {
            let mut pairs = std::mem::take(&mut pending[free as usize]);
            pairs.push((free, f.one()));
            SparseVec::from_pairs(f, pairs)
        })
        .collect()
}

pub fn membership<F: Field>(v: &SparseVec<F::Elem>, s: &Subspace<F>) -> Result<bool> {
    s.contains(v)
}

pub fn subspace_equal<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<bool> {
    a.equals(b)
}
