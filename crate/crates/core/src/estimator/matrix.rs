use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense sample of `rows` observations in `cols` dimensions, row-major.
///
/// Row `t` is observation `t`. All values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix<F> {
    data: Vec<F>,
    rows: usize,
    cols: usize,
}

impl<F: Scalar> SampleMatrix<F> {
    /// Builds a matrix from row-major data, rejecting non-finite values.
    pub fn from_row_major(data: Vec<F>, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "sample matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} values for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { data, rows, cols })
    }

    /// Builds a matrix whose columns are the given slices, all of equal length.
    pub fn from_columns(columns: &[&[F]]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(Error::InvalidInput(format!(
                "column {bad} has length {}, expected {rows}",
                columns[bad].len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for t in 0..rows {
            data.extend(columns.iter().map(|c| c[t]));
        }
        Self::from_row_major(data, rows, cols)
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::InvalidInput(format!(
                "row {bad} has {} values, expected {cols}",
                rows[bad].len()
            )));
        }
        Self::from_row_major(rows.concat(), rows.len(), cols)
    }

    /// Single-column matrix.
    pub fn from_column(values: &[F]) -> Result<Self> {
        Self::from_row_major(values.to_vec(), values.len(), 1)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, t: usize) -> &[F] {
        &self.data[t * self.cols..(t + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, t: usize, i: usize) -> F {
        self.data[t * self.cols + i]
    }

    pub fn column(&self, i: usize) -> Vec<F> {
        (0..self.rows).map(|t| self.get(t, i)).collect()
    }

    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    /// New matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, which: &[usize]) -> Result<Self> {
        if let Some(&bad) = which.iter().find(|&&i| i >= self.cols) {
            return Err(Error::Dimension(format!(
                "column {bad} out of range for {} columns",
                self.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * which.len());
        for t in 0..self.rows {
            let row = self.row(t);
            data.extend(which.iter().map(|&i| row[i]));
        }
        Self::from_row_major(data, self.rows, which.len())
    }

    /// Applies `f` to every entry of column `i`.
    pub fn map_column(&self, i: usize, f: impl Fn(F) -> F) -> Result<Self> {
        let mut data = self.data.clone();
        for t in 0..self.rows {
            let v = &mut data[t * self.cols + i];
            *v = f(*v);
        }
        Self::from_row_major(data, self.rows, self.cols)
    }

    /// Reorders observations: output row `j` is input row `order[j]`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.rows {
            return Err(Error::InvalidInput("permutation length mismatch".into()));
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &t in order {
            data.extend_from_slice(self.row(t));
        }
        Self::from_row_major(data, self.rows, self.cols)
    }

    pub(crate) fn data_mut(&mut self) -> &mut [F] {
        &mut self.data
    }
}
