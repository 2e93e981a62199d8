use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Colour;
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};

/// Row-major indexing of a `rows × cols` grid of atoms: `a_{i,j}` has id
/// `i * cols + j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridShape {
    pub rows: u64,
    pub cols: u64,
}

impl GridShape {
    pub fn new(rows: u64, cols: u64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("grid needs at least one row and one column"));
        }
        Ok(GridShape { rows, cols })
    }

    pub fn atom_count(&self) -> u64 {
        self.rows * self.cols
    }

    pub fn atom(&self, row: u64, col: u64) -> Result<Atom> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::Domain(format!("({row}, {col}) is off the grid")));
        }
        Ok(Atom(row * self.cols + col))
    }

    pub fn coords(&self, a: Atom) -> Result<(u64, u64)> {
        if a.id() >= self.atom_count() {
            return Err(Error::Domain(format!("{a} is not a grid atom")));
        }
        Ok((a.id() / self.cols, a.id() % self.cols))
    }
}

/// Number of rows meeting `x` plus number of columns meeting `x`.
pub fn grid_weight(shape: GridShape, x: &FinSet) -> Result<usize> {
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    for a in x.iter() {
        let (i, j) = shape.coords(a)?;
        rows.insert(i);
        cols.insert(j);
    }
    Ok(rows.len() + cols.len())
}

/// 0 if the grid weight is 0 or 1 mod 4, else 1.
pub fn grid_colouring(shape: GridShape, x: &FinSet) -> Result<Colour> {
    Ok(Colour::from_bit(grid_weight(shape, x)? % 4 >= 2))
}
