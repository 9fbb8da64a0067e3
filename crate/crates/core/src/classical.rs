//! Classical logic on characteristic functions over a discretized phase space.
//!
//! Phase space is a uniform grid of `cell_count` cells, so `∫ dΓ` becomes a
//! cell count and a proposition is a bit per cell.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::projector::Projector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseSpaceGrid {
    cell_count: usize,
}

impl PhaseSpaceGrid {
    pub fn new(cell_count: usize) -> Result<Self> {
        if cell_count == 0 {
            return Err(Error::InvalidArgument("phase-space grid needs at least one cell".into()));
        }
        Ok(Self { cell_count })
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }
}

/// Indicator of a subset of the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicFunction {
    grid: PhaseSpaceGrid,
    bits: Vec<bool>,
}

impl CharacteristicFunction {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        let grid = PhaseSpaceGrid::new(bits.len())?;
        Ok(Self { grid, bits })
    }

    pub fn ones(grid: PhaseSpaceGrid) -> Self {
        Self { grid, bits: vec![true; grid.cell_count] }
    }

    pub fn zeros(grid: PhaseSpaceGrid) -> Self {
        Self { grid, bits: vec![false; grid.cell_count] }
    }

    /// Maps a diagonal projector `diag(b_1..b_d)` to the bits `(b_1..b_d)`.
    /// Off-diagonal mass or non-0/1 diagonals are rejected.
    pub fn from_diagonal_projector(p: &Projector) -> Result<Self> {
        let m = p.matrix();
        let d = p.dim();
        let mut bits = Vec::with_capacity(d);
        for i in 0..d {
            for j in 0..d {
                if i != j && m[(i, j)].norm() > 1e-9 {
                    return Err(Error::InvalidArgument("projector is not diagonal".into()));
                }
            }
            let v = m[(i, i)].re;
            bits.push(if (v - 1.0).abs() < 1e-9 {
                true
            } else if v.abs() < 1e-9 {
                false
            } else {
                return Err(Error::InvalidArgument(format!("diagonal entry {v} is not 0 or 1")));
            });
        }
        Self::new(bits)
    }

    /// The inverse of [`Self::from_diagonal_projector`].
    pub fn to_diagonal_projector(&self) -> Projector {
        let diag: Vec<f64> = self.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        Projector::from_matrix_unchecked(crate::matrix::ComplexMatrix::from_real_diag(&diag))
    }

    pub fn grid(&self) -> PhaseSpaceGrid {
        self.grid
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(self.grid.cell_count, other.grid.cell_count));
        }
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, bits })
    }
}

impl FromStr for CharacteristicFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

impl fmt::Display for CharacteristicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for CharacteristicFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Intersection: pointwise AND.
pub fn cl_conj(a: &CharacteristicFunction, b: &CharacteristicFunction) -> Result<CharacteristicFunction> {
    a.zip_with(b, |x, y| x && y)
}

/// Complement: pointwise `1 − χ`.
pub fn cl_neg(a: &CharacteristicFunction) -> CharacteristicFunction {
    CharacteristicFunction { grid: a.grid, bits: a.bits.iter().map(|&b| !b).collect() }
}

/// Union `χ_a + χ_b − χ_a χ_b`: pointwise OR.
pub fn cl_disj(a: &CharacteristicFunction, b: &CharacteristicFunction) -> Result<CharacteristicFunction> {
    a.zip_with(b, |x, y| x || y)
}

/// Subset test `a ∧ b == a`.
pub fn cl_implies(a: &CharacteristicFunction, b: &CharacteristicFunction) -> Result<bool> {
    Ok(cl_conj(a, b)? == *a)
}

/// Volume fraction `φ = popcount / cell_count`.
pub fn fraction(a: &CharacteristicFunction) -> f64 {
    a.popcount() as f64 / a.grid.cell_count as f64
}
