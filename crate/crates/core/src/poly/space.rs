use std::fmt;

use crate::error::{Error, Result};

/// Which indexed variable family a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
    Z,
}

/// A variable family together with its bounds: `X(n)`, `Y(m)` or `Z(n, m)`.
///
/// Bounds are always at least one. Only `Z` uses the second bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSpace {
    family: Family,
    rows: u32,
    cols: u32,
}

impl VariableSpace {
    pub fn x(n: u32) -> Result<Self> {
        Self::new(Family::X, n, 1)
    }

    pub fn y(m: u32) -> Result<Self> {
        Self::new(Family::Y, m, 1)
    }

    pub fn z(n: u32, m: u32) -> Result<Self> {
        Self::new(Family::Z, n, m)
    }

    pub fn new(family: Family, rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "variable space bounds must be positive, got {rows}x{cols}"
            )));
        }
        let cols = if family == Family::Z { cols } else { 1 };
        Ok(VariableSpace { family, rows, cols })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of variables for `X`/`Y`, first bound `n` for `Z`.
    pub fn bound(&self) -> u32 {
        self.rows
    }

    /// Second bound `m` of a `Z` space; 1 otherwise.
    pub fn col_bound(&self) -> u32 {
        self.cols
    }

    pub fn contains(&self, var: Var) -> bool {
        match self.family {
            Family::Z => {
                let (i, j) = var.pair();
                i < self.rows && j < self.cols
            }
            _ => var.0 < u64::from(self.rows),
        }
    }

    pub(crate) fn check(&self, var: Var) -> Result<()> {
        if self.contains(var) {
            Ok(())
        } else {
            Err(Error::Bounds {
                space: *self,
                index: self.var_name(var),
            })
        }
    }

    /// Same family, bounds at least as large in every direction.
    pub fn is_subspace_of(&self, other: &VariableSpace) -> bool {
        self.family == other.family && self.rows <= other.rows && self.cols <= other.cols
    }

    pub fn var_name(&self, var: Var) -> String {
        match self.family {
            Family::X => format!("x{}", var.0),
            Family::Y => format!("y{}", var.0),
            Family::Z => {
                let (i, j) = var.pair();
                format!("z[{i},{j}]")
            }
        }
    }
}

impl fmt::Display for VariableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::X => write!(f, "X({})", self.rows),
            Family::Y => write!(f, "Y({})", self.rows),
            Family::Z => write!(f, "Z({},{})", self.rows, self.cols),
        }
    }
}

/// Index of a single variable.
///
/// `x`/`y` variables use the plain index. A `z[i,j]` variable packs the pair
/// as `i << 32 | j`, so the derived order on `Var` is row-major on pairs and
/// does not depend on the space's bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u64);

impl Var {
    pub fn plain(index: u32) -> Self {
        Var(u64::from(index))
    }

    pub fn z(i: u32, j: u32) -> Self {
        Var((u64::from(i) << 32) | u64::from(j))
    }

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn pair(self) -> (u32, u32) {
        ((self.0 >> 32) as u32, self.0 as u32)
    }
}
