//! JSON file formats for groups, braces and solutions.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::brace::{validate_brace_with, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{load_group, LoadReport};
use crate::ybe::{validate_solution, Solution};

/// `{"order": n, "table": [[...]]}`, optionally named.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    /// Validates the table, moving the identity to index 0 if needed.
    pub fn into_group(self, bounds: &Bounds) -> Result<LoadReport> {
        check_order(self.order, self.table.len())?;
        load_group(&self.table, bounds)
    }
}

/// `{"order": n, "add": [[...]], "mul": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraceFile {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl BraceFile {
    pub fn from_brace(brace: &SkewBrace) -> Self {
        Self {
            order: brace.order(),
            add: brace.add_rows(),
            mul: brace.mul_rows(),
        }
    }

    pub fn into_brace(self, bounds: &Bounds) -> Result<SkewBrace> {
        check_order(self.order, self.add.len())?;
        check_order(self.order, self.mul.len())?;
        validate_brace_with(&self.add, &self.mul, bounds)
    }
}

/// `{"size": m, "lambda": [[...]], "rho": [[...]]}` with
/// `r(x, y) = (lambda[x][y], rho[y][x])`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub size: usize,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

impl SolutionFile {
    pub fn from_solution(solution: &Solution) -> Self {
        Self {
            size: solution.size(),
            lambda: solution.lambda_rows(),
            rho: solution.rho_rows(),
        }
    }

    pub fn into_solution(self) -> Result<Solution> {
        check_order(self.size, self.lambda.len())?;
        check_order(self.size, self.rho.len())?;
        validate_solution(&self.lambda, &self.rho)
    }
}

fn check_order(declared: usize, actual: usize) -> Result<()> {
    if declared != actual {
        return Err(Error::OrderMismatch { declared, actual });
    }
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
