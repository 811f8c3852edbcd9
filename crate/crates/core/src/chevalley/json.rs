//! JSON form of an algebra: basis labels and integer structure constants.

use serde::{Deserialize, Serialize};

use super::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::roots::CartanType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    pub coefficient: i64,
}

/// A nonzero bracket `[left, right]` with `left` before `right` in the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraData {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub dimension: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

impl ChevalleyAlgebra {
    pub fn to_data(&self) -> AlgebraData {
        let labels = self.basis_labels();
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let b = self.bracket_basis(i, j);
                if !b.is_empty() {
                    brackets.push(BracketEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        value: b
                            .iter()
                            .map(|&(k, c)| Term {
                                basis: labels[k].clone(),
                                coefficient: c,
                            })
                            .collect(),
                    });
                }
            }
        }
        AlgebraData {
            cartan_type: self.cartan_type(),
            rank: self.rank(),
            dimension: self.dim,
            cartan_matrix: self.roots.cartan_matrix().to_vec(),
            basis: labels,
            brackets,
        }
    }

    /// Rebuilds the algebra of the recorded type and checks that the
    /// recorded table is exactly the canonical one.
    pub fn from_data(data: &AlgebraData) -> Result<Self> {
        let alg = ChevalleyAlgebra::build(data.cartan_type)?;
        if alg.to_data() != *data {
            return Err(Error::Parse {
                what: "algebra",
                input: format!("structure table for {} differs from the canonical table", data.cartan_type),
            });
        }
        Ok(alg)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_data())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_data(&serde_json::from_str(s)?)
    }
}
