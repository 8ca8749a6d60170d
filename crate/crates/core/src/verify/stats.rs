use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Context, VerifyError};
use crate::ideal::IdealSpec;
use crate::ring::Multidegree;

/// One line of a dimension table. Serializes with the CSV header
/// `n,degree,dim_R,dim_I,dim_quotient`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub n: usize,
    pub degree: String,
    #[serde(rename = "dim_R")]
    pub dim_r: u64,
    #[serde(rename = "dim_I")]
    pub dim_i: u64,
    pub dim_quotient: u64,
}

/// Exact `dim R_d`, `dim (I_n)_d` and their difference for every pair of
/// `ns` and `degrees`, ordered by `n` then by the order of `degrees`. Each
/// piece is computed at the smallest truncation containing `support(d)`.
pub fn dimension_stats(ctx: &Context, ns: &[usize], degrees: &[Multidegree]) -> Result<Vec<DimRow>, VerifyError> {
    let cells: Vec<(usize, &Multidegree)> = ns.iter().flat_map(|&n| degrees.iter().map(move |d| (n, d))).collect();
    cells
        .par_iter()
        .map(|&(n, d)| {
            let spec = IdealSpec::new(n, n.max(4).max(d.max_vertex()))?;
            let b = ctx.engine(spec).basis(d)?;
            Ok(DimRow {
                n,
                degree: d.to_string(),
                dim_r: b.dim() as u64,
                dim_i: b.rank() as u64,
                dim_quotient: b.quotient_dim() as u64,
            })
        })
        .collect()
}
