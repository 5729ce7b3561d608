//! Simpson 3×3 rule on a cell and its inversion for the centre node.

use std::ops::{Add, Mul};

use crate::error::Result;

use super::grid::{Field, GridState};
use super::vars::{ConsState, PrimState, POSITIVITY_FLOOR};

/// Simpson weights of the 3×3 node patch, row-major from the lower-left node,
/// scaled by 36.
pub const SIMPSON_WEIGHTS_36: [f64; 9] = [1.0, 4.0, 1.0, 4.0, 16.0, 4.0, 1.0, 4.0, 1.0];

/// Centre value for which the Simpson rule over the patch reproduces `avg`.
/// `boundary8` is ordered SW, S, SE, W, E, NW, N, NE.
pub fn center_from_average(avg: ConsState, boundary8: &[ConsState; 8]) -> ConsState {
    let [sw, s, se, w, e, nw, n, ne] = *boundary8;
    let corners = sw + se + nw + ne;
    let edges = s + w + e + n;
    (36.0 * avg - corners - 4.0 * edges) * (1.0 / 16.0)
}

/// Simpson 3×3 weighted mean of nodes ordered row-major from the lower-left.
pub fn average_from_nodes<T>(nodes9: &[T; 9]) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let mut acc = nodes9[0] * SIMPSON_WEIGHTS_36[0];
    for k in 1..9 {
        acc = acc + nodes9[k] * SIMPSON_WEIGHTS_36[k];
    }
    acc * (1.0 / 36.0)
}

/// The 9 conservative nodes of cell `(i, j)`, row-major, centre from Simpson inversion.
pub fn cell_nodes(s: &GridState, i: isize, j: isize) -> [ConsState; 9] {
    let b = s.cell_boundary(i, j);
    let c = center_from_average(*s.avg.get(i, j), &b);
    [b[0], b[1], b[2], b[3], c, b[4], b[5], b[6], b[7]]
}

/// How to handle a cell whose Simpson centre node is inadmissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterPolicy {
    /// Propagate the admissibility error.
    Strict,
    /// Use the primitive conversion of the conservative average instead.
    FallbackToAverage,
}

/// Primitive cell averages over the full ghost-extended cell array: Simpson
/// rule applied to the primitive values of the 9 cell nodes.
pub fn primitive_averages(s: &GridState, policy: CenterPolicy) -> Result<Field<PrimState>> {
    let mut out = s.grid.cell_field(PrimState::ZERO);
    for j in out.j_range() {
        for i in out.i_range() {
            out.set(i, j, primitive_average(s, i, j, policy)?);
        }
    }
    Ok(out)
}

pub fn primitive_average(s: &GridState, i: isize, j: isize, policy: CenterPolicy) -> Result<PrimState> {
    let nodes = cell_nodes(s, i, j);
    let mut prim = [PrimState::ZERO; 9];
    for (k, q) in nodes.iter().enumerate() {
        let w = q.to_prim();
        let w = match (w, k, policy) {
            (Ok(w), 4, CenterPolicy::FallbackToAverage) if !w.is_admissible(POSITIVITY_FLOOR) => {
                return s.avg.get(i, j).to_prim();
            }
            (Err(_), 4, CenterPolicy::FallbackToAverage) => return s.avg.get(i, j).to_prim(),
            (Ok(w), _, _) => w,
            (Err(e), _, _) => return Err(e),
        };
        w.check_admissible(POSITIVITY_FLOOR, || format!("cell ({i}, {j}) node {k}"))?;
        prim[k] = w;
    }
    Ok(average_from_nodes(&prim))
}
