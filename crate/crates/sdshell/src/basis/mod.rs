//! Loop-subdivision shape functions: quartic box splines on regular patches,
//! composed local subdivision with picking for patches containing one
//! irregular vertex. Tables are produced in the canonical one-ring ordering
//! defined by the mesh module.

mod boxspline;
mod patch;

#[cfg(test)]
pub(crate) mod oracle;

pub use patch::eval_patch;

use crate::error::Error;
use crate::mesh::OneRing;
use crate::Result;

/// Values and parametric derivatives of the patch shape functions at one
/// evaluation point.
#[derive(Debug, Clone)]
pub struct ShapeTable {
    /// Row per control node: `[N, N_v, N_w, N_vv, N_ww, N_vw]` where (v, w)
    /// are the master-element coordinates.
    pub rows: Vec<[f64; 6]>,
}

impl ShapeTable {
    pub fn n_nodes(&self) -> usize {
        self.rows.len()
    }

    /// Component-wise column sums, used by the partition-of-unity and
    /// zero-sum derivative identities.
    pub fn column_sums(&self) -> [f64; 6] {
        let mut s = [0.0; 6];
        for row in &self.rows {
            for k in 0..6 {
                s[k] += row[k];
            }
        }
        s
    }
}

/// The single-point quadrature rule used everywhere: the element barycenter
/// with the master-triangle area as weight, so that the element reference
/// area is `J * weight`.
pub fn quadrature_rule() -> ((f64, f64), f64) {
    ((1.0 / 3.0, 1.0 / 3.0), 0.5)
}

/// Quartic box-spline table for a regular patch (12 control nodes in
/// canonical order).
pub fn box_spline_regular(v: f64, w: f64) -> Result<ShapeTable> {
    check_point(v, w)?;
    Ok(boxspline::eval(v, w))
}

/// Shape table for a one-ring that may contain a single irregular vertex,
/// exact for the subdivision limit surface at the given point.
pub fn eval_ring(ring: &OneRing, v: f64, w: f64) -> Result<ShapeTable> {
    check_point(v, w)?;
    let table = eval_patch(ring.valence, v, w)?;
    debug_assert_eq!(table.n_nodes(), ring.nodes.len());
    Ok(table)
}

fn check_point(v: f64, w: f64) -> Result<()> {
    // Points on the closure of the master triangle are allowed; the table is
    // the one-sided limit from the element interior.
    if !((-1e-12..=1.0 + 1e-12).contains(&v)
        && (-1e-12..=1.0 + 1e-12).contains(&w)
        && v + w <= 1.0 + 1e-12)
    {
        return Err(Error::DegenerateElement {
            element: usize::MAX,
            msg: format!("evaluation point ({v}, {w}) outside the master triangle"),
        });
    }
    Ok(())
}
