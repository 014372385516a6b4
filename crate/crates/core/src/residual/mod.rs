//! Residual representations over finite fields: projective image, the
//! field `E`, regularity, residual self-twists, `Pi_0` and normal bases.

mod basis;
mod dihedral;
mod field;
mod pi0;
mod projective;
mod regularity;
mod twists;

pub use basis::{normalize_basis, NormalizedBasis};
pub use dihedral::{dihedral_structures, DihedralStructure};
pub use field::{compute_e, EigenSolver, Subfield};
pub use pi0::{pi0_restriction_report, Pi0Kind, Pi0Report};
pub use projective::{classify_image, projective_class, ProjectiveClass, ProjectiveTag};
pub use regularity::{regularity_status, GoodClause, RegularWitness, RegularityReport};
pub use twists::{residual_twists, ResidualTwistGroup};

use serde_json::{json, Value};

use crate::error::Result;
use crate::rep::MatrixRep;

/// The `analyze` report of a residual representation.
pub fn residual_report(rho: &MatrixRep) -> Result<Value> {
    let f = rho.ring();
    let class = projective_class(rho)?;
    let reg = regularity_status(rho)?;
    let tw = residual_twists(rho)?;
    let mut out = json!({
        "projective_class": class.name(),
        "projective_order": class.order,
        "E": reg.e.to_json(f),
        "regular": reg.regular,
        "strongly_regular": reg.strongly_regular,
        "twists": tw.twists.pairs().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        "pi0_index": tw.pi0_index(),
    });
    if let Some(alias) = &class.alias {
        out["alias"] = json!(alias);
    }
    if let Some(w) = &reg.witness {
        let k = EigenSolver::new(f)?;
        let k = k.extension();
        out["regular_witness"] = json!({
            "element": w.element,
            "lambda": k.coeffs(w.lambda),
            "mu": k.coeffs(w.mu),
        });
    }
    if let Some(good) = reg.good {
        out["good"] = json!(good.is_some());
        if let Some(c) = good {
            out["good_clause"] = json!(c.number());
        }
    }
    Ok(out)
}
