use std::fmt;

use crate::error::Result;
use crate::rep::{classify_pseudorep, common_eigenline_count, MatrixRep};
use crate::ring::quadratic_extension;

use super::{compute_e, dihedral_structures, EigenSolver, ResidualTwistGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi0Kind {
    AbsIrreducible,
    MultFreeOverE,
    Neither,
}

impl fmt::Display for Pi0Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pi0Kind::AbsIrreducible => "abs_irreducible",
            Pi0Kind::MultFreeOverE => "mult_free_over_E",
            Pi0Kind::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Pi0Report {
    pub kind: Pi0Kind,
    /// In the dihedral case: whether `g in Pi_0 <=> chi(g) in E^x` holds for
    /// every `g` in the inducing subgroup.
    pub criterion: Option<bool>,
}

/// Classifies `rho|_{Pi_0}`.
pub fn pi0_restriction_report(rho: &MatrixRep, twists: &ResidualTwistGroup) -> Result<Pi0Report> {
    let e = compute_e(&rho.pseudo())?;
    let restricted = rho.restrict(&twists.pi0)?;
    let kind = if common_eigenline_count(&restricted)? == 0 {
        Pi0Kind::AbsIrreducible
    } else {
        let emb = quadratic_extension(rho.ring())?;
        let solver = EigenSolver::new(rho.ring())?;
        let class = classify_pseudorep(&restricted.embed(&emb).pseudo())?;
        match class.constituents {
            Some((a, b)) if a != b && a.values().iter().chain(b.values()).all(|v| solver.in_subfield(*v, &e)) => {
                Pi0Kind::MultFreeOverE
            }
            _ => Pi0Kind::Neither,
        }
    };
    let criterion = if common_eigenline_count(rho)? == 0 {
        let structures = dihedral_structures(rho)?;
        match structures.first() {
            Some(s) => {
                let solver = EigenSolver::new(rho.ring())?;
                let mask = twists.pi0_mask();
                let h = &s.subgroup;
                Some((0..h.table().len() as u32).all(|x| {
                    mask[h.to_parent(x) as usize] == solver.in_subfield(s.chi.value(x), &e)
                }))
            }
            None => None,
        }
    } else {
        None
    };
    Ok(Pi0Report { kind, criterion })
}
