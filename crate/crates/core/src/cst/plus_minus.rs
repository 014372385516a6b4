use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pink::{decompose_lie, extend_scalars, pink_filtration, span_product, span_to_json, sr1_part, Base, Radical};
use crate::rep::{Mat2, MatrixRep, PseudoRep};
use crate::residual::projective_class;
use crate::ring::{involution_split, Span};

use super::TwistPair;

/// Comparison of `A^+` and `A^-` with the spans predicted from `I_1` and
/// `B_1`.
#[derive(Clone, Debug)]
pub struct PlusMinusVerdict {
    pub plus: Span,
    pub minus: Span,
    /// `W(F)(1 + I_1 + I_1^2)`.
    pub plus_expected: Span,
    /// `W(F) B_1`.
    pub minus_expected: Span,
    pub g0: u32,
}

impl PlusMinusVerdict {
    pub fn plus_matches(&self) -> bool {
        self.plus.same_as(&self.plus_expected)
    }

    pub fn minus_matches(&self) -> bool {
        self.minus.same_as(&self.minus_expected)
    }

    pub fn passed(&self) -> bool {
        self.plus_matches() && self.minus_matches()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "plus": span_to_json(&self.plus),
            "minus": span_to_json(&self.minus),
            "plus_matches": self.plus_matches(),
            "minus_matches": self.minus_matches(),
            "g0": self.g0,
        })
    }
}

/// Checks the well-adapted conditions for a nonabelian projectively
/// dihedral residual image and returns the adapted element.
pub fn dihedral_adapted_element(rho: &MatrixRep) -> Result<u32> {
    let r = rho.ring().clone();
    let rbar = rho.residual();
    let f = rbar.ring().clone();
    let class = projective_class(&rbar)?;
    if !class.is_nonabelian_dihedral() {
        return Err(Error::Precondition(format!("projective image {} is not nonabelian dihedral", class.name())));
    }
    let max = class.max_element_order();
    let g = rho.group();
    let g0 = (0..g.len() as u32)
        .find(|x| {
            let m = rho.value(*x);
            if !m.is_diagonal(&r) || !r.is_teichmuller(m.a()) || !r.is_teichmuller(m.d()) {
                return false;
            }
            let ratio = f.div(r.residue(m.a()), r.residue(m.d()));
            f.order(ratio) == Some(max)
        })
        .ok_or_else(|| Error::Precondition("no diagonal Teichmuller element of maximal projective order".into()))?;
    let anti = rbar.values().iter().any(|m| {
        m.a() == f.zero() && m.d() == f.zero() && m.b() != f.zero() && m.c() != f.zero() && {
            let q = f.div(m.b(), m.c());
            f.field_degree_of(q) == 1
        }
    });
    if !anti {
        return Err(Error::Precondition("residual image has no antidiagonal (0 b; c 0) with b/c in F_p".into()));
    }
    let image = rho.image()?;
    for m in rbar.values() {
        let lift = Mat2::new(r.teichmuller(m.a()), r.teichmuller(m.b()), r.teichmuller(m.c()), r.teichmuller(m.d()));
        if !image.contains(&lift) {
            return Err(Error::Precondition(format!("Teichmuller lift {} is not in the image", lift.format(&r))));
        }
    }
    Ok(g0)
}

/// Splits `A` under the involution `tau.sigma` and compares the parts with
/// `W(F)(Z_p + I_1 + I_1^2)` and `W(F) B_1`.
pub fn plus_minus_verify(pr: &PseudoRep, rho: &MatrixRep, tau: &TwistPair) -> Result<PlusMinusVerdict> {
    let r = rho.ring().clone();
    if tau.sigma.is_identity() {
        return Err(Error::Precondition("tau has trivial automorphism".into()));
    }
    if tau.sigma.frobenius_exponent() != 0 {
        return Err(Error::Precondition("tau is not in the kernel of the reduction".into()));
    }
    if !tau.satisfies(pr) {
        return Err(Error::Precondition("tau is not a conjugate self-twist".into()));
    }
    if !rho.pseudo().same_as(pr) {
        return Err(Error::Precondition("rho is not a (t, d)-representation".into()));
    }
    let g0 = dihedral_adapted_element(rho)?;
    let split = involution_split(&r, &tau.sigma).map_err(|e| Error::Precondition(e.to_string()))?;
    let image = rho.image()?;
    let gamma = sr1_part(&image, &Radical::full(&r))?;
    let l1 = pink_filtration(&gamma, 1)?.remove(0);
    let dec = decompose_lie(&l1);
    let (Some(i1), Some(b1)) = (dec.i, dec.b) else {
        return Err(Error::Precondition("L_1 is not decomposable".into()));
    };
    let mut base = Span::new(&r, 1);
    base.insert(&[r.one()]);
    let sum = base.sum(&i1).sum(&span_product(&i1, &i1));
    let plus_expected = extend_scalars(&sum, Base::WittFull)?;
    let minus_expected = extend_scalars(&b1, Base::WittFull)?;
    Ok(PlusMinusVerdict { plus: split.plus, minus: split.minus, plus_expected, minus_expected, g0 })
}
