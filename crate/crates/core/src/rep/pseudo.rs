use std::sync::Arc;

use serde::Serialize;

use super::character::characters_of;
use super::{Abelianization, Character, GroupTable, RepError};
use crate::ring::{Ring, RingElem};

/// A pair `(t, d)` of functions on a finite group.
#[derive(Clone, Debug)]
pub struct PseudoRep {
    group: Arc<GroupTable>,
    ring: Ring,
    t: Vec<RingElem>,
    d: Vec<RingElem>,
}

/// Outcome of checking the pseudorepresentation axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    /// First violated axiom (1 to 4).
    pub axiom: Option<u8>,
    /// Group element indices witnessing the violation.
    pub witness: Option<(u32, u32)>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { ok: true, axiom: None, witness: None }
    }
    fn fail(axiom: u8, g: u32, h: u32) -> Self {
        Verdict { ok: false, axiom: Some(axiom), witness: Some((g, h)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoClass {
    pub reducible: bool,
    pub dihedral: bool,
    pub a_priori_small: bool,
    /// Characters with `t = chi1 + chi2`, when reducible (indices into the
    /// character list of the group).
    #[serde(skip)]
    pub constituents: Option<(Character, Character)>,
    /// Nontrivial characters with `(eta t, eta^2 d) = (t, d)`.
    #[serde(skip)]
    pub dihedral_witnesses: Vec<Character>,
}

impl PseudoRep {
    pub fn new(group: Arc<GroupTable>, ring: Ring, t: Vec<RingElem>, d: Vec<RingElem>) -> Result<Self, RepError> {
        if t.len() != group.len() || d.len() != group.len() {
            return Err(RepError::Precondition("t and d must be defined on every group element".into()));
        }
        Ok(PseudoRep { group, ring, t, d })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn t(&self, i: u32) -> RingElem {
        self.t[i as usize]
    }

    pub fn d(&self, i: u32) -> RingElem {
        self.d[i as usize]
    }

    pub fn traces(&self) -> &[RingElem] {
        &self.t
    }

    pub fn dets(&self) -> &[RingElem] {
        &self.d
    }

    pub fn det_character(&self) -> Character {
        Character::from_values(self.d.clone())
    }

    /// Checks the four axioms on every pair of elements.
    pub fn validate(&self) -> Verdict {
        let r = &self.ring;
        let g = &self.group;
        let n = g.len() as u32;
        for x in 0..n {
            if !r.is_unit(self.d(x)) {
                return Verdict::fail(1, x, 0);
            }
        }
        if self.t(0) != r.from_int(2) {
            return Verdict::fail(3, 0, 0);
        }
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                if self.d(xy) != r.mul(self.d(x), self.d(y)) {
                    return Verdict::fail(1, x, y);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                let yx = g.mul(y, x);
                if self.t(xy) != self.t(yx) {
                    return Verdict::fail(2, x, y);
                }
                let xyi = g.mul(x, g.inv(y));
                let lhs = r.add(self.t(xy), r.mul(self.d(y), self.t(xyi)));
                if lhs != r.mul(self.t(x), self.t(y)) {
                    return Verdict::fail(4, x, y);
                }
            }
        }
        Verdict::pass()
    }

    /// `(chi t, chi^2 d)`.
    pub fn twist(&self, chi: &Character) -> PseudoRep {
        let r = &self.ring;
        let t = self.t.iter().zip(chi.values()).map(|(t, c)| r.mul(*t, *c)).collect();
        let d = self.d.iter().zip(chi.values()).map(|(d, c)| r.mul(*d, r.mul(*c, *c))).collect();
        PseudoRep { group: self.group.clone(), ring: self.ring.clone(), t, d }
    }

    pub fn same_as(&self, other: &PseudoRep) -> bool {
        self.t == other.t && self.d == other.d
    }

    /// Entrywise reduction modulo the maximal ideal.
    pub fn residual(&self) -> PseudoRep {
        let r = &self.ring;
        PseudoRep {
            group: self.group.clone(),
            ring: r.residue_field().clone(),
            t: self.t.iter().map(|x| r.residue(*x)).collect(),
            d: self.d.iter().map(|x| r.residue(*x)).collect(),
        }
    }

    /// Whether `t = s(t mod m)` everywhere.
    pub fn trace_is_teichmuller(&self) -> bool {
        let r = &self.ring;
        self.t.iter().all(|x| r.is_teichmuller(*x))
    }
}

/// Reducibility, dihedrality and a-priori smallness, decided by exhaustive
/// search over characters through the abelianization.
pub fn classify_pseudorep(pr: &PseudoRep) -> Result<PseudoClass, RepError> {
    let ab = Abelianization::new(&pr.group);
    let chars = characters_of(&pr.group, &ab, &pr.ring)?;
    classify_with(pr, &chars)
}

pub(crate) fn classify_with(pr: &PseudoRep, chars: &[Character]) -> Result<PseudoClass, RepError> {
    let r = &pr.ring;
    let n = pr.group.len();
    let mut constituents = None;
    'outer: for (i, a) in chars.iter().enumerate() {
        for b in &chars[i..] {
            if (0..n).all(|x| pr.t[x] == r.add(a.values()[x], b.values()[x])) {
                constituents = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    let reducible = constituents.is_some();
    let mut dihedral_witnesses = Vec::new();
    if !reducible {
        for eta in chars.iter().filter(|c| !c.is_trivial(r)) {
            let t_ok = (0..n).all(|x| r.mul(eta.values()[x], pr.t[x]) == pr.t[x]);
            let d_ok = (0..n).all(|x| {
                let e = eta.values()[x];
                r.mul(r.mul(e, e), pr.d[x]) == pr.d[x]
            });
            if t_ok && d_ok {
                dihedral_witnesses.push(eta.clone());
            }
        }
    }
    let dihedral = !dihedral_witnesses.is_empty();
    let a_priori_small = !reducible && !dihedral && !pr.trace_is_teichmuller();
    Ok(PseudoClass { reducible, dihedral, a_priori_small, constituents, dihedral_witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{Mat2, MatrixRep};
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn matrix_traces_pass_and_corruptions_fail() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let g = Arc::new(
            GroupTable::close(&z9, &[Mat2::from_ints(&z9, [1, 1, 0, 1]), Mat2::from_ints(&z9, [2, 0, 0, 1])]).unwrap(),
        );
        let rho = MatrixRep::identity(g.clone());
        let pr = rho.pseudo();
        assert!(pr.validate().ok);

        let mut t = pr.traces().to_vec();
        t[0] = z9.from_int(3);
        let bad = PseudoRep::new(g.clone(), z9.clone(), t, pr.dets().to_vec()).unwrap();
        assert_eq!(bad.validate().axiom, Some(3));

        let mut d = pr.dets().to_vec();
        d[1] = z9.mul(d[1], z9.from_int(4));
        let bad = PseudoRep::new(g, z9.clone(), pr.traces().to_vec(), d).unwrap();
        assert_eq!(bad.validate().axiom, Some(1));
    }

    #[test]
    fn twisting_is_an_action() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = Arc::new(GroupTable::close(&f7, &[Mat2::from_ints(&f7, [3, 1, 0, 2])]).unwrap());
        let pr = MatrixRep::identity(g.clone()).pseudo();
        let chars = crate::rep::characters(&g, &f7).unwrap();
        for a in &chars {
            let tw = pr.twist(a);
            assert!(tw.validate().ok);
            assert!(tw.twist(&a.inv(&f7)).same_as(&pr));
            for b in &chars {
                assert!(tw.twist(b).same_as(&pr.twist(&a.mul(&f7, b))));
            }
        }
    }

    #[test]
    fn reducible_sum_of_characters() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = Arc::new(GroupTable::close(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 2])]).unwrap());
        let pr = MatrixRep::identity(g).pseudo();
        let c = classify_pseudorep(&pr).unwrap();
        assert!(c.reducible);
        assert!(!c.dihedral);
        assert!(!c.a_priori_small);
    }
}
