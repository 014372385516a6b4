use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rep::{GroupTable, Mat2, GROUP_CAP};
use crate::ring::Span;

use super::subring::span_to_json;
use super::Subring;

/// Elements `(1+a, b; c, 1+d)` of `SL_2(S)` with `a, b, c, d` in the ideal.
pub fn congruence_elements(s: &Subring, ideal: &Span) -> Result<Vec<Mat2>> {
    congruence_elements_capped(s, ideal, GROUP_CAP as u64)
}

pub fn congruence_elements_capped(s: &Subring, ideal: &Span, cap: u64) -> Result<Vec<Mat2>> {
    let r = s.ring().clone();
    if !s.is_ideal(ideal) {
        return Err(Error::Precondition("not an ideal of the subring".into()));
    }
    let size = ideal.cardinality();
    if size.saturating_pow(3) > cap as u128 {
        return Err(Error::CapExceeded { what: "congruence subgroup candidates", cap });
    }
    let els: Vec<_> = ideal.elements().into_iter().map(|v| v[0]).collect();
    let one = r.one();
    let mut out = Vec::new();
    for &alpha in &els {
        let a = r.add(one, alpha);
        for &beta in &els {
            for &gamma in &els {
                let bc = r.add(one, r.mul(beta, gamma));
                match r.inv(a) {
                    Some(ai) => {
                        let d = r.mul(bc, ai);
                        if ideal.contains(&[r.sub(d, one)]) {
                            out.push(Mat2::new(a, beta, gamma, d));
                        }
                    }
                    None => {
                        for &delta in &els {
                            let d = r.add(one, delta);
                            if r.mul(a, d) == bc {
                                out.push(Mat2::new(a, beta, gamma, d));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `Gamma_S(a)`, the kernel of `SL_2(S) -> SL_2(S/a)`.
pub fn congruence_subgroup(s: &Subring, ideal: &Span) -> Result<GroupTable> {
    let els = congruence_elements(s, ideal)?;
    Ok(GroupTable::from_set(s.ring(), &els)?)
}

/// The outcome of a level search.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub subring: Subring,
    pub ideal: Span,
    /// `x` with `x^{-1} Gamma_S(a) x` inside `G`.
    pub conjugator_used: Mat2,
    /// The covers of the returned ideal, each of which failed.
    pub covers_checked: Vec<Span>,
}

impl LevelReport {
    pub fn to_json(&self) -> Value {
        let r = self.subring.ring();
        json!({
            "subring": self.subring.to_json(),
            "level_ideal_generators": span_to_json(&self.ideal),
            "level_cardinality": self.ideal.cardinality() as u64,
            "conjugator_used": self.conjugator_used.to_coeffs(r),
            "covers_checked": self.covers_checked.iter().map(span_to_json).collect::<Vec<_>>(),
        })
    }
}

/// The default conjugators `diag(1, a)` for units `a`.
pub fn diagonal_conjugators(s: &Subring) -> Vec<Mat2> {
    let r = s.ring();
    r.units().into_iter().map(|a| Mat2::diag(r, r.one(), a)).collect()
}

/// The largest ideal `a` of `S` such that `x^{-1} Gamma_S(a) x` lies in `G`
/// for the identity or one of `conjugators`.
pub fn level_detector(g: &GroupTable, s: &Subring, conjugators: Option<&[Mat2]>) -> Result<LevelReport> {
    let r = s.ring().clone();
    let default;
    let conj: &[Mat2] = match conjugators {
        Some(c) => c,
        None => {
            default = diagonal_conjugators(s);
            &default
        }
    };
    let mut xs: Vec<(Mat2, Mat2)> = vec![(Mat2::identity(&r), Mat2::identity(&r))];
    for x in conj {
        let xi = x.inv(&r).ok_or_else(|| Error::Precondition(format!("conjugator {} is not invertible", x.format(&r))))?;
        if !xs.iter().any(|(y, _)| y == x) {
            xs.push((*x, xi));
        }
    }
    let ideals = s.ideals()?;
    let mut failed: Vec<usize> = Vec::new();
    for (k, a) in ideals.iter().enumerate() {
        let els = congruence_elements(s, a)?;
        let hit = xs.iter().find(|(x, xi)| els.iter().all(|e| g.contains(&xi.mul(&r, e).mul(&r, x))));
        if let Some((x, _)) = hit {
            let covers = failed
                .iter()
                .map(|i| &ideals[*i])
                .filter(|b| a.is_subspan_of(b) && !b.same_as(a))
                .filter(|b| {
                    !ideals.iter().any(|c| {
                        a.is_subspan_of(c) && c.is_subspan_of(b) && !c.same_as(a) && !c.same_as(b)
                    })
                })
                .cloned()
                .collect();
            return Ok(LevelReport { subring: s.clone(), ideal: a.clone(), conjugator_used: *x, covers_checked: covers });
        }
        failed.push(k);
    }
    Err(Error::Inconsistent("the zero ideal always has a trivial congruence subgroup".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, Ring, RingSpec};

    fn z(p: u32, n: u32) -> Ring {
        LocalRing::new(RingSpec::new(p, n, 1)).unwrap()
    }

    #[test]
    fn orders() {
        let z9 = z(3, 2);
        let s = Subring::whole(&z9);
        assert_eq!(congruence_subgroup(&s, &s.ideal(&[z9.zero()])).unwrap().len(), 1);
        assert_eq!(congruence_subgroup(&s, &s.ideal(&[z9.from_int(3)])).unwrap().len(), 27);
        assert_eq!(congruence_subgroup(&s, &s.ideal(&[z9.one()])).unwrap().len(), 648);
    }

    #[test]
    fn commutators_square_the_level() {
        let z27 = z(3, 3);
        let s = Subring::whole(&z27);
        let g = congruence_subgroup(&s, &s.ideal(&[z27.from_int(3)])).unwrap();
        let d = g.derived_subgroup();
        let want = congruence_subgroup(&s, &s.ideal(&[z27.from_int(9)])).unwrap();
        assert_eq!(d.len(), want.len());
        assert!(d.iter().all(|i| want.contains(g.element(*i))));
    }

    #[test]
    fn levels() {
        let z9 = z(3, 2);
        let s = Subring::whole(&z9);
        let sl2 = GroupTable::close(&z9, &[Mat2::from_ints(&z9, [1, 1, 0, 1]), Mat2::from_ints(&z9, [1, 0, 1, 1])]).unwrap();
        assert_eq!(level_detector(&sl2, &s, None).unwrap().ideal.cardinality(), 9);
        let g3 = congruence_subgroup(&s, &s.ideal(&[z9.from_int(3)])).unwrap();
        let rep = level_detector(&g3, &s, None).unwrap();
        assert_eq!(rep.ideal.cardinality(), 3);
        assert_eq!(rep.covers_checked.len(), 1);
        let borel = GroupTable::close(&z9, &[Mat2::from_ints(&z9, [1, 1, 0, 1]), Mat2::from_ints(&z9, [2, 0, 0, 5])]).unwrap();
        assert!(level_detector(&borel, &s, None).unwrap().ideal.is_zero());
    }
}
