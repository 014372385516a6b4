use crate::error::{Error, Result};
use crate::rep::{GroupTable, Mat2};
use crate::ring::{LocalRing, Ring, Span};

use super::{theta, LieSubmodule};

/// The off-diagonal parts of the radical of the matrix algebra: `SR^1`
/// consists of determinant-one matrices with diagonal entries in `1 + m`
/// and off-diagonal entries in `b` and `c`.
#[derive(Clone, Debug)]
pub struct Radical {
    pub b: Span,
    pub c: Span,
    m: Span,
}

/// The maximal ideal as a span.
pub fn max_ideal_span(ring: &Ring) -> Span {
    let mut s = Span::new(ring, 1);
    for g in ring.max_ideal_generators() {
        for x in crate::ring::monomial_basis(ring) {
            s.insert(&[ring.mul(g, x)]);
        }
    }
    s
}

impl Radical {
    /// The radical `M_2(m)` of the full matrix algebra.
    pub fn full(ring: &Ring) -> Radical {
        let m = max_ideal_span(ring);
        Radical { b: m.clone(), c: m.clone(), m }
    }

    pub fn with_offdiagonal(ring: &Ring, b: Span, c: Span) -> Radical {
        Radical { b, c, m: max_ideal_span(ring) }
    }

    pub fn contains_sr1(&self, r: &LocalRing, x: &Mat2) -> bool {
        x.det(r) == r.one()
            && self.m.contains(&[r.sub(x.a(), r.one())])
            && self.m.contains(&[r.sub(x.d(), r.one())])
            && self.b.contains(&[x.b()])
            && self.c.contains(&[x.c()])
    }
}

/// Membership in `SR^1` for the full matrix algebra.
pub fn in_sr1(r: &LocalRing, x: &Mat2) -> bool {
    x.det(r) == r.one() && [r.sub(x.a(), r.one()), x.b(), x.c(), r.sub(x.d(), r.one())].iter().all(|e| r.in_max_ideal(*e))
}

/// `G cap SR^1` as a group.
pub fn sr1_part(g: &GroupTable, rad: &Radical) -> Result<GroupTable> {
    let r = g.ring();
    let members: Vec<Mat2> = g.elements().iter().copied().filter(|x| rad.contains_sr1(r, x)).collect();
    Ok(GroupTable::from_set(r, &members)?)
}

/// `L_1, ..., L_depth` for `Gamma` inside `SR^1` of the full matrix algebra.
pub fn pink_filtration(gamma: &GroupTable, depth: usize) -> Result<Vec<LieSubmodule>> {
    pink_filtration_in(gamma, &Radical::full(gamma.ring()), depth)
}

pub fn pink_filtration_in(gamma: &GroupTable, rad: &Radical, depth: usize) -> Result<Vec<LieSubmodule>> {
    let r = gamma.ring().clone();
    if let Some(x) = gamma.elements().iter().find(|x| !rad.contains_sr1(&r, x)) {
        return Err(Error::Precondition(format!("{} is not in SR^1", x.format(&r))));
    }
    let mut out = Vec::with_capacity(depth);
    if depth == 0 {
        return Ok(out);
    }
    let mut l1 = LieSubmodule::zero(&r);
    for x in gamma.elements() {
        l1.insert(&theta(&r, x))?;
    }
    out.push(l1);
    for n in 1..depth {
        let next = out[0].bracket_with(&out[n - 1]);
        if !next.is_subset_of(&out[n - 1]) {
            return Err(Error::Inconsistent(format!("L_{} is not contained in L_{}", n + 1, n)));
        }
        out.push(next);
    }
    for (n, l) in out.iter().enumerate() {
        if !l.is_bracket_closed() {
            return Err(Error::Inconsistent(format!("L_{} is not closed under brackets", n + 1)));
        }
    }
    Ok(out)
}

/// `H(L) = Theta^{-1}(L) cap SR^1`.  For `X = (a b; c -a)` in `L` the only
/// candidate is `X + s I` with `s` the square root of `1 + a^2 + bc`
/// congruent to 1.
pub fn pink_group_h(l: &LieSubmodule) -> Result<GroupTable> {
    let r = l.ring().clone();
    let mut set = Vec::new();
    for x in l.elements() {
        if ![x.a(), x.b(), x.c()].iter().all(|e| r.in_max_ideal(*e)) {
            continue;
        }
        let disc = r.add(r.one(), r.add(r.mul(x.a(), x.a()), r.mul(x.b(), x.c())));
        let s = r.sqrt_unit(disc)?;
        let h = x.add(&r, &Mat2::scalar(&r, s));
        debug_assert!(in_sr1(&r, &h));
        set.push(h);
    }
    GroupTable::from_set(&r, &set).map_err(|e| Error::Precondition(format!("H(L) is not a group: {e}")))
}

/// The `n`-th lower central series term of a group, as a table.
pub fn lower_central_term(g: &GroupTable, n: usize) -> Result<GroupTable> {
    let series = g.lower_central_series(n);
    Ok(g.subgroup_table(&series[n - 1])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pink::{congruence_subgroup, Subring};
    use crate::ring::RingSpec;

    fn ideal(r: &Ring, g: i64) -> Span {
        Subring::whole(r).ideal(&[r.from_int(g)])
    }

    #[test]
    fn trivial_group() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let g = GroupTable::close(&z9, &[]).unwrap();
        for l in pink_filtration(&g, 3).unwrap() {
            assert!(l.is_zero());
        }
        assert_eq!(pink_group_h(&LieSubmodule::zero(&z9)).unwrap().len(), 1);
    }

    #[test]
    fn congruence_filtration_z27() {
        let z27 = LocalRing::new(RingSpec::new(3, 3, 1)).unwrap();
        let s = Subring::whole(&z27);
        let g = congruence_subgroup(&s, &ideal(&z27, 3)).unwrap();
        let ls = pink_filtration(&g, 3).unwrap();
        for (n, l) in ls.iter().enumerate() {
            let want = LieSubmodule::sl2(&ideal(&z27, 3i64.pow(n as u32 + 1)));
            assert!(l.same_as(&want), "level {}", n + 1);
        }
    }

    #[test]
    fn h_of_sl2_9() {
        let z27 = LocalRing::new(RingSpec::new(3, 3, 1)).unwrap();
        let a = ideal(&z27, 9);
        let h = pink_group_h(&LieSubmodule::sl2(&a)).unwrap();
        let want = congruence_subgroup(&Subring::whole(&z27), &a).unwrap();
        assert_eq!(h.len(), want.len());
        assert!(h.elements().iter().all(|x| want.contains(x)));
    }

    #[test]
    fn rejects_outside_sr1() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let g = GroupTable::close(&z9, &[Mat2::from_ints(&z9, [1, 1, 0, 1])]).unwrap();
        assert!(matches!(pink_filtration(&g, 2), Err(Error::Precondition(_))));
    }
}
