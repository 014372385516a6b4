//! Bundled example representations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pink::Adaptation;
use crate::rep::{Character, GroupTable, Mat2, MatrixRep};
use crate::ring::{LocalRing, Ring, RingAut, RingSpec};

/// A named representation.
#[derive(Clone, Debug)]
pub struct Example {
    pub id: &'static str,
    pub rep: MatrixRep,
}

pub fn ring(p: u32, n: u32, f: u32) -> Ring {
    LocalRing::new(RingSpec::new(p, n, f)).expect("bundled ring")
}

pub fn ring_ext(p: u32, n: u32, f: u32, var: &str, minpoly: &[i64]) -> Ring {
    LocalRing::new(RingSpec::new(p, n, f).with_ext(var, minpoly)).expect("bundled ring")
}

/// The tautological representation of the group generated by `gens`.
pub fn generated(r: &Ring, gens: &[Mat2]) -> Result<MatrixRep> {
    Ok(MatrixRep::identity(Arc::new(GroupTable::close(r, gens)?)))
}

/// `(1 1; 0 1)` and `(1 0; 1 1)`.
pub fn sl2_generators(r: &LocalRing) -> [Mat2; 2] {
    [Mat2::from_ints(r, [1, 1, 0, 1]), Mat2::from_ints(r, [1, 0, 1, 1])]
}

pub fn antidiagonal(r: &LocalRing) -> Mat2 {
    Mat2::from_ints(r, [0, 1, 1, 0])
}

/// First subgroup of `SL_2(F)` of the requested order generated by `a` and
/// an element of `SL_2(F)`, scanning in element order.
fn two_generated_of_order(r: &Ring, a: Mat2, order: usize) -> Result<MatrixRep> {
    let sl2 = GroupTable::close(r, &sl2_generators(r))?;
    let mut elements = sl2.elements().to_vec();
    elements.sort();
    for b in elements {
        match GroupTable::close_capped(r, &[a, b], order) {
            Ok(g) if g.len() == order => return Ok(MatrixRep::identity(Arc::new(g))),
            Ok(_) => {}
            Err(e) if Error::from(e.clone()).is_cap() => {}
            Err(e) => return Err(e.into()),
        }
    }
    Err(Error::Inconsistent(format!("no subgroup of order {order} found")))
}

fn first_of_order(r: &Ring, order: u64) -> Result<Mat2> {
    let sl2 = GroupTable::close(r, &sl2_generators(r))?;
    let mut elements = sl2.elements().to_vec();
    elements.sort();
    elements
        .into_iter()
        .find(|m| {
            let mut k = 1;
            let mut x = *m;
            while x != Mat2::identity(r) {
                x = x.mul(r, m);
                k += 1;
            }
            k == order
        })
        .ok_or_else(|| Error::Inconsistent(format!("no element of order {order}")))
}

/// `SL_2(F_3)` inside `SL_2(F_7)`.
pub fn binary_tetrahedral_f7() -> Result<MatrixRep> {
    let f7 = ring(7, 1, 1);
    two_generated_of_order(&f7, Mat2::from_ints(&f7, [0, -1, 1, 0]), 24)
}

/// The binary octahedral group inside `SL_2(F_7)`.
pub fn binary_octahedral_f7() -> Result<MatrixRep> {
    let f7 = ring(7, 1, 1);
    let a = first_of_order(&f7, 8)?;
    two_generated_of_order(&f7, a, 48)
}

/// Twelve residual representations covering reducible, dihedral,
/// exceptional and large projective images.
pub fn residual_examples() -> Result<Vec<Example>> {
    let f3 = ring(3, 1, 1);
    let f5 = ring(5, 1, 1);
    let f7 = ring(7, 1, 1);
    let f9 = ring(3, 1, 2);
    let x9 = f9.x();
    let w7 = antidiagonal(&f7);
    let [u3, l3] = sl2_generators(&f3);
    let [u5, l5] = sl2_generators(&f5);
    let [u7, l7] = sl2_generators(&f7);
    let mut out = vec![
        Example { id: "red_split_f7", rep: generated(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1])])? },
        Example { id: "red_borel_f5", rep: generated(&f5, &[Mat2::from_ints(&f5, [2, 0, 0, 1]), u5])? },
        Example { id: "red_f9", rep: generated(&f9, &[Mat2::diag(&f9, x9, f9.one())])? },
        Example { id: "dihedral_f7", rep: generated(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1]), w7])? },
        Example { id: "klein_f7", rep: generated(&f7, &[Mat2::from_ints(&f7, [-1, 0, 0, 1]), w7])? },
        Example {
            id: "dihedral_f9",
            rep: generated(&f9, &[Mat2::diag(&f9, x9, f9.one()), antidiagonal(&f9)])?,
        },
        Example { id: "tetra_f3", rep: generated(&f3, &[u3, l3])? },
        Example { id: "tetra_f7", rep: binary_tetrahedral_f7()? },
        Example { id: "octa_f3", rep: generated(&f3, &[u3, l3, Mat2::from_ints(&f3, [-1, 0, 0, 1])])? },
        Example { id: "octa_f7", rep: binary_octahedral_f7()? },
        Example { id: "large_sl2_f7", rep: generated(&f7, &[u7, l7])? },
        Example { id: "large_gl2_f5", rep: generated(&f5, &[u5, l5, Mat2::from_ints(&f5, [2, 0, 0, 1])])? },
    ];
    out.sort_by_key(|e| e.id);
    Ok(out)
}

/// Generators of `Gamma(p)` in `SL_2(Z/p^n)`.
fn gamma_p_generators(r: &LocalRing) -> Vec<Mat2> {
    let p = r.p() as i64;
    let one_p = r.from_int(1 + p);
    vec![
        Mat2::from_ints(r, [1, p, 0, 1]),
        Mat2::from_ints(r, [1, 0, p, 1]),
        Mat2::diag(r, one_p, r.inv(one_p).expect("1 + p is a unit")),
    ]
}

/// `<Gamma(3), diag(2, 1)>` over `Z/3^n`, of level `(3)`.
pub fn level_three_example(n: u32) -> Result<MatrixRep> {
    let r = ring(3, n, 1);
    let mut gens = gamma_p_generators(&r);
    gens.push(Mat2::from_ints(&r, [2, 0, 0, 1]));
    generated(&r, &gens)
}

/// Over `Z/49` (or `F_7` when `n = 1`): `SL_2` generators and
/// `diag(s(3), 1)`.
pub fn residually_full_example(n: u32) -> Result<MatrixRep> {
    let r = ring(7, n, 1);
    let [u, l] = sl2_generators(&r);
    let s3 = r.teichmuller(r.residue_field().from_int(3));
    generated(&r, &[u, l, Mat2::diag(&r, s3, r.one())])
}

/// A generalized twist over `(Z/9)[u]/(u^3 - 3)`.
#[derive(Clone, Debug)]
pub struct GeneralizedExample {
    pub rep: MatrixRep,
    /// `u -> 4u`.
    pub sigma: RingAut,
    /// `eta(g)` with `sigma(rho(g)) = eta(g) rho(g)`.
    pub eta: Character,
    /// Elements of the coefficient ring `Z/9` inside the extension.
    pub base: Vec<crate::ring::RingElem>,
}

/// `GL_2(Z/9)` extended by the scalar `1 + u`, with the automorphism
/// `u -> 4u` and the character it induces on the scalar part.
pub fn generalized_cst_example() -> Result<GeneralizedExample> {
    let r = ring_ext(3, 2, 1, "u", &[-3, 0, 0, 1]);
    let u = r.u().expect("extension variable");
    let [a, b] = sl2_generators(&r);
    let s = Mat2::scalar(&r, r.add(r.one(), u));
    let rep = generated(&r, &[a, b, Mat2::from_ints(&r, [2, 0, 0, 1]), s])?;
    let sigma = RingAut::from_images(&r, r.x(), Some(r.scale(u, 4)))?;
    let mut values = Vec::with_capacity(rep.values().len());
    for m in rep.values() {
        let q = m.apply_aut(&sigma).mul(&r, &m.inv(&r).expect("invertible"));
        if !q.is_scalar(&r) {
            return Err(Error::Inconsistent(format!("sigma(g) g^-1 is not scalar for {}", m.format(&r))));
        }
        values.push(q.a());
    }
    let base = (0..9).map(|k| r.from_int(k)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    Ok(GeneralizedExample { rep, sigma, eta: Character::from_values(values), base })
}

/// `GL_2(Z/9)` as a representation over its own coefficient ring.
pub fn gl2_z9() -> Result<MatrixRep> {
    let r = ring(3, 2, 1);
    let [a, b] = sl2_generators(&r);
    generated(&r, &[a, b, Mat2::from_ints(&r, [2, 0, 0, 1])])
}

/// `<SL_2(Z/9), s(x) I>` over `W(F_9)/9`.
pub fn small_j_example() -> Result<MatrixRep> {
    let r = ring(3, 2, 2);
    let [a, b] = sl2_generators(&r);
    generated(&r, &[a, b, Mat2::scalar(&r, r.x())])
}

/// A projectively dihedral deformation over `F_7[u]/(u^2)` with an
/// automorphism `u -> -u` that is trivial on the residue field.
pub fn dihedral_kernel_example() -> Result<(MatrixRep, RingAut)> {
    let r = ring_ext(7, 1, 1, "u", &[0, 0, 1]);
    let u = r.u().expect("extension variable");
    let gens = [
        Mat2::from_ints(&r, [3, 0, 0, 1]),
        Mat2::new(r.one(), u, r.zero(), r.one()),
        antidiagonal(&r),
    ];
    let rep = generated(&r, &gens)?;
    let sigma = RingAut::from_images(&r, r.x(), Some(r.neg(u)))?;
    Ok((rep, sigma))
}

/// `<SL_2(Z/9), diag(-1, 1)>` with the adapted element `diag(-1, 1)`.
pub fn bellaiche_example() -> Result<(MatrixRep, Adaptation)> {
    let r = ring(3, 2, 1);
    let [a, b] = sl2_generators(&r);
    let d = Mat2::from_ints(&r, [-1, 0, 0, 1]);
    let rep = generated(&r, &[a, b, d])?;
    let g0 = rep.group().index_of(&d).expect("generator is in the group");
    let f = r.residue_field();
    Ok((rep, Adaptation { g0, lambda0: f.from_int(-1), mu0: f.one() }))
}

/// Small groups realised over `F_9`, used for twist recovery.
pub fn twist_recovery_groups() -> Result<Vec<(&'static str, Arc<GroupTable>)>> {
    let f9 = ring(3, 1, 2);
    let i = f9.pow(f9.x(), 2);
    let [u, l] = sl2_generators(&f9);
    let neg = Mat2::from_ints(&f9, [-1, 0, 0, 1]);
    let groups = vec![
        ("d4", vec![neg, antidiagonal(&f9)]),
        ("q8", vec![Mat2::from_ints(&f9, [0, -1, 1, 0]), Mat2::diag(&f9, i, f9.neg(i))]),
        ("s3", vec![u, neg]),
        ("sl2_f3", vec![u, l]),
    ];
    groups.into_iter().map(|(n, g)| Ok((n, Arc::new(GroupTable::close(&f9, &g)?)))).collect()
}
