//! Independent brute-force implementations used to cross-check the main
//! algorithms on small inputs.  Nothing here calls the optimised code it
//! is compared against.

use std::collections::BTreeSet;

use crate::rep::{GroupTable, Mat2, PseudoRep};
use crate::ring::{monomial_basis, LocalRing, Ring, RingElem};

fn add(r: &LocalRing, x: &Mat2, y: &Mat2) -> Mat2 {
    Mat2::new(r.add(x.a(), y.a()), r.add(x.b(), y.b()), r.add(x.c(), y.c()), r.add(x.d(), y.d()))
}

fn mul(r: &LocalRing, x: &Mat2, y: &Mat2) -> Mat2 {
    Mat2::new(
        r.add(r.mul(x.a(), y.a()), r.mul(x.b(), y.c())),
        r.add(r.mul(x.a(), y.b()), r.mul(x.b(), y.d())),
        r.add(r.mul(x.c(), y.a()), r.mul(x.d(), y.c())),
        r.add(r.mul(x.c(), y.b()), r.mul(x.d(), y.d())),
    )
}

/// The subgroup of `(M_2(A), +)` generated by `gens`, as a set.
pub fn additive_closure(r: &LocalRing, gens: impl IntoIterator<Item = Mat2>) -> BTreeSet<Mat2> {
    let zero = Mat2::new(r.zero(), r.zero(), r.zero(), r.zero());
    let mut set: BTreeSet<Mat2> = BTreeSet::from([zero]);
    for g in gens {
        if set.contains(&g) {
            continue;
        }
        // set is a subgroup; add the cyclic group of g
        let mut multiples = vec![];
        let mut k = g;
        while k != zero {
            multiples.push(k);
            k = add(r, &k, &g);
        }
        let old: Vec<Mat2> = set.iter().copied().collect();
        for m in &multiples {
            for s in &old {
                set.insert(add(r, s, m));
            }
        }
    }
    set
}

/// `L_1, ..., L_depth` computed from their definitions on explicit sets:
/// `L_1` is generated by `x - tr(x)/2` and `L_{n+1}` by all brackets of
/// `L_1` with `L_n`.
pub fn pink_filtration_sets(gamma: &GroupTable, depth: usize) -> Vec<BTreeSet<Mat2>> {
    let r = gamma.ring().as_ref();
    let two_inv = r.inv(r.from_int(2)).expect("p is odd");
    let theta = |x: &Mat2| {
        let h = r.mul(r.add(x.a(), x.d()), two_inv);
        Mat2::new(r.sub(x.a(), h), x.b(), x.c(), r.sub(x.d(), h))
    };
    let mut out = vec![additive_closure(r, gamma.elements().iter().map(theta))];
    while out.len() < depth {
        let l1 = &out[0];
        let ln = out.last().unwrap();
        let mut brackets = BTreeSet::new();
        for x in l1 {
            for y in ln {
                let xy = mul(r, x, y);
                let yx = mul(r, y, x);
                brackets.insert(Mat2::new(r.sub(xy.a(), yx.a()), r.sub(xy.b(), yx.b()), r.sub(xy.c(), yx.c()), r.sub(xy.d(), yx.d())));
            }
        }
        out.push(additive_closure(r, brackets));
    }
    out
}

/// `{a : a^k = 1}` by repeated multiplication.
pub fn roots_of_unity(r: &LocalRing, k: u64) -> Vec<RingElem> {
    r.elements()
        .filter(|a| {
            let mut x = r.one();
            for _ in 0..k {
                x = r.mul(x, *a);
            }
            x == r.one()
        })
        .collect()
}

/// A ring endomorphism given by the images of the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BruteAut {
    /// Image of each element, indexed by element.
    pub table: Vec<RingElem>,
}

impl BruteAut {
    pub fn apply(&self, a: RingElem) -> RingElem {
        self.table[a.index()]
    }
}

/// Every automorphism of `A`, found by trying all images of `x` and `u`
/// and checking additivity, multiplicativity and bijectivity on all
/// elements.
pub fn ring_automorphisms(r: &Ring) -> Vec<BruteAut> {
    let f = r.f();
    let basis = monomial_basis(r);
    let has_u_basis = r.u().is_some() && r.e() > 1;
    let all: Vec<RingElem> = r.elements().collect();
    let x_cands: Vec<RingElem> = if f > 1 { all.clone() } else { vec![r.x()] };
    let u_cands: Vec<Option<RingElem>> = if has_u_basis { all.iter().map(|v| Some(*v)).collect() } else { vec![None] };
    let mut out = Vec::new();
    for xi in &x_cands {
        for ui in &u_cands {
            // image of the basis element x^i u^j
            let images: Vec<RingElem> = (0..basis.len())
                .map(|k| {
                    let (i, j) = (k % f, k / f);
                    let xs = r.pow(*xi, i as u64);
                    match ui {
                        Some(u) => r.mul(xs, r.pow(*u, j as u64)),
                        None => xs,
                    }
                })
                .collect();
            let quick = (0..basis.len()).all(|i| {
                (0..basis.len()).all(|j| {
                    let prod = r.mul(basis[i], basis[j]);
                    image_of(r, &images, prod) == r.mul(images[i], images[j])
                })
            });
            if !quick {
                continue;
            }
            let table: Vec<RingElem> = all.iter().map(|a| image_of(r, &images, *a)).collect();
            let distinct: BTreeSet<_> = table.iter().collect();
            if distinct.len() != all.len() {
                continue;
            }
            let hom = all.iter().all(|a| {
                all.iter().all(|b| {
                    table[r.mul(*a, *b).index()] == r.mul(table[a.index()], table[b.index()])
                        && table[r.add(*a, *b).index()] == r.add(table[a.index()], table[b.index()])
                })
            });
            if hom && table[r.one().index()] == r.one() {
                out.push(BruteAut { table });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn image_of(r: &LocalRing, images: &[RingElem], a: RingElem) -> RingElem {
    r.coeffs(a).iter().zip(images).fold(r.zero(), |acc, (c, img)| r.add(acc, r.scale(*img, *c as i64)))
}

/// A twist pair found by the brute search: automorphism index and the
/// character's value table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BrutePair {
    pub aut: usize,
    pub eta: Vec<RingElem>,
}

/// Number of generator assignments the brute twist search would try.
pub fn twist_search_size(pr: &PseudoRep) -> u128 {
    let r = pr.ring();
    let units = r.elements().filter(|a| r.is_unit(*a)).count() as u128;
    units.pow(pr.group().generators().len() as u32) * pr.group().len() as u128
}

/// All `(sigma, eta)` with `sigma` in `auts` and `eta` any assignment of
/// units to the generators that extends to a homomorphism, satisfying
/// `sigma(t) = eta t` and `sigma(d) = eta^2 d`.
pub fn twist_pairs(pr: &PseudoRep, auts: &[BruteAut]) -> Vec<BrutePair> {
    let r = pr.ring();
    let g = pr.group();
    let units: Vec<RingElem> = r.elements().filter(|a| r.is_unit(*a)).collect();
    let ngens = g.generators().len();
    let gen_idx: Vec<u32> = g.generators().iter().map(|m| g.index_of(m).expect("generator")).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; ngens];
    loop {
        if let Some(eta) = extend(g, r, &gen_idx, &choice.iter().map(|c| units[*c]).collect::<Vec<_>>()) {
            for (k, s) in auts.iter().enumerate() {
                let ok = (0..g.len() as u32).all(|x| {
                    let e = eta[x as usize];
                    s.apply(pr.t(x)) == r.mul(e, pr.t(x)) && s.apply(pr.d(x)) == r.mul(r.mul(e, e), pr.d(x))
                });
                if ok {
                    out.push(BrutePair { aut: k, eta: eta.clone() });
                }
            }
        }
        let mut i = 0;
        loop {
            if i == ngens {
                out.sort();
                return out;
            }
            choice[i] += 1;
            if choice[i] < units.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Extends generator values along products with generators, failing on
/// any inconsistency; a consistent extension is a homomorphism.
fn extend(g: &GroupTable, r: &LocalRing, gen_idx: &[u32], vals: &[RingElem]) -> Option<Vec<RingElem>> {
    let mut out: Vec<Option<RingElem>> = vec![None; g.len()];
    out[0] = Some(r.one());
    let mut stack = vec![0u32];
    while let Some(x) = stack.pop() {
        let v = out[x as usize].unwrap();
        for (gi, gv) in gen_idx.iter().zip(vals) {
            let y = g.mul(x, *gi);
            let w = r.mul(v, *gv);
            match out[y as usize] {
                None => {
                    out[y as usize] = Some(w);
                    stack.push(y);
                }
                Some(old) if old != w => return None,
                _ => {}
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn small_rings() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        assert_eq!(roots_of_unity(&z9, 2).len(), 2);
        assert_eq!(ring_automorphisms(&z9).len(), 1);
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        assert_eq!(ring_automorphisms(&f9).len(), 2);
        let closure = additive_closure(&z9, [Mat2::from_ints(&z9, [3, 0, 0, 0]), Mat2::from_ints(&z9, [0, 1, 0, 0])]);
        assert_eq!(closure.len(), 27);
    }
}
