use serde_json::{json, Value};

use crate::cst::{reduce_twists, twist_group};
use crate::error::{Error, Result};
use crate::rep::{classify_pseudorep, Mat2, MatrixRep};
use crate::residual::{compute_e, projective_class, ProjectiveTag};
use crate::ring::{grading_from_automorphisms, monomial_basis, ring_automorphisms, RingAut, RingElem, Span};

use super::filtration::max_ideal_span;
use super::subring::{extend_scalars, generated_subring, span_product, span_to_json, Base, Subring};
use super::{decompose_lie, j_smallness, pink_filtration_in, sr1_part, JSmallness, LieSubmodule, Radical};

/// The adapted element: `rho(g0) = diag(s(lambda0), s(mu0))`.
#[derive(Clone, Copy, Debug)]
pub struct Adaptation {
    pub g0: u32,
    /// Residue field elements.
    pub lambda0: RingElem,
    pub mu0: RingElem,
}

#[derive(Clone, Debug)]
pub struct ClauseResult {
    pub clause: String,
    pub passed: bool,
    pub detail: String,
    /// An element showing the failure, as ring coefficients.
    pub counterexample: Option<Vec<u64>>,
}

impl ClauseResult {
    fn pass(clause: &str, detail: impl Into<String>) -> Self {
        ClauseResult { clause: clause.into(), passed: true, detail: detail.into(), counterexample: None }
    }

    fn fail(clause: &str, detail: impl Into<String>, cx: Option<Vec<u64>>) -> Self {
        ClauseResult { clause: clause.into(), passed: false, detail: detail.into(), counterexample: cx }
    }

    pub fn to_json(&self) -> Value {
        json!({ "clause": self.clause, "passed": self.passed, "detail": self.detail, "counterexample": self.counterexample })
    }
}

#[derive(Clone, Debug)]
pub struct BellaicheReport {
    pub clauses: Vec<ClauseResult>,
    /// Degree of `F_q` over `F_p`.
    pub fq_degree: usize,
    pub e_degree: usize,
    /// `a` with clause (4) holding after conjugation by `diag(1, a)`.
    pub clause4_conjugator: Option<RingElem>,
    pub i1: Option<Span>,
    pub b1: Option<Span>,
    pub c1: Option<Span>,
    pub j: Option<Span>,
    pub smallness: Option<JSmallness>,
    /// Present when `J` is small: the graded decomposition check.
    pub graded: Option<ClauseResult>,
}

impl BellaicheReport {
    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed) && self.graded.as_ref().is_none_or(|g| g.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.clause == name)
    }

    pub fn to_json(&self, r: &crate::ring::LocalRing) -> Value {
        json!({
            "clauses": self.clauses.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "fq_degree": self.fq_degree,
            "e_degree": self.e_degree,
            "clause4_conjugator": self.clause4_conjugator.map(|a| r.coeffs(a)),
            "I1": self.i1.as_ref().map(span_to_json),
            "B1": self.b1.as_ref().map(span_to_json),
            "C1": self.c1.as_ref().map(span_to_json),
            "J": self.j.as_ref().map(span_to_json),
            "j_smallness": self.smallness.as_ref().map(|s| s.to_json(r)),
            "graded": self.graded.as_ref().map(|g| g.to_json()),
        })
    }
}

fn admissibility(rho: &MatrixRep) -> Result<()> {
    let r = rho.ring();
    let pr = rho.pseudo();
    let class = classify_pseudorep(&pr.residual())?;
    if let Some((a, b)) = &class.constituents {
        if a == b {
            return Err(Error::Precondition("admissibility clause (2): residual representation is not multiplicity-free".into()));
        }
    }
    let v = pr.validate();
    if !v.ok {
        return Err(Error::Precondition(format!("admissibility clause (3): pseudorepresentation axiom {:?} fails", v.axiom)));
    }
    if let Some(x) = (0..pr.group().len() as u32).find(|x| !r.is_teichmuller(pr.d(*x))) {
        return Err(Error::Precondition(format!(
            "admissibility clause (4): d({x}) = {} is not a Teichmuller lift",
            r.format_elem(pr.d(x))
        )));
    }
    let traces = generated_subring(r, pr.traces(), Base::WittFull)?;
    if traces.cardinality() != r.size() as u128 {
        return Err(Error::Precondition(format!(
            "admissibility clause (5): traces generate a subring of order {} in a ring of order {}",
            traces.cardinality(),
            r.size()
        )));
    }
    Ok(())
}

/// Least element of `a` outside `b`.
fn outside(a: &Span, b: &Span) -> Option<Vec<u64>> {
    let r = a.ring();
    let mut els: Vec<RingElem> = a.elements().into_iter().map(|v| v[0]).filter(|x| !b.contains(&[*x])).collect();
    els.sort();
    els.first().map(|x| r.coeffs(*x))
}

fn compare(clause: &str, what: &str, lhs: &Span, rhs: &Span) -> ClauseResult {
    if lhs.same_as(rhs) {
        ClauseResult::pass(clause, format!("{what}: equal, order {}", lhs.cardinality()))
    } else {
        let cx = outside(lhs, rhs).or_else(|| outside(rhs, lhs));
        ClauseResult::fail(clause, format!("{what}: orders {} and {}", lhs.cardinality(), rhs.cardinality()), cx)
    }
}

fn contained(clause: &str, what: &str, lhs: &Span, rhs: &Span) -> ClauseResult {
    if lhs.is_subspan_of(rhs) {
        ClauseResult::pass(clause, format!("{what}: contained"))
    } else {
        ClauseResult::fail(clause, format!("{what}: not contained"), outside(lhs, rhs))
    }
}

fn ideal_of_entries(r: &crate::ring::Ring, entries: impl Iterator<Item = RingElem>) -> Span {
    let basis = monomial_basis(r);
    let mut s = Span::new(r, 1);
    for e in entries {
        for b in &basis {
            s.insert(&[r.mul(e, *b)]);
        }
    }
    s
}

/// The radical of the matrix algebra spanned by the image: off-diagonal
/// parts are the ideals `B`, `C` of entries, or `mB`, `mC` when `BC` is
/// not inside `m`.
pub fn image_radical(rho: &MatrixRep) -> Radical {
    let r = rho.ring().clone();
    let b = ideal_of_entries(&r, rho.values().iter().map(|m| m.b()));
    let c = ideal_of_entries(&r, rho.values().iter().map(|m| m.c()));
    let m = max_ideal_span(&r);
    if span_product(&b, &c).is_subspan_of(&m) {
        Radical::with_offdiagonal(&r, b, c)
    } else {
        Radical::with_offdiagonal(&r, span_product(&m, &b), span_product(&m, &c))
    }
}

/// `{(a b; c -a) : a in i, b in b, c in c}`.
fn sl2_of_parts(i: &Span, b: &Span, c: &Span) -> LieSubmodule {
    LieSubmodule::from_parts(i, b, c)
}

/// Itemised check of the structure theorem for `W(F_q) L_1(rho)`, plus the
/// graded decomposition of `W(F) + W(F) J` when `J` is small.
pub fn bellaiche_structure_check(rho: &MatrixRep, adapted: &Adaptation) -> Result<BellaicheReport> {
    let r = rho.ring().clone();
    let f = r.residue_field().clone();
    admissibility(rho)?;
    let m0 = rho.value(adapted.g0);
    if adapted.lambda0 == adapted.mu0 || *m0 != Mat2::diag(&r, r.teichmuller(adapted.lambda0), r.teichmuller(adapted.mu0)) {
        return Err(Error::Precondition("rho(g0) is not diag(s(lambda0), s(mu0)) with lambda0 != mu0".into()));
    }
    let rbar = rho.residual();
    let class = projective_class(&rbar)?;
    if matches!(class.tag, ProjectiveTag::Cyclic(2) | ProjectiveTag::Dihedral(4)) {
        return Err(Error::Precondition(format!("projective image {} is excluded", class.name())));
    }
    if r.p() == 3 && class.tag == ProjectiveTag::A4 {
        return Err(Error::Precondition("tetrahedral residual image with p = 3 is excluded".into()));
    }
    let e = compute_e(&rbar.pseudo())?;
    let reducible = classify_pseudorep(&rbar.pseudo())?.reducible;
    let dihedral = class.is_dihedral();
    let big = class.is_exceptional() || class.is_large();
    let fq_degree = if class.is_exceptional() {
        let ratio = f.div(adapted.lambda0, adapted.mu0);
        lcm(e.degree, f.field_degree_of(ratio))
    } else if big {
        1
    } else {
        e.degree
    };

    let rad = image_radical(rho);
    let image = rho.image()?;
    let gamma = sr1_part(&image, &rad)?;
    let l1 = pink_filtration_in(&gamma, &rad, 1)?.remove(0);
    let dec = decompose_lie(&l1);
    let mut clauses = Vec::new();
    let (Some(i1), Some(b1), Some(c1)) = (dec.i.clone(), dec.b.clone(), dec.c.clone()) else {
        let cx = l1.basis().into_iter().next().map(|x| r.coeffs(x.a()));
        clauses.push(ClauseResult::fail("1", "L1 is not decomposable", cx));
        return Ok(BellaicheReport {
            clauses,
            fq_degree,
            e_degree: e.degree,
            clause4_conjugator: None,
            i1: None,
            b1: None,
            c1: None,
            j: None,
            smallness: None,
            graded: None,
        });
    };
    clauses.push(ClauseResult::pass("1", format!("L1 is {:?}", dec.kind).to_lowercase()));

    let wf = |s: &Span| extend_scalars(s, Base::WittFull);
    let wq = |s: &Span| extend_scalars(s, Base::Witt(fq_degree));
    let whole = Subring::whole(&r).span().clone();
    let mut one = Span::new(&r, 1);
    one.insert(&[r.one()]);
    let i1sq = span_product(&i1, &i1);
    let mut rhs2 = wf(&one)?.sum(&wf(&i1)?).sum(&wf(&i1sq)?);
    if dihedral {
        rhs2 = rhs2.sum(&wf(&b1)?);
    }
    clauses.push(compare("2", if dihedral { "A vs W(F)[I1] + W(F)B1" } else { "A vs W(F)[I1]" }, &whole, &rhs2));
    let c3 = compare("3", "W(F)C1 vs C", &wf(&c1)?, &rad.c);
    let b3 = compare("3", "W(F)B1 vs B", &wf(&b1)?, &rad.b);
    clauses.push(if !c3.passed { c3 } else if !b3.passed { b3 } else { ClauseResult::pass("3", "W(F)C1 = C and W(F)B1 = B") });

    let mut candidates: Vec<RingElem> = vec![r.one()];
    if big {
        candidates.extend(r.units().into_iter().filter(|a| *a != r.one()));
    }
    let mut clause4_conjugator = None;
    let mut first_failure = None;
    for a in candidates {
        let conj = l1.conjugate(&Mat2::diag(&r, r.one(), a))?;
        let d = decompose_lie(&conj);
        let (Some(ia), Some(ba), Some(ca)) = (d.i, d.b, d.c) else { continue };
        let lhs = conj.scaled(&Base::Witt(fq_degree).scalars(&r)?);
        let rhs = sl2_of_parts(&wq(&ia)?, &wq(&ba)?, &wq(&ca)?);
        if lhs.same_as(&rhs) {
            clause4_conjugator = Some(a);
            break;
        }
        if first_failure.is_none() {
            first_failure = Some((lhs, rhs));
        }
    }
    clauses.push(match (clause4_conjugator, first_failure) {
        (Some(a), _) => ClauseResult::pass("4", format!("holds after diag(1, {})", r.format_elem(a))),
        (None, Some((lhs, rhs))) => {
            let cx = rhs.elements().into_iter().find(|x| !lhs.contains(x)).or_else(|| lhs.elements().into_iter().find(|x| !rhs.contains(x)));
            ClauseResult::fail("4", "W(Fq)L1 differs from its sl2 envelope", cx.map(|m| m.0.iter().flat_map(|x| r.coeffs(*x)).collect()))
        }
        (None, None) => ClauseResult::fail("4", "no conjugate is decomposable", None),
    });

    let qi = wq(&i1)?;
    let qi2 = span_product(&qi, &qi);
    clauses.push(contained("i", "(W(Fq)I1)^3 in W(Fq)I1", &span_product(&qi2, &qi), &qi));
    if !reducible {
        clauses.push(compare("ii", "W(Fq)C1 vs W(Fq)B1", &wq(&c1)?, &wq(&b1)?));
    }
    if big {
        let eq = compare("iii", "W(Fq)B1 vs W(Fq)I1", &wq(&b1)?, &qi);
        clauses.push(if eq.passed { contained("iii", "(W(Fq)I1)^2 in W(Fq)I1", &qi2, &qi) } else { eq });
    }

    // J and the graded decomposition
    let we = |s: &Span| extend_scalars(s, Base::Witt(e.degree));
    let mut j = we(&i1)?.sum(&we(&i1sq)?);
    if dihedral {
        let tg = twist_group(&rho.pseudo(), &ring_automorphisms(&r)?)?;
        if reduce_twists(&tg, &rho.pseudo())?.kernel_size() == 1 {
            j = j.sum(&we(&b1)?);
        }
    }
    let smallness = j_smallness(&j, f.f(), e.degree)?;
    let graded = if smallness.small { Some(graded_check(&j, e.degree)?) } else { None };
    Ok(BellaicheReport {
        clauses,
        fq_degree,
        e_degree: e.degree,
        clause4_conjugator,
        i1: Some(i1),
        b1: Some(b1),
        c1: Some(c1),
        j: Some(j),
        smallness: Some(smallness),
        graded,
    })
}

/// `W(F) + W(F) J` splits into its `Gal(F/E)`-isotypic parts: every
/// projection `e_phi` maps it into itself and the parts add up directly.
pub fn graded_check(j: &Span, e_degree: usize) -> Result<ClauseResult> {
    let r = j.ring().clone();
    let f = r.f();
    let sigma: Vec<RingAut> = (0..f / e_degree).map(|k| RingAut::frobenius(&r, k * e_degree)).collect::<std::result::Result<_, _>>()?;
    let grading = match grading_from_automorphisms(&r, &sigma) {
        Ok(g) => g,
        Err(e) => return Ok(ClauseResult::fail("graded", format!("no grading: {e}"), None)),
    };
    let mut one = Span::new(&r, 1);
    one.insert(&[r.one()]);
    let frak_a = extend_scalars(&one.sum(j), Base::WittFull)?;
    let mut total = 0;
    let mut parts = Span::new(&r, 1);
    for phi in 0..grading.characters().len() {
        let mut part = Span::new(&r, 1);
        for b in frak_a.basis() {
            part.insert(&[grading.project(phi, b[0])]);
        }
        if !part.is_subspan_of(&frak_a) {
            return Ok(ClauseResult::fail("graded", format!("e_{phi} does not preserve W(F) + W(F)J"), outside(&part, &frak_a)));
        }
        total += part.log_card();
        parts = parts.sum(&part);
    }
    if parts.same_as(&frak_a) && total == frak_a.log_card() {
        Ok(ClauseResult::pass("graded", format!("{} graded pieces, order {}", grading.characters().len(), frak_a.cardinality())))
    } else {
        Ok(ClauseResult::fail("graded", "graded pieces do not sum directly", None))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
