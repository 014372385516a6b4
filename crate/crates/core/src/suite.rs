//! The verification suite: concrete instances of the structural identities,
//! each checked exactly, with brute-force cross-checks for the core
//! algorithms.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{self, ring, ring_ext, sl2_generators};
use crate::cst::{fixed_subring, plus_minus_verify, reduce_twists, twist_group, TwistPair};
use crate::error::{Error, Result};
use crate::oracle;
use crate::pink::{
    bellaiche_structure_check, congruence_elements, congruence_subgroup, decompose_lie, extend_scalars,
    generated_subring, j_smallness, level_detector, lower_central_term, max_ideal_span, pink_filtration, pink_group_h,
    span_product, sr1_part, Base, LieSubmodule, Radical, Subring,
};
use crate::rep::{
    ad0_matrix, characters, induce_index2, is_semisimple, recover_twist, two_power_determinant_twist, GroupTable,
    Index2Subgroup, Mat2, MatrixRep, PseudoRep,
};
use crate::residual::{compute_e, projective_class, residual_twists, ProjectiveTag};
use crate::ring::{
    grading_from_automorphisms, involution_split, quadratic_extension, ring_automorphisms, LocalRing, Ring, RingAut,
    RingElem, RingSpec, Span,
};

/// Switches that alter the suite, used for negative controls.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Replace one multiplication table entry of the ring used by the
    /// congruence filtration instance over `Z/27`.
    pub perturb: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

type Runner = fn(&Options) -> Result<Outcome>;

pub struct Instance {
    pub id: &'static str,
    /// Acceptance criterion number, if the instance belongs to one.
    pub criterion: Option<u8>,
    pub tags: &'static [&'static str],
    run: Runner,
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub id: String,
    pub criterion: Option<u8>,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl InstanceReport {
    pub fn line(&self) -> String {
        let crit = self.criterion.map_or("-".to_string(), |c| c.to_string());
        format!(
            "{} {} criterion={} {:.1}ms {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            crit,
            self.elapsed.as_secs_f64() * 1e3,
            self.detail
        )
    }
}

impl Instance {
    /// Text matched by suite filters: the id followed by the tags.
    pub fn filter_text(&self) -> String {
        std::iter::once(self.id).chain(self.tags.iter().copied()).collect::<Vec<_>>().join(" ")
    }

    pub fn run(&self, opts: &Options) -> InstanceReport {
        let start = Instant::now();
        let (passed, detail) = match (self.run)(opts) {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        InstanceReport { id: self.id.to_string(), criterion: self.criterion, passed, detail, elapsed: start.elapsed() }
    }
}

/// Runs the instances on up to `threads` threads; reports come back sorted
/// by id whatever the scheduling.
pub fn run_instances(list: &[&Instance], opts: &Options, threads: usize) -> Vec<InstanceReport> {
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::with_capacity(list.len()));
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(list.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(inst) = list.get(i) else { break };
                let report = inst.run(opts);
                out.lock().expect("no poisoned lock").push(report);
            });
        }
    });
    let mut out = out.into_inner().expect("no poisoned lock");
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

macro_rules! inst {
    ($id:expr, $crit:expr, [$($tag:expr),*], $run:expr) => {
        Instance { id: $id, criterion: $crit, tags: &[$($tag),*], run: $run }
    };
}

/// Every instance, sorted by id.
pub fn instances() -> Vec<Instance> {
    let mut v = vec![
        inst!("c01.congrL1.f9t3", Some(1), ["congrL1", "lie"], |_| congr_l1(&ring_ext(3, 1, 2, "t", &[0, 0, 0, 1]))),
        inst!("c01.congrL1.z27", Some(1), ["congrL1", "lie"], congr_l1_z27),
        inst!("c02.congrcomm.z27", Some(2), ["commutator"], |_| congr_comm()),
        inst!("c02.perfect.f5", Some(2), ["commutator"], |_| perfect(&ring(5, 1, 1))),
        inst!("c02.perfect.f9", Some(2), ["commutator"], |_| perfect(&ring(3, 1, 2))),
        inst!("c03.pink_h.z27", Some(3), ["lie", "pink"], |_| pink_correspondence()),
        inst!("c04.adjoint.gl2_f5", Some(4), ["adjoint"], |_| adjoint_trace(&ring(5, 1, 1), 480)),
        inst!("c04.adjoint.gl2_f9", Some(4), ["adjoint"], |_| adjoint_trace(&ring(3, 1, 2), 5760)),
        inst!("c05.twist_recovery.d4", Some(5), ["twist"], |_| twist_recovery_for("d4")),
        inst!("c05.twist_recovery.q8", Some(5), ["twist"], |_| twist_recovery_for("q8")),
        inst!("c05.twist_recovery.s3", Some(5), ["twist"], |_| twist_recovery_for("s3")),
        inst!("c05.twist_recovery.sl2_f3", Some(5), ["twist"], |_| twist_recovery_for("sl2_f3")),
        inst!("c06.e_fixed_field", Some(6), ["residual"], |_| e_is_fixed_field()),
        inst!("c07.sigma_di", Some(7), ["residual"], |_| sigma_di_sizes()),
        inst!("c08.roots_of_unity", Some(8), ["ring"], |_| roots_of_unity_lemma()),
        inst!("c09.grading.w9", Some(9), ["ring", "grading"], |_| grading_w9()),
        inst!("c10.twist_level.z27", Some(10), ["level"], |_| twist_level(3)),
        inst!("c10.twist_level.z9", Some(10), ["level"], |_| twist_level(2)),
        inst!("c11.full.f7", Some(11), ["level", "smoke"], |_| residually_full(1)),
        inst!("c11.full.z49", Some(11), ["level", "slow"], |_| residually_full(2)),
        inst!("c12.generalized_cst", Some(12), ["cst"], |_| generalized_cst()),
        inst!("c13.small_j", Some(13), ["cst", "lie"], |_| small_j_lifting()),
        inst!("c14.oracle.automorphisms", Some(14), ["oracle"], |_| oracle_automorphisms()),
        inst!("c14.oracle.pink", Some(14), ["oracle", "lie"], |_| oracle_pink()),
        inst!("c14.oracle.roots", Some(14), ["oracle"], |_| oracle_roots()),
        inst!("c14.oracle.twists", Some(14), ["oracle", "cst"], |_| oracle_twists()),
        inst!("m.bellaiche.gl2_z9_rejected", None, ["lie", "bellaiche"], |_| bellaiche_rejects_gl2()),
        inst!("m.bellaiche.octahedral_z9", None, ["lie", "bellaiche"], |_| bellaiche_octahedral()),
        inst!("m.cst.kernel_f7u", None, ["cst"], |_| dihedral_kernel()),
        inst!("m.level.examples_z9", None, ["level"], |_| level_examples()),
    ];
    v.sort_by_key(|i| i.id);
    v
}

fn sets_equal(a: &LieSubmodule, b: &LieSubmodule) -> bool {
    let x: BTreeSet<Mat2> = a.elements().into_iter().collect();
    let y: BTreeSet<Mat2> = b.elements().into_iter().collect();
    x == y
}

fn ideal_power(m: &Span, n: usize) -> Span {
    let mut acc = m.clone();
    for _ in 1..n {
        acc = span_product(&acc, m);
    }
    acc
}

fn congr_l1(r: &Ring) -> Result<Outcome> {
    let s = Subring::whole(r);
    let m = max_ideal_span(r);
    let gamma = congruence_subgroup(&s, &m)?;
    let l = pink_filtration(&gamma, 3)?;
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let want = LieSubmodule::sl2(&ideal_power(&m, n));
        let same = sets_equal(&l[n - 1], &want);
        ok &= same;
        parts.push(format!("L{n}: {} vs {}", l[n - 1].cardinality(), want.cardinality()));
    }
    verdict(ok, format!("{} |Gamma(m)| = {}; {}", r.spec(), gamma.len(), parts.join(", ")))
}

fn congr_l1_z27(opts: &Options) -> Result<Outcome> {
    let spec = RingSpec::new(3, 3, 1);
    let r = if opts.perturb {
        let clean = LocalRing::new(spec.clone())?;
        let three = clean.from_int(3);
        LocalRing::with_mutated_product(spec, three.0, three.0, clean.zero().0)?
    } else {
        LocalRing::new(spec)?
    };
    congr_l1(&r)
}

fn congr_comm() -> Result<Outcome> {
    let r = ring(3, 3, 1);
    let s = Subring::whole(&r);
    let g = congruence_subgroup(&s, &s.ideal(&[r.from_int(3)]))?;
    let want = congruence_subgroup(&s, &s.ideal(&[r.from_int(9)]))?;
    let d = g.derived_subgroup();
    let got: BTreeSet<Mat2> = d.iter().map(|i| *g.element(*i)).collect();
    let want_set: BTreeSet<Mat2> = want.elements().iter().copied().collect();
    verdict(got == want_set, format!("|(Gamma(3), Gamma(3))| = {}, |Gamma(9)| = {}", got.len(), want_set.len()))
}

fn perfect(r: &Ring) -> Result<Outcome> {
    let mut gens = Vec::new();
    for a in [r.one(), r.x()] {
        gens.push(Mat2::new(r.one(), a, r.zero(), r.one()));
        gens.push(Mat2::new(r.one(), r.zero(), a, r.one()));
    }
    let g = GroupTable::close(r, &gens)?;
    let q = r.residue_size();
    let expected = (q * q * q - q) as usize;
    let d = g.derived_subgroup();
    verdict(g.len() == expected && d.len() == g.len(), format!("|SL2({})| = {}, derived {}", r.spec(), g.len(), d.len()))
}

fn pink_correspondence() -> Result<Outcome> {
    let r = ring(3, 3, 1);
    let s = Subring::whole(&r);
    let pool = congruence_elements(&s, &s.ideal(&[r.from_int(3)]))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a27);
    let mut failures = Vec::new();
    let mut orders = Vec::new();
    for trial in 0..10 {
        let gens = [pool[rng.gen_range(0..pool.len())], pool[rng.gen_range(0..pool.len())]];
        let gamma = GroupTable::close(&r, &gens)?;
        let l = pink_filtration(&gamma, 3)?;
        orders.push(gamma.len());
        for n in [2usize, 3] {
            let h = pink_group_h(&l[n - 1])?;
            let lc = lower_central_term(&gamma, n)?;
            let a: BTreeSet<Mat2> = h.elements().iter().copied().collect();
            let b: BTreeSet<Mat2> = lc.elements().iter().copied().collect();
            if a != b {
                failures.push(format!("trial {trial} n={n}: |H| = {} |Gamma_n| = {}", a.len(), b.len()));
            }
        }
    }
    let detail = format!("10 subgroups of orders {orders:?}");
    if failures.is_empty() {
        verdict(true, detail)
    } else {
        verdict(false, format!("{detail}; {}", failures.join("; ")))
    }
}

fn adjoint_trace(r: &Ring, expected: usize) -> Result<Outcome> {
    let els: Vec<RingElem> = r.elements().collect();
    let mut count = 0;
    let mut bad = 0;
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    let g = Mat2::new(a, b, c, d);
                    let det = g.det(r);
                    let Some(di) = r.inv(det) else { continue };
                    count += 1;
                    let tr = g.trace(r);
                    let want = r.sub(r.mul(r.mul(tr, tr), di), r.one());
                    if ad0_matrix(r, &g).trace(r) != want {
                        bad += 1;
                    }
                }
            }
        }
    }
    verdict(count == expected && bad == 0, format!("GL2({}): {count} elements, {bad} mismatches", r.spec()))
}

fn ad_ratio(pr: &PseudoRep) -> Vec<RingElem> {
    let r = pr.ring();
    (0..pr.group().len() as u32)
        .map(|x| {
            let t = pr.t(x);
            r.mul(r.mul(t, t), r.inv(pr.d(x)).expect("unit determinant"))
        })
        .collect()
}

/// Semisimple 2-dimensional representations of `g` over its field: sums of
/// characters, inductions from index-2 subgroups and twists of the
/// tautological representation and its Frobenius conjugates, deduplicated
/// by pseudorepresentation.
fn semisimple_corpus(g: &std::sync::Arc<GroupTable>) -> Result<Vec<MatrixRep>> {
    let r = g.ring().clone();
    let chars = characters(g, &r)?;
    let mut cands = Vec::new();
    for (i, a) in chars.iter().enumerate() {
        for b in &chars[i..] {
            let vals = (0..g.len() as u32).map(|x| Mat2::diag(&r, a.value(x), b.value(x))).collect();
            cands.push(MatrixRep::from_values(g.clone(), &r, vals));
        }
    }
    for h in Index2Subgroup::all(g)? {
        let c = h.coset_representative();
        for psi in characters(h.table(), &r)? {
            cands.push(induce_index2(&h, &psi, c, &r)?);
        }
    }
    let taut = MatrixRep::identity(g.clone());
    for k in 0..r.f() {
        let conj = taut.apply_aut(&RingAut::frobenius(&r, k)?);
        for chi in &chars {
            cands.push(conj.twist(chi));
        }
    }
    let mut out: Vec<MatrixRep> = Vec::new();
    for rho in cands {
        if is_semisimple(&rho)? && !out.iter().any(|o| o.pseudo().same_as(&rho.pseudo())) {
            out.push(rho);
        }
    }
    Ok(out)
}

fn twist_recovery_for(name: &str) -> Result<Outcome> {
    let groups = corpus::twist_recovery_groups()?;
    let (_, g) = groups.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::Input(name.into()))?;
    let reps = semisimple_corpus(g)?;
    let f9 = g.ring().clone();
    let emb = quadratic_extension(&f9)?;
    let (mut agreeing, mut enlarged, mut bad) = (0, 0, Vec::new());
    for (i, r1) in reps.iter().enumerate() {
        for (j, r2) in reps.iter().enumerate() {
            let (p1, p2) = (r1.pseudo(), r2.pseudo());
            let agree = ad_ratio(&p1) == ad_ratio(&p2);
            let rec = recover_twist(r1, r2)?;
            if rec.ad_traces_agree != agree {
                bad.push(format!("({i},{j}) adjoint agreement differs"));
                continue;
            }
            if !agree {
                continue;
            }
            agreeing += 1;
            let Some(eta) = rec.eta else {
                bad.push(format!("({i},{j}) no twist found"));
                continue;
            };
            let k = rec.field.clone();
            let lift = |a: RingElem| if rec.enlarged { emb.apply(a) } else { a };
            enlarged += rec.enlarged as usize;
            let ok = eta.is_homomorphism(g, &k)
                && (0..g.len() as u32).all(|x| {
                    let e = eta.value(x);
                    lift(p1.t(x)) == k.mul(e, lift(p2.t(x))) && lift(p1.d(x)) == k.mul(k.mul(e, e), lift(p2.d(x)))
                });
            if !ok {
                bad.push(format!("({i},{j}) twist fails pointwise"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{name}: {} semisimple representations, {agreeing} agreeing pairs ({enlarged} over F81){}",
            reps.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn e_is_fixed_field() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for ex in corpus::residual_examples()? {
        let e = compute_e(&ex.rep.pseudo())?;
        let fixed = residual_twists(&ex.rep)?.fixed_field();
        ok &= e.degree == fixed.degree && e.generator == fixed.generator;
        parts.push(format!("{}: E=F{}^{} fixed=F{}^{}", ex.id, ex.rep.ring().p(), e.degree, ex.rep.ring().p(), fixed.degree));
    }
    verdict(ok, parts.join(", "))
}

fn sigma_di_sizes() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    let mut seen = [false; 3];
    for ex in corpus::residual_examples()? {
        let class = projective_class(&ex.rep)?;
        let expected = match class.tag {
            ProjectiveTag::Borel(_) | ProjectiveTag::Cyclic(_) => continue,
            ProjectiveTag::Dihedral(4) => 4,
            ProjectiveTag::Dihedral(_) => 2,
            _ if class.order > 2 => 1,
            _ => continue,
        };
        seen[match expected {
            1 => 0,
            2 => 1,
            _ => 2,
        }] = true;
        let got = residual_twists(&ex.rep)?.sigma_di.len();
        ok &= got == expected;
        parts.push(format!("{} ({}): {got}/{expected}", ex.id, class.name()));
    }
    verdict(ok && seen.iter().all(|s| *s), parts.join(", "))
}

fn roots_of_unity_lemma() -> Result<Outcome> {
    let rings = [ring(3, 2, 1), ring(3, 3, 1), ring_ext(3, 1, 2, "t", &[0, 0, 1])];
    let mut ok = true;
    let mut parts = Vec::new();
    for r in &rings {
        let mut sizes = Vec::new();
        for k in [2u64, 4, 8] {
            let brute = oracle::roots_of_unity(r, k);
            let lifted = r.roots_of_unity(k)?;
            ok &= brute == lifted;
            sizes.push(format!("mu_{k}={}", brute.len()));
        }
        parts.push(format!("{}: {}", r.spec(), sizes.join(" ")));
    }
    verdict(ok, parts.join(", "))
}

fn span_elems(s: &Span) -> Vec<RingElem> {
    s.elements().into_iter().map(|v| v[0]).collect()
}

fn grading_w9() -> Result<Outcome> {
    let r = ring(3, 2, 2);
    let sigma = RingAut::frobenius(&r, 1)?;
    let grading = grading_from_automorphisms(&r, &[RingAut::identity(&r), sigma.clone()])?;
    let nchar = grading.characters().len();
    let all: Vec<RingElem> = r.elements().collect();
    let idempotent = all.iter().all(|a| {
        let parts = grading.decompose(*a);
        let sum = parts.iter().fold(r.zero(), |acc, x| r.add(acc, *x));
        sum == *a
            && (0..nchar).all(|phi| {
                (0..nchar).all(|psi| {
                    let twice = grading.project(phi, grading.project(psi, *a));
                    twice == if phi == psi { grading.project(phi, *a) } else { r.zero() }
                })
            })
    });
    let comps = grading.components();
    let mut total = Span::new(&r, 1);
    let mut log = 0;
    for c in comps {
        total = total.sum(c);
        log += c.log_card();
    }
    let whole = Subring::whole(&r).span().clone();
    let direct = total.same_as(&whole) && log == whole.log_card();
    let mut graded = true;
    for phi in 0..nchar {
        for psi in 0..nchar {
            let target = &comps[grading.product_character(phi, psi)];
            for a in span_elems(&comps[phi]) {
                for b in span_elems(&comps[psi]) {
                    graded &= target.contains(&[r.mul(a, b)]);
                }
            }
        }
    }
    let split = involution_split(&r, &sigma)?;
    let minus = span_elems(&split.minus);
    let squares = minus.iter().all(|a| minus.iter().all(|b| split.plus.contains(&[r.mul(*a, *b)])));
    verdict(
        idempotent && direct && graded && squares,
        format!(
            "W(F9)/9: {nchar} characters, idempotents {idempotent}, direct sum {direct}, graded {graded}, (A-)^2 in A+ {squares}; |A+| = {}, |A-| = {}",
            split.plus.cardinality(),
            split.minus.cardinality()
        ),
    )
}

fn twist_level(n: u32) -> Result<Outcome> {
    let rho = corpus::level_three_example(n)?;
    let r = rho.ring().clone();
    let s = Subring::whole(&r);
    let base = level_detector(&rho.image()?, &s, None)?;
    let three = s.ideal(&[r.from_int(3)]);
    let nine = s.ideal(&[r.from_int(9)]);
    let mut ok = base.ideal.same_as(&three);
    let chars = characters(rho.group(), &r)?;
    let mut levels = BTreeSet::new();
    for chi in &chars {
        let tw = rho.twist(chi);
        let rep = level_detector(&tw.image()?, &s, None)?;
        ok &= nine.is_subspan_of(&rep.ideal);
        levels.insert(rep.ideal.cardinality());
    }
    verdict(
        ok,
        format!(
            "{}: level of rho has {} elements; {} twists, twisted level sizes {levels:?}, (9) has {}",
            r.spec(),
            base.ideal.cardinality(),
            chars.len(),
            nine.cardinality()
        ),
    )
}

fn residually_full(n: u32) -> Result<Outcome> {
    let rho = corpus::residually_full_example(n)?;
    let r = rho.ring().clone();
    let chi = two_power_determinant_twist(&r, &rho.det_character())?;
    let tw = rho.twist(&chi);
    let image = tw.image()?;
    let gamma = sr1_part(&image, &Radical::full(&r))?;
    let l1 = pink_filtration(&gamma, 1)?.remove(0);
    let i1 = decompose_lie(&l1).i.ok_or_else(|| Error::Inconsistent("L1 is not decomposable".into()))?;
    let m = max_ideal_span(&r);
    let i1_is_m = i1.same_as(&m);
    let e = compute_e(&tw.residual().pseudo())?;
    let we_i1 = generated_subring(&r, &span_elems(&i1), Base::Witt(e.degree))?;
    let whole = we_i1.cardinality() == r.size() as u128;
    let contains_sl2 = sl2_generators(&r).iter().all(|g| image.contains(g));
    verdict(
        i1_is_m && whole && contains_sl2,
        format!(
            "{}: |image| = {}, I1 = m {i1_is_m}, W(E)[I1] = A {whole}, SL2 inside twisted image {contains_sl2}",
            r.spec(),
            image.len()
        ),
    )
}

fn generalized_cst() -> Result<Outcome> {
    let ex = corpus::generalized_cst_example()?;
    let r = ex.rep.ring().clone();
    let pr = ex.rep.pseudo();
    let hom = ex.eta.is_homomorphism(ex.rep.group(), &r);
    let pair = TwistPair { sigma: ex.sigma.clone(), eta: ex.eta.clone(), generalized: true };
    let satisfies = pair.satisfies(&pr);
    let outside = ex.eta.values().iter().any(|v| ex.base.binary_search(v).is_err());
    let gl2 = corpus::gl2_z9()?;
    let z9 = gl2.ring().clone();
    let tg = twist_group(&gl2.pseudo(), &ring_automorphisms(&z9)?)?;
    let only_trivial = tg.len() == 1 && tg.pairs()[0].is_identity();
    verdict(
        hom && satisfies && outside && only_trivial,
        format!(
            "|Pi| = {}, eta homomorphism {hom}, equations hold {satisfies}, eta leaves Z/9 {outside}; GL2(Z/9) twists: {}",
            ex.rep.group().len(),
            tg.len()
        ),
    )
}

fn small_j_lifting() -> Result<Outcome> {
    let rho = corpus::small_j_example()?;
    let r = rho.ring().clone();
    let pr = rho.pseudo();
    let tg = twist_group(&pr, &ring_automorphisms(&r)?)?;
    let sigmas = tg.sigmas();
    let fixed = fixed_subring(&r, &sigmas);
    let e = compute_e(&pr.residual())?;
    let image = rho.image()?;
    let gamma = sr1_part(&image, &Radical::full(&r))?;
    let l1 = pink_filtration(&gamma, 1)?.remove(0);
    let i1 = decompose_lie(&l1).i.ok_or_else(|| Error::Inconsistent("L1 is not decomposable".into()))?;
    let we_i1 = generated_subring(&r, &span_elems(&i1), Base::Witt(e.degree))?;
    let j = extend_scalars(&i1, Base::Witt(e.degree))?.sum(&extend_scalars(&span_product(&i1, &i1), Base::Witt(e.degree))?);
    let js = j_smallness(&j, r.f(), e.degree)?;
    let class = projective_class(&rho.residual())?;
    let applies = !class.is_dihedral();
    verdict(
        js.small && applies && fixed.same_as(&we_i1),
        format!(
            "{}: |Sigma_t| = {} ({} automorphisms), E = F3^{}, |I1| = {}, J small {}, |A^Sigma| = {}, |W(E)[I1]| = {}",
            r.spec(),
            tg.len(),
            sigmas.len(),
            e.degree,
            i1.cardinality(),
            js.small,
            fixed.cardinality(),
            we_i1.cardinality()
        ),
    )
}

fn ring_list() -> Vec<Ring> {
    vec![
        ring(3, 1, 1),
        ring(3, 2, 1),
        ring(3, 3, 1),
        ring(3, 6, 1),
        ring(3, 1, 2),
        ring(3, 1, 3),
        ring(3, 1, 4),
        ring(3, 2, 2),
        ring(3, 2, 3),
        ring(3, 3, 2),
        ring_ext(3, 1, 2, "t", &[0, 0, 1]),
        ring_ext(3, 1, 2, "t", &[0, 0, 0, 1]),
        ring_ext(3, 2, 1, "u", &[-3, 0, 1]),
        ring_ext(3, 2, 1, "u", &[-3, 0, 0, 1]),
        ring_ext(3, 1, 1, "t", &[0, 0, 0, 0, 1]),
        ring(5, 1, 1),
        ring(5, 2, 1),
        ring(5, 1, 2),
        ring(7, 1, 1),
        ring(7, 2, 1),
        ring_ext(7, 1, 1, "u", &[0, 0, 1]),
    ]
}

fn oracle_roots() -> Result<Outcome> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in ring_list() {
        for k in 1..=24u64 {
            if k % r.p() == 0 {
                continue;
            }
            checked += 1;
            if oracle::roots_of_unity(&r, k) != r.roots_of_unity(k)? {
                bad.push(format!("{} k={k}", r.spec()));
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (ring, k) pairs{}", fmt_bad(&bad)))
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; mismatches: {}", bad.join(", "))
    }
}

fn aut_table(a: &RingAut) -> Vec<RingElem> {
    a.ring().elements().map(|x| a.apply(x)).collect()
}

fn oracle_automorphisms() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for r in ring_list() {
        let brute: Vec<Vec<RingElem>> = oracle::ring_automorphisms(&r).into_iter().map(|a| a.table).collect();
        let mut fast: Vec<Vec<RingElem>> = ring_automorphisms(&r)?.iter().map(aut_table).collect();
        fast.sort();
        if brute != fast {
            bad.push(format!("{} ({} vs {})", r.spec(), brute.len(), fast.len()));
        }
        parts.push(format!("{}:{}", r.spec(), brute.len()));
    }
    verdict(bad.is_empty(), format!("{}{}", parts.join(" "), fmt_bad(&bad)))
}

fn pink_inputs() -> Result<Vec<(String, GroupTable)>> {
    let mut out = Vec::new();
    let congruence = |r: &Ring, gen: RingElem| -> Result<GroupTable> {
        let s = Subring::whole(r);
        congruence_subgroup(&s, &s.ideal(&[gen]))
    };
    let z9 = ring(3, 2, 1);
    let z27 = ring(3, 3, 1);
    let w9 = ring(3, 2, 2);
    let f9t = ring_ext(3, 1, 2, "t", &[0, 0, 1]);
    let z9u = ring_ext(3, 2, 1, "u", &[-3, 0, 1]);
    out.push(("Gamma_Z/9(3)".to_string(), congruence(&z9, z9.from_int(3))?));
    out.push(("Gamma_Z/27(3)".to_string(), congruence(&z27, z27.from_int(3))?));
    out.push(("Gamma_Z/27(9)".to_string(), congruence(&z27, z27.from_int(9))?));
    out.push(("Gamma_W(F9)/9(3)".to_string(), congruence(&w9, w9.from_int(3))?));
    out.push(("Gamma_F9[t]/(t^2)(t)".to_string(), congruence(&f9t, f9t.u().expect("t"))?));
    out.push(("Gamma_Z/9[u](3)".to_string(), congruence(&z9u, z9u.from_int(3))?));
    let s = Subring::whole(&z27);
    let pool = congruence_elements(&s, &s.ideal(&[z27.from_int(3)]))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    for k in 0..6 {
        let gens = [pool[rng.gen_range(0..pool.len())], pool[rng.gen_range(0..pool.len())]];
        out.push((format!("random_z27_{k}"), GroupTable::close(&z27, &gens)?));
    }
    Ok(out)
}

fn oracle_pink() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for (name, g) in pink_inputs()? {
        let fast = pink_filtration(&g, 3)?;
        let brute = oracle::pink_filtration_sets(&g, 3);
        let sizes: Vec<usize> = brute.iter().map(|s| s.len()).collect();
        for (n, (a, b)) in fast.iter().zip(&brute).enumerate() {
            let a: BTreeSet<Mat2> = a.elements().into_iter().collect();
            if a != *b {
                bad.push(format!("{name} L{}", n + 1));
            }
        }
        parts.push(format!("{name}:{sizes:?}"));
    }
    verdict(bad.is_empty(), format!("{}{}", parts.join(" "), fmt_bad(&bad)))
}

/// Brute twist search budget, in generator assignments times group order.
const TWIST_ORACLE_BUDGET: u128 = 2_000_000_000;

fn oracle_twists() -> Result<Outcome> {
    let mut reps: Vec<(String, MatrixRep)> =
        corpus::residual_examples()?.into_iter().map(|e| (e.id.to_string(), e.rep)).collect();
    reps.push(("dihedral_f7u".into(), corpus::dihedral_kernel_example()?.0));
    reps.push(("level_z9".into(), corpus::level_three_example(2)?));
    let z9 = ring(3, 2, 1);
    let [a, _] = sl2_generators(&z9);
    reps.push(("borel_z9".into(), corpus::generated(&z9, &[a, Mat2::from_ints(&z9, [2, 0, 0, 1])])?));
    let w9 = ring(3, 2, 2);
    reps.push(("scalar_w9".into(), corpus::generated(&w9, &[Mat2::diag(&w9, w9.x(), w9.one()), Mat2::from_ints(&w9, [0, 1, 1, 0])])?));
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    let mut skipped = 0;
    for (name, rho) in reps {
        let r = rho.ring().clone();
        if r.size() > 729 {
            skipped += 1;
            continue;
        }
        let pr = rho.pseudo();
        if oracle::twist_search_size(&pr) > TWIST_ORACLE_BUDGET {
            skipped += 1;
            continue;
        }
        let brute_auts = oracle::ring_automorphisms(&r);
        let brute = oracle::twist_pairs(&pr, &brute_auts);
        let fast_auts = ring_automorphisms(&r)?;
        let tg = twist_group(&pr, &fast_auts)?;
        let mut fast: Vec<oracle::BrutePair> = tg
            .pairs()
            .iter()
            .map(|p| {
                let table = aut_table(&p.sigma);
                let aut = brute_auts.iter().position(|b| b.table == table).unwrap_or(usize::MAX);
                oracle::BrutePair { aut, eta: p.eta.values().to_vec() }
            })
            .collect();
        fast.sort();
        if fast != brute {
            bad.push(format!("{name} ({} vs {})", brute.len(), fast.len()));
        }
        parts.push(format!("{name}:{}", brute.len()));
    }
    verdict(bad.is_empty(), format!("{} (skipped {skipped}){}", parts.join(" "), fmt_bad(&bad)))
}

fn bellaiche_octahedral() -> Result<Outcome> {
    let (rho, adapted) = corpus::bellaiche_example()?;
    let report = bellaiche_structure_check(&rho, &adapted)?;
    let summary: Vec<String> =
        report.clauses.iter().map(|c| format!("({}) {}", c.clause, if c.passed { "ok" } else { "fails" })).collect();
    let graded = report.graded.as_ref().map_or("n/a".to_string(), |g| g.passed.to_string());
    verdict(report.all_passed(), format!("{}; graded {graded}", summary.join(" ")))
}

fn bellaiche_rejects_gl2() -> Result<Outcome> {
    let rho = corpus::gl2_z9()?;
    let r = rho.ring().clone();
    let d = Mat2::from_ints(&r, [2, 0, 0, 1]);
    let g0 = rho.group().index_of(&d).ok_or_else(|| Error::Inconsistent("diag(2,1) missing".into()))?;
    let f = r.residue_field();
    let adapted = crate::pink::Adaptation { g0, lambda0: f.from_int(2), mu0: f.one() };
    match bellaiche_structure_check(&rho, &adapted) {
        Err(Error::Precondition(msg)) if msg.contains("admissibility clause") => verdict(true, msg),
        Err(e) => verdict(false, format!("unexpected error: {e}")),
        Ok(_) => verdict(false, "GL2(Z/9) was accepted as admissible"),
    }
}

fn dihedral_kernel() -> Result<Outcome> {
    let (rho, sigma) = corpus::dihedral_kernel_example()?;
    let r = rho.ring().clone();
    let pr = rho.pseudo();
    let tg = twist_group(&pr, &ring_automorphisms(&r)?)?;
    let red = reduce_twists(&tg, &pr)?;
    let tau = tg
        .pairs()
        .iter()
        .find(|p| p.sigma == sigma)
        .cloned()
        .ok_or_else(|| Error::Inconsistent("u -> -u does not occur in a twist".into()))?;
    let pm = plus_minus_verify(&pr, &rho, &tau)?;
    let id_rejected = plus_minus_verify(&pr, &rho, &TwistPair::identity(&r, pr.group().len())).is_err();
    verdict(
        red.kernel_size() == 2 && red.raw_kernel.len() == 1 && pm.passed() && id_rejected,
        format!(
            "|Sigma_t| = {}, kernel {} (raw {}), plus matches {}, minus matches {}, identity rejected {id_rejected}",
            tg.len(),
            red.kernel_size(),
            red.raw_kernel.len(),
            pm.plus_matches(),
            pm.minus_matches()
        ),
    )
}

fn level_examples() -> Result<Outcome> {
    let z9 = ring(3, 2, 1);
    let s = Subring::whole(&z9);
    let [u, l] = sl2_generators(&z9);
    let sl2 = GroupTable::close(&z9, &[u, l])?;
    let g3 = congruence_subgroup(&s, &s.ideal(&[z9.from_int(3)]))?;
    let borel = GroupTable::close(&z9, &[u, Mat2::from_ints(&z9, [2, 0, 0, 5])])?;
    let sizes: Vec<u128> = [&sl2, &g3, &borel]
        .iter()
        .map(|g| level_detector(g, &s, None).map(|rep| rep.ideal.cardinality()))
        .collect::<Result<_>>()?;
    verdict(sizes == [9, 3, 1], format!("level sizes SL2 / Gamma(3) / Borel: {sizes:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_sorted_and_unique() {
        let all = instances();
        let ids: Vec<&str> = all.iter().map(|i| i.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        for c in 1..=14u8 {
            assert!(all.iter().any(|i| i.criterion == Some(c)), "criterion {c}");
        }
    }

    #[test]
    fn adjoint_filter_selects_only_adjoint_instances() {
        let all = instances();
        let hits: Vec<_> = all.iter().filter(|i| i.filter_text().contains("adjoint")).collect();
        assert_eq!(hits.len(), 2);
        assert!(hits.iter().all(|i| i.criterion == Some(4)));
    }
}
