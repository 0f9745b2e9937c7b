//! Nilpotency criteria for Lie algebras with a dihedral group of order 8
//! acting: homogeneous elements of `L_α`, the `(m, n)` profile, and checks
//! of the supporting lemmas on four-group graded algebras.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::fplinalg::{self, FpSubspace};
use crate::lie::{
    ad_index, class_of, derived_length, fixed_space, generate, lie_centralizer, nilpotency_class, v_grading,
    GenerateMode, LieAction, LieAlgebra, LieError, VGrading,
};
use crate::report::{Status, VerificationReport};

/// Default bound on the number of vectors enumerated per weight.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Components up to this many vectors are scanned in full by the lemma
/// checks; larger ones are sampled.
pub const FULL_COMPONENT_SCAN: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("action has no alpha")]
    NeedsAlpha,
    #[error("x1 does not lie in L_1")]
    NotInL1,
    #[error("x1 and its alpha-image generate a subalgebra of dimension {0}, not the whole algebra")]
    NotGenerating(usize),
    #[error("weight {weight}: {count} vectors in W_w ∩ L_alpha exceed the cap {cap}")]
    CapExceeded { weight: usize, count: u64, cap: u64 },
    #[error("some homogeneous element of L_alpha is not ad-nilpotent or some pair generates a non-nilpotent subalgebra")]
    Unbounded,
    #[error("algebra is not soluble")]
    NotSoluble,
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<fplinalg::LinalgError> for CriterionError {
    fn from(e: fplinalg::LinalgError) -> Self {
        CriterionError::Lie(LieError::from(e))
    }
}

/// Lie polynomials of each weight in `{x_1, x_2}` and their `α`-fixed parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousElements {
    pub x1: Vec<u32>,
    pub x2: Vec<u32>,
    /// `weights[w - 1] = W_w`, up to the last nonzero weight.
    pub weights: Vec<FpSubspace>,
    /// `W_w ∩ L_α`.
    pub alpha_parts: Vec<FpSubspace>,
    /// Every vector of `W_w ∩ L_α`; empty for weights over the cap.
    pub elements: Vec<Vec<Vec<u32>>>,
    pub cap_exceeded: bool,
    /// `W_w` was still nonzero at weight `dim + 1`.
    pub truncated: bool,
}

fn alpha_of(action: &LieAction) -> Result<&crate::fplinalg::FpMatrix, CriterionError> {
    action.alpha.as_ref().ok_or(CriterionError::NeedsAlpha)
}

pub fn homogeneous_alpha_elements(
    l: &LieAlgebra,
    action: &LieAction,
    x1: &[u32],
    cap: u64,
) -> Result<HomogeneousElements, CriterionError> {
    let alpha = alpha_of(action)?;
    let grading = v_grading(l, action)?;
    if x1.len() != l.dim() || !grading.component(1).member(x1) {
        return Err(CriterionError::NotInL1);
    }
    let x2 = alpha.apply(x1);
    let fixed = fixed_space(l, &[alpha]);
    let mut weights: Vec<FpSubspace> = Vec::new();
    let w1 = l.span(&[x1, &x2[..]]);
    let mut truncated = false;
    if !w1.is_zero() {
        weights.push(w1);
        for w in 2..=l.dim() + 1 {
            let mut ww = l.zero_space();
            for a in 1..w {
                ww = ww.sum(&l.bracket_space(&weights[a - 1], &weights[w - a - 1]))?;
            }
            if ww.is_zero() {
                break;
            }
            weights.push(ww);
            truncated = w == l.dim() + 1;
        }
    }
    let alpha_parts: Vec<FpSubspace> = weights.iter().map(|w| w.intersect(&fixed)).collect::<Result<_, _>>()?;
    let mut cap_exceeded = false;
    let elements = alpha_parts
        .iter()
        .map(|a| match a.enumerate(cap) {
            Ok(v) => v,
            Err(_) => {
                cap_exceeded = true;
                Vec::new()
            }
        })
        .collect();
    Ok(HomogeneousElements { x1: x1.to_vec(), x2, weights, alpha_parts, elements, cap_exceeded, truncated })
}

/// `v` scaled so its first nonzero coordinate is 1.
fn normalize(v: &[u32], p: u32) -> Vec<u32> {
    match v.iter().find(|&&c| c != 0) {
        None => v.to_vec(),
        Some(&c) => fplinalg::scale(v, fplinalg::inv(c, p), p),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisProfile {
    pub x1: Vec<u32>,
    pub x2: Vec<u32>,
    pub weight_dims: Vec<usize>,
    pub alpha_dims: Vec<usize>,
    /// Largest ad-index over homogeneous elements of `L_α`.
    pub m: Option<usize>,
    /// Largest class of a subalgebra generated by two such elements.
    pub n: Option<usize>,
    /// Nonzero homogeneous `L_α` elements up to scalars.
    pub element_count: usize,
    pub pair_count: usize,
    pub truncated: bool,
}

pub fn hypothesis_profile(
    l: &LieAlgebra,
    action: &LieAction,
    x1: &[u32],
    cap: u64,
) -> Result<HypothesisProfile, CriterionError> {
    let h = homogeneous_alpha_elements(l, action, x1, cap)?;
    let gen = generate(l, &[&h.x1, &h.x2], GenerateMode::Subalgebra, None)?;
    if !gen.space.is_full() {
        return Err(CriterionError::NotGenerating(gen.dim()));
    }
    if let Some(w) = h.elements.iter().position(|e| e.is_empty()) {
        return Err(CriterionError::CapExceeded {
            weight: w + 1,
            count: h.alpha_parts[w].cardinality().unwrap_or(u64::MAX),
            cap,
        });
    }
    let p = l.prime();
    let reps: BTreeSet<Vec<u32>> = h
        .elements
        .iter()
        .flatten()
        .filter(|v| !fplinalg::is_zero(v))
        .map(|v| normalize(v, p))
        .collect();
    let reps: Vec<Vec<u32>> = reps.into_iter().collect();
    let mut m = Some(1);
    for a in &reps {
        m = match (m, ad_index(l, a)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        };
    }
    let mut n = Some(if l.dim() == 0 { 0 } else { usize::from(!reps.is_empty()) });
    let mut pair_count = 0;
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i..] {
            pair_count += 1;
            let s = generate(l, &[a, b], GenerateMode::Subalgebra, None)?;
            n = match (n, class_of(l, &s.space)) {
                (Some(x), Some(y)) => Some(x.max(y)),
                _ => None,
            };
        }
    }
    Ok(HypothesisProfile {
        x1: h.x1,
        x2: h.x2,
        weight_dims: h.weights.iter().map(FpSubspace::dim).collect(),
        alpha_dims: h.alpha_parts.iter().map(FpSubspace::dim).collect(),
        m,
        n,
        element_count: reps.len(),
        pair_count,
        truncated: h.truncated,
    })
}

/// The first `x ∈ L_1` (up to scalars, in enumeration order) with
/// `⟨x, x^α⟩ = L`.
pub fn find_generating_x1(l: &LieAlgebra, action: &LieAction, cap: u64) -> Result<Option<Vec<u32>>, CriterionError> {
    let alpha = alpha_of(action)?;
    let grading = v_grading(l, action)?;
    let p = l.prime();
    for x in grading.component(1).enumerate(cap).map_err(LieError::from)? {
        if fplinalg::is_zero(&x) || normalize(&x, p) != x {
            continue;
        }
        let x2 = alpha.apply(&x);
        if generate(l, &[&x, &x2], GenerateMode::Subalgebra, None)?.space.is_full() {
            return Ok(Some(x));
        }
    }
    Ok(if l.dim() == 0 { Some(Vec::new()) } else { None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionRecord {
    pub m: usize,
    pub n: usize,
    /// Derived length, for the soluble variant.
    pub k: Option<usize>,
    pub nilpotent: bool,
    pub class: Option<usize>,
    /// Hypotheses hold with finite `m`, `n` but the algebra is not
    /// nilpotent.
    pub finding: bool,
}

pub fn check_proposition_lie(
    l: &LieAlgebra,
    action: &LieAction,
    x1: &[u32],
    cap: u64,
) -> Result<PropositionRecord, CriterionError> {
    let prof = hypothesis_profile(l, action, x1, cap)?;
    let (m, n) = prof.m.zip(prof.n).ok_or(CriterionError::Unbounded)?;
    let class = nilpotency_class(l);
    Ok(PropositionRecord { m, n, k: None, nilpotent: class.is_some(), class, finding: class.is_none() })
}

pub fn check_proposition_4(
    l: &LieAlgebra,
    action: &LieAction,
    x1: &[u32],
    cap: u64,
) -> Result<PropositionRecord, CriterionError> {
    let k = derived_length(l).ok_or(CriterionError::NotSoluble)?;
    let mut rec = check_proposition_lie(l, action, x1, cap)?;
    rec.k = Some(k);
    Ok(rec)
}

/// Elements of a component used as quantifier domains: everything up to
/// scalars when small, otherwise basis vectors and `b_a + μ b_b`.
fn component_sample(space: &FpSubspace) -> (Vec<Vec<u32>>, bool) {
    let p = space.prime();
    if space.cardinality().is_some_and(|c| c <= FULL_COMPONENT_SCAN) {
        let all = space.enumerate(FULL_COMPONENT_SCAN).unwrap();
        let reps: BTreeSet<Vec<u32>> =
            all.iter().filter(|v| !fplinalg::is_zero(v)).map(|v| normalize(v, p)).collect();
        return (reps.into_iter().collect(), true);
    }
    let basis: Vec<Vec<u32>> = space.basis_vectors().map(<[u32]>::to_vec).collect();
    let mut out = basis.clone();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            for mu in 1..p {
                let mut v = basis[a].clone();
                fplinalg::axpy(&mut v, mu, &basis[b], p);
                out.push(v);
            }
        }
    }
    (out, false)
}

/// Lemmas on commuting component elements, ideals of ad-nilpotent
/// component elements, and centralizers of component elements.
pub fn verify_sec2_lemmas(l: &LieAlgebra, action: &LieAction) -> Result<VerificationReport, CriterionError> {
    let grading = v_grading(l, action)?;
    let mut r = VerificationReport::new("sec2");
    let samples: Vec<(Vec<Vec<u32>>, bool)> = (1..=3).map(|i| component_sample(grading.component(i))).collect();
    let scope = if samples.iter().all(|s| s.1) { "all component elements" } else { "sampled component elements" };
    lemma_991(l, &grading, &samples, scope, &mut r)?;
    lemma_992(l, &samples, scope, &mut r)?;
    lemma_rrr(l, &grading, &samples, scope, &mut r);
    Ok(r)
}

fn lemma_991(
    l: &LieAlgebra,
    grading: &VGrading,
    samples: &[(Vec<Vec<u32>>, bool)],
    scope: &str,
    r: &mut VerificationReport,
) -> Result<(), CriterionError> {
    let mut pairs = 0;
    let mut bad = None;
    for i in 1..=3 {
        let li: Vec<Vec<u32>> = grading.component(i).basis_vectors().map(<[u32]>::to_vec).collect();
        for j in (1..=3).filter(|&j| j != i) {
            for a in &samples[i - 1].0 {
                for b in &samples[j - 1].0 {
                    if !fplinalg::is_zero(&l.bracket(a, b)) {
                        continue;
                    }
                    pairs += 1;
                    let seeds: Vec<Vec<u32>> = li.iter().map(|u| l.bracket(b, u)).collect();
                    let ideal = generate(l, &seeds, GenerateMode::Ideal, None)?;
                    let ok = ideal.space.basis_vectors().all(|v| fplinalg::is_zero(&l.bracket(a, v)));
                    if !ok && bad.is_none() {
                        bad = Some(format!("a in L_{i}, b in L_{j}: I([b, L_{i}]) does not centralize a"));
                    }
                }
            }
        }
    }
    r.check(
        "lemma_991",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{pairs} commuting pairs over {scope}")),
    );
    Ok(())
}

fn lemma_992(
    l: &LieAlgebra,
    samples: &[(Vec<Vec<u32>>, bool)],
    scope: &str,
    r: &mut VerificationReport,
) -> Result<(), CriterionError> {
    let mut checked = 0;
    let mut max_class = 0;
    let mut witness: Option<(usize, usize)> = None;
    let mut bad = None;
    for (a, _) in samples.iter().flat_map(|s| s.0.iter().map(move |a| (a, s.1))) {
        let Some(m) = ad_index(l, a) else { continue };
        checked += 1;
        let ideal = generate(l, &[a], GenerateMode::Ideal, None)?;
        match class_of(l, &ideal.space) {
            Some(c) if c + 1 <= 2 * m => {
                max_class = max_class.max(c);
                if c >= 1 && witness.is_none_or(|(wc, _)| c > wc) {
                    witness = Some((c, m));
                }
            }
            c => {
                bad.get_or_insert(format!("class {c:?} exceeds 2m - 1 = {}", 2 * m - 1));
            }
        }
    }
    r.check(
        "lemma_992",
        bad.is_none(),
        bad.unwrap_or_else(|| match witness {
            Some((c, m)) => format!("{checked} elements over {scope}; witness class {c} <= 2*{m} - 1"),
            None => format!("{checked} elements over {scope}; all ideals zero"),
        }),
    );
    r.measure("lemma_992_max_class", max_class);
    r.measure("lemma_992_witness", witness.map(|(c, m)| alloc::vec![c as u64, m as u64]));
    Ok(())
}

fn lemma_rrr(
    l: &LieAlgebra,
    grading: &VGrading,
    samples: &[(Vec<Vec<u32>>, bool)],
    scope: &str,
    r: &mut VerificationReport,
) {
    let mut checked = 0;
    let mut ok = true;
    for (y, _) in samples.iter().flat_map(|s| s.0.iter().map(move |y| (y, s.1))) {
        let c = lie_centralizer(l, &[y]);
        for x in c.space.basis_vectors() {
            checked += 1;
            ok &= grading.project(x).iter().all(|xk| fplinalg::is_zero(&l.bracket(y, xk)));
        }
    }
    r.check("lemma_rrr", ok, format!("{checked} centralizer basis vectors over {scope}"));
}

/// Report entry for the nilpotency criterion: pass when nilpotent,
/// finding when the hypotheses hold but the algebra is not nilpotent.
pub fn proposition_entry(r: &mut VerificationReport, name: &str, rec: &PropositionRecord) {
    let status = if rec.finding { Status::Finding } else { Status::Pass };
    let class = rec.class.map_or_else(|| String::from("none (not nilpotent)"), |c| format!("{c}"));
    r.push(name, status, format!("m = {}, n = {}, class {class}", rec.m, rec.n));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::fplinalg::FpMatrix;
    use crate::jennings::{build_dl, induce_action};
    use proptest::prelude::*;

    fn heis_lp(p: u32) -> (LieAlgebra, LieAction) {
        let f = fixtures::heisenberg_d8(p).unwrap();
        let dl = build_dl(&f.group, p).unwrap();
        let act = induce_action(&f.group, &dl, &f.action).unwrap();
        (dl.algebra, act)
    }

    /// Reference (m, n): every vector of W_w ∩ L_α for each weight, every
    /// ordered pair, without projective reduction.
    fn oracle_mn(l: &LieAlgebra, act: &LieAction, x1: &[u32]) -> (usize, usize) {
        let h = homogeneous_alpha_elements(l, act, x1, DEFAULT_CAP).unwrap();
        let all: Vec<&Vec<u32>> = h.elements.iter().flatten().collect();
        let m = all.iter().map(|a| ad_index(l, a).unwrap()).max().unwrap();
        let mut n = 0;
        for a in &all {
            for b in &all {
                let s = generate(l, &[a, b], GenerateMode::Subalgebra, None).unwrap();
                n = n.max(class_of(l, &s.space).unwrap());
            }
        }
        (m, n)
    }

    #[test]
    fn heisenberg_homogeneous_elements() {
        let (l, act) = heis_lp(3);
        let h = homogeneous_alpha_elements(&l, &act, &[1, 0, 0], DEFAULT_CAP).unwrap();
        assert_eq!(h.elements[0], alloc::vec![alloc::vec![0, 0, 0], alloc::vec![1, 1, 0], alloc::vec![2, 2, 0]]);
        assert_eq!(h.elements[1], alloc::vec![alloc::vec![0, 0, 0]]);
        assert_eq!(h.weights.len(), 2);
        let h = homogeneous_alpha_elements(&l, &act, &[1, 0, 0], 1).unwrap();
        assert!(h.cap_exceeded);
        assert_eq!(homogeneous_alpha_elements(&l, &act, &[0, 1, 0], 10), Err(CriterionError::NotInL1));
    }

    #[test]
    fn heisenberg_profile_matches_oracle() {
        for p in [3, 5, 7] {
            let (l, act) = heis_lp(p);
            let prof = hypothesis_profile(&l, &act, &[1, 0, 0], DEFAULT_CAP).unwrap();
            assert_eq!((prof.m, prof.n), (Some(2), Some(1)));
            assert_eq!(Some(oracle_mn(&l, &act, &[1, 0, 0])), prof.m.zip(prof.n));
            let rec = check_proposition_lie(&l, &act, &[1, 0, 0], DEFAULT_CAP).unwrap();
            assert_eq!((rec.nilpotent, rec.class, rec.finding), (true, Some(2), false));
            let rec = check_proposition_4(&l, &act, &[1, 0, 0], DEFAULT_CAP).unwrap();
            assert_eq!(rec.k, Some(2));
        }
    }

    #[test]
    fn abelian_profile() {
        let p = 3;
        let l = LieAlgebra::abelian(p, 2).unwrap();
        // L_1 = <e1>, L_2 = <e2>, α swaps them; L_3 = 0
        let act = LieAction {
            v1: FpMatrix::from_rows(p, 2, &[[1, 0], [0, -1]]),
            v2: FpMatrix::from_rows(p, 2, &[[-1, 0], [0, 1]]),
            alpha: Some(FpMatrix::from_rows(p, 2, &[[0, 1], [1, 0]])),
            beta: None,
        };
        let prof = hypothesis_profile(&l, &act, &[1, 0], DEFAULT_CAP).unwrap();
        assert_eq!((prof.m, prof.n), (Some(1), Some(1)));
        let rec = check_proposition_4(&l, &act, &[1, 0], DEFAULT_CAP).unwrap();
        assert_eq!((rec.k, rec.class), (Some(1), Some(1)));
        assert!(verify_sec2_lemmas(&l, &act).unwrap().passed());
    }

    #[test]
    fn cube_is_not_generated_by_one_orbit() {
        let f = fixtures::cube_s4(3).unwrap();
        let dl = build_dl(&f.group, 3).unwrap();
        let act = induce_action(&f.group, &dl, &f.action).unwrap();
        let x1 = find_generating_x1(&dl.algebra, &act, DEFAULT_CAP).unwrap();
        assert_eq!(x1, None);
        let l1 = v_grading(&dl.algebra, &act).unwrap().components[0].basis_vectors().next().unwrap().to_vec();
        assert_eq!(hypothesis_profile(&dl.algebra, &act, &l1, DEFAULT_CAP), Err(CriterionError::NotGenerating(2)));
    }

    #[test]
    fn sec2_on_heisenberg() {
        let (l, act) = heis_lp(3);
        let r = verify_sec2_lemmas(&l, &act).unwrap();
        assert!(r.passed(), "{r:?}");
        // I(x) = <x, z> is abelian: class 1 <= 2*2 - 1
        assert_eq!(r.get("lemma_992_max_class"), Some(&1usize.into()));
    }

    #[test]
    fn non_soluble_rejected() {
        // sl2 over F_5 with v1 = diag(1, 1, ... ) is not fpf; use the
        // four-group of sign changes on the basis h, e+f, e-f
        let p = 5;
        // so(3) basis: [a,b] = c, [b,c] = a, [c,a] = b; V = diagonal signs
        let l = LieAlgebra::new(p, 3, &[(0, 1, alloc::vec![0, 0, 1]), (1, 2, alloc::vec![1, 0, 0]), (0, 2, alloc::vec![0, 4, 0])])
            .unwrap();
        let act = LieAction {
            v1: FpMatrix::from_rows(p, 3, &[[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
            v2: FpMatrix::from_rows(p, 3, &[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
            alpha: Some(FpMatrix::from_rows(p, 3, &[[0, 1, 0], [1, 0, 0], [0, 0, -1]])),
            beta: None,
        };
        assert_eq!(check_proposition_4(&l, &act, &[1, 0, 0], DEFAULT_CAP), Err(CriterionError::NotSoluble));
        // not nilpotent: the profile is unbounded, so the proposition does not apply
        assert_eq!(check_proposition_lie(&l, &act, &[1, 0, 0], DEFAULT_CAP), Err(CriterionError::Unbounded));
        assert!(verify_sec2_lemmas(&l, &act).unwrap().passed());
    }

    proptest! {
        #[test]
        fn ad_index_invariant_under_automorphisms(a in proptest::collection::vec(0u32..5, 3)) {
            let (l, act) = heis_lp(5);
            for (_, m) in act.generators() {
                prop_assert_eq!(ad_index(&l, &a), ad_index(&l, &m.apply(&a)));
            }
        }
    }
}
