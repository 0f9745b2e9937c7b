//! Actions of the four-group V, the dihedral group D₈ and the symmetric
//! group S₄ on a finite group by automorphisms.
//!
//! Automorphisms act on the right: `x^φ = mapping[x]`, and the product
//! `φψ` applies `φ` first.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::group::{gcd_u64, FiniteGroup, GroupError, Quotient, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("mapping `{name}` has length {len}, group order is {order}")]
    WrongLength { name: &'static str, len: usize, order: usize },
    #[error("mapping `{0}` is not a permutation of the element indices")]
    NotPermutation(&'static str),
    #[error("acting type {0} needs generator `{1}`")]
    MissingGenerator(ActingType, &'static str),
    #[error("subgroup is not invariant under the action")]
    NotInvariant,
    #[error("seed is not contained in the enclosing subgroup")]
    SeedNotContained,
    #[error("operation needs an involution alpha (D8 or S4 action)")]
    NeedsAlpha,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActingType {
    V,
    D8,
    S4,
}

impl ActingType {
    pub fn order(self) -> usize {
        match self {
            ActingType::V => 4,
            ActingType::D8 => 8,
            ActingType::S4 => 24,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ActingType::V => "V",
            ActingType::D8 => "D8",
            ActingType::S4 => "S4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "V" => Some(ActingType::V),
            "D8" => Some(ActingType::D8),
            "S4" => Some(ActingType::S4),
            _ => None,
        }
    }
}

impl fmt::Display for ActingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A permutation of element indices, claimed to be an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    mapping: Vec<usize>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism { mapping: (0..order).collect() }
    }

    /// Checks the mapping is a bijection of `0..order`.
    pub fn from_mapping(
        name: &'static str,
        mapping: Vec<usize>,
        order: usize,
    ) -> Result<Self, ActionError> {
        if mapping.len() != order {
            return Err(ActionError::WrongLength { name, len: mapping.len(), order });
        }
        let mut seen = vec![false; order];
        for &y in &mapping {
            if y >= order || seen[y] {
                return Err(ActionError::NotPermutation(name));
            }
            seen[y] = true;
        }
        Ok(Automorphism { mapping })
    }

    pub(crate) fn from_mapping_unchecked(mapping: Vec<usize>) -> Self {
        Automorphism { mapping }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism { mapping: self.mapping.iter().map(|&x| other.mapping[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut m = vec![0; self.mapping.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            m[y] = x;
        }
        Automorphism { mapping: m }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `g^self = self⁻¹ · g · self` in the automorphism group.
    pub fn conjugate_by(&self, g: &Automorphism) -> Automorphism {
        g.inverse().then(self).then(g)
    }

    /// Multiplicativity over all pairs and identity fixed.
    pub fn is_automorphism_of(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        if self.mapping.len() != n || self.mapping[0] != 0 {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| self.mapping[g.mul(a, b)] == g.mul(self.mapping[a], self.mapping[b])))
    }

    pub fn order(&self) -> usize {
        let id = Automorphism::identity(self.mapping.len());
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.then(self);
            k += 1;
        }
        k
    }

    /// Image of a subgroup's member set.
    pub fn maps_into(&self, h: &Subgroup, target: &Subgroup) -> bool {
        h.members().iter().all(|&x| target.contains(self.mapping[x]))
    }

    pub fn preserves(&self, h: &Subgroup) -> bool {
        self.maps_into(h, h)
    }
}

/// Named generators of the acting group. `v3` is always `v1·v2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub acting_type: ActingType,
    pub v1: Automorphism,
    pub v2: Automorphism,
    /// Involution outside V (D8, S4).
    pub alpha: Option<Automorphism>,
    /// Element of order 3 (S4).
    pub beta: Option<Automorphism>,
}

impl ActionSpec {
    pub fn four_group(v1: Automorphism, v2: Automorphism) -> Self {
        ActionSpec { acting_type: ActingType::V, v1, v2, alpha: None, beta: None }
    }

    pub fn dihedral(v1: Automorphism, v2: Automorphism, alpha: Automorphism) -> Self {
        ActionSpec { acting_type: ActingType::D8, v1, v2, alpha: Some(alpha), beta: None }
    }

    pub fn symmetric(
        v1: Automorphism,
        v2: Automorphism,
        alpha: Automorphism,
        beta: Automorphism,
    ) -> Self {
        ActionSpec { acting_type: ActingType::S4, v1, v2, alpha: Some(alpha), beta: Some(beta) }
    }

    /// Identity maps with the given acting type.
    pub fn trivial(acting_type: ActingType, order: usize) -> Self {
        let id = Automorphism::identity(order);
        let opt = |b: bool| b.then(|| id.clone());
        ActionSpec {
            acting_type,
            v1: id.clone(),
            v2: id.clone(),
            alpha: opt(acting_type != ActingType::V),
            beta: opt(acting_type == ActingType::S4),
        }
    }

    pub fn v3(&self) -> Automorphism {
        self.v1.then(&self.v2)
    }

    /// `v_i` for `i ∈ {1, 2, 3}`.
    pub fn v(&self, i: usize) -> Automorphism {
        match i {
            1 => self.v1.clone(),
            2 => self.v2.clone(),
            3 => self.v3(),
            _ => panic!("four-group involutions are indexed 1..=3"),
        }
    }

    pub fn alpha(&self) -> Result<&Automorphism, ActionError> {
        self.alpha.as_ref().ok_or(ActionError::NeedsAlpha)
    }

    /// Named generators in a fixed order.
    pub fn generators(&self) -> Vec<(&'static str, &Automorphism)> {
        let mut out = vec![("v1", &self.v1), ("v2", &self.v2)];
        if let Some(a) = &self.alpha {
            out.push(("alpha", a));
        }
        if let Some(b) = &self.beta {
            out.push(("beta", b));
        }
        out
    }

    fn check_shape(&self) -> Result<(), ActionError> {
        match self.acting_type {
            ActingType::V => Ok(()),
            ActingType::D8 => self.alpha.as_ref().map(|_| ()).ok_or(ActionError::MissingGenerator(ActingType::D8, "alpha")),
            ActingType::S4 => {
                if self.alpha.is_none() {
                    return Err(ActionError::MissingGenerator(ActingType::S4, "alpha"));
                }
                self.beta.as_ref().map(|_| ()).ok_or(ActionError::MissingGenerator(ActingType::S4, "beta"))
            }
        }
    }

    /// The elements of V as automorphisms: `[1, v1, v2, v3]`.
    pub fn four_group_elements(&self) -> Vec<Automorphism> {
        vec![Automorphism::identity(self.v1.mapping.len()), self.v1.clone(), self.v2.clone(), self.v3()]
    }

    /// Closure of the named generators under composition, sorted.
    pub fn acting_elements(&self) -> Vec<Automorphism> {
        let gens: Vec<&Automorphism> = self.generators().into_iter().map(|(_, a)| a).collect();
        let mut elems = vec![Automorphism::identity(self.v1.mapping.len())];
        let mut i = 0;
        while i < elems.len() {
            for g in &gens {
                let y = elems[i].then(g);
                if !elems.contains(&y) {
                    elems.push(y);
                }
            }
            i += 1;
            // a malformed spec could generate a huge group; S4 has 24 elements
            if elems.len() > 48 {
                break;
            }
        }
        elems.sort();
        elems
    }

    /// Restriction to an invariant subgroup, re-indexed by `embedding`
    /// (new index → parent index).
    pub fn restrict(&self, embedding: &[usize], parent_order: usize) -> ActionSpec {
        let mut pos = vec![usize::MAX; parent_order];
        for (i, &x) in embedding.iter().enumerate() {
            pos[x] = i;
        }
        let r = |a: &Automorphism| {
            Automorphism::from_mapping_unchecked(embedding.iter().map(|&x| pos[a.apply(x)]).collect())
        };
        ActionSpec {
            acting_type: self.acting_type,
            v1: r(&self.v1),
            v2: r(&self.v2),
            alpha: self.alpha.as_ref().map(r),
            beta: self.beta.as_ref().map(r),
        }
    }

    /// The action induced on a quotient by an invariant normal subgroup.
    pub fn induced_on(&self, q: &Quotient) -> ActionSpec {
        let r = |a: &Automorphism| {
            Automorphism::from_mapping_unchecked(
                q.representatives.iter().map(|&x| q.projection[a.apply(x)]).collect(),
            )
        };
        ActionSpec {
            acting_type: self.acting_type,
            v1: r(&self.v1),
            v2: r(&self.v2),
            alpha: self.alpha.as_ref().map(r),
            beta: self.beta.as_ref().map(r),
        }
    }

    pub fn preserves(&self, h: &Subgroup) -> bool {
        self.generators().iter().all(|(_, a)| a.preserves(h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub well_defined: bool,
    pub relations_hold: bool,
    /// The named maps generate a copy of the abstract acting group.
    pub faithful: bool,
    /// `gcd(|G|, |A|) = 1`; informational, the S₄ results do not need it.
    pub coprime: bool,
    pub fpf_on_v: bool,
    /// Order of the group generated by the named automorphisms.
    pub acting_order: usize,
    pub issues: Vec<String>,
}

impl ActionReport {
    /// Everything the fixed-point-free theory needs. Coprimality is not
    /// required.
    pub fn hypotheses_hold(&self) -> bool {
        self.well_defined && self.relations_hold && self.faithful && self.fpf_on_v
    }
}

/// Checks the named maps are automorphisms, satisfy the relations of the
/// abstract acting group, act coprimely and have `C_G(V) = 1`.
pub fn validate_action(g: &FiniteGroup, spec: &ActionSpec) -> Result<ActionReport, ActionError> {
    spec.check_shape()?;
    let n = g.order();
    for (name, a) in spec.generators() {
        if a.mapping.len() != n {
            return Err(ActionError::WrongLength { name, len: a.mapping.len(), order: n });
        }
        Automorphism::from_mapping(name, a.mapping.clone(), n)?;
    }
    let mut issues = Vec::new();
    let mut well_defined = true;
    for (name, a) in spec.generators() {
        if !a.is_automorphism_of(g) {
            well_defined = false;
            issues.push(format!("{name} is not multiplicative"));
        }
    }

    let id = Automorphism::identity(n);
    let mut relations_hold = true;
    let mut rel = |ok: bool, what: &str| {
        if !ok {
            relations_hold = false;
            issues.push(format!("relation fails: {what}"));
        }
    };
    let (v1, v2, v3) = (&spec.v1, &spec.v2, spec.v3());
    rel(v1.then(v1) == id, "v1^2 = 1");
    rel(v2.then(v2) == id, "v2^2 = 1");
    rel(v1.then(v2) == v2.then(v1), "v1 v2 = v2 v1");
    if let Some(alpha) = &spec.alpha {
        rel(alpha.then(alpha) == id, "alpha^2 = 1");
        rel(v1.conjugate_by(alpha) == *v2, "v1^alpha = v2");
    }
    if let (Some(alpha), Some(beta)) = (&spec.alpha, &spec.beta) {
        rel(beta.then(beta).then(beta) == id, "beta^3 = 1");
        let ab = alpha.then(beta);
        rel(ab.then(&ab) == id, "(alpha beta)^2 = 1");
        // beta permutes v1 -> v2 -> v3 -> v1 or the reverse cycle
        let vs = [v1.clone(), v2.clone(), v3.clone()];
        let conj: Vec<Automorphism> = vs.iter().map(|v| v.conjugate_by(beta)).collect();
        let forward = (0..3).all(|i| conj[i] == vs[(i + 1) % 3]);
        let backward = (0..3).all(|i| conj[i] == vs[(i + 2) % 3]);
        rel(forward || backward, "beta cycles v1, v2, v3");
    }
    let acting_order = spec.acting_elements().len();
    let mut faithful = acting_order == spec.acting_type.order();
    if let Some(alpha) = &spec.alpha {
        faithful &= !spec.four_group_elements().contains(alpha);
    }
    if !faithful {
        issues.push(format!(
            "action is not faithful: named maps generate {acting_order} automorphisms"
        ));
    }

    let coprime = gcd_u64(n as u64, spec.acting_type.order() as u64) == 1;
    if !coprime {
        issues.push(format!("gcd(|G|, |A|) = gcd({n}, {}) != 1", spec.acting_type.order()));
    }
    let cv = fixed_points(g, &[spec.v1.clone(), spec.v2.clone()]);
    let fpf_on_v = cv.is_trivial();
    if !fpf_on_v {
        issues.push(format!("C_G(V) has order {}", cv.order()));
    }
    Ok(ActionReport { well_defined, relations_hold, faithful, coprime, fpf_on_v, acting_order, issues })
}

/// `C_G(S)`: elements fixed by every automorphism in `s`.
pub fn fixed_points(g: &FiniteGroup, s: &[Automorphism]) -> Subgroup {
    let mask: Vec<bool> = (0..g.order()).map(|x| s.iter().all(|a| a.apply(x) == x)).collect();
    g.subgroup_from_mask(&mask)
}

/// Fixed points of `s` inside the subgroup `h`.
pub fn fixed_points_in(g: &FiniteGroup, h: &Subgroup, s: &[Automorphism]) -> Subgroup {
    let mask: Vec<bool> =
        (0..g.order()).map(|x| h.contains(x) && s.iter().all(|a| a.apply(x) == x)).collect();
    g.subgroup_from_mask(&mask)
}

#[derive(Clone, Debug)]
pub struct QuotientAction {
    pub quotient: Quotient,
    pub induced: ActionSpec,
    /// `None` when the action is not coprime and the formula does not apply.
    pub centralizer_formula_holds: Option<bool>,
}

/// Passes an action to `G/N` and, for coprime actions, checks
/// `C_{G/N}(a) = C_G(a)N/N` for every element `a` of the acting group.
pub fn quotient_action(
    g: &FiniteGroup,
    n: &Subgroup,
    spec: &ActionSpec,
) -> Result<QuotientAction, ActionError> {
    if !spec.preserves(n) {
        return Err(ActionError::NotInvariant);
    }
    let quotient = g.quotient(n)?;
    let induced = spec.induced_on(&quotient);
    let coprime = gcd_u64(g.order() as u64, spec.acting_type.order() as u64) == 1;
    let centralizer_formula_holds = coprime.then(|| {
        let elems = spec.acting_elements();
        let qelems = induced.acting_elements();
        let m = quotient.group.order();
        elems.iter().all(|a| {
            let qa = Automorphism::from_mapping_unchecked(
                quotient.representatives.iter().map(|&x| quotient.projection[a.apply(x)]).collect(),
            );
            debug_assert!(qelems.contains(&qa));
            let upstairs = fixed_points(g, core::slice::from_ref(a));
            let image = upstairs.image_mask(&quotient.projection, m);
            let downstairs = fixed_points(&quotient.group, core::slice::from_ref(&qa));
            downstairs.mask() == image.as_slice()
        })
    });
    Ok(QuotientAction { quotient, induced, centralizer_formula_holds })
}

/// Least subgroup of `h` containing `seed`, normal in `h` and invariant
/// under the action.
pub fn minimal_invariant_closure(
    g: &FiniteGroup,
    h: &Subgroup,
    seed: &Subgroup,
    spec: &ActionSpec,
) -> Result<Subgroup, ActionError> {
    if !seed.is_subgroup_of(h) {
        return Err(ActionError::SeedNotContained);
    }
    if !spec.preserves(h) {
        return Err(ActionError::NotInvariant);
    }
    let autos: Vec<&Automorphism> = spec.generators().into_iter().map(|(_, a)| a).collect();
    let mut cur = seed.clone();
    loop {
        let mut elems: Vec<usize> = cur.generators().to_vec();
        for &x in cur.generators() {
            elems.extend(autos.iter().map(|a| a.apply(x)));
        }
        let next = g.normal_closure_in(&elems, h.generators());
        if next.order() == cur.order() {
            return Ok(cur);
        }
        cur = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub holds: bool,
    pub order_h: usize,
    /// `|N|` for the minimal invariant normal closure of `C_H(α)`.
    pub order_n: usize,
    /// `|C_H(v3)|`.
    pub order_c: usize,
}

/// Checks `H = N·C_H(v3)` with `N` the minimal A-invariant normal subgroup
/// of `H` containing `C_H(α)`.
pub fn check_product_decomposition(
    g: &FiniteGroup,
    h: &Subgroup,
    spec: &ActionSpec,
) -> Result<ProductDecomposition, ActionError> {
    let alpha = spec.alpha()?;
    let ch_alpha = fixed_points_in(g, h, core::slice::from_ref(alpha));
    let n = minimal_invariant_closure(g, h, &ch_alpha, spec)?;
    let c = fixed_points_in(g, h, &[spec.v3()]);
    let prod = g.product_set(n.members(), c.members());
    let holds = prod.iter().enumerate().all(|(x, &inside)| inside == h.contains(x));
    Ok(ProductDecomposition { holds, order_h: h.order(), order_n: n.order(), order_c: c.order() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn heis(p: u32) -> (FiniteGroup, ActionSpec) {
        let f = fixtures::heisenberg_d8(p).unwrap();
        (f.group, f.action)
    }

    #[test]
    fn identity_maps_are_not_fpf() {
        let (g, _) = heis(3);
        let spec = ActionSpec::trivial(ActingType::V, g.order());
        let r = validate_action(&g, &spec).unwrap();
        assert!(r.well_defined && r.relations_hold && r.coprime);
        assert!(!r.fpf_on_v);
        assert!(!r.faithful);
    }

    #[test]
    fn heisenberg_actions_validate() {
        let (g, spec) = heis(3);
        let vspec = ActionSpec::four_group(spec.v1.clone(), spec.v2.clone());
        assert!(validate_action(&g, &vspec).unwrap().hypotheses_hold());
        let r = validate_action(&g, &spec).unwrap();
        assert!(r.hypotheses_hold(), "{:?}", r.issues);
        assert_eq!(r.acting_order, 8);
    }

    #[test]
    fn malformed_permutation() {
        let (g, spec) = heis(3);
        let mut bad = spec.clone();
        let mut m = bad.v1.mapping().to_vec();
        m[1] = m[2];
        bad.v1 = Automorphism::from_mapping_unchecked(m);
        assert_eq!(validate_action(&g, &bad), Err(ActionError::NotPermutation("v1")));
        assert!(Automorphism::from_mapping("v1", vec![0, 1], 3).is_err());
    }

    #[test]
    fn broken_relation_is_reported() {
        let (g, spec) = heis(3);
        let mut bad = spec.clone();
        bad.alpha = Some(spec.v1.clone());
        let r = validate_action(&g, &bad).unwrap();
        assert!(!r.relations_hold);
    }

    #[test]
    fn fixed_point_examples() {
        let (g, spec) = heis(3);
        assert_eq!(fixed_points(&g, &[Automorphism::identity(27)]).order(), 27);
        // x^a y^b z^c with index a + 3b + 9c; xyz = 13, x^2 y^2 z = 17
        let ca = fixed_points(&g, &[spec.alpha.clone().unwrap()]);
        assert_eq!(ca.members(), &[0, 13, 17]);
        assert!(fixed_points(&g, &[spec.v1.clone(), spec.v2.clone()]).is_trivial());
    }

    #[test]
    fn quotient_action_examples() {
        let (g, spec) = heis(3);
        let t = quotient_action(&g, &g.trivial_subgroup(), &spec).unwrap();
        assert_eq!(t.induced, spec);
        assert_eq!(t.centralizer_formula_holds, Some(true));

        let z = g.center();
        let q = quotient_action(&g, &z, &spec).unwrap();
        assert_eq!(q.quotient.group.order(), 9);
        assert_eq!(q.centralizer_formula_holds, Some(true));
        let cq = fixed_points(&q.quotient.group, &[q.induced.v1.clone()]);
        let gx = g.generated_subgroup(&[1], false);
        let img = gx.image_mask(&q.quotient.projection, 9);
        assert_eq!(cq.mask(), img.as_slice());

        let x = g.generated_subgroup(&[1], false);
        assert!(quotient_action(&g, &x, &spec).is_err());
    }

    #[test]
    fn non_coprime_formula_not_applicable() {
        let c2 = FiniteGroup::cyclic(2);
        let spec = ActionSpec::trivial(ActingType::V, 2);
        let q = quotient_action(&c2, &c2.trivial_subgroup(), &spec).unwrap();
        assert_eq!(q.centralizer_formula_holds, None);
    }

    #[test]
    fn closures_and_product_decomposition() {
        let (g, spec) = heis(3);
        let whole = g.whole();
        let triv = g.trivial_subgroup();
        assert!(minimal_invariant_closure(&g, &whole, &whole, &spec).unwrap().same_members(&whole));
        assert!(minimal_invariant_closure(&g, &whole, &triv, &spec).unwrap().is_trivial());
        let d = check_product_decomposition(&g, &whole, &spec).unwrap();
        assert!(d.holds);
        let t = check_product_decomposition(&g, &triv, &spec).unwrap();
        assert!(t.holds);

        let cube = fixtures::cube_s4(5).unwrap();
        let d = check_product_decomposition(&cube.group, &cube.group.whole(), &cube.action).unwrap();
        assert!(d.holds);

        let vonly = ActionSpec::four_group(spec.v1.clone(), spec.v2.clone());
        assert_eq!(check_product_decomposition(&g, &whole, &vonly), Err(ActionError::NeedsAlpha));
    }

    #[test]
    fn acting_group_sizes() {
        let (_, spec) = heis(3);
        assert_eq!(spec.acting_elements().len(), 8);
        let cube = fixtures::cube_s4(3).unwrap();
        assert_eq!(cube.action.acting_elements().len(), 24);
        let r = validate_action(&cube.group, &cube.action).unwrap();
        assert!(r.hypotheses_hold(), "{:?}", r.issues);
        // 27 and 24 share the factor 3
        assert!(!r.coprime);
        assert!(validate_action(&fixtures::cube_s4(5).unwrap().group, &fixtures::cube_s4(5).unwrap().action).unwrap().coprime);
    }
}
