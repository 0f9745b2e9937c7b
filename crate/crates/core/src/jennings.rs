//! The Jennings–Zassenhaus filtration of a finite p-group, the graded Lie
//! algebra `DL(G)` over F_p built from its layers, the subalgebra `L_p(G)`
//! and the transport of group automorphisms to matrices on `DL(G)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::actions::{ActionSpec, Automorphism};
use crate::fplinalg::{FpMatrix, FpSubspace};
use crate::group::{prime_power_exponent, FiniteGroup, GroupError, SeriesKind, Subgroup};
use crate::lie::{ad_index, generate, GenerateMode, LieAction, LieAlgebra, LieError, LieSubspace};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JenningsError {
    #[error("group of order {0} is not a {1}-group")]
    NotPGroup(usize, u64),
    #[error("filtration inclusion fails: {0}")]
    Inclusion(alloc::string::String),
    #[error("bracket depends on the choice of coset representatives at ({0}, {1})")]
    NotWellDefined(usize, usize),
    #[error("induced map does not preserve the bracket: {0}")]
    Action(LieError),
    #[error("C_DL(V) has dimension {0}")]
    NotFixedPointFree(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Coset representatives of one layer `D_i/D_{i+1}` and the coordinates of
/// every element of `D_i` in that basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub reps: Vec<usize>,
    /// `coords[x]` packs the coordinates of `x D_{i+1}` as `Σ a_c p^c`;
    /// `u32::MAX` outside `D_i`.
    coords: Vec<u32>,
}

/// `G = D_1 ≥ D_2 ≥ … ≥ D_s = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JenningsFiltration {
    prime: u32,
    /// `terms[i - 1] = D_i`; the last term is trivial.
    terms: Vec<Subgroup>,
    /// `layers[i - 1]` describes `K_i = D_i/D_{i+1}`.
    layers: Vec<Layer>,
    /// Largest `i` with `x ∈ D_i` (0 for the identity).
    weight: Vec<usize>,
}

impl JenningsFiltration {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    /// `D_i` for `i ≥ 1`; trivial past the end.
    pub fn term<'a>(&'a self, i: usize, trivial: &'a Subgroup) -> &'a Subgroup {
        self.terms.get(i - 1).unwrap_or(trivial)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.reps.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.layers.iter().map(|l| l.reps.len()).sum()
    }

    /// Offset of layer `i` in the basis of `DL(G)`.
    pub fn offset(&self, i: usize) -> usize {
        self.layers[..i - 1].iter().map(|l| l.reps.len()).sum()
    }

    /// Weight of a nonidentity element: the largest `i` with `x ∈ D_i`.
    pub fn weight(&self, x: usize) -> usize {
        self.weight[x]
    }

    /// Coordinates of `x D_{i+1}` in `K_i`, for `x ∈ D_i`.
    pub fn layer_coordinates(&self, x: usize, i: usize) -> Option<Vec<u32>> {
        let layer = self.layers.get(i - 1)?;
        let packed = *layer.coords.get(x)?;
        if packed == u32::MAX {
            return None;
        }
        let mut packed = packed as u64;
        let p = self.prime as u64;
        Some(
            (0..layer.reps.len())
                .map(|_| {
                    let a = packed % p;
                    packed /= p;
                    a as u32
                })
                .collect(),
        )
    }

    /// `x D_{i+1}` as a vector of `DL(G)`, for `x ∈ D_i`; zero when `i` is
    /// past the last layer.
    pub fn vector_at(&self, x: usize, i: usize) -> Option<Vec<u32>> {
        let mut v = vec![0; self.dim()];
        if i > self.layers.len() {
            return (x == 0).then_some(v);
        }
        let c = self.layer_coordinates(x, i)?;
        let off = self.offset(i);
        v[off..off + c.len()].copy_from_slice(&c);
        Some(v)
    }

    /// `x̄` for a nonidentity element, with its weight.
    pub fn bar(&self, x: usize) -> Option<(usize, Vec<u32>)> {
        let w = self.weight[x];
        (w > 0).then(|| (w, self.vector_at(x, w).unwrap()))
    }
}

/// Computes `D_i = ∏_{j p^k ≥ i} γ_j(G)^{p^k}` until it is trivial, checks
/// both filtration inclusions and chooses layer bases.
pub fn jennings_series(g: &FiniteGroup, p: u32) -> Result<JenningsFiltration, JenningsError> {
    if prime_power_exponent(g.order(), p as u64).is_none() {
        return Err(JenningsError::NotPGroup(g.order(), p as u64));
    }
    let gamma = g.series(SeriesKind::LowerCentral);
    let mut terms = Vec::new();
    let mut i = 1usize;
    loop {
        let mut d = g.trivial_subgroup();
        for (j0, gj) in gamma.iter().enumerate() {
            let j = j0 + 1;
            let mut pk = 1u64;
            while (j as u64) * pk < i as u64 {
                pk *= p as u64;
            }
            d = g.join(&d, &g.power_subgroup(gj, pk));
        }
        let done = d.is_trivial();
        terms.push(d);
        if done {
            break;
        }
        i += 1;
    }
    let trivial = g.trivial_subgroup();
    let s = terms.len();
    let term = |i: usize| terms.get(i - 1).unwrap_or(&trivial);
    for i in 1..=s {
        for j in i..=s {
            if !g.commutator_of_normal(term(i), term(j)).is_subgroup_of(term(i + j)) {
                return Err(JenningsError::Inclusion(format!("[D_{i}, D_{j}] not in D_{}", i + j)));
            }
        }
        if !g.power_subgroup(term(i), p as u64).is_subgroup_of(term(p as usize * i)) {
            return Err(JenningsError::Inclusion(format!("D_{i}^p not in D_{}", p as usize * i)));
        }
    }
    let mut weight = vec![0usize; g.order()];
    for (k, d) in terms.iter().enumerate() {
        for &x in d.members() {
            if x != 0 {
                weight[x] = k + 1;
            }
        }
    }
    let layers = (1..s).map(|i| build_layer(g, term(i), term(i + 1), p)).collect();
    Ok(JenningsFiltration { prime: p, terms, layers, weight })
}

fn build_layer(g: &FiniteGroup, upper: &Subgroup, lower: &Subgroup, p: u32) -> Layer {
    let mut reps = Vec::new();
    let mut h = lower.clone();
    for &x in upper.members() {
        if !h.contains(x) {
            reps.push(x);
            h = g.join(&h, &g.subgroup_from_elements([x]));
        }
    }
    let mut coords = vec![u32::MAX; g.order()];
    // walk r_1^{a_1} ⋯ r_d^{a_d} · n over all exponent vectors and n ∈ lower
    let d = reps.len();
    let total = (p as usize).pow(d as u32);
    for code in 0..total {
        let mut x = 0;
        let mut c = code;
        for &r in &reps {
            x = g.mul(x, g.pow(r, (c % p as usize) as u64));
            c /= p as usize;
        }
        for &n in lower.members() {
            coords[g.mul(x, n)] = code as u32;
        }
    }
    Layer { reps, coords }
}

/// `DL(G)` with its filtration; basis vector `offset(i) + c` is the `c`-th
/// representative of layer `i`.
#[derive(Debug, Clone)]
pub struct DlAlgebra {
    pub algebra: LieAlgebra,
    pub filtration: JenningsFiltration,
}

impl DlAlgebra {
    /// `[x D_{i+1}, y D_{j+1}] = [x, y] D_{i+j+1}` for `x ∈ D_i`, `y ∈ D_j`.
    pub fn commutator_vector(&self, g: &FiniteGroup, x: usize, i: usize, y: usize, j: usize) -> Option<Vec<u32>> {
        let f = &self.filtration;
        f.layer_coordinates(x, i)?;
        f.layer_coordinates(y, j)?;
        bracket_of(g, f, x, i, y, j)
    }

    /// Basis vectors of `K_1`.
    pub fn first_layer(&self) -> Vec<Vec<u32>> {
        let n = self.filtration.layers.first().map_or(0, |l| l.reps.len());
        (0..n).map(|c| self.algebra.unit(c)).collect()
    }
}

/// Builds `DL(G)` graded by weight, cross-checking every basis bracket
/// against a second choice of coset representatives.
pub fn build_dl(g: &FiniteGroup, p: u32) -> Result<DlAlgebra, JenningsError> {
    let filtration = jennings_series(g, p)?;
    let n = filtration.dim();
    let s = filtration.layers.len();
    let mut brackets = Vec::new();
    let trivial = g.trivial_subgroup();
    for i in 1..=s {
        for j in i..=s {
            // largest element of the next term shifts each representative
            let alt_i = *filtration.term(i + 1, &trivial).members().last().unwrap();
            let alt_j = *filtration.term(j + 1, &trivial).members().last().unwrap();
            for (a, &x) in filtration.layers[i - 1].reps.iter().enumerate() {
                for (b, &y) in filtration.layers[j - 1].reps.iter().enumerate() {
                    let (u, v) = (filtration.offset(i) + a, filtration.offset(j) + b);
                    if u >= v {
                        continue;
                    }
                    let main = bracket_of(g, &filtration, x, i, y, j);
                    let other = bracket_of(g, &filtration, g.mul(x, alt_i), i, g.mul(alt_j, y), j);
                    match (main, other) {
                        (Some(m), Some(o)) if m == o => {
                            if m.iter().any(|&c| c != 0) {
                                brackets.push((u, v, m));
                            }
                        }
                        _ => return Err(JenningsError::NotWellDefined(u, v)),
                    }
                }
            }
        }
    }
    let grading = (1..=s)
        .map(|i| {
            let idx: Vec<usize> = (0..filtration.layers[i - 1].reps.len()).map(|c| filtration.offset(i) + c).collect();
            FpSubspace::coordinate(p, n, &idx)
        })
        .collect();
    let algebra = LieAlgebra::new(p, n, &brackets)?.with_grading(grading)?;
    Ok(DlAlgebra { algebra, filtration })
}

fn bracket_of(g: &FiniteGroup, f: &JenningsFiltration, x: usize, i: usize, y: usize, j: usize) -> Option<Vec<u32>> {
    let c = g.comm(x, y);
    if i + j > f.layers.len() {
        return (c == 0 || f.weight(c) >= i + j).then(|| vec![0; f.dim()]);
    }
    f.vector_at(c, i + j)
}

/// `L_p(G)`: the subalgebra of `DL(G)` generated by `K_1`.
pub fn build_lp(dl: &DlAlgebra) -> Result<LieSubspace, JenningsError> {
    Ok(generate(&dl.algebra, &dl.first_layer(), GenerateMode::Subalgebra, None)?)
}

/// Lazard's identity `(ad x̄)^p = ad(x^p)‾` for every nonidentity element,
/// where the right side is the image of `x^p` in the layer of weight
/// `p·weight(x)` (zero when `x^p` lies deeper), and the bound
/// `ad_index(x̄) ≤ |x|`.
pub fn lazard_check(g: &FiniteGroup, dl: &DlAlgebra) -> VerificationReport {
    let mut r = VerificationReport::new("lazard");
    let f = &dl.filtration;
    let l = &dl.algebra;
    let p = f.prime();
    let mut identity_fail = None;
    let mut bound_fail = None;
    let mut max_index = 0;
    for x in 1..g.order() {
        let (w, xb) = f.bar(x).unwrap();
        let lhs = l.ad(&xb).pow(p as u64);
        let xp = g.pow(x, p as u64);
        let target = p as usize * w;
        let rhs = if xp != 0 && f.weight(xp) == target {
            l.ad(&f.vector_at(xp, target).unwrap())
        } else {
            FpMatrix::zeros(p, l.dim(), l.dim())
        };
        if lhs != rhs && identity_fail.is_none() {
            identity_fail = Some(x);
        }
        match ad_index(l, &xb) {
            Some(m) if m <= g.element_order(x) => max_index = max_index.max(m),
            _ => {
                bound_fail.get_or_insert(x);
            }
        }
    }
    r.check(
        "lazard_identity",
        identity_fail.is_none(),
        match identity_fail {
            None => format!("(ad x)^p = ad(x^p) for all {} nonidentity elements", g.order().saturating_sub(1)),
            Some(x) => format!("fails at element {x}"),
        },
    );
    r.check(
        "ad_index_bound",
        bound_fail.is_none(),
        match bound_fail {
            None => format!("ad_index(x) <= |x| throughout, max index {max_index}"),
            Some(x) => format!("fails at element {x}"),
        },
    );
    r.measure("max_ad_index", max_index);
    r
}

/// Full report on the filtration and the algebras: inclusions, dimension,
/// Lazard, classes.
pub fn jennings_report(g: &FiniteGroup, p: u32) -> Result<VerificationReport, JenningsError> {
    let mut r = VerificationReport::new("jennings");
    let dl = match build_dl(g, p) {
        Ok(dl) => dl,
        Err(JenningsError::Inclusion(what)) => {
            r.check("filtration_inclusions", false, what);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let f = &dl.filtration;
    r.check("filtration_inclusions", true, "[D_i, D_j] <= D_{i+j} and D_i^p <= D_{pi}");
    r.check("dl_well_defined", true, "brackets agree under a second choice of representatives");
    let size = (p as u64).checked_pow(f.dim() as u32);
    r.check(
        "dl_dimension",
        size == Some(g.order() as u64),
        format!("p^dim = {p}^{} vs |G| = {}", f.dim(), g.order()),
    );
    r.measure("layer_dims", f.layer_dims());
    r.measure("dl_dim", f.dim());
    r.measure("dl_class", crate::lie::nilpotency_class(&dl.algebra));
    let lp = build_lp(&dl)?;
    r.measure("lp_dim", lp.dim());
    r.measure("lp_class", crate::lie::class_of(&dl.algebra, &lp.space));
    r.measure("group_class", g.nilpotency_class());
    r.measure("powerful", g.is_powerful(p as u64)?);
    r.absorb("", lazard_check(g, &dl));
    Ok(r)
}

fn induce_matrix(dl: &DlAlgebra, phi: &Automorphism) -> Option<FpMatrix> {
    let f = &dl.filtration;
    let n = f.dim();
    let mut cols = Vec::with_capacity(n);
    for (k, layer) in f.layers.iter().enumerate() {
        for &r in &layer.reps {
            cols.push(f.vector_at(phi.apply(r), k + 1)?);
        }
    }
    Some(FpMatrix::from_columns(f.prime(), n, &cols))
}

/// Matrices of the named automorphisms on `DL(G)`, block diagonal by
/// layer; validated against the bracket. For a fixed-point-free four-group
/// the induced action on `DL(G)` is checked to be fixed-point-free.
pub fn induce_action(g: &FiniteGroup, dl: &DlAlgebra, spec: &ActionSpec) -> Result<LieAction, JenningsError> {
    let m = |phi: &Automorphism| {
        induce_matrix(dl, phi).ok_or_else(|| JenningsError::Inclusion(alloc::string::String::from("D_i not invariant")))
    };
    let action = LieAction {
        v1: m(&spec.v1)?,
        v2: m(&spec.v2)?,
        alpha: spec.alpha.as_ref().map(m).transpose()?,
        beta: spec.beta.as_ref().map(m).transpose()?,
    };
    action.validate(&dl.algebra).map_err(JenningsError::Action)?;
    let fpf = crate::actions::fixed_points(g, &[spec.v1.clone(), spec.v2.clone()]).is_trivial();
    if fpf && dl.filtration.prime() != 2 {
        let c = action.fixed_by_v(&dl.algebra);
        if !c.is_zero() {
            return Err(JenningsError::NotFixedPointFree(c.dim()));
        }
    }
    Ok(action)
}
