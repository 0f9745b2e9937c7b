//! Finite-dimensional Lie algebras over F_p given by structure constants.
//!
//! `ad a` is the map `x ↦ [x, a]`. Action matrices act on column vectors.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::fplinalg::{self, FpMatrix, FpSubspace, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("bracket entry ({0}, {1}) is out of range or not above the diagonal")]
    BadIndex(usize, usize),
    #[error("vector of length {0}, expected {1}")]
    WrongLength(usize, usize),
    #[error("antisymmetry fails at ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("Jacobi identity fails at ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("invalid grading: {0}")]
    Grading(String),
    #[error("invalid action: {0}")]
    Action(String),
    #[error("mode needs an action")]
    ModeNeedsAction,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("C_L(V) has dimension {0}")]
    NotFixedPointFree(usize),
    #[error("algebra is not soluble")]
    NotSoluble,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    prime: u32,
    dim: usize,
    /// `consts[(i·dim + j)·dim + k]` is the `b_k`-coefficient of `[b_i, b_j]`.
    consts: Vec<u32>,
    /// `grading[w - 1]` is the weight-`w` component.
    grading: Option<Vec<FpSubspace>>,
    labels: Option<Vec<String>>,
}

impl LieAlgebra {
    /// From brackets `(i, j, [b_i, b_j])` with `i < j`; omitted pairs are zero.
    pub fn new(prime: u32, dim: usize, brackets: &[(usize, usize, Vec<u32>)]) -> Result<Self, LieError> {
        let mut consts = vec![0u32; dim * dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(LieError::BadIndex(i, j));
            }
            if v.len() != dim {
                return Err(LieError::WrongLength(v.len(), dim));
            }
            for k in 0..dim {
                let c = v[k] % prime.max(1);
                consts[(i * dim + j) * dim + k] = c;
                consts[(j * dim + i) * dim + k] = fplinalg::neg(c, prime.max(1));
            }
        }
        Self::from_constants(prime, dim, consts)
    }

    /// From the full table of structure constants; antisymmetry and the
    /// Jacobi identity are checked on every basis pair and triple.
    pub fn from_constants(prime: u32, dim: usize, consts: Vec<u32>) -> Result<Self, LieError> {
        fplinalg::check_prime(prime as u64).map_err(|_| LieError::NotOddPrime(prime as u64))?;
        if consts.len() != dim * dim * dim {
            return Err(LieError::WrongLength(consts.len(), dim * dim * dim));
        }
        let l = LieAlgebra { prime, dim, consts, grading: None, labels: None };
        for i in 0..dim {
            for j in i..dim {
                let a = l.basis_bracket(i, j);
                let b = l.basis_bracket(j, i);
                if a.iter().zip(b).any(|(&x, &y)| fplinalg::add(x, y, prime) != 0) {
                    return Err(LieError::Antisymmetry(i, j));
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let e = |x| l.unit(x);
                    let mut s = l.bracket(&l.basis_bracket(i, j).to_vec(), &e(k));
                    fplinalg::axpy(&mut s, 1, &l.bracket(&l.basis_bracket(j, k).to_vec(), &e(i)), prime);
                    fplinalg::axpy(&mut s, 1, &l.bracket(&l.basis_bracket(k, i).to_vec(), &e(j)), prime);
                    if !fplinalg::is_zero(&s) {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn abelian(prime: u32, dim: usize) -> Result<Self, LieError> {
        Self::new(prime, dim, &[])
    }

    /// Attaches a grading `W_1, …, W_s` after checking it.
    pub fn with_grading(mut self, components: Vec<FpSubspace>) -> Result<Self, LieError> {
        let total: usize = components.iter().map(FpSubspace::dim).sum();
        let mut sum = FpSubspace::zero(self.prime, self.dim);
        for w in &components {
            if w.ambient_dim() != self.dim {
                return Err(LieError::WrongLength(w.ambient_dim(), self.dim));
            }
            sum = sum.sum(w)?;
        }
        if total != self.dim || sum.dim() != self.dim {
            return Err(LieError::Grading(format!(
                "component dimensions sum to {total}, span has dimension {}, algebra {}",
                sum.dim(),
                self.dim
            )));
        }
        let s = components.len();
        for u in 1..=s {
            for v in u..=s {
                let br = self.bracket_space(&components[u - 1], &components[v - 1]);
                let ok = if u + v <= s { components[u + v - 1].contains(&br)? } else { br.is_zero() };
                if !ok {
                    return Err(LieError::Grading(format!("[W_{u}, W_{v}] not in W_{}", u + v)));
                }
            }
        }
        self.grading = Some(components);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::WrongLength(labels.len(), self.dim));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> Option<&[FpSubspace]> {
        self.grading.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero_vector(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn full(&self) -> FpSubspace {
        FpSubspace::full(self.prime, self.dim)
    }

    pub fn zero_space(&self) -> FpSubspace {
        FpSubspace::zero(self.prime, self.dim)
    }

    pub fn span<R: AsRef<[u32]>>(&self, vectors: &[R]) -> FpSubspace {
        FpSubspace::span(self.prime, self.dim, vectors)
    }

    /// `[b_i, b_j]` as a coefficient slice.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.consts[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Nonzero brackets `(i, j, [b_i, b_j])` with `i < j`.
    pub fn brackets(&self) -> Vec<(usize, usize, Vec<u32>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.basis_bracket(i, j);
                if !fplinalg::is_zero(v) {
                    out.push((i, j, v.to_vec()));
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.prime;
        let mut out = vec![0u32; self.dim];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 {
                    fplinalg::axpy(&mut out, fplinalg::mul(a, b, p), self.basis_bracket(i, j), p);
                }
            }
        }
        out
    }

    /// Left-normed `[x_1, x_2, …, x_k]`.
    pub fn bracket_chain(&self, xs: &[&[u32]]) -> Vec<u32> {
        let mut acc = xs.first().map_or_else(|| self.zero_vector(), |x| x.to_vec());
        for x in &xs[1.min(xs.len())..] {
            acc = self.bracket(&acc, x);
        }
        acc
    }

    /// Matrix of `x ↦ [x, a]`.
    pub fn ad(&self, a: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.bracket(&self.unit(j), a)).collect();
        FpMatrix::from_columns(self.prime, self.dim, &cols)
    }

    /// `span{[a, b] : a ∈ A, b ∈ B}`.
    pub fn bracket_space(&self, a: &FpSubspace, b: &FpSubspace) -> FpSubspace {
        let mut vecs = Vec::new();
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                vecs.push(self.bracket(u, v));
            }
        }
        self.span(&vecs)
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(|&c| c == 0)
    }

    /// Weight of a nonzero vector lying in a single graded component.
    pub fn homogeneous_weight(&self, v: &[u32]) -> Option<usize> {
        let g = self.grading.as_ref()?;
        if fplinalg::is_zero(v) {
            return None;
        }
        g.iter().position(|w| w.member(v)).map(|w| w + 1)
    }
}

/// Least `m ≥ 1` with `(ad a)^m = 0`, or `None` when `ad a` is not nilpotent.
pub fn ad_index(l: &LieAlgebra, a: &[u32]) -> Option<usize> {
    let m = l.ad(a);
    let mut pw = m.clone();
    for k in 1..=l.dim() + 1 {
        if pw.is_zero() {
            return Some(k);
        }
        pw = pw.mul(&m);
    }
    None
}

/// Named automorphisms of a Lie algebra: `v1`, `v2` (with `v3 = v2·v1`),
/// and `alpha`, `beta` when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAction {
    pub v1: FpMatrix,
    pub v2: FpMatrix,
    pub alpha: Option<FpMatrix>,
    pub beta: Option<FpMatrix>,
}

impl LieAction {
    pub fn four_group(v1: FpMatrix, v2: FpMatrix) -> Self {
        LieAction { v1, v2, alpha: None, beta: None }
    }

    pub fn v3(&self) -> FpMatrix {
        self.v2.mul(&self.v1)
    }

    pub fn v(&self, i: usize) -> FpMatrix {
        match i {
            1 => self.v1.clone(),
            2 => self.v2.clone(),
            3 => self.v3(),
            _ => panic!("four-group involutions are indexed 1..=3"),
        }
    }

    pub fn generators(&self) -> Vec<(&'static str, &FpMatrix)> {
        let mut out = vec![("v1", &self.v1), ("v2", &self.v2)];
        if let Some(a) = &self.alpha {
            out.push(("alpha", a));
        }
        if let Some(b) = &self.beta {
            out.push(("beta", b));
        }
        out
    }

    /// Checks invertibility, bracket preservation and the defining relations.
    pub fn validate(&self, l: &LieAlgebra) -> Result<(), LieError> {
        let n = l.dim();
        let id = FpMatrix::identity(l.prime(), n);
        for (name, m) in self.generators() {
            if m.rows() != n || m.cols() != n || m.prime() != l.prime() {
                return Err(LieError::Action(format!("{name} has the wrong shape")));
            }
            if m.inverse().is_none() {
                return Err(LieError::Action(format!("{name} is singular")));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = m.apply(l.basis_bracket(i, j));
                    let rhs = l.bracket(&m.column(i), &m.column(j));
                    if lhs != rhs {
                        return Err(LieError::Action(format!("{name} does not preserve [b_{i}, b_{j}]")));
                    }
                }
            }
        }
        let rel = |ok: bool, what: &str| if ok { Ok(()) } else { Err(LieError::Action(format!("{what} fails"))) };
        let (v1, v2) = (&self.v1, &self.v2);
        rel(v1.mul(v1) == id && v2.mul(v2) == id, "v1^2 = v2^2 = 1")?;
        rel(v1.mul(v2) == v2.mul(v1), "v1 v2 = v2 v1")?;
        if let Some(a) = &self.alpha {
            rel(a.mul(a) == id, "alpha^2 = 1")?;
            rel(a.mul(v1).mul(a) == *v2, "v1^alpha = v2")?;
        }
        if let Some(b) = &self.beta {
            let a = self.alpha.as_ref().ok_or_else(|| LieError::Action(String::from("beta without alpha")))?;
            rel(b.mul(b).mul(b) == id, "beta^3 = 1")?;
            let ab = b.mul(a);
            rel(ab.mul(&ab) == id, "(alpha beta)^2 = 1")?;
            let bi = b.inverse().unwrap();
            let vs = [self.v1.clone(), self.v2.clone(), self.v3()];
            let conj: Vec<FpMatrix> = vs.iter().map(|v| b.mul(v).mul(&bi)).collect();
            let fwd = (0..3).all(|i| conj[i] == vs[(i + 1) % 3]);
            let bwd = (0..3).all(|i| conj[i] == vs[(i + 2) % 3]);
            rel(fwd || bwd, "beta permutes v1, v2, v3")?;
        }
        Ok(())
    }

    /// Fixed space of all four-group elements.
    pub fn fixed_by_v(&self, l: &LieAlgebra) -> FpSubspace {
        fixed_space(l, &[&self.v1, &self.v2])
    }

    pub fn preserves(&self, s: &FpSubspace) -> bool {
        self.generators().iter().all(|(_, m)| s.contains(&s.image(m)).unwrap_or(false))
    }
}

/// Common fixed vectors of the given matrices.
pub fn fixed_space(l: &LieAlgebra, ms: &[&FpMatrix]) -> FpSubspace {
    let id = FpMatrix::identity(l.prime(), l.dim());
    let mut stacked = FpMatrix::zeros(l.prime(), 0, l.dim());
    for m in ms {
        stacked = stacked.vstack(&m.sub(&id));
    }
    stacked.kernel()
}

/// A subspace with its closure properties recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSubspace {
    pub space: FpSubspace,
    pub is_subalgebra: bool,
    pub is_ideal: bool,
    /// `None` when no action was supplied.
    pub is_invariant: Option<bool>,
}

impl LieSubspace {
    pub fn new(l: &LieAlgebra, space: FpSubspace, action: Option<&LieAction>) -> Self {
        let is_subalgebra = space.contains(&l.bracket_space(&space, &space)).unwrap_or(false);
        let is_ideal = space.contains(&l.bracket_space(&space, &l.full())).unwrap_or(false);
        let is_invariant = action.map(|a| a.preserves(&space));
        LieSubspace { space, is_subalgebra, is_ideal, is_invariant }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateMode {
    Subalgebra,
    Ideal,
    InvariantIdeal,
}

/// Least subspace containing `xs` closed under the operations of `mode`.
pub fn generate<R: AsRef<[u32]>>(
    l: &LieAlgebra,
    xs: &[R],
    mode: GenerateMode,
    action: Option<&LieAction>,
) -> Result<LieSubspace, LieError> {
    if mode == GenerateMode::InvariantIdeal && action.is_none() {
        return Err(LieError::ModeNeedsAction);
    }
    let mut space = l.zero_space();
    let mut accepted: Vec<Vec<u32>> = Vec::new();
    let mut queue: Vec<Vec<u32>> = xs.iter().map(|x| x.as_ref().to_vec()).collect();
    let units: Vec<Vec<u32>> = (0..l.dim()).map(|i| l.unit(i)).collect();
    while let Some(v) = queue.pop() {
        if v.len() != l.dim() {
            return Err(LieError::WrongLength(v.len(), l.dim()));
        }
        if space.member(&v) {
            continue;
        }
        space = space.sum(&l.span(&[&v]))?;
        match mode {
            GenerateMode::Subalgebra => {
                for w in &accepted {
                    queue.push(l.bracket(&v, w));
                }
            }
            GenerateMode::Ideal | GenerateMode::InvariantIdeal => {
                for e in &units {
                    queue.push(l.bracket(&v, e));
                }
                if let Some(a) = action.filter(|_| mode == GenerateMode::InvariantIdeal) {
                    for (_, m) in a.generators() {
                        queue.push(m.apply(&v));
                    }
                }
            }
        }
        accepted.push(v);
    }
    Ok(LieSubspace::new(l, space, action))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSeries {
    pub kind: SeriesKind,
    /// Terms from the starting subalgebra down to the last distinct term.
    pub terms: Vec<FpSubspace>,
    /// Whether the series reaches zero.
    pub terminated: bool,
}

impl LieSeries {
    /// Nilpotency class or derived length: number of steps to reach zero.
    pub fn length(&self) -> Option<usize> {
        self.terminated.then(|| self.terms.len() - 1)
    }
}

/// Lower central or derived series of the subalgebra `s`.
pub fn series_of(l: &LieAlgebra, s: &FpSubspace, kind: SeriesKind) -> LieSeries {
    let mut terms = vec![s.clone()];
    loop {
        let cur = terms.last().unwrap();
        if cur.is_zero() {
            return LieSeries { kind, terms, terminated: true };
        }
        let next = match kind {
            SeriesKind::LowerCentral => l.bracket_space(cur, s),
            SeriesKind::Derived => l.bracket_space(cur, cur),
        };
        if next == *cur {
            return LieSeries { kind, terms, terminated: false };
        }
        terms.push(next);
    }
}

pub fn lie_series(l: &LieAlgebra, kind: SeriesKind) -> LieSeries {
    series_of(l, &l.full(), kind)
}

/// Nilpotency class of the subalgebra `s` (0 for the zero subalgebra).
pub fn class_of(l: &LieAlgebra, s: &FpSubspace) -> Option<usize> {
    series_of(l, s, SeriesKind::LowerCentral).length()
}

pub fn nilpotency_class(l: &LieAlgebra) -> Option<usize> {
    class_of(l, &l.full())
}

pub fn derived_length(l: &LieAlgebra) -> Option<usize> {
    lie_series(l, SeriesKind::Derived).length()
}

/// `C_L(S) = {x : [s, x] = 0 for all s ∈ S}`.
pub fn lie_centralizer<R: AsRef<[u32]>>(l: &LieAlgebra, s: &[R]) -> LieSubspace {
    let mut stacked = FpMatrix::zeros(l.prime(), 0, l.dim());
    for v in s {
        stacked = stacked.vstack(&l.ad(v.as_ref()));
    }
    LieSubspace::new(l, stacked.kernel(), None)
}

pub fn center(l: &LieAlgebra) -> LieSubspace {
    let units: Vec<Vec<u32>> = (0..l.dim()).map(|i| l.unit(i)).collect();
    lie_centralizer(l, &units)
}

/// `L = L_1 ⊕ L_2 ⊕ L_3` with `L_i` the fixed space of `v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VGrading {
    pub components: [FpSubspace; 3],
    /// `P_i = (1 + v_i − v_j − v_k)/4`, the projection onto `L_i`.
    pub projectors: [FpMatrix; 3],
}

impl VGrading {
    pub fn component(&self, i: usize) -> &FpSubspace {
        &self.components[i - 1]
    }

    /// `(x_1, x_2, x_3)` with `x = x_1 + x_2 + x_3`, `x_i ∈ L_i`.
    pub fn project(&self, x: &[u32]) -> [Vec<u32>; 3] {
        [0, 1, 2].map(|c| self.projectors[c].apply(x))
    }
}

/// Computes the four-group grading and asserts every structural relation.
pub fn v_grading(l: &LieAlgebra, action: &LieAction) -> Result<VGrading, LieError> {
    action.validate(l)?;
    let cv = action.fixed_by_v(l);
    if !cv.is_zero() {
        return Err(LieError::NotFixedPointFree(cv.dim()));
    }
    let p = l.prime();
    let vs = [action.v(1), action.v(2), action.v(3)];
    let components = [0, 1, 2].map(|c| fixed_space(l, &[&vs[c]]));
    let fail = |what: String| Err(LieError::Grading(what));
    let total: usize = components.iter().map(FpSubspace::dim).sum();
    let sum = components[0].sum(&components[1])?.sum(&components[2])?;
    if total != l.dim() || !sum.is_full() {
        return fail(format!("components do not form a direct sum: dims {total}, span {}", sum.dim()));
    }
    for (c, li) in components.iter().enumerate() {
        if !l.bracket_space(li, li).is_zero() {
            return fail(format!("L_{} is not abelian", c + 1));
        }
        for (d, vd) in vs.iter().enumerate() {
            if d != c {
                for x in li.basis_vectors() {
                    let neg: Vec<u32> = x.iter().map(|&a| fplinalg::neg(a, p)).collect();
                    if vd.apply(x) != neg {
                        return fail(format!("v{} does not negate L_{}", d + 1, c + 1));
                    }
                }
            }
        }
    }
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let k = 3 - i - j;
        if !components[k].contains(&l.bracket_space(&components[i], &components[j]))? {
            return fail(format!("[L_{}, L_{}] not in L_{}", i + 1, j + 1, k + 1));
        }
    }
    if let Some(a) = &action.alpha {
        if components[0].image(a) != components[1] || components[2].image(a) != components[2] {
            return fail(String::from("alpha does not swap L_1, L_2 and fix L_3"));
        }
    }
    let id = FpMatrix::identity(p, l.dim());
    let quarter = fplinalg::inv(4 % p, p);
    let projectors = [0, 1, 2].map(|c| {
        let mut m = id.add(&vs[c]);
        for (d, vd) in vs.iter().enumerate() {
            if d != c {
                m = m.sub(vd);
            }
        }
        m.scaled(quarter)
    });
    Ok(VGrading { components, projectors })
}

/// `L/I` on the complement spanned by the unit vectors at the non-pivot
/// coordinates of `I`'s echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieQuotient {
    pub algebra: LieAlgebra,
    pub ideal: FpSubspace,
    /// Coordinates of `L` kept by the quotient, ascending.
    pub complement: Vec<usize>,
    pub action: Option<LieAction>,
}

impl LieQuotient {
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&c| r[c]).collect()
    }

    /// Canonical preimage of a quotient vector.
    pub fn lift(&self, u: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.ideal.ambient_dim()];
        for (k, &c) in self.complement.iter().enumerate() {
            v[c] = u[k];
        }
        v
    }
}

pub fn quotient_algebra(
    l: &LieAlgebra,
    ideal: &FpSubspace,
    action: Option<&LieAction>,
) -> Result<LieQuotient, LieError> {
    if !ideal.contains(&l.bracket_space(ideal, &l.full()))? {
        return Err(LieError::NotIdeal);
    }
    if let Some(a) = action {
        if !a.preserves(ideal) {
            return Err(LieError::NotInvariant);
        }
    }
    let complement: Vec<usize> = (0..l.dim()).filter(|c| !ideal.pivots().contains(c)).collect();
    let q = complement.len();
    let partial = LieQuotient {
        algebra: LieAlgebra::abelian(l.prime(), 0)?,
        ideal: ideal.clone(),
        complement: complement.clone(),
        action: None,
    };
    let mut consts = vec![0u32; q * q * q];
    for a in 0..q {
        for b in 0..q {
            let br = partial.project(l.basis_bracket(complement[a], complement[b]));
            consts[(a * q + b) * q..(a * q + b + 1) * q].copy_from_slice(&br);
        }
    }
    let mut algebra = LieAlgebra::from_constants(l.prime(), q, consts)?;
    if let Some(g) = l.grading() {
        let homogeneous: usize = g.iter().map(|w| w.intersect(ideal).map_or(0, |x| x.dim())).sum();
        if homogeneous == ideal.dim() {
            let comps: Vec<FpSubspace> = g
                .iter()
                .map(|w| {
                    let vecs: Vec<Vec<u32>> = w.basis_vectors().map(|v| partial.project(v)).collect();
                    FpSubspace::span(l.prime(), q, &vecs)
                })
                .collect();
            algebra = algebra.with_grading(comps)?;
        }
    }
    let induce = |m: &FpMatrix| {
        let cols: Vec<Vec<u32>> = complement.iter().map(|&c| partial.project(&m.column(c))).collect();
        FpMatrix::from_columns(l.prime(), q, &cols)
    };
    let action = action.map(|a| LieAction {
        v1: induce(&a.v1),
        v2: induce(&a.v2),
        alpha: a.alpha.as_ref().map(induce),
        beta: a.beta.as_ref().map(induce),
    });
    if let Some(a) = &action {
        a.validate(&algebra)?;
    }
    Ok(LieQuotient { algebra, ideal: ideal.clone(), complement, action })
}

/// A subalgebra as an algebra in its own right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub algebra: LieAlgebra,
    /// Basis of the subalgebra as vectors of the parent.
    pub basis: Vec<Vec<u32>>,
    pub action: Option<LieAction>,
    echelon: FpSubspace,
    /// Columns: echelon coordinates of `basis`; inverted for coordinates.
    to_basis: FpMatrix,
}

impl Restriction {
    /// Coordinates in `basis` of a vector of the subalgebra.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.echelon.coordinates(v).map(|c| self.to_basis.apply(&c))
    }

    pub fn embed(&self, u: &[u32]) -> Vec<u32> {
        let p = self.echelon.prime();
        let mut v = vec![0; self.echelon.ambient_dim()];
        for (k, b) in self.basis.iter().enumerate() {
            fplinalg::axpy(&mut v, u[k], b, p);
        }
        v
    }
}

/// Restricts to a subalgebra. When the parent is graded and `s` is a sum of
/// its intersections with the components, the basis runs through those
/// intersections in weight order and the grading is kept.
pub fn restrict(l: &LieAlgebra, s: &FpSubspace, action: Option<&LieAction>) -> Result<Restriction, LieError> {
    if !s.contains(&l.bracket_space(s, s))? {
        return Err(LieError::NotSubalgebra);
    }
    let p = l.prime();
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut blocks: Option<Vec<usize>> = None;
    if let Some(g) = l.grading() {
        let parts: Vec<FpSubspace> = g.iter().map(|w| w.intersect(s)).collect::<Result<_, _>>()?;
        if parts.iter().map(FpSubspace::dim).sum::<usize>() == s.dim() {
            blocks = Some(parts.iter().map(FpSubspace::dim).collect());
            for part in &parts {
                basis.extend(part.basis_vectors().map(<[u32]>::to_vec));
            }
        }
    }
    if blocks.is_none() {
        basis = s.basis_vectors().map(<[u32]>::to_vec).collect();
    }
    let d = basis.len();
    let coords: Vec<Vec<u32>> = basis.iter().map(|b| s.coordinates(b).unwrap()).collect();
    let to_basis = FpMatrix::from_columns(p, d, &coords).inverse().expect("basis of the subalgebra");
    let mut r = Restriction {
        algebra: LieAlgebra::abelian(p, 0)?,
        basis,
        action: None,
        echelon: s.clone(),
        to_basis,
    };
    let mut consts = vec![0u32; d * d * d];
    for a in 0..d {
        for b in 0..d {
            let br = r.coordinates(&l.bracket(&r.basis[a], &r.basis[b])).unwrap();
            consts[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&br);
        }
    }
    let mut algebra = LieAlgebra::from_constants(p, d, consts)?;
    if let Some(blocks) = blocks {
        let mut start = 0;
        let comps = blocks
            .iter()
            .map(|&len| {
                let idx: Vec<usize> = (start..start + len).collect();
                start += len;
                FpSubspace::coordinate(p, d, &idx)
            })
            .collect();
        algebra = algebra.with_grading(comps)?;
    }
    if let Some(a) = action {
        if !a.preserves(s) {
            return Err(LieError::NotInvariant);
        }
        let induce = |m: &FpMatrix| {
            let cols: Vec<Vec<u32>> = r.basis.iter().map(|b| r.coordinates(&m.apply(b)).unwrap()).collect();
            FpMatrix::from_columns(p, d, &cols)
        };
        let act = LieAction {
            v1: induce(&a.v1),
            v2: induce(&a.v2),
            alpha: a.alpha.as_ref().map(induce),
            beta: a.beta.as_ref().map(induce),
        };
        act.validate(&algebra)?;
        r.action = Some(act);
    }
    r.algebra = algebra;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn heis(p: u32) -> LieAlgebra {
        LieAlgebra::new(p, 3, &[(0, 1, vec![0, 0, 1])]).unwrap()
    }

    /// sl2 with basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = −2f.
    fn sl2(p: u32) -> LieAlgebra {
        LieAlgebra::new(p, 3, &[(0, 1, vec![0, 0, 1]), (0, 2, vec![p - 2, 0, 0]), (1, 2, vec![0, 2, 0])]).unwrap()
    }

    fn diag(p: u32, d: &[i64]) -> FpMatrix {
        let rows: Vec<Vec<i64>> =
            (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        FpMatrix::from_rows(p, d.len(), &rows)
    }

    /// Heisenberg algebra with the D8 action v1 = diag(1,−1,−1),
    /// v2 = diag(−1,1,−1), α: e1 ↔ e2, e3 ↦ −e3.
    fn heis_d8(p: u32) -> (LieAlgebra, LieAction) {
        let alpha = FpMatrix::from_rows(p, 3, &[[0, 1, 0], [1, 0, 0], [0, 0, -1]]);
        let act = LieAction { v1: diag(p, &[1, -1, -1]), v2: diag(p, &[-1, 1, -1]), alpha: Some(alpha), beta: None };
        (heis(p), act)
    }

    #[test]
    fn load_validation() {
        assert!(LieAlgebra::abelian(3, 3).unwrap().is_abelian());
        assert_eq!(nilpotency_class(&heis(3)), Some(2));
        // [e1,e2] = e1, [e2,e3] = e2, [e1,e3] = 0 breaks Jacobi
        let bad = LieAlgebra::new(3, 3, &[(0, 1, vec![1, 0, 0]), (1, 2, vec![0, 1, 0])]);
        assert_eq!(bad, Err(LieError::Jacobi(0, 1, 2)));
        assert_eq!(LieAlgebra::new(3, 2, &[(1, 0, vec![0, 0])]), Err(LieError::BadIndex(1, 0)));
        assert!(matches!(LieAlgebra::new(4, 1, &[]), Err(LieError::NotOddPrime(4))));
    }

    #[test]
    fn generation_modes() {
        let l = heis(3);
        let z: [Vec<u32>; 0] = [];
        assert!(generate(&l, &z, GenerateMode::Ideal, None).unwrap().space.is_zero());
        let i = generate(&l, &[l.unit(0)], GenerateMode::Ideal, None).unwrap();
        assert_eq!(i.space, FpSubspace::coordinate(3, 3, &[0, 2]));
        assert!(i.is_ideal && i.is_subalgebra);
        let s = generate(&l, &[l.unit(0)], GenerateMode::Subalgebra, None).unwrap();
        assert_eq!(s.dim(), 1);
        let all = generate(&l, &[l.unit(0), l.unit(1)], GenerateMode::Subalgebra, None).unwrap();
        assert!(all.space.is_full());
        assert_eq!(
            generate(&l, &[l.unit(0)], GenerateMode::InvariantIdeal, None),
            Err(LieError::ModeNeedsAction)
        );
        let (l, act) = heis_d8(3);
        let id = generate(&l, &[l.unit(0)], GenerateMode::InvariantIdeal, Some(&act)).unwrap();
        assert!(id.space.is_full());
        assert_eq!(id.is_invariant, Some(true));
    }

    #[test]
    fn series_and_indices() {
        let a = LieAlgebra::abelian(5, 3).unwrap();
        assert_eq!((nilpotency_class(&a), derived_length(&a)), (Some(1), Some(1)));
        let h = heis(3);
        assert_eq!((nilpotency_class(&h), derived_length(&h)), (Some(2), Some(2)));
        let s = sl2(5);
        let lcs = lie_series(&s, SeriesKind::LowerCentral);
        assert!(!lcs.terminated && lcs.terms.len() == 1);
        assert_eq!(derived_length(&s), None);
        assert_eq!(ad_index(&h, &h.zero_vector()), Some(1));
        assert_eq!(ad_index(&h, &h.unit(0)), Some(2));
        assert_eq!(ad_index(&s, &s.unit(2)), None);
        assert_eq!(ad_index(&s, &s.unit(0)), Some(3));
        assert_eq!(nilpotency_class(&LieAlgebra::abelian(3, 0).unwrap()), Some(0));
    }

    #[test]
    fn centralizers() {
        let h = heis(3);
        assert_eq!(center(&h).space, FpSubspace::coordinate(3, 3, &[2]));
        assert!(lie_centralizer(&h, &[h.zero_vector()]).space.is_full());
        let a = LieAlgebra::abelian(3, 2).unwrap();
        assert!(lie_centralizer(&a, &[a.unit(0)]).space.is_full());
    }

    #[test]
    fn grading_of_heisenberg() {
        let (l, act) = heis_d8(3);
        let gr = v_grading(&l, &act).unwrap();
        for i in 0..3 {
            assert_eq!(gr.components[i], FpSubspace::coordinate(3, 3, &[i]));
        }
        let x = [1, 2, 1];
        assert_eq!(gr.project(&x), [vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        let trivial = LieAction::four_group(FpMatrix::identity(3, 3), FpMatrix::identity(3, 3));
        assert_eq!(v_grading(&l, &trivial), Err(LieError::NotFixedPointFree(3)));
        let ab = LieAlgebra::abelian(3, 3).unwrap();
        assert!(v_grading(&ab, &LieAction::four_group(diag(3, &[1, -1, -1]), diag(3, &[-1, 1, -1]))).is_ok());
    }

    #[test]
    fn quotients() {
        let (l, act) = heis_d8(3);
        let q0 = quotient_algebra(&l, &l.zero_space(), Some(&act)).unwrap();
        assert_eq!(q0.algebra, l);
        let z = FpSubspace::coordinate(3, 3, &[2]);
        let q = quotient_algebra(&l, &z, Some(&act)).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_abelian());
        assert_eq!(q.project(&[1, 2, 2]), vec![1, 2]);
        let qf = quotient_algebra(&l, &l.full(), None).unwrap();
        assert_eq!(qf.algebra.dim(), 0);
        let x = FpSubspace::coordinate(3, 3, &[0]);
        assert_eq!(quotient_algebra(&l, &x, None), Err(LieError::NotIdeal));
        let xz = FpSubspace::coordinate(3, 3, &[0, 2]);
        assert_eq!(quotient_algebra(&l, &xz, Some(&act)), Err(LieError::NotInvariant));
    }

    #[test]
    fn restriction_keeps_grading() {
        let g = heis(5)
            .with_grading(vec![FpSubspace::coordinate(5, 3, &[0, 1]), FpSubspace::coordinate(5, 3, &[2])])
            .unwrap();
        let s = FpSubspace::coordinate(5, 3, &[0, 2]);
        let r = restrict(&g, &s, None).unwrap();
        assert_eq!(r.algebra.dim(), 2);
        assert!(r.algebra.grading().is_some());
        assert_eq!(r.coordinates(&[3, 0, 4]), Some(vec![3, 4]));
        assert_eq!(r.embed(&[3, 4]), vec![3, 0, 4]);
        assert!(heis(3).with_grading(vec![FpSubspace::coordinate(3, 3, &[0, 1, 2])]).is_err());
    }

    proptest! {
        /// Jacobi-respecting random algebras: upper-triangular nilpotent
        /// algebras spanned by commutator relations of the free class-2 type.
        #[test]
        fn ad_index_bounds(a in proptest::collection::vec(0u32..7, 4), b in proptest::collection::vec(0u32..7, 4)) {
            // [e0,e1] = e2 + c e3, [e0,e2] = e3 (filiform); Jacobi holds
            let l = LieAlgebra::new(7, 4, &[(0, 1, vec![0, 0, 1, b[0]]), (0, 2, vec![0, 0, 0, 1])]).unwrap();
            if let Some(m) = ad_index(&l, &a) {
                prop_assert!(m <= l.dim() + 1);
                if m > 1 {
                    prop_assert!(!l.ad(&a).pow(m as u64 - 1).is_zero());
                }
            }
            let i = generate(&l, &[a.clone(), b.clone()], GenerateMode::Ideal, None).unwrap();
            for k in 0..4 {
                for v in i.space.basis_vectors() {
                    prop_assert!(i.space.member(&l.bracket(v, &l.unit(k))));
                }
            }
            let sub = generate(&l, &[a, b], GenerateMode::Subalgebra, None).unwrap();
            prop_assert!(sub.is_subalgebra);
        }

        #[test]
        fn rrr_componentwise_centralizer(y in proptest::collection::vec(0u32..5, 3), i in 1usize..=3) {
            let p = 5;
            let (l, act) = heis_d8(p);
            let gr = v_grading(&l, &act).unwrap();
            let yi = gr.project(&y)[i - 1].clone();
            let c = lie_centralizer(&l, &[&yi]).space;
            let mut parts = l.zero_space();
            for comp in &gr.components {
                parts = parts.sum(&c.intersect(comp).unwrap()).unwrap();
            }
            prop_assert_eq!(parts, c);
        }
    }
}
