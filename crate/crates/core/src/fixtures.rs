//! Deterministic groups with fixed-point-free V-actions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::actions::{fixed_points, validate_action, ActingType, ActionError, ActionSpec, Automorphism};
use crate::fplinalg::FpMatrix;
use crate::group::{lcm, AssocCheck, FiniteGroup, GroupError, LoadOptions, DEFAULT_ORDER_CAP};
use crate::pc::{PcError, PcPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("parameter {0} must be an odd prime")]
    NotOddPrime(u32),
    #[error("q = {0} must satisfy q >= 5 and q = 2 mod 3")]
    BadAffineParameter(u32),
    #[error("acting types differ: {0} vs {1}")]
    ActingTypeMismatch(ActingType, ActingType),
    #[error("action fails validation: {0}")]
    InvalidAction(String),
    #[error("declared {what} = {declared}, measured {measured}")]
    ExpectationMismatch { what: &'static str, declared: String, measured: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Invariants a fixture declares about itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectations {
    pub order: usize,
    pub exponent: u64,
    /// `|C_G(v_i)|` for i = 1, 2, 3.
    pub component_orders: [usize; 3],
    /// Exponent of `G'`.
    pub exp_derived: u64,
    /// Exponent of `C_G(α)` when the action has an α.
    pub exp_centralizer_alpha: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub group: FiniteGroup,
    pub action: ActionSpec,
    pub expected: Expectations,
}

impl Fixture {
    /// Validates the action and checks every declared expectation.
    pub fn new(
        name: String,
        group: FiniteGroup,
        action: ActionSpec,
        expected: Expectations,
    ) -> Result<Self, FixtureError> {
        let f = Fixture { name, group, action, expected };
        f.verify()?;
        Ok(f)
    }

    /// Measures the declared invariants from scratch.
    pub fn measure(&self) -> Expectations {
        let g = &self.group;
        let comp = |i: usize| fixed_points(g, &[self.action.v(i)]).order();
        Expectations {
            order: g.order(),
            exponent: g.exponent(),
            component_orders: [comp(1), comp(2), comp(3)],
            exp_derived: g.exponent_of(&g.derived_subgroup()),
            exp_centralizer_alpha: self
                .action
                .alpha
                .as_ref()
                .map(|a| g.exponent_of(&fixed_points(g, core::slice::from_ref(a)))),
        }
    }

    pub fn verify(&self) -> Result<(), FixtureError> {
        let r = validate_action(&self.group, &self.action)?;
        if !r.hypotheses_hold() {
            return Err(FixtureError::InvalidAction(r.issues.join("; ")));
        }
        let m = self.measure();
        let d = &self.expected;
        macro_rules! cmp {
            ($field:ident) => {
                if m.$field != d.$field {
                    return Err(FixtureError::ExpectationMismatch {
                        what: stringify!($field),
                        declared: format!("{:?}", d.$field),
                        measured: format!("{:?}", m.$field),
                    });
                }
            };
        }
        cmp!(order);
        cmp!(exponent);
        cmp!(component_orders);
        cmp!(exp_derived);
        cmp!(exp_centralizer_alpha);
        Ok(())
    }

    /// Trivial group with identity maps for the given acting type.
    pub fn trivial(acting_type: ActingType) -> Self {
        Fixture {
            name: format!("trivial_{}", acting_type.name().to_lowercase()),
            group: FiniteGroup::trivial(),
            action: ActionSpec::trivial(acting_type, 1),
            expected: Expectations {
                order: 1,
                exponent: 1,
                component_orders: [1, 1, 1],
                exp_derived: 1,
                exp_centralizer_alpha: (acting_type != ActingType::V).then_some(1),
            },
        }
    }
}

fn odd_prime(p: u32) -> Result<(), FixtureError> {
    if p >= 3 && crate::fplinalg::is_prime(p as u64) {
        Ok(())
    } else {
        Err(FixtureError::NotOddPrime(p))
    }
}

fn pc_options() -> LoadOptions {
    LoadOptions { cap: DEFAULT_ORDER_CAP, assoc: AssocCheck::UpToThreshold }
}

/// Automorphism of a group on `p^3` elements indexed `a + pb + p²c`, given
/// by a map on coordinate triples.
fn coordinate_map(p: u32, f: impl Fn(i64, i64, i64) -> (i64, i64, i64)) -> Automorphism {
    let p = p as i64;
    let n = (p * p * p) as usize;
    let mapping = (0..n as i64)
        .map(|x| {
            let (a, b, c) = f(x % p, (x / p) % p, x / (p * p));
            (a.rem_euclid(p) + b.rem_euclid(p) * p + c.rem_euclid(p) * p * p) as usize
        })
        .collect();
    Automorphism::from_mapping_unchecked(mapping)
}

fn triple_names(p: u32, letters: [&str; 3]) -> Vec<String> {
    let n = (p * p * p) as usize;
    (0..n)
        .map(|x| {
            let e = [x % p as usize, (x / p as usize) % p as usize, x / (p * p) as usize];
            let parts: Vec<String> = e
                .iter()
                .zip(letters)
                .filter(|(&k, _)| k != 0)
                .map(|(&k, l)| if k == 1 { String::from(l) } else { format!("{l}^{k}") })
                .collect();
            if parts.is_empty() {
                String::from("1")
            } else {
                parts.join(" ")
            }
        })
        .collect()
}

/// Extraspecial group of order p³ and exponent p with a D₈-action:
/// v1 fixes x, v2 fixes y, α swaps x and y.
pub fn heisenberg_d8(p: u32) -> Result<Fixture, FixtureError> {
    odd_prime(p)?;
    let group = PcPresentation::heisenberg(p).to_group(&pc_options())?;
    let group = group.with_names(triple_names(p, ["x", "y", "z"]))?;
    let v1 = coordinate_map(p, |a, b, c| (a, -b, -c));
    let v2 = coordinate_map(p, |a, b, c| (-a, b, -c));
    let alpha = coordinate_map(p, |a, b, c| (b, a, -c - a * b));
    let pp = p as usize;
    let expected = Expectations {
        order: pp * pp * pp,
        exponent: p as u64,
        component_orders: [pp, pp, pp],
        exp_derived: p as u64,
        exp_centralizer_alpha: Some(p as u64),
    };
    Fixture::new(format!("heisenberg_d8_p{p}"), group, ActionSpec::dihedral(v1, v2, alpha), expected)
}

/// `C_p³` with the even signed permutation matrices (≅ S₄) acting;
/// V is the diagonal sign group.
pub fn cube_s4(p: u32) -> Result<Fixture, FixtureError> {
    odd_prime(p)?;
    let group = PcPresentation::elementary_abelian(p, 3).to_group(&pc_options())?;
    let group = group.with_names(triple_names(p, ["e1", "e2", "e3"]))?;
    let v1 = coordinate_map(p, |a, b, c| (a, -b, -c));
    let v2 = coordinate_map(p, |a, b, c| (-a, b, -c));
    let alpha = coordinate_map(p, |a, b, c| (b, a, c));
    let beta = coordinate_map(p, |a, b, c| (c, a, b));
    let pp = p as usize;
    let expected = Expectations {
        order: pp * pp * pp,
        exponent: p as u64,
        component_orders: [pp, pp, pp],
        exp_derived: 1,
        exp_centralizer_alpha: Some(p as u64),
    };
    Fixture::new(format!("cube_s4_p{p}"), group, ActionSpec::symmetric(v1, v2, alpha, beta), expected)
}

/// Companion matrix of x² + x + 1 and the involution σ with σMσ⁻¹ = M².
pub fn affine_matrices(q: u32) -> (FpMatrix, FpMatrix) {
    let m = FpMatrix::from_rows(q, 2, &[[0, -1], [1, -1]]);
    let sigma = FpMatrix::from_rows(q, 2, &[[1, -1], [0, -1]]);
    (m, sigma)
}

/// `F_q² ⋊ C₃` with C₃ acting through the companion matrix M of x²+x+1,
/// which is irreducible for q ≡ 2 mod 3. Element `(v, k)` has index
/// `v_0 + q·v_1 + q²·k` and `(v, k)(w, l) = (v + M^k w, k + l)`.
pub fn affine_v(q: u32) -> Result<Fixture, FixtureError> {
    if q < 5 || q % 3 != 2 || !crate::fplinalg::is_prime(q as u64) {
        return Err(FixtureError::BadAffineParameter(q));
    }
    let (m, sigma) = affine_matrices(q);
    let sigma_inv = sigma.inverse().expect("sigma is an involution");
    assert_eq!(sigma.mul(&m).mul(&sigma_inv), m.mul(&m), "sigma M sigma^-1 = M^2");
    assert_eq!(sigma.mul(&sigma), FpMatrix::identity(q, 2));

    let qq = q as usize;
    let n = 3 * qq * qq;
    let powers = [FpMatrix::identity(q, 2), m.clone(), m.mul(&m)];
    let dec = |x: usize| ([(x % qq) as u32, ((x / qq) % qq) as u32], x / (qq * qq));
    let enc = |v: &[u32], k: usize| v[0] as usize + v[1] as usize * qq + (k % 3) * qq * qq;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (v, k) = dec(x);
        for y in 0..n {
            let (w, l) = dec(y);
            let mw = powers[k].apply(&w);
            let s = [(v[0] + mw[0]) % q, (v[1] + mw[1]) % q];
            table.push(enc(&s, k + l) as u32);
        }
    }
    let group = FiniteGroup::validate_flat(n, table, &pc_options())?;
    let names = (0..n)
        .map(|x| {
            let (v, k) = dec(x);
            format!("({},{};{})", v[0], v[1], k)
        })
        .collect();
    let group = group.with_names(names)?;

    let map = |f: &dyn Fn([u32; 2], usize) -> (Vec<u32>, usize)| {
        Automorphism::from_mapping_unchecked(
            (0..n)
                .map(|x| {
                    let (v, k) = dec(x);
                    let (w, l) = f(v, k);
                    enc(&w, l)
                })
                .collect(),
        )
    };
    let v1 = map(&|v, k| (sigma.apply(&v), (3 - k) % 3));
    let v3 = map(&|v, k| (v.iter().map(|&a| (q - a) % q).collect(), k));
    let v2 = v1.then(&v3);
    let expected = Expectations {
        order: n,
        exponent: 3 * q as u64,
        component_orders: [qq, qq, 3],
        exp_derived: q as u64,
        exp_centralizer_alpha: None,
    };
    Fixture::new(format!("affine_v_q{q}"), group, ActionSpec::four_group(v1, v2), expected)
}

/// Direct product with the componentwise action. Element `(a, b)` has
/// index `a + b·|G₁|`.
pub fn product_fixture(f1: &Fixture, f2: &Fixture, cap: usize) -> Result<Fixture, FixtureError> {
    if f1.action.acting_type != f2.action.acting_type {
        return Err(FixtureError::ActingTypeMismatch(f1.action.acting_type, f2.action.acting_type));
    }
    let group = f1.group.direct_product(&f2.group, cap)?;
    let n1 = f1.group.order();
    let n = group.order();
    let pair = |a: &Automorphism, b: &Automorphism| {
        Automorphism::from_mapping_unchecked((0..n).map(|x| a.apply(x % n1) + b.apply(x / n1) * n1).collect())
    };
    let opt_pair = |a: &Option<Automorphism>, b: &Option<Automorphism>| match (a, b) {
        (Some(a), Some(b)) => Some(pair(a, b)),
        _ => None,
    };
    let action = ActionSpec {
        acting_type: f1.action.acting_type,
        v1: pair(&f1.action.v1, &f2.action.v1),
        v2: pair(&f1.action.v2, &f2.action.v2),
        alpha: opt_pair(&f1.action.alpha, &f2.action.alpha),
        beta: opt_pair(&f1.action.beta, &f2.action.beta),
    };
    let (e1, e2) = (&f1.expected, &f2.expected);
    let c = |i: usize| e1.component_orders[i] * e2.component_orders[i];
    let expected = Expectations {
        order: n,
        exponent: lcm(e1.exponent, e2.exponent),
        component_orders: [c(0), c(1), c(2)],
        exp_derived: lcm(e1.exp_derived, e2.exp_derived),
        exp_centralizer_alpha: match (e1.exp_centralizer_alpha, e2.exp_centralizer_alpha) {
            (Some(a), Some(b)) => Some(lcm(a, b)),
            _ => None,
        },
    };
    let group = match (f1.group.names(), f2.group.names()) {
        (Some(a), Some(b)) => {
            let names = (0..n).map(|x| format!("[{}, {}]", a[x % n1], b[x / n1])).collect();
            group.with_names(names)?
        }
        _ => group,
    };
    Fixture::new(format!("{}_x_{}", f1.name, f2.name), group, action, expected)
}

/// Builds a fixture from a family name and parameter. The `products`
/// family is `cube_s4(3) × cube_s4(p)`.
pub fn by_family(family: &str, param: u32) -> Result<Fixture, FixtureError> {
    match family {
        "heisenberg_d8" => heisenberg_d8(param),
        "cube_s4" => cube_s4(param),
        "affine_v" => affine_v(param),
        "products" => product_fixture(&cube_s4(3)?, &cube_s4(param)?, DEFAULT_ORDER_CAP),
        _ => Err(FixtureError::InvalidAction(format!("unknown fixture family `{family}`"))),
    }
}

pub const FAMILIES: &[&str] = &["heisenberg_d8", "cube_s4", "affine_v", "products"];

/// The default verification set.
pub const DEFAULT_SET: &[(&str, u32)] = &[
    ("heisenberg_d8", 3),
    ("heisenberg_d8", 5),
    ("cube_s4", 3),
    ("cube_s4", 5),
    ("affine_v", 5),
    ("affine_v", 11),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SeriesKind;

    #[test]
    fn heisenberg_fixture() {
        let f = heisenberg_d8(3).unwrap();
        let m = f.measure();
        assert_eq!(m.order, 27);
        assert_eq!(m.exponent, 3);
        assert_eq!(m.exp_derived, 3);
        assert_eq!(m.exp_centralizer_alpha, Some(3));
        let a = f.action.alpha.clone().unwrap();
        assert!(a.then(&a).is_identity());
        assert_eq!(f.action.v1.conjugate_by(&a), f.action.v2);
        assert_eq!(f.group.names().unwrap()[13], "x y z");

        let f5 = heisenberg_d8(5).unwrap();
        assert_eq!(f5.expected.order, 125);
        assert_eq!(f5.measure().component_orders, [5, 5, 5]);
        assert_eq!(heisenberg_d8(2).unwrap_err(), FixtureError::NotOddPrime(2));
    }

    #[test]
    fn cube_fixture() {
        let f = cube_s4(5).unwrap();
        let ca = fixed_points(&f.group, &[f.action.alpha.clone().unwrap()]);
        assert_eq!(ca.order(), 25);
        assert_eq!(f.group.exponent_of(&ca), 5);
        assert_eq!(f.group.exponent(), 5);
        assert_eq!(cube_s4(3).unwrap().group.order(), 27);
    }

    #[test]
    fn affine_fixture() {
        let f = affine_v(5).unwrap();
        assert_eq!(f.group.order(), 75);
        assert_eq!(f.measure().component_orders, [5, 5, 3]);
        assert!(!f.group.is_nilpotent());
        let lcs = f.group.series(SeriesKind::LowerCentral);
        assert_eq!(lcs.last().unwrap().order(), 25);
        assert_eq!(affine_v(11).unwrap().measure().component_orders, [11, 11, 3]);
        assert_eq!(affine_v(7).unwrap_err(), FixtureError::BadAffineParameter(7));
        assert_eq!(affine_v(3).unwrap_err(), FixtureError::BadAffineParameter(3));
    }

    #[test]
    fn affine_matrix_relations() {
        for q in [5u32, 11, 17] {
            let (m, s) = affine_matrices(q);
            let s_inv = s.inverse().unwrap();
            assert_eq!(s.mul(&m).mul(&s_inv), m.mul(&m));
            assert_eq!(m.pow(3), FpMatrix::identity(q, 2));
        }
    }

    #[test]
    fn products() {
        let h = heisenberg_d8(3).unwrap();
        let hh = product_fixture(&h, &h, 5000).unwrap();
        assert_eq!(hh.group.order(), 729);
        assert_eq!(hh.group.exponent(), 3);
        let t = product_fixture(&h, &Fixture::trivial(ActingType::D8), 5000).unwrap();
        assert_eq!(t.group.order(), 27);
        let c = product_fixture(&cube_s4(3).unwrap(), &cube_s4(5).unwrap(), 5000).unwrap();
        assert_eq!((c.group.order(), c.expected.exponent), (3375, 15));
        let err = product_fixture(&h, &cube_s4(3).unwrap(), 5000).unwrap_err();
        assert_eq!(err, FixtureError::ActingTypeMismatch(ActingType::D8, ActingType::S4));
        assert!(matches!(product_fixture(&h, &h, 100), Err(FixtureError::Group(GroupError::OrderCap { .. }))));
    }

    #[test]
    fn all_fixtures_odd_order() {
        for &(fam, p) in DEFAULT_SET {
            let f = by_family(fam, p).unwrap();
            assert!(f.group.has_odd_order());
            assert!([4, 8, 24].contains(&f.action.acting_type.order()));
            let coprime = crate::group::gcd_u64(f.group.order() as u64, f.action.acting_type.order() as u64) == 1;
            assert_eq!(coprime, !(fam == "cube_s4" && p == 3));
        }
    }
}
