//! Command implementations, independent of argument parsing.

use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use fpfgroups_core::actions::{fixed_points, validate_action, ActionSpec};
use fpfgroups_core::criterion::{
    check_proposition_lie, find_generating_x1, hypothesis_profile, proposition_entry, verify_sec2_lemmas,
    CriterionError,
};
use fpfgroups_core::fixtures::{self, Fixture, DEFAULT_SET};
use fpfgroups_core::group::{prime_of_prime_power, FiniteGroup, SeriesKind, Subgroup};
use fpfgroups_core::jennings::{build_dl, induce_action, jennings_report, jennings_series};
use fpfgroups_core::lie::{derived_length, nilpotency_class, LieAction, LieAlgebra};
use fpfgroups_core::report::VerificationReport;
use fpfgroups_core::suite::{exponent_row, verify_fixture, ExponentRow, SuiteOptions};
use fpfgroups_core::vtheory::{v_components, verify_v_lemmas, StarTable};
use rayon::prelude::*;

use crate::formats::{self, LieFile};

fn orders(series: &[Subgroup]) -> Vec<usize> {
    series.iter().map(Subgroup::order).collect()
}

/// Order, exponent, series shapes, the powerful predicate and Jennings
/// layer dimensions.
pub fn info(g: &FiniteGroup, prime: Option<u32>) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("info");
    r.measure("order", g.order());
    r.measure("exponent", g.exponent());
    r.measure("abelian", g.is_abelian());
    r.measure("nilpotent", g.is_nilpotent());
    r.measure("class", g.nilpotency_class());
    r.measure("lower_central_orders", orders(&g.series(SeriesKind::LowerCentral)));
    r.measure("derived_orders", orders(&g.series(SeriesKind::Derived)));
    r.measure("upper_central_orders", orders(&g.series(SeriesKind::UpperCentral)));
    r.measure("center_order", g.center().order());
    let p = prime.map(u64::from).or_else(|| prime_of_prime_power(g.order()));
    match p {
        Some(p) if g.order() == 1 || prime_of_prime_power(g.order()) == Some(p) => {
            r.measure("prime", p);
            r.measure("powerful", g.is_powerful(p)?);
            let f = jennings_series(g, p as u32)?;
            r.measure("layers", f.layer_dims());
        }
        Some(p) => r.measure("note", format!("not a {p}-group; Jennings layers undefined")),
        None => {}
    }
    Ok(r)
}

/// The Jennings report, plus the algebra as a Lie file (with the induced
/// action when one is given).
pub fn jennings(
    g: &FiniteGroup,
    prime: Option<u32>,
    action: Option<&ActionSpec>,
) -> Result<(VerificationReport, LieFile)> {
    let p = match prime {
        Some(p) => p,
        None => prime_of_prime_power(g.order()).ok_or_else(|| anyhow!("group order {} is not a prime power", g.order()))?
            as u32,
    };
    let mut r = jennings_report(g, p)?;
    r.subject = format!("jennings p={p}");
    let dl = build_dl(g, p)?;
    let act = match action {
        Some(spec) => {
            let a = induce_action(g, &dl, spec)?;
            r.check("induced_action", true, "induced maps preserve the bracket");
            Some(a)
        }
        None => None,
    };
    Ok((r, LieFile::from_algebra(&dl.algebra, act.as_ref())))
}

pub fn action_verify(g: &FiniteGroup, spec: &ActionSpec) -> Result<VerificationReport> {
    let ar = validate_action(g, spec)?;
    let mut r = VerificationReport::new(format!("action {}", spec.acting_type));
    let issues = ar.issues.join("; ");
    r.check("well_defined", ar.well_defined, "every named map is an automorphism");
    r.check("relations", ar.relations_hold, "defining relations of the acting group");
    r.check("faithful", ar.faithful, format!("named maps generate {} automorphisms", ar.acting_order));
    r.check("fpf_on_v", ar.fpf_on_v, "C_G(V) = 1");
    r.measure("coprime", ar.coprime);
    r.measure("acting_order", ar.acting_order);
    let comps: Vec<usize> = (1..=3).map(|i| fixed_points(g, &[spec.v(i)]).order()).collect();
    r.measure("component_orders", comps);
    if !issues.is_empty() {
        r.measure("issues", issues);
    }
    Ok(r)
}

pub fn vtheory_verify(g: &FiniteGroup, spec: &ActionSpec) -> Result<VerificationReport> {
    let mut r = verify_v_lemmas(g, spec)?;
    r.subject = String::from("vtheory");
    Ok(r)
}

/// `x * y` for `x ∈ G_i`, `y ∈ G_j`, `i ≠ j`, by the memo table and by the
/// direct scan.
pub fn star(g: &FiniteGroup, spec: &ActionSpec, x: usize, y: usize) -> Result<VerificationReport> {
    if x >= g.order() || y >= g.order() {
        bail!("element index out of range for a group of order {}", g.order());
    }
    let d = v_components(g, spec)?;
    let comp = |e: usize| d.component_of(e).ok_or_else(|| anyhow!("element {e} lies in no single component"));
    let (i, j) = (comp(x)?, comp(y)?);
    if i == j {
        bail!("elements {x} and {y} both lie in G_{i}");
    }
    let table = StarTable::new(&d);
    let (s, t) = table.star_pair(x, i, y, j)?;
    let scan = d.star_by_scan(x, i, y, j)?;
    let mut r = VerificationReport::new("star");
    r.check("memo_matches_scan", (s, t) == scan, "memoized factor equals the direct scan");
    let name = |e: usize| g.names().map_or_else(|| e.to_string(), |n| n[e].clone());
    r.measure("x", name(x));
    r.measure("y", name(y));
    r.measure("components", vec![i, j]);
    r.measure("star", name(s));
    r.measure("t", name(t));
    r.measure("conjugate", name(g.conj(y, x)));
    Ok(r)
}

/// Graded-algebra lemmas, the `(m, n)` profile and the nilpotency verdict.
pub fn criterion(
    l: &LieAlgebra,
    action: &LieAction,
    x1: Option<&[u32]>,
    cap: u64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("criterion");
    r.absorb("sec2", verify_sec2_lemmas(l, action)?);
    r.measure("dim", l.dim());
    r.measure("class", nilpotency_class(l));
    r.measure("derived_length", derived_length(l));
    if action.alpha.is_none() {
        r.skip("proposition_lie", "action has no alpha");
        return Ok(r);
    }
    let x1 = match x1 {
        Some(x) => x.to_vec(),
        None => match find_generating_x1(l, action, cap)? {
            Some(x) => x,
            None => {
                r.skip("proposition_lie", "no x1 in L_1 generates L together with its alpha-image");
                return Ok(r);
            }
        },
    };
    r.measure("x1", x1.iter().map(|&c| u64::from(c)).collect::<Vec<u64>>());
    let prof = hypothesis_profile(l, action, &x1, cap)?;
    r.measure("weight_dims", prof.weight_dims.clone());
    r.measure("alpha_dims", prof.alpha_dims.clone());
    r.measure("m", prof.m);
    r.measure("n", prof.n);
    r.measure("element_count", prof.element_count);
    r.measure("pair_count", prof.pair_count);
    r.measure("truncated", prof.truncated);
    match check_proposition_lie(l, action, &x1, cap) {
        Ok(rec) => proposition_entry(&mut r, "proposition_lie", &rec),
        Err(CriterionError::Unbounded) => r.skip("proposition_lie", "hypotheses fail: m or n unbounded"),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

/// One row per parameter; a parameter outside the family's precondition
/// is an error.
pub fn exponent_rows(family: &str, params: &[u32]) -> Result<Vec<(u32, ExponentRow)>> {
    params
        .par_iter()
        .map(|&p| {
            let f = fixtures::by_family(family, p).with_context(|| format!("{family} with parameter {p}"))?;
            Ok((p, exponent_row(&f)))
        })
        .collect()
}

/// Where `verify all` takes its fixtures from.
#[derive(Debug, Clone)]
pub enum Selection {
    /// The default set, optionally filtered by fixture names, family names
    /// or `family:param` items (the latter may lie outside the set).
    Builtin(Option<Vec<String>>),
    /// Fixture directories written by `fixtures build`: either `dir` itself
    /// or each of its subdirectories.
    Directory(std::path::PathBuf, Option<Vec<String>>),
}

enum Source {
    Family(String, u32),
    Dir(std::path::PathBuf),
}

fn family_of(name: &str) -> Option<&'static str> {
    fixtures::FAMILIES.iter().copied().find(|f| {
        name.strip_prefix(f).is_some_and(|rest| rest.starts_with("_p") || rest.starts_with("_q"))
    })
}

fn sources(sel: &Selection) -> Result<Vec<Source>> {
    let filter = match sel {
        Selection::Builtin(f) | Selection::Directory(_, f) => {
            f.as_ref().map(|v| v.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect::<Vec<_>>())
        }
    };
    match sel {
        Selection::Builtin(_) => {
            let default: Vec<(String, u32)> = DEFAULT_SET.iter().map(|&(f, p)| (f.to_string(), p)).collect();
            let Some(items) = filter else {
                return Ok(default.into_iter().map(|(f, p)| Source::Family(f, p)).collect());
            };
            let mut out: Vec<(String, u32)> = Vec::new();
            for item in &items {
                let matched: Vec<(String, u32)> = if let Some((fam, p)) = item.split_once(':') {
                    let p: u32 = p.parse().with_context(|| format!("bad parameter in selector `{item}`"))?;
                    vec![(fam.to_string(), p)]
                } else {
                    default
                        .iter()
                        .filter(|(f, p)| f == item || fixture_name(f, *p) == *item)
                        .cloned()
                        .collect()
                };
                if matched.is_empty() {
                    bail!("selector `{item}` matches no fixture");
                }
                for m in matched {
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
            Ok(out.into_iter().map(|(f, p)| Source::Family(f, p)).collect())
        }
        Selection::Directory(dir, _) => {
            let mut dirs = Vec::new();
            if dir.join(formats::GROUP_FILE).exists() {
                dirs.push(dir.clone());
            } else {
                let entries = std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))?;
                for e in entries {
                    let path = e?.path();
                    if path.join(formats::GROUP_FILE).exists() {
                        dirs.push(path);
                    }
                }
            }
            dirs.sort();
            if let Some(items) = filter {
                dirs.retain(|d| {
                    let n = d.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    items.iter().any(|i| *i == n || family_of(&n) == Some(i.as_str()))
                });
            }
            Ok(dirs.into_iter().map(Source::Dir).collect())
        }
    }
}

fn fixture_name(family: &str, p: u32) -> String {
    match family {
        "affine_v" => format!("affine_v_q{p}"),
        "products" => format!("cube_s4_p3_x_cube_s4_p{p}"),
        _ => format!("{family}_p{p}"),
    }
}

fn load(src: &Source) -> Result<Fixture> {
    match src {
        Source::Family(f, p) => Ok(fixtures::by_family(f, *p).with_context(|| format!("building {f} with {p}"))?),
        Source::Dir(d) => Ok(formats::read_fixture(d)?),
    }
}

/// Builds (or loads) and verifies each selected fixture, in parallel;
/// results are ordered by fixture name.
pub fn verify_all(sel: &Selection, opts: &SuiteOptions) -> Result<Vec<(VerificationReport, Duration)>> {
    let srcs = sources(sel)?;
    let fixtures: Vec<Fixture> = srcs.par_iter().map(load).collect::<Result<_>>()?;
    let mut out: Vec<(VerificationReport, Duration)> = fixtures
        .par_iter()
        .map(|f| {
            let start = Instant::now();
            let r = verify_fixture(f, opts);
            (r, start.elapsed())
        })
        .collect();
    out.sort_by(|a, b| a.0.subject.cmp(&b.0.subject));
    Ok(out)
}

pub fn build_fixture(name: &str, p: u32, dir: &Path) -> Result<Fixture> {
    let f = fixtures::by_family(name, p).with_context(|| format!("building {name} with {p}"))?;
    formats::write_fixture(dir, &f)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fpfgroups_core::report::Measure;

    #[test]
    fn info_on_small_groups() {
        let r = info(&FiniteGroup::cyclic(9), Some(3)).unwrap();
        assert_eq!(r.get("layers"), Some(&Measure::Ints(vec![1, 0, 1])));
        assert_eq!(r.get("powerful"), Some(&Measure::Bool(true)));
        let r = info(&FiniteGroup::trivial(), None).unwrap();
        assert_eq!(r.get("order"), Some(&Measure::Int(1)));
        let r = info(&FiniteGroup::cyclic(6), Some(3)).unwrap();
        assert!(r.get("layers").is_none());
    }

    #[test]
    fn selectors() {
        let all = sources(&Selection::Builtin(None)).unwrap();
        assert_eq!(all.len(), DEFAULT_SET.len());
        let some = sources(&Selection::Builtin(Some(vec!["cube_s4".into(), "heisenberg_d8_p3".into()]))).unwrap();
        assert_eq!(some.len(), 3);
        assert!(sources(&Selection::Builtin(Some(vec![String::new()]))).unwrap().is_empty());
        assert!(sources(&Selection::Builtin(Some(vec!["nope".into()]))).is_err());
        let extra = sources(&Selection::Builtin(Some(vec!["heisenberg_d8:7".into()]))).unwrap();
        assert!(matches!(&extra[0], Source::Family(f, 7) if f == "heisenberg_d8"));
        assert_eq!(family_of("affine_v_q11"), Some("affine_v"));
    }

    #[test]
    fn star_on_heisenberg() {
        let f = fixtures::heisenberg_d8(3).unwrap();
        // x = 1 in G_1 and y = 3 in G_2
        let r = star(&f.group, &f.action, 1, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.get("components"), Some(&Measure::Ints(vec![1, 2])));
        assert!(star(&f.group, &f.action, 1, 1000).is_err());
    }
}
