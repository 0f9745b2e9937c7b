//! JSON file formats for groups, polycyclic presentations, actions, Lie
//! algebras and fixture expectations.

use std::fs;
use std::path::Path;

use fpfgroups_core::actions::{ActingType, ActionSpec, Automorphism};
use fpfgroups_core::fixtures::{Expectations, Fixture};
use fpfgroups_core::fplinalg::{FpMatrix, FpSubspace};
use fpfgroups_core::group::{FiniteGroup, LoadOptions};
use fpfgroups_core::lie::{LieAction, LieAlgebra};
use fpfgroups_core::pc::PcPresentation;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &Path, message: impl ToString) -> FormatError {
    FormatError::Invalid { path: path.display().to_string(), message: message.to_string() }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json { path: path.display().to_string(), source })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            order: g.order(),
            table: (0..g.order()).map(|i| g.table_row(i).collect()).collect(),
            names: g.names().map(<[String]>::to_vec),
        }
    }

    pub fn to_group(&self, opts: &LoadOptions) -> Result<FiniteGroup, String> {
        if self.table.len() != self.order {
            return Err(format!("order is {} but the table has {} rows", self.order, self.table.len()));
        }
        let g = FiniteGroup::from_table(&self.table, opts).map_err(|e| e.to_string())?;
        match &self.names {
            Some(n) => g.with_names(n.clone()).map_err(|e| e.to_string()),
            None => Ok(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcCommutator {
    /// Larger generator index.
    pub j: usize,
    pub i: usize,
    /// `[g_j, g_i]` as an exponent vector.
    pub word: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcFile {
    pub prime: u32,
    pub ngens: usize,
    /// `g_i^p` as an exponent vector, one per generator.
    pub powers: Vec<Vec<u32>>,
    #[serde(default)]
    pub commutators: Vec<PcCommutator>,
}

impl PcFile {
    pub fn from_presentation(pc: &PcPresentation) -> Self {
        PcFile {
            prime: pc.prime(),
            ngens: pc.ngens(),
            powers: (0..pc.ngens()).map(|i| pc.power_word(i).to_vec()).collect(),
            commutators: pc
                .commutator_relations()
                .into_iter()
                .map(|(j, i, word)| PcCommutator { j, i, word })
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<PcPresentation, String> {
        let comms: Vec<(usize, usize, Vec<u32>)> =
            self.commutators.iter().map(|c| (c.j, c.i, c.word.clone())).collect();
        PcPresentation::new(self.prime, self.ngens, self.powers.clone(), &comms).map_err(|e| e.to_string())
    }
}

/// Reads a group file or a polycyclic presentation file, told apart by
/// their fields.
pub fn load_group(path: &Path, opts: &LoadOptions) -> Result<FiniteGroup, FormatError> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("table").is_some() {
        let f: GroupFile =
            serde_json::from_value(value).map_err(|source| FormatError::Json { path: path.display().to_string(), source })?;
        f.to_group(opts).map_err(|m| invalid(path, m))
    } else if value.get("powers").is_some() {
        let f: PcFile =
            serde_json::from_value(value).map_err(|source| FormatError::Json { path: path.display().to_string(), source })?;
        let pc = f.to_presentation().map_err(|m| invalid(path, m))?;
        pc.to_group(opts).map_err(|e| invalid(path, e))
    } else {
        Err(invalid(path, "neither a group table nor a polycyclic presentation"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub acting_type: String,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<usize>>,
}

impl ActionFile {
    pub fn from_spec(spec: &ActionSpec) -> Self {
        ActionFile {
            acting_type: spec.acting_type.name().to_string(),
            v1: spec.v1.mapping().to_vec(),
            v2: spec.v2.mapping().to_vec(),
            alpha: spec.alpha.as_ref().map(|a| a.mapping().to_vec()),
            beta: spec.beta.as_ref().map(|a| a.mapping().to_vec()),
        }
    }

    /// Permutation checks only; validity as an action is left to
    /// `validate_action`.
    pub fn to_spec(&self, order: usize) -> Result<ActionSpec, String> {
        let acting_type =
            ActingType::parse(&self.acting_type).ok_or_else(|| format!("unknown acting type `{}`", self.acting_type))?;
        let map = |name: &'static str, m: &Vec<usize>| Automorphism::from_mapping(name, m.clone(), order);
        let err = |e: fpfgroups_core::actions::ActionError| e.to_string();
        Ok(ActionSpec {
            acting_type,
            v1: map("v1", &self.v1).map_err(err)?,
            v2: map("v2", &self.v2).map_err(err)?,
            alpha: self.alpha.as_ref().map(|m| map("alpha", m)).transpose().map_err(err)?,
            beta: self.beta.as_ref().map(|m| map("beta", m)).transpose().map_err(err)?,
        })
    }
}

pub fn load_action(path: &Path, order: usize) -> Result<ActionSpec, FormatError> {
    let f: ActionFile = read_json(path)?;
    f.to_spec(order).map_err(|m| invalid(path, m))
}

/// Matrices are stored as lists of rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieActionFile {
    pub v1: Vec<Vec<u32>>,
    pub v2: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub prime: u32,
    pub dim: usize,
    /// `(i, j, [e_i, e_j])` for `i < j`; omitted pairs bracket to zero.
    #[serde(default)]
    pub brackets: Vec<(usize, usize, Vec<u32>)>,
    /// Basis indices of each graded component, in weight order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<LieActionFile>,
}

fn rows_of(m: &FpMatrix) -> Vec<Vec<u32>> {
    m.row_vectors().map(<[u32]>::to_vec).collect()
}

fn matrix_of(p: u32, dim: usize, rows: &[Vec<u32>], name: &str) -> Result<FpMatrix, String> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(format!("action matrix `{name}` is not {dim}x{dim}"));
    }
    Ok(FpMatrix::from_residue_rows(p, dim, rows))
}

/// Index sets of components spanned by basis vectors; `None` if some
/// component is not.
fn coordinate_grading(l: &LieAlgebra) -> Option<Vec<Vec<usize>>> {
    let g = l.grading()?;
    g.iter()
        .map(|c| {
            let idx = c.pivots().to_vec();
            (FpSubspace::coordinate(l.prime(), l.dim(), &idx) == *c).then_some(idx)
        })
        .collect()
}

impl LieFile {
    pub fn from_algebra(l: &LieAlgebra, action: Option<&LieAction>) -> Self {
        let mut brackets = Vec::new();
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let v = l.basis_bracket(i, j);
                if v.iter().any(|&c| c != 0) {
                    brackets.push((i, j, v.to_vec()));
                }
            }
        }
        LieFile {
            prime: l.prime(),
            dim: l.dim(),
            brackets,
            grading: coordinate_grading(l),
            action: action.map(|a| LieActionFile {
                v1: rows_of(&a.v1),
                v2: rows_of(&a.v2),
                alpha: a.alpha.as_ref().map(rows_of),
                beta: a.beta.as_ref().map(rows_of),
            }),
        }
    }

    pub fn to_algebra(&self) -> Result<(LieAlgebra, Option<LieAction>), String> {
        let (p, n) = (self.prime, self.dim);
        let mut l = LieAlgebra::new(p, n, &self.brackets).map_err(|e| e.to_string())?;
        if let Some(gr) = &self.grading {
            if let Some(&bad) = gr.iter().flatten().find(|&&i| i >= n) {
                return Err(format!("grading index {bad} out of range"));
            }
            let comps = gr.iter().map(|idx| FpSubspace::coordinate(p, n, idx)).collect();
            l = l.with_grading(comps).map_err(|e| e.to_string())?;
        }
        let action = match &self.action {
            None => None,
            Some(a) => {
                let act = LieAction {
                    v1: matrix_of(p, n, &a.v1, "v1")?,
                    v2: matrix_of(p, n, &a.v2, "v2")?,
                    alpha: a.alpha.as_ref().map(|m| matrix_of(p, n, m, "alpha")).transpose()?,
                    beta: a.beta.as_ref().map(|m| matrix_of(p, n, m, "beta")).transpose()?,
                };
                act.validate(&l).map_err(|e| e.to_string())?;
                Some(act)
            }
        };
        Ok((l, action))
    }
}

pub fn load_lie(path: &Path) -> Result<(LieAlgebra, Option<LieAction>), FormatError> {
    let f: LieFile = read_json(path)?;
    f.to_algebra().map_err(|m| invalid(path, m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationsFile {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
    pub component_orders: [usize; 3],
    pub exp_derived: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_centralizer_alpha: Option<u64>,
}

impl ExpectationsFile {
    pub fn from_fixture(f: &Fixture) -> Self {
        let e = &f.expected;
        ExpectationsFile {
            name: f.name.clone(),
            order: e.order,
            exponent: e.exponent,
            component_orders: e.component_orders,
            exp_derived: e.exp_derived,
            exp_centralizer_alpha: e.exp_centralizer_alpha,
        }
    }

    pub fn expectations(&self) -> Expectations {
        Expectations {
            order: self.order,
            exponent: self.exponent,
            component_orders: self.component_orders,
            exp_derived: self.exp_derived,
            exp_centralizer_alpha: self.exp_centralizer_alpha,
        }
    }
}

pub const GROUP_FILE: &str = "group.json";
pub const ACTION_FILE: &str = "action.json";
pub const EXPECTATIONS_FILE: &str = "expectations.json";

/// Writes the three fixture files into `dir`, creating it if needed.
pub fn write_fixture(dir: &Path, f: &Fixture) -> Result<(), FormatError> {
    fs::create_dir_all(dir).map_err(|source| FormatError::Io { path: dir.display().to_string(), source })?;
    write_json(&dir.join(GROUP_FILE), &GroupFile::from_group(&f.group))?;
    write_json(&dir.join(ACTION_FILE), &ActionFile::from_spec(&f.action))?;
    write_json(&dir.join(EXPECTATIONS_FILE), &ExpectationsFile::from_fixture(f))
}

/// Reads a fixture directory written by [`write_fixture`]. The declared
/// expectations are checked against the group.
pub fn read_fixture(dir: &Path) -> Result<Fixture, FormatError> {
    let group = load_group(&dir.join(GROUP_FILE), &LoadOptions::default())?;
    let action = load_action(&dir.join(ACTION_FILE), group.order())?;
    let exp: ExpectationsFile = read_json(&dir.join(EXPECTATIONS_FILE))?;
    Fixture::new(exp.name.clone(), group, action, exp.expectations()).map_err(|e| invalid(dir, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fpfgroups_core::fixtures;
    use fpfgroups_core::jennings::{build_dl, induce_action};

    #[test]
    fn group_file_reloads() {
        let f = fixtures::heisenberg_d8(3).unwrap();
        let file = GroupFile::from_group(&f.group);
        let text = serde_json::to_string(&file).unwrap();
        let back: GroupFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_group(&LoadOptions::default()).unwrap(), f.group);
    }

    #[test]
    fn bad_tables_rejected() {
        let file = GroupFile { order: 2, table: vec![vec![0, 1], vec![1, 1]], names: None };
        assert!(file.to_group(&LoadOptions::default()).is_err());
        let short = GroupFile { order: 3, table: vec![vec![0]], names: None };
        assert!(short.to_group(&LoadOptions::default()).is_err());
    }

    #[test]
    fn pc_file_builds_heisenberg() {
        let pc = PcPresentation::heisenberg(3);
        let file = PcFile::from_presentation(&pc);
        let g = file.to_presentation().unwrap().to_group(&LoadOptions::default()).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn lie_file_keeps_grading_and_action() {
        let f = fixtures::heisenberg_d8(5).unwrap();
        let dl = build_dl(&f.group, 5).unwrap();
        let act = induce_action(&f.group, &dl, &f.action).unwrap();
        let file = LieFile::from_algebra(&dl.algebra, Some(&act));
        assert_eq!(file.grading, Some(vec![vec![0, 1], vec![2]]));
        let (l, a) = file.to_algebra().unwrap();
        assert_eq!(l.grading(), dl.algebra.grading());
        assert_eq!(a.unwrap(), act);
    }

    #[test]
    fn action_file_shape_errors() {
        let f = ActionFile { acting_type: "Q8".into(), v1: vec![0], v2: vec![0], alpha: None, beta: None };
        assert!(f.to_spec(1).is_err());
        let f = ActionFile { acting_type: "V".into(), v1: vec![0, 0], v2: vec![0, 1], alpha: None, beta: None };
        assert!(f.to_spec(2).unwrap_err().contains("v1"));
    }
}
