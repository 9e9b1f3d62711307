//! Simplicial fans and their Cox data.
//!
//! A [`Fan`] is a list of primitive integer rays plus the maximal cones as
//! index sets. From it we derive the multigrading of the Cox ring (the
//! character lattice of the group `G_Σ`, i.e. the cokernel of
//! `x ↦ (<n_i, x>)_i`) and the exceptional set `Z_Σ` (one coordinate
//! subspace per primitive collection). A [`ToricModel`] bundles the two;
//! weighted projective spaces are supplied grading-first since their rays
//! are not lattice vectors.

mod io;
pub mod lattice;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::FieldSpec;
use lattice::{hermite_normal_form, small_unimodular, smith_normal_form, transpose, IntMatrix};

pub use io::{parse_fan, write_fan};

/// Primitive collections are found by subset enumeration, so keep ρ small.
pub const MAX_RAYS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("cone {cone:?} is not simplicial (its rays are linearly dependent)")]
    NonSimplicialFan { cone: Vec<usize> },
    #[error("ray {index} is not primitive (or is zero)")]
    NonPrimitiveRay { index: usize },
    #[error("ray {index} has {got} coordinates, expected {dim}")]
    DimensionMismatch { index: usize, got: usize, dim: usize },
    #[error("cone {cone:?} references a missing ray")]
    BadRayIndex { cone: Vec<usize> },
    #[error("maximal cone {inner:?} is contained in {outer:?}")]
    NestedCones { inner: Vec<usize>, outer: Vec<usize> },
    #[error("fan has {0} rays; at most {MAX_RAYS} are supported")]
    TooManyRays(usize),
    #[error("class group has torsion (invariant factors {0:?})")]
    TorsionClassGroup(Vec<i64>),
    #[error("no unimodular change of basis makes the weights nonnegative: {0:?}")]
    NonEffectiveGrading(IntMatrix),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simplicial fan in `Z^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds and validates a fan; cone index lists are sorted.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let fan = Fan { dim, rays, max_cones };
        fan.validate()?;
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn validate(&self) -> Result<(), FanError> {
        if self.rays.len() > MAX_RAYS {
            return Err(FanError::TooManyRays(self.rays.len()));
        }
        for (index, ray) in self.rays.iter().enumerate() {
            if ray.len() != self.dim {
                return Err(FanError::DimensionMismatch { index, got: ray.len(), dim: self.dim });
            }
            let g = ray.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { index });
            }
        }
        for cone in &self.max_cones {
            if cone.iter().any(|&i| i >= self.rays.len()) {
                return Err(FanError::BadRayIndex { cone: cone.clone() });
            }
            let m: IntMatrix = cone.iter().map(|&i| self.rays[i].clone()).collect();
            if lattice::rank(&m) != cone.len() {
                return Err(FanError::NonSimplicialFan { cone: cone.clone() });
            }
        }
        for (i, inner) in self.max_cones.iter().enumerate() {
            for (j, outer) in self.max_cones.iter().enumerate() {
                if i != j && is_subset(inner, outer) {
                    return Err(FanError::NestedCones { inner: inner.clone(), outer: outer.clone() });
                }
            }
        }
        Ok(())
    }

    fn in_some_cone(&self, set: &[usize]) -> bool {
        self.max_cones.iter().any(|c| is_subset(set, c))
    }

    /// Minimal ray subsets that lie in no cone, in lexicographic order.
    pub fn primitive_collections(&self) -> Vec<Vec<usize>> {
        let n = self.rays.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for size in 1..=n {
            for set in subsets_of_size(n, size) {
                // a superset of a primitive collection is never minimal
                if out.iter().any(|p| is_subset(p, &set)) {
                    continue;
                }
                if self.in_some_cone(&set) {
                    continue;
                }
                let minimal = (0..set.len()).all(|k| {
                    let mut smaller = set.clone();
                    smaller.remove(k);
                    self.in_some_cone(&smaller)
                });
                if minimal {
                    out.push(set);
                }
            }
        }
        out.sort();
        out
    }

    /// Cox grading: classes of the coordinate divisors in the cokernel of
    /// `Z^d → Z^ρ`, normalized to a deterministic nonnegative basis when one exists.
    pub fn grading(&self) -> Result<GradingData, FanError> {
        let rho = self.rays.len();
        let smith = smith_normal_form(&self.rays, self.dim);
        let torsion: Vec<i64> = smith.diagonal().into_iter().filter(|&x| x > 1).collect();
        let r = rho - smith.rank;
        // row i of the weight matrix = free coordinates of U e_i
        let signed: IntMatrix = (0..rho)
            .map(|i| (0..r).map(|j| smith.u[smith.rank + j][i]).collect())
            .collect();
        let weights = normalize_weights(&signed, r)?;
        Ok(GradingData { rho, r, weights, torsion })
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// HNF of the column lattice, then the nonnegative representative with the
/// smallest entry sum among small unimodular changes; columns sorted in
/// decreasing lexicographic order.
fn normalize_weights(signed: &IntMatrix, r: usize) -> Result<IntMatrix, FanError> {
    let rho = signed.len();
    if r == 0 {
        return Ok(vec![Vec::new(); rho]);
    }
    let basis = hermite_normal_form(&transpose(signed, r), rho);
    let bound = match r {
        1 | 2 => 2,
        3 => 1,
        _ => 0,
    };
    let changes = if bound == 0 { vec![lattice::identity(r)] } else { small_unimodular(r, bound) };
    let mut best: Option<(i64, IntMatrix)> = None;
    for w in changes {
        let mut cols = lattice::matmul(&w, &basis);
        if cols.iter().flatten().any(|&x| x < 0) {
            continue;
        }
        cols.sort_by(|a, b| b.cmp(a));
        let sum: i64 = cols.iter().flatten().sum();
        if best.as_ref().is_none_or(|(s, b)| (sum, &cols) < (*s, b)) {
            best = Some((sum, cols));
        }
    }
    match best {
        Some((_, cols)) => Ok(transpose(&cols, rho)),
        None => Err(FanError::NonEffectiveGrading(transpose(&basis, rho))),
    }
}

/// Degrees of the Cox variables: row `i` is `deg X_i ∈ Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingData {
    pub rho: usize,
    pub r: usize,
    pub weights: IntMatrix,
    /// Invariant factors > 1 of the class group; empty when it is free.
    pub torsion: Vec<i64>,
}

impl GradingData {
    pub fn new(weights: IntMatrix) -> Self {
        let rho = weights.len();
        let r = weights.first().map_or(0, Vec::len);
        GradingData { rho, r, weights, torsion: Vec::new() }
    }

    /// `deg X_i = 1` for every variable.
    pub fn standard(rho: usize) -> Self {
        Self::new(vec![vec![1]; rho])
    }

    pub fn is_effective(&self) -> bool {
        self.weights.iter().flatten().all(|&x| x >= 0)
    }

    pub fn is_standard(&self) -> bool {
        self.r == 1 && self.weights.iter().all(|w| w[0] == 1)
    }

    pub fn require_free(&self) -> Result<(), FanError> {
        if self.torsion.is_empty() {
            Ok(())
        } else {
            Err(FanError::TorsionClassGroup(self.torsion.clone()))
        }
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.weights.iter().map(|w| w[j]).collect()
    }
}

/// Union of coordinate subspaces `{x : x_i = 0 for i in S}`, one per stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSet {
    pub strata: Vec<Vec<usize>>,
}

impl ExceptionalSet {
    pub fn contains(&self, point: &[u32]) -> bool {
        self.strata.iter().any(|s| s.iter().all(|&i| point[i] == 0))
    }

    /// Number of `F_q`-points in an ambient space of `rho` coordinates, by
    /// inclusion–exclusion over the strata.
    pub fn count_points(&self, rho: usize, q: u64) -> u64 {
        let k = self.strata.len();
        let mut total: i128 = 0;
        for mask in 1u32..(1 << k) {
            let mut union: Vec<usize> = Vec::new();
            for (b, s) in self.strata.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    union.extend(s);
                }
            }
            union.sort_unstable();
            union.dedup();
            let term = (q as i128).pow((rho - union.len()) as u32);
            if mask.count_ones() % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        u64::try_from(total).expect("exceptional count fits in u64")
    }
}

/// Named constructions shipped with the library.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Builtin {
    Projective(usize),
    Weighted(Vec<i64>),
    BlowupP2,
    BlowupP4Line,
}

impl Builtin {
    pub const NAMES: [&'static str; 4] = ["projective(d)", "weighted(a0,...,ad)", "blowup_p2", "blowup_p4_line"];

    pub fn parse(name: &str) -> Result<Self, FanError> {
        let name = name.trim();
        let bad = || FanError::InvalidParams(format!("unknown builtin `{name}`"));
        let args = |s: &str| -> Result<Vec<i64>, FanError> {
            s.strip_suffix(')')
                .ok_or_else(bad)?
                .split(',')
                .map(|a| a.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        match name {
            "blowup_p2" => Ok(Builtin::BlowupP2),
            "blowup_p4_line" => Ok(Builtin::BlowupP4Line),
            _ => {
                if let Some(rest) = name.strip_prefix("projective(") {
                    match args(rest)?.as_slice() {
                        [d] if *d >= 1 => Ok(Builtin::Projective(*d as usize)),
                        _ => Err(FanError::InvalidParams("projective(d) needs d >= 1".into())),
                    }
                } else if let Some(rest) = name.strip_prefix("weighted(") {
                    let a = args(rest)?;
                    if a.len() < 2 || a.iter().any(|&x| x < 1) {
                        return Err(FanError::InvalidParams("weighted(a0,...,ad) needs d >= 1 and all a_i >= 1".into()));
                    }
                    Ok(Builtin::Weighted(a))
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn model(&self) -> Result<ToricModel, FanError> {
        match self {
            Builtin::Projective(d) => ToricModel::from_fan(self.to_string(), projective_fan(*d)?),
            Builtin::Weighted(a) => {
                if a.len() < 2 || a.iter().any(|&x| x < 1) {
                    return Err(FanError::InvalidParams("weighted(a0,...,ad) needs d >= 1 and all a_i >= 1".into()));
                }
                Ok(ToricModel {
                    name: self.to_string(),
                    fan: None,
                    grading: GradingData::new(a.iter().map(|&x| vec![x]).collect()),
                    exceptional: ExceptionalSet { strata: vec![(0..a.len()).collect()] },
                })
            }
            Builtin::BlowupP2 => ToricModel::from_fan(self.to_string(), blowup_p2_fan()),
            Builtin::BlowupP4Line => ToricModel::from_fan(self.to_string(), blowup_p4_line_fan()),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Projective(d) => write!(f, "projective({d})"),
            Builtin::Weighted(a) => {
                let a: Vec<String> = a.iter().map(i64::to_string).collect();
                write!(f, "weighted({})", a.join(","))
            }
            Builtin::BlowupP2 => f.write_str("blowup_p2"),
            Builtin::BlowupP4Line => f.write_str("blowup_p4_line"),
        }
    }
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    (0..d).map(|k| i64::from(k == i)).collect()
}

/// `P^d`: rays `n_0 = -(e_1+…+e_d)`, `n_i = e_i`; every `d`-subset is a maximal cone.
pub fn projective_fan(d: usize) -> Result<Fan, FanError> {
    if d < 1 {
        return Err(FanError::InvalidParams("projective(d) needs d >= 1".into()));
    }
    let mut rays = vec![vec![-1; d]];
    rays.extend((0..d).map(|i| unit(d, i)));
    Fan::new(d, rays, subsets_of_size(d + 1, d))
}

/// Blowup of `P^2` at `[0,0,1]`: add `n_3 = e_1 + e_2`, split the cone on `{n_1, n_2}`.
pub fn blowup_p2_fan() -> Fan {
    let rays = vec![vec![-1, -1], vec![1, 0], vec![0, 1], vec![1, 1]];
    let cones = vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]];
    Fan::new(2, rays, cones).expect("builtin fan is valid")
}

/// Blowup of `P^4` along `x_1 = x_2 = x_3 = 0`: add `n_5 = e_1 + e_2 + e_3` and
/// split the two cones containing `n_1, n_2, n_3` three ways each.
pub fn blowup_p4_line_fan() -> Fan {
    let mut rays = vec![vec![-1; 4]];
    rays.extend((0..4).map(|i| unit(4, i)));
    rays.push(vec![1, 1, 1, 0]);
    let mut cones = Vec::new();
    for omit in 1..=3 {
        cones.push((0..5).filter(|&i| i != omit).collect::<Vec<_>>());
    }
    for other in [4, 0] {
        for replaced in 1..=3 {
            let mut c: Vec<usize> = (1..=3).filter(|&i| i != replaced).collect();
            c.push(5);
            c.push(other);
            cones.push(c);
        }
    }
    Fan::new(4, rays, cones).expect("builtin fan is valid")
}

/// Everything the counting code needs: grading and exceptional set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricModel {
    pub name: String,
    pub fan: Option<Fan>,
    pub grading: GradingData,
    pub exceptional: ExceptionalSet,
}

impl ToricModel {
    pub fn from_fan(name: impl Into<String>, fan: Fan) -> Result<Self, FanError> {
        let grading = fan.grading()?;
        let exceptional = ExceptionalSet { strata: fan.primitive_collections() };
        Ok(ToricModel { name: name.into(), fan: Some(fan), grading, exceptional })
    }

    pub fn builtin(name: &str) -> Result<Self, FanError> {
        Builtin::parse(name)?.model()
    }

    pub fn rho(&self) -> usize {
        self.grading.rho
    }

    /// `#Z_Σ(F_q)`.
    pub fn count_exceptional(&self, spec: &FieldSpec) -> u64 {
        self.exceptional.count_points(self.rho(), spec.q() as u64)
    }
}
