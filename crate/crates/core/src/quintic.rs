//! Quintic 3-folds in `P^4` containing the line `x1 = x2 = x3 = 0` with
//! multiplicity 3, and their strict transforms in the blowup along it.
//!
//! An instance is the triple `(P3, Q3, Q4)` of forms in `x1, x2, x3`. The
//! ambient equation is `x0^2 P3 + x0 x4 Q3 + x4 Q4`; pulling it back along
//! the blowdown `(x0, x5 x1, x5 x2, x5 x3, x4)` gives `x5^3` times the strict
//! transform `x0^2 P3 + x0 x4 Q3 + x4 x5 Q4`, of bidegree `(5, 2)`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{FieldElement, FieldError, FieldSpec};
use crate::poly::{Coeff, Domain, MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuinticError {
    #[error("P3, Q3 and Q4 are all zero")]
    AllZero,
    #[error("{name} must have {expected} coefficients, got {got}")]
    WrongLength { name: &'static str, expected: usize, got: usize },
    #[error("{name} has coefficient {value} outside the field")]
    BadCoefficient { name: &'static str, value: u32 },
    #[error("{name} is not a form of degree {degree} in x1, x2, x3")]
    WrongShape { name: &'static str, degree: u32 },
    #[error("pullback identity violated: {detail}")]
    IdentityViolated { detail: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which instances [`random_instance`] accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonzeroPolicy {
    /// At least one of `P3`, `Q3`, `Q4` is nonzero.
    #[default]
    AnyNonzero,
    P3Nonzero,
}

/// Exponents `(a1, a2, a3)` of the degree-`d` monomials in `x1, x2, x3`,
/// largest first in degree-reverse-lexicographic order.
pub fn degrevlex_monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push([a, b, d - a - b]);
        }
    }
    // same total degree: x^u > x^v iff the last nonzero entry of u - v is negative
    out.sort_by(|u, v| {
        for k in (0..3).rev() {
            match u[k].cmp(&v[k]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
            }
        }
        Ordering::Equal
    });
    out
}

/// One type-IV quintic over a finite field. Coefficients are field encodings
/// listed in [`degrevlex_monomials`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticInstance {
    field: FieldSpec,
    p3: Vec<u32>,
    q3: Vec<u32>,
    q4: Vec<u32>,
    seed: Option<u64>,
}

/// JSON shape of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub field: String,
    pub monomial_order: String,
    pub p3: Vec<u32>,
    pub q3: Vec<u32>,
    pub q4: Vec<u32>,
    pub seed: Option<u64>,
}

const ORDER_NAME: &str = "degrevlex(x1,x2,x3)";

impl QuinticInstance {
    pub fn new(field: &FieldSpec, p3: Vec<u32>, q3: Vec<u32>, q4: Vec<u32>, seed: Option<u64>) -> Result<Self, QuinticError> {
        for (name, v, n) in [("P3", &p3, 10), ("Q3", &q3, 10), ("Q4", &q4, 15)] {
            if v.len() != n {
                return Err(QuinticError::WrongLength { name, expected: n, got: v.len() });
            }
            if let Some(&value) = v.iter().find(|&&c| c >= field.q()) {
                return Err(QuinticError::BadCoefficient { name, value });
            }
        }
        if p3.iter().chain(&q3).chain(&q4).all(|&c| c == 0) {
            return Err(QuinticError::AllZero);
        }
        Ok(QuinticInstance { field: field.clone(), p3, q3, q4, seed })
    }

    /// Builds from three polynomials in three variables (standing for `x1, x2, x3`).
    pub fn from_polys(field: &FieldSpec, p3: &MultiPoly, q3: &MultiPoly, q4: &MultiPoly) -> Result<Self, QuinticError> {
        let extract = |name: &'static str, p: &MultiPoly, d: u32| -> Result<Vec<u32>, QuinticError> {
            let shape_ok = p.nvars() == 3
                && p.domain().field_spec() == Some(field)
                && p.terms().all(|(e, _)| e.iter().sum::<u32>() == d);
            if !shape_ok {
                return Err(QuinticError::WrongShape { name, degree: d });
            }
            Ok(degrevlex_monomials(d)
                .iter()
                .map(|m| match p.coeff(m) {
                    Coeff::Ff(c) => c,
                    Coeff::Q(_) => unreachable!("field polynomial"),
                })
                .collect())
        };
        Self::new(field, extract("P3", p3, 3)?, extract("Q3", q3, 3)?, extract("Q4", q4, 4)?, None)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    fn domain(&self) -> Domain {
        Domain::field(&self.field)
    }

    /// `coeffs` as a form in `nvars` variables, with `x1, x2, x3` at positions 1..=3.
    fn form(&self, coeffs: &[u32], d: u32, nvars: usize) -> MultiPoly {
        let terms = degrevlex_monomials(d).into_iter().zip(coeffs).map(|(m, &c)| {
            let mut e = vec![0; nvars];
            e[1..4].copy_from_slice(&m);
            (e, Coeff::Ff(c))
        });
        MultiPoly::from_terms(nvars, self.domain(), terms)
    }

    pub fn p3(&self, nvars: usize) -> MultiPoly {
        self.form(&self.p3, 3, nvars)
    }

    pub fn q3(&self, nvars: usize) -> MultiPoly {
        self.form(&self.q3, 3, nvars)
    }

    pub fn q4(&self, nvars: usize) -> MultiPoly {
        self.form(&self.q4, 4, nvars)
    }

    fn monomial(&self, nvars: usize, exps: &[(usize, u32)]) -> MultiPoly {
        let mut e = vec![0; nvars];
        for &(i, k) in exps {
            e[i] += k;
        }
        let dom = self.domain();
        let one = dom.one();
        MultiPoly::monomial(nvars, dom, e, one)
    }

    /// `x0^2 P3 + x0 x4 Q3 + x4 Q4` in `x0 … x4`.
    pub fn ambient_quintic(&self) -> MultiPoly {
        let n = 5;
        let a = self.monomial(n, &[(0, 2)]).mul(&self.p3(n)).expect("same ring");
        let b = self.monomial(n, &[(0, 1), (4, 1)]).mul(&self.q3(n)).expect("same ring");
        let c = self.monomial(n, &[(4, 1)]).mul(&self.q4(n)).expect("same ring");
        a.add(&b).and_then(|s| s.add(&c)).expect("same ring")
    }

    /// `x0^2 P3 + x0 x4 Q3 + x4 x5 Q4` in `x0 … x5`.
    pub fn strict_transform(&self) -> MultiPoly {
        let n = 6;
        let a = self.monomial(n, &[(0, 2)]).mul(&self.p3(n)).expect("same ring");
        let b = self.monomial(n, &[(0, 1), (4, 1)]).mul(&self.q3(n)).expect("same ring");
        let c = self.monomial(n, &[(4, 1), (5, 1)]).mul(&self.q4(n)).expect("same ring");
        a.add(&b).and_then(|s| s.add(&c)).expect("same ring")
    }

    /// The blowdown coordinates `x0, x1 x5, x2 x5, x3 x5, x4` as polynomials in `x0 … x5`.
    pub fn blowdown_images(&self) -> Vec<MultiPoly> {
        vec![
            self.monomial(6, &[(0, 1)]),
            self.monomial(6, &[(1, 1), (5, 1)]),
            self.monomial(6, &[(2, 1), (5, 1)]),
            self.monomial(6, &[(3, 1), (5, 1)]),
            self.monomial(6, &[(4, 1)]),
        ]
    }

    /// Checks `ambient ∘ blowdown = x5^3 · strict` symbolically, then at
    /// `trials` seeded random points.
    pub fn pullback_identity_check(&self, trials: usize, seed: u64) -> Result<(), QuinticError> {
        let pulled = self.ambient_quintic().substitute(&self.blowdown_images())?;
        let rhs = self.monomial(6, &[(5, 3)]).mul(&self.strict_transform())?;
        if pulled != rhs {
            return Err(QuinticError::IdentityViolated {
                detail: format!("symbolic: {pulled} != {rhs}"),
            });
        }
        let k = &self.field;
        let ambient = self.ambient_quintic();
        let strict = self.strict_transform();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x: Vec<u32> = (0..6).map(|_| rng.gen_range(0..k.q())).collect();
            let lhs = ambient.evaluate_idx(&blowdown_idx(k, &x))?;
            let x5cubed = k.pow_idx(x[5], 3);
            let rhs = k.mul_idx(x5cubed, strict.evaluate_idx(&x)?);
            if lhs != rhs {
                return Err(QuinticError::IdentityViolated {
                    detail: format!("at point {x:?}: {lhs} != {rhs}"),
                });
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> InstanceRecord {
        InstanceRecord {
            field: self.field.to_string(),
            monomial_order: ORDER_NAME.to_string(),
            p3: self.p3.clone(),
            q3: self.q3.clone(),
            q4: self.q4.clone(),
            seed: self.seed,
        }
    }

    pub fn from_record(rec: &InstanceRecord) -> Result<Self, QuinticError> {
        let field: FieldSpec = rec.field.parse()?;
        Self::new(&field, rec.p3.clone(), rec.q3.clone(), rec.q4.clone(), rec.seed)
    }
}

impl Serialize for QuinticInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuinticInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = InstanceRecord::deserialize(d)?;
        Self::from_record(&rec).map_err(serde::de::Error::custom)
    }
}

/// `(x0, x5 x1, x5 x2, x5 x3, x4)` on field encodings.
pub fn blowdown_idx(k: &FieldSpec, x: &[u32]) -> [u32; 5] {
    assert_eq!(x.len(), 6, "blowdown takes six coordinates");
    [x[0], k.mul_idx(x[5], x[1]), k.mul_idx(x[5], x[2]), k.mul_idx(x[5], x[3]), x[4]]
}

pub fn blowdown(k: &FieldSpec, x: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
    if x.len() != 6 {
        return Err(FieldError::FieldMismatch);
    }
    if x.iter().any(|e| !k.contains(e)) {
        return Err(FieldError::FieldMismatch);
    }
    let idx: Vec<u32> = x.iter().map(|e| k.index_of(e)).collect();
    Ok(blowdown_idx(k, &idx).iter().map(|&i| k.element(i)).collect())
}

/// Draws coefficients from a ChaCha stream seeded with `seed`, redrawing
/// until `policy` holds.
pub fn random_instance(k: &FieldSpec, seed: u64, policy: NonzeroPolicy) -> QuinticInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut draw = |n: usize| -> Vec<u32> { (0..n).map(|_| rng.gen_range(0..k.q())).collect() };
        let (p3, q3, q4) = (draw(10), draw(10), draw(15));
        let ok = match policy {
            NonzeroPolicy::AnyNonzero => p3.iter().chain(&q3).chain(&q4).any(|&c| c != 0),
            NonzeroPolicy::P3Nonzero => p3.iter().any(|&c| c != 0),
        };
        if ok {
            return QuinticInstance::new(k, p3, q3, q4, Some(seed)).expect("drawn instance is valid");
        }
    }
}

/// Seed of the `i`-th member of a batch (splitmix64 of `base + i`).
pub fn batch_seed(base: u64, i: usize) -> u64 {
    let mut z = base.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn random_batch(k: &FieldSpec, base_seed: u64, n: usize, policy: NonzeroPolicy) -> Vec<QuinticInstance> {
    (0..n).map(|i| random_instance(k, batch_seed(base_seed, i), policy)).collect()
}
