//! Sparse multivariate polynomials over a finite field, `Q` or `Z`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! is lexicographic and two polynomials are equal exactly when their term
//! maps are. Degrees are measured against a [`GradingData`].

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::GradingData;
use crate::ff::{format_in_t, FieldElement, FieldSpec};

pub use parse::parse;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("coefficient at {pos} is not in the domain: {msg}")]
    CoefficientNotInDomain { pos: usize, msg: String },
    #[error("not homogeneous: term {first:?} has degree {first_degree}, term {second:?} has degree {second_degree}")]
    NotHomogeneous {
        first: Vec<u32>,
        first_degree: MultiDegree,
        second: Vec<u32>,
        second_degree: MultiDegree,
    },
    #[error("the zero polynomial has no well-defined multidegree")]
    ZeroPolynomial,
    #[error("every component of the multidegree is zero")]
    DegreeZeroGrading,
    #[error("point or coefficient belongs to a different field")]
    FieldMismatch,
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomials over different domains or variable counts")]
    DomainMismatch,
    #[error("grading has {grading} rows but the polynomial has {nvars} variables")]
    GradingMismatch { grading: usize, nvars: usize },
    #[error("operation needs a finite-field polynomial")]
    NotFiniteField,
}

/// Coefficient domain of a [`MultiPoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Field(Arc<FieldSpec>),
    Rational,
    Integer,
}

/// Field coefficients are stored by encoding; `Q` and `Z` coefficients as rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Ff(u32),
    Q(BigRational),
}

impl Domain {
    pub fn field(spec: &FieldSpec) -> Self {
        Domain::Field(Arc::new(spec.clone()))
    }

    pub fn field_spec(&self) -> Option<&FieldSpec> {
        match self {
            Domain::Field(k) => Some(k),
            _ => None,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_int(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        match self {
            Domain::Field(k) => Coeff::Ff(k.int_idx(n)),
            _ => Coeff::Q(BigRational::from_integer(n.into())),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Domain::Field(k) => {
                let r = n.mod_floor(&BigInt::from(k.p()));
                Coeff::Ff(r.to_u32().expect("reduced residue fits"))
            }
            _ => Coeff::Q(BigRational::from_integer(n.clone())),
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Ff(x) => *x == 0,
            Coeff::Q(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Ff(x) => *x == 1,
            Coeff::Q(x) => x.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Field(k), Coeff::Ff(x), Coeff::Ff(y)) => Coeff::Ff(k.add_idx(*x, *y)),
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            _ => unreachable!("coefficient outside its domain"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Domain::Field(k), Coeff::Ff(x)) => Coeff::Ff(k.neg_idx(*x)),
            (_, Coeff::Q(x)) => Coeff::Q(-x),
            _ => unreachable!("coefficient outside its domain"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Field(k), Coeff::Ff(x), Coeff::Ff(y)) => Coeff::Ff(k.mul_idx(*x, *y)),
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            _ => unreachable!("coefficient outside its domain"),
        }
    }

    fn fmt_coeff(&self, c: &Coeff) -> String {
        match (self, c) {
            (Domain::Field(k), Coeff::Ff(x)) => {
                if k.degree() == 1 {
                    x.to_string()
                } else {
                    let e = k.element(*x);
                    if e.coeffs()[1..].iter().all(|&c| c == 0) {
                        e.coeffs()[0].to_string()
                    } else {
                        format!("({})", format_in_t(e.coeffs()))
                    }
                }
            }
            (_, Coeff::Q(x)) => {
                let x = x.abs();
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            _ => unreachable!("coefficient outside its domain"),
        }
    }
}

/// A degree vector in `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::ops::Add for &MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// Sparse polynomial in `x0 … x{nvars-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    domain: Domain,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, domain: Domain) -> Self {
        MultiPoly { nvars, domain, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, domain: Domain, c: Coeff) -> Self {
        Self::monomial(nvars, domain, vec![0; nvars], c)
    }

    pub fn one(nvars: usize, domain: Domain) -> Self {
        let c = domain.one();
        Self::constant(nvars, domain, c)
    }

    pub fn var(nvars: usize, domain: Domain, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let c = domain.one();
        Self::monomial(nvars, domain, e, c)
    }

    pub fn monomial(nvars: usize, domain: Domain, exps: Vec<u32>, c: Coeff) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars, domain);
        p.add_term(exps, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, domain: Domain, terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>) -> Self {
        let mut p = Self::zero(nvars, domain);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Coeff) {
        if self.domain.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = self.domain.add(old, &c);
                if self.domain.is_zero(&s) {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars && self.domain == other.domain {
            Ok(())
        } else {
            Err(PolyError::DomainMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.domain.neg(c))).collect();
        MultiPoly { nvars: self.nvars, domain: self.domain.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), self.domain.mul(x, c)));
        Self::from_terms(self.nvars, self.domain.clone(), terms)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.nvars, self.domain.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, self.domain.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.domain.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Reinterprets the polynomial in a ring with more variables, mapping
    /// variable `i` to `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut big = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                big[positions[i]] += k;
            }
            (big, c.clone())
        });
        Self::from_terms(nvars, self.domain.clone(), terms)
    }

    fn field(&self) -> Result<&FieldSpec, PolyError> {
        self.domain.field_spec().ok_or(PolyError::NotFiniteField)
    }

    /// Evaluation at a point given by field encodings; `0^0 = 1`.
    pub fn evaluate_idx(&self, point: &[u32]) -> Result<u32, PolyError> {
        let k = self.field()?;
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = 0;
        for (e, c) in &self.terms {
            let Coeff::Ff(c) = c else { unreachable!("field polynomial") };
            let mut t = *c;
            for (&x, &k_i) in point.iter().zip(e) {
                if k_i > 0 {
                    t = k.mul_idx(t, k.pow_idx(x, k_i as u64));
                }
            }
            acc = k.add_idx(acc, t);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        let k = self.field()?;
        if point.iter().any(|x| !k.contains(x)) {
            return Err(PolyError::FieldMismatch);
        }
        let idx: Vec<u32> = point.iter().map(|x| k.index_of(x)).collect();
        Ok(k.element(self.evaluate_idx(&idx)?))
    }

    /// `P(images[0], …, images[n-1])`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        let Some(first) = images.first() else {
            // no variables: P is a constant
            return Ok(self.clone());
        };
        let (nv, dom) = (first.nvars, first.domain.clone());
        if dom != self.domain || images.iter().any(|g| g.nvars != nv || g.domain != dom) {
            return Err(PolyError::DomainMismatch);
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|g| vec![Self::one(nv, dom.clone()), g.clone()]).collect();
        let mut out = Self::zero(nv, dom.clone());
        for (e, c) in &self.terms {
            let mut t = Self::constant(nv, dom.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    fn check_grading(&self, g: &GradingData) -> Result<(), PolyError> {
        if g.rho != self.nvars {
            return Err(PolyError::GradingMismatch { grading: g.rho, nvars: self.nvars });
        }
        Ok(())
    }

    /// Common degree of all terms under `g`.
    pub fn multidegree(&self, g: &GradingData) -> Result<MultiDegree, PolyError> {
        self.check_grading(g)?;
        let mut it = self.terms.keys();
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let d0 = exponent_degree(first, g);
        for e in it {
            let d = exponent_degree(e, g);
            if d != d0 {
                return Err(PolyError::NotHomogeneous {
                    first: first.clone(),
                    first_degree: d0,
                    second: e.clone(),
                    second_degree: d,
                });
            }
        }
        Ok(d0)
    }
}

/// `sum_i e_i deg X_i`.
pub fn exponent_degree(e: &[u32], g: &GradingData) -> MultiDegree {
    MultiDegree(
        (0..g.r)
            .map(|j| e.iter().zip(&g.weights).map(|(&k, w)| k as i64 * w[j]).sum())
            .collect(),
    )
}

/// `deg X_1 + … + deg X_ρ`.
pub fn total_generator_degree(g: &GradingData) -> MultiDegree {
    MultiDegree((0..g.r).map(|j| g.weights.iter().map(|w| w[j]).sum()).collect())
}

/// The guaranteed exponent `μ` with `q^μ | N`, plus the grading components
/// left out of the maximum because their degree is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxExponent {
    pub mu: u32,
    pub excluded: Vec<usize>,
}

pub fn ax_exponent(g: &GradingData, d: &MultiDegree) -> Result<AxExponent, PolyError> {
    let a = total_generator_degree(g);
    let mut mu: Option<i64> = None;
    let mut excluded = Vec::new();
    for (j, (&aj, &dj)) in a.0.iter().zip(&d.0).enumerate() {
        if dj <= 0 {
            excluded.push(j);
            continue;
        }
        let m = Integer::div_ceil(&(aj - dj), &dj);
        mu = Some(mu.map_or(m, |x| x.max(m)));
    }
    let mu = mu.ok_or(PolyError::DegreeZeroGrading)?;
    Ok(AxExponent { mu: mu.max(0) as u32, excluded })
}

/// Classical Ax bound `⌈(n - d)/d⌉` for a degree-`d` form in `n + 1` variables.
pub fn classical_ax_exponent(n: u32, d: u32) -> u32 {
    assert!(d > 0, "degree must be positive");
    Integer::div_ceil(&(n as i64 - d as i64), &(d as i64)).max(0) as u32
}

/// Returns `(P(μ·x), χ(μ)·P(x))`, where `μ·x` scales `x_i` by
/// `∏_j μ_j^{deg_j X_i}` and `χ(μ) = ∏_j μ_j^{d_j}`.
pub fn scaling_character(
    p: &MultiPoly,
    g: &GradingData,
    mu: &[FieldElement],
    point: &[FieldElement],
) -> Result<(FieldElement, FieldElement), PolyError> {
    let k = p.field()?;
    let d = p.multidegree(g)?;
    if mu.len() != g.r {
        return Err(PolyError::ArityMismatch { expected: g.r, got: mu.len() });
    }
    if mu.iter().chain(point).any(|x| !k.contains(x)) {
        return Err(PolyError::FieldMismatch);
    }
    if mu.iter().any(FieldElement::is_zero) {
        return Err(PolyError::FieldMismatch);
    }
    let mu: Vec<u32> = mu.iter().map(|m| k.index_of(m)).collect();
    let x: Vec<u32> = point.iter().map(|m| k.index_of(m)).collect();
    let character = |degs: &[i64]| -> u32 {
        degs.iter().zip(&mu).fold(1, |acc, (&e, &m)| {
            let base = if e < 0 { k.inv_idx(m).expect("nonzero") } else { m };
            k.mul_idx(acc, k.pow_idx(base, e.unsigned_abs()))
        })
    };
    let scaled: Vec<u32> = x
        .iter()
        .zip(&g.weights)
        .map(|(&xi, w)| k.mul_idx(xi, character(w)))
        .collect();
    let lhs = p.evaluate_idx(&scaled)?;
    let rhs = k.mul_idx(character(&d.0), p.evaluate_idx(&x)?);
    Ok((k.element(lhs), k.element(rhs)))
}

/// Exponent vectors of all monomials of degree `d` under an effective grading
/// in which every variable has some positive weight.
pub fn homogeneous_monomials(g: &GradingData, d: &MultiDegree) -> Vec<Vec<u32>> {
    assert!(g.is_effective(), "homogeneous_monomials needs nonnegative weights");
    assert!(
        g.weights.iter().all(|w| w.iter().any(|&x| x > 0)),
        "a variable of degree zero has infinitely many monomials"
    );
    let mut out = Vec::new();
    let mut cur = vec![0u32; g.rho];
    fn rec(i: usize, rest: &mut Vec<i64>, g: &GradingData, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == g.rho {
            if rest.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let w = &g.weights[i];
        let mut k = 0u32;
        loop {
            cur[i] = k;
            rec(i + 1, rest, g, cur, out);
            for (r, &wj) in rest.iter_mut().zip(w) {
                *r -= wj;
            }
            k += 1;
            if rest.iter().any(|&x| x < 0) {
                for (r, &wj) in rest.iter_mut().zip(w) {
                    *r += wj * k as i64;
                }
                cur[i] = 0;
                return;
            }
        }
    }
    let mut rest = d.0.clone();
    rec(0, &mut rest, g, &mut cur, &mut out);
    out.sort();
    out
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in decreasing lexicographic order of exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = matches!(c, Coeff::Q(x) if x.is_negative());
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            let coeff = self.domain.fmt_coeff(c);
            let unit = coeff == "1";
            match (mono.is_empty(), unit) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}
