//! Exhaustive point counting over `F_q^ρ` and the congruence checks built on it.
//!
//! Points are visited in odometer order over field encodings, coordinate 0
//! most significant. The kernels split the polynomial on its last variable:
//! for each prefix `(x_0, …, x_{ρ-2})` the coefficients of the univariate
//! polynomial in `x_{ρ-1}` are computed once, then evaluated at all `q`
//! values. Prefixes are partitioned into contiguous blocks that run in
//! parallel; block results are integers combined by addition, so the count
//! does not depend on the partition.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{FanError, GradingData, ToricModel};
use crate::ff::FieldSpec;
use crate::parallel::{self, Execution};
use crate::poly::{self, ax_exponent, classical_ax_exponent, total_generator_degree, Coeff, MultiPoly, PolyError};
use crate::quintic::QuinticInstance;

/// Default limit on the number of polynomial evaluations in one count.
pub const DEFAULT_WORK_CAP: u64 = 1_000_000_000;

/// Environment variable overriding [`DEFAULT_WORK_CAP`].
pub const WORK_CAP_ENV: &str = "COXCOUNT_WORK_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("work {work} exceeds the cap {cap}")]
    CapExceeded { work: u128, cap: u64 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("{numerator} is not divisible by {denominator}")]
    NonIntegralQuotient { numerator: i128, denominator: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Knobs shared by the counting kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub execution: Execution,
    /// Number of prefix blocks; `None` picks one from the thread count.
    pub blocks: Option<usize>,
    pub work_cap: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { execution: Execution::default(), blocks: None, work_cap: DEFAULT_WORK_CAP }
    }
}

impl CountOptions {
    /// Defaults, with the work cap taken from `COXCOUNT_WORK_CAP` when set.
    pub fn from_env() -> Self {
        let work_cap = std::env::var(WORK_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_WORK_CAP);
        CountOptions { work_cap, ..Self::default() }
    }

    pub fn sequential() -> Self {
        CountOptions { execution: Execution::Sequential, ..Self::default() }
    }
}

/// A field polynomial split on its last variable for fast sweeps.
struct Compiled<'a> {
    k: &'a FieldSpec,
    rho: usize,
    q: u32,
    // per power of the last variable: (coefficient, exponents of the prefix)
    groups: Vec<Vec<(u32, Vec<u32>)>>,
    // pow[x * stride + e] = x^e
    pow: Vec<u32>,
    stride: usize,
}

impl<'a> Compiled<'a> {
    fn new(p: &MultiPoly, k: &'a FieldSpec) -> Result<Self, CountError> {
        if p.domain().field_spec() != Some(k) {
            return Err(PolyError::FieldMismatch.into());
        }
        let rho = p.nvars();
        let max_e = p.terms().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
        let last_deg = p.terms().map(|(e, _)| e.last().copied().unwrap_or(0)).max().unwrap_or(0) as usize;
        let mut groups = vec![Vec::new(); last_deg + 1];
        for (e, c) in p.terms() {
            let Coeff::Ff(c) = c else { unreachable!("field polynomial") };
            let (last, prefix) = match e.split_last() {
                Some((l, pre)) => (*l as usize, pre.to_vec()),
                None => (0, Vec::new()),
            };
            groups[last].push((*c, prefix));
        }
        let q = k.q();
        let stride = max_e + 1;
        let mut pow = vec![0u32; q as usize * stride];
        for x in 0..q {
            let mut acc = 1;
            for e in 0..stride {
                pow[x as usize * stride + e] = acc;
                acc = k.mul_idx(acc, x);
            }
        }
        Ok(Compiled { k, rho, q, groups, pow, stride })
    }

    #[inline]
    fn pw(&self, x: u32, e: u32) -> u32 {
        self.pow[x as usize * self.stride + e as usize]
    }

    /// Coefficients, in the last variable, after fixing the prefix.
    fn univariate(&self, prefix: &[u32], out: &mut [u32]) {
        for (slot, group) in out.iter_mut().zip(&self.groups) {
            let mut acc = 0;
            for (c, e) in group {
                let mut t = *c;
                for (&x, &k) in prefix.iter().zip(e) {
                    if k > 0 {
                        t = self.k.mul_idx(t, self.pw(x, k));
                    }
                }
                acc = self.k.add_idx(acc, t);
            }
            *slot = acc;
        }
    }

    #[inline]
    fn eval_univariate(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs
            .iter()
            .enumerate()
            .fold(0, |acc, (e, &c)| if c == 0 { acc } else { self.k.add_idx(acc, self.k.mul_idx(c, self.pw(x, e as u32))) })
    }

    fn prefix_count(&self) -> u64 {
        (self.q as u64).pow(self.rho.saturating_sub(1) as u32)
    }

    /// Calls `visit(point)` for every zero whose prefix index lies in `range`.
    fn for_each_zero(&self, range: std::ops::Range<u64>, mut visit: impl FnMut(&[u32])) {
        if self.rho == 0 {
            if range.contains(&0) && self.groups.iter().all(Vec::is_empty) {
                visit(&[]);
            }
            return;
        }
        let plen = self.rho - 1;
        let mut point = vec![0u32; self.rho];
        decode(range.start, self.q, &mut point[..plen]);
        let mut coeffs = vec![0u32; self.groups.len()];
        for _ in range {
            self.univariate(&point[..plen], &mut coeffs);
            for x in 0..self.q {
                if self.eval_univariate(&coeffs, x) == 0 {
                    point[plen] = x;
                    visit(&point);
                }
            }
            increment(&mut point[..plen], self.q);
        }
    }

    fn count_zeros(&self, range: std::ops::Range<u64>) -> u64 {
        if self.rho == 0 {
            let mut n = 0;
            self.for_each_zero(range, |_| n += 1);
            return n;
        }
        let plen = self.rho - 1;
        let mut prefix = vec![0u32; plen];
        decode(range.start, self.q, &mut prefix);
        let mut coeffs = vec![0u32; self.groups.len()];
        let mut n = 0u64;
        for _ in range {
            self.univariate(&prefix, &mut coeffs);
            n += (0..self.q).filter(|&x| self.eval_univariate(&coeffs, x) == 0).count() as u64;
            increment(&mut prefix, self.q);
        }
        n
    }
}

/// Odometer digits of `index`, most significant first.
fn decode(mut index: u64, q: u32, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d = (index % q as u64) as u32;
        index /= q as u64;
    }
}

fn increment(digits: &mut [u32], q: u32) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return;
        }
        *d = 0;
    }
}

fn point_index(point: &[u32], q: u32) -> u64 {
    point.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

fn check_cap(work: u128, cap: u64) -> Result<(), CountError> {
    if work > cap as u128 {
        Err(CountError::CapExceeded { work, cap })
    } else {
        Ok(())
    }
}

/// `#{x ∈ F_q^ρ : P(x) = 0}`.
pub fn affine_count(p: &MultiPoly, k: &FieldSpec) -> Result<u64, CountError> {
    affine_count_with(p, k, &CountOptions::from_env())
}

pub fn affine_count_with(p: &MultiPoly, k: &FieldSpec, opts: &CountOptions) -> Result<u64, CountError> {
    check_cap((k.q() as u128).pow(p.nvars() as u32), opts.work_cap)?;
    let c = Compiled::new(p, k)?;
    let total = c.prefix_count();
    let blocks = opts.blocks.unwrap_or_else(|| parallel::default_blocks(total)).max(1);
    Ok(parallel::sum_blocks(opts.execution, blocks, |b| {
        c.count_zeros(parallel::block_range(total, blocks, b))
    }))
}

/// Zeros of `P` on `Z_Σ(F_q)`; each point is charged to the first stratum containing it.
pub fn exceptional_on_hypersurface(p: &MultiPoly, model: &ToricModel, k: &FieldSpec) -> Result<u64, CountError> {
    let rho = model.rho();
    if p.nvars() != rho {
        return Err(PolyError::GradingMismatch { grading: rho, nvars: p.nvars() }.into());
    }
    if p.domain().field_spec() != Some(k) {
        return Err(PolyError::FieldMismatch.into());
    }
    let q = k.q();
    let strata = &model.exceptional.strata;
    let mut n = 0u64;
    for (s, stratum) in strata.iter().enumerate() {
        let free: Vec<usize> = (0..rho).filter(|i| !stratum.contains(i)).collect();
        let mut point = vec![0u32; rho];
        let mut digits = vec![0u32; free.len()];
        for _ in 0..(q as u64).pow(free.len() as u32) {
            for (&i, &d) in free.iter().zip(&digits) {
                point[i] = d;
            }
            let earlier = strata[..s].iter().any(|t| t.iter().all(|&i| point[i] == 0));
            if !earlier && p.evaluate_idx(&point)? == 0 {
                n += 1;
            }
            increment(&mut digits, q);
        }
    }
    Ok(n)
}

fn require_homogeneous_or_zero(p: &MultiPoly, g: &GradingData) -> Result<(), CountError> {
    match p.multidegree(g) {
        Ok(_) | Err(PolyError::ZeroPolynomial) => Ok(()),
        Err(e) => Err(e.into()),
    }
}

/// `(N_affine − N_exceptional) / (q − 1)^r`, with exact division enforced.
pub fn toric_count_quotient(p: &MultiPoly, model: &ToricModel, k: &FieldSpec) -> Result<u64, CountError> {
    toric_count_quotient_with(p, model, k, &CountOptions::from_env())
}

pub fn toric_count_quotient_with(p: &MultiPoly, model: &ToricModel, k: &FieldSpec, opts: &CountOptions) -> Result<u64, CountError> {
    Ok(toric_parts(p, model, k, opts)?.2)
}

/// `(N_affine, N_exceptional, N_toric)`.
fn toric_parts(p: &MultiPoly, model: &ToricModel, k: &FieldSpec, opts: &CountOptions) -> Result<(u64, u64, u64), CountError> {
    model.grading.require_free()?;
    require_homogeneous_or_zero(p, &model.grading)?;
    let n_aff = affine_count_with(p, k, opts)?;
    let n_exc = exceptional_on_hypersurface(p, model, k)?;
    let numerator = n_aff as i128 - n_exc as i128;
    let denominator = (k.q() as u64 - 1).pow(model.grading.r as u32);
    if numerator < 0 || numerator % denominator as i128 != 0 {
        return Err(CountError::NonIntegralQuotient { numerator, denominator });
    }
    Ok((n_aff, n_exc, (numerator / denominator as i128) as u64))
}

/// Number of `G(F_q)`-orbits on the zeros of `P` outside `Z_Σ`, counted as
/// the zeros that are the minimum (in odometer order) of their own orbit.
pub fn toric_count_orbits(p: &MultiPoly, model: &ToricModel, k: &FieldSpec) -> Result<u64, CountError> {
    toric_count_orbits_with(p, model, k, &CountOptions::from_env())
}

pub fn toric_count_orbits_with(p: &MultiPoly, model: &ToricModel, k: &FieldSpec, opts: &CountOptions) -> Result<u64, CountError> {
    let g = &model.grading;
    g.require_free()?;
    require_homogeneous_or_zero(p, g)?;
    let q = k.q();
    let group_size = (q as u128 - 1).pow(g.r as u32);
    check_cap((q as u128).pow(p.nvars() as u32) * group_size.max(1), opts.work_cap)?;
    let multipliers = group_multipliers(g, k);
    let c = Compiled::new(p, k)?;
    let total = c.prefix_count();
    let blocks = opts.blocks.unwrap_or_else(|| parallel::default_blocks(total)).max(1);
    Ok(parallel::sum_blocks(opts.execution, blocks, |b| {
        let mut n = 0u64;
        let mut image = vec![0u32; g.rho];
        c.for_each_zero(parallel::block_range(total, blocks, b), |x| {
            if model.exceptional.contains(x) {
                return;
            }
            let own = point_index(x, q);
            let canonical = multipliers.iter().all(|m| {
                for ((y, &xi), &mi) in image.iter_mut().zip(x).zip(m) {
                    *y = k.mul_idx(xi, mi);
                }
                point_index(&image, q) >= own
            });
            if canonical {
                n += 1;
            }
        });
        n
    }))
}

/// For each `μ ∈ (F_q^*)^r`, the factors `∏_j μ_j^{A[i][j]}` by which it scales coordinate `i`.
pub fn group_multipliers(g: &GradingData, k: &FieldSpec) -> Vec<Vec<u32>> {
    let q = k.q();
    let size = (q as u64 - 1).pow(g.r as u32);
    (0..size)
        .map(|code| {
            let mu: Vec<u32> = (0..g.r).map(|j| (code / (q as u64 - 1).pow(j as u32) % (q as u64 - 1)) as u32 + 1).collect();
            g.weights
                .iter()
                .map(|w| {
                    w.iter().zip(&mu).fold(1, |acc, (&e, &m)| {
                        let base = if e < 0 { k.inv_idx(m).expect("nonzero") } else { m };
                        k.mul_idx(acc, k.pow_idx(base, e.unsigned_abs()))
                    })
                })
                .collect()
        })
        .collect()
}

/// Which congruence a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    #[serde(rename = "CW")]
    Cw,
    #[serde(rename = "CW-projective")]
    CwProjective,
    Ax,
    Esnault,
}

/// Outcome of one congruence check. `elapsed` is kept out of the
/// serialized form so identical inputs serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub kind: CheckKind,
    pub field: String,
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub n_affine: u64,
    pub n_exceptional: Option<u64>,
    pub n_toric: Option<u64>,
    pub modulus: u64,
    pub residue: u64,
    pub expected_residue: u64,
    pub pass: bool,
    pub mu: Option<u32>,
    /// `⌈(n − d)/d⌉`, recorded alongside `mu` for the standard grading.
    pub classical_mu: Option<u32>,
    /// Ax verdict `q^μ | N_affine`, recorded by the Esnault check.
    pub ax_pass: Option<bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CongruenceReport {
    fn new(kind: CheckKind, k: &FieldSpec, n_affine: u64, checked: u64, modulus: u64, expected: u64, started: Instant) -> Self {
        let residue = checked % modulus;
        CongruenceReport {
            kind,
            field: k.to_string(),
            q: k.q() as u64,
            p: k.p() as u64,
            f: k.degree(),
            n_affine,
            n_exceptional: None,
            n_toric: None,
            modulus,
            residue,
            expected_residue: expected % modulus,
            pass: residue == expected % modulus,
            mu: None,
            classical_mu: None,
            ax_pass: None,
            elapsed: started.elapsed(),
        }
    }
}

/// Multigraded Chevalley–Warning: `p | N` when some `d_j < a_j`.
pub fn check_cw(p: &MultiPoly, g: &GradingData, k: &FieldSpec) -> Result<CongruenceReport, CountError> {
    check_cw_with(p, g, k, &CountOptions::from_env())
}

pub fn check_cw_with(p: &MultiPoly, g: &GradingData, k: &FieldSpec, opts: &CountOptions) -> Result<CongruenceReport, CountError> {
    let started = Instant::now();
    if !g.is_effective() {
        return Err(CountError::HypothesisNotMet("grading has negative weights".into()));
    }
    let d = p.multidegree(g)?;
    let a = total_generator_degree(g);
    if !d.0.iter().zip(&a.0).any(|(dj, aj)| dj < aj) {
        return Err(CountError::HypothesisNotMet(format!("degree {d} is not below {a} in any component")));
    }
    let n = affine_count_with(p, k, opts)?;
    Ok(CongruenceReport::new(CheckKind::Cw, k, n, n, k.p() as u64, 0, started))
}

/// Projective corollary: `#X(F_q) ≡ 1 (mod p)` for a form of degree `d ≤ n` in `n + 1` variables.
pub fn check_cw_projective(p: &MultiPoly, k: &FieldSpec) -> Result<CongruenceReport, CountError> {
    check_cw_projective_with(p, k, &CountOptions::from_env())
}

pub fn check_cw_projective_with(p: &MultiPoly, k: &FieldSpec, opts: &CountOptions) -> Result<CongruenceReport, CountError> {
    let started = Instant::now();
    let g = GradingData::standard(p.nvars());
    let d = p.multidegree(&g)?.0[0];
    let n = p.nvars() as i64 - 1;
    if d > n || d < 1 {
        return Err(CountError::HypothesisNotMet(format!("degree {d} not in 1..={n}")));
    }
    let n_aff = affine_count_with(p, k, opts)?;
    let denominator = k.q() as u64 - 1;
    let numerator = n_aff as i128 - 1;
    if numerator < 0 || numerator % denominator as i128 != 0 {
        return Err(CountError::NonIntegralQuotient { numerator, denominator });
    }
    let points = (numerator / denominator as i128) as u64;
    let mut r = CongruenceReport::new(CheckKind::CwProjective, k, n_aff, points, k.p() as u64, 1, started);
    r.n_exceptional = Some(1);
    r.n_toric = Some(points);
    Ok(r)
}

/// Multigraded Ax: `q^μ | N`.
pub fn check_ax(p: &MultiPoly, g: &GradingData, k: &FieldSpec) -> Result<CongruenceReport, CountError> {
    check_ax_with(p, g, k, &CountOptions::from_env())
}

pub fn check_ax_with(p: &MultiPoly, g: &GradingData, k: &FieldSpec, opts: &CountOptions) -> Result<CongruenceReport, CountError> {
    let started = Instant::now();
    if !g.is_effective() {
        return Err(CountError::HypothesisNotMet("grading has negative weights".into()));
    }
    let d = p.multidegree(g)?;
    let mu = ax_exponent(g, &d)?.mu;
    let modulus = (k.q() as u64).checked_pow(mu).ok_or(CountError::HypothesisNotMet(format!("q^{mu} overflows")))?;
    let n = affine_count_with(p, k, opts)?;
    let mut r = CongruenceReport::new(CheckKind::Ax, k, n, n, modulus, 0, started);
    r.mu = Some(mu);
    if g.is_standard() && d.0[0] > 0 {
        r.classical_mu = Some(classical_ax_exponent(g.rho as u32 - 1, d.0[0] as u32));
    }
    Ok(r)
}

/// `#X̃(F_q) ≡ 1 (mod q)` for the strict transform of a type-IV quintic.
pub fn check_esnault(inst: &QuinticInstance, k: &FieldSpec) -> Result<CongruenceReport, CountError> {
    check_esnault_with(inst, k, &CountOptions::from_env())
}

pub fn check_esnault_with(inst: &QuinticInstance, k: &FieldSpec, opts: &CountOptions) -> Result<CongruenceReport, CountError> {
    let started = Instant::now();
    if inst.field() != k {
        return Err(PolyError::FieldMismatch.into());
    }
    let model = ToricModel::builtin("blowup_p4_line")?;
    let strict = inst.strict_transform();
    let (n_aff, n_exc, n_toric) = toric_parts(&strict, &model, k, opts)?;
    let d = strict.multidegree(&model.grading)?;
    let mu = ax_exponent(&model.grading, &d)?.mu;
    let q = k.q() as u64;
    let mut r = CongruenceReport::new(CheckKind::Esnault, k, n_aff, n_toric, q, 1, started);
    r.n_exceptional = Some(n_exc);
    r.n_toric = Some(n_toric);
    r.mu = Some(mu);
    r.ax_pass = Some(n_aff % q.pow(mu) == 0);
    Ok(r)
}

/// Uniformly random polynomial with support on all monomials of degree `d`,
/// redrawn until nonzero.
pub fn random_homogeneous(g: &GradingData, d: &poly::MultiDegree, k: &FieldSpec, rng: &mut impl rand::Rng) -> MultiPoly {
    let mons = poly::homogeneous_monomials(g, d);
    assert!(!mons.is_empty(), "no monomials of degree {d}");
    let dom = poly::Domain::field(k);
    loop {
        let terms = mons.iter().map(|e| (e.clone(), Coeff::Ff(rng.gen_range(0..k.q()))));
        let p = MultiPoly::from_terms(g.rho, dom.clone(), terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// [`random_homogeneous`] driven by a ChaCha stream seeded with `seed`.
pub fn seeded_homogeneous(g: &GradingData, d: &poly::MultiDegree, k: &FieldSpec, seed: u64) -> MultiPoly {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    random_homogeneous(g, d, k, &mut rng)
}
