//! Virasoro-constraint differential operators on a truncated polynomial
//! ring in the times t_0..t_N.
//!
//! The generating-function constraint rewrites each toy generator as
//!   [m + gamma]_a m! d/dt_m
//!   + phi^(m+gamma)/(tau1^a - tau2^a)
//!     sum_k (k+m)!/k! B_k(t^a_1, ..., t^a_k) d/dt_(k+m),
//! with rescaled times t^a_k = (tau1^(ak) - tau2^(ak)) t_k and B_k the
//! complete Bell polynomials. The dictionary n! d/dt_n <-> x^n maps
//! composed operators to polynomials in a marker x; second-order terms
//! map as products of markers x^(k1+k2)/(k1! k2!).

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::poly::Ctx;
use crate::scalar::Scalar;
use crate::toy::TauPair;

/// Truncation bounds: times t_0..t_max_index, total degree <= max_degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trunc {
    pub max_index: usize,
    pub max_degree: u32,
}

impl Trunc {
    pub fn new(max_index: usize, max_degree: u32) -> Trunc {
        Trunc {
            max_index,
            max_degree,
        }
    }
}

type TimeMono = Vec<u16>;

fn mono_degree(m: &TimeMono) -> u32 {
    m.iter().map(|&e| u32::from(e)).sum()
}

/// Polynomial in the times with exact scalar coefficients, truncated.
#[derive(Debug, Clone)]
pub struct TimesPolynomial {
    trunc: Trunc,
    ctx: Ctx,
    terms: BTreeMap<TimeMono, Scalar>,
}

impl TimesPolynomial {
    pub fn zero(trunc: Trunc, ctx: Ctx) -> TimesPolynomial {
        TimesPolynomial {
            trunc,
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(trunc: Trunc, c: Scalar) -> TimesPolynomial {
        let ctx = c.ctx();
        let mut p = TimesPolynomial::zero(trunc, ctx);
        p.accumulate(vec![0; trunc.max_index + 1], c);
        p
    }

    pub fn one(trunc: Trunc, ctx: Ctx) -> TimesPolynomial {
        TimesPolynomial::constant(trunc, Scalar::one(ctx))
    }

    /// The time variable t_k.
    pub fn time(trunc: Trunc, ctx: Ctx, k: usize) -> Result<TimesPolynomial> {
        if k > trunc.max_index {
            return Err(Error::TruncationExceeded(format!(
                "t_{k} exceeds the maximum index {}",
                trunc.max_index
            )));
        }
        let mut mono = vec![0u16; trunc.max_index + 1];
        mono[k] = 1;
        let mut p = TimesPolynomial::zero(trunc, ctx);
        p.accumulate(mono, Scalar::one(ctx));
        Ok(p)
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TimeMono, &Scalar)> {
        self.terms.iter()
    }

    fn accumulate(&mut self, mono: TimeMono, c: Scalar) {
        if c.is_zero() || mono_degree(&mono) > self.trunc.max_degree {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &TimesPolynomial) -> TimesPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TimesPolynomial) -> TimesPolynomial {
        self.add(&other.scale(&Scalar::from_int(other.ctx, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> TimesPolynomial {
        let mut out = TimesPolynomial::zero(self.trunc, self.ctx);
        for (m, k) in &self.terms {
            out.accumulate(m.clone(), k.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, other: &TimesPolynomial) -> TimesPolynomial {
        let mut out = TimesPolynomial::zero(self.trunc, self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: TimeMono = ma.iter().zip(mb.iter()).map(|(a, b)| a + b).collect();
                out.accumulate(mono, ca.mul_ref(cb));
            }
        }
        out
    }

    /// Partial derivative with respect to t_k.
    pub fn derivative(&self, k: usize) -> TimesPolynomial {
        let mut out = TimesPolynomial::zero(self.trunc, self.ctx);
        for (m, c) in &self.terms {
            let e = m[k];
            if e == 0 {
                continue;
            }
            let mut mono = m.clone();
            mono[k] = e - 1;
            out.accumulate(mono, c.mul_int(i64::from(e)));
        }
        out
    }

    /// Substitute t_k -> lambda_k t_k for every k.
    pub fn rescale_times(&self, lambda: &[Scalar]) -> TimesPolynomial {
        let mut out = TimesPolynomial::zero(self.trunc, self.ctx);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    coeff = &coeff * &lambda[k].pow(i64::from(e)).expect("nonnegative power");
                }
            }
            out.accumulate(m.clone(), coeff);
        }
        out
    }
}

impl PartialEq for TimesPolynomial {
    fn eq(&self, other: &TimesPolynomial) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for TimesPolynomial {}

impl fmt::Display for TimesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors = vec![format!("{c}")];
                for (k, &e) in m.iter().enumerate() {
                    if e == 1 {
                        factors.push(format!("t_{k}"));
                    } else if e > 1 {
                        factors.push(format!("t_{k}^{e}"));
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn binomial_int(n: u64, k: u64) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    if k > n {
        return BigRational::from_integer(BigInt::from(0));
    }
    BigRational::new(num, den)
}

fn falling_ratio(k: u64, m: u64) -> BigRational {
    // (k + m)! / k!
    let mut acc = BigInt::one();
    for i in k + 1..=k + m {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

fn factorial_rat(n: u64) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// Complete Bell polynomial B_k in t_1..t_k via the recurrence
/// B_(k+1) = sum_j C(k, j) B_(k-j) t_(j+1), with B_0 = 1.
pub fn bell_polynomial(k: usize, trunc: Trunc, ctx: Ctx) -> Result<TimesPolynomial> {
    if k > trunc.max_index {
        return Err(Error::TruncationExceeded(format!(
            "B_{k} needs t_{k} but the maximum index is {}",
            trunc.max_index
        )));
    }
    let mut bells: Vec<TimesPolynomial> = vec![TimesPolynomial::one(trunc, ctx)];
    for kk in 0..k {
        let mut next = TimesPolynomial::zero(trunc, ctx);
        for j in 0..=kk {
            let coeff = Scalar::from_rat(ctx, binomial_int(kk as u64, j as u64));
            let t = TimesPolynomial::time(trunc, ctx, j + 1)?;
            next = next.add(&bells[kk - j].mul(&t).scale(&coeff));
        }
        bells.push(next);
    }
    Ok(bells.pop().unwrap())
}

/// First-order differential operator with polynomial coefficients;
/// compositions may carry second-order terms.
#[derive(Debug, Clone)]
pub struct DiffOperator {
    trunc: Trunc,
    terms: Vec<(TimesPolynomial, Vec<usize>)>,
}

impl DiffOperator {
    pub fn zero(trunc: Trunc) -> DiffOperator {
        DiffOperator {
            trunc,
            terms: Vec::new(),
        }
    }

    pub fn terms(&self) -> &[(TimesPolynomial, Vec<usize>)] {
        &self.terms
    }

    fn push(&mut self, coeff: TimesPolynomial, mut derivs: Vec<usize>) {
        if coeff.is_zero() {
            return;
        }
        derivs.sort_unstable();
        if let Some((c, _)) = self.terms.iter_mut().find(|(_, d)| *d == derivs) {
            *c = c.add(&coeff);
            return;
        }
        self.terms.push((coeff, derivs));
    }

    fn normalized(mut self) -> DiffOperator {
        self.terms.retain(|(c, _)| !c.is_zero());
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        self
    }

    /// Apply to a times polynomial, exactly, under the truncation.
    pub fn apply(&self, f: &TimesPolynomial) -> TimesPolynomial {
        let mut out = TimesPolynomial::zero(self.trunc, f.ctx);
        for (coeff, derivs) in &self.terms {
            let mut g = f.clone();
            for &k in derivs {
                g = g.derivative(k);
                if g.is_zero() {
                    break;
                }
            }
            out = out.add(&coeff.mul(&g));
        }
        out
    }

    /// Compose self after rhs. Self must be first-order (which every
    /// constraint operator is); the result may hold second-order terms.
    pub fn compose(&self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero(self.trunc);
        for (c1, d1) in &self.terms {
            assert!(d1.len() == 1, "composition requires a first-order left factor");
            let k = d1[0];
            for (c2, d2) in &rhs.terms {
                // product rule: c1 d_k (c2 d_D) = c1 (d_k c2) d_D + c1 c2 d_k d_D
                out.push(c1.mul(&c2.derivative(k)), d2.clone());
                let mut dd = d2.clone();
                dd.push(k);
                out.push(c1.mul(c2), dd);
            }
        }
        out.normalized()
    }

    pub fn scale(&self, c: &Scalar) -> DiffOperator {
        DiffOperator {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(p, d)| (p.scale(c), d.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (c, d) in &rhs.terms {
            out.push(c.clone(), d.clone());
        }
        out.normalized()
    }

    /// Map n! d/dt_n to the marker x^n: each term becomes
    /// x^(sum k_i) / prod k_i! times its polynomial coefficient.
    pub fn dict_image(&self) -> DictPoly {
        let mut out = DictPoly::default();
        for (coeff, derivs) in &self.terms {
            let xpow: u64 = derivs.iter().map(|&k| k as u64).sum();
            let mut scale = BigRational::one();
            for &k in derivs {
                scale /= factorial_rat(k as u64);
            }
            for (mono, c) in coeff.terms() {
                out.accumulate(
                    xpow,
                    mono.clone(),
                    c.mul_ref(&Scalar::from_rat(c.ctx(), scale.clone())),
                );
            }
        }
        out
    }
}

/// Polynomial in the marker x and the times: the dictionary image.
#[derive(Debug, Clone, Default)]
pub struct DictPoly {
    terms: BTreeMap<(u64, TimeMono), Scalar>,
}

impl DictPoly {
    fn accumulate(&mut self, x: u64, mono: TimeMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((x, mono)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &DictPoly) -> DictPoly {
        let mut out = self.clone();
        for ((x, m), c) in &other.terms {
            out.accumulate(*x, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> DictPoly {
        let mut out = DictPoly::default();
        for ((x, m), k) in &self.terms {
            out.accumulate(*x, m.clone(), k.mul_ref(c));
        }
        out
    }

    pub fn sub(&self, other: &DictPoly) -> DictPoly {
        let minus = match other.terms.values().next() {
            Some(c) => Scalar::from_int(c.ctx(), -1),
            None => return self.clone(),
        };
        self.add(&other.scale(&minus))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl PartialEq for DictPoly {
    fn eq(&self, other: &DictPoly) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for DictPoly {}

impl fmt::Display for DictPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((x, m), c)| {
                let mut factors = vec![format!("{c}")];
                if *x > 0 {
                    factors.push(format!("x^{x}"));
                }
                for (k, &e) in m.iter().enumerate() {
                    if e == 1 {
                        factors.push(format!("t_{k}"));
                    } else if e > 1 {
                        factors.push(format!("t_{k}^{e}"));
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The constraint operator for index m >= 0 at level a:
/// [m+gamma]_a m! d/dt_m plus the Bell-weighted tail, truncated at
/// k = max_index - m. The fermionic variant is theta times the same
/// operator, so one scalar operator serves both parities.
pub fn constraint_diff_op(
    d: &Deformation,
    m: i64,
    level: i64,
    gamma: i64,
    trunc: Trunc,
) -> Result<DiffOperator> {
    if m < 0 {
        return Err(Error::NegativeIndex(m));
    }
    let mu = m as usize;
    if mu > trunc.max_index {
        return Err(Error::TruncationExceeded(format!(
            "operator index {m} exceeds the maximum time index {}",
            trunc.max_index
        )));
    }
    let tp = TauPair::for_deformation(d)?;
    let mut op = DiffOperator::zero(trunc);
    let head = d
        .bracket_number_level(m + gamma, level)?
        .mul_ref(&Scalar::from_rat(Ctx::Pqc, factorial_rat(m as u64)));
    op.push(TimesPolynomial::constant(trunc, head), vec![mu]);
    // rescaled times t^a_k = (tau1^(ak) - tau2^(ak)) t_k
    let lambda: Vec<Scalar> = (0..=trunc.max_index)
        .map(|k| tp.denom(level * k as i64))
        .collect();
    let prefactor = d.phi_pow(m + gamma).try_div(&tp.denom(level))?;
    for k in 1..=trunc.max_index - mu {
        let bell = bell_polynomial(k, trunc, Ctx::Pqc)?.rescale_times(&lambda);
        let coeff = Scalar::from_rat(Ctx::Pqc, falling_ratio(k as u64, m as u64));
        op.push(bell.scale(&coeff).scale(&prefactor), vec![k + mu]);
    }
    Ok(op.normalized())
}

/// Outcome of one dictionary comparison, with full renderings.
pub struct DictionaryComparison {
    pub lhs: DictPoly,
    pub rhs: DictPoly,
}

impl DictionaryComparison {
    pub fn verdict(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compose two constraint operators, push both sides through the
/// dictionary, and compare against the product identity with the shifted
/// indices mbar = m + gamma, nbar = n + gamma in the coefficients. The
/// right-hand generators are taken at index m + n (bosonic) or m + n + 1
/// (mixed) with the same gamma.
pub fn dictionary_check(
    d: &Deformation,
    m: i64,
    n: i64,
    a: i64,
    b: i64,
    gamma: i64,
    trunc: Trunc,
    mixed: bool,
) -> Result<DictionaryComparison> {
    if m as usize > trunc.max_index && n as usize > trunc.max_index {
        return Err(Error::TruncationExceeded(format!(
            "both indices {m}, {n} exceed the maximum time index {}",
            trunc.max_index
        )));
    }
    let tp = TauPair::for_deformation(d)?;
    let left = constraint_diff_op(d, m, a, gamma, trunc)?;
    let right = constraint_diff_op(d, n, b, gamma, trunc)?;
    let lhs = left.compose(&right).dict_image();
    let (mb, nb) = (m + gamma, n + gamma);
    let rhs = if mixed {
        let c1 = (&tp.denom(a + b) * &tp.pow1(-(mb + 1) * b))
            .try_div(&(&tp.denom(a) * &tp.denom(b)))?
            .neg_ref();
        let c2 = tp.pow2(-nb * b).try_div(&tp.denom(b))?;
        let c3 = (&tp.pow2((mb + nb + 1) * a) * &tp.pow1(-(mb + 1) * b)).try_div(&tp.denom(a))?;
        let idx = m + n + 1;
        constraint_diff_op(d, idx, a + b, gamma, trunc)?
            .dict_image()
            .scale(&c1)
            .add(&constraint_diff_op(d, idx, a, gamma, trunc)?.dict_image().scale(&c2))
            .add(&constraint_diff_op(d, idx, b, gamma, trunc)?.dict_image().scale(&c3))
    } else {
        let c1 = (&tp.denom(a + b) * &tp.pow1(-mb * b))
            .try_div(&(&tp.denom(a) * &tp.denom(b)))?
            .neg_ref();
        let c2 = tp.pow2(-nb * b).try_div(&tp.denom(b))?;
        let c3 = (&tp.pow2((mb + nb) * a) * &tp.pow1(-mb * b)).try_div(&tp.denom(a))?;
        let idx = m + n;
        constraint_diff_op(d, idx, a + b, gamma, trunc)?
            .dict_image()
            .scale(&c1)
            .add(&constraint_diff_op(d, idx, a, gamma, trunc)?.dict_image().scale(&c2))
            .add(&constraint_diff_op(d, idx, b, gamma, trunc)?.dict_image().scale(&c3))
    };
    Ok(DictionaryComparison { lhs, rhs })
}
