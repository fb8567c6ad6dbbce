//! Sparse multivariate Laurent polynomials over arbitrary-precision rationals.
//!
//! Every computation runs inside a fixed variable context so exponent
//! vectors stay small and dense. Mixing contexts is a programming error
//! and panics.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Maximum number of variables across all contexts.
pub const MAX_VARS: usize = 4;

/// A fixed variable universe.
///
/// `Def` hosts deformation definitions R(x, y) before the formal arguments
/// are bound; `Pqc` hosts everything expressed in the deformation
/// parameters plus the central charge symbol; `Tau` is the formal
/// two-symbol field used by the level-graded multiplication operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ctx {
    /// x, y, p, q
    Def,
    /// p, q, c
    Pqc,
    /// tau1, tau2, c
    Tau,
}

impl Ctx {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            Ctx::Def => &["x", "y", "p", "q"],
            Ctx::Pqc => &["p", "q", "c"],
            Ctx::Tau => &["tau1", "tau2", "c"],
        }
    }

    pub fn arity(self) -> usize {
        self.names().len()
    }

    pub fn var_index(self, name: &str) -> Option<usize> {
        self.names().iter().position(|&n| n == name)
    }
}

/// Exponent vector; slots past the context arity stay zero.
///
/// Negative exponents are first-class: the presets use p^-1 and q^-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub [i32; MAX_VARS]);

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(idx: usize) -> Self {
        let mut e = [0i32; MAX_VARS];
        e[idx] = 1;
        Mono(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0i32; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut e = [0i32; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i] - other.0[i];
        }
        Mono(e)
    }
}

/// Sparse Laurent polynomial: a finite map from exponent vectors to
/// nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ctx: Ctx,
    terms: BTreeMap<Mono, BigRational>,
}

impl LaurentPoly {
    pub fn zero(ctx: Ctx) -> Self {
        LaurentPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: Ctx) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: Ctx, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        LaurentPoly { ctx, terms }
    }

    pub fn from_int(ctx: Ctx, n: i64) -> Self {
        Self::constant(ctx, BigRational::from_integer(BigInt::from(n)))
    }

    /// The variable `name`^`exp`; panics if the context lacks the variable.
    pub fn var_pow(ctx: Ctx, name: &str, exp: i32) -> Self {
        let idx = ctx
            .var_index(name)
            .unwrap_or_else(|| panic!("variable `{name}` not in context {ctx:?}"));
        let mut e = [0i32; MAX_VARS];
        e[idx] = exp;
        Self::monomial(ctx, BigRational::one(), Mono(e))
    }

    pub fn var(ctx: Ctx, name: &str) -> Self {
        Self::var_pow(ctx, name, 1)
    }

    pub fn monomial(ctx: Ctx, c: BigRational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { ctx, terms }
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    /// Some coefficient if this is a pure constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single (monomial, coefficient) pair if there is exactly one term.
    pub fn as_monomial(&self) -> Option<(Mono, BigRational)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((*m, c.clone()))
        } else {
            None
        }
    }

    fn assert_ctx(&self, other: &LaurentPoly) {
        assert_eq!(
            self.ctx, other.ctx,
            "mixed variable contexts: {:?} vs {:?}",
            self.ctx, other.ctx
        );
    }

    fn insert_term(terms: &mut BTreeMap<Mono, BigRational>, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_ctx(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, *m, c.clone());
        }
        LaurentPoly {
            ctx: self.ctx,
            terms,
        }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_ctx(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        LaurentPoly {
            ctx: self.ctx,
            terms,
        }
    }

    pub fn mul_rat(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> LaurentPoly {
        LaurentPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.ctx);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    /// Returns the unit monomial for the zero polynomial.
    pub fn content_mono(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono::one(),
        };
        let mut e = first.0;
        for m in it {
            for (i, slot) in e.iter_mut().enumerate() {
                *slot = (*slot).min(m.0[i]);
            }
        }
        Mono(e)
    }

    /// Leading term in the exponent order (largest monomial key).
    pub fn leading(&self) -> Option<(Mono, BigRational)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Exact division attempt. Both operands must be honest polynomials
    /// (no negative exponents); strip contents first. Returns None when
    /// `div` does not divide `self`.
    pub fn try_div_exact(&self, div: &LaurentPoly) -> Option<LaurentPoly> {
        self.assert_ctx(div);
        if div.is_zero() {
            return None;
        }
        let (dlm, dlc) = div.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rlm, rlc)) = rem.leading() {
            let qm = rlm.div(&dlm);
            if qm.0.iter().any(|&e| e < 0) {
                return None;
            }
            let qc = rlc / &dlc;
            Self::insert_term(&mut quot, qm, qc.clone());
            let piece = div.mul(&LaurentPoly::monomial(self.ctx, qc, qm));
            rem = rem.sub(&piece);
        }
        Some(LaurentPoly {
            ctx: self.ctx,
            terms: quot,
        })
    }

    /// Substitute every variable by `var^k` or a rational value, landing in
    /// `target` context. A term's exponent e maps to e*k on the target
    /// variable, or to value^e.
    pub fn substitute(&self, target: Ctx, map: &[SubstTarget]) -> Result<LaurentPoly> {
        assert_eq!(map.len(), self.ctx.arity(), "substitution map arity mismatch");
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Mono::one();
            for (i, &e) in m.0.iter().take(self.ctx.arity()).enumerate() {
                if e == 0 {
                    continue;
                }
                match &map[i] {
                    SubstTarget::Power(var, k) => {
                        let idx = target
                            .var_index(var)
                            .unwrap_or_else(|| panic!("variable `{var}` not in {target:?}"));
                        let shift = i64::from(e) * k;
                        let shift = i32::try_from(shift).expect("exponent overflow");
                        mono.0[idx] += shift;
                    }
                    SubstTarget::Value(v) => {
                        if v.is_zero() {
                            if e < 0 {
                                return Err(Error::EvaluationAtPole);
                            }
                            coeff = BigRational::zero();
                            break;
                        }
                        let p = rational_pow(v, e);
                        coeff *= p;
                    }
                }
            }
            Self::insert_term(&mut out, mono, coeff);
        }
        Ok(LaurentPoly {
            ctx: target,
            terms: out,
        })
    }
}

/// Per-variable substitution target: `var^k` or a rational constant.
#[derive(Debug, Clone)]
pub enum SubstTarget {
    Power(&'static str, i64),
    Value(BigRational),
}

impl SubstTarget {
    pub fn value_i64(v: i64) -> Self {
        SubstTarget::Value(BigRational::from_integer(BigInt::from(v)))
    }
}

fn rational_pow(v: &BigRational, e: i32) -> BigRational {
    let ue = e.unsigned_abs();
    let mut acc = BigRational::one();
    for _ in 0..ue {
        acc *= v;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ctx.names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (vi, &e) in m.0.iter().take(names.len()).enumerate() {
                if e == 1 {
                    factors.push(names[vi].to_string());
                } else if e != 0 {
                    factors.push(format!("{}^{}", names[vi], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
