//! Deformations: a rational function R(x, y), the twist phi, and an
//! optional tau-factorization of the deformed numbers.
//!
//! A deformed integer is the value of R at (p^n, q^n); the level-a variant
//! substitutes (p^(a n), q^(a n)) and raises the parameters inside R to the
//! a-th power as well. When a factorization [n] = scale * (tau1^n - tau2^n)
//! exists, ratios such as [2m]/[m] = tau1^m + tau2^m stay finite at m = 0
//! and every central-term coefficient is computed through it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::poly::{Ctx, LaurentPoly, SubstTarget};
use crate::scalar::Scalar;

/// Which parameter a formal argument of R tracks. `None` pins the
/// argument to 1 (single-parameter deformations ignore one slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgTarget {
    P,
    Q,
    One,
}

impl ArgTarget {
    fn subst(self, exp: i64) -> SubstTarget {
        match self {
            ArgTarget::P => SubstTarget::Power("p", exp),
            ArgTarget::Q => SubstTarget::Power("q", exp),
            ArgTarget::One => SubstTarget::value_i64(1),
        }
    }
}

/// Factorization [n] = scale * (tau1^n - tau2^n).
///
/// For four of the shipped presets scale = 1/(tau1 - tau2), the textbook
/// form. The Quesne numbers satisfy no such normalization ([1] = p/q there),
/// so the scale is carried explicitly; every ratio the workbench takes
/// ([2m]/[m], [m]/[2m]) is scale-free either way.
#[derive(Debug, Clone)]
pub struct Tau {
    pub tau1: Scalar,
    pub tau2: Scalar,
    pub scale: Scalar,
}

impl Tau {
    /// tau1^k, exact.
    pub fn pow1(&self, k: i64) -> Scalar {
        self.tau1.pow(k).expect("tau1 is a unit")
    }

    /// tau2^k, exact.
    pub fn pow2(&self, k: i64) -> Scalar {
        self.tau2.pow(k).expect("tau2 is a unit")
    }

    /// tau1^k + tau2^k, the regularized value of [2k]/[k].
    pub fn power_sum(&self, k: i64) -> Scalar {
        &self.pow1(k) + &self.pow2(k)
    }

    /// The factorized deformed number scale * (tau1^n - tau2^n).
    pub fn number(&self, n: i64) -> Scalar {
        &self.scale * &(&self.pow1(n) - &self.pow2(n))
    }
}

struct Inner {
    name: String,
    r_num: LaurentPoly,
    r_den: LaurentPoly,
    x_target: ArgTarget,
    y_target: ArgTarget,
    phi: Scalar,
    tau: Option<Tau>,
    cache: RwLock<HashMap<(i64, i64), Scalar>>,
}

/// An immutable deformation; cloning shares the bracket-number cache.
#[derive(Clone)]
pub struct Deformation {
    inner: Arc<Inner>,
}

impl fmt::Debug for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Deformation({})", self.inner.name)
    }
}

/// The window on which type invariants are verified at construction.
pub const CONSISTENCY_WINDOW: i64 = 6;

impl Deformation {
    /// Build and validate a deformation. Checks, over symbolic parameters:
    /// the numerator of R vanishes at (1, 1) while the denominator does
    /// not; phi evaluates to 1 at p = q = 1; and, when a tau pair is
    /// given, [n] = scale * (tau1^n - tau2^n) exactly for |n| <= 6.
    pub fn new(
        name: &str,
        r_num: LaurentPoly,
        r_den: LaurentPoly,
        x_target: ArgTarget,
        y_target: ArgTarget,
        phi: Scalar,
        tau: Option<Tau>,
    ) -> Result<Deformation> {
        if r_den.is_zero() {
            return Err(Error::Config(format!("{name}: R has a zero denominator")));
        }
        let at_one = [
            SubstTarget::value_i64(1),
            SubstTarget::value_i64(1),
            SubstTarget::Power("p", 1),
            SubstTarget::Power("q", 1),
        ];
        let num_at_one = r_num.substitute(Ctx::Pqc, &at_one)?;
        if !num_at_one.is_zero() {
            return Err(Error::Config(format!(
                "{name}: R(1,1) = 0 fails; numerator at (1,1) is {num_at_one}"
            )));
        }
        let den_at_one = r_den.substitute(Ctx::Pqc, &at_one)?;
        if den_at_one.is_zero() {
            return Err(Error::Config(format!(
                "{name}: denominator of R vanishes at (1,1)"
            )));
        }
        let classical = [
            SubstTarget::value_i64(1),
            SubstTarget::value_i64(1),
            SubstTarget::Power("c", 1),
        ];
        let phi_at_one = phi.substitute(Ctx::Pqc, &classical)?;
        if !phi_at_one.is_one() {
            return Err(Error::Config(format!(
                "{name}: phi(1,1) = 1 fails; got {phi_at_one}"
            )));
        }
        let d = Deformation {
            inner: Arc::new(Inner {
                name: name.to_string(),
                r_num,
                r_den,
                x_target,
                y_target,
                phi,
                tau,
                cache: RwLock::new(HashMap::new()),
            }),
        };
        if let Some(tau) = &d.inner.tau {
            if (&tau.tau1 - &tau.tau2).is_zero() {
                return Err(Error::Config(format!("{name}: tau1 = tau2")));
            }
            for n in -CONSISTENCY_WINDOW..=CONSISTENCY_WINDOW {
                let direct = d.bracket_number(n)?;
                let via_tau = tau.number(n);
                if direct != via_tau {
                    return Err(Error::Config(format!(
                        "{name}: tau form fails at n = {n}: [n] = {direct}, tau form = {via_tau}"
                    )));
                }
            }
        }
        Ok(d)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn phi(&self) -> &Scalar {
        &self.inner.phi
    }

    /// phi^k for any integer k.
    pub fn phi_pow(&self, k: i64) -> Scalar {
        self.inner.phi.pow(k).expect("phi is nonzero")
    }

    pub fn tau(&self) -> Option<&Tau> {
        self.inner.tau.as_ref()
    }

    pub fn require_tau(&self) -> Result<&Tau> {
        self.inner
            .tau
            .as_ref()
            .ok_or_else(|| Error::MissingTauFactorization(self.inner.name.clone()))
    }

    /// The central charge symbol c as a scalar.
    pub fn central(&self) -> Scalar {
        Scalar::var(Ctx::Pqc, "c")
    }

    /// The deformed integer [n]: R evaluated at (p^n, q^n).
    pub fn bracket_number(&self, n: i64) -> Result<Scalar> {
        self.bracket_number_level(n, 1)
    }

    /// The level-a deformed integer [n] at parameters (p^a, q^a).
    pub fn bracket_number_level(&self, n: i64, level: i64) -> Result<Scalar> {
        if let Some(hit) = self.inner.cache.read().unwrap().get(&(level, n)) {
            return Ok(hit.clone());
        }
        let map = [
            self.inner.x_target.subst(n * level),
            self.inner.y_target.subst(n * level),
            SubstTarget::Power("p", level),
            SubstTarget::Power("q", level),
        ];
        let num = self.inner.r_num.substitute(Ctx::Pqc, &map)?;
        let den = self.inner.r_den.substitute(Ctx::Pqc, &map)?;
        if den.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        let value = Scalar::new(num, den)?;
        self.inner
            .cache
            .write()
            .unwrap()
            .insert((level, n), value.clone());
        Ok(value)
    }

    /// The regularized ratio [2m]/[m] = tau1^m + tau2^m, finite at m = 0.
    pub fn bracket_ratio_2m_over_m(&self, m: i64) -> Result<Scalar> {
        Ok(self.require_tau()?.power_sum(m))
    }

    /// [n]! = [1][2]...[n], with [0]! = 1.
    pub fn deformed_factorial(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return Err(Error::NegativeIndex(n));
        }
        let mut acc = Scalar::one(Ctx::Pqc);
        for k in 1..=n {
            acc = &acc * &self.bracket_number(k)?;
        }
        Ok(acc)
    }

    /// [m]! / ([n]! [m-n]!), for 0 <= n <= m.
    pub fn deformed_binomial(&self, m: i64, n: i64) -> Result<Scalar> {
        if n < 0 || m < n {
            return Err(Error::IndexOutOfRange { m, n });
        }
        let num = self.deformed_factorial(m)?;
        let den = &self.deformed_factorial(n)? * &self.deformed_factorial(m - n)?;
        num.try_div(&den)
    }

    /// Render the defining data for preset listings.
    pub fn describe(&self) -> String {
        let r = if self.inner.r_den == LaurentPoly::one(Ctx::Def) {
            format!("{}", self.inner.r_num)
        } else {
            format!("({})/({})", self.inner.r_num, self.inner.r_den)
        };
        let tau = match &self.inner.tau {
            Some(t) => format!("tau = ({}, {})", t.tau1, t.tau2),
            None => "no tau factorization".to_string(),
        };
        format!(
            "{}: R = {}, phi = {}, {}",
            self.inner.name, r, self.inner.phi, tau
        )
    }

    /// Replace phi (the twist is not pinned down by every source); the
    /// replacement must still satisfy phi(1,1) = 1.
    pub fn with_phi(&self, phi: Scalar) -> Result<Deformation> {
        Deformation::new(
            &self.inner.name,
            self.inner.r_num.clone(),
            self.inner.r_den.clone(),
            self.inner.x_target,
            self.inner.y_target,
            phi,
            self.inner.tau.clone(),
        )
    }
}

pub const PRESET_NAMES: [&str; 5] = [
    "jagannathan-srinivasa",
    "arik-coon",
    "chakrabarti-jagannathan",
    "quesne",
    "biedenharn-macfarlane",
];

/// Look up a shipped deformation by name.
pub fn preset(name: &str) -> Result<Deformation> {
    let x = || LaurentPoly::var(Ctx::Def, "x");
    let y = || LaurentPoly::var(Ctx::Def, "y");
    let p = || LaurentPoly::var(Ctx::Def, "p");
    let q = || LaurentPoly::var(Ctx::Def, "q");
    let one = || LaurentPoly::one(Ctx::Def);
    let sp = || Scalar::var(Ctx::Pqc, "p");
    let sq = || Scalar::var(Ctx::Pqc, "q");
    let s1 = || Scalar::one(Ctx::Pqc);
    let inv = |s: &Scalar| s.inv().expect("nonzero");
    match name {
        // R = (x - y)/(p - q), phi = pq, tau = (p, q)
        "jagannathan-srinivasa" => Deformation::new(
            name,
            x().sub(&y()),
            p().sub(&q()),
            ArgTarget::P,
            ArgTarget::Q,
            &sp() * &sq(),
            Some(Tau {
                tau1: sp(),
                tau2: sq(),
                scale: inv(&(&sp() - &sq())),
            }),
        ),
        // R = (x - 1)/(q - 1) evaluated at x = q^n, phi = q, tau = (1, q)
        "arik-coon" => Deformation::new(
            name,
            x().sub(&one()),
            q().sub(&one()),
            ArgTarget::Q,
            ArgTarget::One,
            sq(),
            Some(Tau {
                tau1: s1(),
                tau2: sq(),
                scale: inv(&(&s1() - &sq())),
            }),
        ),
        // R = (1 - xy)/((p^-1 - q) x), phi defaults to pq, tau = (p^-1, q)
        "chakrabarti-jagannathan" => {
            let pinv = Scalar::var_pow(Ctx::Pqc, "p", -1);
            Deformation::new(
                name,
                one().sub(&x().mul(&y())),
                LaurentPoly::var_pow(Ctx::Def, "p", -1)
                    .sub(&q())
                    .mul(&x()),
                ArgTarget::P,
                ArgTarget::Q,
                &sp() * &sq(),
                Some(Tau {
                    scale: inv(&(&pinv - &sq())),
                    tau1: pinv,
                    tau2: sq(),
                }),
            )
        }
        // R = (xy - 1)/((q - p^-1) y), phi defaults to pq, tau = (p, q^-1)
        // with the explicit scale 1/(q - p^-1); no normalization with
        // scale = 1/(tau1 - tau2) exists since [1] = p/q here.
        "quesne" => {
            let qinv = Scalar::var_pow(Ctx::Pqc, "q", -1);
            let pinv = Scalar::var_pow(Ctx::Pqc, "p", -1);
            Deformation::new(
                name,
                x().mul(&y()).sub(&one()),
                LaurentPoly::var_pow(Ctx::Def, "p", -1)
                    .neg()
                    .add(&q())
                    .mul(&y()),
                ArgTarget::P,
                ArgTarget::Q,
                &sp() * &sq(),
                Some(Tau {
                    tau1: sp(),
                    tau2: qinv,
                    scale: inv(&(&sq() - &pinv)),
                }),
            )
        }
        // R = (x - x^-1)/(q - q^-1) evaluated at x = q^n; y is unused.
        // phi = tau1 * tau2 = 1, matching the twist pattern of the
        // two presets whose phi is pinned down.
        "biedenharn-macfarlane" => {
            let qinv = Scalar::var_pow(Ctx::Pqc, "q", -1);
            Deformation::new(
                name,
                x().sub(&LaurentPoly::var_pow(Ctx::Def, "x", -1)),
                q().sub(&LaurentPoly::var_pow(Ctx::Def, "q", -1)),
                ArgTarget::Q,
                ArgTarget::One,
                s1(),
                Some(Tau {
                    tau1: sq(),
                    scale: inv(&(&sq() - &qinv)),
                    tau2: qinv,
                }),
            )
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn js() -> Deformation {
        preset("jagannathan-srinivasa").unwrap()
    }

    fn ac() -> Deformation {
        preset("arik-coon").unwrap()
    }

    fn sp() -> Scalar {
        Scalar::var(Ctx::Pqc, "p")
    }

    fn sq() -> Scalar {
        Scalar::var(Ctx::Pqc, "q")
    }

    #[test]
    fn all_presets_construct() {
        for name in PRESET_NAMES {
            let d = preset(name).unwrap();
            assert!(d.bracket_number(0).unwrap().is_zero(), "{name}: [0] != 0");
        }
        assert!(matches!(
            preset("unknown-name"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn js_small_numbers() {
        let d = js();
        assert!(d.bracket_number(0).unwrap().is_zero());
        assert!(d.bracket_number(1).unwrap().is_one());
        // [2] = p + q
        assert_eq!(d.bracket_number(2).unwrap(), &sp() + &sq());
        // [-n] = -(pq)^-n [n]
        for n in 1..=6 {
            let lhs = d.bracket_number(-n).unwrap();
            let rhs = &(&d.phi_pow(-n) * &d.bracket_number(n).unwrap()).neg_ref();
            assert_eq!(&lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn ac_small_numbers() {
        let d = ac();
        // [3] = 1 + q + q^2
        let expect = &(&Scalar::one(Ctx::Pqc) + &sq()) + &(&sq() * &sq());
        assert_eq!(d.bracket_number(3).unwrap(), expect);
    }

    #[test]
    fn tau_ratio() {
        // JS: [2m]/[m] regularized = p^m + q^m, exact against the direct
        // quotient wherever [m] is nonzero
        let d = js();
        for m in -6..=6i64 {
            let reg = d.bracket_ratio_2m_over_m(m).unwrap();
            if m == 0 {
                assert_eq!(reg, Scalar::from_int(Ctx::Pqc, 2));
                continue;
            }
            let direct = d
                .bracket_number(2 * m)
                .unwrap()
                .try_div(&d.bracket_number(m).unwrap())
                .unwrap();
            assert_eq!(reg, direct, "m = {m}");
        }
    }

    #[test]
    fn factorials_and_binomials() {
        let d = js();
        assert!(d.deformed_factorial(0).unwrap().is_one());
        // [2]! = [1][2] = p + q
        assert_eq!(d.deformed_factorial(2).unwrap(), &sp() + &sq());
        // [3]! = (p + q)(p^2 + pq + q^2), built from the bracket oracle
        let expect = &d.bracket_number(2).unwrap() * &d.bracket_number(3).unwrap();
        assert_eq!(d.deformed_factorial(3).unwrap(), expect);
        // binomial edge and small cases
        assert!(d.deformed_binomial(4, 0).unwrap().is_one());
        assert_eq!(
            d.deformed_binomial(3, 1).unwrap(),
            d.bracket_number(3).unwrap()
        );
        assert_eq!(
            d.deformed_binomial(2, 1).unwrap(),
            d.bracket_number(2).unwrap()
        );
        assert!(matches!(
            d.deformed_factorial(-1),
            Err(Error::NegativeIndex(-1))
        ));
        assert!(matches!(
            d.deformed_binomial(2, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn level_graded_numbers() {
        // [m] at level a equals (tau1^(am) - tau2^(am))/(tau1^a - tau2^a)
        for name in PRESET_NAMES {
            let d = preset(name).unwrap();
            let tau = d.tau().unwrap();
            for a in 1..=3i64 {
                for m in -4..=4i64 {
                    let direct = d.bracket_number_level(m, a).unwrap();
                    let num = &tau.pow1(a * m) - &tau.pow2(a * m);
                    let den = &tau.pow1(a) - &tau.pow2(a);
                    // scale-free check: [m]_a * (tau1^a - tau2^a) must be
                    // proportional to tau1^(am) - tau2^(am) with the same
                    // n-independent factor as at level 1
                    let lhs = &direct * &den;
                    let k = &d.bracket_number_level(1, a).unwrap() * &den;
                    let rhs = &num * &k;
                    // lhs * (tau1^a - tau2^a) = rhs when k = [1]_a (tau1^a - tau2^a)
                    assert_eq!(&lhs * &den, rhs, "{name}: a = {a}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn quesne_first_bracket_is_p_over_q() {
        let d = preset("quesne").unwrap();
        let expect = sp().try_div(&sq()).unwrap();
        assert_eq!(d.bracket_number(1).unwrap(), expect);
    }
}
