//! Parity-graded linear operators on the superspace, kept as linear
//! combinations of primitive words.
//!
//! Words are never expanded into a normal form; all semantics flow through
//! the action on basis elements, and operator equality means agreement on
//! every basis element t^n, theta t^n for |n| <= W. Every primitive is a
//! weighted shift, so a word applied to a basis element stays a scalar
//! multiple of a basis element.

use std::fmt;

use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::poly::Ctx;
use crate::scalar::Scalar;
use crate::superspace::SuperElement;

/// Default window half-width for operator equality checks.
pub const DEFAULT_WINDOW: i64 = 8;

/// Primitive operator words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Prim {
    /// Multiplication by t^k.
    MulT(i64),
    /// Left multiplication by theta.
    MulTheta,
    /// The diagonal map Delta.
    Delta,
    /// The twist sigma.
    Sigma,
    /// The diagonal map d_t.
    DT,
    /// The odd derivative d_theta.
    DTheta,
}

impl Prim {
    pub fn parity(self) -> u8 {
        match self {
            Prim::MulTheta | Prim::DTheta => 1,
            _ => 0,
        }
    }

    fn apply(self, d: &Deformation, e: &SuperElement) -> Result<SuperElement> {
        Ok(match self {
            Prim::MulT(k) => e.mul_t_pow(k),
            Prim::MulTheta => e.mul_theta(),
            Prim::Delta => crate::superspace::delta(d, e)?,
            Prim::Sigma => crate::superspace::sigma(d, e),
            Prim::DT => crate::superspace::d_t(d, e)?,
            Prim::DTheta => crate::superspace::d_theta(d, e),
        })
    }
}

pub type Word = Vec<Prim>;

fn word_parity(w: &[Prim]) -> u8 {
    w.iter().map(|p| p.parity() as u32).sum::<u32>() as u8 % 2
}

/// A finite linear combination of words, all of one parity.
#[derive(Debug, Clone)]
pub struct GradedOperator {
    terms: Vec<(Scalar, Word)>,
    parity: u8,
}

impl GradedOperator {
    pub fn zero(parity: u8) -> GradedOperator {
        GradedOperator {
            terms: Vec::new(),
            parity,
        }
    }

    pub fn identity() -> GradedOperator {
        GradedOperator {
            terms: vec![(Scalar::one(Ctx::Pqc), Vec::new())],
            parity: 0,
        }
    }

    pub fn from_word(coeff: Scalar, word: Word) -> GradedOperator {
        let parity = word_parity(&word);
        let mut op = GradedOperator {
            terms: vec![(coeff, word)],
            parity,
        };
        op.normalize();
        op
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn terms(&self) -> &[(Scalar, Word)] {
        &self.terms
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merge equal words and drop zero coefficients; keeps the term list
    /// deterministic (sorted by word).
    fn normalize(&mut self) {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(Scalar, Word)> = Vec::with_capacity(self.terms.len());
        for (c, w) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((mc, mw)) if *mw == w => {
                    *mc = mc.add_ref(&c);
                }
                _ => merged.push((c, w)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        self.terms = merged;
    }

    /// The bosonic generator l_m = -t^m Delta.
    pub fn l_op(m: i64) -> GradedOperator {
        GradedOperator::from_word(
            Scalar::from_int(Ctx::Pqc, -1),
            vec![Prim::MulT(m), Prim::Delta],
        )
    }

    /// The fermionic generator G_m = -theta t^m Delta.
    pub fn g_op(m: i64) -> GradedOperator {
        GradedOperator::from_word(
            Scalar::from_int(Ctx::Pqc, -1),
            vec![Prim::MulTheta, Prim::MulT(m), Prim::Delta],
        )
    }

    /// Operator composition self after rhs: word concatenation with
    /// coefficient products.
    pub fn compose(&self, rhs: &GradedOperator) -> GradedOperator {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ca, wa) in &self.terms {
            for (cb, wb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((ca.mul_ref(cb), w));
            }
        }
        let mut op = GradedOperator {
            terms,
            parity: (self.parity + rhs.parity) % 2,
        };
        op.normalize();
        op
    }

    /// Pointwise linear combination; all operators must share one parity.
    pub fn lin_comb(parts: &[(Scalar, &GradedOperator)]) -> Result<GradedOperator> {
        let mut parity: Option<u8> = None;
        let mut terms = Vec::new();
        for (c, op) in parts {
            if op.is_structurally_zero() || c.is_zero() {
                continue;
            }
            match parity {
                None => parity = Some(op.parity),
                Some(p) if p == op.parity => {}
                Some(_) => return Err(Error::MixedParity),
            }
            for (k, w) in &op.terms {
                terms.push((c.mul_ref(k), w.clone()));
            }
        }
        let mut op = GradedOperator {
            terms,
            parity: parity.unwrap_or(0),
        };
        op.normalize();
        Ok(op)
    }

    pub fn scale(&self, c: &Scalar) -> GradedOperator {
        let mut op = GradedOperator {
            terms: self
                .terms
                .iter()
                .map(|(k, w)| (k.mul_ref(c), w.clone()))
                .collect(),
            parity: self.parity,
        };
        op.normalize();
        op
    }

    pub fn add(&self, rhs: &GradedOperator) -> Result<GradedOperator> {
        let one = Scalar::one(Ctx::Pqc);
        GradedOperator::lin_comb(&[(one.clone(), self), (one, rhs)])
    }

    pub fn sub(&self, rhs: &GradedOperator) -> Result<GradedOperator> {
        GradedOperator::lin_comb(&[
            (Scalar::one(Ctx::Pqc), self),
            (Scalar::from_int(Ctx::Pqc, -1), rhs),
        ])
    }

    /// Apply to an element; words act right-to-left.
    pub fn apply(&self, d: &Deformation, e: &SuperElement) -> Result<SuperElement> {
        let mut out = SuperElement::zero();
        for (c, w) in &self.terms {
            let mut cur = e.clone();
            for prim in w.iter().rev() {
                cur = prim.apply(d, &cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            out = out.add(&cur.scale(c));
        }
        Ok(out)
    }

    /// Exact agreement with `other` on all basis elements t^n and
    /// theta t^n for |n| <= window.
    pub fn equal_on_window(
        &self,
        d: &Deformation,
        other: &GradedOperator,
        window: i64,
    ) -> Result<bool> {
        Ok(self.first_window_difference(d, other, window)?.is_none())
    }

    /// First basis element where the two operators disagree, with both
    /// images; None when they agree on the whole window.
    pub fn first_window_difference(
        &self,
        d: &Deformation,
        other: &GradedOperator,
        window: i64,
    ) -> Result<Option<WindowDiff>> {
        for n in -window..=window {
            for odd in [false, true] {
                let basis = if odd {
                    SuperElement::theta_t_pow(n)
                } else {
                    SuperElement::t_pow(n)
                };
                let lhs = self.apply(d, &basis)?;
                let rhs = other.apply(d, &basis)?;
                if lhs.sub(&rhs) != SuperElement::zero() {
                    return Ok(Some(WindowDiff {
                        basis_exponent: n,
                        basis_odd: odd,
                        lhs,
                        rhs,
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_zero_on_window(&self, d: &Deformation, window: i64) -> Result<bool> {
        self.equal_on_window(d, &GradedOperator::zero(self.parity), window)
    }

    /// Render the action on a window of basis elements, one line each.
    pub fn action_table(&self, d: &Deformation, window: i64) -> Result<String> {
        let mut lines = Vec::new();
        for n in -window..=window {
            let basis = SuperElement::t_pow(n);
            let img = self.apply(d, &basis)?;
            lines.push(format!("t^{n} -> {img}"));
        }
        for n in -window..=window {
            let basis = SuperElement::theta_t_pow(n);
            let img = self.apply(d, &basis)?;
            lines.push(format!("theta t^{n} -> {img}"));
        }
        Ok(lines.join("\n"))
    }
}

/// A basis mismatch between two operators.
#[derive(Debug, Clone)]
pub struct WindowDiff {
    pub basis_exponent: i64,
    pub basis_odd: bool,
    pub lhs: SuperElement,
    pub rhs: SuperElement,
}

impl fmt::Display for WindowDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = if self.basis_odd {
            format!("theta t^{}", self.basis_exponent)
        } else {
            format!("t^{}", self.basis_exponent)
        };
        write!(f, "on {basis}: lhs = {}, rhs = {}", self.lhs, self.rhs)
    }
}

/// An operator together with a central scalar; the central component
/// commutes with everything by construction.
#[derive(Debug, Clone)]
pub struct ExtendedOperator {
    pub op: GradedOperator,
    pub central: Scalar,
}

impl ExtendedOperator {
    pub fn new(op: GradedOperator, central: Scalar) -> ExtendedOperator {
        ExtendedOperator { op, central }
    }

    pub fn plain(op: GradedOperator) -> ExtendedOperator {
        ExtendedOperator {
            op,
            central: Scalar::zero(Ctx::Pqc),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::preset;

    fn js() -> Deformation {
        preset("jagannathan-srinivasa").unwrap()
    }

    #[test]
    fn generator_actions() {
        let d = js();
        // l_1 kills t^0
        let l1 = GradedOperator::l_op(1);
        assert!(l1.apply(&d, &SuperElement::t_pow(0)).unwrap().is_zero());
        // l_0 t^2 = -[2] t^2 = -(p + q) t^2
        let l0 = GradedOperator::l_op(0);
        let img = l0.apply(&d, &SuperElement::t_pow(2)).unwrap();
        let expect = SuperElement::t_pow(2)
            .scale(&d.bracket_number(2).unwrap())
            .neg();
        assert_eq!(img, expect);
        // l_2 theta = -([0] + phi^0) theta t^2 = -theta t^2
        let l2 = GradedOperator::l_op(2);
        let img = l2.apply(&d, &SuperElement::theta_t_pow(0)).unwrap();
        assert_eq!(img, SuperElement::theta_t_pow(2).neg());
        // G_1 t^1 = -[1] theta t^2 = -theta t^2
        let g1 = GradedOperator::g_op(1);
        let img = g1.apply(&d, &SuperElement::t_pow(1)).unwrap();
        assert_eq!(img, SuperElement::theta_t_pow(2).neg());
        // G_m annihilates the odd part
        for m in -4..=4 {
            for n in -4..=4 {
                let g = GradedOperator::g_op(m);
                assert!(g
                    .apply(&d, &SuperElement::theta_t_pow(n))
                    .unwrap()
                    .is_zero());
            }
        }
        assert!(GradedOperator::g_op(0)
            .apply(&d, &SuperElement::t_pow(0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn composition() {
        let d = js();
        let id = GradedOperator::identity();
        let l1 = GradedOperator::l_op(1);
        assert!(id.compose(&l1).equal_on_window(&d, &l1, 4).unwrap());
        // two-step action oracle: l_1 l_0 t^1 = [1]^2 t^2 = t^2
        let two = GradedOperator::l_op(1).compose(&GradedOperator::l_op(0));
        let img = two.apply(&d, &SuperElement::t_pow(1)).unwrap();
        assert_eq!(img, SuperElement::t_pow(2));
        // G G = 0 on the window
        let gg = GradedOperator::g_op(2).compose(&GradedOperator::g_op(-1));
        assert!(gg.is_zero_on_window(&d, 4).unwrap());
        assert!(GradedOperator::zero(0)
            .equal_on_window(&d, &GradedOperator::g_op(0).compose(&GradedOperator::g_op(0)), 4)
            .unwrap());
    }

    #[test]
    fn compose_is_associative_on_window() {
        let d = js();
        let a = GradedOperator::l_op(1);
        let b = GradedOperator::g_op(0);
        let c = GradedOperator::l_op(-2);
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        assert!(left.equal_on_window(&d, &right, 5).unwrap());
    }

    #[test]
    fn linear_combinations() {
        let d = js();
        let l1 = GradedOperator::l_op(1);
        let one = Scalar::one(Ctx::Pqc);
        let minus = Scalar::from_int(Ctx::Pqc, -1);
        let z = GradedOperator::lin_comb(&[(one.clone(), &l1), (minus, &l1)]).unwrap();
        assert!(z.is_structurally_zero());
        let z2 = GradedOperator::lin_comb(&[(Scalar::zero(Ctx::Pqc), &l1)]).unwrap();
        assert!(z2.is_structurally_zero());
        let mixed = GradedOperator::lin_comb(&[
            (one.clone(), &GradedOperator::l_op(0)),
            (one, &GradedOperator::g_op(0)),
        ]);
        assert!(matches!(mixed, Err(Error::MixedParity)));
        let _ = d;
    }

    #[test]
    fn parity_bookkeeping() {
        assert_eq!(GradedOperator::l_op(3).parity(), 0);
        assert_eq!(GradedOperator::g_op(3).parity(), 1);
        let d = js();
        // parity-1 operator sends even basis to odd output
        let g = GradedOperator::g_op(2);
        let img = g.apply(&d, &SuperElement::t_pow(1)).unwrap();
        assert_eq!(img.parity(), Some(1));
    }

    #[test]
    fn window_difference_reporting() {
        let d = js();
        let l1 = GradedOperator::l_op(1);
        let l2 = GradedOperator::l_op(2);
        let diff = l1.first_window_difference(&d, &l2, 3).unwrap().unwrap();
        assert!(!l1.equal_on_window(&d, &l2, 3).unwrap());
        // they differ on some basis element; the report carries both images
        assert_ne!(diff.lhs, diff.rhs);
    }

    #[test]
    fn single_monomial_outputs() {
        // every word maps a basis element to a scalar multiple of a basis
        // element: weighted shifts only
        let d = js();
        let word = GradedOperator::from_word(
            Scalar::one(Ctx::Pqc),
            vec![Prim::Sigma, Prim::MulT(2), Prim::DT, Prim::DTheta],
        );
        for n in -3..=3 {
            let img = word.apply(&d, &SuperElement::theta_t_pow(n)).unwrap();
            let count = img.even_terms().count() + img.odd_terms().count();
            assert!(count <= 1);
        }
    }
}
