//! Bracket-descriptor parsing and rendering for the command-line `eval`
//! front end. Descriptors look like "[l 1, l 0]", "[G 1, G 2]" or
//! "[l 2, l 0, G -1]": an l/G kind tag followed by an integer index.

use crate::brackets::{
    central_term_2n, chi_weight, n_bracket_bosonic, n_bracket_super, tau_weight,
    weighted_commutator, Gen, SuperPrefactor,
};
use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::operators::GradedOperator;
use crate::scalar::Scalar;

/// Parse a bracket descriptor into its generator list.
pub fn parse_bracket(expr: &str) -> Result<Vec<Gen>> {
    let bytes = expr.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos >= bytes.len() || bytes[pos] != b'[' {
        return Err(err(pos, "expected '['"));
    }
    pos += 1;
    let mut gens = Vec::new();
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(err(pos, "unterminated bracket"));
        }
        let kind = match bytes[pos] {
            b'l' | b'L' => 0u8,
            b'g' | b'G' => 1u8,
            _ => return Err(err(pos, "expected generator kind 'l' or 'G'")),
        };
        pos += 1;
        skip_ws(&mut pos);
        let start = pos;
        if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
            pos += 1;
        }
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let index: i64 = expr[start..pos]
            .parse()
            .map_err(|_| err(start, "expected an integer index"))?;
        gens.push(if kind == 0 { Gen::L(index) } else { Gen::G(index) });
        skip_ws(&mut pos);
        match bytes.get(pos) {
            Some(b',') => {
                pos += 1;
            }
            Some(b']') => {
                pos += 1;
                break;
            }
            _ => return Err(err(pos, "expected ',' or ']'")),
        }
    }
    skip_ws(&mut pos);
    if pos != bytes.len() {
        return Err(err(pos, "trailing input after ']'"));
    }
    if gens.is_empty() {
        return Err(err(0, "empty bracket"));
    }
    Ok(gens)
}

/// Evaluate a parsed bracket against a deformation: build the resulting
/// operator, render its action on the basis window, and append the
/// central scalar when one applies.
pub fn eval_bracket(d: &Deformation, gens: &[Gen], window: i64) -> Result<String> {
    let mut out = String::new();
    let (op, central): (GradedOperator, Option<Scalar>) = match gens {
        [a, b] => {
            let (op, note) = binary_bracket(d, *a, *b)?;
            out.push_str(&note);
            let central = binary_central(d, *a, *b)?;
            (op, central)
        }
        _ => {
            if gens.len() > crate::brackets::MAX_ARITY {
                return Err(Error::UnsupportedArity(gens.len()));
            }
            let all_l = gens.iter().all(|g| matches!(g, Gen::L(_)));
            let super_shape = gens[..gens.len() - 1]
                .iter()
                .all(|g| matches!(g, Gen::L(_)))
                && matches!(gens.last(), Some(Gen::G(_)));
            let ms: Vec<i64> = gens.iter().map(|g| g.index()).collect();
            if all_l {
                let op = n_bracket_bosonic(d, &ms)?;
                let central = if gens.len() % 2 == 0 && d.tau().is_some() {
                    Some(central_term_2n(d, &ms)?)
                } else {
                    None
                };
                out.push_str(&format!(
                    "{}-bracket of bosonic generators (permutation sum)\n",
                    gens.len()
                ));
                (op, central)
            } else if super_shape {
                let op = n_bracket_super(d, &ms, SuperPrefactor::NegativeShift)?;
                out.push_str(&format!(
                    "{}-bracket with one fermionic slot (permutation sum, prefactor {})\n",
                    gens.len(),
                    SuperPrefactor::NegativeShift.label()
                ));
                (op, None)
            } else {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "n-ary brackets take all-l or l...l,G generator patterns".into(),
                });
            }
        }
    };
    out.push_str(&format!("parity: {}\n", op.parity()));
    out.push_str("action on the basis window:\n");
    out.push_str(&op.action_table(d, window)?);
    out.push('\n');
    if let Some(c) = central {
        out.push_str(&format!("central scalar: {c}\n"));
    }
    Ok(out)
}

fn binary_bracket(d: &Deformation, a: Gen, b: Gen) -> Result<(GradedOperator, String)> {
    match (a, b) {
        (Gen::L(m1), Gen::L(m2)) => {
            let w = chi_weight(d, m1, m2)?;
            let note = format!(
                "weighted commutator with chi weights x = {}, y = {}\nclosure coefficient [m1]-[m2] = {}\n",
                w.x,
                w.y,
                &d.bracket_number(m1)? - &d.bracket_number(m2)?
            );
            Ok((
                weighted_commutator(&GradedOperator::l_op(m1), &GradedOperator::l_op(m2), &w),
                note,
            ))
        }
        (Gen::L(m1), Gen::G(m2)) => {
            let w = tau_weight(d, m1, m2)?;
            let note = format!(
                "weighted commutator with tau weights x = {}, y = {}\nclosure coefficient [m1]-[m2+1] = {}\n",
                w.x,
                w.y,
                &d.bracket_number(m1)? - &d.bracket_number(m2 + 1)?
            );
            Ok((
                weighted_commutator(&GradedOperator::l_op(m1), &GradedOperator::g_op(m2), &w),
                note,
            ))
        }
        (Gen::G(m1), Gen::L(m2)) => {
            let w = tau_weight(d, m2, m1)?;
            let inner =
                weighted_commutator(&GradedOperator::l_op(m2), &GradedOperator::g_op(m1), &w);
            Ok((
                inner.scale(&Scalar::from_int(crate::poly::Ctx::Pqc, -1)),
                "negated mixed bracket: [G, l] = -[l, G]\n".to_string(),
            ))
        }
        (Gen::G(m1), Gen::G(m2)) => {
            let anti = GradedOperator::g_op(m1)
                .compose(&GradedOperator::g_op(m2))
                .add(&GradedOperator::g_op(m2).compose(&GradedOperator::g_op(m1)))?;
            Ok((anti, "anticommutator of fermionic generators\n".to_string()))
        }
    }
}

fn binary_central(d: &Deformation, a: Gen, b: Gen) -> Result<Option<Scalar>> {
    if d.tau().is_none() {
        return Ok(None);
    }
    Ok(match (a, b) {
        (Gen::L(m1), Gen::L(m2)) if m1 + m2 == 0 => {
            Some(crate::brackets::binary_central_coefficient(d, m1)?)
        }
        (Gen::L(m1), Gen::G(m2)) if m1 + m2 + 1 == 0 => {
            Some(crate::brackets::binary_central_coefficient(d, m1)?)
        }
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::preset;

    #[test]
    fn parses_descriptors() {
        let gens = parse_bracket("[l 1, l 0]").unwrap();
        assert_eq!(gens, vec![Gen::L(1), Gen::L(0)]);
        let gens = parse_bracket(" [ G -2 , l 3 , G 0 ] ").unwrap();
        assert_eq!(gens, vec![Gen::G(-2), Gen::L(3), Gen::G(0)]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        for bad in ["l 1, l 0", "[x 1]", "[l , l 0]", "[l 1; l 0]", "[l 1, l 0] junk", "[]"] {
            assert!(matches!(parse_bracket(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn renders_binary_bracket() {
        let d = preset("jagannathan-srinivasa").unwrap();
        let gens = parse_bracket("[l 1, l 0]").unwrap();
        let text = eval_bracket(&d, &gens, 2).unwrap();
        assert!(text.contains("chi weights"));
        assert!(text.contains("action on the basis window"));
    }

    #[test]
    fn gg_bracket_renders_zero_action() {
        let d = preset("arik-coon").unwrap();
        let gens = parse_bracket("[G 1, G 2]").unwrap();
        let text = eval_bracket(&d, &gens, 2).unwrap();
        for line in text.lines().filter(|l| l.contains("->")) {
            assert!(line.ends_with("-> 0"), "{line}");
        }
    }

    #[test]
    fn central_scalar_appears_when_gated() {
        let d = preset("jagannathan-srinivasa").unwrap();
        let gens = parse_bracket("[l 2, l -2]").unwrap();
        let text = eval_bracket(&d, &gens, 2).unwrap();
        assert!(text.contains("central scalar:"));
    }
}
