//! Natural extensions `(σ, x, y)` and their floating form `(σ, v, w)`.
//!
//! A forward step on the primal side is paired with the inverse of its dual
//! partner on `Iσ`:
//!
//! | primal | dual |
//! |---|---|
//! | `rb_{αβ}` | `(rb_{βα})⁻¹` |
//! | `re_{αβ}` | `(lb_{αβ})⁻¹` |
//! | `lb_{αβ}` | `(re_{αβ})⁻¹` |
//! | `le_{αβ}` | `(le_{βα})⁻¹` |

use crate::error::{IreError, Result, Side};
use crate::induction::{
    apply_step, apply_step_lengths, check_positive_step, dual_partner, invert_step,
    invert_step_lengths, InductionStep,
};
use crate::rational::Rational;
use crate::realdata::{check_lengths_on, lengths_from_endpoints_on, Endpoints, Lengths};
use crate::scheme::Scheme;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalExtension {
    pub scheme: Scheme,
    pub x: Endpoints,
    pub y: Endpoints,
    pub v: Lengths,
    pub w: Lengths,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloatingExtension {
    pub scheme: Scheme,
    pub v: Lengths,
    pub w: Lengths,
}

impl NaturalExtension {
    pub fn dual_scheme(&self) -> Scheme {
        self.scheme.dual()
    }

    pub fn floating(&self) -> FloatingExtension {
        FloatingExtension {
            scheme: self.scheme.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
        }
    }

    pub fn area(&self) -> Rational {
        dot(&self.v, &self.w)
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && self.w.is_positive()
    }
}

impl FloatingExtension {
    pub fn area(&self) -> Rational {
        dot(&self.v, &self.w)
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && self.w.is_positive()
    }
}

/// `S = v·w`
pub fn area(v: &Lengths, w: &Lengths) -> Rational {
    dot(v, w)
}

fn dot(v: &Lengths, w: &Lengths) -> Rational {
    v.0.iter().zip(&w.0).map(|(a, b)| a * b).sum()
}

/// Validates `x ∈ X_σ` and `y ∈ X_{Iσ}`; errors name the failing side.
pub fn make_extension(s: &Scheme, x: Endpoints, y: Endpoints) -> Result<NaturalExtension> {
    let v = lengths_from_endpoints_on(s, &x, Side::Primal)?;
    let w = lengths_from_endpoints_on(&s.dual(), &y, Side::Dual)?;
    Ok(NaturalExtension {
        scheme: s.clone(),
        x,
        y,
        v,
        w,
    })
}

pub fn make_floating_extension(s: &Scheme, v: Lengths, w: Lengths) -> Result<FloatingExtension> {
    check_lengths_on(s, &v, Side::Primal)?;
    check_lengths_on(&s.dual(), &w, Side::Dual)?;
    Ok(FloatingExtension {
        scheme: s.clone(),
        v,
        w,
    })
}

fn consistent(primal: &Scheme, dual: &Scheme) -> Result<()> {
    if primal.dual() != *dual {
        return Err(IreError::InternalInvariantViolation(format!(
            "dual side {dual} is not the dual of {primal}"
        )));
    }
    Ok(())
}

pub fn apply_step_extension(
    e: &NaturalExtension,
    step: &InductionStep,
) -> Result<NaturalExtension> {
    let (s2, x2) = apply_step(&e.scheme, &e.x, step)?;
    let (d2, y2) = invert_step(&e.scheme.dual(), &e.y, &dual_partner(step))?;
    consistent(&s2, &d2)?;
    make_extension(&s2, x2, y2)
}

/// Undoes [`apply_step_extension`] for the same step.
pub fn invert_step_extension(
    e: &NaturalExtension,
    step: &InductionStep,
) -> Result<NaturalExtension> {
    let (s0, x0) = invert_step(&e.scheme, &e.x, step)?;
    let (d0, y0) = apply_step(&e.scheme.dual(), &e.y, &dual_partner(step))?;
    consistent(&s0, &d0)?;
    make_extension(&s0, x0, y0)
}

pub fn apply_step_floating(
    e: &FloatingExtension,
    step: &InductionStep,
) -> Result<FloatingExtension> {
    let (s2, v2) = apply_step_lengths(&e.scheme, &e.v, step)?;
    let (d2, w2) = invert_step_lengths(&e.scheme.dual(), &e.w, &dual_partner(step))?;
    consistent(&s2, &d2)?;
    make_floating_extension(&s2, v2, w2)
}

pub fn invert_step_floating(
    e: &FloatingExtension,
    step: &InductionStep,
) -> Result<FloatingExtension> {
    let (s0, v0) = invert_step_lengths(&e.scheme, &e.v, step)?;
    let (d0, w0) = apply_step_lengths(&e.scheme.dual(), &e.w, &dual_partner(step))?;
    consistent(&s0, &d0)?;
    make_floating_extension(&s0, v0, w0)
}

/// As [`apply_step_floating`], refusing ties and steps that lose positivity.
pub fn apply_positive_step_floating(
    e: &FloatingExtension,
    step: &InductionStep,
) -> Result<FloatingExtension> {
    check_positive_step(&e.scheme, &e.v, step)?;
    apply_step_floating(e, step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, zero};
    use crate::realdata::{default_anchors, endpoints_from_lengths};
    use crate::text::parse_scheme;

    fn s0() -> Scheme {
        parse_scheme("(a.b b.b g.b d.b a.e b.e g.e d.e)").unwrap()
    }

    fn ext(s: &Scheme, v: &[i64], w: &[i64]) -> NaturalExtension {
        let x = endpoints_from_lengths(s, &Lengths::from_ints(v), &default_anchors(s)).unwrap();
        let dual = s.dual();
        let y =
            endpoints_from_lengths(&dual, &Lengths::from_ints(w), &default_anchors(&dual)).unwrap();
        make_extension(s, x, y).unwrap()
    }

    #[test]
    fn rb_on_s0_extension() {
        // letters a, b, d, g
        let e = ext(&s0(), &[2, 3, 11, 5], &[1, 1, 1, 1]);
        assert_eq!(e.area(), int(21));
        let st: InductionStep = "rb:d,a".parse().unwrap();
        let e2 = apply_step_extension(&e, &st).unwrap();
        assert_eq!(e2.v, Lengths::from_ints(&[2, 3, 9, 5]));
        assert_eq!(e2.w, Lengths::from_ints(&[2, 1, 1, 1]));
        assert_eq!(e2.area(), int(21));
        assert_eq!(invert_step_extension(&e2, &st).unwrap(), e);

        let f2 = apply_step_floating(&e.floating(), &st).unwrap();
        assert_eq!(f2, e2.floating());
        assert_eq!(invert_step_floating(&f2, &st).unwrap(), e.floating());
    }

    #[test]
    fn validation_names_the_side() {
        let s = s0();
        let e = ext(&s, &[1, 1, 1, 1], &[1, 1, 1, 1]);
        assert_eq!(e.area(), int(4));
        let mut bad = e.y.clone();
        bad.0[0] += int(1);
        assert!(matches!(
            make_extension(&s, e.x.clone(), bad),
            Err(IreError::NotInEndpointSpace {
                side: Side::Dual,
                ..
            })
        ));
        let s3 = parse_scheme("(a.b a.e)(b.b b.e)").unwrap();
        let x = Endpoints(vec![int(0), int(3), int(5), int(6)]);
        let y = Endpoints(vec![int(2), int(2), int(-1), int(4)]);
        assert!(make_extension(&s3, x, y).is_ok());
        assert_eq!(
            area(&Lengths(vec![zero(); 2]), &Lengths::from_ints(&[3, 4])),
            zero()
        );
    }
}
