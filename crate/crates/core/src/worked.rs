//! Built-in worked dataset: the four-letter scheme whose primal is a single
//! untwisted interval and whose dual carries two twists.

use crate::extension::{make_extension, NaturalExtension};
use crate::gluing::BranchRule;
use crate::rational::int;
use crate::realdata::{endpoints_from_lengths, Lengths};
use crate::scheme::Scheme;
use crate::text::parse_scheme;

pub const S0: &str = "(a.b b.b g.b d.b a.e b.e g.e d.e)";
pub const S1: &str = "(a.b b.b a.e b.e)";
pub const S2: &str = "(a.b a.e)";

pub fn s0() -> Scheme {
    parse_scheme(S0).expect("built-in scheme parses")
}

/// `S0` with lengths `v` (anchored at `x_{a.b} = 0`) and dual lengths `w`
/// (anchored at `y_{d.b} = 0`), both given in alphabet order `a, b, d, g`.
pub fn s0_extension(v: &[i64], w: &[i64]) -> NaturalExtension {
    let s = s0();
    let dual = s.dual();
    let x = endpoints_from_lengths(
        &s,
        &Lengths::from_ints(v),
        &[(s.ext("a.b").unwrap(), int(0))],
    )
    .expect("v lies in V");
    let y = endpoints_from_lengths(
        &dual,
        &Lengths::from_ints(w),
        &[(dual.ext("d.b").unwrap(), int(0))],
    )
    .expect("w lies in the dual V");
    make_extension(&s, x, y).expect("endpoints are allowed")
}

/// `v = (a2, b3, g5, d11)`, `w = (a2, b1, g3, d5)`, giving
/// `y_db < y_bb < y_ge < y_ae < y_ab < y_gb < y_be < y_de`.
pub fn worked_example() -> NaturalExtension {
    s0_extension(&[2, 3, 11, 5], &[2, 1, 5, 3])
}

/// Dual lengths within the zippered-rectangle constraints
/// `w_a ≤ w_b ≤ w_a + w_g`, `w_d ≤ w_g ≤ w_d + w_b`, with both branch points
/// at `y_{a.b}`.
pub fn coinciding_branch_example() -> (NaturalExtension, BranchRule) {
    let e = s0_extension(&[2, 3, 11, 5], &[1, 2, 2, 3]);
    let yab = e.y.at(e.scheme.dual().ext("a.b").unwrap()).clone();
    (e, BranchRule::Explicit(vec![yab.clone(), yab]))
}
