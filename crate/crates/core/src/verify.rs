//! The invariant suite run by `ire verify`.

use crate::error::Result;
use crate::extension::{
    apply_step_extension, apply_step_floating, invert_step_extension, invert_step_floating,
};
use crate::gluing::BranchRule;
use crate::induction::{
    applicable_steps, apply_step, apply_step_scheme, dual_partner, invert_step, invert_step_scheme,
    InductionStep,
};
use crate::io::{analyze, Input};
use crate::linalg::{rank, rank_fraction_free};
use crate::realdata::{delta_matrix, endpoint_space_basis, length_space_basis};
use crate::scheme::Scheme;
use crate::surface::{build_surface, first_return_check};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn push(&mut self, name: impl Into<String>, outcome: Result<bool>) {
        let (ok, detail) = match outcome {
            Ok(ok) => (ok, String::new()),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            name: name.into(),
            ok,
            detail,
        });
    }
}

/// `I(Π(σ)) = (Π*)⁻¹(Iσ)` for the dual partner `Π*` of `Π`.
pub fn duality_conjugacy_holds(s: &Scheme, step: &InductionStep) -> Result<bool> {
    let forward = apply_step_scheme(s, step)?;
    let back = invert_step_scheme(&s.dual(), &dual_partner(step))?;
    Ok(forward.dual() == back)
}

pub fn verify_scheme(s: &Scheme, report: &mut VerifyReport) {
    let d = s.d() as i64;
    let dual = s.dual();
    report.push("analysis report is consistent", analyze(s).map(|_| true));
    report.push(
        "turns back of σ and Iσ sum to d",
        Ok((s.turns().turns_back.len() + dual.turns().turns_back.len()) as i64 == d),
    );
    report.push(
        "T + T* + N + N* = d",
        Ok(
            s.turns().total + dual.turns().total + (s.cycle_count() + dual.cycle_count()) as i64
                == d,
        ),
    );
    report.push(
        "N + N* has the parity of d and twists total is even",
        s.twists_total()
            .map(|t| t % 2 == 0 && ((s.cycle_count() + dual.cycle_count()) as i64 - d) % 2 == 0),
    );
    let p = s.irreducible_components().count();
    report.push("dim X = d + P", {
        let delta = delta_matrix(s);
        let ints: Vec<Vec<i64>> = delta
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|a| a.to_integer().try_into().unwrap_or(i64::MAX))
                    .collect()
            })
            .collect();
        let exact = rank_fraction_free(&ints);
        endpoint_space_basis(s).map(|b| {
            b.dim == s.d() + p
                && 2 * s.d() - exact == b.dim
                && rank(&delta.rows, 2 * s.d()) == exact
        })
    });
    report.push(
        "dim V = d + P - N",
        length_space_basis(s).map(|b| b.dim + s.cycle_count() == s.d() + p),
    );
    report.push("dual is an involution", Ok(dual.dual() == *s));
    report.push(
        "σ and Iσ have the same components",
        Ok(dual.irreducible_components() == s.irreducible_components()),
    );
    for st in applicable_steps(s) {
        report.push(
            format!("{st}: invariants and round trip"),
            apply_step_scheme(s, &st).and_then(|t| {
                Ok(t.cycle_count() == s.cycle_count()
                    && t.irreducible_components() == s.irreducible_components()
                    && t.twists_total()? == s.twists_total()?
                    && invert_step_scheme(&t, &st)? == *s)
            }),
        );
        report.push(
            format!("{st}: duality conjugacy"),
            duality_conjugacy_holds(s, &st),
        );
    }
}

/// Runs every check that applies to the given input.
pub fn verify_input(input: &Input) -> VerifyReport {
    let mut report = VerifyReport::default();
    verify_scheme(input.scheme(), &mut report);
    match input {
        Input::Scheme(_) | Input::Floating(..) => {}
        Input::Ire(s, x) => {
            for st in applicable_steps(s) {
                report.push(
                    format!("{st}: endpoint round trip"),
                    apply_step(s, x, &st).and_then(|(t, x2)| {
                        Ok(invert_step(&t, &x2, &st)? == (s.clone(), x.clone()))
                    }),
                );
            }
        }
        Input::Extension(e) => {
            for st in applicable_steps(&e.scheme) {
                report.push(
                    format!("{st}: area and extension round trip"),
                    apply_step_extension(e, &st).and_then(|e2| {
                        Ok(e2.area() == e.area() && invert_step_extension(&e2, &st)? == *e)
                    }),
                );
            }
            if e.is_positive() {
                report.push(
                    "surface is sound",
                    build_surface(e, &BranchRule::Midpoint, &BranchRule::Midpoint)
                        .and_then(|surf| Ok(first_return_check(&surf, 100, 0)?.ok())),
                );
            }
        }
        Input::FloatingExtension(e) => {
            for st in applicable_steps(&e.scheme) {
                report.push(
                    format!("{st}: area and round trip"),
                    apply_step_floating(e, &st).and_then(|e2| {
                        Ok(e2.area() == e.area() && invert_step_floating(&e2, &st)? == *e)
                    }),
                );
            }
        }
    }
    report
}
