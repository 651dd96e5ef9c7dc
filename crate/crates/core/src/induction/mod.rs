//! The four elementary induction steps on schemes, endpoints and lengths.

pub mod class;
pub mod oracle;

pub use class::{rauzy_class, rauzy_class_with, RauzyClass};

use std::fmt;
use std::str::FromStr;

use crate::error::{IreError, Result};
use crate::realdata::{check_lengths, lengths_from_endpoints, Endpoints, Lengths};
use crate::scheme::{Ext, Label, Scheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    Rb,
    Re,
    Lb,
    Le,
}

impl StepKind {
    pub const ALL: [StepKind; 4] = [StepKind::Rb, StepKind::Re, StepKind::Lb, StepKind::Le];

    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Rb => "rb",
            StepKind::Re => "re",
            StepKind::Lb => "lb",
            StepKind::Le => "le",
        }
    }

    /// Whether the step is defined at a turn back (`σ(αb) = βe`).
    pub fn at_turn_back(self) -> bool {
        matches!(self, StepKind::Rb | StepKind::Re)
    }

    /// Whether the step subtracts `v_β` from `v_α`; otherwise `v_α` from `v_β`.
    pub fn crops_alpha(self) -> bool {
        matches!(self, StepKind::Rb | StepKind::Lb)
    }
}

impl FromStr for StepKind {
    type Err = IreError;

    fn from_str(s: &str) -> Result<StepKind> {
        match s {
            "rb" => Ok(StepKind::Rb),
            "re" => Ok(StepKind::Re),
            "lb" => Ok(StepKind::Lb),
            "le" => Ok(StepKind::Le),
            _ => Err(IreError::Parse {
                position: 0,
                message: format!("unknown step kind {s:?}"),
            }),
        }
    }
}

/// `Π^{kind}_{αβ}` with `α ≠ β`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InductionStep {
    kind: StepKind,
    alpha: Label,
    beta: Label,
}

impl InductionStep {
    pub fn new(kind: StepKind, alpha: Label, beta: Label) -> Result<InductionStep> {
        if alpha == beta {
            return Err(IreError::RepeatedStepLabel(alpha.to_string()));
        }
        Ok(InductionStep { kind, alpha, beta })
    }

    pub(crate) fn from_letters(s: &Scheme, kind: StepKind, a: usize, b: usize) -> InductionStep {
        InductionStep::new(kind, s.label(a).clone(), s.label(b).clone()).expect("distinct letters")
    }

    pub fn kind(&self) -> StepKind {
        self.kind
    }

    pub fn alpha(&self) -> &Label {
        &self.alpha
    }

    pub fn beta(&self) -> &Label {
        &self.beta
    }

    fn letters(&self, s: &Scheme) -> Result<(usize, usize)> {
        Ok((
            s.letter(self.alpha.as_str())?,
            s.letter(self.beta.as_str())?,
        ))
    }
}

impl fmt::Display for InductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.kind.as_str(), self.alpha, self.beta)
    }
}

/// Parses literals such as `rb:a,b`.
impl FromStr for InductionStep {
    type Err = IreError;

    fn from_str(s: &str) -> Result<InductionStep> {
        let bad = |m: &str| IreError::Parse {
            position: 0,
            message: format!("{m} in step literal {s:?}"),
        };
        let (kind, labels) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let (a, b) = labels.split_once(',').ok_or_else(|| bad("missing ','"))?;
        InductionStep::new(kind.parse()?, Label::new(a.trim())?, Label::new(b.trim())?)
    }
}

fn not_applicable(step: &InductionStep, reason: String) -> IreError {
    IreError::StepNotApplicable {
        step: step.to_string(),
        reason,
    }
}

/// Checks the turn condition of `step` on `s` and returns the letters `(α, β)`.
pub fn check_applicable(s: &Scheme, step: &InductionStep) -> Result<(usize, usize)> {
    let (a, b) = step.letters(s)?;
    let ok = if step.kind.at_turn_back() {
        s.image(Ext::b(a)) == Ext::e(b)
    } else {
        s.image(Ext::e(b)) == Ext::b(a)
    };
    if !ok {
        let reason = if step.kind.at_turn_back() {
            format!(
                "σ({}.b) is {}, not {}.e",
                step.alpha,
                s.ext_name(s.image(Ext::b(a))),
                step.beta
            )
        } else {
            format!(
                "σ({}.e) is {}, not {}.b",
                step.beta,
                s.ext_name(s.image(Ext::e(b))),
                step.alpha
            )
        };
        return Err(not_applicable(step, reason));
    }
    Ok((a, b))
}

/// Condition characterizing the image of `step`; returns the letters `(α, β)`.
pub fn check_in_image(s: &Scheme, step: &InductionStep) -> Result<(usize, usize)> {
    let (a, b) = step.letters(s)?;
    let (from, to) = match step.kind {
        StepKind::Rb => (Ext::e(b), Ext::e(a)),
        StepKind::Re => (Ext::b(b), Ext::b(a)),
        StepKind::Lb => (Ext::e(a), Ext::e(b)),
        StepKind::Le => (Ext::b(a), Ext::b(b)),
    };
    if s.image(from) != to {
        return Err(IreError::NotInImage {
            step: step.to_string(),
            reason: format!(
                "σ({}) is {}, not {}",
                s.ext_name(from),
                s.ext_name(s.image(from)),
                s.ext_name(to)
            ),
        });
    }
    Ok((a, b))
}

/// Every step whose turn condition holds, ordered by kind then labels.
pub fn applicable_steps(s: &Scheme) -> Vec<InductionStep> {
    let mut out = Vec::new();
    for a in 0..s.d() {
        let img = s.image(Ext::b(a));
        if !img.is_b() && img.letter() != a {
            out.push(InductionStep::from_letters(
                s,
                StepKind::Rb,
                a,
                img.letter(),
            ));
            out.push(InductionStep::from_letters(
                s,
                StepKind::Re,
                a,
                img.letter(),
            ));
        }
    }
    for b in 0..s.d() {
        let img = s.image(Ext::e(b));
        if img.is_b() && img.letter() != b {
            out.push(InductionStep::from_letters(
                s,
                StepKind::Lb,
                img.letter(),
                b,
            ));
            out.push(InductionStep::from_letters(
                s,
                StepKind::Le,
                img.letter(),
                b,
            ));
        }
    }
    out.sort();
    out
}

/// Every step for which `s` lies in the image, ordered by kind then labels.
pub fn image_steps(s: &Scheme) -> Vec<InductionStep> {
    let mut out = Vec::new();
    for e in s.exts() {
        let img = s.image(e);
        if e.marker() != img.marker() || e.letter() == img.letter() {
            continue;
        }
        let (from, to) = (e.letter(), img.letter());
        if e.is_b() {
            out.push(InductionStep::from_letters(s, StepKind::Re, to, from));
            out.push(InductionStep::from_letters(s, StepKind::Le, from, to));
        } else {
            out.push(InductionStep::from_letters(s, StepKind::Rb, to, from));
            out.push(InductionStep::from_letters(s, StepKind::Lb, from, to));
        }
    }
    out.sort();
    out
}

/// Steps that keep every length positive, and label pairs `(α, β)` with `v_α = v_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSteps {
    pub steps: Vec<InductionStep>,
    pub ties: Vec<(Label, Label)>,
}

pub fn applicable_positive_steps(s: &Scheme, v: &Lengths) -> Result<PositiveSteps> {
    check_lengths(s, v)?;
    if !v.is_positive() {
        return Err(IreError::NotPositive {
            side: crate::error::Side::Primal,
        });
    }
    let mut steps = Vec::new();
    let mut ties = Vec::new();
    for step in applicable_steps(s) {
        match check_positive_step(s, v, &step) {
            Ok(()) => steps.push(step),
            Err(IreError::TieDetected { .. }) => {
                let pair = (step.alpha.clone(), step.beta.clone());
                if !ties.contains(&pair) {
                    ties.push(pair);
                }
            }
            Err(_) => {}
        }
    }
    Ok(PositiveSteps { steps, ties })
}

/// Fails with `TieDetected` when `v_α = v_β` and with `PositivityLost` when the
/// step would subtract the longer length from the shorter.
pub fn check_positive_step(s: &Scheme, v: &Lengths, step: &InductionStep) -> Result<()> {
    let (a, b) = check_applicable(s, step)?;
    let (va, vb) = (v.at(a), v.at(b));
    if va == vb {
        return Err(IreError::TieDetected {
            alpha: step.alpha.to_string(),
            beta: step.beta.to_string(),
        });
    }
    let (cropped, other) = if step.kind.crops_alpha() {
        (va, vb)
    } else {
        (vb, va)
    };
    if cropped < other {
        let label = if step.kind.crops_alpha() {
            &step.alpha
        } else {
            &step.beta
        };
        return Err(IreError::PositivityLost {
            step: step.to_string(),
            label: label.to_string(),
        });
    }
    Ok(())
}

/// Moves `z` out of its cycle and reinserts it next to `target`.
struct Relocation {
    sigma: Vec<Ext>,
}

impl Relocation {
    fn new(s: &Scheme) -> Self {
        Relocation {
            sigma: s.images().to_vec(),
        }
    }

    fn pre(&self, t: Ext) -> Ext {
        Ext::from_index(self.sigma.iter().position(|&e| e == t).expect("bijection"))
    }

    fn remove(&mut self, z: Ext) {
        let p = self.pre(z);
        self.sigma[p.index()] = self.sigma[z.index()];
        self.sigma[z.index()] = z;
    }

    fn before(mut self, z: Ext, target: Ext) -> Vec<Ext> {
        self.remove(z);
        let q = self.pre(target);
        self.sigma[q.index()] = z;
        self.sigma[z.index()] = target;
        self.sigma
    }

    fn after(mut self, z: Ext, target: Ext) -> Vec<Ext> {
        self.remove(z);
        self.sigma[z.index()] = self.sigma[target.index()];
        self.sigma[target.index()] = z;
        self.sigma
    }
}

fn rebuild(s: &Scheme, sigma: Vec<Ext>) -> Scheme {
    Scheme::from_images(s.alphabet().clone(), sigma).expect("relocation keeps a bijection")
}

pub fn apply_step_scheme(s: &Scheme, step: &InductionStep) -> Result<Scheme> {
    let (a, b) = check_applicable(s, step)?;
    let r = Relocation::new(s);
    let sigma = match step.kind {
        StepKind::Rb => r.before(Ext::e(b), Ext::e(a)),
        StepKind::Re => r.after(Ext::b(a), Ext::b(b)),
        StepKind::Lb => r.after(Ext::e(b), Ext::e(a)),
        StepKind::Le => r.before(Ext::b(a), Ext::b(b)),
    };
    Ok(rebuild(s, sigma))
}

pub fn invert_step_scheme(s_prime: &Scheme, step: &InductionStep) -> Result<Scheme> {
    let (a, b) = check_in_image(s_prime, step)?;
    let r = Relocation::new(s_prime);
    let sigma = match step.kind {
        StepKind::Rb => r.after(Ext::e(b), Ext::b(a)),
        StepKind::Re => r.before(Ext::b(a), Ext::e(b)),
        StepKind::Lb => r.before(Ext::e(b), Ext::b(a)),
        StepKind::Le => r.after(Ext::b(a), Ext::e(b)),
    };
    Ok(rebuild(s_prime, sigma))
}

fn step_lengths(v: &Lengths, kind: StepKind, a: usize, b: usize, forward: bool) -> Lengths {
    let mut out = v.clone();
    let (target, by) = if kind.crops_alpha() { (a, b) } else { (b, a) };
    if forward {
        out.0[target] = &v.0[target] - &v.0[by];
    } else {
        out.0[target] = &v.0[target] + &v.0[by];
    }
    out
}

pub fn apply_step_lengths(
    s: &Scheme,
    v: &Lengths,
    step: &InductionStep,
) -> Result<(Scheme, Lengths)> {
    check_lengths(s, v)?;
    let s2 = apply_step_scheme(s, step)?;
    let (a, b) = step.letters(s)?;
    Ok((s2, step_lengths(v, step.kind, a, b, true)))
}

pub fn invert_step_lengths(
    s_prime: &Scheme,
    v_prime: &Lengths,
    step: &InductionStep,
) -> Result<(Scheme, Lengths)> {
    check_lengths(s_prime, v_prime)?;
    let s = invert_step_scheme(s_prime, step)?;
    let (a, b) = step.letters(s_prime)?;
    Ok((s, step_lengths(v_prime, step.kind, a, b, false)))
}

/// Requires `check_positive_step` to pass before applying the step to lengths.
pub fn apply_positive_step_lengths(
    s: &Scheme,
    v: &Lengths,
    step: &InductionStep,
) -> Result<(Scheme, Lengths)> {
    check_lengths(s, v)?;
    check_positive_step(s, v, step)?;
    apply_step_lengths(s, v, step)
}

pub fn apply_step(s: &Scheme, x: &Endpoints, step: &InductionStep) -> Result<(Scheme, Endpoints)> {
    let v = lengths_from_endpoints(s, x)?;
    let s2 = apply_step_scheme(s, step)?;
    let (a, b) = step.letters(s)?;
    let (ab, ae, bb, be) = (Ext::b(a), Ext::e(a), Ext::b(b), Ext::e(b));
    let mut x2 = x.clone();
    match step.kind {
        StepKind::Rb => {
            x2.set(be, x.at(ae).clone());
            x2.set(ae, x.at(ae) - v.at(b));
        }
        StepKind::Re => {
            x2.set(be, x.at(ab).clone());
            x2.set(ab, x.at(s.image(bb)) - v.at(a));
        }
        StepKind::Lb => {
            x2.set(ab, x.at(be).clone());
            x2.set(be, x.at(s.image(ae)) + v.at(b));
        }
        StepKind::Le => {
            x2.set(ab, x.at(bb).clone());
            x2.set(bb, x.at(bb) + v.at(a));
        }
    }
    Ok((s2, x2))
}

pub fn invert_step(
    s_prime: &Scheme,
    x_prime: &Endpoints,
    step: &InductionStep,
) -> Result<(Scheme, Endpoints)> {
    let v = lengths_from_endpoints(s_prime, x_prime)?;
    let s = invert_step_scheme(s_prime, step)?;
    let (a, b) = step.letters(s_prime)?;
    let (ab, ae, bb, be) = (Ext::b(a), Ext::e(a), Ext::b(b), Ext::e(b));
    let sum = v.at(a) + v.at(b);
    let mut x = x_prime.clone();
    match step.kind {
        StepKind::Rb => {
            x.set(ae, x_prime.at(be).clone());
            x.set(be, x_prime.at(ab) + &sum);
        }
        StepKind::Re => {
            x.set(ab, x_prime.at(be).clone());
            x.set(be, x_prime.at(be) + v.at(a));
        }
        StepKind::Lb => {
            x.set(be, x_prime.at(ab).clone());
            x.set(ab, x_prime.at(ab) - v.at(b));
        }
        StepKind::Le => {
            x.set(bb, x_prime.at(ab).clone());
            x.set(ab, x_prime.at(be) - &sum);
        }
    }
    Ok((s, x))
}

/// The step conjugate to the inverse of `step` under duality:
/// `(Π)^{-1} = I ∘ partner(Π) ∘ I`.
pub fn dual_partner(step: &InductionStep) -> InductionStep {
    let (kind, swap) = match step.kind {
        StepKind::Rb => (StepKind::Rb, true),
        StepKind::Re => (StepKind::Lb, false),
        StepKind::Lb => (StepKind::Re, false),
        StepKind::Le => (StepKind::Le, true),
    };
    let (a, b) = if swap {
        (step.beta.clone(), step.alpha.clone())
    } else {
        (step.alpha.clone(), step.beta.clone())
    };
    InductionStep {
        kind,
        alpha: a,
        beta: b,
    }
}
