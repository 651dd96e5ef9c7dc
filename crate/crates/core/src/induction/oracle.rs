//! Independent oracles: classical Rauzy–Veech induction on one interval and
//! the four cropping steps on multi-interval IETs, both in two-row form.

use std::fmt;
use std::str::FromStr;

use crate::error::{IreError, Result};
use crate::rational::{zero, Rational};
use crate::realdata::{Endpoints, Lengths};
use crate::scheme::{Ext, Label};
use crate::two_row::TwoRowIet;

use super::{InductionStep, StepKind};

/// Discrete data `(π_b, π_e, k_b, k_e)` with 1-based positions per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Discrete {
    labels: Vec<Label>,
    pi_b: Vec<usize>,
    pi_e: Vec<usize>,
    k_b: Vec<usize>,
    k_e: Vec<usize>,
}

impl Discrete {
    fn of(t: &TwoRowIet) -> Discrete {
        let labels = t.labels();
        let d = labels.len();
        let letter = |l: &Label| labels.binary_search(l).expect("label of t");
        let (mut pi_b, mut pi_e) = (vec![0; d], vec![0; d]);
        let (mut k_b, mut k_e) = (Vec::new(), Vec::new());
        let (mut pos_b, mut pos_e) = (0, 0);
        for (up, lo) in t.brackets() {
            for l in up {
                pos_b += 1;
                pi_b[letter(l)] = pos_b;
            }
            for l in lo {
                pos_e += 1;
                pi_e[letter(l)] = pos_e;
            }
            k_b.push(up.len());
            k_e.push(lo.len());
        }
        Discrete {
            labels,
            pi_b,
            pi_e,
            k_b,
            k_e,
        }
    }

    fn to_two_row(&self) -> Result<TwoRowIet> {
        let d = self.labels.len();
        let mut row_b = vec![String::new(); d];
        let mut row_e = vec![String::new(); d];
        for (i, l) in self.labels.iter().enumerate() {
            row_b[self.pi_b[i] - 1] = l.to_string();
            row_e[self.pi_e[i] - 1] = l.to_string();
        }
        let (mut ib, mut ie) = (0, 0);
        let mut brackets = Vec::new();
        for (kb, ke) in self.k_b.iter().zip(&self.k_e) {
            brackets.push((row_b[ib..ib + kb].to_vec(), row_e[ie..ie + ke].to_vec()));
            ib += kb;
            ie += ke;
        }
        TwoRowIet::new(brackets)
    }

    /// Bracket index (0-based) holding 1-based position `p` of a row with counts `k`.
    fn bracket_of(k: &[usize], p: usize) -> usize {
        let mut end = 0;
        for (s, &ks) in k.iter().enumerate() {
            end += ks;
            if p <= end {
                return s;
            }
        }
        unreachable!("position within the row")
    }

    fn cumulative(k: &[usize], s: usize) -> usize {
        k[..s].iter().sum()
    }
}

/// Classical step on a single-bracket IET; lengths are indexed in sorted label order.
pub fn classical_rv_step(t: &TwoRowIet, v: &Lengths) -> Result<(TwoRowIet, Lengths)> {
    if t.brackets().len() != 1 {
        return Err(IreError::MalformedTwoRow(
            "classical induction needs a single interval".into(),
        ));
    }
    let mut dd = Discrete::of(t);
    let d = dd.labels.len();
    check_len(v, d)?;
    if !v.is_positive() {
        return Err(IreError::NotPositive {
            side: crate::error::Side::Primal,
        });
    }
    let last_b = (0..d).find(|&i| dd.pi_b[i] == d).expect("permutation");
    let last_e = (0..d).find(|&i| dd.pi_e[i] == d).expect("permutation");
    let mut v2 = v.clone();
    if v.at(last_b) == v.at(last_e) {
        return Err(IreError::TieDetected {
            alpha: dd.labels[last_b].to_string(),
            beta: dd.labels[last_e].to_string(),
        });
    }
    if v.at(last_b) < v.at(last_e) {
        let anchor = dd.pi_b[last_e];
        let old = dd.pi_b.clone();
        for a in 0..d {
            if old[a] <= anchor {
                dd.pi_b[a] = old[a];
            } else if old[a] < d {
                dd.pi_b[a] = old[a] + 1;
            }
        }
        dd.pi_b[last_b] = anchor + 1;
        v2.0[last_e] = v.at(last_e) - v.at(last_b);
    } else {
        let anchor = dd.pi_e[last_b];
        let old = dd.pi_e.clone();
        for a in 0..d {
            if old[a] <= anchor {
                dd.pi_e[a] = old[a];
            } else if old[a] < d {
                dd.pi_e[a] = old[a] + 1;
            }
        }
        dd.pi_e[last_e] = anchor + 1;
        v2.0[last_b] = v.at(last_b) - v.at(last_e);
    }
    Ok((dd.to_two_row()?, v2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CropKind {
    RPlus,
    RMinus,
    LPlus,
    LMinus,
}

impl CropKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CropKind::RPlus => "r+",
            CropKind::RMinus => "r-",
            CropKind::LPlus => "l+",
            CropKind::LMinus => "l-",
        }
    }
}

/// A cropping step `Π^{r±}_{αβ}` or `Π^{l±}_{αβ}` on two-row data.
///
/// For right crops `α` labels the beginning subinterval and `β` the ending
/// one; for left crops it is the other way round.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CropStep {
    pub kind: CropKind,
    pub alpha: Label,
    pub beta: Label,
}

impl CropStep {
    pub fn new(kind: CropKind, alpha: Label, beta: Label) -> Result<CropStep> {
        if alpha == beta {
            return Err(IreError::RepeatedStepLabel(alpha.to_string()));
        }
        Ok(CropStep { kind, alpha, beta })
    }

    /// The scheme step with the same action through `from_two_row`.
    pub fn to_induction_step(&self) -> InductionStep {
        let (kind, a, b) = match self.kind {
            CropKind::RPlus => (StepKind::Rb, &self.alpha, &self.beta),
            CropKind::RMinus => (StepKind::Re, &self.alpha, &self.beta),
            CropKind::LPlus => (StepKind::Le, &self.beta, &self.alpha),
            CropKind::LMinus => (StepKind::Lb, &self.beta, &self.alpha),
        };
        InductionStep::new(kind, a.clone(), b.clone()).expect("distinct labels")
    }
}

impl fmt::Display for CropStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.kind.as_str(), self.alpha, self.beta)
    }
}

impl FromStr for CropStep {
    type Err = IreError;

    fn from_str(s: &str) -> Result<CropStep> {
        let bad = |m: &str| IreError::Parse {
            position: 0,
            message: format!("{m} in crop literal {s:?}"),
        };
        let (kind, labels) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let kind = match kind {
            "r+" => CropKind::RPlus,
            "r-" => CropKind::RMinus,
            "l+" => CropKind::LPlus,
            "l-" => CropKind::LMinus,
            _ => return Err(bad("unknown crop kind")),
        };
        let (a, b) = labels.split_once(',').ok_or_else(|| bad("missing ','"))?;
        CropStep::new(kind, Label::new(a.trim())?, Label::new(b.trim())?)
    }
}

fn check_len(v: &Lengths, d: usize) -> Result<()> {
    if v.0.len() != d {
        return Err(IreError::DimensionMismatch {
            expected: d,
            found: v.0.len(),
        });
    }
    Ok(())
}

/// Applies a cropping step to `(π_b, π_e, k_b, k_e, v, A)`.
pub fn two_row_crop_step(
    t: &TwoRowIet,
    v: &Lengths,
    left_ends: &[Rational],
    step: &CropStep,
) -> Result<(TwoRowIet, Lengths, Vec<Rational>)> {
    let mut dd = Discrete::of(t);
    let d = dd.labels.len();
    check_len(v, d)?;
    if left_ends.len() != dd.k_b.len() {
        return Err(IreError::DimensionMismatch {
            expected: dd.k_b.len(),
            found: left_ends.len(),
        });
    }
    let find = |l: &Label| {
        dd.labels
            .binary_search(l)
            .map_err(|_| IreError::UnknownLabel(l.to_string()))
    };
    let (a, b) = (find(&step.alpha)?, find(&step.beta)?);
    let fail = |reason: &str| IreError::StepNotApplicable {
        step: step.to_string(),
        reason: reason.to_string(),
    };

    let right = matches!(step.kind, CropKind::RPlus | CropKind::RMinus);
    let s_star = if right {
        let s = Discrete::bracket_of(&dd.k_b, dd.pi_b[a]);
        if Discrete::bracket_of(&dd.k_e, dd.pi_e[b]) != s
            || dd.pi_b[a] != Discrete::cumulative(&dd.k_b, s + 1)
            || dd.pi_e[b] != Discrete::cumulative(&dd.k_e, s + 1)
        {
            return Err(fail(
                "the subintervals are not both rightmost in one interval",
            ));
        }
        s
    } else {
        let s = Discrete::bracket_of(&dd.k_e, dd.pi_e[a]);
        if Discrete::bracket_of(&dd.k_b, dd.pi_b[b]) != s
            || dd.pi_b[b] != Discrete::cumulative(&dd.k_b, s) + 1
            || dd.pi_e[a] != Discrete::cumulative(&dd.k_e, s) + 1
        {
            return Err(fail(
                "the subintervals are not both leftmost in one interval",
            ));
        }
        s
    };

    if v.at(a) == v.at(b) {
        return Err(IreError::TieDetected {
            alpha: step.alpha.to_string(),
            beta: step.beta.to_string(),
        });
    }
    let plus = matches!(step.kind, CropKind::RPlus | CropKind::LPlus);
    if plus != (v.at(a) > v.at(b)) {
        return Err(IreError::PositivityLost {
            step: step.to_string(),
            label: if plus {
                step.alpha.to_string()
            } else {
                step.beta.to_string()
            },
        });
    }

    match step.kind {
        CropKind::RPlus => {
            let (pa, pb) = (dd.pi_e[a], dd.pi_e[b]);
            let old = dd.pi_e.clone();
            for g in (0..d).filter(|&g| g != b) {
                let p = old[g];
                if (p < pb && p <= pa) || (p > pb && p > pa) {
                    dd.pi_e[g] = p;
                } else if pa < p && p < pb {
                    dd.pi_e[g] = p + 1;
                } else if pb < p && p <= pa {
                    dd.pi_e[g] = p - 1;
                }
            }
            dd.pi_e[b] = if pa < pb { pa + 1 } else { pa };
            let target = Discrete::bracket_of(&dd.k_e, pa);
            if s_star != target {
                dd.k_e[s_star] -= 1;
                dd.k_e[target] += 1;
            }
        }
        CropKind::RMinus => {
            let (pa, pb) = (dd.pi_b[a], dd.pi_b[b]);
            let old = dd.pi_b.clone();
            for g in (0..d).filter(|&g| g != a) {
                let p = old[g];
                if (p < pa && p <= pb) || (p > pa && p > pb) {
                    dd.pi_b[g] = p;
                } else if pb < p && p < pa {
                    dd.pi_b[g] = p + 1;
                } else if pa < p && p <= pb {
                    dd.pi_b[g] = p - 1;
                }
            }
            dd.pi_b[a] = if pb < pa { pb + 1 } else { pb };
            let target = Discrete::bracket_of(&dd.k_b, pb);
            if s_star != target {
                dd.k_b[s_star] -= 1;
                dd.k_b[target] += 1;
            }
        }
        CropKind::LPlus => {
            let (pa, pb) = (dd.pi_b[a], dd.pi_b[b]);
            let old = dd.pi_b.clone();
            for g in (0..d).filter(|&g| g != b) {
                let p = old[g];
                if (p < pa && p < pb) || (p >= pa && p > pb) {
                    dd.pi_b[g] = p;
                } else if pa <= p && p < pb {
                    dd.pi_b[g] = p + 1;
                } else if pb < p && p < pa {
                    dd.pi_b[g] = p - 1;
                }
            }
            dd.pi_b[b] = if pb < pa { pa - 1 } else { pa };
            let target = Discrete::bracket_of(&dd.k_b, pa);
            if s_star != target {
                dd.k_b[s_star] -= 1;
                dd.k_b[target] += 1;
            }
        }
        CropKind::LMinus => {
            let (pa, pb) = (dd.pi_e[a], dd.pi_e[b]);
            let old = dd.pi_e.clone();
            for g in (0..d).filter(|&g| g != a) {
                let p = old[g];
                if (p < pb && p < pa) || (p >= pb && p > pa) {
                    dd.pi_e[g] = p;
                } else if pb <= p && p < pa {
                    dd.pi_e[g] = p + 1;
                } else if pa < p && p < pb {
                    dd.pi_e[g] = p - 1;
                }
            }
            dd.pi_e[a] = if pa < pb { pb - 1 } else { pb };
            let target = Discrete::bracket_of(&dd.k_e, pb);
            if s_star != target {
                dd.k_e[s_star] -= 1;
                dd.k_e[target] += 1;
            }
        }
    }

    let mut v2 = v.clone();
    if plus {
        v2.0[a] = v.at(a) - v.at(b);
    } else {
        v2.0[b] = v.at(b) - v.at(a);
    }
    let mut ends = left_ends.to_vec();
    match step.kind {
        CropKind::LPlus => ends[s_star] = &ends[s_star] + v.at(b),
        CropKind::LMinus => ends[s_star] = &ends[s_star] + v.at(a),
        _ => {}
    }
    Ok((dd.to_two_row()?, v2, ends))
}

/// Endpoints of `from_two_row(t)` for lengths `v` and left endpoints `A`.
pub fn two_row_endpoints(t: &TwoRowIet, v: &Lengths, left_ends: &[Rational]) -> Result<Endpoints> {
    let labels = t.labels();
    check_len(v, labels.len())?;
    if left_ends.len() != t.brackets().len() {
        return Err(IreError::DimensionMismatch {
            expected: t.brackets().len(),
            found: left_ends.len(),
        });
    }
    let letter = |l: &Label| labels.binary_search(l).expect("label of t");
    let mut x = Endpoints(vec![zero(); 2 * labels.len()]);
    for ((up, lo), start) in t.brackets().iter().zip(left_ends) {
        let mut pos = start.clone();
        for l in up {
            x.set(Ext::b(letter(l)), pos.clone());
            pos += v.at(letter(l));
        }
        let mut pos = start.clone();
        for l in lo {
            pos += v.at(letter(l));
            x.set(Ext::e(letter(l)), pos.clone());
        }
    }
    Ok(x)
}
