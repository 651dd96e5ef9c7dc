//! Multi-interval IETs in two-row bracket notation and their conversion to schemes.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{IreError, Result};
use crate::scheme::{make_alphabet, Ext, Label, Marker, Scheme};

/// Brackets of `(upper, lower)` rows; every label occurs once among all upper
/// rows and once among all lower rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoRowIet {
    brackets: Vec<(Vec<Label>, Vec<Label>)>,
}

impl TwoRowIet {
    pub fn new<S: AsRef<str>>(brackets: Vec<(Vec<S>, Vec<S>)>) -> Result<TwoRowIet> {
        if brackets.is_empty() {
            return Err(IreError::MalformedTwoRow("no brackets".into()));
        }
        let mut out = Vec::with_capacity(brackets.len());
        let mut upper_seen = BTreeSet::new();
        let mut lower_seen = BTreeSet::new();
        for (i, (up, lo)) in brackets.iter().enumerate() {
            if up.is_empty() || lo.is_empty() {
                return Err(IreError::MalformedTwoRow(format!(
                    "bracket {i} has an empty row"
                )));
            }
            let up: Vec<Label> = up
                .iter()
                .map(|s| Label::new(s.as_ref()))
                .collect::<Result<_>>()?;
            let lo: Vec<Label> = lo
                .iter()
                .map(|s| Label::new(s.as_ref()))
                .collect::<Result<_>>()?;
            for l in &up {
                if !upper_seen.insert(l.clone()) {
                    return Err(IreError::MalformedTwoRow(format!(
                        "{l} repeated in upper rows"
                    )));
                }
            }
            for l in &lo {
                if !lower_seen.insert(l.clone()) {
                    return Err(IreError::MalformedTwoRow(format!(
                        "{l} repeated in lower rows"
                    )));
                }
            }
            out.push((up, lo));
        }
        if upper_seen != lower_seen {
            let missing: Vec<String> = upper_seen
                .symmetric_difference(&lower_seen)
                .map(|l| l.to_string())
                .collect();
            return Err(IreError::MalformedTwoRow(format!(
                "labels not in both rows: {}",
                missing.join(", ")
            )));
        }
        Ok(TwoRowIet { brackets: out })
    }

    pub fn brackets(&self) -> &[(Vec<Label>, Vec<Label>)] {
        &self.brackets
    }

    pub fn labels(&self) -> Vec<Label> {
        let set: BTreeSet<Label> = self
            .brackets
            .iter()
            .flat_map(|(u, _)| u.iter().cloned())
            .collect();
        set.into_iter().collect()
    }
}

impl fmt::Display for TwoRowIet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (up, lo)) in self.brackets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let join = |row: &[Label]| row.iter().map(Label::as_str).collect::<Vec<_>>().join(" ");
            write!(f, "[{} / {}]", join(up), join(lo))?;
        }
        Ok(())
    }
}

/// Encodes each bracket as the cycle "upper left to right, then lower right to left".
pub fn from_two_row(t: &TwoRowIet) -> Scheme {
    let names: Vec<String> = t.labels().iter().map(|l| l.to_string()).collect();
    let alphabet = make_alphabet(&names).expect("validated labels");
    let letter = |l: &Label| alphabet.binary_search(l).expect("known label");
    let cycles: Vec<Vec<Ext>> = t
        .brackets
        .iter()
        .map(|(up, lo)| {
            up.iter()
                .map(|l| Ext::new(letter(l), Marker::B))
                .chain(lo.iter().rev().map(|l| Ext::new(letter(l), Marker::E)))
                .collect()
        })
        .collect();
    Scheme::from_cycles(alphabet.clone(), &cycles).expect("two-row data is a permutation")
}

/// Inverse of [`from_two_row`]; brackets follow the canonical cycle order.
pub fn to_two_row(s: &Scheme) -> Result<TwoRowIet> {
    if !s.is_iet() {
        return Err(IreError::NotAnIet(s.to_string()));
    }
    let mut brackets = Vec::new();
    for cyc in &s.cycles().cycles {
        let n = cyc.len();
        // Start right after the unique e → b transition.
        let start = (0..n)
            .find(|&k| cyc[k].is_b() && !cyc[(k + n - 1) % n].is_b())
            .expect("an IET cycle has a turn forward");
        let rotated: Vec<Ext> = (0..n).map(|k| cyc[(start + k) % n]).collect();
        let split = rotated
            .iter()
            .position(|e| !e.is_b())
            .expect("has an ending arc");
        let upper: Vec<String> = rotated[..split]
            .iter()
            .map(|e| s.label(e.letter()).to_string())
            .collect();
        let lower: Vec<String> = rotated[split..]
            .iter()
            .rev()
            .map(|e| s.label(e.letter()).to_string())
            .collect();
        brackets.push((upper, lower));
    }
    TwoRowIet::new(brackets)
}
