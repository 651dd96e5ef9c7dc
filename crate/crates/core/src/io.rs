//! JSON documents and the analysis report.
//!
//! Rationals are `p/q` strings, vectors are objects keyed by label or extended
//! label, schemes are canonical cycle text.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{IreError, Result};
use crate::extension::{
    make_extension, make_floating_extension, FloatingExtension, NaturalExtension,
};
use crate::gluing::{BranchPoint, GluedTree, Pairing};
use crate::induction::RauzyClass;
use crate::rational::{self, Rational};
use crate::realdata::{
    check_lengths, endpoint_space_basis, length_space_basis, lengths_from_endpoints, Endpoints,
    Lengths,
};
use crate::scheme::{Ext, Scheme};
use crate::surface::ZipperedSurface;
use crate::text::{parse_scheme, parse_two_row};
use crate::two_row::from_two_row;

pub type RationalMap = BTreeMap<String, String>;

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| IreError::Document(e.to_string()))
}

fn parse_value(key: &str, value: &str) -> Result<Rational> {
    rational::parse(value)
        .map_err(|_| IreError::Document(format!("entry {key}: invalid rational {value:?}")))
}

pub fn endpoints_to_map(s: &Scheme, x: &Endpoints) -> RationalMap {
    s.exts()
        .map(|e| (s.ext_name(e), rational::format(x.at(e))))
        .collect()
}

pub fn endpoints_from_map(s: &Scheme, m: &RationalMap) -> Result<Endpoints> {
    if m.len() != 2 * s.d() {
        return Err(IreError::DimensionMismatch {
            expected: 2 * s.d(),
            found: m.len(),
        });
    }
    let mut x = Endpoints(vec![rational::zero(); 2 * s.d()]);
    for (k, v) in m {
        x.set(s.ext(k)?, parse_value(k, v)?);
    }
    Ok(x)
}

pub fn lengths_to_map(s: &Scheme, v: &Lengths) -> RationalMap {
    (0..s.d())
        .map(|a| (s.label(a).to_string(), rational::format(v.at(a))))
        .collect()
}

pub fn lengths_from_map(s: &Scheme, m: &RationalMap) -> Result<Lengths> {
    if m.len() != s.d() {
        return Err(IreError::DimensionMismatch {
            expected: s.d(),
            found: m.len(),
        });
    }
    let mut v = vec![rational::zero(); s.d()];
    for (k, val) in m {
        v[s.letter(k)?] = parse_value(k, val)?;
    }
    Ok(Lengths(v))
}

/// `{scheme}`, `{scheme, x}`, `{scheme, v}`, `{scheme, x, y}` or `{scheme, v, w}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataDoc {
    pub scheme: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<RationalMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<RationalMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<RationalMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<RationalMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Scheme(Scheme),
    Ire(Scheme, Endpoints),
    Floating(Scheme, Lengths),
    Extension(NaturalExtension),
    FloatingExtension(FloatingExtension),
}

impl Input {
    pub fn scheme(&self) -> &Scheme {
        match self {
            Input::Scheme(s) | Input::Ire(s, _) | Input::Floating(s, _) => s,
            Input::Extension(e) => &e.scheme,
            Input::FloatingExtension(e) => &e.scheme,
        }
    }

    pub fn to_doc(&self) -> DataDoc {
        let s = self.scheme();
        let mut doc = DataDoc {
            scheme: s.to_string(),
            x: None,
            y: None,
            v: None,
            w: None,
        };
        match self {
            Input::Scheme(_) => {}
            Input::Ire(_, x) => doc.x = Some(endpoints_to_map(s, x)),
            Input::Floating(_, v) => doc.v = Some(lengths_to_map(s, v)),
            Input::Extension(e) => {
                doc.x = Some(endpoints_to_map(s, &e.x));
                doc.y = Some(endpoints_to_map(&s.dual(), &e.y));
            }
            Input::FloatingExtension(e) => {
                doc.v = Some(lengths_to_map(s, &e.v));
                doc.w = Some(lengths_to_map(s, &e.w));
            }
        }
        doc
    }

    pub fn from_doc(doc: &DataDoc) -> Result<Input> {
        let s = parse_scheme(&doc.scheme)?;
        match (&doc.x, &doc.y, &doc.v, &doc.w) {
            (None, None, None, None) => Ok(Input::Scheme(s)),
            (Some(x), None, None, None) => {
                let x = endpoints_from_map(&s, x)?;
                lengths_from_endpoints(&s, &x)?;
                Ok(Input::Ire(s, x))
            }
            (None, None, Some(v), None) => {
                let v = lengths_from_map(&s, v)?;
                check_lengths(&s, &v)?;
                Ok(Input::Floating(s, v))
            }
            (Some(x), Some(y), None, None) => {
                let x = endpoints_from_map(&s, x)?;
                let y = endpoints_from_map(&s.dual(), y)?;
                Ok(Input::Extension(make_extension(&s, x, y)?))
            }
            (None, None, Some(v), Some(w)) => {
                let v = lengths_from_map(&s, v)?;
                let w = lengths_from_map(&s, w)?;
                Ok(Input::FloatingExtension(make_floating_extension(&s, v, w)?))
            }
            _ => Err(IreError::Document(
                "expected one of {scheme}, {scheme, x}, {scheme, v}, {scheme, x, y}, {scheme, v, w}".into(),
            )),
        }
    }
}

/// A JSON data document, bracket notation for a two-row IET, or cycle text.
pub fn parse_input(text: &str) -> Result<Input> {
    let t = text.trim();
    if t.starts_with('{') {
        Input::from_doc(&from_json(t)?)
    } else if t.starts_with('[') {
        Ok(Input::Scheme(from_two_row(&parse_two_row(t)?)))
    } else {
        Ok(Input::Scheme(parse_scheme(t)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub scheme: String,
    pub d: usize,
    pub cycles: usize,
    pub components: usize,
    pub turns_back: Vec<String>,
    pub turns_forward: Vec<String>,
    pub per_cycle_twists: Vec<i64>,
    pub twists: i64,
    pub dual_scheme: String,
    pub dual_cycles: usize,
    pub dual_turns_back: usize,
    pub dual_twists: i64,
    pub twists_total: i64,
    pub genus: i64,
    pub dim_endpoints: usize,
    pub dim_lengths: usize,
    pub dual_dim_lengths: usize,
    pub positive: bool,
    pub dual_positive: bool,
    pub is_iet: bool,
    pub dual_is_iet: bool,
}

pub fn analyze(s: &Scheme) -> Result<AnalysisReport> {
    let dual = s.dual();
    let turns = s.turns();
    let dual_turns = dual.turns();
    let d = s.d();
    let components = s.irreducible_components().count();
    let dim_endpoints = endpoint_space_basis(s)?.dim;
    let dim_lengths = length_space_basis(s)?.dim;
    let dual_dim_lengths = length_space_basis(&dual)?.dim;
    let report = AnalysisReport {
        scheme: s.to_string(),
        d,
        cycles: s.cycle_count(),
        components,
        turns_back: turns.turns_back.iter().map(|&e| s.ext_name(e)).collect(),
        turns_forward: turns.turns_forward.iter().map(|&e| s.ext_name(e)).collect(),
        per_cycle_twists: turns.per_cycle_twists.clone(),
        twists: turns.total,
        dual_scheme: dual.to_string(),
        dual_cycles: dual.cycle_count(),
        dual_turns_back: dual_turns.turns_back.len(),
        dual_twists: dual_turns.total,
        twists_total: s.twists_total()?,
        genus: s.genus()?,
        dim_endpoints,
        dim_lengths,
        dual_dim_lengths,
        positive: s.is_positive(),
        dual_positive: dual.is_positive(),
        is_iet: s.is_iet(),
        dual_is_iet: dual.is_iet(),
    };
    let balance =
        report.twists + report.dual_twists + report.cycles as i64 + report.dual_cycles as i64;
    let consistent = balance == d as i64
        && report.turns_back.len() + report.dual_turns_back == d
        && dim_endpoints == d + components
        && dim_lengths + report.cycles == d + components;
    if !consistent {
        return Err(IreError::InternalInvariantViolation(format!(
            "analysis of {s} is inconsistent with the balance and dimension identities"
        )));
    }
    Ok(report)
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[String]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.join(" ")
            }
        };
        writeln!(f, "scheme          {}", self.scheme)?;
        writeln!(f, "d               {}", self.d)?;
        writeln!(f, "cycles N        {}", self.cycles)?;
        writeln!(f, "components P    {}", self.components)?;
        writeln!(f, "turns back      {}", list(&self.turns_back))?;
        writeln!(f, "turns forward   {}", list(&self.turns_forward))?;
        writeln!(f, "cycle twists    {:?}", self.per_cycle_twists)?;
        writeln!(f, "twists T        {}", self.twists)?;
        writeln!(f, "dual scheme     {}", self.dual_scheme)?;
        writeln!(f, "dual N          {}", self.dual_cycles)?;
        writeln!(f, "dual T          {}", self.dual_twists)?;
        writeln!(f, "twists total    {}", self.twists_total)?;
        writeln!(f, "genus           {}", self.genus)?;
        writeln!(f, "dim X           {}", self.dim_endpoints)?;
        writeln!(f, "dim V           {}", self.dim_lengths)?;
        writeln!(f, "dual dim V      {}", self.dual_dim_lengths)?;
        writeln!(
            f,
            "positive        {} (dual {})",
            self.positive, self.dual_positive
        )?;
        write!(
            f,
            "is IET          {} (dual {})",
            self.is_iet, self.dual_is_iet
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchPointDoc {
    pub cycle: usize,
    pub coordinate: String,
    pub meeting: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingDoc {
    pub cycle: usize,
    pub from: String,
    pub from_range: [String; 2],
    pub to: String,
    pub to_range: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub scheme: String,
    pub x: RationalMap,
    pub branch_points: Vec<BranchPointDoc>,
    pub pairings: Vec<PairingDoc>,
}

fn range(lo: &Rational, hi: &Rational) -> [String; 2] {
    [rational::format(lo), rational::format(hi)]
}

pub fn tree_to_doc(t: &GluedTree) -> TreeDoc {
    let s = &t.scheme;
    TreeDoc {
        scheme: s.to_string(),
        x: endpoints_to_map(s, &t.x),
        branch_points: t
            .branch_points
            .iter()
            .map(|b| BranchPointDoc {
                cycle: b.cycle,
                coordinate: rational::format(&b.coordinate),
                meeting: b.meeting.iter().map(|&e| s.ext_name(e)).collect(),
            })
            .collect(),
        pairings: t
            .pairings
            .iter()
            .map(|p| PairingDoc {
                cycle: p.cycle,
                from: s.ext_name(p.from),
                from_range: range(&p.lo, &p.hi),
                to: s.ext_name(p.to),
                to_range: range(&p.lo, &p.hi),
            })
            .collect(),
    }
}

fn ext_of(s: &Scheme, name: &str, beginning: Option<bool>) -> Result<Ext> {
    let e = s.ext(name)?;
    match beginning {
        Some(b) if e.is_b() != b => Err(IreError::Document(format!(
            "{name} must be a{} extremity",
            if b { " beginning" } else { "n ending" }
        ))),
        _ => Ok(e),
    }
}

/// Rebuilds a tree and checks that its pairings still tile every interval.
pub fn tree_from_doc(doc: &TreeDoc) -> Result<GluedTree> {
    let s = parse_scheme(&doc.scheme)?;
    let x = endpoints_from_map(&s, &doc.x)?;
    lengths_from_endpoints(&s, &x)?;
    let chains = (0..s.cycle_count())
        .map(|c| crate::gluing::turn_chain(&s, &x, c))
        .collect::<Result<Vec<_>>>()?;
    let branch_points = doc
        .branch_points
        .iter()
        .map(|b| {
            Ok(BranchPoint {
                cycle: b.cycle,
                coordinate: parse_value("coordinate", &b.coordinate)?,
                meeting: b
                    .meeting
                    .iter()
                    .map(|m| ext_of(&s, m, None))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairings = doc
        .pairings
        .iter()
        .map(|p| {
            if p.from_range != p.to_range {
                return Err(IreError::Document(format!(
                    "pairing {} - {} joins different coordinates",
                    p.from, p.to
                )));
            }
            Ok(Pairing {
                cycle: p.cycle,
                lo: parse_value("from_range", &p.from_range[0])?,
                hi: parse_value("from_range", &p.from_range[1])?,
                from: ext_of(&s, &p.from, Some(true))?,
                to: ext_of(&s, &p.to, Some(false))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let tree = GluedTree {
        scheme: s,
        x,
        chains,
        branch_points,
        pairings,
    };
    tree.check_partition()?;
    Ok(tree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectangleDoc {
    pub label: String,
    pub width: String,
    pub height: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideGluingDoc {
    pub from: String,
    pub from_side: String,
    pub from_range: [String; 2],
    pub to: String,
    pub to_side: String,
    pub to_range: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub label: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConePointDoc {
    pub angle_pi: u64,
    pub points: Vec<PointDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerDoc {
    pub v: i64,
    pub e: i64,
    pub f: i64,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub scheme: String,
    pub x: RationalMap,
    pub y: RationalMap,
    pub rectangles: Vec<RectangleDoc>,
    pub horizontal: Vec<SideGluingDoc>,
    pub vertical: Vec<SideGluingDoc>,
    pub cone_points: Vec<ConePointDoc>,
    pub euler: EulerDoc,
    pub genus: i64,
}

pub fn surface_to_doc(surf: &ZipperedSurface) -> SurfaceDoc {
    let s = surf.scheme();
    let e = &surf.extension;
    let label = |a: usize| s.label(a).to_string();
    let gluings = |list: &[crate::surface::SideGluing], sides: (&str, &str)| {
        list.iter()
            .map(|g| SideGluingDoc {
                from: label(g.from),
                from_side: sides.0.into(),
                from_range: range(&g.from_lo, &g.from_hi),
                to: label(g.to),
                to_side: sides.1.into(),
                to_range: range(&g.to_lo, &g.to_hi),
            })
            .collect()
    };
    SurfaceDoc {
        scheme: s.to_string(),
        x: endpoints_to_map(s, &e.x),
        y: endpoints_to_map(&s.dual(), &e.y),
        rectangles: surf
            .rectangles
            .iter()
            .map(|r| RectangleDoc {
                label: label(r.letter),
                width: rational::format(&r.width),
                height: rational::format(&r.height),
            })
            .collect(),
        horizontal: gluings(&surf.horizontal, ("bottom", "top")),
        vertical: gluings(&surf.vertical, ("left", "right")),
        cone_points: surf
            .cone_points
            .iter()
            .map(|c| ConePointDoc {
                angle_pi: c.angle_pi,
                points: c
                    .points
                    .iter()
                    .map(|p| PointDoc {
                        label: label(p.letter),
                        x: rational::format(&p.x),
                        y: rational::format(&p.y),
                    })
                    .collect(),
            })
            .collect(),
        euler: EulerDoc {
            v: surf.euler.vertices,
            e: surf.euler.edges,
            f: surf.euler.faces,
            chi: surf.euler.chi,
        },
        genus: surf.genus,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: String,
    pub step: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    pub truncated: bool,
}

pub fn class_to_doc(c: &RauzyClass) -> ClassDoc {
    ClassDoc {
        nodes: c.schemes.iter().map(|s| s.to_string()).collect(),
        edges: c
            .edges
            .iter()
            .map(|(a, st, b)| EdgeDoc {
                from: a.to_string(),
                step: st.to_string(),
                to: b.to_string(),
            })
            .collect(),
        truncated: c.truncated,
    }
}

/// Static SVG net: rectangles side by side with their labels, gluing
/// breakpoints marked as ticks.
pub fn surface_svg(surf: &ZipperedSurface) -> String {
    use num_traits::ToPrimitive;
    let f = |r: &Rational| r.to_f64().unwrap_or(0.0);
    let total_w: f64 = surf.rectangles.iter().map(|r| f(&r.width)).sum();
    let max_h = surf
        .rectangles
        .iter()
        .map(|r| f(&r.height))
        .fold(0.0, f64::max);
    let gap = total_w * 0.05 + 1e-9;
    let scale = 600.0 / (total_w + gap * (surf.rectangles.len() as f64 + 1.0));
    let height = (max_h * scale) + 60.0;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"{height:.0}\">\n"
    );
    let mut left = gap * scale + 20.0;
    let base = height - 30.0;
    for r in &surf.rectangles {
        let (w, h) = (f(&r.width) * scale, f(&r.height) * scale);
        out.push_str(&format!(
            "  <rect x=\"{left:.2}\" y=\"{:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"none\" stroke=\"black\"/>\n",
            base - h
        ));
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            left + w / 2.0,
            base - h / 2.0,
            surf.scheme().label(r.letter)
        ));
        for g in surf.horizontal.iter().filter(|g| g.from == r.letter) {
            let t = left + f(&g.from_lo) * scale;
            out.push_str(&format!(
                "  <line x1=\"{t:.2}\" y1=\"{base:.2}\" x2=\"{t:.2}\" y2=\"{:.2}\" stroke=\"red\"/>\n",
                base + 6.0
            ));
        }
        left += w + gap * scale;
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_doc_round_trip() {
        let text = r#"{"scheme": "(a.b b.b a.e b.e)", "v": {"a": "2", "b": "3/2"}}"#;
        let input = parse_input(text).unwrap();
        let doc = input.to_doc();
        assert_eq!(doc.v.as_ref().unwrap()["b"], "3/2");
        let again = to_json(&doc);
        assert_eq!(from_json::<DataDoc>(&again).unwrap(), doc);
        assert_eq!(Input::from_doc(&doc).unwrap(), input);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(matches!(
            parse_input(r#"{"scheme": "(a.b a.e)", "x": {"a.b": "0"}}"#),
            Err(IreError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            parse_input(r#"{"scheme": "(a.b a.e)", "v": {"a": "1"}, "y": {}}"#),
            Err(IreError::Document(_))
        ));
        assert!(matches!(
            parse_input(r#"{"scheme": "(a.b a.e)", "v": {"a": "x"}}"#),
            Err(IreError::Document(_))
        ));
        assert!(matches!(
            parse_input("[a b / b a]").unwrap(),
            Input::Scheme(_)
        ));
    }

    #[test]
    fn report_for_s2() {
        let r = analyze(&parse_scheme("(a.b a.e)").unwrap()).unwrap();
        assert_eq!(
            r.twists + r.dual_twists + (r.cycles + r.dual_cycles) as i64,
            1
        );
        assert!(!r.dual_positive);
        assert_eq!(r.dual_dim_lengths, 0);
        let back: AnalysisReport = from_json(&to_json(&r)).unwrap();
        assert_eq!(back, r);
        assert!(r.to_string().contains("genus"));
    }
}
