//! Zippered rectangles built from a positive natural extension.
//!
//! Rectangle `R_α` has width `v_α` and height `w_α`. Horizontal gluing of the
//! primal IRE identifies bottoms with tops, vertical gluing of the dual IRE
//! identifies left sides with right sides.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{IreError, Result, Side};
use crate::extension::NaturalExtension;
use crate::gluing::{glue_on, tree_map_eval, BranchRule, GluedTree};
use crate::rational::{self, Rational};
use crate::scheme::{Ext, Scheme};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub letter: usize,
    pub width: Rational,
    pub height: Rational,
}

/// `[from_lo, from_hi]` on the bottom (left) side of `from` is identified by
/// translation with `[to_lo, to_hi]` on the top (right) side of `to`, in local
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideGluing {
    pub from: usize,
    pub from_lo: Rational,
    pub from_hi: Rational,
    pub to: usize,
    pub to_lo: Rational,
    pub to_hi: Rational,
}

/// A point `(X, Y)` in the local coordinates of rectangle `letter`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalPoint {
    pub letter: usize,
    pub x: Rational,
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    /// Total angle in units of π.
    pub angle_pi: u64,
    pub points: Vec<LocalPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerData {
    pub vertices: i64,
    pub edges: i64,
    pub faces: i64,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZipperedSurface {
    pub extension: NaturalExtension,
    pub horizontal_tree: GluedTree,
    pub vertical_tree: GluedTree,
    pub rectangles: Vec<Rectangle>,
    pub horizontal: Vec<SideGluing>,
    pub vertical: Vec<SideGluing>,
    pub cone_points: Vec<ConePoint>,
    pub euler: EulerData,
    pub genus: i64,
}

impl ZipperedSurface {
    pub fn scheme(&self) -> &Scheme {
        &self.extension.scheme
    }

    /// Every rectangle side is tiled exactly by the gluings on it.
    pub fn check_sides(&self) -> Result<()> {
        for r in &self.rectangles {
            let sides: [(&str, Vec<(&Rational, &Rational)>, &Rational); 4] = [
                (
                    "bottom",
                    self.horizontal
                        .iter()
                        .filter(|g| g.from == r.letter)
                        .map(|g| (&g.from_lo, &g.from_hi))
                        .collect(),
                    &r.width,
                ),
                (
                    "top",
                    self.horizontal
                        .iter()
                        .filter(|g| g.to == r.letter)
                        .map(|g| (&g.to_lo, &g.to_hi))
                        .collect(),
                    &r.width,
                ),
                (
                    "left",
                    self.vertical
                        .iter()
                        .filter(|g| g.from == r.letter)
                        .map(|g| (&g.from_lo, &g.from_hi))
                        .collect(),
                    &r.height,
                ),
                (
                    "right",
                    self.vertical
                        .iter()
                        .filter(|g| g.to == r.letter)
                        .map(|g| (&g.to_lo, &g.to_hi))
                        .collect(),
                    &r.height,
                ),
            ];
            for (name, mut parts, full) in sides {
                parts.sort();
                let mut at = rational::zero();
                for (a, b) in parts {
                    if *a != at || a >= b {
                        return Err(self.side_error(r.letter, name));
                    }
                    at = b.clone();
                }
                if &at != full {
                    return Err(self.side_error(r.letter, name));
                }
            }
        }
        Ok(())
    }

    fn side_error(&self, letter: usize, side: &str) -> IreError {
        IreError::InternalInvariantViolation(format!(
            "{side} side of rectangle {} is not tiled by gluings",
            self.scheme().label(letter)
        ))
    }
}

fn side_gluings(tree: &GluedTree) -> Vec<SideGluing> {
    let s = &tree.scheme;
    tree.pairings
        .iter()
        .map(|p| {
            let base_from = tree.x.at(p.from);
            let base_to = tree.x.at(s.image(p.to));
            SideGluing {
                from: p.from.letter(),
                from_lo: &p.lo - base_from,
                from_hi: &p.hi - base_from,
                to: p.to.letter(),
                to_lo: &p.lo - base_to,
                to_hi: &p.hi - base_to,
            }
        })
        .collect()
}

struct Points {
    index: BTreeMap<LocalPoint, usize>,
    parent: Vec<usize>,
}

impl Points {
    fn id(&mut self, p: LocalPoint) -> usize {
        let n = self.index.len();
        let id = *self.index.entry(p).or_insert(n);
        if id == n {
            self.parent.push(n);
        }
        id
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: LocalPoint, b: LocalPoint) {
        let (a, b) = (self.id(a), self.id(b));
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn lp(letter: usize, x: &Rational, y: &Rational) -> LocalPoint {
    LocalPoint {
        letter,
        x: x.clone(),
        y: y.clone(),
    }
}

/// Builds the surface; both sides of the extension must be positive.
pub fn build_surface(
    e: &NaturalExtension,
    horizontal: &BranchRule,
    vertical: &BranchRule,
) -> Result<ZipperedSurface> {
    if !e.v.is_positive() {
        return Err(IreError::NotPositive { side: Side::Primal });
    }
    if !e.w.is_positive() {
        return Err(IreError::NotPositive { side: Side::Dual });
    }
    let s = &e.scheme;
    let htree = glue_on(s, &e.x, horizontal, Side::Primal)?;
    let vtree = glue_on(&s.dual(), &e.y, vertical, Side::Dual)?;
    let rectangles: Vec<Rectangle> = (0..s.d())
        .map(|a| Rectangle {
            letter: a,
            width: e.v.at(a).clone(),
            height: e.w.at(a).clone(),
        })
        .collect();
    let hg = side_gluings(&htree);
    let vg = side_gluings(&vtree);

    let zero = rational::zero();
    let mut pts = Points {
        index: BTreeMap::new(),
        parent: Vec::new(),
    };
    for r in &rectangles {
        for (x, y) in [
            (&zero, &zero),
            (&r.width, &zero),
            (&zero, &r.height),
            (&r.width, &r.height),
        ] {
            pts.id(lp(r.letter, x, y));
        }
    }
    for g in &hg {
        let top = &rectangles[g.to].height;
        pts.union(lp(g.from, &g.from_lo, &zero), lp(g.to, &g.to_lo, top));
        pts.union(lp(g.from, &g.from_hi, &zero), lp(g.to, &g.to_hi, top));
    }
    for g in &vg {
        let right = &rectangles[g.to].width;
        pts.union(lp(g.from, &zero, &g.from_lo), lp(g.to, right, &g.to_lo));
        pts.union(lp(g.from, &zero, &g.from_hi), lp(g.to, right, &g.to_hi));
    }

    // Angles in quarter turns: a corner contributes one, a side point two.
    let all: Vec<(LocalPoint, usize)> = pts.index.iter().map(|(p, &i)| (p.clone(), i)).collect();
    let mut classes: BTreeMap<usize, (u64, Vec<LocalPoint>)> = BTreeMap::new();
    for (p, i) in all {
        let r = &rectangles[p.letter];
        let on_x_edge = p.x == zero || p.x == r.width;
        let on_y_edge = p.y == zero || p.y == r.height;
        let quarter = if on_x_edge && on_y_edge { 1 } else { 2 };
        let root = pts.find(i);
        let entry = classes.entry(root).or_default();
        entry.0 += quarter;
        entry.1.push(p);
    }

    let vertices = classes.len() as i64;
    let edges = (hg.len() + vg.len()) as i64;
    let faces = s.d() as i64;
    let chi = vertices - edges + faces;
    let euler = EulerData {
        vertices,
        edges,
        faces,
        chi,
    };
    let mut cone_points = Vec::new();
    let mut excess = 0i64;
    for (quarters, points) in classes.into_values() {
        if quarters % 4 != 0 || quarters < 4 {
            return Err(IreError::InternalInvariantViolation(format!(
                "vertex with angle {quarters}·π/2 is not a cone point"
            )));
        }
        excess += quarters as i64 / 4 - 1;
        if quarters > 4 {
            cone_points.push(ConePoint {
                angle_pi: quarters / 2,
                points,
            });
        }
    }
    let twists = s.twists_total()?;
    if chi % 2 != 0 || 2 - chi != twists + 2 || excess != twists {
        return Err(IreError::InternalInvariantViolation(format!(
            "surface has χ = {chi} and cone excess {excess}, but the scheme has {twists} twists"
        )));
    }
    let surface = ZipperedSurface {
        extension: e.clone(),
        horizontal_tree: htree,
        vertical_tree: vtree,
        rectangles,
        horizontal: hg,
        vertical: vg,
        cone_points,
        euler,
        genus: (2 - chi) / 2,
    };
    surface.check_sides()?;
    Ok(surface)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlowReport {
    pub evaluated: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FirstReturnReport {
    pub vertical: FlowReport,
    pub horizontal: FlowReport,
}

impl FirstReturnReport {
    pub fn ok(&self) -> bool {
        self.vertical.failures.is_empty() && self.horizontal.failures.is_empty()
    }
}

/// Flows `samples` random points of each tree across their rectangle and
/// compares the landing point with the tree map followed by the gluing.
///
/// Points on interval ends, pairing ends or branch coordinates are redrawn and
/// counted as skipped.
pub fn first_return_check(
    surface: &ZipperedSurface,
    samples: usize,
    seed: u64,
) -> Result<FirstReturnReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(FirstReturnReport {
        vertical: flow(
            &surface.horizontal_tree,
            &surface.horizontal,
            samples,
            &mut rng,
        )?,
        horizontal: flow(&surface.vertical_tree, &surface.vertical, samples, &mut rng)?,
    })
}

fn flow(
    tree: &GluedTree,
    gluings: &[SideGluing],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<FlowReport> {
    let s = &tree.scheme;
    let mut report = FlowReport::default();
    let mut attempts = 0usize;
    while report.evaluated < samples && attempts < samples * 100 + 100 {
        attempts += 1;
        let letter = rng.gen_range(0..s.d());
        let b = Ext::b(letter);
        let (lo, hi) = tree.interval(b);
        let t = Rational::new(rng.gen_range(1..1000).into(), 1000.into());
        let p = &lo + (&hi - &lo) * t;
        let local = &p - &lo;
        let special = tree.pairings.iter().any(|pr| pr.lo == p || pr.hi == p)
            || tree.branch_points.iter().any(|bp| bp.coordinate == p);
        if special {
            report.skipped += 1;
            continue;
        }
        report.evaluated += 1;

        // Through the rectangle, then across its far side.
        let across: Vec<(usize, Rational)> = gluings
            .iter()
            .filter(|g| g.to == letter && g.to_lo <= local && local <= g.to_hi)
            .map(|g| (g.from, &local - &g.to_lo + &g.from_lo))
            .collect();

        // Tree map, then the pairing that carries the ending point onward.
        let image = tree_map_eval(tree, b, &p)?;
        let via_tree: Vec<(usize, Rational)> = image
            .iter()
            .flat_map(|(e, q)| {
                tree.pairings
                    .iter()
                    .filter(move |pr| pr.to == *e && &pr.lo <= q && q <= &pr.hi)
                    .map(move |pr| (pr.from.letter(), q - tree.x.at(pr.from)))
            })
            .collect();

        if across.len() == 1 && across == via_tree {
            report.passed += 1;
        } else {
            report.failures.push(format!(
                "{} at {}: flow gives {:?}, tree map gives {:?}",
                s.ext_name(b),
                p,
                across
                    .iter()
                    .map(|(l, c)| format!("{}@{}", s.label(*l), c))
                    .collect::<Vec<_>>(),
                via_tree
                    .iter()
                    .map(|(l, c)| format!("{}@{}", s.label(*l), c))
                    .collect::<Vec<_>>(),
            ));
        }
    }
    Ok(report)
}
