//! Gluing a positive IRE into a tree.
//!
//! Each cycle of `σ` traces a closed polygonal chain on the line: runs of
//! beginning intervals ascend from a turn-forward site to a turn-back site,
//! runs of ending intervals descend back. Repeatedly folding the shortest
//! segment onto its two neighbours at a branch coordinate `c` leaves two
//! segments, which are identified pointwise.

use std::collections::BTreeMap;

use crate::error::{IreError, Result, Side};
use crate::rational::{self, midpoint, Rational};
use crate::realdata::{lengths_from_endpoints_on, Endpoints};
use crate::scheme::{Ext, Scheme};

/// Alternating turn sites of one cycle with their coordinates, starting at the
/// lowest turn-forward site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnChain {
    pub cycle: usize,
    pub vertices: Vec<(Ext, Rational)>,
}

impl TurnChain {
    /// Length of the segment leaving each vertex, cyclically.
    pub fn segment_lengths(&self) -> Vec<Rational> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (&self.vertices[i].1, &self.vertices[(i + 1) % n].1);
                if a < b {
                    b - a
                } else {
                    a - b
                }
            })
            .collect()
    }
}

/// How the branch coordinate is chosen inside the shortest segment.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum BranchRule {
    #[default]
    Midpoint,
    LeftEnd,
    /// Coordinates consumed in reduction order, cycle by cycle.
    Explicit(Vec<Rational>),
}

/// `from` (a beginning extremity) and `to` (an ending one) are identified
/// over `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pairing {
    pub cycle: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub from: Ext,
    pub to: Ext,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub cycle: usize,
    pub coordinate: Rational,
    /// Extremities whose intervals pass through the branch point.
    pub meeting: Vec<Ext>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedTree {
    pub scheme: Scheme,
    pub x: Endpoints,
    pub chains: Vec<TurnChain>,
    pub branch_points: Vec<BranchPoint>,
    /// Sorted by cycle, then coordinate.
    pub pairings: Vec<Pairing>,
}

#[derive(Clone, Debug)]
struct Piece {
    ext: Ext,
    lo: Rational,
    hi: Rational,
}

#[derive(Clone, Debug)]
struct Segment {
    beginning: bool,
    lo: Rational,
    hi: Rational,
    /// Ascending by coordinate.
    pieces: Vec<Piece>,
    /// Position of the segment's first vertex along the chain.
    start: usize,
}

impl Segment {
    fn len(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Rotates a cycle to start at its lowest turn-forward site (by coordinate,
/// then by extremity).
fn cycle_from_turn_forward(
    s: &Scheme,
    x: &Endpoints,
    cycle: &[Ext],
    index: usize,
) -> Result<Vec<Ext>> {
    let start = cycle
        .iter()
        .filter(|&&e| e.is_b() && !s.preimage(e).is_b())
        .min_by_key(|&&e| (x.at(e), e))
        .copied()
        .ok_or(IreError::DegenerateCycle(index))?;
    let pos = cycle
        .iter()
        .position(|&e| e == start)
        .expect("site lies on its cycle");
    Ok(cycle[pos..].iter().chain(&cycle[..pos]).copied().collect())
}

pub fn turn_chain(s: &Scheme, x: &Endpoints, cycle: usize) -> Result<TurnChain> {
    lengths_from_endpoints_on(s, x, Side::Primal)?;
    turn_chain_unchecked(s, x, cycle)
}

fn turn_chain_unchecked(s: &Scheme, x: &Endpoints, cycle: usize) -> Result<TurnChain> {
    let cycles = s.cycles().cycles;
    let c = cycles
        .get(cycle)
        .ok_or_else(|| IreError::Document(format!("no cycle {cycle}")))?;
    let order = cycle_from_turn_forward(s, x, c, cycle)?;
    let vertices = order
        .iter()
        .filter(|&&e| e.is_b() != s.preimage(e).is_b())
        .map(|&e| (e, x.at(e).clone()))
        .collect();
    Ok(TurnChain { cycle, vertices })
}

fn segments(s: &Scheme, x: &Endpoints, order: &[Ext]) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for (pos, &e) in order.iter().enumerate() {
        let piece = if e.is_b() {
            Piece {
                ext: e,
                lo: x.at(e).clone(),
                hi: x.at(s.image(e)).clone(),
            }
        } else {
            Piece {
                ext: e,
                lo: x.at(s.image(e)).clone(),
                hi: x.at(e).clone(),
            }
        };
        match out.last_mut() {
            Some(seg) if seg.beginning == e.is_b() => {
                if e.is_b() {
                    seg.hi = piece.hi.clone();
                    seg.pieces.push(piece);
                } else {
                    seg.lo = piece.lo.clone();
                    seg.pieces.insert(0, piece);
                }
            }
            _ => out.push(Segment {
                beginning: e.is_b(),
                lo: piece.lo.clone(),
                hi: piece.hi.clone(),
                pieces: vec![piece],
                start: pos,
            }),
        }
    }
    out
}

/// Splits ascending pieces at `c`, dropping empty fragments.
fn split(pieces: Vec<Piece>, c: &Rational) -> (Vec<Piece>, Vec<Piece>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for p in pieces {
        if &p.hi <= c {
            left.push(p);
        } else if &p.lo >= c {
            right.push(p);
        } else {
            left.push(Piece {
                ext: p.ext,
                lo: p.lo.clone(),
                hi: c.clone(),
            });
            right.push(Piece {
                ext: p.ext,
                lo: c.clone(),
                hi: p.hi,
            });
        }
    }
    (left, right)
}

fn span(pieces: &[Piece]) -> Option<(Rational, Rational)> {
    Some((pieces.first()?.lo.clone(), pieces.last()?.hi.clone()))
}

/// Pointwise identification of beginning and ending pieces over a common range.
fn zip(cycle: usize, b: &[Piece], e: &[Piece], out: &mut Vec<Pairing>) -> Result<()> {
    if span(b) != span(e) {
        return Err(IreError::InternalInvariantViolation(format!(
            "cycle {cycle}: glued pieces cover different ranges"
        )));
    }
    let (mut i, mut j) = (0, 0);
    while i < b.len() && j < e.len() {
        let lo = (&b[i].lo).max(&e[j].lo).clone();
        let hi = (&b[i].hi).min(&e[j].hi).clone();
        if lo < hi {
            out.push(Pairing {
                cycle,
                lo,
                hi: hi.clone(),
                from: b[i].ext,
                to: e[j].ext,
            });
        }
        if b[i].hi == hi {
            i += 1;
        }
        if e[j].hi == hi {
            j += 1;
        }
    }
    Ok(())
}

struct BranchSource<'a> {
    rule: &'a BranchRule,
    used: usize,
}

impl BranchSource<'_> {
    fn pick(&mut self, seg: &Segment) -> Result<Rational> {
        let c = match self.rule {
            BranchRule::Midpoint => midpoint(&seg.lo, &seg.hi),
            BranchRule::LeftEnd => seg.lo.clone(),
            BranchRule::Explicit(cs) => {
                let c = cs
                    .get(self.used)
                    .cloned()
                    .ok_or(IreError::ExplicitBranchExhausted(self.used))?;
                if c < seg.lo || c > seg.hi {
                    return Err(IreError::ExplicitBranchOutOfRange {
                        coordinate: rational::format(&c),
                        lo: rational::format(&seg.lo),
                        hi: rational::format(&seg.hi),
                    });
                }
                c
            }
        };
        self.used += 1;
        Ok(c)
    }
}

fn glue_cycle(
    s: &Scheme,
    x: &Endpoints,
    cycle: usize,
    order: &[Ext],
    branch: &mut BranchSource,
    pairings: &mut Vec<Pairing>,
    seeds: &mut Vec<(usize, Rational, Ext)>,
) -> Result<()> {
    let mut segs = segments(s, x, order);
    while segs.len() > 2 {
        let n = segs.len();
        let k = (0..n)
            .min_by(|&a, &b| (segs[a].len(), segs[a].start).cmp(&(segs[b].len(), segs[b].start)))
            .expect("chain is non-empty");
        let prev = (k + n - 1) % n;
        let next = (k + 1) % n;
        let c = branch.pick(&segs[k])?;
        let (short_left, short_right) = split(segs[k].pieces.clone(), &c);
        let seed = short_right
            .first()
            .or(short_left.last())
            .map(|p| p.ext)
            .expect("segment has pieces");
        seeds.push((cycle, c.clone(), seed));

        // The left half shares its vertex with the next segment when the
        // shortest one descends, with the previous one when it ascends.
        let (left_nb, right_nb) = if segs[k].beginning {
            (prev, next)
        } else {
            (next, prev)
        };
        let (left_glue, left_rest) = split(segs[left_nb].pieces.clone(), &c);
        let (right_rest, right_glue) = split(segs[right_nb].pieces.clone(), &c);
        if segs[k].beginning {
            zip(cycle, &short_left, &left_glue, pairings)?;
            zip(cycle, &short_right, &right_glue, pairings)?;
        } else {
            zip(cycle, &left_glue, &short_left, pairings)?;
            zip(cycle, &right_glue, &short_right, pairings)?;
        }
        let mut pieces = right_rest;
        pieces.extend(left_rest);
        let merged = Segment {
            beginning: !segs[k].beginning,
            lo: segs[right_nb].lo.clone(),
            hi: segs[left_nb].hi.clone(),
            pieces,
            start: segs[prev].start,
        };
        if span(&merged.pieces) != Some((merged.lo.clone(), merged.hi.clone())) {
            return Err(IreError::InternalInvariantViolation(format!(
                "cycle {cycle}: merged segment does not cover its range"
            )));
        }
        segs = segs
            .into_iter()
            .enumerate()
            .filter_map(|(i, sg)| {
                if i == prev {
                    Some(merged.clone())
                } else if i == k || i == next {
                    None
                } else {
                    Some(sg)
                }
            })
            .collect();
    }
    let (b, e) = if segs[0].beginning {
        (&segs[0], &segs[1])
    } else {
        (&segs[1], &segs[0])
    };
    zip(cycle, &b.pieces, &e.pieces, pairings)
}

/// Connected sheets through coordinate `p` of one cycle, by union-find over
/// the closed pairings containing `p`.
pub(crate) fn sheets_at(pairings: &[Pairing], cycle: usize, p: &Rational) -> Vec<Vec<Ext>> {
    let mut parent: BTreeMap<Ext, Ext> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<Ext, Ext>, e: Ext) -> Ext {
        let up = *parent.entry(e).or_insert(e);
        if up == e {
            e
        } else {
            let root = find(parent, up);
            parent.insert(e, root);
            root
        }
    }
    for pr in pairings
        .iter()
        .filter(|pr| pr.cycle == cycle && &pr.lo <= p && p <= &pr.hi)
    {
        let (a, b) = (find(&mut parent, pr.from), find(&mut parent, pr.to));
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let keys: Vec<Ext> = parent.keys().copied().collect();
    let mut groups: BTreeMap<Ext, Vec<Ext>> = BTreeMap::new();
    for e in keys {
        let r = find(&mut parent, e);
        groups.entry(r).or_default().push(e);
    }
    groups.into_values().collect()
}

fn merge_adjacent(mut pairings: Vec<Pairing>) -> Vec<Pairing> {
    pairings.sort_by(|a, b| (a.cycle, a.from, a.to, &a.lo).cmp(&(b.cycle, b.from, b.to, &b.lo)));
    let mut out: Vec<Pairing> = Vec::new();
    for p in pairings {
        match out.last_mut() {
            Some(q) if q.from == p.from && q.to == p.to && q.hi == p.lo => q.hi = p.hi,
            _ => out.push(p),
        }
    }
    out.sort();
    out
}

/// Glues a positive IRE with the given branch rule.
pub fn glue_ire(s: &Scheme, x: &Endpoints, rule: &BranchRule) -> Result<GluedTree> {
    glue_on(s, x, rule, Side::Primal)
}

pub(crate) fn glue_on(
    s: &Scheme,
    x: &Endpoints,
    rule: &BranchRule,
    side: Side,
) -> Result<GluedTree> {
    let v = lengths_from_endpoints_on(s, x, side)?;
    if !v.is_positive() {
        return Err(IreError::NotPositive { side });
    }
    let mut branch = BranchSource { rule, used: 0 };
    let mut pairings = Vec::new();
    let mut seeds = Vec::new();
    let mut chains = Vec::new();
    for (ci, c) in s.cycles().cycles.iter().enumerate() {
        let order = cycle_from_turn_forward(s, x, c, ci)?;
        chains.push(turn_chain_unchecked(s, x, ci)?);
        glue_cycle(s, x, ci, &order, &mut branch, &mut pairings, &mut seeds)?;
    }
    let pairings = merge_adjacent(pairings);
    let branch_points = seeds
        .into_iter()
        .map(|(cycle, coordinate, seed)| {
            let meeting = sheets_at(&pairings, cycle, &coordinate)
                .into_iter()
                .find(|g| g.contains(&seed))
                .unwrap_or_else(|| vec![seed]);
            BranchPoint {
                cycle,
                coordinate,
                meeting,
            }
        })
        .collect();
    let tree = GluedTree {
        scheme: s.clone(),
        x: x.clone(),
        chains,
        branch_points,
        pairings,
    };
    tree.check_partition()?;
    Ok(tree)
}

impl GluedTree {
    /// `I_{ξb}` for a beginning extremity, `I_{ξe}` for an ending one.
    pub fn interval(&self, e: Ext) -> (Rational, Rational) {
        let s = &self.scheme;
        if e.is_b() {
            (self.x.at(e).clone(), self.x.at(s.image(e)).clone())
        } else {
            (self.x.at(s.image(e)).clone(), self.x.at(e).clone())
        }
    }

    /// Every interval is tiled exactly by the pairings on it.
    pub fn check_partition(&self) -> Result<()> {
        for e in self.scheme.exts() {
            let mut parts: Vec<(&Rational, &Rational)> = self
                .pairings
                .iter()
                .filter(|p| if e.is_b() { p.from == e } else { p.to == e })
                .map(|p| (&p.lo, &p.hi))
                .collect();
            parts.sort();
            let (lo, hi) = self.interval(e);
            let mut at = &lo;
            for (a, b) in &parts {
                if *a != at || a >= b {
                    return Err(IreError::InternalInvariantViolation(format!(
                        "pairings do not tile {}",
                        self.scheme.ext_name(e)
                    )));
                }
                at = b;
            }
            if *at != hi {
                return Err(IreError::InternalInvariantViolation(format!(
                    "pairings do not cover {}",
                    self.scheme.ext_name(e)
                )));
            }
        }
        Ok(())
    }
}

/// Image of the point `p` of `I_{αb}` under the tree map.
///
/// Returns one `(ending extremity, coordinate)` per beginning interval through
/// the same tree point: a singleton away from branch points and interval ends.
pub fn tree_map_eval(tree: &GluedTree, alpha_b: Ext, p: &Rational) -> Result<Vec<(Ext, Rational)>> {
    let s = &tree.scheme;
    if !alpha_b.is_b() {
        return Err(IreError::Document(format!(
            "{} is not a beginning extremity",
            s.ext_name(alpha_b)
        )));
    }
    let (lo, hi) = tree.interval(alpha_b);
    if p < &lo || p > &hi {
        return Err(IreError::PointOutsideInterval {
            interval: s.ext_name(alpha_b),
            point: rational::format(p),
        });
    }
    let cycle = s.cycle_index()[alpha_b.index()];
    let sheet = sheets_at(&tree.pairings, cycle, p)
        .into_iter()
        .find(|g| g.contains(&alpha_b))
        .unwrap_or_else(|| vec![alpha_b]);
    Ok(sheet
        .into_iter()
        .filter(|e| e.is_b())
        .map(|b| {
            let e = Ext::e(b.letter());
            let target = p - tree.x.at(b) + tree.x.at(s.image(e));
            (e, target)
        })
        .collect())
}
