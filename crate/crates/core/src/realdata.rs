//! Allowed endpoints `X_σ`, allowed lengths `V_σ` and the maps between them.

use num_traits::{Signed, Zero};

use crate::error::{IreError, Result, Side};
use crate::linalg::{self, Matrix};
use crate::rational::{int, one, zero, Rational};
use crate::scheme::{Ext, Scheme};

/// Endpoint coordinates indexed by [`Ext::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endpoints(pub Vec<Rational>);

/// Lengths indexed by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lengths(pub Vec<Rational>);

impl Endpoints {
    pub fn at(&self, e: Ext) -> &Rational {
        &self.0[e.index()]
    }

    pub fn set(&mut self, e: Ext, value: Rational) {
        self.0[e.index()] = value;
    }
}

impl Lengths {
    pub fn from_ints(values: &[i64]) -> Lengths {
        Lengths(values.iter().map(|&v| int(v)).collect())
    }

    pub fn at(&self, letter: usize) -> &Rational {
        &self.0[letter]
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }
}

/// `d × 2d` matrix with `Δx = 0` exactly on `X_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatrix {
    pub rows: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    /// Rows of a reduced row echelon form.
    pub vectors: Vec<Vec<Rational>>,
    pub dim: usize,
}

impl Basis {
    fn new(vectors: Vec<Vec<Rational>>) -> Basis {
        let dim = vectors.len();
        Basis { vectors, dim }
    }
}

pub fn delta_matrix(s: &Scheme) -> DeltaMatrix {
    let d = s.d();
    let mut rows = vec![vec![zero(); 2 * d]; d];
    for (a, row) in rows.iter_mut().enumerate() {
        let (b, e) = (Ext::b(a), Ext::e(a));
        row[b.index()] += one();
        row[e.index()] += one();
        row[s.image(b).index()] -= one();
        row[s.image(e).index()] -= one();
    }
    DeltaMatrix { rows }
}

fn delta_integer_rows(s: &Scheme) -> Vec<Vec<i64>> {
    let d = s.d();
    let mut rows = vec![vec![0i64; 2 * d]; d];
    for (a, row) in rows.iter_mut().enumerate() {
        for e in [Ext::b(a), Ext::e(a)] {
            row[e.index()] += 1;
            row[s.image(e).index()] -= 1;
        }
    }
    rows
}

/// Basis of `X_σ`; the dimension is checked against `d + P`.
pub fn endpoint_space_basis(s: &Scheme) -> Result<Basis> {
    let d = s.d();
    let delta = delta_matrix(s);
    let basis = Basis::new(linalg::kernel_basis(&delta.rows, 2 * d));
    let p = s.irreducible_components().count();
    let rank = linalg::rank_fraction_free(&delta_integer_rows(s));
    if basis.dim != d + p || rank != d - p {
        return Err(IreError::InternalInvariantViolation(format!(
            "dim X = {} and rank Δ = {} for d = {d}, P = {p}",
            basis.dim, rank
        )));
    }
    Ok(basis)
}

/// Integer matrix of the per-cycle closure conditions `Σ ±v = 0`.
///
/// Walking a cycle, a `b` element adds its length and an `e` element subtracts
/// it, so `v ∈ V_σ` iff each row sums to zero against `v`.
pub fn closure_matrix(s: &Scheme) -> Vec<Vec<i64>> {
    s.cycles()
        .cycles
        .iter()
        .map(|cyc| {
            let mut row = vec![0i64; s.d()];
            for e in cyc {
                row[e.letter()] += if e.is_b() { 1 } else { -1 };
            }
            row
        })
        .collect()
}

fn to_rational(m: &[Vec<i64>]) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect()
}

/// Basis of `V_σ` as the image of `X_σ`; the dimension is checked against
/// `d + P − N` and against the kernel of the closure conditions.
pub fn length_space_basis(s: &Scheme) -> Result<Basis> {
    let d = s.d();
    let xb = endpoint_space_basis(s)?;
    let images: Vec<Vec<Rational>> = xb
        .vectors
        .iter()
        .map(|x| lengths_unchecked(s, &Endpoints(x.clone())).0)
        .collect();
    let basis = Basis::new(linalg::row_space_basis(&images, d));
    let p = s.irreducible_components().count();
    let n = s.cycle_count();
    let closure = linalg::kernel_basis(&to_rational(&closure_matrix(s)), d);
    if basis.dim + n != d + p || closure != basis.vectors {
        return Err(IreError::InternalInvariantViolation(format!(
            "dim V = {} (closure kernel {}) for d = {d}, P = {p}, N = {n}",
            basis.dim,
            closure.len()
        )));
    }
    Ok(basis)
}

fn lengths_unchecked(s: &Scheme, x: &Endpoints) -> Lengths {
    Lengths(
        (0..s.d())
            .map(|a| x.at(s.image(Ext::b(a))) - x.at(Ext::b(a)))
            .collect(),
    )
}

fn check_dim<T>(v: &[T], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(IreError::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

pub(crate) fn lengths_from_endpoints_on(s: &Scheme, x: &Endpoints, side: Side) -> Result<Lengths> {
    check_dim(&x.0, 2 * s.d())?;
    let v = lengths_unchecked(s, x);
    for a in 0..s.d() {
        let other = x.at(Ext::e(a)) - x.at(s.image(Ext::e(a)));
        if other != v.0[a] {
            return Err(IreError::NotInEndpointSpace {
                side,
                label: s.label(a).to_string(),
            });
        }
    }
    Ok(v)
}

/// `v_α = x_{σ(αb)} − x_{αb} = x_{αe} − x_{σ(αe)}`
pub fn lengths_from_endpoints(s: &Scheme, x: &Endpoints) -> Result<Lengths> {
    lengths_from_endpoints_on(s, x, Side::Primal)
}

pub fn is_in_endpoint_space(s: &Scheme, x: &Endpoints) -> bool {
    lengths_from_endpoints(s, x).is_ok()
}

pub(crate) fn check_lengths_on(s: &Scheme, v: &Lengths, side: Side) -> Result<()> {
    check_dim(&v.0, s.d())?;
    for (cycle, row) in closure_matrix(s).iter().enumerate() {
        let total: Rational = row.iter().zip(&v.0).map(|(&c, x)| int(c) * x).sum();
        if !total.is_zero() {
            return Err(IreError::NotInLengthSpace { side, cycle });
        }
    }
    Ok(())
}

pub fn check_lengths(s: &Scheme, v: &Lengths) -> Result<()> {
    check_lengths_on(s, v, Side::Primal)
}

pub fn is_in_length_space(s: &Scheme, v: &Lengths) -> bool {
    check_lengths(s, v).is_ok()
}

/// Rebuilds endpoints from lengths and one anchor `(ξ, x_ξ)` per cycle.
pub fn endpoints_from_lengths(
    s: &Scheme,
    v: &Lengths,
    anchors: &[(Ext, Rational)],
) -> Result<Endpoints> {
    endpoints_from_lengths_on(s, v, anchors, Side::Primal)
}

pub(crate) fn endpoints_from_lengths_on(
    s: &Scheme,
    v: &Lengths,
    anchors: &[(Ext, Rational)],
    side: Side,
) -> Result<Endpoints> {
    check_lengths_on(s, v, side)?;
    let idx = s.cycle_index();
    let n = s.cycle_count();
    let mut chosen: Vec<Option<&(Ext, Rational)>> = vec![None; n];
    for anchor in anchors {
        if anchor.0.index() >= 2 * s.d() {
            return Err(IreError::DimensionMismatch {
                expected: 2 * s.d(),
                found: anchor.0.index() + 1,
            });
        }
        let c = idx[anchor.0.index()];
        if chosen[c].replace(anchor).is_some() {
            return Err(IreError::DuplicateAnchor(c));
        }
    }
    let mut x = vec![zero(); 2 * s.d()];
    for (c, anchor) in chosen.iter().enumerate() {
        let (start, value) = anchor.ok_or(IreError::MissingAnchor(c))?;
        let mut cur = *start;
        let mut val = value.clone();
        loop {
            x[cur.index()] = val.clone();
            let step = v.at(cur.letter());
            if cur.is_b() {
                val += step;
            } else {
                val -= step;
            }
            cur = s.image(cur);
            if cur == *start {
                break;
            }
        }
    }
    Ok(Endpoints(x))
}

/// Anchors every cycle's canonical first element at zero.
pub fn default_anchors(s: &Scheme) -> Vec<(Ext, Rational)> {
    s.cycles().cycles.iter().map(|c| (c[0], zero())).collect()
}

/// A positive IRE realized as beginning and ending intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IreRealization {
    pub lengths: Lengths,
    pub positive: bool,
    /// `I_{αb} = [x_{αb}, x_{σ(αb)})` per letter.
    pub beginning: Vec<(Rational, Rational)>,
    /// `I_{αe} = [x_{σ(αe)}, x_{αe})` per letter.
    pub ending: Vec<(Rational, Rational)>,
}

pub fn validate_ire(s: &Scheme, x: &Endpoints) -> Result<IreRealization> {
    let lengths = lengths_from_endpoints(s, x)?;
    let positive = lengths.is_positive();
    let beginning = (0..s.d())
        .map(|a| (x.at(Ext::b(a)).clone(), x.at(s.image(Ext::b(a))).clone()))
        .collect();
    let ending = (0..s.d())
        .map(|a| (x.at(s.image(Ext::e(a))).clone(), x.at(Ext::e(a)).clone()))
        .collect();
    Ok(IreRealization {
        lengths,
        positive,
        beginning,
        ending,
    })
}

/// A vector in `V_σ` with every entry at least one, if the scheme is positive.
///
/// Solves `C(1 + u) = 0, u ≥ 0` for the closure matrix `C`.
pub fn positive_lengths(s: &Scheme) -> Option<Lengths> {
    let d = s.d();
    let c = to_rational(&closure_matrix(s));
    let ones = vec![one(); d];
    let rhs: Vec<Rational> = linalg::mat_vec(&c, &ones).into_iter().map(|r| -r).collect();
    let u = linalg::nonnegative_solution(&c, &rhs, d)?;
    Some(Lengths(u.into_iter().map(|ui| ui + one()).collect()))
}
