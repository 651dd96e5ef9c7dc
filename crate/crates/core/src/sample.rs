//! Scheme enumeration and seeded random data for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::extension::{make_extension, NaturalExtension};
use crate::rational::{int, Rational};
use crate::realdata::{
    endpoints_from_lengths, length_space_basis, positive_lengths, Endpoints, Lengths,
};
use crate::scheme::{make_alphabet, Alphabet, Ext, Scheme};
use crate::two_row::TwoRowIet;

const NAMES: [&str; 12] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

pub fn alphabet(d: usize) -> Alphabet {
    assert!(d >= 1 && d <= NAMES.len(), "alphabet size {d} out of range");
    make_alphabet(&NAMES[..d]).expect("fixed names are valid")
}

/// All `(2d)!` schemes over the first `d` letters.
pub fn all_schemes(d: usize) -> Vec<Scheme> {
    let abc = alphabet(d);
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..2 * d).collect();
    permute(&mut perm, 0, &mut |p| {
        let images = p.iter().map(|&i| Ext::from_index(i)).collect();
        out.push(Scheme::from_images(abc.clone(), images).expect("a permutation is a scheme"));
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn random_scheme<R: Rng>(rng: &mut R, d: usize) -> Scheme {
    let mut images: Vec<Ext> = (0..2 * d).map(Ext::from_index).collect();
    images.shuffle(rng);
    Scheme::from_images(alphabet(d), images).expect("a permutation is a scheme")
}

/// A uniformly random scheme with both `σ` and `Iσ` positive.
pub fn random_bipositive_scheme<R: Rng>(rng: &mut R, d: usize) -> Scheme {
    loop {
        let s = random_scheme(rng, d);
        if s.is_positive() && s.dual().is_positive() {
            return s;
        }
    }
}

/// Random rational in `[-1, 1]` with denominator 1000.
pub fn random_unit<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-1000..=1000).into(), 1000.into())
}

/// A random strictly positive vector of `V_σ`, or `None` if `σ` is not positive.
///
/// Moves a positive base point by a random combination of basis vectors, then
/// pushes back along the base point just far enough to stay positive.
pub fn random_positive_lengths<R: Rng>(rng: &mut R, s: &Scheme) -> Option<Lengths> {
    let base = positive_lengths(s)?;
    let basis = length_space_basis(s).ok()?;
    let d = s.d();
    let mut u = vec![int(0); d];
    for b in &basis.vectors {
        let r = random_unit(rng) * int(4);
        for (ui, bi) in u.iter_mut().zip(b) {
            *ui += &r * bi;
        }
    }
    let need = (0..d)
        .map(|a| -&u[a] / base.at(a))
        .max()
        .unwrap_or_else(|| int(0))
        .max(int(0));
    let t = need + Rational::new(rng.gen_range(1..=100).into(), 100.into());
    let v = Lengths((0..d).map(|a| &t * base.at(a) + &u[a]).collect());
    debug_assert!(v.is_positive());
    Some(v)
}

fn random_anchors<R: Rng>(rng: &mut R, s: &Scheme) -> Vec<(Ext, Rational)> {
    s.cycles()
        .cycles
        .iter()
        .map(|c| (c[rng.gen_range(0..c.len())], random_unit(rng) * int(10)))
        .collect()
}

pub fn random_endpoints<R: Rng>(rng: &mut R, s: &Scheme, v: &Lengths) -> Result<Endpoints> {
    let anchors = random_anchors(rng, s);
    endpoints_from_lengths(s, v, &anchors)
}

/// A random natural extension with both sides positive.
pub fn random_positive_extension<R: Rng>(rng: &mut R, d: usize) -> NaturalExtension {
    let s = random_bipositive_scheme(rng, d);
    let dual = s.dual();
    let v = random_positive_lengths(rng, &s).expect("scheme is positive");
    let w = random_positive_lengths(rng, &dual).expect("dual is positive");
    let x = random_endpoints(rng, &s, &v).expect("lengths lie in V");
    let y = random_endpoints(rng, &dual, &w).expect("lengths lie in V");
    make_extension(&s, x, y).expect("endpoints lie in X")
}

/// A single-bracket IET `[π_b / π_e]` with a random lower row.
pub fn random_single_bracket<R: Rng>(rng: &mut R, d: usize) -> TwoRowIet {
    let top: Vec<&str> = NAMES[..d].to_vec();
    let mut bottom = top.clone();
    bottom.shuffle(rng);
    TwoRowIet::new(vec![(top, bottom)]).expect("rows share their labels")
}
