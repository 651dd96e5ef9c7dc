//! Schemes: permutations of the doubled alphabet.
//!
//! A scheme over an alphabet of `d` labels permutes the `2d` extended labels
//! `αb`, `αe`. Labels are kept in sorted order and an extended label is stored
//! as the index `2·letter + marker`, so index order is "alphabet order, `b`
//! before `e`".

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{IreError, Result};

/// A validated label name over `[A-Za-z0-9_]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(IreError::InvalidLabel(name));
        }
        Ok(Label(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    B,
    E,
}

impl Marker {
    pub fn flip(self) -> Marker {
        match self {
            Marker::B => Marker::E,
            Marker::E => Marker::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Marker::B => 'b',
            Marker::E => 'e',
        }
    }
}

/// An element `αm` of the doubled alphabet, addressed by letter index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ext(usize);

impl Ext {
    pub fn new(letter: usize, marker: Marker) -> Ext {
        Ext(2 * letter + usize::from(marker == Marker::E))
    }

    pub fn b(letter: usize) -> Ext {
        Ext::new(letter, Marker::B)
    }

    pub fn e(letter: usize) -> Ext {
        Ext::new(letter, Marker::E)
    }

    pub fn from_index(i: usize) -> Ext {
        Ext(i)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn letter(self) -> usize {
        self.0 / 2
    }

    pub fn marker(self) -> Marker {
        if self.0 % 2 == 0 {
            Marker::B
        } else {
            Marker::E
        }
    }

    pub fn is_b(self) -> bool {
        self.marker() == Marker::B
    }

    /// The reflection `ι` swapping `αb` and `αe`.
    pub fn swapped(self) -> Ext {
        Ext(self.0 ^ 1)
    }
}

/// A sorted, duplicate-free list of labels shared between related schemes.
pub type Alphabet = Arc<Vec<Label>>;

pub fn make_alphabet<S: AsRef<str>>(names: &[S]) -> Result<Alphabet> {
    let mut labels = Vec::with_capacity(names.len());
    let mut seen = BTreeSet::new();
    for n in names {
        let l = Label::new(n.as_ref())?;
        if !seen.insert(l.clone()) {
            return Err(IreError::DuplicateLabel(l.0));
        }
        labels.push(l);
    }
    if labels.is_empty() {
        return Err(IreError::NotABijection("empty alphabet".into()));
    }
    labels.sort();
    Ok(Arc::new(labels))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scheme {
    alphabet: Alphabet,
    sigma: Vec<Ext>,
    inverse: Vec<Ext>,
}

impl Scheme {
    /// Builds a scheme from a permutation given as images in index order.
    pub fn from_images(alphabet: Alphabet, sigma: Vec<Ext>) -> Result<Scheme> {
        let n = 2 * alphabet.len();
        if sigma.len() != n {
            return Err(IreError::NotABijection(format!(
                "{} images for {} extended labels",
                sigma.len(),
                n
            )));
        }
        let mut inverse = vec![None; n];
        for (i, &img) in sigma.iter().enumerate() {
            if img.index() >= n {
                return Err(IreError::NotABijection(format!(
                    "image index {} out of range",
                    img.index()
                )));
            }
            if inverse[img.index()].is_some() {
                let s = ext_name_in(&alphabet, img);
                return Err(IreError::NotABijection(format!(
                    "{s} has more than one preimage"
                )));
            }
            inverse[img.index()] = Some(Ext(i));
        }
        let inverse = inverse.into_iter().map(|e| e.expect("counted")).collect();
        Ok(Scheme {
            alphabet,
            sigma,
            inverse,
        })
    }

    /// Builds a scheme from named labels and named `(from, to)` pairs such as `("a.b", "b.b")`.
    pub fn from_mapping<S: AsRef<str>>(labels: &[S], mapping: &[(&str, &str)]) -> Result<Scheme> {
        let alphabet = make_alphabet(labels)?;
        let n = 2 * alphabet.len();
        let mut sigma: Vec<Option<Ext>> = vec![None; n];
        for (from, to) in mapping {
            let f = parse_ext_in(&alphabet, from)?;
            let t = parse_ext_in(&alphabet, to)?;
            if sigma[f.index()].replace(t).is_some() {
                return Err(IreError::NotABijection(format!("{from} mapped twice")));
            }
        }
        let mut images = Vec::with_capacity(n);
        for (i, img) in sigma.into_iter().enumerate() {
            match img {
                Some(e) => images.push(e),
                None => {
                    return Err(IreError::NotABijection(format!(
                        "{} has no image",
                        ext_name_in(&alphabet, Ext(i))
                    )))
                }
            }
        }
        Scheme::from_images(alphabet, images)
    }

    /// Builds a scheme from its cycles; every extended label must occur exactly once.
    pub fn from_cycles(alphabet: Alphabet, cycles: &[Vec<Ext>]) -> Result<Scheme> {
        let n = 2 * alphabet.len();
        let mut sigma: Vec<Option<Ext>> = vec![None; n];
        for cyc in cycles {
            for (k, &e) in cyc.iter().enumerate() {
                if e.index() >= n {
                    return Err(IreError::NotABijection(format!(
                        "index {} out of range",
                        e.index()
                    )));
                }
                let next = cyc[(k + 1) % cyc.len()];
                if sigma[e.index()].replace(next).is_some() {
                    return Err(IreError::NotABijection(format!(
                        "{} occurs twice",
                        ext_name_in(&alphabet, e)
                    )));
                }
            }
        }
        let mut images = Vec::with_capacity(n);
        for (i, img) in sigma.into_iter().enumerate() {
            images.push(img.ok_or_else(|| {
                IreError::NotABijection(format!(
                    "{} does not occur",
                    ext_name_in(&alphabet, Ext(i))
                ))
            })?);
        }
        Scheme::from_images(alphabet, images)
    }

    pub fn d(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn label(&self, letter: usize) -> &Label {
        &self.alphabet[letter]
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.alphabet
            .binary_search_by(|l| l.as_str().cmp(name))
            .map_err(|_| IreError::UnknownLabel(name.to_string()))
    }

    /// Resolves a token such as `a.b`.
    pub fn ext(&self, token: &str) -> Result<Ext> {
        parse_ext_in(&self.alphabet, token)
    }

    pub fn ext_name(&self, e: Ext) -> String {
        ext_name_in(&self.alphabet, e)
    }

    pub fn exts(&self) -> impl Iterator<Item = Ext> {
        (0..2 * self.d()).map(Ext)
    }

    /// `σ(ξ)`
    pub fn image(&self, e: Ext) -> Ext {
        self.sigma[e.index()]
    }

    /// `σ⁻¹(ξ)`
    pub fn preimage(&self, e: Ext) -> Ext {
        self.inverse[e.index()]
    }

    pub fn images(&self) -> &[Ext] {
        &self.sigma
    }

    /// Canonical cycle decomposition.
    pub fn cycles(&self) -> CycleDecomposition {
        let n = 2 * self.d();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // Scanning in index order starts every cycle at its minimal element
        // and emits cycles sorted by that element.
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = Ext(start);
            while !seen[cur.index()] {
                seen[cur.index()] = true;
                cyc.push(cur);
                cur = self.image(cur);
            }
            cycles.push(cyc);
        }
        CycleDecomposition { cycles }
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Index of the cycle containing each extended label.
    pub fn cycle_index(&self) -> Vec<usize> {
        let mut idx = vec![0; 2 * self.d()];
        for (i, c) in self.cycles().cycles.iter().enumerate() {
            for e in c {
                idx[e.index()] = i;
            }
        }
        idx
    }

    pub fn turns(&self) -> TurnsReport {
        let mut turns_back = Vec::new();
        let mut turns_forward = Vec::new();
        let mut per_cycle_twists = Vec::new();
        for cyc in &self.cycles().cycles {
            let mut back = 0i64;
            for &e in cyc {
                let next = self.image(e);
                match (e.marker(), next.marker()) {
                    (Marker::B, Marker::E) => {
                        back += 1;
                        turns_back.push(next);
                    }
                    (Marker::E, Marker::B) => turns_forward.push(next),
                    _ => {}
                }
            }
            per_cycle_twists.push(back - 1);
        }
        let total = per_cycle_twists.iter().sum();
        TurnsReport {
            turns_back,
            turns_forward,
            per_cycle_twists,
            total,
        }
    }

    /// `T(σ)`
    pub fn twists(&self) -> i64 {
        self.turns().total
    }

    /// Finest partition of the alphabet into σ-invariant parts.
    pub fn irreducible_components(&self) -> ComponentPartition {
        let d = self.d();
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.exts() {
            let a = find(&mut parent, e.letter());
            let b = find(&mut parent, self.image(e).letter());
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; d];
        for letter in 0..d {
            let r = find(&mut parent, letter);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(letter);
        }
        ComponentPartition { components: groups }
    }

    /// The duality involution `Iσ = σ∘ι`.
    pub fn dual(&self) -> Scheme {
        let sigma: Vec<Ext> = self.exts().map(|e| self.image(e.swapped())).collect();
        Scheme::from_images(self.alphabet.clone(), sigma).expect("σ∘ι is a permutation")
    }

    /// `T(σ) + T(Iσ)`, after checking the balance identity and evenness.
    pub fn twists_total(&self) -> Result<i64> {
        let dual = self.dual();
        let (t, td) = (self.twists(), dual.twists());
        let (n, nd) = (self.cycle_count() as i64, dual.cycle_count() as i64);
        if t + td + n + nd != self.d() as i64 {
            return Err(IreError::InternalInvariantViolation(format!(
                "T+T*+N+N* = {}+{}+{}+{} differs from d = {}",
                t,
                td,
                n,
                nd,
                self.d()
            )));
        }
        let total = t + td;
        if total % 2 != 0 {
            return Err(IreError::InternalInvariantViolation(format!(
                "odd twists total {total}"
            )));
        }
        Ok(total)
    }

    /// Genus of the associated translation surfaces.
    pub fn genus(&self) -> Result<i64> {
        Ok(self.twists_total()? / 2 + 1)
    }

    /// True when every cycle splits into one arc of beginnings and one of endings.
    pub fn is_iet(&self) -> bool {
        let cycles = self.cycles();
        let mut back = vec![0usize; cycles.len()];
        let idx = self.cycle_index();
        for e in self.exts() {
            if e.is_b() && !self.image(e).is_b() {
                back[idx[e.index()]] += 1;
            }
        }
        back.iter().all(|&b| b == 1)
    }

    /// Whether the scheme allows lengths with every entry positive.
    pub fn is_positive(&self) -> bool {
        crate::realdata::positive_lengths(self).is_some()
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in &self.cycles().cycles {
            f.write_str("(")?;
            for (k, &e) in cyc.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(&self.ext_name(e))?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<Ext>>,
}

impl CycleDecomposition {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnsReport {
    /// Sites `βe` with `σ(αb) = βe`.
    pub turns_back: Vec<Ext>,
    /// Sites `αb` with `σ(βe) = αb`.
    pub turns_forward: Vec<Ext>,
    pub per_cycle_twists: Vec<i64>,
    pub total: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Letter indices, each part sorted, parts sorted by first letter.
    pub components: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

pub(crate) fn ext_name_in(alphabet: &[Label], e: Ext) -> String {
    format!("{}.{}", alphabet[e.letter()], e.marker().as_char())
}

pub(crate) fn parse_ext_in(alphabet: &[Label], token: &str) -> Result<Ext> {
    let (name, marker) = token
        .rsplit_once('.')
        .ok_or_else(|| IreError::UnknownLabel(token.to_string()))?;
    let marker = match marker {
        "b" => Marker::B,
        "e" => Marker::E,
        _ => return Err(IreError::UnknownLabel(token.to_string())),
    };
    let letter = alphabet
        .binary_search_by(|l| l.as_str().cmp(name))
        .map_err(|_| IreError::UnknownLabel(name.to_string()))?;
    Ok(Ext::new(letter, marker))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_scheme;

    fn s0() -> Scheme {
        parse_scheme("(a.b b.b g.b d.b a.e b.e g.e d.e)").unwrap()
    }

    #[test]
    fn make_scheme_examples() {
        let s = Scheme::from_mapping(
            &["a", "b", "g", "d"],
            &[
                ("a.b", "b.b"),
                ("b.b", "g.b"),
                ("g.b", "d.b"),
                ("d.b", "a.e"),
                ("a.e", "b.e"),
                ("b.e", "g.e"),
                ("g.e", "d.e"),
                ("d.e", "a.b"),
            ],
        )
        .unwrap();
        assert_eq!(s, s0());
        let s2 = Scheme::from_mapping(&["a"], &[("a.b", "a.e"), ("a.e", "a.b")]).unwrap();
        assert_eq!(s2.cycle_count(), 1);
        let err = Scheme::from_mapping(
            &["a", "b"],
            &[
                ("a.b", "b.b"),
                ("a.e", "b.b"),
                ("b.b", "a.b"),
                ("b.e", "b.e"),
            ],
        );
        assert!(matches!(err, Err(IreError::NotABijection(_))));
        assert!(matches!(
            Scheme::from_mapping(&["a", "a"], &[]),
            Err(IreError::DuplicateLabel(_))
        ));
        assert!(matches!(
            Scheme::from_mapping(&["a"], &[("a.b", "z.e"), ("a.e", "a.b")]),
            Err(IreError::UnknownLabel(_))
        ));
        assert!(matches!(
            Scheme::from_mapping(&["a"], &[("a.b", "a.e")]),
            Err(IreError::NotABijection(_))
        ));
    }

    #[test]
    fn cycles_examples() {
        assert_eq!(s0().cycle_count(), 1);
        assert_eq!(s0().cycles().cycles[0].len(), 8);
        let s3 = parse_scheme("(a.b a.e)(b.b b.e)").unwrap();
        assert_eq!(s3.cycle_count(), 2);
        let s2 = parse_scheme("(a.b a.e)").unwrap();
        let dual = s2.dual();
        assert_eq!(dual.cycles().cycles, vec![vec![Ext::b(0)], vec![Ext::e(0)]]);
    }

    #[test]
    fn canonical_rotation_and_order() {
        let s = parse_scheme("(b.e b.b)(a.e g.b a.b g.e)").unwrap();
        assert_eq!(s.to_string(), "(a.b g.e a.e g.b)(b.b b.e)");
    }

    #[test]
    fn turns_examples() {
        let s = s0();
        let t = s.turns();
        assert_eq!(t.turns_back, vec![s.ext("a.e").unwrap()]);
        assert_eq!(t.turns_forward, vec![s.ext("a.b").unwrap()]);
        assert_eq!(t.total, 0);

        let dual = s.dual();
        assert_eq!(
            dual,
            parse_scheme("(a.b b.e g.b d.e a.e b.b g.e d.b)").unwrap()
        );
        let td = dual.turns();
        assert_eq!(td.turns_back.len(), 3);
        assert_eq!(td.turns_forward.len(), 3);
        assert_eq!(td.total, 2);

        let s2d = parse_scheme("(a.b)(a.e)").unwrap();
        let t = s2d.turns();
        assert!(t.turns_back.is_empty() && t.turns_forward.is_empty());
        assert_eq!(t.per_cycle_twists, vec![-1, -1]);
        assert_eq!(t.total, -2);
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            s0().irreducible_components().components,
            vec![vec![0, 1, 2, 3]]
        );
        let s3 = parse_scheme("(a.b a.e)(b.b b.e)").unwrap();
        assert_eq!(
            s3.irreducible_components().components,
            vec![vec![0], vec![1]]
        );
        let s = parse_scheme("(a.b c.e)(c.b a.e)(b.b b.e)").unwrap();
        assert_eq!(
            s.irreducible_components().components,
            vec![vec![0, 2], vec![1]]
        );
        assert_eq!(
            s.irreducible_components(),
            s.dual().irreducible_components()
        );
    }

    #[test]
    fn dual_examples() {
        let s2 = parse_scheme("(a.b a.e)").unwrap();
        assert_eq!(s2.dual(), parse_scheme("(a.b)(a.e)").unwrap());
        assert_eq!(s0().dual().dual(), s0());
    }

    #[test]
    fn twists_total_and_genus() {
        assert_eq!(s0().twists_total().unwrap(), 2);
        assert_eq!(s0().genus().unwrap(), 2);
        let s1 = parse_scheme("(a.b b.b a.e b.e)").unwrap();
        assert_eq!(s1.twists_total().unwrap(), 0);
        assert_eq!(s1.genus().unwrap(), 1);
        let s2 = parse_scheme("(a.b a.e)").unwrap();
        assert_eq!(s2.twists_total().unwrap(), -2);
        let dual = s2.dual();
        assert_eq!(
            s2.twists() + dual.twists() + s2.cycle_count() as i64 + dual.cycle_count() as i64,
            1
        );
    }

    #[test]
    fn positivity_examples() {
        assert!(s0().is_positive());
        assert!(!parse_scheme("(a.b)(a.e)").unwrap().is_positive());
        assert!(parse_scheme("(a.b a.e)(b.b b.e)").unwrap().is_positive());
    }

    #[test]
    fn label_validation() {
        assert!(Label::new("x_1").is_ok());
        assert!(Label::new("").is_err());
        assert!(Label::new("a.b").is_err());
    }
}
