//! Rauzy classes: closure of a scheme under induction steps and their inverses.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{IreError, Result};
use crate::scheme::Scheme;

use super::{
    applicable_steps, apply_step_scheme, image_steps, invert_step_scheme, InductionStep, StepKind,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyClass {
    /// Members sorted by canonical text.
    pub schemes: Vec<Scheme>,
    /// `(from, step, to)` triples, sorted and without duplicates; no-op steps
    /// appear as self-loops.
    pub edges: Vec<(Scheme, InductionStep, Scheme)>,
    pub truncated: bool,
}

impl RauzyClass {
    pub fn non_loop_edges(&self) -> usize {
        self.edges.iter().filter(|(a, _, b)| a != b).count()
    }

    /// One `from -> to [label=step]` line per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph rauzy {\n");
        for (a, st, b) in &self.edges {
            out.push_str(&format!("  \"{a}\" -> \"{b}\" [label=\"{st}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Closure under every step and every inverse step.
pub fn rauzy_class(seed: &Scheme, max_size: usize) -> Result<RauzyClass> {
    rauzy_class_with(seed, max_size, &StepKind::ALL, true)
}

/// Closure restricted to the given step kinds, optionally with their inverses.
///
/// Frontiers are processed in canonical text order, so the result does not
/// depend on hashing or scheduling.
pub fn rauzy_class_with(
    seed: &Scheme,
    max_size: usize,
    kinds: &[StepKind],
    inverses: bool,
) -> Result<RauzyClass> {
    if max_size == 0 {
        return Err(IreError::Document("max_size must be at least 1".into()));
    }
    let mut seen: BTreeMap<String, Scheme> = BTreeMap::new();
    let mut edges: BTreeSet<(String, InductionStep, String)> = BTreeSet::new();
    let mut truncated = false;
    seen.insert(seed.to_string(), seed.clone());
    let mut frontier = vec![seed.clone()];

    while !frontier.is_empty() {
        let mut next: BTreeMap<String, Scheme> = BTreeMap::new();
        for s in &frontier {
            let mut found: Vec<(Scheme, InductionStep, Scheme)> = Vec::new();
            for st in applicable_steps(s)
                .into_iter()
                .filter(|st| kinds.contains(&st.kind()))
            {
                let t = apply_step_scheme(s, &st)?;
                found.push((s.clone(), st, t));
            }
            if inverses {
                for st in image_steps(s)
                    .into_iter()
                    .filter(|st| kinds.contains(&st.kind()))
                {
                    let pre = invert_step_scheme(s, &st)?;
                    found.push((pre, st, s.clone()));
                }
            }
            for (from, st, to) in found {
                for member in [&from, &to] {
                    let key = member.to_string();
                    if seen.contains_key(&key) || next.contains_key(&key) {
                        continue;
                    }
                    if seen.len() + next.len() >= max_size {
                        truncated = true;
                        continue;
                    }
                    next.insert(key, member.clone());
                }
                let (fk, tk) = (from.to_string(), to.to_string());
                let known = |k: &String| seen.contains_key(k) || next.contains_key(k);
                if known(&fk) && known(&tk) {
                    edges.insert((fk, st, tk));
                }
            }
        }
        frontier = next.values().cloned().collect();
        seen.extend(next);
    }

    let schemes: Vec<Scheme> = seen.values().cloned().collect();
    verify_class_invariants(seed, &schemes)?;
    let edges = edges
        .into_iter()
        .map(|(a, st, b)| (seen[&a].clone(), st, seen[&b].clone()))
        .collect();
    Ok(RauzyClass {
        schemes,
        edges,
        truncated,
    })
}

fn verify_class_invariants(seed: &Scheme, members: &[Scheme]) -> Result<()> {
    let n = seed.cycle_count();
    let parts = seed.irreducible_components();
    let total = seed.twists_total()?;
    for s in members {
        if s.cycle_count() != n || s.irreducible_components() != parts || s.twists_total()? != total
        {
            return Err(IreError::InternalInvariantViolation(format!(
                "class member {s} differs from seed {seed} in N, components or twists total"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_scheme;

    #[test]
    fn trivial_classes() {
        let s2 = parse_scheme("(a.b a.e)").unwrap();
        let c = rauzy_class(&s2, 100).unwrap();
        assert_eq!(c.schemes, vec![s2]);
        assert_eq!(c.non_loop_edges(), 0);

        let s1 = parse_scheme("(a.b b.b a.e b.e)").unwrap();
        let c = rauzy_class(&s1, 100).unwrap();
        assert_eq!(c.schemes, vec![s1.clone()]);
        assert_eq!(c.edges.len(), 4);
        assert!(c.edges.iter().all(|(a, _, b)| a == &s1 && b == &s1));
    }

    #[test]
    fn s0_class_is_consistent_and_truncates() {
        let s0 = parse_scheme("(a.b b.b g.b d.b a.e b.e g.e d.e)").unwrap();
        let c = rauzy_class(&s0, 10_000).unwrap();
        assert!(!c.truncated);
        assert!(c.schemes.contains(&s0));
        for (a, st, b) in &c.edges {
            assert_eq!(&apply_step_scheme(a, st).unwrap(), b);
        }
        let small = rauzy_class(&s0, 3).unwrap();
        assert!(small.truncated);
        assert_eq!(small.schemes.len(), 3);
        assert!(c.to_dot().starts_with("digraph"));
    }
}
