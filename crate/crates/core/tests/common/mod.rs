//! Acceptance criteria as reusable checks. Each returns a one-line summary on
//! success and the first failure otherwise.
#![allow(dead_code)]

use std::time::Instant;

use ire::extension::apply_positive_step_floating;
use ire::gluing::{glue_ire, BranchRule};
use ire::induction::oracle::{classical_rv_step, two_row_crop_step, CropKind, CropStep};
use ire::induction::{
    applicable_positive_steps, applicable_steps, apply_positive_step_lengths, apply_step,
    apply_step_lengths, apply_step_scheme, check_positive_step, image_steps, invert_step,
    invert_step_lengths, invert_step_scheme, InductionStep,
};
use ire::io::analyze;
use ire::linalg::{rank, rank_fraction_free};
use ire::rational::{int, Rational};
use ire::realdata::{delta_matrix, endpoint_space_basis, length_space_basis, Endpoints, Lengths};
use ire::sample::{
    all_schemes, random_positive_extension, random_scheme, random_single_bracket, random_unit,
};
use ire::scheme::Scheme;
use ire::surface::{build_surface, first_return_check};
use ire::two_row::from_two_row;
use ire::verify::duality_conjugacy_holds;
use ire::worked;
use ire::IreError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn err(e: IreError) -> String {
    e.to_string()
}

fn ext_name_pairs(t: &ire::GluedTree) -> Vec<String> {
    let s = &t.scheme;
    let mut out: Vec<String> = t
        .pairings
        .iter()
        .map(|p| {
            format!(
                "{}-{}[{},{}]",
                s.ext_name(p.from),
                s.ext_name(p.to),
                p.lo,
                p.hi
            )
        })
        .collect();
    out.sort();
    out
}

/// The nine pairings of the dual tree, written independently from the
/// ordering `y_db < y_bb < y_ge < y_ae < y_ab < y_gb < y_be < y_de` with
/// branch points `c1 ∈ (y_ab, y_de)` and `c2 ∈ (y_bb, y_gb)`.
pub fn expected_dual_pairings(
    y: &dyn Fn(&str) -> Rational,
    c1: &Rational,
    c2: &Rational,
) -> Vec<String> {
    let mut v: Vec<String> = [
        ("a.b", "b.e", c1.clone(), y("b.e")),
        ("g.b", "b.e", y("g.b"), c1.clone()),
        ("b.b", "g.e", c2.clone(), y("g.e")),
        ("b.b", "a.e", y("b.b"), c2.clone()),
        ("d.b", "g.e", y("d.b"), c2.clone()),
        ("d.b", "a.e", c2.clone(), y("a.e")),
        ("d.b", "d.e", y("a.e"), y("a.b")),
        ("a.b", "d.e", y("a.b"), c1.clone()),
        ("g.b", "d.e", c1.clone(), y("d.e")),
    ]
    .into_iter()
    .map(|(f, t, lo, hi)| format!("{f}-{t}[{lo},{hi}]"))
    .collect();
    v.sort();
    v
}

pub fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s0 = worked::s0();
    let r = analyze(&s0).map_err(err)?;
    ensure!(
        r.twists == 0 && r.dual_twists == 2 && r.twists_total == 2 && r.genus == 2,
        "S0 report: T={} T*={} total={} genus={}",
        r.twists,
        r.dual_twists,
        r.twists_total,
        r.genus
    );

    let e = worked::worked_example();
    let dual = s0.dual();
    let yv = |n: &str| e.y.at(dual.ext(n).unwrap()).clone();
    let order = ["d.b", "b.b", "g.e", "a.e", "a.b", "g.b", "b.e", "d.e"];
    ensure!(
        order.windows(2).all(|w| yv(w[0]) < yv(w[1])),
        "worked dual endpoints do not follow the stated ordering"
    );
    let tree = glue_ire(&dual, &e.y, &BranchRule::Midpoint).map_err(err)?;
    let coords: Vec<Rational> = tree
        .branch_points
        .iter()
        .map(|b| b.coordinate.clone())
        .collect();
    ensure!(
        coords.len() == 2,
        "expected two branch points, got {}",
        coords.len()
    );
    let (c1, c2) = (&coords[0], &coords[1]);
    ensure!(
        yv("a.b") < *c1 && *c1 < yv("d.e") && yv("b.b") < *c2 && *c2 < yv("g.b"),
        "branch points {c1}, {c2} are not interior to the stated ranges"
    );
    let got = ext_name_pairs(&tree);
    let want = expected_dual_pairings(&yv, c1, c2);
    ensure!(got == want, "pairings {got:?} differ from {want:?}");

    let surf = build_surface(&e, &BranchRule::Midpoint, &BranchRule::Midpoint).map_err(err)?;
    let angles: Vec<u64> = surf.cone_points.iter().map(|c| c.angle_pi).collect();
    ensure!(angles == [4, 4], "cone angles {angles:?}·π");
    ensure!(surf.euler.chi == -2, "χ = {}", surf.euler.chi);
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    Ok(format!(
        "T=0, T*=2, genus 2, nine pairings, cone angles 4π+4π, χ=-2 in {:.0} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

pub fn identities_hold(s: &Scheme) -> Result<(), String> {
    let d = s.d();
    let dual = s.dual();
    let (t, ts) = (s.turns(), dual.turns());
    ensure!(
        t.turns_back.len() + ts.turns_back.len() == d,
        "{s}: turns back do not sum to d"
    );
    let (n, ns) = (s.cycle_count(), dual.cycle_count());
    ensure!(
        t.total + ts.total + (n + ns) as i64 == d as i64,
        "{s}: T + T* + N + N* != d"
    );
    ensure!(
        (n + ns) % 2 == d % 2 && (t.total + ts.total) % 2 == 0,
        "{s}: parity fails"
    );
    ensure!(dual.dual() == *s, "{s}: dual is not an involution");
    let parts = s.irreducible_components();
    ensure!(
        dual.irreducible_components() == parts,
        "{s}: components differ under duality"
    );
    Ok(())
}

pub fn dimensions_hold(s: &Scheme) -> Result<(), String> {
    let d = s.d();
    let p = s.irreducible_components().count();
    let delta = delta_matrix(s);
    let ints: Vec<Vec<i64>> = delta
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|a| a.to_integer().try_into().unwrap())
                .collect()
        })
        .collect();
    let bareiss = rank_fraction_free(&ints);
    ensure!(
        2 * d - bareiss == d + p,
        "{s}: kernel dimension {} != d+P",
        2 * d - bareiss
    );
    ensure!(rank(&delta.rows, 2 * d) == bareiss, "{s}: ranks disagree");
    let x = endpoint_space_basis(s).map_err(err)?;
    ensure!(x.dim == d + p, "{s}: dim X = {}", x.dim);
    let v = length_space_basis(s).map_err(err)?;
    ensure!(v.dim + s.cycle_count() == d + p, "{s}: dim V = {}", v.dim);
    Ok(())
}

pub fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for d in 1..=3 {
        for s in all_schemes(d) {
            identities_hold(&s)?;
            dimensions_hold(&s)?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    Ok(format!(
        "{count} schemes (d ≤ 3), zero failures in {:.1} s",
        elapsed.as_secs_f64()
    ))
}

pub fn criterion_3() -> Outcome {
    let mut exhaustive = 0;
    for d in 2..=3 {
        for s in all_schemes(d) {
            for st in applicable_steps(&s) {
                ensure!(duality_conjugacy_holds(&s, &st).map_err(err)?, "{s} {st}");
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e0);
    let mut random = 0;
    let mut kinds = [0usize; 4];
    while random < 10_000 {
        let d = rng.gen_range(4..=7);
        let s = random_scheme(&mut rng, d);
        let steps = applicable_steps(&s);
        if steps.is_empty() {
            continue;
        }
        let st = &steps[rng.gen_range(0..steps.len())];
        ensure!(duality_conjugacy_holds(&s, st).map_err(err)?, "{s} {st}");
        kinds[st.kind() as usize] += 1;
        random += 1;
    }
    ensure!(
        kinds.iter().all(|&k| k > 0),
        "not every step kind was exercised"
    );
    Ok(format!(
        "{exhaustive} exhaustive (d ≤ 3) and {random} random (d = 4..7) cases, zero failures"
    ))
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut out = vec![int(0); n];
    for b in basis {
        let r = random_unit(rng) * int(7);
        for (o, bi) in out.iter_mut().zip(b) {
            *o += &r * bi;
        }
    }
    out
}

/// Round trips on schemes plus bijectivity of the endpoint and length maps.
pub fn step_is_bijective(
    s: &Scheme,
    st: &InductionStep,
    rng: &mut ChaCha8Rng,
) -> Result<(), String> {
    let t = apply_step_scheme(s, st).map_err(err)?;
    ensure!(
        invert_step_scheme(&t, st).map_err(err)? == *s,
        "{s} {st}: invert∘apply"
    );
    ensure!(
        apply_step_scheme(&invert_step_scheme(&t, st).map_err(err)?, st).map_err(err)? == t,
        "{s} {st}: apply∘invert"
    );

    let xb = endpoint_space_basis(s).map_err(err)?;
    let xt = endpoint_space_basis(&t).map_err(err)?;
    let images: Vec<Vec<Rational>> = xb
        .vectors
        .iter()
        .map(|x| apply_step(s, &Endpoints(x.clone()), st).map(|(_, y)| y.0))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure!(
        rank(&images, 2 * s.d()) == xb.dim && xb.dim == xt.dim,
        "{s} {st}: endpoint map is not onto"
    );
    let vb = length_space_basis(s).map_err(err)?;
    let vt = length_space_basis(&t).map_err(err)?;
    let images: Vec<Vec<Rational>> = vb
        .vectors
        .iter()
        .map(|v| apply_step_lengths(s, &Lengths(v.clone()), st).map(|(_, w)| w.0))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure!(
        rank(&images, s.d()) == vb.dim && vb.dim == vt.dim,
        "{s} {st}: length map is not onto"
    );

    let x = Endpoints(random_combination(rng, &xb.vectors, 2 * s.d()));
    let (t2, x2) = apply_step(s, &x, st).map_err(err)?;
    ensure!(
        invert_step(&t2, &x2, st).map_err(err)? == (s.clone(), x),
        "{s} {st}: endpoint round trip"
    );
    let y = Endpoints(random_combination(rng, &xt.vectors, 2 * s.d()));
    let (s2, y2) = invert_step(&t, &y, st).map_err(err)?;
    ensure!(
        apply_step(&s2, &y2, st).map_err(err)? == (t.clone(), y),
        "{s} {st}: inverse endpoint round trip"
    );
    let v = Lengths(random_combination(rng, &vb.vectors, s.d()));
    let (t3, v3) = apply_step_lengths(s, &v, st).map_err(err)?;
    ensure!(
        invert_step_lengths(&t3, &v3, st).map_err(err)? == (s.clone(), v),
        "{s} {st}: length round trip"
    );
    Ok(())
}

pub fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4);
    let mut cases = 0;
    for d in 2..=3 {
        for s in all_schemes(d) {
            for st in applicable_steps(&s) {
                step_is_bijective(&s, &st, &mut rng)?;
                cases += 1;
            }
            for st in image_steps(&s) {
                let pre = invert_step_scheme(&s, &st).map_err(err)?;
                ensure!(
                    apply_step_scheme(&pre, &st).map_err(err)? == s,
                    "{s} {st}: apply∘invert"
                );
            }
        }
    }
    for d in 4..=5 {
        for _ in 0..300 {
            let s = random_scheme(&mut rng, d);
            for st in applicable_steps(&s) {
                step_is_bijective(&s, &st, &mut rng)?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (scheme, step) cases with d ≤ 5, zero failures"
    ))
}

pub fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5);
    let (mut sequences, mut restarts) = (0, 0);
    while sequences < 100 {
        let d = 2 + sequences % 5;
        let e = random_positive_extension(&mut rng, d).floating();
        let total = e.scheme.twists_total().map_err(err)?;
        let area = e.area();
        let mut cur = e;
        let mut steps = 0;
        while steps < 50 {
            let options = applicable_positive_steps(&cur.scheme, &cur.v)
                .map_err(err)?
                .steps;
            if options.is_empty() {
                break;
            }
            let st = &options[rng.gen_range(0..options.len())];
            cur = apply_positive_step_floating(&cur, st).map_err(err)?;
            ensure!(
                cur.scheme.twists_total().map_err(err)? == total,
                "twists total changed at {st}"
            );
            ensure!(cur.area() == area, "area changed at {st}");
            ensure!(cur.is_positive(), "positivity lost at {st}");
            steps += 1;
        }
        if steps == 50 {
            sequences += 1;
        } else {
            restarts += 1;
        }
    }
    Ok(format!(
        "{sequences} sequences of 50 steps (d = 2..6), exact invariance; {restarts} stuck starts redrawn"
    ))
}

/// Classical step, right crop and scheme step on one single-bracket IET.
pub fn oracles_agree(t: &ire::two_row::TwoRowIet, v: &Lengths) -> Result<bool, String> {
    let (upper, lower) = &t.brackets()[0];
    let (alpha, beta) = (upper.last().unwrap().clone(), lower.last().unwrap().clone());
    let classical = classical_rv_step(t, v);
    let labels = t.labels();
    let at = |l: &ire::Label| v.at(labels.binary_search(l).unwrap()).clone();
    if alpha == beta || at(&alpha) == at(&beta) {
        ensure!(
            matches!(classical, Err(IreError::TieDetected { .. })),
            "{t}: classical step should report a tie"
        );
        return Ok(false);
    }
    let (t1, v1) = classical.map_err(err)?;
    let kind = if at(&alpha) > at(&beta) {
        CropKind::RPlus
    } else {
        CropKind::RMinus
    };
    let crop = CropStep::new(kind, alpha, beta).map_err(err)?;
    let (t2, v2, _) = two_row_crop_step(t, v, &[int(0)], &crop).map_err(err)?;
    ensure!(
        (&t1, &v1) == (&t2, &v2),
        "{t} {crop}: classical and crop disagree"
    );
    let s = from_two_row(t);
    let st = crop.to_induction_step();
    check_positive_step(&s, v, &st).map_err(err)?;
    let (s3, v3) = apply_positive_step_lengths(&s, v, &st).map_err(err)?;
    ensure!(s3 == from_two_row(&t1), "{t} {st}: scheme step disagrees");
    ensure!(v3 == v1, "{t} {st}: lengths disagree");
    Ok(true)
}

pub fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6);
    let mut compared = 0;
    let mut ties = 0;
    for d in 2..=4 {
        let mut here = 0;
        while here < 1000 {
            let t = random_single_bracket(&mut rng, d);
            let v = Lengths(
                (0..d)
                    .map(|_| Rational::new(rng.gen_range(1..=10_000).into(), 1000.into()))
                    .collect(),
            );
            if oracles_agree(&t, &v)? {
                here += 1;
            } else {
                ties += 1;
            }
        }
        compared += here;
    }
    Ok(format!(
        "{compared} single-bracket cases (1000 per d = 2..4) agree; {ties} ties confirmed as ties"
    ))
}

pub fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    let mut samples = 0;
    for i in 0..100 {
        let d = 2 + i % 4;
        let e = random_positive_extension(&mut rng, d);
        let surf = build_surface(&e, &BranchRule::Midpoint, &BranchRule::Midpoint)
            .map_err(|x| format!("{}: {x}", e.scheme))?;
        surf.check_sides().map_err(err)?;
        let total = e.scheme.twists_total().map_err(err)?;
        let excess: i64 = surf
            .cone_points
            .iter()
            .map(|c| c.angle_pi as i64 / 2 - 1)
            .sum();
        ensure!(
            excess == total,
            "{}: cone excess {excess} != {total}",
            e.scheme
        );
        ensure!(
            2 * surf.genus - 2 == total,
            "{}: genus {}",
            e.scheme,
            surf.genus
        );
        let report = first_return_check(&surf, 100, i as u64).map_err(err)?;
        ensure!(report.ok(), "{}: {:?}", e.scheme, report);
        ensure!(
            report.vertical.passed == 100 && report.horizontal.passed == 100,
            "{}: only {} + {} samples evaluated",
            e.scheme,
            report.vertical.passed,
            report.horizontal.passed
        );
        samples += 200;
    }
    Ok(format!(
        "100 surfaces (d = 2..5), {samples} flow samples, zero failures"
    ))
}

pub fn criterion_8() -> Outcome {
    let s2 = ire::text::parse_scheme(worked::S2).map_err(err)?;
    let r = analyze(&s2).map_err(err)?;
    let balance = r.twists + r.dual_twists + (r.cycles + r.dual_cycles) as i64;
    ensure!(balance == 1, "S2 balance {balance}");
    let rd = analyze(&s2.dual()).map_err(err)?;
    ensure!(
        !rd.positive && rd.dim_lengths == 0,
        "dual(S2) positive={} dim V={}",
        rd.positive,
        rd.dim_lengths
    );

    // v_d = v_a on S0 makes both steps at the turn back undefined.
    let s0 = worked::s0();
    let v = Lengths::from_ints(&[5, 3, 5, 11]);
    let before = (s0.clone(), v.clone());
    let st: InductionStep = "rb:d,a".parse().map_err(err)?;
    for attempt in [
        apply_positive_step_lengths(&s0, &v, &st).map(|_| ()),
        check_positive_step(&s0, &v, &st),
        apply_positive_step_floating(
            &ire::extension::make_floating_extension(
                &s0,
                v.clone(),
                Lengths::from_ints(&[1, 1, 1, 1]),
            )
            .map_err(err)?,
            &st,
        )
        .map(|_| ()),
    ] {
        ensure!(
            matches!(attempt, Err(IreError::TieDetected { .. })),
            "expected a tie, got {attempt:?}"
        );
    }
    ensure!((s0.clone(), v.clone()) == before, "inputs changed");
    let ties = applicable_positive_steps(&s0, &v).map_err(err)?.ties;
    ensure!(!ties.is_empty(), "tie not reported by step enumeration");
    let t = ire::text::parse_two_row("[a b / b a]").map_err(err)?;
    ensure!(
        matches!(
            classical_rv_step(&t, &Lengths::from_ints(&[2, 2])),
            Err(IreError::TieDetected { .. })
        ),
        "classical oracle missed the tie"
    );
    Ok(
        "S2 balance 1, dual(S2) non-positive with dim V = 0, ties raised with inputs untouched"
            .into(),
    )
}
