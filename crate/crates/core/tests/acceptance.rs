//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{ad_height, all, frobenius, int, joint_kernel_dim, load, monomial_counts, Loaded};
use korbits::analysis::{analyze, speh_odd_family, verify_speh, AnalysisConfig};
use korbits::invariants::InvariantSpace;
use korbits::ktypes::to_rational;
use korbits::linalg::Vector;
use korbits::orbits::{commutativity_check, gy_condition_check, small_exact_sequence_check};
use korbits::roots::WeightVector;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let within = took < limit;
    Outcome {
        passed: o.passed && within,
        detail: format!("{} [{:.2}s, limit {}s]", o.detail, took.as_secs_f64(), limit.as_secs()),
    }
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(30), || {
        let v = verify_speh(6, 12, 0, 8);
        let failed: Vec<_> = v.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let names: Vec<_> = v.checks.iter().map(|c| c.name.as_str()).collect();
        let required =
            ["height", "small", "spherical", "gy_condition", "generator_degrees", "generator_weights", "self_dual"];
        let complete = required.iter().all(|r| names.contains(r));
        outcome(
            v.passed && complete,
            if failed.is_empty() { format!("{} checks", names.len()) } else { format!("failed {failed:?}") },
        )
    })
}

fn criterion_2() -> Outcome {
    let v = verify_speh(6, 15, 0, 8);
    let expected = speh_odd_family(15);
    outcome(v.shifted_lattice == expected, format!("{} points, expected {}", v.shifted_lattice.len(), expected.len()))
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(60), || match analyze(&AnalysisConfig::for_fixture("su63_333").unwrap()) {
        Ok(r) => {
            let f = &r.flags;
            let certified = serde_json::to_value(f.certainty).unwrap() == "certified";
            outcome(
                f.small && !f.spherical && certified && f.dim_borel == 26 && f.dim_orbit == 27,
                format!(
                    "small={} spherical=({}, {}) dim_borel={} dim_orbit={}",
                    f.small,
                    f.spherical,
                    serde_json::to_value(f.certainty).unwrap(),
                    f.dim_borel,
                    f.dim_orbit
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    })
}

fn criterion_4() -> Outcome {
    let f = load("su21_principal");
    let k4 = f.orbit.grading.k(4).len();
    let oracle = ad_height(&f.g, &f.orbit.triple.x);
    let fl = &f.flags;
    outcome(
        fl.spherical && fl.small && k4 > 0 && fl.height == 4 && oracle == 4,
        format!(
            "spherical={} small={} dim k(x;4)={} height={} oracle height={}",
            fl.spherical, fl.small, k4, fl.height, oracle
        ),
    )
}

fn criterion_5() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for (name, expected) in [("sl6_2cubed_I", false), ("sl6_2cubed_II", false), ("speh_sl4R", true)] {
            match analyze(&AnalysisConfig::for_fixture(name).unwrap()) {
                Ok(r) => {
                    ok &= r.self_dual == Some(expected);
                    parts.push(format!("{name}={:?}", r.self_dual));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("{name}: {e}"));
                }
            }
        }
        outcome(ok, parts.join(" "))
    })
}

fn small_spherical() -> Vec<Loaded> {
    all().into_iter().filter(|f| f.flags.small && f.flags.spherical).collect()
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for f in small_spherical() {
        let s = match InvariantSpace::new(&f.g, &f.orbit) {
            Ok(s) => s,
            Err(e) => return outcome(false, format!("{}: {e}", f.name)),
        };
        let gs = match s.extract_generators(f.flags.rank_r, 6, 0) {
            Ok(gs) => gs,
            Err(e) => return outcome(false, format!("{}: {e}", f.name)),
        };
        for n in 0..=6 {
            let kernel: BTreeMap<WeightVector, usize> =
                s.kernel_by_weight(n).into_iter().map(|(w, v)| (w, v.len())).collect();
            let predicted = monomial_counts(&gs.degrees(), &gs.weights(), f.orbit.root_datum.weight_len(), n);
            if kernel != predicted {
                return outcome(false, format!("{} degree {n}: kernel {kernel:?} vs monomials {predicted:?}", f.name));
            }
            checked += kernel.len();
        }
    }
    outcome(true, format!("{checked} weight slices agree"))
}

fn property_failures(f: &Loaded) -> Vec<&'static str> {
    let mut failures = Vec::new();
    let (g, t, gr) = (&f.g, &f.orbit.triple, &f.orbit.grading);
    let (x, e, fm) = (g.to_matrix(&t.x), g.to_matrix(&t.e), g.to_matrix(&t.f));
    if x.commutator(&e) != e.scale(&int(2)) || x.commutator(&fm) != fm.scale(&int(-2)) || e.commutator(&fm) != x {
        failures.push("triple");
    }
    let ad = g.ad(gr.x());
    let degrees = gr.degrees();
    let graded = degrees.iter().all(|&i| {
        degrees.iter().all(|&j| {
            gr.g(i).iter().all(|a| {
                gr.g(j).iter().all(|b| {
                    let c = g.bracket(a, b);
                    ad.mul_vec(&c) == c.iter().map(|z| z * &int(i + j)).collect::<Vector>()
                })
            })
        })
    });
    if !graded {
        failures.push("grading");
    }
    let orthogonal = degrees.iter().all(|&j| {
        degrees.iter().all(|&n| {
            gr.p(n).iter().all(|a| {
                gr.k(j).iter().all(|b| frobenius(g, b, a) == int(0))
                    && (j == n || gr.p(j).iter().all(|b| frobenius(g, b, a) == int(0)))
            })
        })
    });
    if !orthogonal {
        failures.push("orthogonality");
    }
    if f.flags.small {
        let (adx, ade, adf) = (g.ad(&t.x), g.ad(&t.e), g.ad(&t.f));
        let identity = joint_kernel_dim(&[(&adx, 0)], g.k_range())
            == joint_kernel_dim(&[(&adx, 0), (&ade, 0), (&adf, 0)], g.k_range())
                + joint_kernel_dim(&[(&adx, 2)], g.p_range());
        if !identity || !small_exact_sequence_check(g, gr, t).unwrap_or(false) {
            failures.push("exact sequence");
        }
    }
    if f.flags.small && f.flags.spherical {
        if f.flags.height > 0 && commutativity_check(g, gr) != (f.flags.height == 2) {
            failures.push("commutativity");
        }
        if !gy_condition_check(g, gr, &t.e) {
            failures.push("gy_condition");
        }
    }
    failures
}

fn criterion_7() -> Outcome {
    let fixtures = all();
    let bad: Vec<String> = fixtures
        .iter()
        .filter_map(|f| {
            let fails = property_failures(f);
            (!fails.is_empty()).then(|| format!("{}: {fails:?}", f.name))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} fixtures", fixtures.len()) } else { bad.join("; ") })
}

fn criterion_8() -> Outcome {
    let report = match analyze(&AnalysisConfig::for_fixture("speh_sl4R").unwrap()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let Some(cone) = report.cone.clone() else {
        return outcome(false, "no cone");
    };
    let gamma = report.gamma().unwrap().to_vec();
    let (g1, g2) = (&gamma[0].0, &gamma[1].0);
    let det = g1[0] * g2[1] - g1[1] * g2[0];
    let mut mismatches = Vec::new();
    for u in -20i64..=20 {
        for v in -20i64..=20 {
            let half_plane = u >= v && v >= 0;
            // Cramer's rule for a·γ₁ + b·γ₂ = (u, v); inside iff a, b ≥ 0.
            let a = (u * g2[1] - v * g2[0]) * det.signum();
            let b = (g1[0] * v - g1[1] * u) * det.signum();
            let direct = a >= 0 && b >= 0;
            let member = cone.contains(&to_rational(&[u, v]), 2).unwrap_or(!half_plane);
            if member != half_plane
                || direct != half_plane
                || cone.satisfies_inequalities(&to_rational(&[u, v])) != half_plane
            {
                mismatches.push((u, v));
            }
        }
    }
    outcome(mismatches.is_empty(), format!("41x41 grid, {} mismatches", mismatches.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Speh example reproduction", criterion_1),
        ("Speh K-type shift", criterion_2),
        ("su(6,3) 3+3+3 not spherical", criterion_3),
        ("su(2,1) principal orbit", criterion_4),
        ("self-duality for 2^3 and 2^2", criterion_5),
        ("kernel vs generator monomials", criterion_6),
        ("property suites", criterion_7),
        ("Speh cone membership", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {}: {} {}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, name, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
