//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every check is exact (zero tolerance); the desk-scale matrix is
//! N in {1, 3, 5, 7} with d = 3 and N in {2, 4, 6} with d = 2.

use std::time::{Duration, Instant};

use galconf::group::{
    composition_checks, conformal_jet_flow, jet_flow_comparison, onshell_consistency_checks,
    vector_field_checks, verify_prolongation, RotationMatrix, TransformSpec,
};
use galconf::noether::{
    closed_form_comparisons, correspondence_check, standard_symmetries, verify_symmetries,
};
use galconf::phase::{
    build_charges, canonical_bracket, verify_conservation, verify_structure_constants,
};
use galconf::poly::{cross3, dot, Poly};
use galconf::quasi::{
    boundary_function, recurrence_checks, recurrence_direct, verify_total_derivative,
};
use galconf::rational::{factorial, rat, rat_int, sign_pow};
use galconf::report::{CheckStatus, Report};
use galconf::suites::{run_suite, Suite};
use galconf::var::{ParamName, VarId};
use galconf::{Branch, ModelConfig};

fn matrix() -> Vec<ModelConfig> {
    [(1u32, 3u8), (3, 3), (5, 3), (7, 3), (2, 2), (4, 2), (6, 2)]
        .into_iter()
        .map(|(n, d)| ModelConfig::new(n, d).unwrap())
        .collect()
}

fn all_specs(cfg: &ModelConfig) -> Vec<TransformSpec> {
    let mut specs = Vec::new();
    for level in 0..=cfg.n() {
        specs.push(TransformSpec::symbolic_boost(level, cfg));
    }
    specs.push(TransformSpec::symbolic_shift());
    specs.push(TransformSpec::symbolic_dilation());
    specs.push(TransformSpec::symbolic_conformal());
    specs.push(TransformSpec::Rotation(
        RotationMatrix::plane(cfg.dim(), 0, 1, rat(3, 5), rat(4, 5)).unwrap(),
    ));
    specs
}

fn criterion(n: u32, desc: &str, ok: bool) {
    println!(
        "criterion {n:02}: {desc} ... {}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion {n:02} failed: {desc}");
}

fn failures(r: &Report) -> String {
    r.checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| format!("{}: {}", c.id, c.witness.as_deref().unwrap_or("")))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn a01_algebra_closure() {
    let t0 = Instant::now();
    let mut ok = true;
    for cfg in matrix() {
        let r = verify_structure_constants(&cfg);
        if !r.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r));
            ok = false;
        }
    }
    let within_budget = t0.elapsed() < Duration::from_secs(60);
    criterion(
        1,
        "all pairwise charge brackets match the structure constants, full matrix, under 60 s",
        ok && within_budget,
    );
}

#[test]
fn a02_central_extension_values() {
    let mut ok = true;
    for cfg in matrix() {
        let ch = build_charges(&cfg);
        let n = cfg.n();
        for j in 0..=n {
            for k in 0..=n {
                for a in cfg.axes() {
                    for b in cfg.axes() {
                        let got = canonical_bracket(
                            &ch.c[j as usize][a as usize],
                            &ch.c[k as usize][b as usize],
                            &cfg,
                        )
                        .unwrap();
                        let want = if j + k != n {
                            Poly::zero()
                        } else {
                            match cfg.branch() {
                                Branch::OddN3d => {
                                    if a != b {
                                        Poly::zero()
                                    } else {
                                        cfg.mass_poly().scale(
                                            &(&(&factorial(j) * &factorial(k))
                                                * &sign_pow((k as i64 - j as i64 + 1) / 2)),
                                        )
                                    }
                                }
                                Branch::EvenN2d => {
                                    let e = galconf::poly::eps2(a as usize, b as usize);
                                    if e == 0 {
                                        Poly::zero()
                                    } else {
                                        cfg.mass_poly().scale(
                                            &(&(&(&factorial(j) * &factorial(k))
                                                * &sign_pow((j as i64 - k as i64) / 2))
                                                * &rat_int(-e)),
                                        )
                                    }
                                }
                            }
                        };
                        if got != want {
                            eprintln!("N={n} {{c_{j}^{a}, c_{k}^{b}}} = {got}, want {want}");
                            ok = false;
                        }
                    }
                }
            }
        }
    }
    // Spot value at N = 1: {c_0^a, c_1^b} = -m delta_ab.
    let c1 = ModelConfig::new(1, 3).unwrap();
    let ch = build_charges(&c1);
    for a in 0..3usize {
        let got = canonical_bracket(&ch.c[0][a], &ch.c[1][a], &c1).unwrap();
        if got != -&c1.mass_poly() {
            ok = false;
        }
    }
    criterion(
        2,
        "central extension values, exact for all (j, k) pairs, plus the N=1 spot value",
        ok,
    );
}

#[test]
fn a03_conservation() {
    let mut ok = true;
    for cfg in matrix() {
        let r = verify_conservation(&cfg);
        if !r.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r));
            ok = false;
        }
    }
    criterion(
        3,
        "dC/dt + {C, h} = 0 exactly for every charge, full matrix",
        ok,
    );
}

#[test]
fn a04_symmetry_certificates() {
    let mut ok = true;
    for cfg in matrix() {
        let r = verify_symmetries(&cfg);
        if !r.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r));
            ok = false;
        }
        // Every level of the boost tower is present among the certified
        // symmetries, with its boundary term.
        let names: Vec<String> = standard_symmetries(&cfg)
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        for level in 0..=cfg.n() {
            if !names
                .iter()
                .any(|s| s.starts_with(&format!("boost-{level}-")))
            {
                ok = false;
            }
        }
    }
    criterion(
        4,
        "symmetry residual vanishes exactly for boosts at every level, time shift, dilation, conformal and rotations, both branches",
        ok,
    );
}

#[test]
fn a05_charge_correspondence() {
    let mut ok = true;
    for cfg in matrix() {
        let r = correspondence_check(&cfg);
        if !r.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r));
            ok = false;
        }
        let r = closed_form_comparisons(&cfg);
        if !r.all_passed() {
            eprintln!("N={} closed forms: {}", cfg.n(), failures(&r));
            ok = false;
        }
        // The fixed-index variant of the boost tower is arbitrated: it
        // agrees at level 0 and is flagged as a discrepancy above it.
        if cfg.branch() == Branch::OddN3d {
            for c in &r.checks {
                if let Some(level) = c.id.strip_prefix("noether/quoted/C_") {
                    let level: u32 = level.parse().unwrap();
                    let want = if level == 0 {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::ReportedDiscrepancy
                    };
                    if c.status != want {
                        eprintln!("N={} {}: unexpected status", cfg.n(), c.id);
                        ok = false;
                    }
                }
            }
        }
    }
    criterion(
        5,
        "Noether charges equal the substituted phase-space charges for H, D, K, J and every C_k; index variants arbitrated",
        ok,
    );
}

#[test]
fn a06_on_shell_conservation() {
    let mut ok = true;
    for cfg in matrix() {
        let r = correspondence_check(&cfg);
        let entries: Vec<_> = r
            .checks
            .iter()
            .filter(|c| c.id.starts_with("noether/on-shell-rate/"))
            .collect();
        if entries.is_empty() || entries.iter().any(|c| c.status != CheckStatus::Pass) {
            ok = false;
        }
    }
    criterion(
        6,
        "on-shell reduction of dC/dt vanishes for every Lagrangian charge, full matrix",
        ok,
    );
}

#[test]
fn a07_group_realization() {
    let mut ok = true;
    for cfg in matrix() {
        for spec in all_specs(&cfg) {
            let r = verify_prolongation(&cfg, &spec);
            if !r.all_passed() {
                eprintln!("N={} {}: {}", cfg.n(), spec.tag(), failures(&r));
                ok = false;
            }
        }
        for r in [
            composition_checks(&cfg),
            vector_field_checks(&cfg),
            onshell_consistency_checks(&cfg),
        ] {
            if !r.all_passed() {
                eprintln!("N={}: {}", cfg.n(), failures(&r));
                ok = false;
            }
        }
    }
    criterion(
        7,
        "prolongation, composition laws, on-shell closure and the vector-field commutator table hold exactly",
        ok,
    );
}

#[test]
fn a08_conformal_jet_flow() {
    let mut ok = true;
    for cfg in matrix() {
        // Flow solution exists at every admissible level and passes the
        // prolongation check (covered per level by verify_prolongation).
        for level in 0..=cfg.top_phase_level() {
            if conformal_jet_flow(&cfg, level).is_err() {
                ok = false;
            }
        }
        let r = verify_prolongation(&cfg, &TransformSpec::symbolic_conformal());
        if !r.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r));
            ok = false;
        }
        // The quoted closed form agrees at level 0 and is a reported
        // discrepancy at every higher level.
        let cmp = jet_flow_comparison(&cfg);
        for c in &cmp.checks {
            let level: u32 = c.id.rsplit_once('q').unwrap().1.parse().unwrap();
            let want = if level == 0 {
                CheckStatus::Pass
            } else {
                CheckStatus::ReportedDiscrepancy
            };
            if c.status != want {
                eprintln!("N={} {}: unexpected status {:?}", cfg.n(), c.id, c.status);
                ok = false;
            }
        }
    }
    criterion(
        8,
        "flow solution passes prolongation at every level; quoted closed form agrees only at level 0 (reported)",
        ok,
    );
}

#[test]
fn a09_appendix() {
    let mut ok = true;
    for cfg in matrix() {
        let r = recurrence_checks(&cfg);
        if !r.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r));
            ok = false;
        }
        for spec in all_specs(&cfg) {
            let r = verify_total_derivative(&cfg, &spec);
            if !r.all_passed() {
                eprintln!("N={} {}: {}", cfg.n(), spec.tag(), failures(&r));
                ok = false;
            }
        }
    }
    // N = 1 closed form: f = (m/2) c q^2 / (1 - ct).
    let c1 = ModelConfig::new(1, 3).unwrap();
    let f = boundary_function(&c1, &TransformSpec::symbolic_conformal()).unwrap();
    let c = Poly::param(ParamName::C);
    let q_sq: Poly = (0..3u8)
        .map(|a| Poly::var(VarId::jet(0, a)).pow(2))
        .fold(Poly::zero(), |acc, p| &acc + &p);
    let want = galconf::Frac::new(
        (&(&c * &q_sq) * &c1.mass_poly()).scale(&rat(1, 2)),
        &[(galconf::frac::one_plus_alpha_t(&-&c).unwrap(), 1)],
    )
    .unwrap();
    if f != want {
        ok = false;
    }
    // The two recurrence constructions agree for every odd N in the matrix.
    for n in [1u32, 3, 5, 7] {
        let cfg = ModelConfig::new(n, 3).unwrap();
        let direct = recurrence_direct(&cfg).unwrap();
        let constructive = galconf::quasi::recurrence_constructive(&cfg).unwrap();
        if direct != constructive {
            ok = false;
        }
    }
    criterion(
        9,
        "recurrence solved two independent ways, trinomial identity exhaustive to 12, total-derivative certificates exact (finite conformal on the odd branch)",
        ok,
    );
}

#[test]
fn a10_schroedinger_reduction() {
    let cfg = ModelConfig::new(1, 3).unwrap();
    let ch = build_charges(&cfg);
    let t = Poly::time();
    let p0: Vec<Poly> = (0..3).map(|a| Poly::var(VarId::phase_p(0, a))).collect();
    let q0: Vec<Poly> = (0..3).map(|a| Poly::var(VarId::phase_q(0, a))).collect();
    let h = (&dot(&p0, &p0) * &cfg.inv_mass_poly()).scale(&rat(1, 2));
    let d = &dot(&q0, &p0).scale(&rat(1, 2)) - &(&t * &h);
    let k = &(&(&dot(&q0, &q0) * &cfg.mass_poly()).scale(&rat(1, 2)) - &(&t * &dot(&q0, &p0)))
        + &(&t.pow(2) * &h);
    let mut ok = ch.h == h && ch.d == d && ch.k == k && ch.j == cross3(&q0, &p0);
    for a in 0..3usize {
        let c1 = &(-&(&t * &p0[a])) + &(&cfg.mass_poly() * &q0[a]);
        ok &= ch.c[0][a] == p0[a] && ch.c[1][a] == c1;
    }
    criterion(
        10,
        "at N = 1 the charge set is exactly the standard one-derivative conformal (Schroedinger) set",
        ok,
    );
}

#[test]
fn a11_reports_full_matrix_and_byte_stability() {
    let t0 = Instant::now();
    let mut ok = true;
    for cfg in matrix() {
        let r1 = run_suite(&cfg, Suite::All);
        if !r1.all_passed() {
            eprintln!("N={}: {}", cfg.n(), failures(&r1));
            ok = false;
        }
        let r2 = run_suite(&cfg, Suite::All);
        if r1.to_json() != r2.to_json() {
            eprintln!("N={}: JSON not byte-stable", cfg.n());
            ok = false;
        }
    }
    let within_budget = t0.elapsed() < Duration::from_secs(300);
    criterion(
        11,
        "full verification matrix passes with byte-stable JSON, well inside the time budget",
        ok && within_budget,
    );
}
