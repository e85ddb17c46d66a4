use std::io::Write;
use std::time::{Duration, Instant};

use tautrel::equiv::{decompose_sq, equivalence_rank_check};
use tautrel::foundations::{qf, Partition, Q};
use tautrel::pairing::{
    epsilon_eval, epsilon_table, faber_roundtrip, gorenstein_dims, kappa_top_integral, rank_report, rank_row,
    verify_relations_in_kernel,
};
use tautrel::suite::{
    all_passed, bernoulli_audit, bpp_display_report, emitted_relations, golden_identities, scalar_self_checks,
    FamilySet, Ranges,
};
use tautrel::KappaPoly;

/// Writes straight to stdout so the line shows up even for passing tests.
fn report(n: u32, name: &str, ok: bool, elapsed: Duration, detail: &str) {
    let mark = if ok { "PASS" } else { "FAIL" };
    let line = format!("criterion {n} [{mark}] {name} ({:.1?}) {detail}\n", elapsed);
    let mut out = std::io::stdout();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn note(line: &str) {
    let _ = std::io::stdout().write_all(format!("    {line}\n").as_bytes());
}

#[test]
fn criterion_1_golden_identities() {
    let t = Instant::now();
    let checks = golden_identities(30).unwrap();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let el = t.elapsed();
    let ok = failed.is_empty() && el < Duration::from_secs(10);
    report(1, "golden identity suite, order 30", ok, el, &format!("{} checks, failed: {:?}", checks.len(), failed));
    assert!(failed.is_empty(), "{failed:?}");
    assert!(el < Duration::from_secs(10), "runtime {el:?}");
}

#[test]
fn criterion_2_displayed_decomposition() {
    let t = Instant::now();
    let d = decompose_sq(&Partition::from_slice(&[1, 1, 1])).unwrap();
    let e = Partition::empty();
    let one = Partition::from_slice(&[1]);
    let ok = d.terms.len() == 4
        && d.coefficient(&[1], &e) == qf(4, 3)
        && d.coefficient(&[], &one) == qf(-1, 3)
        && d.coefficient(&[0], &one) == qf(-1, 2)
        && d.coefficient(&[], &Partition::from_slice(&[1, 1, 1])) == qf(1, 1);
    let el = t.elapsed();
    report(2, "decompose_sq((1,1,1))", ok && el < Duration::from_secs(5), el, &d.to_json());
    assert!(ok, "{d:?}");
    assert!(el < Duration::from_secs(5));
}

#[test]
fn criterion_3_epsilon_closed_form() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for g in 2..=14u32 {
        let top = kappa_top_integral(g).unwrap();
        let got = if g == 2 {
            // kappa_0 = 2g - 2 = 2
            epsilon_eval(2, &Partition::empty(), None).unwrap() * qf(2, 1)
        } else {
            epsilon_eval(g, &Partition::from_slice(&[g - 2]), None).unwrap()
        };
        if got != top {
            bad.push(g);
        }
    }
    let s2 = epsilon_eval(2, &Partition::empty(), None).unwrap();
    let s3 = epsilon_eval(3, &Partition::from_slice(&[1]), None).unwrap();
    let ok = bad.is_empty() && s2 == qf(1, 5760) && s3 == qf(1, 120960);
    let el = t.elapsed();
    report(3, "epsilon closed form g=2..14 and spot values", ok && el < Duration::from_secs(5), el, &format!("eps(1)|g=2 = {s2}, eps(k1)|g=3 = {s3}, mismatches {bad:?}"));
    assert!(ok);
    assert!(el < Duration::from_secs(5));
}

#[test]
fn criterion_4_rank_facts() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for g in 2..=10u32 {
        let r = gorenstein_dims(g, None).unwrap();
        let ends = r.row(0).unwrap().gorenstein == Some(1) && r.row(g - 2).unwrap().gorenstein == Some(1);
        if !ends || !r.symmetric() {
            bad.push(g);
        }
    }
    let el = t.elapsed();
    let ok = bad.is_empty() && el < Duration::from_secs(60);
    report(4, "dim R^0_G = dim R^{g-2}_G = 1, symmetry, g=2..10", ok, el, &format!("failing genera {bad:?}"));
    assert!(bad.is_empty());
    assert!(el < Duration::from_secs(60));
}

#[test]
fn criterion_5_kernel_membership() {
    let t = Instant::now();
    let ranges = Ranges { sigma_max: 3, d_extra: 2, z_size_max: 2 };
    let mut total = 0;
    let mut violations = 0;
    for g in 2..=8i64 {
        let rels = emitted_relations(g, FamilySet::All, &ranges).unwrap();
        let rep = verify_relations_in_kernel(g as u32, &rels, None).unwrap();
        total += rep.relations;
        violations += rep.violations.len();
        for v in rep.violations.iter().take(5) {
            note(&format!("g={g} {v:?}"));
        }
    }
    // negative control: one coefficient of a true relation moved by +1
    let mut bad = emitted_relations(6, FamilySet::Fz, &ranges).unwrap().remove(0);
    let mono = bad.poly.terms().next().map(|(m, _)| m.clone()).unwrap();
    bad.poly.add_term(mono, Q::from_integer(1.into()));
    let flagged = !verify_relations_in_kernel(6, &[bad], None).unwrap().passed();
    let el = t.elapsed();
    let ok = violations == 0 && total > 0 && flagged && el < Duration::from_secs(300);
    report(5, "kernel membership of FZ, SQ and classical relations, g<=8", ok, el, &format!("{total} relations, {violations} violations, corrupted relation flagged: {flagged}"));
    assert_eq!(violations, 0);
    assert!(flagged);
    assert!(el < Duration::from_secs(300));
}

#[test]
fn criterion_6_scalar_self_checks() {
    let t = Instant::now();
    let (n, bad) = scalar_self_checks(6, 4).unwrap();
    for b in bad.iter().take(5) {
        note(b);
    }
    let el = t.elapsed();
    report(6, "r <= 0 instances are the scalar 0, g<=6, d<=2g+4", bad.is_empty() && n > 0, el, &format!("{n} instances, {} nonzero", bad.len()));
    assert!(bad.is_empty());
}

#[test]
fn criterion_7_equivalence_and_fz_dims() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for g in 2..=7i64 {
        for r in 0..=g as i32 - 2 {
            let rep = equivalence_rank_check(g, r).unwrap();
            if !rep.ok() {
                bad.push(format!("equivalence g={g} r={r}: {rep:?}"));
            }
        }
    }
    for g in 2..=8u32 {
        let rep = rank_report(g, None).unwrap();
        if rep.rows.iter().any(|r| r.deficit != Some(0)) {
            bad.push(format!("dims g={g}: {}", rep.to_json()));
        }
    }
    for b in &bad {
        note(b);
    }
    let el = t.elapsed();
    let ok = bad.is_empty() && el < Duration::from_secs(600);
    report(7, "SQ/FZ equivalence g<=7 and dim R_FZ = dim R_G g<=8", ok, el, &format!("{} failures", bad.len()));
    assert!(bad.is_empty());
    assert!(el < Duration::from_secs(600));
}

#[test]
fn criterion_8_genus_24_deficit() {
    let t = Instant::now();
    let row = rank_row(24, 12, None).unwrap();
    let el = t.elapsed();
    let ok = row.deficit == Some(1);
    report(8, "g=24, k=12 deficit (extended)", ok, el, &format!("{row:?}"));
    assert!(ok);
}

#[test]
fn criterion_9_bernoulli_audit() {
    let t = Instant::now();
    let checks = bernoulli_audit(12);
    let series_ok = all_passed(&checks);
    let el = t.elapsed();
    report(9, "Bernoulli audit: series forms hold, display recorded", series_ok, el, &format!("{} series checks", checks.len()));
    for (n, holds, detail) in bpp_display_report(12) {
        note(&format!("displayed discrete identity n={n}: {} ({detail})", if holds { "agrees" } else { "disagrees" }));
    }
    assert!(series_ok);
}

#[test]
fn faber_roundtrip_random_alpha() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let g = rng.gen_range(2..=10u32);
        let n = rng.gen_range(1..=5usize);
        // alpha_i >= 1 summing to g-2+n: distribute g-2 extra units
        let mut alpha = vec![1u32; n];
        for _ in 0..g - 2 {
            alpha[rng.gen_range(0..n)] += 1;
        }
        let t = epsilon_table(g, None).unwrap();
        let (sum, expected) = faber_roundtrip(&t, &alpha).unwrap();
        assert_eq!(sum, expected, "g={g} alpha={alpha:?}");
    }
    assert!(KappaPoly::zero().is_zero());
}
