//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines as they complete.

use std::collections::HashMap;

use qrank_core::fps::rat;
use qrank_core::modgroup::{cusp_table, thm13_budget, CongGroup};
use qrank_core::numerics::{run_suite, CheckKind, DEFAULT_TAUS};
use qrank_core::rank::{
    overpartition_count, rank_coeff, verify_identity, IdentityName,
};

fn announce(criterion: u32, label: &str, pass: bool) {
    println!("criterion {criterion} ({label}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed: {label}");
}

#[test]
fn criterion_1_three_dissection_to_q363() {
    let report = verify_identity(IdentityName::Thm13, 364).unwrap();
    for d in &report.details {
        println!("  {d}");
    }
    announce(1, "3-dissection of O_3(zeta_3;q) to q^363, exact", report.pass);
}

#[test]
fn criterion_2_odd_part_of_o4_to_q401() {
    let report = verify_identity(IdentityName::Thm81, 402).unwrap();
    announce(2, "odd part of O_4 equals the product to q^401 at four roots", report.pass);
}

#[test]
fn criterion_3_modular_differences_to_q200() {
    let odd = verify_identity(IdentityName::Thm82Odd, 201).unwrap();
    let two = verify_identity(IdentityName::Thm822Mod4, 201).unwrap();
    let zero = verify_identity(IdentityName::Thm820Mod4, 201).unwrap();
    for r in [&odd, &two, &zero] {
        for d in &r.details {
            println!("  {d}");
        }
    }
    announce(
        3,
        "the three completed-difference identities to q^200, exact",
        odd.pass && two.pass && zero.pass,
    );
}

#[test]
fn criterion_4_mu_decomposition_grid_to_q60() {
    let report = verify_identity(IdentityName::Prop33, 61).unwrap();
    for d in &report.details {
        println!("  {d}");
    }
    announce(4, "theta/mu decomposition on the five-parameter grid to q^60", report.pass);
}

/// Overpartitions of n grouped by rank (largest part minus number of
/// parts, overlines ignored): every partition contributes 2^{distinct parts}.
fn rank_counts_by_enumeration(n: i64) -> HashMap<i64, i64> {
    fn go(
        remaining: i64,
        max_part: i64,
        largest: i64,
        parts: i64,
        distinct: u32,
        last: i64,
        acc: &mut HashMap<i64, i64>,
    ) {
        if remaining == 0 {
            *acc.entry(largest - parts).or_insert(0) += 1i64 << distinct;
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            go(
                remaining - p,
                p,
                largest.max(p),
                parts + 1,
                distinct + u32::from(p != last),
                p,
                acc,
            );
        }
    }
    let mut acc = HashMap::new();
    if n == 0 {
        acc.insert(0, 1);
        return acc;
    }
    go(n, n, 0, 0, 0, 0, &mut acc);
    acc
}

#[test]
fn criterion_5_oracle_agreement() {
    // Dyson rank enumeration against the series for d = 1, n <= 12
    let mut enumeration_ok = true;
    for n in 0..=12i64 {
        let table = rank_counts_by_enumeration(n);
        for m in -n..=n.max(0) {
            let expected = table.get(&m).copied().unwrap_or(0);
            if rank_coeff(1, m, n) != expected {
                println!("  M_1({m},{n}) = {} but enumeration says {expected}", rank_coeff(1, m, n));
                enumeration_ok = false;
            }
        }
    }
    // row sums against pbar(n) for n <= 50, d <= 6
    let mut rows_ok = true;
    for d in 1..=6u64 {
        for n in 0..=50i64 {
            let total: i64 = (-n..=n).map(|m| rank_coeff(d, m, n)).sum();
            if total != overpartition_count(n) {
                println!("  row sum mismatch at d={d}, n={n}: {total}");
                rows_ok = false;
            }
        }
    }
    // pairwise form agreement to q^80 on the grid
    let forms = verify_identity(IdentityName::Cor32, 81).unwrap();
    announce(
        5,
        "enumeration oracle, row sums to n=50, and form agreement to q^80",
        enumeration_ok && rows_ok && forms.pass,
    );
}

#[test]
fn criterion_6_cusp_machinery() {
    let group = CongGroup::new(162, 9, 1);
    let computed = group.cusp_set();
    let paper = cusp_table::paper_cusps();
    // the published table has 72 entries; it is complete because the
    // widths below sum to the independently counted projective index
    let count_ok = computed.len() == paper.len() && paper.len() == 72;
    let mut matched = vec![false; computed.len()];
    let mut class_ok = true;
    for (cusp, width) in &paper {
        let mut hits = 0;
        for (i, (rep, rep_width)) in computed.iter().enumerate() {
            if group.cusp_equiv(cusp, rep) {
                hits += 1;
                matched[i] = true;
                class_ok &= rep_width == width;
            }
        }
        class_ok &= hits == 1;
        class_ok &= group.cusp_width(cusp) == *width;
    }
    class_ok &= matched.iter().all(|m| *m);
    let width_sum: i64 = computed.iter().map(|(_, w)| w).sum();
    let index = group.projective_index();
    println!("  classes: {}, width sum: {width_sum}, projective index: {index}", computed.len());
    announce(
        6,
        "cusp classes match the published table with widths, sum = index",
        count_ok && class_ok && width_sum == index,
    );
}

#[test]
fn criterion_7_valence_budget() {
    let report = thm13_budget().unwrap();
    println!(
        "  budget total {} (required check order {}, equals paper value -119: {})",
        report.total, report.required_check_order, report.equals_paper_value
    );
    let in_range = report.total >= rat(-125, 1) && report.total <= rat(-100, 1);
    let required_ok = report.required_check_order <= 125;
    // criterion 1 checks to q^363, beyond the required order; also confirm
    // the identity expansion itself vanishes that deep
    let depth_ok = 363 >= report.required_check_order;
    let expansion = verify_identity(IdentityName::Eq6Odd, report.required_check_order + 2).unwrap();
    announce(
        7,
        "valence budget in range with the vanishing depth covered",
        in_range && required_ok && depth_ok && expansion.pass,
    );
}

#[test]
fn criterion_8_numeric_transformation_suite() {
    let reports = run_suite(None, &DEFAULT_TAUS, 1e-8).unwrap();
    let mut fails = 0;
    let mut per_kind: HashMap<&str, usize> = HashMap::new();
    for r in &reports {
        *per_kind.entry(r.kind.tag()).or_insert(0) += 1;
        if !r.pass {
            println!("  FAIL {}", r.line());
            fails += 1;
        }
    }
    let coverage_ok = CheckKind::ALL
        .iter()
        .all(|k| per_kind.get(k.tag()).copied().unwrap_or(0) >= 9);
    println!("  {} checks over {} kinds", reports.len(), per_kind.len());
    announce(
        8,
        "every transformation kind passes at 1e-8 over the default points",
        fails == 0 && coverage_ok,
    );
}

// criterion 9 is the seeded property suite in tests/properties.rs; it
// prints its own line there.
