use qpl::battery::{by_parts_table, series_by_parts};
use qpl::combinatorics::{
    count_2color, count_filtered, enum_2color, enum_overpartitions, forbidden_patterns,
    peel_weight, Constraints, Overpartition, Semantics,
};
use qpl::fnfamily::overpartition_gf;
use qpl::Int;

fn op(s: &str) -> Overpartition {
    s.parse().unwrap()
}

#[test]
fn small_enumerations() {
    let all = enum_overpartitions(0);
    assert_eq!(all, vec![Overpartition::empty()]);
    // overpartition counts 1, 2, 4, 8, 14, 24, 40
    let counts: Vec<usize> = (0..=6).map(|n| enum_overpartitions(n).len()).collect();
    assert_eq!(counts, [1, 2, 4, 8, 14, 24, 40]);
    let three: Vec<String> = enum_overpartitions(3)
        .iter()
        .map(|o| o.to_string())
        .collect();
    for s in ["3", "3~", "2+1", "2~+1", "2+1~", "2~+1~", "1+1+1", "1~+1+1"] {
        assert!(three.contains(&s.to_string()), "{s}");
    }
}

#[test]
fn weight_four_restricted() {
    for sem in [Semantics::Literal, Semantics::Calibrated] {
        assert_eq!(count_filtered(4, Constraints::new(0, 1, sem)).0, 13);
        assert_eq!(count_filtered(0, Constraints::new(2, 2, sem)).0, 1);
    }
    let c = Constraints::new(0, 1, Semantics::Calibrated);
    let rejected: Vec<String> = enum_overpartitions(4)
        .into_iter()
        .filter(|o| !c.admits(o))
        .map(|o| o.to_string())
        .collect();
    assert_eq!(rejected, ["2~+1~+1"]);
}

#[test]
fn two_color_counts() {
    assert_eq!(count_2color(0), 1);
    assert_eq!(count_2color(4), 13);
    assert_eq!(enum_2color(1).len(), 2);
    // [q^n] 1/((q;q)_inf (q;q^3)_inf)
    let mut c = vec![0u64; 13];
    c[0] = 1;
    let parts: Vec<usize> = (1..=12).chain((1..=12).filter(|p| p % 3 == 1)).collect();
    for p in parts {
        for n in p..=12 {
            c[n] += c[n - p];
        }
    }
    for (n, want) in c.iter().enumerate() {
        assert_eq!(count_2color(n as u32), *want, "n={n}");
    }
}

#[test]
fn sequence_for_i0_k1() {
    assert_eq!(forbidden_patterns(0, 1)[0].to_string(), "1~+2+3~");
    let c = Constraints::new(0, 1, Semantics::Literal);
    assert!(!c.admits(&op("2~+1~")));
    assert!(!c.admits(&op("4~+3+2~")));
    assert!(c.admits(&op("3~+1~")));
}

#[test]
fn excluded_at_weight_seven() {
    for sem in [Semantics::Literal, Semantics::Calibrated] {
        let c = Constraints::new(1, 1, sem);
        for s in ["3~+2~+2", "5+1~+1", "3+2~+2"] {
            assert!(!c.admits(&op(s)), "{s}");
        }
    }
    let by_parts = count_filtered(7, Constraints::new(1, 1, Semantics::Calibrated)).1;
    assert_eq!(by_parts, [0, 2, 9, 10, 7, 4, 2, 1]);
}

#[test]
fn literal_reading_departs_at_weight_ten() {
    let lit = by_parts_table(0, 1, Semantics::Literal, 10);
    let want = series_by_parts(&overpartition_gf::<Int>(0, 1, 10), 10);
    let total = |v: &[u64]| v.iter().sum::<u64>() as i64;
    let series_total = |v: &[Int]| v.iter().map(|c| c.to_i64().unwrap()).sum::<i64>();
    assert_eq!(total(&lit[9]), series_total(&want[9]));
    assert_ne!(
        lit[10]
            .iter()
            .map(|&c| Int::from(c as i64))
            .collect::<Vec<_>>(),
        want[10]
    );
}

#[test]
fn calibrated_reading_matches_series() {
    for (i, k) in [(0, 1), (1, 1), (2, 1), (1, 2)] {
        let n_max = 14;
        let got = by_parts_table(i, k, Semantics::Calibrated, n_max);
        let want = series_by_parts(&overpartition_gf::<Int>(i, k, n_max), n_max);
        for n in 0..=n_max as usize {
            let g: Vec<Int> = got[n].iter().map(|&c| Int::from(c as i64)).collect();
            assert_eq!(g, want[n], "(i,k)=({i},{k}) n={n}");
        }
    }
}

#[test]
fn peeling_weights() {
    assert_eq!(peel_weight(&Overpartition::empty(), 1, 1), 1);
    assert_eq!(peel_weight(&op("1~"), 1, 1), 0);
    assert_eq!(peel_weight(&op("3~+2~+2"), 1, 1), 0);
    assert_eq!(peel_weight(&op("4~+3~+2+1~"), 0, 1), -1);
}
