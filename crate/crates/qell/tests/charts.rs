use qell::charts::{compare_with_fixture, composite_zero_failures, d1_fixture, d1_table, emit_chart, ChartFormat};

#[test]
fn q3_table_matches_fixture() {
    let t = d1_table(3, 24).unwrap();
    let c = compare_with_fixture(&t, &d1_fixture(3).unwrap());
    assert_eq!(c.matched, 21, "{:#?}", c.mismatches);
}

#[test]
fn q5_table_matches_fixture_except_weight_22_errata() {
    let t = d1_table(5, 24).unwrap();
    let c = compare_with_fixture(&t, &d1_fixture(5).unwrap());
    assert_eq!(c.matched, 31);
    let bad: Vec<_> = c
        .mismatches
        .iter()
        .map(|m| {
            let got = m.computed.as_ref().unwrap();
            (m.expected.source_monomial.as_str(), got.two_exponent, got.target_monomial.as_str())
        })
        .collect();
    assert_eq!(
        bad,
        vec![
            ("b2*delta^5", 2, "b2*delta^5"),
            ("b2^3*delta^4", 3, "b2*b4*delta^4"),
            ("b2^5*delta^3", 3, "b2^3*b4*delta^3"),
        ]
    );
}

#[test]
fn composites_vanish() {
    assert!(composite_zero_failures(3, 24).unwrap().is_empty());
    assert!(composite_zero_failures(5, 24).unwrap().is_empty());
}

#[test]
fn q5_csv_through_weight_12_contains_fixture_rows() {
    let csv = emit_chart(&[d1_table(5, 12).unwrap()], ChartFormat::Csv);
    for r in d1_fixture(5).unwrap().iter().filter(|r| r.weight <= 12) {
        let line = format!("5,{},1,{},{},{}", r.weight, r.source_monomial, r.two_exponent, r.target_monomial);
        assert!(csv.lines().any(|l| l == line), "{line}");
    }
    assert_eq!(csv, emit_chart(&[d1_table(5, 12).unwrap()], ChartFormat::Csv));
}

#[test]
fn map_tables_match_fixture() {
    for ell in [3, 5] {
        for c in qell::level_maps::check_map_table(ell).unwrap() {
            assert!(c.matches, "{:?} computed {}", c.expected, c.computed);
        }
    }
}

#[test]
fn a_wrong_map_image_is_rejected() {
    use qell::level_maps::{check_map_row, MapRow};
    let row = |map: &str, source: &str, image: &str| MapRow { ell: 5, map: map.into(), source: source.into(), image: image.into() };
    assert!(!check_map_row(&row("q", "a3", "-u^3 + 2*a1*u^2")).unwrap().matches);
    assert!(!check_map_row(&row("q", "c4", "b2^2 + 228*b4 + 491*delta")).unwrap().matches);
    assert!(!check_map_row(&row("t", "delta", "1/5*(b2^2 - 22*b4 + 118*delta)")).unwrap().matches);
    assert!(!check_map_row(&row("t", "u", "u")).unwrap().matches);
}
