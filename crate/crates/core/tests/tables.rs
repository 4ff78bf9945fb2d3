use cr_umbilic::ellipsoid::EllipsoidSpec;
use cr_umbilic::radical::RadicalTower;
use cr_umbilic::tables::{
    derived_numerators, derived_vs_printed, table_weighted_sum, weighted_cell_with_override, PrintedTables, ResidualCell,
    WEIGHTS_EIGHTHS,
};
use cr_umbilic::RadicalError;

fn column(t: &PrintedTables, row: usize, s: u32, tt: u32) -> Vec<i64> {
    (1..=7).map(|k| t.cell(k, row, s, tt).unwrap()).collect()
}

#[test]
fn printed_spot_cells() {
    let t = PrintedTables::builtin();
    let top = column(&t, 0, 9, 6);
    assert_eq!(top, vec![499, -165, -91, -75, 63, 39, -27]);
    assert_eq!(499 - 6 * 165 - 4 * 91 - 75 + 15 * 63 + 10 * 39 - 15 * 27, 0);
    assert_eq!(column(&t, 7, 0, 7), top);
    let odd = column(&t, 6, 1, 6);
    assert_eq!(odd, vec![2287, -925, -499, -391, 339, 199, -135]);
    assert_eq!(2287 - 6 * 925 - 4 * 499 - 391 + 15 * 339 + 10 * 199 - 15 * 135, -600);
    assert_eq!(2887 - 6 * 925 - 4 * 499 - 391 + 15 * 339 + 10 * 199 - 15 * 135, 0);
    assert_eq!(WEIGHTS_EIGHTHS, [1, 6, 4, 1, 15, 10, 15]);
}

#[test]
fn weighted_sum_has_one_residual() {
    let t = PrintedTables::builtin();
    assert_eq!(table_weighted_sum(&t), vec![ResidualCell { cos: 1, sin: 6, s: 1, t: 6, residual: -600 }]);
    assert_eq!(weighted_cell_with_override(&t, 6, 1, 6, 1, 2887), 0);
    assert_eq!(weighted_cell_with_override(&t, 0, 9, 6, 1, 499), 0);
    assert_eq!(weighted_cell_with_override(&t, 7, 0, 7, 1, 499), 0);
    assert_eq!(t.location(1, 6, 1, 6).as_deref(), Some("numerators[0].rows[6].cells[7]"));
}

#[test]
fn corrected_tables_balance() {
    let text = include_str!("../data/tables.json");
    let fixed = text.replacen("2287", "2887", 1);
    assert_ne!(fixed, text);
    let t = PrintedTables::from_json(&fixed).unwrap();
    assert!(table_weighted_sum(&t).is_empty());
}

#[test]
fn malformed_tables_rejected() {
    let text = include_str!("../data/tables.json");
    assert!(PrintedTables::from_json("{}").is_err());
    assert!(PrintedTables::from_json(&text.replacen("\"1/8\"", "\"1/4\"", 1)).is_err());
    assert!(PrintedTables::from_json(&text.replacen("\"imag\": false", "\"imag\": true", 1)).is_err()
        || PrintedTables::from_json(&text.replacen("\"imag\":false", "\"imag\":true", 1)).is_err());
}

#[test]
fn derived_tables_at_2_3() {
    let t = PrintedTables::builtin();
    let tower = RadicalTower::for_spec(&EllipsoidSpec::from_ints(2, 3).unwrap());
    let rep = derived_vs_printed(&t, &tower).unwrap();
    assert!(rep.derived_weighted_sum_zero);
    assert_eq!(rep.sign, -1);
    assert!(rep.flags_cell(1, 6, 1, 6));
    assert_eq!(rep.flag_count(), 1);
    let rows = derived_numerators(&tower).unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.len() == 8));
}

#[test]
fn degenerate_comparisons() {
    let t = PrintedTables::builtin();
    for (a, b) in [(3, 1), (1, 3), (2, 2)] {
        let tower = RadicalTower::for_spec(&EllipsoidSpec::from_ints(a, b).unwrap());
        assert!(matches!(derived_vs_printed(&t, &tower), Err(RadicalError::DegenerateComparison(_))));
    }
}
