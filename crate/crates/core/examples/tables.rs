//! Weighted-sum audit of the printed tables and comparison with derived
//! numerators.
use cr_umbilic::ellipsoid::EllipsoidSpec;
use cr_umbilic::radical::RadicalTower;
use cr_umbilic::tables::{derived_vs_printed, derived_vs_printed_symbolic, table_weighted_sum, PrintedTables};

fn main() {
    let tables = PrintedTables::builtin();
    for cell in table_weighted_sum(&tables) {
        println!(
            "nonzero weighted cell: cos^{} sin^{} a^({}/2) b^({}/2) residual {} (eighths)",
            cell.cos, cell.sin, cell.s, cell.t, cell.residual
        );
    }
    let spec = EllipsoidSpec::from_ints(2, 3).expect("valid");
    let t0 = std::time::Instant::now();
    let report = derived_vs_printed(&tables, &RadicalTower::for_spec(&spec)).expect("comparison runs");
    print!("{report}");
    println!("({:.2?})", t0.elapsed());
    if std::env::args().any(|a| a == "--symbolic") {
        let t0 = std::time::Instant::now();
        let report = derived_vs_printed_symbolic(&tables).expect("comparison runs");
        print!("{report}");
        println!("({:.2?})", t0.elapsed());
    }
}
