//! Writes W_A(T), W_max^A(T) and the center of mass as CSV and SVG.
//!
//! cargo run --example plot_ranges -- out_dir

use std::path::PathBuf;

use semihilbert::export::{write_csv, write_svg, RangePlot};
use semihilbert::ranges::RangeConfig;
use semihilbert::variational::center_of_mass;
use semihilbert::{AOperator, CMatrix, C64};

fn main() -> semihilbert::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    let t = CMatrix::from_rows(&[
        vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        vec![C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(1.0, 0.0)],
        vec![C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
    ])?;
    let a = CMatrix::real_diag(&[2.0, 1.0, 0.0])?;
    let t = CMatrix::new({
        // Kill the null -> range block so T is A-bounded.
        let mut m = t.into_mat();
        m[(0, 2)] = C64::new(0.0, 0.0);
        m[(1, 2)] = C64::new(0.0, 0.0);
        m
    })?;
    let op = AOperator::from_matrices(&t, &a)?;
    let center = center_of_mass(&op, 1e-7)?.c;
    let plot = RangePlot::new(&op, center, &RangeConfig::default())?;
    let (csv, wmax) = write_csv(dir.join("ranges.csv"), &plot)?;
    write_svg(dir.join("ranges.svg"), &plot)?;
    println!(
        "wrote {}, {} and {}",
        csv.display(),
        wmax.display(),
        dir.join("ranges.svg").display()
    );
    Ok(())
}
