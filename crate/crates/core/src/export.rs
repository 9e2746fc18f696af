//! CSV and SVG output for the A-numerical range and its maximal part.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::geometry::AOperator;
use crate::matrix::C64;
use crate::ranges::{self, ConvexRegion, RangeConfig};

/// What gets drawn: `W_A(T)`, `W_max^A(T)`, the center of mass and the
/// circle of radius `||T||_A`.
#[derive(Debug, Clone)]
pub struct RangePlot {
    pub range: ConvexRegion,
    pub maximal: ConvexRegion,
    pub center: C64,
    pub norm: f64,
}

impl RangePlot {
    pub fn new(op: &AOperator, center: C64, cfg: &RangeConfig) -> Result<Self> {
        let range = ranges::a_numrange(op, cfg.grid)?;
        let maximal = ranges::a_max_numrange(op, cfg)?.region;
        let norm = crate::reduction::a_op_seminorm(op)?;
        Ok(Self {
            range,
            maximal,
            center,
            norm,
        })
    }

    pub fn to_svg(&self) -> String {
        svg(self)
    }
}

/// `foo.csv` -> `foo_wmax.csv`.
pub fn wmax_sibling(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_wmax.{}", ext.to_string_lossy()),
        None => format!("{stem}_wmax"),
    };
    path.with_file_name(name)
}

/// Writes the range to `path` and the maximal range next to it; returns
/// both paths.
pub fn write_csv(path: impl AsRef<Path>, plot: &RangePlot) -> Result<(PathBuf, PathBuf)> {
    let path = path.as_ref().to_path_buf();
    let sibling = wmax_sibling(&path);
    std::fs::write(&path, plot.range.to_csv())?;
    std::fs::write(&sibling, plot.maximal.to_csv())?;
    Ok((path, sibling))
}

pub fn write_svg(path: impl AsRef<Path>, plot: &RangePlot) -> Result<()> {
    std::fs::write(path, svg(plot))?;
    Ok(())
}

fn points_attr(pts: &[C64]) -> String {
    let mut s = String::new();
    for (k, z) in pts.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.9},{:.9}", z.re, -z.im);
    }
    s
}

/// Complex plane picture with the imaginary axis pointing up.
pub fn svg(plot: &RangePlot) -> String {
    let r = plot.norm;
    let mut lo = C64::new(-r, -r);
    let mut hi = C64::new(r, r);
    for z in plot
        .range
        .boundary_pts
        .iter()
        .chain(&plot.maximal.boundary_pts)
        .chain([&plot.center])
    {
        lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-9);
    let pad = 0.1 * span;
    let (x0, y0) = (lo.re - pad, -hi.im - pad);
    let (w, h) = (hi.re - lo.re + 2.0 * pad, hi.im - lo.im + 2.0 * pad);
    let sw = span / 300.0;
    let mark = span / 40.0;
    let (cx, cy) = (plot.center.re, -plot.center.im);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.9} {y0:.9} {w:.9} {h:.9}" width="600" height="{:.0}">"#,
        600.0 * h / w
    );
    let _ = writeln!(
        s,
        r##"  <rect x="{x0:.9}" y="{y0:.9}" width="{w:.9}" height="{h:.9}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        s,
        r##"  <circle class="gamma" cx="0" cy="0" r="{r:.9}" fill="none" stroke="#888888" stroke-dasharray="{:.9}" stroke-width="{sw:.9}"/>"##,
        4.0 * sw
    );
    let _ = writeln!(
        s,
        r##"  <polygon class="range" points="{}" fill="none" stroke="#1f4e9c" stroke-width="{sw:.9}"/>"##,
        points_attr(&plot.range.boundary_pts)
    );
    let _ = writeln!(
        s,
        r##"  <polygon class="wmax" points="{}" fill="#e07b39" fill-opacity="0.6" stroke="#e07b39" stroke-width="{sw:.9}"/>"##,
        points_attr(&plot.maximal.boundary_pts)
    );
    let _ = writeln!(
        s,
        r##"  <circle class="origin" cx="0" cy="0" r="{:.9}" fill="#000000"/>"##,
        1.5 * sw
    );
    let _ = writeln!(
        s,
        r##"  <path class="center" d="M {:.9} {:.9} L {:.9} {:.9} M {:.9} {:.9} L {:.9} {:.9}" stroke="#b00020" stroke-width="{sw:.9}"/>"##,
        cx - mark,
        cy - mark,
        cx + mark,
        cy + mark,
        cx - mark,
        cy + mark,
        cx + mark,
        cy - mark
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CMatrix;

    fn plot() -> RangePlot {
        let t = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let op = AOperator::from_matrices(&t, &CMatrix::identity(2)).unwrap();
        RangePlot::new(
            &op,
            C64::new(0.0, 0.0),
            &RangeConfig {
                grid: 32,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn sibling_names() {
        assert_eq!(
            wmax_sibling(Path::new("out/r.csv")),
            PathBuf::from("out/r_wmax.csv")
        );
        assert_eq!(wmax_sibling(Path::new("r")), PathBuf::from("r_wmax"));
    }

    #[test]
    fn svg_has_every_layer() {
        let s = plot().to_svg();
        for class in ["gamma", "range", "wmax", "origin", "center"] {
            assert!(s.contains(&format!("class=\"{class}\"")), "{class}");
        }
        // Circle of radius 1 plus 10% padding on each side.
        assert!(
            s.contains(r#"viewBox="-1.200000000 -1.200000000 2.400000000 2.400000000""#),
            "{s}"
        );
    }

    #[test]
    fn csv_files_written() {
        let dir = std::env::temp_dir().join(format!("semihilbert-csv-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let (a, b) = write_csv(dir.join("r.csv"), &plot()).unwrap();
        let ra = std::fs::read_to_string(a).unwrap();
        let rb = std::fs::read_to_string(b).unwrap();
        assert_eq!(ra.lines().count(), 33);
        assert!(rb.starts_with("theta,support,re,im\n"));
        std::fs::remove_dir_all(&dir).ok();
    }
}
