use std::f64::consts::PI;
use std::io::Write;

use crate::beamforming::{build_plan, SizingMethod};
use crate::error::Result;
use crate::geometry::{ArraySpec, Deployment, Point2};

pub const TABLE1_SIZES: [usize; 4] = [2048, 1024, 512, 256];
pub const TABLE1_POSITIONS: [Point2; 2] = [Point2 { x: 0.0, y: 933.0 }, Point2 { x: 933.0, y: 933.0 }];
pub const TABLE1_METHODS: [SizingMethod; 3] = [SizingMethod::Span, SizingMethod::FarField, SizingMethod::MainLobe];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Cell {
    pub irs_elements: usize,
    pub irs_center: Point2,
    pub method: SizingMethod,
    pub n_active: usize,
}

/// 64-element Tx at the origin facing +y, horizontal surface facing the Tx
/// side, single-element Rx at `(933λ, 0)`.
pub fn table1_deployment(irs_elements: usize, irs_center: Point2) -> Result<Deployment> {
    Ok(Deployment {
        tx: ArraySpec::new(Point2::default(), 0.0, 64, 0.5)?,
        irs: ArraySpec::new(irs_center, PI, irs_elements, 0.5)?,
        rx: ArraySpec::new(Point2::new(933.0, 0.0), 0.0, 1, 0.5)?,
    })
}

/// Active Tx element counts for every (size, position, method), sizes
/// outermost.
pub fn run_table1() -> Result<Vec<Table1Cell>> {
    let mut cells = Vec::new();
    for n in TABLE1_SIZES {
        for c in TABLE1_POSITIONS {
            let dep = table1_deployment(n, c)?;
            for m in TABLE1_METHODS {
                cells.push(Table1Cell {
                    irs_elements: n,
                    irs_center: c,
                    method: m,
                    n_active: build_plan(&dep, m)?.n_active(),
                });
            }
        }
    }
    Ok(cells)
}

pub fn write_table1_csv<W: Write>(cells: &[Table1Cell], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["irs_elements", "irs_x", "irs_y", "method", "n_active"])?;
    for c in cells {
        w.write_record([
            c.irs_elements.to_string(),
            c.irs_center.x.to_string(),
            c.irs_center.y.to_string(),
            c.method.tag().to_string(),
            c.n_active.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Plain-text layout: one row per size, methods grouped by position.
pub fn format_table1(cells: &[Table1Cell]) -> String {
    let mut s = String::from("size  ");
    for c in TABLE1_POSITIONS {
        s += &format!("| ({:.0},{:.0}) span ff ml ", c.x, c.y);
    }
    s.push('\n');
    for n in TABLE1_SIZES {
        s += &format!("{n:<6}");
        for c in TABLE1_POSITIONS {
            s += "|";
            for m in TABLE1_METHODS {
                if let Some(cell) = cells
                    .iter()
                    .find(|x| x.irs_elements == n && x.irs_center == c && x.method == m)
                {
                    s += &format!(" {:>4}", cell.n_active);
                }
            }
            s += "        ";
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape_and_spot_cells() {
        let cells = run_table1().unwrap();
        assert_eq!(cells.len(), 24);
        let at = |n, c: Point2, m| {
            cells
                .iter()
                .find(|x| x.irs_elements == n && x.irs_center == c && x.method == m)
                .unwrap()
                .n_active
        };
        let broadside = TABLE1_POSITIONS[0];
        assert_eq!(at(512, broadside, SizingMethod::Span), 9);
        assert_eq!(at(512, broadside, SizingMethod::FarField), 43);
        assert_eq!(at(512, broadside, SizingMethod::MainLobe), 15);
        assert_eq!(at(2048, broadside, SizingMethod::Span), 2);
        for m in TABLE1_METHODS {
            assert_eq!(at(256, TABLE1_POSITIONS[1], m), 51);
        }
        let text = format_table1(&cells);
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn csv_has_every_cell() {
        let cells = run_table1().unwrap();
        let mut buf = Vec::new();
        write_table1_csv(&cells, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 25);
    }
}
