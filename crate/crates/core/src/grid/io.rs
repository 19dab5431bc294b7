//! Map file I/O: the ASCII `gridmap` format (bit-exact round trip),
//! binary PGM (P5) import, and a plain-text PGM (P2) writer for
//! diagnostic grayscale dumps.

use super::{GridMap, Occupancy, Point};
use crate::error::PlanError;
use std::fmt::Write as _;
use std::path::Path;

/// Read a map in the ASCII `gridmap` format.
///
/// Header: `gridmap <width> <height> <resolution_m> <origin_x_m> <origin_y_m>`,
/// followed by `height` lines of `width` characters from `.` (free),
/// `#` (occupied), `?` (unknown), row 0 first.
pub fn load_map<P: AsRef<Path>>(path: P) -> Result<GridMap, PlanError> {
    let text = std::fs::read_to_string(path)?;
    parse_map(&text)
}

pub fn parse_map(text: &str) -> Result<GridMap, PlanError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(PlanError::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "gridmap" {
        return Err(PlanError::Parse {
            line: 1,
            msg: format!("expected `gridmap <w> <h> <res> <ox> <oy>`, got {:?}", header),
        });
    }
    let width: usize = parse_field(fields[1], 1, "width")?;
    let height: usize = parse_field(fields[2], 1, "height")?;
    let resolution: f64 = parse_field(fields[3], 1, "resolution")?;
    let ox: f64 = parse_field(fields[4], 1, "origin x")?;
    let oy: f64 = parse_field(fields[5], 1, "origin y")?;

    let mut cells = Vec::with_capacity(width * height);
    let mut rows = 0usize;
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if rows == height {
            if line.trim().is_empty() {
                continue;
            }
            return Err(PlanError::Parse {
                line: line_no,
                msg: format!("expected {} rows, found extra content", height),
            });
        }
        let n = line.chars().count();
        if n != width {
            return Err(PlanError::Parse {
                line: line_no,
                msg: format!("row has {} cells, expected {}", n, width),
            });
        }
        for (offset, c) in line.chars().enumerate() {
            cells.push(Occupancy::from_char(c).ok_or_else(|| PlanError::Parse {
                line: line_no,
                msg: format!("unknown occupancy symbol {:?} at column {}", c, offset + 1),
            })?);
        }
        rows += 1;
    }
    if rows != height {
        return Err(PlanError::Parse {
            line: rows + 2,
            msg: format!("expected {} rows, found {}", height, rows),
        });
    }
    GridMap::from_cells(width, height, resolution, Point::new(ox, oy), cells)
}

fn parse_field<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T, PlanError> {
    s.parse().map_err(|_| PlanError::Parse {
        line,
        msg: format!("bad {} {:?}", what, s),
    })
}

/// Write `map` in the ASCII `gridmap` format. `load_map(save_map(m)) == m`
/// bit-exact; floats use the shortest representation that round-trips.
pub fn save_map<P: AsRef<Path>>(map: &GridMap, path: P) -> Result<(), PlanError> {
    std::fs::write(path, format_map(map))?;
    Ok(())
}

pub fn format_map(map: &GridMap) -> String {
    let mut out = String::with_capacity((map.width() + 1) * (map.height() + 1) + 48);
    let _ = writeln!(
        out,
        "gridmap {} {} {} {} {}",
        map.width(),
        map.height(),
        map.resolution(),
        map.origin().x,
        map.origin().y
    );
    for row in map.cells().chunks(map.width()) {
        for cell in row {
            out.push(cell.to_char());
        }
        out.push('\n');
    }
    out
}

/// Import a binary PGM (P5) as occupancy: pixel >= 250 is Free, <= 50 is
/// Occupied, anything between is Unknown. The file carries no world
/// geometry, so resolution and origin come from the caller.
pub fn import_pgm<P: AsRef<Path>>(
    path: P,
    resolution: f64,
    origin: Point,
) -> Result<GridMap, PlanError> {
    let bytes = std::fs::read(path)?;
    parse_pgm_p5(&bytes, resolution, origin)
}

pub fn parse_pgm_p5(bytes: &[u8], resolution: f64, origin: Point) -> Result<GridMap, PlanError> {
    let mut pos = 0usize;
    let magic = pgm_token(bytes, &mut pos).ok_or(PlanError::Parse {
        line: 1,
        msg: "missing PGM magic".into(),
    })?;
    if magic != b"P5" {
        return Err(PlanError::Parse {
            line: 1,
            msg: format!("expected P5, got {:?}", String::from_utf8_lossy(&magic)),
        });
    }
    let width = pgm_number(bytes, &mut pos, "width")?;
    let height = pgm_number(bytes, &mut pos, "height")?;
    let maxval = pgm_number(bytes, &mut pos, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(PlanError::Parse {
            line: 1,
            msg: format!("unsupported maxval {}", maxval),
        });
    }
    // One whitespace byte separates the header from the raster.
    pos += 1;
    let expected = width * height;
    let raster = bytes.get(pos..pos + expected).ok_or(PlanError::Parse {
        line: 1,
        msg: format!(
            "raster truncated: need {} bytes, have {}",
            expected,
            bytes.len().saturating_sub(pos)
        ),
    })?;
    let cells = raster
        .iter()
        .map(|&v| {
            if v >= 250 {
                Occupancy::Free
            } else if v <= 50 {
                Occupancy::Occupied
            } else {
                Occupancy::Unknown
            }
        })
        .collect();
    GridMap::from_cells(width, height, resolution, origin, cells)
}

fn pgm_token(bytes: &[u8], pos: &mut usize) -> Option<Vec<u8>> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if *pos > start {
        Some(bytes[start..*pos].to_vec())
    } else {
        None
    }
}

fn pgm_number(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize, PlanError> {
    let tok = pgm_token(bytes, pos).ok_or_else(|| PlanError::Parse {
        line: 1,
        msg: format!("missing PGM {}", what),
    })?;
    std::str::from_utf8(&tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| PlanError::Parse {
            line: 1,
            msg: format!("bad PGM {} {:?}", what, String::from_utf8_lossy(&tok)),
        })
}

/// Write a plain-text PGM (P2) with maxval 255, one raster row per line.
pub fn write_pgm_p2<P: AsRef<Path>>(
    path: P,
    width: usize,
    height: usize,
    values: &[u8],
) -> Result<(), PlanError> {
    if values.len() != width * height {
        return Err(PlanError::InvalidParameter(format!(
            "value count {} does not match {}x{}",
            values.len(),
            width,
            height
        )));
    }
    let mut out = String::with_capacity(values.len() * 4 + 32);
    let _ = writeln!(out, "P2");
    let _ = writeln!(out, "{} {}", width, height);
    let _ = writeln!(out, "255");
    for row in values.chunks(width) {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{}", v);
            first = false;
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::CellIndex;

    #[test]
    fn three_by_three_all_free() {
        let m = parse_map("gridmap 3 3 0.05 0 0\n...\n...\n...\n").unwrap();
        assert_eq!(m.width(), 3);
        assert_eq!(m.height(), 3);
        assert!(m.cells().iter().all(|&c| c == Occupancy::Free));
    }

    #[test]
    fn symbols_map_to_occupancy() {
        let m = parse_map("gridmap 3 2 0.1 -0.5 2.25\n.#?\n##.\n").unwrap();
        assert_eq!(m.get(CellIndex::new(0, 0)).unwrap(), Occupancy::Free);
        assert_eq!(m.get(CellIndex::new(1, 0)).unwrap(), Occupancy::Occupied);
        assert_eq!(m.get(CellIndex::new(2, 0)).unwrap(), Occupancy::Unknown);
        assert_eq!(m.get(CellIndex::new(2, 1)).unwrap(), Occupancy::Free);
        assert_eq!(m.origin(), Point::new(-0.5, 2.25));
    }

    #[test]
    fn wrong_cell_count_is_parse_error() {
        let err = parse_map("gridmap 3 3 0.05 0 0\n...\n..\n...\n").unwrap_err();
        match err {
            PlanError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_map("gridmap 3 3 0.05 0 0\n...\n...\n").is_err());
        assert!(parse_map("gridmap 3 3 0.05 0 0\n...\n...\n...\n...\n").is_err());
    }

    #[test]
    fn unknown_symbol_is_parse_error() {
        let err = parse_map("gridmap 2 1 0.05 0 0\n.x\n").unwrap_err();
        match err {
            PlanError::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("column 2"), "{}", msg);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn malformed_header_is_parse_error() {
        for bad in [
            "",
            "gridmap 3 3 0.05 0\n",
            "mapgrid 3 3 0.05 0 0\n",
            "gridmap a 3 0.05 0 0\n",
        ] {
            assert!(matches!(
                parse_map(bad).unwrap_err(),
                PlanError::Parse { line: 1, .. }
            ));
        }
    }

    #[test]
    fn save_load_round_trip_is_bit_exact() {
        let mut m = GridMap::new(7, 5, 0.05, Point::new(-1.3, 0.7), Occupancy::Free).unwrap();
        m.set(CellIndex::new(2, 3), Occupancy::Occupied).unwrap();
        m.set(CellIndex::new(6, 0), Occupancy::Unknown).unwrap();
        let text = format_map(&m);
        let back = parse_map(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(format_map(&back), text);
    }

    #[test]
    fn pgm_p5_thresholds() {
        let mut bytes = b"P5\n# probe\n4 2\n255\n".to_vec();
        bytes.extend_from_slice(&[255, 250, 249, 51, 50, 0, 128, 254]);
        let m = parse_pgm_p5(&bytes, 0.05, Point::new(0.0, 0.0)).unwrap();
        let want = [
            Occupancy::Free,
            Occupancy::Free,
            Occupancy::Unknown,
            Occupancy::Unknown,
            Occupancy::Occupied,
            Occupancy::Occupied,
            Occupancy::Unknown,
            Occupancy::Free,
        ];
        assert_eq!(m.cells(), &want);
    }

    #[test]
    fn pgm_p5_truncated_raster_is_parse_error() {
        let mut bytes = b"P5\n4 2\n255\n".to_vec();
        bytes.extend_from_slice(&[255; 7]);
        assert!(parse_pgm_p5(&bytes, 0.05, Point::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn pgm_p2_output_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stage.pgm");
        write_pgm_p2(&path, 3, 2, &[0, 128, 255, 1, 2, 3]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "P2\n3 2\n255\n0 128 255\n1 2 3\n");
    }
}
