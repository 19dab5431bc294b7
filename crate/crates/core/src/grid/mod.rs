//! Occupancy grids, costmaps and the coordinate transforms between
//! world coordinates (meters) and cell indices.
//!
//! Both map types share the same geometry convention: `origin` is the world
//! position of the **center** of cell (0, 0), cells are stored row-major,
//! and a world point maps to the cell whose center is nearest.

mod circle;
mod inflate;
mod io;

pub use circle::raster_circle;
pub use inflate::inflate;
pub use io::{format_map, import_pgm, load_map, parse_map, save_map, write_pgm_p2};

use crate::error::PlanError;

/// Cost value marking a cell as untraversable.
pub const COST_LETHAL: u8 = 255;

/// Per-cell occupancy state of a [`GridMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Occupancy {
    Free,
    Occupied,
    Unknown,
}

impl Occupancy {
    /// Character used in the ASCII map format.
    pub fn to_char(self) -> char {
        match self {
            Occupancy::Free => '.',
            Occupancy::Occupied => '#',
            Occupancy::Unknown => '?',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '.' => Some(Occupancy::Free),
            '#' => Some(Occupancy::Occupied),
            '?' => Some(Occupancy::Unknown),
            _ => None,
        }
    }
}

/// A 2D world point in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Column/row index of a grid cell. May hold out-of-bounds values while
/// doing neighborhood arithmetic; bounds are checked when indexing a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    pub col: i32,
    pub row: i32,
}

impl CellIndex {
    pub fn new(col: i32, row: i32) -> Self {
        CellIndex { col, row }
    }
}

/// Shared geometry of a [`GridMap`] and the [`Costmap`] derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub width: usize,
    pub height: usize,
    /// Cell edge length in meters per cell.
    pub resolution: f64,
    /// World position of the center of cell (0, 0).
    pub origin: Point,
}

impl Geometry {
    fn validate(&self) -> Result<(), PlanError> {
        if self.width == 0 || self.height == 0 {
            return Err(PlanError::InvalidParameter(format!(
                "map must be at least 1x1, got {}x{}",
                self.width, self.height
            )));
        }
        if !(self.resolution > 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "resolution must be > 0, got {}",
                self.resolution
            )));
        }
        Ok(())
    }

    pub fn contains(&self, c: CellIndex) -> bool {
        c.col >= 0 && c.row >= 0 && (c.col as usize) < self.width && (c.row as usize) < self.height
    }

    pub fn index_of(&self, c: CellIndex) -> usize {
        debug_assert!(self.contains(c));
        c.row as usize * self.width + c.col as usize
    }

    /// Cell whose center is nearest to `p`.
    pub fn world_to_cell(&self, p: Point) -> Result<CellIndex, PlanError> {
        let col = ((p.x - self.origin.x) / self.resolution + 0.5).floor();
        let row = ((p.y - self.origin.y) / self.resolution + 0.5).floor();
        let cell = CellIndex::new(col as i32, row as i32);
        if col.is_finite() && row.is_finite() && self.contains(cell) {
            Ok(cell)
        } else {
            Err(PlanError::OutOfBounds { x: p.x, y: p.y })
        }
    }

    /// World coordinates of the center of cell `c`.
    pub fn cell_to_world(&self, c: CellIndex) -> Result<Point, PlanError> {
        if !self.contains(c) {
            return Err(PlanError::CellOutOfBounds {
                col: c.col,
                row: c.row,
            });
        }
        Ok(self.cell_center_unchecked(c))
    }

    /// Center of `c` without a bounds check; used for off-map geometry tests.
    pub fn cell_center_unchecked(&self, c: CellIndex) -> Point {
        Point::new(
            self.origin.x + c.col as f64 * self.resolution,
            self.origin.y + c.row as f64 * self.resolution,
        )
    }
}

/// Static occupancy grid with world geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    geometry: Geometry,
    cells: Vec<Occupancy>,
}

impl GridMap {
    /// Create a map filled with `fill`.
    pub fn new(
        width: usize,
        height: usize,
        resolution: f64,
        origin: Point,
        fill: Occupancy,
    ) -> Result<Self, PlanError> {
        let geometry = Geometry {
            width,
            height,
            resolution,
            origin,
        };
        geometry.validate()?;
        Ok(GridMap {
            geometry,
            cells: vec![fill; width * height],
        })
    }

    pub fn from_cells(
        width: usize,
        height: usize,
        resolution: f64,
        origin: Point,
        cells: Vec<Occupancy>,
    ) -> Result<Self, PlanError> {
        let geometry = Geometry {
            width,
            height,
            resolution,
            origin,
        };
        geometry.validate()?;
        if cells.len() != width * height {
            return Err(PlanError::InvalidParameter(format!(
                "cell count {} does not match {}x{}",
                cells.len(),
                width,
                height
            )));
        }
        Ok(GridMap { geometry, cells })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn width(&self) -> usize {
        self.geometry.width
    }

    pub fn height(&self) -> usize {
        self.geometry.height
    }

    pub fn resolution(&self) -> f64 {
        self.geometry.resolution
    }

    pub fn origin(&self) -> Point {
        self.geometry.origin
    }

    pub fn get(&self, c: CellIndex) -> Result<Occupancy, PlanError> {
        if self.geometry.contains(c) {
            Ok(self.cells[self.geometry.index_of(c)])
        } else {
            Err(PlanError::CellOutOfBounds {
                col: c.col,
                row: c.row,
            })
        }
    }

    pub fn set(&mut self, c: CellIndex, v: Occupancy) -> Result<(), PlanError> {
        if self.geometry.contains(c) {
            let idx = self.geometry.index_of(c);
            self.cells[idx] = v;
            Ok(())
        } else {
            Err(PlanError::CellOutOfBounds {
                col: c.col,
                row: c.row,
            })
        }
    }

    pub fn cells(&self) -> &[Occupancy] {
        &self.cells
    }

    pub fn world_to_cell(&self, p: Point) -> Result<CellIndex, PlanError> {
        self.geometry.world_to_cell(p)
    }

    pub fn cell_to_world(&self, c: CellIndex) -> Result<Point, PlanError> {
        self.geometry.cell_to_world(c)
    }
}

/// Inflated cost field derived from a [`GridMap`].
///
/// Costs are in [0, 255]: 255 is lethal (occupied, unknown, or inside the
/// robot radius of an obstacle), decaying linearly through the inflation
/// band down to 1, and 0 in free space beyond the inflation radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Costmap {
    geometry: Geometry,
    cost: Vec<u8>,
    lethal_threshold: u8,
}

impl Costmap {
    pub(crate) fn from_parts(geometry: Geometry, cost: Vec<u8>) -> Self {
        debug_assert_eq!(cost.len(), geometry.width * geometry.height);
        Costmap {
            geometry,
            cost,
            lethal_threshold: COST_LETHAL,
        }
    }

    /// Zero-cost map with the given geometry; handy for tests and benches.
    pub fn free(width: usize, height: usize, resolution: f64, origin: Point) -> Result<Self, PlanError> {
        let geometry = Geometry {
            width,
            height,
            resolution,
            origin,
        };
        geometry.validate()?;
        Ok(Costmap {
            geometry,
            cost: vec![0; width * height],
            lethal_threshold: COST_LETHAL,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn width(&self) -> usize {
        self.geometry.width
    }

    pub fn height(&self) -> usize {
        self.geometry.height
    }

    pub fn resolution(&self) -> f64 {
        self.geometry.resolution
    }

    pub fn origin(&self) -> Point {
        self.geometry.origin
    }

    pub fn lethal_threshold(&self) -> u8 {
        self.lethal_threshold
    }

    pub fn set_lethal_threshold(&mut self, threshold: u8) {
        self.lethal_threshold = threshold;
    }

    pub fn get(&self, c: CellIndex) -> Result<u8, PlanError> {
        if self.geometry.contains(c) {
            Ok(self.cost[self.geometry.index_of(c)])
        } else {
            Err(PlanError::CellOutOfBounds {
                col: c.col,
                row: c.row,
            })
        }
    }

    pub fn set(&mut self, c: CellIndex, v: u8) -> Result<(), PlanError> {
        if self.geometry.contains(c) {
            let idx = self.geometry.index_of(c);
            self.cost[idx] = v;
            Ok(())
        } else {
            Err(PlanError::CellOutOfBounds {
                col: c.col,
                row: c.row,
            })
        }
    }

    pub fn is_lethal(&self, c: CellIndex) -> bool {
        match self.get(c) {
            Ok(v) => v >= self.lethal_threshold,
            Err(_) => true,
        }
    }

    pub fn cost(&self) -> &[u8] {
        &self.cost
    }

    pub fn world_to_cell(&self, p: Point) -> Result<CellIndex, PlanError> {
        self.geometry.world_to_cell(p)
    }

    pub fn cell_to_world(&self, c: CellIndex) -> Result<Point, PlanError> {
        self.geometry.cell_to_world(c)
    }
}
