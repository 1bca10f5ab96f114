//! Hexagonal AP grid over a square venue and UE sampling in the central cell.

use rand::Rng;

use crate::{Error, Result};

/// Immutable AP deployment: a triangular lattice of ground projections whose
/// Voronoi cells form flat-edged hexagons with inter-site distance `d_S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub inter_site_distance_m: f64,
    /// AP height above UE level, metres.
    pub ap_height_m: f64,
    pub area_side_m: f64,
    /// Ground projections, row-major by lattice coordinates.
    pub ap_positions: Vec<(f64, f64)>,
    /// Index of the AP anchored at the venue centre.
    pub central_ap_index: usize,
    /// APs close enough to the central cell to matter for nearest-AP tests.
    central_neighborhood: Vec<usize>,
}

/// Hexagonal Voronoi cell area of a triangular lattice, (√3/2)·d_S².
pub fn cell_area(inter_site_distance_m: f64) -> f64 {
    3f64.sqrt() / 2.0 * inter_site_distance_m * inter_site_distance_m
}

impl Deployment {
    /// Lays a triangular lattice with basis vectors (d_S, 0) and
    /// (d_S/2, d_S·√3/2) over the square [-side/2, side/2]², anchored so one
    /// AP sits exactly at the venue centre.
    pub fn hex_grid(
        inter_site_distance_m: f64,
        ap_height_m: f64,
        area_side_m: f64,
    ) -> Result<Self> {
        let d = inter_site_distance_m;
        if !(d > 0.0) {
            return Err(Error::domain("inter_site_distance_m must be positive"));
        }
        if !(ap_height_m > 0.0) {
            return Err(Error::domain("ap_height_m must be positive"));
        }
        if !(area_side_m >= d) {
            return Err(Error::domain(
                "area_side_m must be at least the inter-site distance",
            ));
        }
        let half = area_side_m / 2.0;
        let row_step = d * 3f64.sqrt() / 2.0;
        let j_max = (half / row_step).floor() as i64;
        let mut ap_positions = Vec::new();
        for j in -j_max..=j_max {
            let y = j as f64 * row_step;
            let x_off = j as f64 * d / 2.0;
            // i range solving |i·d + x_off| ≤ half
            let i_min = ((-half - x_off) / d).ceil() as i64;
            let i_max = ((half - x_off) / d).floor() as i64;
            for i in i_min..=i_max {
                ap_positions.push((i as f64 * d + x_off, y));
            }
        }
        let central_ap_index = ap_positions
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let na = a.0 * a.0 + a.1 * a.1;
                let nb = b.0 * b.0 + b.1 * b.1;
                na.partial_cmp(&nb).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        let centre = ap_positions[central_ap_index];
        let reach = 2.5 * d;
        let central_neighborhood = ap_positions
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let dx = p.0 - centre.0;
                let dy = p.1 - centre.1;
                dx * dx + dy * dy <= reach * reach
            })
            .map(|(i, _)| i)
            .collect();
        Ok(Self {
            inter_site_distance_m: d,
            ap_height_m,
            area_side_m,
            ap_positions,
            central_ap_index,
            central_neighborhood,
        })
    }

    pub fn ap_count(&self) -> usize {
        self.ap_positions.len()
    }

    /// Index of the AP nearest (in 2-D) to the point; ties go to the lower index.
    pub fn nearest_ap(&self, point: (f64, f64)) -> usize {
        let mut best = 0;
        let mut best_d2 = f64::INFINITY;
        for (i, p) in self.ap_positions.iter().enumerate() {
            let dx = p.0 - point.0;
            let dy = p.1 - point.1;
            let d2 = dx * dx + dy * dy;
            if d2 < best_d2 {
                best_d2 = d2;
                best = i;
            }
        }
        best
    }

    fn nearest_of(positions: &[(f64, f64)], indices: &[usize], point: (f64, f64)) -> usize {
        let mut best = indices[0];
        let mut best_d2 = f64::INFINITY;
        for &i in indices {
            let dx = positions[i].0 - point.0;
            let dy = positions[i].1 - point.1;
            let d2 = dx * dx + dy * dy;
            if d2 < best_d2 {
                best_d2 = d2;
                best = i;
            }
        }
        best
    }

    /// Uniform sample over the central AP's hexagonal Voronoi cell, by
    /// rejection from the cell's tight bounding box with a nearest-AP
    /// acceptance test (boundary ties resolve to the lower index).
    pub fn sample_ue_position<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let centre = self.ap_positions[self.central_ap_index];
        let d = self.inter_site_distance_m;
        // Hexagon vertices lie at d/√3 along the ±y-ish directions, d/2 in x.
        let hx = d / 2.0;
        let hy = d / 3f64.sqrt();
        loop {
            let p = (
                centre.0 + rng.random_range(-hx..=hx),
                centre.1 + rng.random_range(-hy..=hy),
            );
            if Self::nearest_of(&self.ap_positions, &self.central_neighborhood, p)
                == self.central_ap_index
            {
                return p;
            }
        }
    }
}
