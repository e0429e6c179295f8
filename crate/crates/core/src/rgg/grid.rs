//! Cell-list neighbour search on the periodic unit cube.
//!
//! The cube is cut into `m^d` cells of side `1/m >= r`, so every partner of a
//! vertex lies in its own cell or one of the `3^d` cells around it (taken
//! modulo `m`). Expected work is `O(N μ)`.

use crate::geometry::torus_distance_sq;

/// Cells per axis: as many as possible with side at least `r`, but no more
/// cells than vertices overall.
pub(crate) fn cells_per_axis(radius: f64, vertices: usize, dim: usize) -> usize {
    let by_radius = if radius > 0.0 {
        // slight inflation so rounding never leaves a side below r
        (1.0 / (radius * (1.0 + 1e-9))).floor()
    } else {
        f64::INFINITY
    };
    let by_count = (vertices.max(1) as f64).powf(1.0 / dim as f64).floor();
    by_radius.min(by_count).max(1.0) as usize
}

/// Sorted adjacency lists of the pairs at toroidal distance `<= radius`.
pub(crate) fn radius_adjacency(positions: &[f64], dim: usize, radius: f64) -> Vec<Vec<usize>> {
    let count = if dim == 0 { 0 } else { positions.len() / dim };
    let mut adjacency = vec![Vec::new(); count];
    if count < 2 {
        return adjacency;
    }
    let m = cells_per_axis(radius, count, dim);
    let total_cells = m.pow(dim as u32);
    let r2 = radius * radius;

    let cell_coords = |i: usize| -> Vec<usize> {
        positions[i * dim..(i + 1) * dim]
            .iter()
            .map(|&x| ((x * m as f64) as usize).min(m - 1))
            .collect()
    };
    let linear = |coords: &[usize]| -> usize { coords.iter().rev().fold(0, |acc, &c| acc * m + c) };

    // counting sort of vertices by cell
    let cell_of: Vec<usize> = (0..count).map(|i| linear(&cell_coords(i))).collect();
    let mut starts = vec![0usize; total_cells + 1];
    for &c in &cell_of {
        starts[c + 1] += 1;
    }
    for c in 0..total_cells {
        starts[c + 1] += starts[c];
    }
    let mut fill = starts.clone();
    let mut members = vec![0usize; count];
    for (i, &c) in cell_of.iter().enumerate() {
        members[fill[c]] = i;
        fill[c] += 1;
    }

    // distinct neighbour offsets per axis (fewer than three when m < 3)
    let axis_neighbors = |c: usize| -> Vec<usize> {
        let mut v = vec![(c + m - 1) % m, c, (c + 1) % m];
        v.sort_unstable();
        v.dedup();
        v
    };

    let mut visited = vec![false; total_cells];
    let mut neighbor_cells = Vec::new();
    for i in 0..count {
        let home = cell_of[i];
        if visited[home] {
            continue;
        }
        visited[home] = true;
        // enumerate the neighbourhood of this cell once
        let coords = cell_coords(i);
        neighbor_cells.clear();
        neighbor_cells.push(0usize);
        let mut stride = 1usize;
        for &c in &coords {
            let offsets = axis_neighbors(c);
            let mut next = Vec::with_capacity(neighbor_cells.len() * offsets.len());
            for &base in &neighbor_cells {
                for &o in &offsets {
                    next.push(base + o * stride);
                }
            }
            neighbor_cells = next;
            stride *= m;
        }
        for &a in &members[starts[home]..starts[home + 1]] {
            let pa = &positions[a * dim..(a + 1) * dim];
            for &nc in &neighbor_cells {
                for &b in &members[starts[nc]..starts[nc + 1]] {
                    if b <= a {
                        continue;
                    }
                    if torus_distance_sq(pa, &positions[b * dim..(b + 1) * dim]) <= r2 {
                        adjacency[a].push(b);
                        adjacency[b].push(a);
                    }
                }
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    adjacency
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_side_never_below_radius() {
        for &r in &[0.05, 0.1, 0.2, 0.2499, 1.0 / 3.0 / 2.0, 0.025231] {
            let m = cells_per_axis(r, 1_000_000, 2);
            assert!(1.0 / m as f64 >= r, "r={r} m={m}");
        }
        assert_eq!(cells_per_axis(0.01, 4, 2), 2);
        assert_eq!(cells_per_axis(0.01, 0, 3), 1);
    }

    #[test]
    fn coarse_grids_do_not_duplicate_edges() {
        // 3 vertices force m = 1 in d = 2
        let positions = [0.1, 0.1, 0.12, 0.1, 0.98, 0.98];
        let adj = radius_adjacency(&positions, 2, 0.2);
        assert_eq!(adj, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }
}
