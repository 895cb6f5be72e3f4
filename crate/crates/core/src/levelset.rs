//! Triangulation of the level set `C(x, y, z) = 0` and its topology.
//!
//! The sampling box is cut into cubes and every cube into six tetrahedra
//! sharing the main diagonal, so that neighbouring cubes triangulate their
//! common faces identically. The piecewise-linear zero set is then a closed
//! 2-manifold whenever it stays inside the box, and its Euler
//! characteristic gives the genus.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::SurfaceParams;

/// Smallest accepted number of cells per axis.
pub const MIN_RESOLUTION: usize = 8;

/// Axis-aligned sampling box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl Bounds {
    pub fn new(min: [f64; 3], max: [f64; 3]) -> Result<Self> {
        for k in 0..3 {
            if !(min[k] < max[k]) || !min[k].is_finite() || !max[k].is_finite() {
                return Err(Error::DegenerateInterval {
                    lo: min[k],
                    hi: max[k],
                });
            }
        }
        Ok(Self { min, max })
    }

    /// `[-(g+1), g+1] x [-2c^{1/4}-1, 2c^{1/4}+1] x [-sqrt(2c)-1, sqrt(2c)+1]`.
    pub fn default_for(params: &SurfaceParams) -> Self {
        let bx = f64::from(params.g()) + 1.0;
        let by = 2.0 * params.c().powf(0.25) + 1.0;
        let bz = (2.0 * params.c()).sqrt() + 1.0;
        Self {
            min: [-bx, -by, -bz],
            max: [bx, by, bz],
        }
    }
}

/// Triangle mesh with outward orientation (towards increasing `C`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

/// Combinatorial invariants of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TopologyReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub components: usize,
    /// Edges with a single incident triangle; nonzero when the surface
    /// leaves the sampling box.
    pub boundary_edges: usize,
    /// Edges with more than two incident triangles.
    pub nonmanifold_edges: usize,
    /// Total genus `(2 * components - chi) / 2`, only for closed manifold meshes.
    pub genus: Option<i64>,
}

/// The six tetrahedra of a cube, as corner indices with bit 0 = x, bit 1 = y, bit 2 = z.
const TETS: [[usize; 4]; 6] = [
    [0, 1, 3, 7],
    [0, 1, 5, 7],
    [0, 2, 3, 7],
    [0, 2, 6, 7],
    [0, 4, 5, 7],
    [0, 4, 6, 7],
];

struct Grid {
    n: usize,
    min: [f64; 3],
    step: [f64; 3],
    values: Vec<f64>,
}

impl Grid {
    fn sample(params: &SurfaceParams, bounds: &Bounds, n: usize) -> Self {
        let step = [0, 1, 2].map(|k| (bounds.max[k] - bounds.min[k]) / n as f64);
        let m = n + 1;
        let coord = |k: usize, i: usize| bounds.min[k] + step[k] * i as f64;
        let px: Vec<f64> = (0..m).map(|i| params.p_at(coord(0, i))).collect();
        let c = params.c();
        let mut values = Vec::with_capacity(m * m * m);
        for k in 0..m {
            let z = coord(2, k);
            for j in 0..m {
                let y = coord(1, j);
                for &p in &px {
                    let s = p + y * y;
                    values.push(0.5 * s * s + 0.5 * z * z - 0.5 * c);
                }
            }
        }
        Self {
            n,
            min: bounds.min,
            step,
            values,
        }
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let m = self.n + 1;
        (k * m + j) * m + i
    }

    fn point(&self, id: usize) -> [f64; 3] {
        let m = self.n + 1;
        let (i, j, k) = (id % m, (id / m) % m, id / (m * m));
        [
            self.min[0] + self.step[0] * i as f64,
            self.min[1] + self.step[1] * j as f64,
            self.min[2] + self.step[2] * k as f64,
        ]
    }
}

struct Builder<'a> {
    grid: &'a Grid,
    keys: HashMap<(usize, usize), usize>,
    mesh: Mesh,
}

impl Builder<'_> {
    /// Vertex on the grid edge between `a` (inside) and `b` (outside).
    fn crossing(&mut self, a: usize, b: usize) -> usize {
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(&v) = self.keys.get(&key) {
            return v;
        }
        let (fa, fb) = (self.grid.values[a], self.grid.values[b]);
        let t = fa / (fa - fb);
        let (pa, pb) = (self.grid.point(a), self.grid.point(b));
        let p = [0, 1, 2].map(|k| pa[k] + t * (pb[k] - pa[k]));
        let v = self.mesh.vertices.len();
        self.mesh.vertices.push(p);
        self.keys.insert(key, v);
        v
    }

    /// Adds a triangle, flipped if needed so its normal points from the
    /// inside corners towards the outside corners.
    fn triangle(&mut self, mut tri: [usize; 3], inside: &[usize], outside: &[usize]) {
        let v = &self.mesh.vertices;
        let (a, b, c) = (v[tri[0]], v[tri[1]], v[tri[2]]);
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let normal = [
            u[1] * w[2] - u[2] * w[1],
            u[2] * w[0] - u[0] * w[2],
            u[0] * w[1] - u[1] * w[0],
        ];
        let centroid = |ids: &[usize]| {
            let mut s = [0.0; 3];
            for &id in ids {
                let p = self.grid.point(id);
                for k in 0..3 {
                    s[k] += p[k] / ids.len() as f64;
                }
            }
            s
        };
        let (ci, co) = (centroid(inside), centroid(outside));
        let dir = [co[0] - ci[0], co[1] - ci[1], co[2] - ci[2]];
        if normal[0] * dir[0] + normal[1] * dir[1] + normal[2] * dir[2] < 0.0 {
            tri.swap(1, 2);
        }
        self.mesh.triangles.push(tri);
    }

    fn tetrahedron(&mut self, corners: [usize; 4]) {
        let values = &self.grid.values;
        let (inside, outside): (Vec<usize>, Vec<usize>) = corners.iter().partition(|&&id| values[id] < 0.0);
        match inside.len() {
            1 => {
                let a = inside[0];
                let tri = [
                    self.crossing(a, outside[0]),
                    self.crossing(a, outside[1]),
                    self.crossing(a, outside[2]),
                ];
                self.triangle(tri, &inside, &outside);
            }
            3 => {
                let d = outside[0];
                let tri = [
                    self.crossing(inside[0], d),
                    self.crossing(inside[1], d),
                    self.crossing(inside[2], d),
                ];
                self.triangle(tri, &inside, &outside);
            }
            2 => {
                let (a, b) = (inside[0], inside[1]);
                let (c, d) = (outside[0], outside[1]);
                let ac = self.crossing(a, c);
                let ad = self.crossing(a, d);
                let bd = self.crossing(b, d);
                let bc = self.crossing(b, c);
                self.triangle([ac, ad, bd], &inside, &outside);
                self.triangle([ac, bd, bc], &inside, &outside);
            }
            _ => {}
        }
    }
}

/// Triangulates `C = 0` inside `bounds` with `resolution` cells per axis.
///
/// Returns an empty mesh when the box does not meet the surface.
pub fn extract(params: &SurfaceParams, bounds: &Bounds, resolution: usize) -> Result<Mesh> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!(
            "resolution {resolution} below the minimum {MIN_RESOLUTION}"
        )));
    }
    let grid = Grid::sample(params, bounds, resolution);
    let mut b = Builder {
        grid: &grid,
        keys: HashMap::new(),
        mesh: Mesh::default(),
    };
    let n = resolution;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                let corner = |c: usize| grid.index(i + (c & 1), j + (c >> 1 & 1), k + (c >> 2 & 1));
                for tet in TETS {
                    b.tetrahedron(tet.map(corner));
                }
            }
        }
    }
    Ok(b.mesh)
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Euler characteristic, components and boundary of a mesh.
pub fn topology(mesh: &Mesh) -> TopologyReport {
    let mut edge_faces: HashMap<(usize, usize), usize> = HashMap::new();
    let mut parent: Vec<usize> = (0..mesh.vertices.len()).collect();
    for t in &mesh.triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            *edge_faces.entry((a.min(b), a.max(b))).or_default() += 1;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
    }
    let mut used = vec![false; mesh.vertices.len()];
    for t in &mesh.triangles {
        for &v in t {
            used[v] = true;
        }
    }
    let vertices = used.iter().filter(|&&u| u).count();
    let components = (0..mesh.vertices.len())
        .filter(|&v| used[v] && find(&mut parent, v) == v)
        .count();
    let edges = edge_faces.len();
    let faces = mesh.triangles.len();
    let boundary_edges = edge_faces.values().filter(|&&c| c == 1).count();
    let nonmanifold_edges = edge_faces.values().filter(|&&c| c > 2).count();
    let chi = vertices as i64 - edges as i64 + faces as i64;
    let closed = faces > 0 && boundary_edges == 0 && nonmanifold_edges == 0;
    TopologyReport {
        vertices,
        edges,
        faces,
        euler_characteristic: chi,
        components,
        boundary_edges,
        nonmanifold_edges,
        genus: closed.then(|| (2 * components as i64 - chi) / 2),
    }
}
