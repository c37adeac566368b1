//! Triangle control meshes: the discrete middle surface, its connectivity
//! queries, generators for the benchmark geometries, and one-ring extraction
//! for subdivision patches.
//!
//! One-ring ordering is canonical so that derivative tables are reproducible
//! across runs: the element's three vertices come first (the irregular vertex,
//! if any, is rotated to slot 0), then the remaining ring of vertex 0
//! counter-clockwise starting after vertex 2, then the three remaining ring
//! nodes of vertex 1, then the two remaining ring nodes of vertex 2. Boundary
//! patches are completed with ghost nodes, one per missing neighbor, obtained
//! by reflecting the interior node across the boundary edge:
//! `x_ghost = x_a + x_b - x_opposite`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use nalgebra::Vector3;

use crate::error::Error;
use crate::Result;

/// Supported import formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

/// A member of a one-ring: either a real mesh node or a ghost node produced
/// by reflecting an interior node across a boundary edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingNode {
    Real(usize),
    Ghost { a: usize, b: usize, opposite: usize },
}

impl RingNode {
    fn ghost(a: usize, b: usize, opposite: usize) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        RingNode::Ghost { a, b, opposite }
    }

    /// Resolves the node position against the given nodal coordinates.
    pub fn position(&self, nodes: &[Vector3<f64>]) -> Vector3<f64> {
        match *self {
            RingNode::Real(i) => nodes[i],
            RingNode::Ghost { a, b, opposite } => nodes[a] + nodes[b] - nodes[opposite],
        }
    }

    /// The real nodes this ring node depends on, with their weights.
    pub fn supports(&self) -> impl Iterator<Item = (usize, f64)> {
        match *self {
            RingNode::Real(i) => vec![(i, 1.0)].into_iter(),
            RingNode::Ghost { a, b, opposite } => {
                vec![(a, 1.0), (b, 1.0), (opposite, -1.0)].into_iter()
            }
        }
    }
}

/// One element together with its ordered patch control nodes.
#[derive(Debug, Clone)]
pub struct OneRing {
    pub element: usize,
    /// Element corners after rotation, `corners[0]` is the (single) irregular
    /// vertex when one exists.
    pub corners: [usize; 3],
    /// Canonically ordered control nodes, `valence + 6` entries.
    pub nodes: Vec<RingNode>,
    /// Effective valence of corner 0 (6 for a regular patch).
    pub valence: usize,
}

impl OneRing {
    pub fn is_regular(&self) -> bool {
        self.valence == 6
    }

    /// Valence of the irregular vertex, if the patch has one.
    pub fn irregular_valence(&self) -> Option<usize> {
        (self.valence != 6).then_some(self.valence)
    }

    /// Number of ghost entries in the ring.
    pub fn ghost_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, RingNode::Ghost { .. }))
            .count()
    }
}

#[derive(Debug, Clone, Default)]
struct EdgeInfo {
    /// Incident triangles (at most two for a manifold mesh).
    tris: Vec<usize>,
    /// Directed occurrences, to check consistent winding.
    directed: Vec<(usize, usize)>,
}

/// An indexed triangle mesh with validated manifold connectivity.
#[derive(Debug, Clone)]
pub struct ControlMesh {
    nodes: Vec<Vector3<f64>>,
    triangles: Vec<[usize; 3]>,
    vertex_tris: Vec<Vec<usize>>,
    edges: HashMap<(usize, usize), EdgeInfo>,
    boundary_node: Vec<bool>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ControlMesh {
    /// Builds a mesh and enforces the connectivity invariants: valid distinct
    /// indices, no edge shared by more than two triangles, consistent winding
    /// across interior edges, and single-fan vertices.
    pub fn new(nodes: Vec<Vector3<f64>>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let n = nodes.len();
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= n) {
                return Err(Error::BadTriangle {
                    tri: t,
                    msg: format!("node index out of range (mesh has {n} nodes)"),
                });
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::BadTriangle {
                    tri: t,
                    msg: "repeated node index".into(),
                });
            }
        }

        let mut edges: HashMap<(usize, usize), EdgeInfo> = HashMap::new();
        let mut vertex_tris = vec![Vec::new(); n];
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let a = tri[k];
                let b = tri[(k + 1) % 3];
                let info = edges.entry(edge_key(a, b)).or_default();
                info.tris.push(t);
                info.directed.push((a, b));
                vertex_tris[tri[k]].push(t);
            }
        }

        for (&(a, b), info) in &edges {
            if info.tris.len() > 2 {
                return Err(Error::NonManifoldEdge {
                    a,
                    b,
                    count: info.tris.len(),
                });
            }
            if info.directed.len() == 2 && info.directed[0] == info.directed[1] {
                return Err(Error::InconsistentOrientation { a, b });
            }
        }

        let mut boundary_node = vec![false; n];
        for (&(a, b), info) in &edges {
            if info.tris.len() == 1 {
                boundary_node[a] = true;
                boundary_node[b] = true;
            }
        }

        let mesh = ControlMesh {
            nodes,
            triangles,
            vertex_tris,
            edges,
            boundary_node,
        };

        // Single-fan check: the CCW walk must visit every incident triangle.
        for v in 0..n {
            if !mesh.vertex_tris[v].is_empty() {
                mesh.real_ring(v)?;
            }
        }
        Ok(mesh)
    }

    pub fn nodes(&self) -> &[Vector3<f64>] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Displacement degrees of freedom (three per node).
    pub fn dof_count(&self) -> usize {
        3 * self.nodes.len()
    }

    pub fn is_boundary_node(&self, v: usize) -> bool {
        self.boundary_node[v]
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.edges.values().filter(|e| e.tris.len() == 1).count()
    }

    pub fn interior_edge_count(&self) -> usize {
        self.edges.values().filter(|e| e.tris.len() == 2).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of real neighbors of `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.real_ring(v).map(|r| r.len()).unwrap_or(0)
    }

    /// Valence after ghost extension: boundary vertices gain two ghosts.
    pub fn effective_valence(&self, v: usize) -> usize {
        self.valence(v) + if self.boundary_node[v] { 2 } else { 0 }
    }

    /// The third vertex of the unique triangle containing boundary edge (a, b).
    fn boundary_edge_apex(&self, a: usize, b: usize) -> Result<usize> {
        let info = self
            .edges
            .get(&edge_key(a, b))
            .ok_or_else(|| Error::Boundary(format!("({a}, {b}) is not an edge")))?;
        if info.tris.len() != 1 {
            return Err(Error::Boundary(format!("({a}, {b}) is not a boundary edge")));
        }
        let tri = self.triangles[info.tris[0]];
        Ok(*tri.iter().find(|&&x| x != a && x != b).expect("apex"))
    }

    /// CCW-ordered real neighbors of `v`. For an interior vertex the cycle
    /// starts at the smallest neighbor id; for a boundary vertex it runs from
    /// one boundary edge to the other.
    pub fn real_ring(&self, v: usize) -> Result<Vec<usize>> {
        // succ[a] = b whenever some triangle reads (v, a, b) cyclically.
        let mut succ: HashMap<usize, usize> = HashMap::new();
        let mut has_pred: HashMap<usize, bool> = HashMap::new();
        for &t in &self.vertex_tris[v] {
            let tri = self.triangles[t];
            let k = tri.iter().position(|&x| x == v).unwrap();
            let a = tri[(k + 1) % 3];
            let b = tri[(k + 2) % 3];
            if succ.insert(a, b).is_some() {
                return Err(Error::NonManifoldVertex { vertex: v });
            }
            *has_pred.entry(b).or_insert(false) = true;
            has_pred.entry(a).or_insert(false);
        }
        let start = if self.boundary_node[v] {
            // Fan start: the neighbor that is nobody's successor.
            let mut starts: Vec<usize> = has_pred
                .iter()
                .filter(|&(_, &p)| !p)
                .map(|(&a, _)| a)
                .collect();
            if starts.len() != 1 {
                return Err(Error::NonManifoldVertex { vertex: v });
            }
            starts.pop().unwrap()
        } else {
            *succ.keys().min().expect("nonempty fan")
        };

        let mut ring = vec![start];
        let mut cur = start;
        while let Some(&next) = succ.get(&cur) {
            if next == start {
                break;
            }
            ring.push(next);
            cur = next;
            if ring.len() > succ.len() + 1 {
                return Err(Error::NonManifoldVertex { vertex: v });
            }
        }
        // Every incident triangle must have been traversed.
        let expected = self.vertex_tris[v].len() + usize::from(self.boundary_node[v]);
        if ring.len() != expected {
            return Err(Error::NonManifoldVertex { vertex: v });
        }
        Ok(ring)
    }

    /// CCW ring of `v` with ghost extension appended past the boundary.
    pub fn effective_ring(&self, v: usize) -> Result<Vec<RingNode>> {
        let real = self.real_ring(v)?;
        let mut ring: Vec<RingNode> = real.iter().map(|&r| RingNode::Real(r)).collect();
        if self.boundary_node[v] {
            let s_start = real[0];
            let s_end = *real.last().unwrap();
            ring.push(RingNode::ghost(v, s_end, self.boundary_edge_apex(v, s_end)?));
            ring.push(RingNode::ghost(
                v,
                s_start,
                self.boundary_edge_apex(v, s_start)?,
            ));
        }
        Ok(ring)
    }

    /// Extracts the canonical one-ring of an element.
    pub fn one_ring(&self, element: usize) -> Result<OneRing> {
        let tri = self.triangles[element];
        let valences = [
            self.effective_valence(tri[0]),
            self.effective_valence(tri[1]),
            self.effective_valence(tri[2]),
        ];
        let irregular: Vec<usize> = (0..3).filter(|&k| valences[k] != 6).collect();
        if irregular.len() > 1 {
            return Err(Error::UnsupportedPatch {
                element,
                count: irregular.len(),
            });
        }
        let rot = irregular.first().copied().unwrap_or(0);
        let corners = [tri[rot], tri[(rot + 1) % 3], tri[(rot + 2) % 3]];
        let (c0, c1, c2) = (corners[0], corners[1], corners[2]);
        let valence = valences[rot];

        let rotate_to = |ring: Vec<RingNode>, first: RingNode| -> Result<Vec<RingNode>> {
            let k = ring
                .iter()
                .position(|&r| r == first)
                .ok_or(Error::NonManifoldVertex { vertex: c0 })?;
            let mut out = Vec::with_capacity(ring.len());
            out.extend_from_slice(&ring[k..]);
            out.extend_from_slice(&ring[..k]);
            Ok(out)
        };

        let ring0 = rotate_to(self.effective_ring(c0)?, RingNode::Real(c1))?;
        debug_assert_eq!(ring0.len(), valence);
        if ring0.get(1) != Some(&RingNode::Real(c2)) {
            return Err(Error::BadTriangle {
                tri: element,
                msg: "ring of corner 0 is inconsistent with the element winding".into(),
            });
        }
        let ring1 = rotate_to(self.effective_ring(c1)?, RingNode::Real(c2))?;
        let ring2 = rotate_to(self.effective_ring(c2)?, RingNode::Real(c0))?;
        if ring1.len() != 6 || ring2.len() != 6 {
            return Err(Error::UnsupportedPatch { element, count: 2 });
        }

        let mut nodes = Vec::with_capacity(valence + 6);
        nodes.push(RingNode::Real(c0));
        nodes.push(RingNode::Real(c1));
        nodes.push(RingNode::Real(c2));
        nodes.extend_from_slice(&ring0[2..]);
        // ring1 = [c2, c0, rN, ..] where rN closes the ring of corner 0.
        debug_assert_eq!(ring1[1], RingNode::Real(c0));
        debug_assert_eq!(ring1[2], ring0[valence - 1]);
        nodes.extend_from_slice(&ring1[3..6]);
        // ring2 = [c0, c1, d, e, f, r3] with d shared with ring1 and r3 with ring0.
        debug_assert_eq!(ring2[1], RingNode::Real(c1));
        debug_assert_eq!(ring2[2], ring1[5]);
        debug_assert_eq!(ring2[5], ring0[2]);
        nodes.extend_from_slice(&ring2[3..5]);

        debug_assert_eq!(nodes.len(), valence + 6);
        Ok(OneRing {
            element,
            corners,
            nodes,
            valence,
        })
    }

    /// One ring per element.
    pub fn build_one_rings(&self) -> Result<Vec<OneRing>> {
        (0..self.triangles.len()).map(|e| self.one_ring(e)).collect()
    }

    /// Replaces every triangle by four, with new nodes at edge midpoints of
    /// the input geometry.
    pub fn subdivide_quadrisect(&self) -> Result<ControlMesh> {
        let mut nodes = self.nodes.clone();
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, nodes: &mut Vec<Vector3<f64>>| -> usize {
            *midpoint.entry(edge_key(a, b)).or_insert_with(|| {
                nodes.push(0.5 * (nodes[a] + nodes[b]));
                nodes.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for tri in &self.triangles {
            let [c0, c1, c2] = *tri;
            let m01 = mid(c0, c1, &mut nodes);
            let m12 = mid(c1, c2, &mut nodes);
            let m20 = mid(c2, c0, &mut nodes);
            triangles.push([c0, m01, m20]);
            triangles.push([c1, m12, m01]);
            triangles.push([c2, m20, m12]);
            triangles.push([m01, m12, m20]);
        }
        ControlMesh::new(nodes, triangles)
    }

    /// Control-mesh surface area (sum of flat triangle areas).
    pub fn control_area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                0.5 * (self.nodes[b] - self.nodes[a])
                    .cross(&(self.nodes[c] - self.nodes[a]))
                    .norm()
            })
            .sum()
    }

    /// Plain-text connectivity statistics.
    pub fn stats(&self) -> MeshStats {
        let mut histogram: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.nodes.len() {
            *histogram.entry(self.effective_valence(v)).or_insert(0) += 1;
        }
        let mut valence_histogram: Vec<(usize, usize)> = histogram.into_iter().collect();
        valence_histogram.sort_unstable();
        MeshStats {
            nodes: self.nodes.len(),
            triangles: self.triangles.len(),
            dof: self.dof_count(),
            boundary_edges: self.boundary_edge_count(),
            interior_edges: self.interior_edge_count(),
            control_area: self.control_area(),
            valence_histogram,
        }
    }
}

/// Summary statistics for a control mesh.
#[derive(Debug, Clone)]
pub struct MeshStats {
    pub nodes: usize,
    pub triangles: usize,
    pub dof: usize,
    pub boundary_edges: usize,
    pub interior_edges: usize,
    pub control_area: f64,
    /// (effective valence, count) pairs, ascending.
    pub valence_histogram: Vec<(usize, usize)>,
}

impl fmt::Display for MeshStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes:          {}", self.nodes)?;
        writeln!(f, "triangles:      {}", self.triangles)?;
        writeln!(f, "dof:            {}", self.dof)?;
        writeln!(f, "boundary edges: {}", self.boundary_edges)?;
        writeln!(f, "interior edges: {}", self.interior_edges)?;
        writeln!(f, "control area:   {:.6e}", self.control_area)?;
        write!(f, "valences:      ")?;
        for (v, c) in &self.valence_histogram {
            write!(f, " {v}x{c}")?;
        }
        Ok(())
    }
}

/// Structured latitude-longitude hemisphere from the equator up to the rim of
/// a polar hole, quads split with a uniform diagonal direction and the seam
/// welded at the wrap-around meridian.
pub fn gen_hemisphere(
    n_meridian: usize,
    n_circumference: usize,
    radius: f64,
    hole_angle_deg: f64,
) -> Result<ControlMesh> {
    if n_meridian < 2 || n_circumference < 8 {
        return Err(Error::DegenerateResolution(format!(
            "hemisphere needs n_meridian >= 2 and n_circumference >= 8, got {n_meridian}x{n_circumference}"
        )));
    }
    if !(hole_angle_deg > 0.0 && hole_angle_deg < 90.0) {
        return Err(Error::DegenerateResolution(format!(
            "hole angle must lie in (0, 90) degrees, got {hole_angle_deg}"
        )));
    }
    let nm = n_meridian;
    let nc = n_circumference;
    let mut nodes = Vec::with_capacity((nm + 1) * nc);
    for j in 0..=nm {
        // Polar angle runs from 90 degrees (equator) to the hole rim.
        let polar_deg = 90.0 - (j as f64) * (90.0 - hole_angle_deg) / (nm as f64);
        let polar = polar_deg.to_radians();
        let (sp, cp) = (polar.sin(), polar.cos());
        for k in 0..nc {
            let az = 2.0 * std::f64::consts::PI * (k as f64) / (nc as f64);
            nodes.push(radius * Vector3::new(sp * az.cos(), sp * az.sin(), cp));
        }
    }
    let id = |j: usize, k: usize| j * nc + (k % nc);
    let mut triangles = Vec::with_capacity(2 * nm * nc);
    for j in 0..nm {
        for k in 0..nc {
            let p00 = id(j, k);
            let p10 = id(j, k + 1);
            let p01 = id(j + 1, k);
            let p11 = id(j + 1, k + 1);
            triangles.push([p00, p10, p01]);
            triangles.push([p10, p11, p01]);
        }
    }
    ControlMesh::new(nodes, triangles)
}

/// Structured rectangular sheet in the xy-plane, `nx` by `ny` cells split with
/// a uniform diagonal direction (interior vertices are valence 6).
pub fn gen_rect_sheet(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<ControlMesh> {
    if nx < 2 || ny < 2 {
        return Err(Error::DegenerateResolution(format!(
            "sheet needs nx, ny >= 2, got {nx}x{ny}"
        )));
    }
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            nodes.push(Vector3::new(
                lx * (i as f64) / (nx as f64),
                ly * (j as f64) / (ny as f64),
                0.0,
            ));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            triangles.push([id(i, j), id(i + 1, j), id(i, j + 1)]);
            triangles.push([id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    ControlMesh::new(nodes, triangles)
}

/// Loads an indexed triangle mesh from an OFF or OBJ file.
pub fn load_mesh(path: impl AsRef<Path>, format: MeshFormat) -> Result<ControlMesh> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let name = path.display().to_string();
    match format {
        MeshFormat::Off => parse_off(&text, &name),
        MeshFormat::Obj => parse_obj(&text, &name),
    }
}

/// Guesses the format from the file extension.
pub fn load_mesh_auto(path: impl AsRef<Path>) -> Result<ControlMesh> {
    let p = path.as_ref();
    let format = match p.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("off") => MeshFormat::Off,
        Some(e) if e.eq_ignore_ascii_case("obj") => MeshFormat::Obj,
        other => {
            return Err(Error::MeshParse {
                path: p.display().to_string(),
                line: 0,
                msg: format!("unrecognized mesh extension {other:?}"),
            })
        }
    };
    load_mesh(p, format)
}

fn parse_err(path: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::MeshParse {
        path: path.to_string(),
        line,
        msg: msg.into(),
    }
}

/// Parses OFF text (vertices and triangular faces only).
pub fn parse_off(text: &str, path: &str) -> Result<ControlMesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (lno, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 0, "empty file"))?;
    if header != "OFF" {
        return Err(parse_err(path, lno, "missing OFF header"));
    }
    let (lno, counts) = lines
        .next()
        .ok_or_else(|| parse_err(path, lno, "missing count line"))?;
    let mut it = counts.split_whitespace();
    let nv: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(path, lno, "bad vertex count"))?;
    let nf: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(path, lno, "bad face count"))?;

    let mut nodes = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (lno, l) = lines
            .next()
            .ok_or_else(|| parse_err(path, 0, "unexpected end of vertex list"))?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(path, lno, format!("bad vertex: {e}")))?;
        if coords.len() != 3 {
            return Err(parse_err(path, lno, "vertex must have 3 coordinates"));
        }
        nodes.push(Vector3::new(coords[0], coords[1], coords[2]));
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (lno, l) = lines
            .next()
            .ok_or_else(|| parse_err(path, 0, "unexpected end of face list"))?;
        let idx: Vec<usize> = l
            .split_whitespace()
            .map(|s| s.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(path, lno, format!("bad face: {e}")))?;
        if idx.first() != Some(&3) || idx.len() != 4 {
            return Err(parse_err(path, lno, "only triangular faces are supported"));
        }
        triangles.push([idx[1], idx[2], idx[3]]);
    }
    ControlMesh::new(nodes, triangles)
}

/// Parses OBJ text (v and triangular f records only).
pub fn parse_obj(text: &str, path: &str) -> Result<ControlMesh> {
    let mut nodes = Vec::new();
    let mut triangles = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let coords: Vec<f64> = it
                    .map(|s| s.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| parse_err(path, lno, format!("bad vertex: {e}")))?;
                if coords.len() < 3 {
                    return Err(parse_err(path, lno, "vertex must have 3 coordinates"));
                }
                nodes.push(Vector3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = it
                    .map(|s| {
                        s.split('/')
                            .next()
                            .unwrap_or("")
                            .parse::<usize>()
                            .map_err(|e| parse_err(path, lno, format!("bad face index: {e}")))
                    })
                    .collect::<Result<_>>()?;
                if idx.len() != 3 {
                    return Err(parse_err(path, lno, "only triangular faces are supported"));
                }
                if idx.iter().any(|&k| k == 0) {
                    return Err(parse_err(path, lno, "OBJ indices are 1-based"));
                }
                triangles.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
            }
            // vt/vn/usemtl and friends are ignored.
            _ => {}
        }
    }
    ControlMesh::new(nodes, triangles)
}
