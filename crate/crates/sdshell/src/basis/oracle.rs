//! Brute-force evaluation oracle: geometric Loop subdivision of an explicit
//! local mesh carrying indicator control data, followed by limit projection
//! at the corners of the tracked sub-triangle and barycentric interpolation.
//! Independent of the box-spline table and the picking-matrix machinery it
//! is used to check; only the Loop masks themselves are shared, since they
//! define the scheme.

use std::collections::{HashMap, HashSet};

use nalgebra::Vector3;

use super::patch::{limit_xi, loop_beta};
use crate::mesh::{ControlMesh, RingNode};

/// A tracked patch with indicator data per canonical patch slot.
pub(crate) struct PatchOracle {
    tris: Vec<[usize; 3]>,
    /// Per mesh node, one weight per canonical patch slot.
    data: Vec<Vec<f64>>,
    elem: usize,
    pub n_slots: usize,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn closed_ring(tris: &[[usize; 3]], v: usize) -> Option<Vec<usize>> {
    let mut succ: HashMap<usize, usize> = HashMap::new();
    for tri in tris {
        if let Some(k) = tri.iter().position(|&x| x == v) {
            succ.insert(tri[(k + 1) % 3], tri[(k + 2) % 3]);
        }
    }
    let &start = succ.keys().min()?;
    let mut ring = vec![start];
    let mut cur = start;
    loop {
        let &next = succ.get(&cur)?;
        if next == start {
            break;
        }
        ring.push(next);
        cur = next;
        if ring.len() > succ.len() {
            return None;
        }
    }
    (ring.len() == succ.len()).then_some(ring)
}

impl PatchOracle {
    /// Oracle over the regular 12-node patch, built on a lattice chunk.
    pub fn regular() -> Self {
        const M: i64 = 5;
        let mut id: HashMap<(i64, i64), usize> = HashMap::new();
        let mut nodes = Vec::new();
        for j in -M..=M {
            for i in -M..=M {
                id.insert((i, j), nodes.len());
                nodes.push(Vector3::new(i as f64, j as f64, 0.0));
            }
        }
        let mut tris = Vec::new();
        for j in -M..M {
            for i in -M..M {
                tris.push([id[&(i, j)], id[&(i + 1, j)], id[&(i, j + 1)]]);
                tris.push([id[&(i + 1, j)], id[&(i + 1, j + 1)], id[&(i, j + 1)]]);
            }
        }
        let mesh = ControlMesh::new(nodes, tris.clone()).expect("lattice chunk");
        let elem = tris
            .iter()
            .position(|&t| t == [id[&(0, 0)], id[&(1, 0)], id[&(0, 1)]])
            .expect("central element");
        Self::from_mesh(mesh, elem)
    }

    /// Oracle over a patch whose corner 0 has valence `n`, built on a disk.
    pub fn irregular(n: usize) -> Self {
        const RINGS: usize = 5;
        let ring_start = |r: usize| -> usize {
            if r == 0 {
                0
            } else {
                1 + n * r * (r - 1) / 2
            }
        };
        let idx = |r: usize, k: usize| -> usize {
            if r == 0 {
                0
            } else {
                ring_start(r) + (k % (n * r))
            }
        };
        let mut nodes = vec![Vector3::zeros()];
        for r in 1..=RINGS {
            for k in 0..n * r {
                let s = k / r;
                let j = k % r;
                let th0 = 2.0 * std::f64::consts::PI * (s as f64) / (n as f64);
                let th1 = 2.0 * std::f64::consts::PI * ((s + 1) as f64) / (n as f64);
                let e0 = Vector3::new(th0.cos(), th0.sin(), 0.0);
                let e1 = Vector3::new(th1.cos(), th1.sin(), 0.0);
                nodes.push(((r - j) as f64) * e0 + (j as f64) * e1);
            }
        }
        let mut tris = Vec::new();
        for s in 0..n {
            tris.push([idx(1, s), idx(1, s + 1), 0]);
        }
        for r in 1..RINGS {
            for s in 0..n {
                for j in 0..r {
                    let a = idx(r + 1, s * (r + 1) + j);
                    let b = idx(r + 1, s * (r + 1) + j + 1);
                    let c = idx(r, s * r + j);
                    tris.push([a, b, c]);
                    tris.push([c, b, idx(r, s * r + j + 1)]);
                }
                tris.push([
                    idx(r + 1, s * (r + 1) + r),
                    idx(r + 1, s * (r + 1) + r + 1),
                    idx(r, s * r + r),
                ]);
            }
        }
        let mesh = ControlMesh::new(nodes, tris.clone()).expect("disk mesh");
        let elem = tris
            .iter()
            .position(|&t| t == [0, idx(1, 0), idx(1, 1)])
            .expect("central element");
        Self::from_mesh(mesh, elem)
    }

    fn from_mesh(mesh: ControlMesh, elem: usize) -> Self {
        let ring = mesh.one_ring(elem).expect("interior patch");
        let n_slots = ring.nodes.len();
        let mut data = vec![vec![0.0; n_slots]; mesh.node_count()];
        for (slot, node) in ring.nodes.iter().enumerate() {
            match node {
                RingNode::Real(i) => data[*i][slot] = 1.0,
                RingNode::Ghost { .. } => unreachable!("oracle patches are interior"),
            }
        }
        PatchOracle {
            tris: mesh.triangles().to_vec(),
            data,
            elem,
            n_slots,
        }
    }

    /// Limit values of all patch basis functions at master coordinates (v, w).
    pub fn eval_values(&self, v: f64, w: f64, depth: usize) -> Vec<f64> {
        let mut tris = self.tris.clone();
        let mut data = self.data.clone();
        let mut elem = self.elem;
        let (mut cv, mut cw) = (v, w);
        for _ in 0..depth {
            let (new_tris, new_data, new_elem) = subdivide_once(&tris, &data, elem);
            let (child, nv, nw) = locate_child(cv, cw);
            cv = nv;
            cw = nw;
            let (t, d, e) = clip(&new_tris, &new_data, 4 * new_elem + child);
            tris = t;
            data = d;
            elem = e;
        }
        let [c0, c1, c2] = tris[elem];
        let l0 = limit_value(&tris, &data, c0);
        let l1 = limit_value(&tris, &data, c1);
        let l2 = limit_value(&tris, &data, c2);
        let u = 1.0 - cv - cw;
        (0..self.n_slots)
            .map(|k| u * l0[k] + cv * l1[k] + cw * l2[k])
            .collect()
    }
}

/// Child index and coordinate remap of the quadrisected master triangle.
/// Children are ordered corner0, corner1, corner2, central, matching the
/// refined-triangle emission order.
fn locate_child(v: f64, w: f64) -> (usize, f64, f64) {
    let u = 1.0 - v - w;
    if v >= 0.5 {
        (1, 2.0 * w, 2.0 * u)
    } else if w >= 0.5 {
        (2, 2.0 * u, 2.0 * v)
    } else if u >= 0.5 {
        (0, 2.0 * v, 2.0 * w)
    } else {
        (3, 1.0 - 2.0 * u, 1.0 - 2.0 * v)
    }
}

type Data = Vec<Vec<f64>>;

fn subdivide_once(tris: &[[usize; 3]], data: &Data, elem: usize) -> (Vec<[usize; 3]>, Data, usize) {
    let n_old = data.len();
    let dim = data[0].len();

    // Vertex updates where the fan closes; boundary nodes of the local mesh
    // keep stale values (they sit in the discarded margin).
    let mut new_data: Data = Vec::with_capacity(n_old * 2);
    for v in 0..n_old {
        match closed_ring(tris, v) {
            Some(ring) => {
                let beta = loop_beta(ring.len());
                let mut val = vec![0.0; dim];
                for k in 0..dim {
                    val[k] = (1.0 - ring.len() as f64 * beta) * data[v][k];
                }
                for &r in &ring {
                    for k in 0..dim {
                        val[k] += beta * data[r][k];
                    }
                }
                new_data.push(val);
            }
            None => new_data.push(data[v].clone()),
        }
    }

    // Edge points.
    let mut flank: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, tri) in tris.iter().enumerate() {
        for k in 0..3 {
            flank
                .entry(edge_key(tri[k], tri[(k + 1) % 3]))
                .or_default()
                .push(t);
        }
    }
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mid = |a: usize, b: usize, new_data: &mut Data| -> usize {
        let key = edge_key(a, b);
        if let Some(&id) = edge_id.get(&key) {
            return id;
        }
        let fl = &flank[&key];
        let mut val = vec![0.0; dim];
        if fl.len() == 2 {
            let apex = |t: usize| *tris[t].iter().find(|&&x| x != a && x != b).expect("apex");
            for k in 0..dim {
                val[k] = 0.375 * (data[a][k] + data[b][k])
                    + 0.125 * (data[apex(fl[0])][k] + data[apex(fl[1])][k]);
            }
        } else {
            for k in 0..dim {
                val[k] = 0.5 * (data[a][k] + data[b][k]);
            }
        }
        let id = new_data.len();
        new_data.push(val);
        edge_id.insert(key, id);
        id
    };

    let mut new_tris = Vec::with_capacity(4 * tris.len());
    for tri in tris {
        let [a, b, c] = *tri;
        let mab = mid(a, b, &mut new_data);
        let mbc = mid(b, c, &mut new_data);
        let mca = mid(c, a, &mut new_data);
        new_tris.push([a, mab, mca]);
        new_tris.push([b, mbc, mab]);
        new_tris.push([c, mca, mbc]);
        new_tris.push([mab, mbc, mca]);
    }
    (new_tris, new_data, elem)
}

/// Restricts the mesh to a neighborhood of the tracked element so the mesh
/// size stays bounded across subdivision levels.
fn clip(tris: &[[usize; 3]], data: &Data, elem: usize) -> (Vec<[usize; 3]>, Data, usize) {
    const LAYERS: usize = 6;
    let mut verts: HashSet<usize> = tris[elem].iter().copied().collect();
    for _ in 0..LAYERS {
        let mut grown = verts.clone();
        for tri in tris {
            if tri.iter().any(|v| verts.contains(v)) {
                grown.extend(tri.iter().copied());
            }
        }
        verts = grown;
    }
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut new_data = Vec::new();
    let mut new_tris = Vec::new();
    let mut new_elem = usize::MAX;
    for (t, tri) in tris.iter().enumerate() {
        if tri.iter().all(|v| verts.contains(v)) {
            let mapped: [usize; 3] = std::array::from_fn(|k| {
                *remap.entry(tri[k]).or_insert_with(|| {
                    new_data.push(data[tri[k]].clone());
                    new_data.len() - 1
                })
            });
            if t == elem {
                new_elem = new_tris.len();
            }
            new_tris.push(mapped);
        }
    }
    assert_ne!(new_elem, usize::MAX, "tracked element clipped away");
    (new_tris, new_data, new_elem)
}

fn limit_value(tris: &[[usize; 3]], data: &Data, v: usize) -> Vec<f64> {
    let ring = closed_ring(tris, v).expect("limit mask needs a closed fan");
    let xi = limit_xi(ring.len());
    let dim = data[v].len();
    let mut out = vec![0.0; dim];
    for k in 0..dim {
        out[k] = (1.0 - ring.len() as f64 * xi) * data[v][k];
    }
    for &r in &ring {
        for k in 0..dim {
            out[k] += xi * data[r][k];
        }
    }
    out
}
