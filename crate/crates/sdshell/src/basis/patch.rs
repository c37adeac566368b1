//! Patch-level machinery for irregular elements.
//!
//! A patch with one irregular vertex of valence N carries N + 6 control
//! nodes whose local connectivity is fully determined by N, so the Loop
//! subdivision step restricted to the patch is a constant matrix per valence.
//! Evaluation subdivides locally (picking the child containing the evaluation
//! point) until the point lands in a regular child patch, then applies the
//! quartic box spline and pulls derivatives back through the composed affine
//! parameter maps. For the barycentric quadrature point a single step always
//! suffices because the central child is regular.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, Matrix2};

use super::{boxspline, ShapeTable};
use crate::error::Error;
use crate::Result;

/// Loop's vertex-update weight for valence `n`.
pub(crate) fn loop_beta(n: usize) -> f64 {
    let n_f = n as f64;
    let c = 3.0 / 8.0 + (2.0 * std::f64::consts::PI / n_f).cos() / 4.0;
    (5.0 / 8.0 - c * c) / n_f
}

/// Limit-projection weight: the limit position of a valence-`n` vertex is
/// `(1 - n xi) v + xi sum(neighbors)`.
pub(crate) fn limit_xi(n: usize) -> f64 {
    1.0 / (n as f64 + 3.0 / (8.0 * loop_beta(n)))
}

/// Triangles of the canonical patch mesh for central valence `n`: node 0 is
/// the (possibly irregular) element corner, nodes follow the canonical
/// one-ring ordering, and the element itself is triangle (0, 1, 2).
pub(crate) fn canonical_patch_tris(n: usize) -> Vec<[usize; 3]> {
    let ring0: Vec<usize> = std::iter::once(1).chain(std::iter::once(2)).chain(3..=n).collect();
    let ring1 = [2, 0, n, n + 1, n + 2, n + 3];
    let ring2 = [0, 1, n + 3, n + 4, n + 5, 3];

    let mut seen: HashMap<[usize; 3], [usize; 3]> = HashMap::new();
    let mut tris = Vec::new();
    let mut push_fan = |center: usize, ring: &[usize], tris: &mut Vec<[usize; 3]>| {
        for k in 0..ring.len() {
            let t = [center, ring[k], ring[(k + 1) % ring.len()]];
            let mut key = t;
            key.sort_unstable();
            if let Some(prev) = seen.get(&key) {
                // Shared fan triangles must agree cyclically.
                debug_assert!(same_cycle(*prev, t), "inconsistent fan windings");
            } else {
                seen.insert(key, t);
                tris.push(t);
            }
        }
    };
    push_fan(0, &ring0, &mut tris);
    push_fan(1, &ring1, &mut tris);
    push_fan(2, &ring2, &mut tris);
    tris
}

fn same_cycle(a: [usize; 3], b: [usize; 3]) -> bool {
    (0..3).any(|s| (0..3).all(|k| a[k] == b[(k + s) % 3]))
}

/// Closed CCW ring of `v` in a raw triangle list, or None if the fan is open.
fn ring_walk(tris: &[[usize; 3]], v: usize) -> Option<Vec<usize>> {
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

/// Canonical patch node ordering for an element of a raw triangle list. The
/// element's stored vertex order is used as-is (slot 0 is corner 0).
fn canonical_ring(tris: &[[usize; 3]], corners: [usize; 3]) -> Option<Vec<usize>> {
    let [c0, c1, c2] = corners;
    let rotate_to = |ring: Vec<usize>, first: usize| -> Option<Vec<usize>> {
        let k = ring.iter().position(|&r| r == first)?;
        let mut out = Vec::with_capacity(ring.len());
        out.extend_from_slice(&ring[k..]);
        out.extend_from_slice(&ring[..k]);
        Some(out)
    };
    let ring0 = rotate_to(ring_walk(tris, c0)?, c1)?;
    if ring0.get(1) != Some(&c2) {
        return None;
    }
    let valence = ring0.len();
    let ring1 = rotate_to(ring_walk(tris, c1)?, c2)?;
    let ring2 = rotate_to(ring_walk(tris, c2)?, c0)?;
    if ring1.len() != 6 || ring2.len() != 6 {
        return None;
    }
    if ring1[1] != c0 || ring1[2] != ring0[valence - 1] {
        return None;
    }
    if ring2[1] != c1 || ring2[2] != ring1[5] || ring2[5] != ring0[2] {
        return None;
    }
    let mut nodes = Vec::with_capacity(valence + 6);
    nodes.extend_from_slice(&[c0, c1, c2]);
    nodes.extend_from_slice(&ring0[2..]);
    nodes.extend_from_slice(&ring1[3..6]);
    nodes.extend_from_slice(&ring2[3..5]);
    Some(nodes)
}

/// Which child of the quadrisected master triangle a point falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Child {
    Corner0,
    Corner1,
    Corner2,
    Central,
}

/// Locates the child containing (v, w) and remaps to child coordinates.
fn locate(v: f64, w: f64) -> (Child, f64, f64) {
    let u = 1.0 - v - w;
    if v >= 0.5 {
        (Child::Corner1, 2.0 * w, 2.0 * u)
    } else if w >= 0.5 {
        (Child::Corner2, 2.0 * u, 2.0 * v)
    } else if u >= 0.5 {
        (Child::Corner0, 2.0 * v, 2.0 * w)
    } else {
        (Child::Central, 1.0 - 2.0 * u, 1.0 - 2.0 * v)
    }
}

/// Linear part of the affine map from child coordinates to parent coordinates.
fn child_linear(child: Child) -> Matrix2<f64> {
    match child {
        Child::Corner0 => Matrix2::new(0.5, 0.0, 0.0, 0.5),
        Child::Corner1 => Matrix2::new(-0.5, -0.5, 0.5, 0.0),
        Child::Corner2 => Matrix2::new(0.0, 0.5, -0.5, -0.5),
        Child::Central => Matrix2::new(0.0, -0.5, 0.5, 0.5),
    }
}

/// One subdivision-and-pick step: maps parent patch control values to the
/// control values of a child patch.
#[derive(Debug, Clone)]
struct ChildMap {
    /// Valence of the child patch (equals the parent valence for the corner-0
    /// child, 6 otherwise).
    valence: usize,
    /// (child patch size) x (parent patch size).
    matrix: DMatrix<f64>,
    linear: Matrix2<f64>,
}

fn build_child_maps(n: usize) -> Result<[ChildMap; 4]> {
    let tris = canonical_patch_tris(n);
    let n_nodes = n + 6;

    // Midpoint ids and edge flanks.
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut flanks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let key = |a: usize, b: usize| if a <= b { (a, b) } else { (b, a) };
    let mut next_id = n_nodes;
    for (t, tri) in tris.iter().enumerate() {
        for k in 0..3 {
            let e = key(tri[k], tri[(k + 1) % 3]);
            edge_id.entry(e).or_insert_with(|| {
                let id = next_id;
                next_id += 1;
                id
            });
            flanks.entry(e).or_default().push(t);
        }
    }

    // Refined connectivity, children in fixed order per parent triangle.
    let mut refined = Vec::with_capacity(4 * tris.len());
    for tri in &tris {
        let [a, b, c] = *tri;
        let mab = edge_id[&key(a, b)];
        let mbc = edge_id[&key(b, c)];
        let mca = edge_id[&key(c, a)];
        refined.push([a, mab, mca]);
        refined.push([b, mbc, mab]);
        refined.push([c, mca, mbc]);
        refined.push([mab, mbc, mca]);
    }

    // Subdivision masks over the parent patch nodes, where supported.
    let mut masks: Vec<Option<Vec<(usize, f64)>>> = vec![None; next_id];
    for v in 0..3 {
        let ring = ring_walk(&tris, v).ok_or_else(|| Error::DegenerateElement {
            element: usize::MAX,
            msg: format!("open fan around patch corner {v}"),
        })?;
        let k = ring.len();
        let beta = loop_beta(k);
        let mut row = vec![(v, 1.0 - k as f64 * beta)];
        row.extend(ring.iter().map(|&r| (r, beta)));
        masks[v] = Some(row);
    }
    for (&e, &id) in &edge_id {
        let fl = &flanks[&e];
        if fl.len() == 2 {
            let apex = |t: usize| -> usize {
                *tris[t]
                    .iter()
                    .find(|&&x| x != e.0 && x != e.1)
                    .expect("apex")
            };
            masks[id] = Some(vec![
                (e.0, 3.0 / 8.0),
                (e.1, 3.0 / 8.0),
                (apex(fl[0]), 1.0 / 8.0),
                (apex(fl[1]), 1.0 / 8.0),
            ]);
        }
    }

    // The element is triangle (0, 1, 2); locate it in the patch list.
    let e0 = tris
        .iter()
        .position(|&t| t == [0, 1, 2])
        .expect("central element present");

    let children = [Child::Corner0, Child::Corner1, Child::Corner2, Child::Central];
    let mut out = Vec::with_capacity(4);
    for (k, &child) in children.iter().enumerate() {
        let corners = refined[4 * e0 + k];
        let ring = canonical_ring(&refined, corners).ok_or_else(|| Error::DegenerateElement {
            element: usize::MAX,
            msg: format!("child patch extraction failed for valence {n}"),
        })?;
        let rows = ring.len();
        let mut matrix = DMatrix::zeros(rows, n_nodes);
        for (r, &node) in ring.iter().enumerate() {
            let mask = masks[node].as_ref().ok_or_else(|| Error::DegenerateElement {
                element: usize::MAX,
                msg: format!("missing subdivision support for valence {n}"),
            })?;
            let mut sum = 0.0;
            for &(j, wgt) in mask {
                matrix[(r, j)] += wgt;
                sum += wgt;
            }
            debug_assert!((sum - 1.0).abs() < 1e-12);
        }
        out.push(ChildMap {
            valence: rows - 6,
            matrix,
            linear: child_linear(child),
        });
    }
    debug_assert_eq!(out[0].valence, n);
    debug_assert!(out[1..].iter().all(|c| c.valence == 6));
    Ok([
        out[0].clone(),
        out[1].clone(),
        out[2].clone(),
        out[3].clone(),
    ])
}

fn child_maps(n: usize) -> Result<Arc<[ChildMap; 4]>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<[ChildMap; 4]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("patch cache poisoned");
    if let Some(maps) = guard.get(&n) {
        return Ok(maps.clone());
    }
    let maps = Arc::new(build_child_maps(n)?);
    guard.insert(n, maps.clone());
    Ok(maps)
}

const MAX_DEPTH: usize = 60;

/// Shape table over the canonical patch of central valence `n`, evaluated at
/// master-element coordinates (v, w). Exact for the subdivision limit surface.
pub fn eval_patch(n: usize, v: f64, w: f64) -> Result<ShapeTable> {
    if n == 6 {
        return Ok(boxspline::eval(v, w));
    }
    if n < 3 {
        return Err(Error::DegenerateElement {
            element: usize::MAX,
            msg: format!("valence {n} patch is not supported"),
        });
    }
    let maps = child_maps(n)?;
    let mut acc = DMatrix::<f64>::identity(n + 6, n + 6);
    let mut lin = Matrix2::<f64>::identity();
    let (mut cv, mut cw) = (v, w);
    for _ in 0..MAX_DEPTH {
        let (child, nv, nw) = locate(cv, cw);
        cv = nv;
        cw = nw;
        let cm = match child {
            Child::Corner0 => &maps[0],
            Child::Corner1 => &maps[1],
            Child::Corner2 => &maps[2],
            Child::Central => &maps[3],
        };
        lin *= cm.linear;
        if child == Child::Corner0 {
            acc = &cm.matrix * acc;
            continue;
        }
        let composed = &cm.matrix * acc;
        let b = boxspline::eval(cv, cw);
        return Ok(pull_back(&b, &composed, &lin));
    }
    Err(Error::DegenerateElement {
        element: usize::MAX,
        msg: "evaluation point too close to the irregular vertex".into(),
    })
}

/// Pushes a child-patch table through the composed control map and the chain
/// rule of the composed affine parameter map.
fn pull_back(child: &ShapeTable, composed: &DMatrix<f64>, lin: &Matrix2<f64>) -> ShapeTable {
    let n_parent = composed.ncols();
    let linv = lin.try_inverse().expect("child maps are invertible");
    let mut rows = vec![[0.0; 6]; n_parent];
    for (i, crow) in child.rows.iter().enumerate() {
        // Child-coordinate derivatives mapped to parent coordinates.
        let g = linv.transpose() * nalgebra::Vector2::new(crow[1], crow[2]);
        let h_child = Matrix2::new(crow[3], crow[5], crow[5], crow[4]);
        let h = linv.transpose() * h_child * linv;
        let mapped = [crow[0], g[0], g[1], h[(0, 0)], h[(1, 1)], h[(0, 1)]];
        for j in 0..n_parent {
            let s = composed[(i, j)];
            if s != 0.0 {
                for k in 0..6 {
                    rows[j][k] += s * mapped[k];
                }
            }
        }
    }
    ShapeTable { rows }
}
