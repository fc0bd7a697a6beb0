use std::collections::{BTreeSet, HashMap};

use super::{cross, EmptyTriangle, GeomError, LatticePoint, LatticePolygon};

/// Incremental sweep triangulation of a point set given in sweep order.
///
/// Each new point lies outside the hull of its predecessors, so it is joined
/// to every hull edge it strictly sees. Collinear hull vertices are kept,
/// which keeps every lattice point a vertex of the triangulation.
fn sweep(points: &[LatticePoint]) -> Vec<EmptyTriangle> {
    let n = points.len();
    let p0 = points[0];
    let p1 = points[1];
    let mut k = 1;
    while k + 1 < n && cross(p0, p1, points[k + 1]) == 0 {
        k += 1;
    }
    assert!(k + 1 < n, "sweep needs a two-dimensional point set");
    let apex = points[k + 1];

    let mut tris = Vec::with_capacity(2 * n);
    for i in 0..k {
        tris.push(
            EmptyTriangle::new(points[i], points[i + 1], apex).expect("sweep triangle is empty"),
        );
    }
    let mut hull: Vec<LatticePoint> = if cross(p0, points[k], apex) > 0 {
        points[..=k].to_vec()
    } else {
        points[..=k].iter().rev().copied().collect()
    };
    hull.push(apex);

    for &p in &points[k + 2..] {
        let m = hull.len();
        let visible: Vec<bool> = (0..m)
            .map(|i| cross(hull[i], hull[(i + 1) % m], p) < 0)
            .collect();
        let start = (0..m)
            .find(|&i| visible[i] && !visible[(i + m - 1) % m])
            .expect("new sweep point sees the hull");
        let mut end = start;
        while visible[(end + 1) % m] {
            end = (end + 1) % m;
        }
        let mut i = start;
        loop {
            tris.push(
                EmptyTriangle::new(hull[(i + 1) % m], hull[i], p).expect("sweep triangle is empty"),
            );
            if i == end {
                break;
            }
            i = (i + 1) % m;
        }
        let mut next = Vec::with_capacity(m + 1);
        let mut j = (end + 1) % m;
        loop {
            next.push(hull[j]);
            if j == start {
                break;
            }
            j = (j + 1) % m;
        }
        next.push(p);
        hull = next;
    }
    tris
}

fn canonical_set(tris: &[EmptyTriangle]) -> BTreeSet<[LatticePoint; 3]> {
    tris.iter().map(|t| t.canonical().vertices()).collect()
}

/// Flips the diagonal of the first strictly convex quadrilateral formed by
/// two adjacent triangles. Returns false when no such pair exists.
fn flip_first(tris: &mut [EmptyTriangle]) -> bool {
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            let a = tris[i].vertices();
            let b = tris[j].vertices();
            let shared: Vec<LatticePoint> = a.iter().filter(|p| b.contains(p)).copied().collect();
            if shared.len() != 2 {
                continue;
            }
            let w1 = *a.iter().find(|p| !shared.contains(p)).unwrap();
            let w2 = *b.iter().find(|p| !shared.contains(p)).unwrap();
            let (s1, s2) = (cross(w1, w2, shared[0]), cross(w1, w2, shared[1]));
            if s1 == 0 || s2 == 0 || (s1 > 0) == (s2 > 0) {
                continue;
            }
            tris[i] = EmptyTriangle::new(w1, w2, shared[0]).expect("flipped triangle is empty");
            tris[j] = EmptyTriangle::new(w1, w2, shared[1]).expect("flipped triangle is empty");
            return true;
        }
    }
    false
}

/// Sign of the incircle determinant: positive when `d` lies strictly inside
/// the circumcircle of the counterclockwise triangle `a, b, c`.
/// `None` on overflow.
fn incircle(a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint) -> Option<i128> {
    let row = |p: LatticePoint| -> Option<[i128; 3]> {
        let (x, y) = ((p.u - d.u) as i128, (p.v - d.v) as i128);
        Some([x, y, x.checked_mul(x)?.checked_add(y.checked_mul(y)?)?])
    };
    let (r0, r1, r2) = (row(a)?, row(b)?, row(c)?);
    let minor = |i: usize, j: usize| -> Option<i128> {
        r1[i]
            .checked_mul(r2[j])?
            .checked_sub(r1[j].checked_mul(r2[i])?)
    };
    r0[0]
        .checked_mul(minor(1, 2)?)?
        .checked_sub(r0[1].checked_mul(minor(0, 2)?)?)?
        .checked_add(r0[2].checked_mul(minor(0, 1)?)?)
}

fn edge_key(p: LatticePoint, q: LatticePoint) -> (LatticePoint, LatticePoint) {
    if p < q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Lawson flips towards a Delaunay triangulation. Flipping the diagonal of
/// a convex quadrilateral made of two empty triangles keeps both empty, and
/// the result has short edges.
fn delaunay_flips(tris: &mut [EmptyTriangle]) {
    let mut owners: HashMap<(LatticePoint, LatticePoint), Vec<usize>> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        let v = t.vertices();
        for k in 0..3 {
            owners
                .entry(edge_key(v[k], v[(k + 1) % 3]))
                .or_default()
                .push(i);
        }
    }
    let mut stack: Vec<_> = owners
        .iter()
        .filter(|(_, o)| o.len() == 2)
        .map(|(e, _)| *e)
        .collect();
    stack.sort();
    while let Some(e) = stack.pop() {
        let Some(o) = owners.get(&e).filter(|o| o.len() == 2).cloned() else {
            continue;
        };
        let (i, j) = (o[0], o[1]);
        let apex = |t: &EmptyTriangle| {
            *t.vertices()
                .iter()
                .find(|&&p| p != e.0 && p != e.1)
                .unwrap()
        };
        let (c, d) = (apex(&tris[i]), apex(&tris[j]));
        let t = tris[i];
        if !matches!(incircle(t.v0, t.v1, t.v2, d), Some(s) if s > 0) {
            continue;
        }
        let (s1, s2) = (cross(c, d, e.0), cross(c, d, e.1));
        if s1 == 0 || s2 == 0 || (s1 > 0) == (s2 > 0) {
            continue;
        }
        let old = [tris[i], tris[j]];
        tris[i] = EmptyTriangle::new(c, d, e.0).expect("flipped triangle is empty");
        tris[j] = EmptyTriangle::new(c, d, e.1).expect("flipped triangle is empty");
        for t in old {
            let v = t.vertices();
            for k in 0..3 {
                let key = edge_key(v[k], v[(k + 1) % 3]);
                owners.get_mut(&key).unwrap().retain(|&x| x != i && x != j);
            }
        }
        for idx in [i, j] {
            let v = tris[idx].vertices();
            for k in 0..3 {
                let key = edge_key(v[k], v[(k + 1) % 3]);
                owners.entry(key).or_default().push(idx);
                if key != edge_key(c, d) {
                    stack.push(key);
                }
            }
        }
    }
}

impl LatticePolygon {
    /// Triangulation into empty triangles using every lattice point as a
    /// vertex, flipped to a Delaunay triangulation.
    pub fn empty_triangulation(&self) -> Result<Vec<EmptyTriangle>, GeomError> {
        if self.dim() < 2 {
            return Err(GeomError::NotTwoDimensional(self.dim()));
        }
        let mut tris = sweep(&self.lattice_points().all());
        delaunay_flips(&mut tris);
        Ok(tris)
    }

    /// A second empty triangulation: the reverse-order sweep, flipped towards
    /// Delaunay. Cocircular lattice quadrilaterals usually resolve to the other
    /// diagonal; if the result still coincides with
    /// [`LatticePolygon::empty_triangulation`] one diagonal is flipped.
    pub fn alternative_triangulation(&self) -> Result<Vec<EmptyTriangle>, GeomError> {
        let first = self.empty_triangulation()?;
        let mut pts = self.lattice_points().all();
        pts.reverse();
        let mut alt = sweep(&pts);
        delaunay_flips(&mut alt);
        if canonical_set(&alt) == canonical_set(&first) {
            flip_first(&mut alt);
        }
        Ok(alt)
    }
}

/// True when two triangulations consist of the same triangles.
pub fn same_triangulation(a: &[EmptyTriangle], b: &[EmptyTriangle]) -> bool {
    canonical_set(a) == canonical_set(b)
}
