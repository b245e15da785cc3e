//! Delzant polygons: exact vertices, the moment-map normalization (area and
//! centroid), facet maxima, the fan data (self-intersections, Chern numbers,
//! primitive pairs) and cone decompositions of lattice vectors.
//!
//! Facets keep the index they were given at construction; the
//! counterclockwise cyclic order is stored separately.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::{int, Rational};

pub type Point = [Rational; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("a polygon needs at least three facets, got {0}")]
    TooFewFacets(usize),
    #[error("facet {0} has the zero normal")]
    ZeroNormal(usize),
    #[error("facet {0} normal is not primitive")]
    NonPrimitiveNormal(usize),
    #[error("the facets do not bound a compact region")]
    Unbounded,
    #[error("the facets cut out an empty or degenerate region")]
    Empty,
    #[error("facet {0} supports no edge of positive length")]
    RedundantFacet(usize),
    #[error("more than two facets meet at a vertex")]
    NonSimple,
    #[error("facet index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("fan is not smooth at facet {0}")]
    NonSmoothFan(usize),
    #[error("vector lies in no cone of the fan")]
    NotInAnyCone,
    #[error("facet {facet} label has {got} entries, basis has {expected}")]
    LabelLength {
        facet: usize,
        got: usize,
        expected: usize,
    },
}

/// Half-plane `⟨normal, x⟩ ≤ offset` with an optional homology-class label
/// (coordinates in the polytope's class basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: [i64; 2],
    pub offset: Rational,
    pub label: Option<Vec<i64>>,
}

impl Facet {
    pub fn new(normal: [i64; 2], offset: Rational) -> Self {
        Facet {
            normal,
            offset,
            label: None,
        }
    }

    pub fn labeled(normal: [i64; 2], offset: Rational, label: Vec<i64>) -> Self {
        Facet {
            normal,
            offset,
            label: Some(label),
        }
    }
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot_q(n: [i64; 2], p: &Point) -> Rational {
    int(n[0]) * &p[0] + int(n[1]) * &p[1]
}

/// Angular order of directions, starting at the positive x-axis.
fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    let half = |v: [i64; 2]| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

#[derive(Clone, Debug)]
pub struct Polytope {
    facets: Vec<Facet>,
    cyclic: Vec<usize>,
    vertices: Vec<Point>,
    class_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelzantViolation {
    pub vertex: usize,
    pub facets: [usize; 2],
    pub determinant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelzantReport {
    pub violations: Vec<DelzantViolation>,
}

impl DelzantReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoReport {
    pub fano: bool,
    pub nef: bool,
    /// Indexed by facet.
    pub chern: Vec<i64>,
}

/// `v = Σ multiplicity · η_facet` over one facet or an adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ConeDecomposition {
    pub parts: Vec<(usize, u64)>,
}

impl ConeDecomposition {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl Polytope {
    pub fn new(facets: Vec<Facet>) -> Result<Self, PolytopeError> {
        let n = facets.len();
        if n < 3 {
            return Err(PolytopeError::TooFewFacets(n));
        }
        for (i, f) in facets.iter().enumerate() {
            let [a, b] = f.normal;
            if a == 0 && b == 0 {
                return Err(PolytopeError::ZeroNormal(i));
            }
            if a.gcd(&b) != 1 {
                return Err(PolytopeError::NonPrimitiveNormal(i));
            }
        }

        let mut cyclic: Vec<usize> = (0..n).collect();
        cyclic.sort_by(|&i, &j| angle_cmp(facets[i].normal, facets[j].normal).then(i.cmp(&j)));

        for k in 0..n {
            let (i, j) = (cyclic[k], cyclic[(k + 1) % n]);
            let (a, b) = (facets[i].normal, facets[j].normal);
            if a == b {
                let looser = if facets[i].offset > facets[j].offset {
                    i
                } else {
                    j
                };
                return Err(PolytopeError::RedundantFacet(looser));
            }
            if cross(a, b) <= 0 {
                return Err(PolytopeError::Unbounded);
            }
        }

        // feasible parameter interval along each facet line
        let mut edges: Vec<Option<(Point, Point)>> = Vec::with_capacity(n);
        for (i, f) in facets.iter().enumerate() {
            edges.push(edge_on_line(&facets, i, f));
        }
        let supported = edges.iter().filter(|e| e.is_some()).count();
        if supported < 3 {
            return Err(PolytopeError::Empty);
        }
        if let Some(i) = edges.iter().position(|e| e.is_none()) {
            return Err(PolytopeError::RedundantFacet(i));
        }

        let mut vertices = Vec::with_capacity(n);
        for k in 0..n {
            let (i, j) = (cyclic[k], cyclic[(k + 1) % n]);
            let end = &edges[i].as_ref().unwrap().1;
            let start = &edges[j].as_ref().unwrap().0;
            if end != start {
                return Err(PolytopeError::NonSimple);
            }
            vertices.push(end.clone());
        }

        Ok(Polytope {
            facets,
            cyclic,
            vertices,
            class_basis: Vec::new(),
        })
    }

    /// Attaches names for the label coordinates; every label must match.
    pub fn with_class_basis(mut self, basis: Vec<String>) -> Result<Self, PolytopeError> {
        for (i, f) in self.facets.iter().enumerate() {
            if let Some(l) = &f.label {
                if l.len() != basis.len() {
                    return Err(PolytopeError::LabelLength {
                        facet: i,
                        got: l.len(),
                        expected: basis.len(),
                    });
                }
            }
        }
        self.class_basis = basis;
        Ok(self)
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> Result<&Facet, PolytopeError> {
        self.facets.get(i).ok_or(PolytopeError::IndexOutOfRange(i))
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Facet indices in counterclockwise order.
    pub fn cyclic_order(&self) -> &[usize] {
        &self.cyclic
    }

    /// `vertices()[k]` joins `cyclic_order()[k]` and `cyclic_order()[k+1]`.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn class_basis(&self) -> &[String] {
        &self.class_basis
    }

    fn position(&self, i: usize) -> usize {
        self.cyclic
            .iter()
            .position(|&c| c == i)
            .expect("facet in cyclic order")
    }

    pub fn neighbors(&self, i: usize) -> Result<(usize, usize), PolytopeError> {
        self.facet(i)?;
        let n = self.len();
        let p = self.position(i);
        Ok((self.cyclic[(p + n - 1) % n], self.cyclic[(p + 1) % n]))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        let (p, q) = (self.position(i), self.position(j));
        (p + 1) % n == q || (q + 1) % n == p
    }

    /// Endpoints of facet `i`'s edge, in counterclockwise order.
    pub fn edge(&self, i: usize) -> Result<(Point, Point), PolytopeError> {
        self.facet(i)?;
        let n = self.len();
        let p = self.position(i);
        Ok((
            self.vertices[(p + n - 1) % n].clone(),
            self.vertices[p].clone(),
        ))
    }

    /// Edge length measured in the lattice: the edge vector over the primitive
    /// direction `rot90(η)`.
    pub fn lattice_length(&self, i: usize) -> Result<Rational, PolytopeError> {
        let (a, b) = self.edge(i)?;
        let [nx, ny] = self.facets[i].normal;
        // direction (-ny, nx) has a nonzero coordinate wherever η does
        Ok(if ny != 0 {
            (&b[0] - &a[0]) / int(-ny)
        } else {
            (&b[1] - &a[1]) / int(nx)
        })
    }

    pub fn check_delzant(&self) -> DelzantReport {
        let n = self.len();
        let violations = (0..n)
            .filter_map(|k| {
                let (i, j) = (self.cyclic[k], self.cyclic[(k + 1) % n]);
                let d = cross(self.facets[i].normal, self.facets[j].normal);
                (d.abs() != 1).then_some(DelzantViolation {
                    vertex: k,
                    facets: [i, j],
                    determinant: d,
                })
            })
            .collect();
        DelzantReport { violations }
    }

    /// Shoelace area and centroid, both exact.
    pub fn area_centroid(&self) -> (Rational, Point) {
        let n = self.vertices.len();
        let mut twice_area = Rational::zero();
        let mut cx = Rational::zero();
        let mut cy = Rational::zero();
        for k in 0..n {
            let (p, q) = (&self.vertices[k], &self.vertices[(k + 1) % n]);
            let c = &p[0] * &q[1] - &q[0] * &p[1];
            cx += (&p[0] + &q[0]) * &c;
            cy += (&p[1] + &q[1]) * &c;
            twice_area += c;
        }
        let area = &twice_area / int(2);
        let six_area = &twice_area * int(3);
        (area, [cx / &six_area, cy / six_area])
    }

    pub fn area(&self) -> Rational {
        self.area_centroid().0
    }

    pub fn centroid(&self) -> Point {
        self.area_centroid().1
    }

    /// Maximum of the normalized moment map `⟨η_i, Φ⟩ - ⟨η_i, centroid⟩`,
    /// attained on facet `i`.
    pub fn facet_phi_max(&self, i: usize) -> Result<Rational, PolytopeError> {
        let f = self.facet(i)?;
        Ok(&f.offset - dot_q(f.normal, &self.centroid()))
    }

    /// All facet maxima at once (one centroid computation).
    pub fn phi_maxima(&self) -> Vec<Rational> {
        let c = self.centroid();
        self.facets
            .iter()
            .map(|f| &f.offset - dot_q(f.normal, &c))
            .collect()
    }

    /// `(self-intersection a, Chern number a + 2)` of the sphere over facet
    /// `i`, from `η_prev + η_next = -a·η_i`.
    pub fn self_intersection_chern(&self, i: usize) -> Result<(i64, i64), PolytopeError> {
        let (prev, next) = self.neighbors(i)?;
        let s = [
            self.facets[prev].normal[0] + self.facets[next].normal[0],
            self.facets[prev].normal[1] + self.facets[next].normal[1],
        ];
        let e = self.facets[i].normal;
        let k = if e[0] != 0 { 0 } else { 1 };
        if s[k] % e[k] != 0 {
            return Err(PolytopeError::NonSmoothFan(i));
        }
        let a = -s[k] / e[k];
        if s[0] != -a * e[0] || s[1] != -a * e[1] {
            return Err(PolytopeError::NonSmoothFan(i));
        }
        Ok((a, a + 2))
    }

    pub fn fano_nef_check(&self) -> Result<FanoReport, PolytopeError> {
        let chern = (0..self.len())
            .map(|i| self.self_intersection_chern(i).map(|(_, c)| c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FanoReport {
            fano: chern.iter().all(|&c| c > 0),
            nef: chern.iter().all(|&c| c >= 0),
            chern,
        })
    }

    /// Unordered pairs of disjoint (non-adjacent) facets, sorted.
    pub fn primitive_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Writes `v` as a nonnegative combination of one normal or of two
    /// adjacent normals.
    pub fn cone_decompose(&self, v: [i64; 2]) -> Result<ConeDecomposition, PolytopeError> {
        if v == [0, 0] {
            return Ok(ConeDecomposition::default());
        }
        let n = self.len();
        for k in 0..n {
            let (i, j) = (self.cyclic[k], self.cyclic[(k + 1) % n]);
            let (a, b) = (self.facets[i].normal, self.facets[j].normal);
            let det = cross(a, b);
            let (m1n, m2n) = (cross(v, b), cross(a, v));
            if m1n % det != 0 || m2n % det != 0 {
                continue;
            }
            let (m1, m2) = (m1n / det, m2n / det);
            if m1 < 0 || m2 < 0 {
                continue;
            }
            let parts = match (m1, m2) {
                (m, 0) => vec![(i, m as u64)],
                (0, m) => vec![(j, m as u64)],
                (m1, m2) => vec![(i, m1 as u64), (j, m2 as u64)],
            };
            return Ok(ConeDecomposition { parts });
        }
        Err(PolytopeError::NotInAnyCone)
    }

    /// Polytope moved by `x ↦ A·x + b` for `A ∈ GL(2,ℤ)`.
    pub fn transformed(&self, a: [[i64; 2]; 2], b: [Rational; 2]) -> Result<Self, PolytopeError> {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        assert!(det.abs() == 1, "transformation must be unimodular");
        // A^{-T} = (1/det) [[a11, -a10], [-a01, a00]]
        let inv_t = [
            [a[1][1] * det, -a[1][0] * det],
            [-a[0][1] * det, a[0][0] * det],
        ];
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let nn = [
                    inv_t[0][0] * f.normal[0] + inv_t[0][1] * f.normal[1],
                    inv_t[1][0] * f.normal[0] + inv_t[1][1] * f.normal[1],
                ];
                Facet {
                    normal: nn,
                    offset: &f.offset + dot_q(nn, &b),
                    label: f.label.clone(),
                }
            })
            .collect();
        Polytope::new(facets)
    }
}

/// The edge cut out on facet `i`'s line by all other half-planes, if it has
/// positive length. Endpoints are returned in counterclockwise order.
fn edge_on_line(facets: &[Facet], i: usize, f: &Facet) -> Option<(Point, Point)> {
    let [nx, ny] = f.normal;
    let norm2 = int(nx * nx + ny * ny);
    let p0: Point = [int(nx) * &f.offset / &norm2, int(ny) * &f.offset / &norm2];
    let dir = [-ny, nx];
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (j, g) in facets.iter().enumerate() {
        if j == i {
            continue;
        }
        let slope = int(g.normal[0] * dir[0] + g.normal[1] * dir[1]);
        let slack = &g.offset - dot_q(g.normal, &p0);
        if slope.is_zero() {
            if slack.is_negative() {
                return None;
            }
            continue;
        }
        let bound = &slack / &slope;
        if slope.is_positive() {
            if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        } else if lo.as_ref().is_none_or(|l| &bound > l) {
            lo = Some(bound);
        }
    }
    let (lo, hi) = (lo?, hi?);
    if lo >= hi {
        return None;
    }
    let at = |s: &Rational| -> Point { [&p0[0] + s * int(dir[0]), &p0[1] + s * int(dir[1])] };
    Some((at(&lo), at(&hi)))
}
