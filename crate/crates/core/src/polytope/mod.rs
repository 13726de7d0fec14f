//! H- and V-representations of the cut, metric and rooted metric polytopes.

mod io;
mod psd;

pub use io::{read_ext, read_ine, relabel_h, write_ext, write_ine};
pub use psd::{
    cos_map_check, covariance_map, covariance_map_inverse, elliptope_contains,
    elliptope_contains_exact, is_psd, is_psd_exact, SymMatrix, DEFAULT_PSD_TOL,
};

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graphs::{classify, induced_cycles, make_complete, suspension, Graph, SuspensionKind};
use crate::rational::BigRational;

/// Name of a coordinate: an edge variable `x_ij`, a diagonal variable
/// `y_ii`, or an anonymous index (polytopes read from files).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordLabel {
    Edge(usize, usize),
    Vertex(usize),
    Index(usize),
}

impl fmt::Display for CoordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordLabel::Edge(i, j) => write!(f, "x{i},{j}"),
            CoordLabel::Vertex(i) => write!(f, "y{i},{i}"),
            CoordLabel::Index(k) => write!(f, "c{k}"),
        }
    }
}

pub fn edge_labels(g: &Graph) -> Vec<CoordLabel> {
    g.edges().iter().map(|&(i, j)| CoordLabel::Edge(i, j)).collect()
}

pub fn index_labels(dim: usize) -> Vec<CoordLabel> {
    (1..=dim).map(CoordLabel::Index).collect()
}

/// One inequality `a . x <= b` with coprime integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub a: Vec<BigInt>,
    pub b: BigInt,
}

impl Row {
    /// Normalizes by the positive gcd of all entries; orientation is kept.
    pub fn new(a: Vec<BigInt>, b: BigInt) -> Result<Self> {
        if a.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("inequality with zero normal".into()));
        }
        let g = a.iter().fold(b.abs(), |g, x| g.gcd(x));
        if g.is_one() {
            return Ok(Row { a, b });
        }
        Ok(Row {
            a: a.into_iter().map(|x| x / &g).collect(),
            b: b / &g,
        })
    }

    pub fn from_i64(a: &[i64], b: i64) -> Result<Self> {
        Row::new(a.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(b))
    }

    /// Clears denominators, then normalizes.
    pub fn from_rational(a: &[BigRational], b: &BigRational) -> Result<Self> {
        let l = a
            .iter()
            .chain(std::iter::once(b))
            .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let scale = |r: &BigRational| r.numer() * (&l / r.denom());
        Row::new(a.iter().map(scale).collect(), scale(b))
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.a
            .iter()
            .zip(x)
            .map(|(c, v)| v * BigRational::from_integer(c.clone()))
            .sum()
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.eval(x) <= BigRational::from_integer(self.b.clone())
    }
}

/// Polytope `{x : a_i . x <= b_i}`. Rows are normalized and unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    labels: Vec<CoordLabel>,
    rows: Vec<Row>,
}

impl HPolytope {
    /// Drops repeated rows, keeping the first occurrence.
    pub fn new(labels: Vec<CoordLabel>, rows: impl IntoIterator<Item = Row>) -> Result<Self> {
        let dim = labels.len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in rows {
            if r.a.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "row of length {} in dimension {dim}",
                    r.a.len()
                )));
            }
            if seen.insert(r.clone()) {
                out.push(r);
            }
        }
        Ok(HPolytope {
            dim,
            labels,
            rows: out,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[CoordLabel] {
        &self.labels
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row_set(&self) -> HashSet<Row> {
        self.rows.iter().cloned().collect()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.rows.iter().all(|r| r.satisfied_by(x))
    }

    pub fn contains_f64(&self, x: &[f64], tol: f64) -> bool {
        self.rows.iter().all(|r| {
            let lhs: f64 = r.a.iter().zip(x).map(|(c, v)| big_f64(c) * v).sum();
            lhs <= big_f64(&r.b) + tol
        })
    }

    /// Rows as `f64` pairs `(a, b)`.
    pub fn to_f64_rows(&self) -> Vec<(Vec<f64>, f64)> {
        self.rows
            .iter()
            .map(|r| (r.a.iter().map(big_f64).collect(), big_f64(&r.b)))
            .collect()
    }

    /// Cartesian product: rows act on disjoint coordinate blocks.
    pub fn product(&self, other: &HPolytope) -> HPolytope {
        let pad = |r: &Row, before: usize, after: usize| Row {
            a: std::iter::repeat_n(BigInt::zero(), before)
                .chain(r.a.iter().cloned())
                .chain(std::iter::repeat_n(BigInt::zero(), after))
                .collect(),
            b: r.b.clone(),
        };
        let rows = self
            .rows
            .iter()
            .map(|r| pad(r, 0, other.dim))
            .chain(other.rows.iter().map(|r| pad(r, self.dim, 0)));
        let labels = self
            .labels
            .iter()
            .chain(other.labels.iter())
            .copied()
            .collect();
        HPolytope::new(labels, rows).expect("product rows have matching length")
    }
}

pub(crate) fn big_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// Convex hull of a finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    labels: Vec<CoordLabel>,
    vertices: Vec<Vec<BigRational>>,
}

impl VPolytope {
    /// Drops repeated points, keeping the first occurrence.
    pub fn new(labels: Vec<CoordLabel>, points: impl IntoIterator<Item = Vec<BigRational>>) -> Result<Self> {
        let dim = labels.len();
        let mut seen = HashSet::new();
        let mut vertices = Vec::new();
        for p in points {
            if p.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "point of length {} in dimension {dim}",
                    p.len()
                )));
            }
            if seen.insert(p.clone()) {
                vertices.push(p);
            }
        }
        Ok(VPolytope {
            dim,
            labels,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[CoordLabel] {
        &self.labels
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(crate::rational::to_f64).collect())
            .collect()
    }
}

const MAX_CUT_VERTICES_N: usize = 30;
const MAX_COR_VERTICES_N: usize = 29;

/// Cut vectors `x^S` for `S` ranging over subsets of `{1..n-1}`, in order of
/// the bitmask of `S`. Disconnected graphs repeat vectors; repeats are dropped.
pub fn cut_vertices(g: &Graph) -> Result<VPolytope> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidArgument("cut polytope needs n >= 2".into()));
    }
    if n > MAX_CUT_VERTICES_N {
        return Err(Error::SizeLimit(format!("2^{} cut vectors", n - 1)));
    }
    let edges = g.edges();
    let points = (0u64..1 << (n - 1)).map(|mask| {
        let inside = |v: usize| v < n && mask >> (v - 1) & 1 == 1;
        edges
            .iter()
            .map(|&(i, j)| {
                let x = i64::from(inside(i) != inside(j));
                BigRational::from_integer(BigInt::from(x))
            })
            .collect()
    });
    VPolytope::new(edge_labels(g), points)
}

/// Correlation vectors `y^S` for all `S` subsets of `{1..n}`; coordinates are
/// the diagonal entries `y_11..y_nn` followed by the edges of `g`.
pub fn cor_vertices(g: &Graph) -> Result<VPolytope> {
    let n = g.n();
    if n > MAX_COR_VERTICES_N {
        return Err(Error::SizeLimit(format!("2^{n} correlation vectors")));
    }
    let labels: Vec<CoordLabel> = (1..=n)
        .map(CoordLabel::Vertex)
        .chain(edge_labels(g))
        .collect();
    let one = BigRational::one();
    let zero = BigRational::zero();
    let points = (0u64..1 << n).map(|mask| {
        let inside = |v: usize| mask >> (v - 1) & 1 == 1;
        (1..=n)
            .map(inside)
            .chain(g.edges().iter().map(|&(i, j)| inside(i) && inside(j)))
            .map(|b| if b { one.clone() } else { zero.clone() })
            .collect()
    });
    VPolytope::new(labels, points)
}

/// The unit cube `[0,1]^dim`.
pub fn cube(dim: usize) -> HPolytope {
    HPolytope::new(index_labels(dim), (0..dim).flat_map(|k| box_rows(dim, k)))
        .expect("cube rows are valid")
}

fn box_rows(dim: usize, k: usize) -> [Row; 2] {
    let mut up = vec![0i64; dim];
    up[k] = 1;
    let mut down = vec![0i64; dim];
    down[k] = -1;
    [
        Row::from_i64(&up, 1).expect("nonzero"),
        Row::from_i64(&down, 0).expect("nonzero"),
    ]
}

fn triangle_rows(dim: usize, e1: usize, e2: usize, e3: usize) -> [Row; 4] {
    let row = |coefs: [(usize, i64); 3], b: i64| {
        let mut a = vec![0i64; dim];
        for (k, c) in coefs {
            a[k] = c;
        }
        Row::from_i64(&a, b).expect("nonzero")
    };
    [
        row([(e1, 1), (e2, -1), (e3, -1)], 0),
        row([(e1, -1), (e2, 1), (e3, -1)], 0),
        row([(e1, -1), (e2, -1), (e3, 1)], 0),
        row([(e1, 1), (e2, 1), (e3, 1)], 2),
    ]
}

fn segment() -> HPolytope {
    let g = make_complete(2).expect("K_2");
    HPolytope::new(edge_labels(&g), box_rows(1, 0)).expect("segment")
}

/// Metric polytope `Met_n`: all `4 C(n,3)` triangle inequalities.
/// `n = 2` gives the segment `0 <= x_12 <= 1`.
pub fn met_hrep(n: usize) -> Result<HPolytope> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Met_n needs n >= 2, got {n}")));
    }
    if n == 2 {
        return Ok(segment());
    }
    let g = make_complete(n)?;
    let d = g.edge_count();
    let idx = |i: usize, j: usize| g.edge_index(i, j).expect("complete graph edge");
    let mut rows = Vec::with_capacity(4 * d * (n - 2) / 3);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                rows.extend(triangle_rows(d, idx(i, j), idx(i, k), idx(j, k)));
            }
        }
    }
    HPolytope::new(edge_labels(&g), rows)
}

/// Rooted metric polytope `RMet_n`: the `4 C(n-1,2)` triangle inequalities
/// on triangles through the root `n`.
pub fn rmet_hrep(n: usize) -> Result<HPolytope> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("RMet_n needs n >= 2, got {n}")));
    }
    if n == 2 {
        return Ok(segment());
    }
    let g = make_complete(n)?;
    let d = g.edge_count();
    let idx = |i: usize, j: usize| g.edge_index(i, j).expect("complete graph edge");
    let mut rows = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            rows.extend(triangle_rows(d, idx(i, j), idx(i, n), idx(j, n)));
        }
    }
    HPolytope::new(edge_labels(&g), rows)
}

/// `Cut_n` for `n <= 5`. Up to four vertices it equals `Met_n`; `Cut_5`
/// adds the 16 switchings of the pentagonal inequality
/// `sum b_i b_j x_ij <= 0` with `b = (1,1,1,-1,-1)`.
pub fn cut_hrep_complete(n: usize) -> Result<HPolytope> {
    if n > 5 {
        return Err(Error::UnsupportedGraph(format!(
            "no H-representation of Cut_{n} is built in"
        )));
    }
    let met = met_hrep(n)?;
    if n < 5 {
        return Ok(met);
    }
    let g = make_complete(5)?;
    let mut rows = met.rows().to_vec();
    for neg in 0u32..1 << 5 {
        if neg.count_ones() != 2 {
            continue;
        }
        let sign = |v: usize| if neg >> (v - 1) & 1 == 1 { -1i64 } else { 1 };
        for side in 0u32..1 << 4 {
            let in_s = |v: usize| v < 5 && side >> (v - 1) & 1 == 1;
            let mut a = vec![0i64; g.edge_count()];
            let mut b = 0i64;
            for (k, &(i, j)) in g.edges().iter().enumerate() {
                let c = sign(i) * sign(j);
                if in_s(i) != in_s(j) {
                    a[k] = -c;
                    b -= c;
                } else {
                    a[k] = c;
                }
            }
            rows.push(Row::from_i64(&a, b)?);
        }
    }
    HPolytope::new(edge_labels(&g), rows)
}

/// `Cut(G)` for graphs without a `K_5` minor from the recognized sparse
/// families: box rows for every edge, then for every induced cycle `C` and
/// odd `F` within it, `sum_F x - sum_{C\F} x <= |F| - 1`.
pub fn cut_hrep_sparse(g: &Graph) -> Result<HPolytope> {
    let tag = classify(g);
    if !tag.is_sparse() {
        return Err(Error::UnsupportedFamily(format!(
            "no cycle-inequality description for {:?} graphs",
            tag.kind()
        )));
    }
    let cycles = induced_cycles(g)?;
    cut_hrep_from_cycles(g, &cycles)
}

/// `Cut` of the suspension of a star, path or cycle on `n` vertices (a
/// book of triangles, a fan, a wheel). These graphs are planar.
pub fn cut_hrep_suspension(kind: SuspensionKind, n: usize) -> Result<HPolytope> {
    let g = suspension(&kind.base(n)?);
    cut_hrep_from_cycles(&g, &kind.suspension_cycles(n)?)
}

/// Box rows plus cycle inequalities for the given cycles. Only describes
/// `Cut(G)` when `G` has no `K_5` minor and `cycles` are all its induced
/// cycles; the caller is responsible for both.
pub fn cut_hrep_from_cycles(g: &Graph, cycles: &[Vec<usize>]) -> Result<HPolytope> {
    let d = g.edge_count();
    let mut rows: Vec<Row> = (0..d).flat_map(|k| box_rows(d, k)).collect();
    for cyc in cycles {
        let len = cyc.len();
        let eidx: Vec<usize> = (0..len)
            .map(|t| {
                let (u, v) = (cyc[t], cyc[(t + 1) % len]);
                g.edge_index(u, v).ok_or_else(|| {
                    Error::InvalidArgument(format!("cycle uses missing edge ({u},{v})"))
                })
            })
            .collect::<Result<_>>()?;
        if len > 24 {
            return Err(Error::SizeLimit(format!("2^{} inequalities for a {len}-cycle", len - 1)));
        }
        for mask in 0u32..1 << len {
            let f = mask.count_ones() as i64;
            if f % 2 == 0 {
                continue;
            }
            let mut a = vec![0i64; d];
            for (t, &e) in eidx.iter().enumerate() {
                a[e] = if mask >> t & 1 == 1 { 1 } else { -1 };
            }
            rows.push(Row::from_i64(&a, f - 1)?);
        }
    }
    HPolytope::new(edge_labels(g), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_cactus, make_cycle, make_necklace, make_path, make_star};
    use crate::rational::int;

    #[test]
    fn cut_vertices_small() {
        let k2 = cut_vertices(&make_complete(2).unwrap()).unwrap();
        assert_eq!(k2.dim(), 1);
        assert_eq!(k2.vertices(), &[vec![int(0)], vec![int(1)]]);

        let c3 = cut_vertices(&make_cycle(3).unwrap()).unwrap();
        let expect: HashSet<Vec<BigRational>> = [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|v| v.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(c3.vertices().iter().cloned().collect::<HashSet<_>>(), expect);

        let k5 = cut_vertices(&make_complete(5).unwrap()).unwrap();
        assert_eq!((k5.vertices().len(), k5.dim()), (16, 10));
        assert!(matches!(
            cut_vertices(&make_path(31).unwrap()),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn met_and_rmet_row_counts() {
        assert_eq!(met_hrep(3).unwrap().rows().len(), 4);
        let m5 = met_hrep(5).unwrap();
        assert_eq!((m5.rows().len(), m5.dim()), (40, 10));
        let m2 = met_hrep(2).unwrap();
        let expect: HashSet<Row> = [Row::from_i64(&[1], 1).unwrap(), Row::from_i64(&[-1], 0).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(m2.row_set(), expect);

        assert_eq!(rmet_hrep(3).unwrap().row_set(), met_hrep(3).unwrap().row_set());
        let r4 = rmet_hrep(4).unwrap();
        assert_eq!((r4.rows().len(), r4.dim()), (12, 6));
        let r5 = rmet_hrep(5).unwrap();
        assert_eq!(r5.rows().len(), 24);
        assert!(r5.row_set().is_subset(&m5.row_set()));
        assert_ne!(r5.row_set(), m5.row_set());
    }

    #[test]
    fn cut5_has_56_facets_through_cut_vectors() {
        let h = cut_hrep_complete(5).unwrap();
        assert_eq!(h.rows().len(), 56);
        let v = cut_vertices(&make_complete(5).unwrap()).unwrap();
        for r in h.rows() {
            let tight = v.vertices().iter().filter(|x| r.eval(x) == BigRational::from_integer(r.b.clone())).count();
            assert!(v.vertices().iter().all(|x| r.satisfied_by(x)));
            assert!(tight >= 10, "row {r:?} tight at {tight}");
        }
        assert_eq!(cut_hrep_complete(4).unwrap(), met_hrep(4).unwrap());
        assert!(cut_hrep_complete(6).is_err());
    }

    #[test]
    fn rmet_is_subset_of_met() {
        for n in 2..=8 {
            let r = rmet_hrep(n).unwrap().row_set();
            let m = met_hrep(n).unwrap().row_set();
            assert!(r.is_subset(&m), "n = {n}");
        }
    }

    #[test]
    fn sparse_cut_rows() {
        let c3 = cut_hrep_sparse(&make_cycle(3).unwrap()).unwrap();
        assert_eq!(c3.rows().len(), 6 + 4);
        assert!(met_hrep(3).unwrap().row_set().is_subset(&c3.row_set()));
        for n in 3..=8 {
            let h = cut_hrep_sparse(&make_cycle(n).unwrap()).unwrap();
            assert_eq!(h.rows().len(), (1 << (n - 1)) + 2 * n);
        }
        let tree = make_star(7).unwrap();
        assert_eq!(cut_hrep_sparse(&tree).unwrap().rows().len(), 12);
        assert!(matches!(
            cut_hrep_sparse(&make_complete(5).unwrap()),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn row_normalization() {
        let r = Row::from_i64(&[2, -4, 6], 8).unwrap();
        assert_eq!(r, Row::from_i64(&[1, -2, 3], 4).unwrap());
        let r = Row::from_i64(&[-3, 0], 0).unwrap();
        assert_eq!(r, Row::from_i64(&[-1, 0], 0).unwrap());
        assert!(Row::from_i64(&[0, 0], 1).is_err());
        let half = crate::rational::rat(1, 2);
        let r = Row::from_rational(&[half.clone(), crate::rational::rat(1, 3)], &half).unwrap();
        assert_eq!(r, Row::from_i64(&[3, 2], 3).unwrap());
    }

    fn check_vertices_inside(g: &Graph, h: &HPolytope) {
        for v in cut_vertices(g).unwrap().vertices() {
            assert!(h.contains(v), "cut vertex {v:?} outside");
        }
    }

    #[test]
    fn cut_vertices_satisfy_relaxations() {
        for n in 2..=7 {
            let g = make_complete(n).unwrap();
            check_vertices_inside(&g, &met_hrep(n).unwrap());
            check_vertices_inside(&g, &rmet_hrep(n).unwrap());
        }
        for g in [
            make_cycle(6).unwrap(),
            make_cactus(&[4, 3, 3], 2).unwrap(),
            make_necklace(3, &[3, 4, 3]).unwrap(),
            make_path(6).unwrap(),
        ] {
            check_vertices_inside(&g, &cut_hrep_sparse(&g).unwrap());
        }
    }

    #[test]
    fn product_places_blocks() {
        let p = cube(2).product(&met_hrep(3).unwrap());
        assert_eq!(p.dim(), 5);
        assert_eq!(p.rows().len(), 8);
        assert!(p.contains(&[int(1), int(0), int(1), int(1), int(0)]));
        assert!(!p.contains(&[int(1), int(0), int(1), int(1), int(1)]));
    }
}
