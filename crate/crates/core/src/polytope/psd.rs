//! Covariance map, elliptope membership and the cosine map check.

use num_traits::{Num, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cut_vertices;
use crate::error::{Error, Result};
use crate::graphs::{classify, FamilyKind, Graph};
use crate::rational::BigRational;

pub const DEFAULT_PSD_TOL: f64 = 1e-10;

/// Dense symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Clone + Num> SymMatrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = T::one();
        }
        SymMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v.clone();
        self.entries[j * self.n + i] = v;
    }

    /// Correlation matrix of an edge point of `K_n` under `y_ij = 1 - 2 x_ij`.
    pub fn from_complete_point(g: &Graph, x: &[T]) -> Self {
        let mut m = SymMatrix::identity(g.n());
        let two = T::one() + T::one();
        for (&(i, j), v) in g.edges().iter().zip(x) {
            m.set(i - 1, j - 1, T::one() - two.clone() * v.clone());
        }
        m
    }
}

/// Positive semidefiniteness by LDL^T with diagonal pivoting.
/// Pivots below `-tol` reject; once every remaining diagonal entry is at most
/// `tol`, the rest must be numerically zero.
pub fn is_psd(m: &SymMatrix<f64>, tol: f64) -> bool {
    let n = m.n;
    let mut a = m.entries.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let (pos, &p) = alive
            .iter()
            .enumerate()
            .max_by(|x, y| a[x.1 * n + x.1].total_cmp(&a[y.1 * n + y.1]))
            .expect("non-empty");
        let d = a[p * n + p];
        if d < -tol {
            return false;
        }
        if d <= tol {
            let off = tol.sqrt();
            return alive.iter().all(|&i| {
                a[i * n + i] >= -tol && alive.iter().all(|&j| i == j || a[i * n + j].abs() <= off)
            });
        }
        alive.swap_remove(pos);
        for &i in &alive {
            let f = a[i * n + p] / d;
            for &j in &alive {
                a[i * n + j] -= f * a[p * n + j];
            }
        }
    }
    true
}

/// Exact positive semidefiniteness over the rationals.
pub fn is_psd_exact(m: &SymMatrix<BigRational>) -> bool {
    let n = m.n;
    let mut a = m.entries.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let (pos, &p) = alive
            .iter()
            .enumerate()
            .max_by(|x, y| a[x.1 * n + x.1].cmp(&a[y.1 * n + y.1]))
            .expect("non-empty");
        let d = a[p * n + p].clone();
        if d.is_negative() {
            return false;
        }
        if d.is_zero() {
            return alive
                .iter()
                .all(|&i| alive.iter().all(|&j| a[i * n + j].is_zero()));
        }
        alive.swap_remove(pos);
        for &i in &alive {
            let f = &a[i * n + p] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &alive {
                let t = &f * &a[p * n + j];
                a[i * n + j] -= t;
            }
        }
    }
    true
}

enum Completable {
    Complete,
    Forest,
}

fn completable(g: &Graph) -> Result<Completable> {
    if g.is_complete() {
        return Ok(Completable::Complete);
    }
    if classify(g).kind() == FamilyKind::Forest {
        return Ok(Completable::Forest);
    }
    Err(Error::UnsupportedGraph(
        "elliptope membership needs a complete graph or a forest".into(),
    ))
}

fn check_len<T>(g: &Graph, x: &[T]) -> Result<()> {
    if x.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, graph has {} edges",
            x.len(),
            g.edge_count()
        )));
    }
    Ok(())
}

/// Whether the edge point `x` lies in `I(G)`, the elliptope under
/// `y_ij = 1 - 2 x_ij`. Complete graphs get a full PSD test; on forests
/// every partial matrix with entries in `[-1, 1]` completes, so the test is
/// the unit box.
pub fn elliptope_contains(x: &[f64], g: &Graph, tol: f64) -> Result<bool> {
    check_len(g, x)?;
    Ok(match completable(g)? {
        Completable::Forest => x.iter().all(|&v| v >= -tol && v <= 1.0 + tol),
        Completable::Complete => is_psd(&SymMatrix::from_complete_point(g, x), tol),
    })
}

pub fn elliptope_contains_exact(x: &[BigRational], g: &Graph) -> Result<bool> {
    check_len(g, x)?;
    Ok(match completable(g)? {
        Completable::Forest => x
            .iter()
            .all(|v| !v.is_negative() && v <= &BigRational::one()),
        Completable::Complete => is_psd_exact(&SymMatrix::from_complete_point(g, x)),
    })
}

/// Maps a correlation-space point `y` of `g` (diagonal entries `y_11..y_nn`
/// then one entry per edge) to the cut space of the suspension, in the
/// suspension's sorted edge order:
/// `x_{i,n+1} = y_ii`, `x_ij = y_ii + y_jj - 2 y_ij`.
pub fn covariance_map<T: Clone + Num>(y: &[T], g: &Graph) -> Result<Vec<T>> {
    let n = g.n();
    if y.len() != n + g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "expected {} correlation coordinates, got {}",
            n + g.edge_count(),
            y.len()
        )));
    }
    let sus = crate::graphs::suspension(g);
    let two = T::one() + T::one();
    let mut out = vec![T::zero(); sus.edge_count()];
    for (k, &(i, j)) in sus.edges().iter().enumerate() {
        out[k] = if j == n + 1 {
            y[i - 1].clone()
        } else {
            let e = g.edge_index(i, j).expect("edge of g");
            y[i - 1].clone() + y[j - 1].clone() - two.clone() * y[n + e].clone()
        };
    }
    Ok(out)
}

pub fn covariance_map_inverse<T: Clone + Num>(x: &[T], g: &Graph) -> Result<Vec<T>> {
    let n = g.n();
    let sus = crate::graphs::suspension(g);
    if x.len() != sus.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "expected {} cut coordinates, got {}",
            sus.edge_count(),
            x.len()
        )));
    }
    let two = T::one() + T::one();
    let diag = |i: usize| x[sus.edge_index(i, n + 1).expect("apex edge")].clone();
    let mut y: Vec<T> = (1..=n).map(diag).collect();
    for &(i, j) in g.edges() {
        let xij = x[sus.edge_index(i, j).expect("edge of g")].clone();
        y.push((diag(i) + diag(j) - xij) / two.clone());
    }
    Ok(y)
}

/// Samples random convex combinations `a` of the cut vectors of `g` and
/// checks that `cos(pi a)`, pulled back to `x = (1 - y) / 2`, lies in the
/// elliptope. Defined for forests and `K_3`.
pub fn cos_map_check(g: &Graph, samples: usize, seed: u64) -> Result<bool> {
    let kind = classify(g).kind();
    let triangle = g.n() == 3 && g.is_complete();
    if kind != FamilyKind::Forest && !triangle {
        return Err(Error::UnsupportedGraph(
            "cosine map check runs on forests and K_3 only".into(),
        ));
    }
    let verts = cut_vertices(g)?.vertices_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = g.edge_count();
    for _ in 0..samples {
        let w: Vec<f64> = verts
            .iter()
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let total: f64 = w.iter().sum();
        let mut a = vec![0.0; d];
        for (wk, v) in w.iter().zip(&verts) {
            for (ai, vi) in a.iter_mut().zip(v) {
                *ai += wk / total * vi;
            }
        }
        let x: Vec<f64> = a
            .iter()
            .map(|&ae| (1.0 - (std::f64::consts::PI * ae).cos()) / 2.0)
            .collect();
        if !elliptope_contains(&x, g, DEFAULT_PSD_TOL)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_complete, make_cycle, make_path, make_star, suspension};
    use crate::rational::{int, rat};
    use std::collections::HashSet;

    #[test]
    fn elliptope_examples() {
        let k4 = make_complete(4).unwrap();
        assert!(elliptope_contains(&[0.0; 6], &k4, DEFAULT_PSD_TOL).unwrap());
        let k3 = make_complete(3).unwrap();
        assert!(!elliptope_contains(&[1.0, 1.0, 1.0], &k3, DEFAULT_PSD_TOL).unwrap());
        assert!(!elliptope_contains_exact(&[int(1), int(1), int(1)], &k3).unwrap());
        // (1/2)^3 maps to the zero correlation matrix plus identity
        assert!(elliptope_contains_exact(&vec![rat(1, 2); 3], &k3).unwrap());
        assert!(matches!(
            elliptope_contains(&[0.0; 4], &make_cycle(4).unwrap(), 1e-10),
            Err(Error::UnsupportedGraph(_))
        ));
        let star = make_star(4).unwrap();
        assert!(elliptope_contains(&[0.0, 1.0, 0.5], &star, 1e-10).unwrap());
        assert!(!elliptope_contains(&[0.0, 1.2, 0.5], &star, 1e-10).unwrap());
    }

    #[test]
    fn cut_vectors_are_in_elliptope() {
        for n in 2..=7 {
            let g = make_complete(n).unwrap();
            let v = cut_vertices(&g).unwrap();
            for p in v.vertices() {
                assert!(elliptope_contains_exact(p, &g).unwrap());
            }
            for p in v.vertices_f64() {
                assert!(elliptope_contains(&p, &g, DEFAULT_PSD_TOL).unwrap());
            }
        }
    }

    #[test]
    fn eigenvalue_minus_one_rejected() {
        // Y = [[1,-1,-1],[-1,1,-1],[-1,-1,1]] has eigenvalues {2, 2, -1}
        let mut m = SymMatrix::identity(3);
        m.set(0, 1, -1.0);
        m.set(0, 2, -1.0);
        m.set(1, 2, -1.0);
        assert!(!is_psd(&m, 1e-10));
    }

    #[test]
    fn covariance_map_examples() {
        let k2 = make_complete(2).unwrap();
        // suspension K_3 edges: (1,2), (1,3), (2,3)
        assert_eq!(
            covariance_map(&[int(1), int(1), int(1)], &k2).unwrap(),
            vec![int(0), int(1), int(1)]
        );
        assert_eq!(
            covariance_map(&[int(1), int(0), int(0)], &k2).unwrap(),
            vec![int(1), int(1), int(0)]
        );
    }

    #[test]
    fn correlation_vertices_biject_onto_cut_vertices() {
        for g in [make_cycle(3).unwrap(), make_path(4).unwrap(), make_star(4).unwrap()] {
            let cor = cor_vertices_set(&g);
            let cut: HashSet<Vec<BigRational>> = cut_vertices(&suspension(&g))
                .unwrap()
                .vertices()
                .iter()
                .cloned()
                .collect();
            assert_eq!(cor.len(), 1 << g.n());
            let mapped: HashSet<Vec<BigRational>> = cor
                .iter()
                .map(|y| covariance_map(y, &g).unwrap())
                .collect();
            assert_eq!(mapped, cut);
        }
    }

    fn cor_vertices_set(g: &Graph) -> HashSet<Vec<BigRational>> {
        super::super::cor_vertices(g)
            .unwrap()
            .vertices()
            .iter()
            .cloned()
            .collect()
    }

    #[test]
    fn cor_vertex_examples() {
        let k1 = Graph::new(1, []).unwrap();
        let v = super::super::cor_vertices(&k1).unwrap();
        assert_eq!(v.vertices(), &[vec![int(0)], vec![int(1)]]);
        let k2 = make_complete(2).unwrap();
        let v = super::super::cor_vertices(&k2).unwrap();
        assert!(v.vertices().contains(&vec![int(1), int(1), int(1)]));
    }

    #[test]
    fn cosine_map_examples() {
        let k3 = make_complete(3).unwrap();
        assert!(cos_map_check(&k3, 1000, 7).unwrap());
        assert!(cos_map_check(&make_path(5).unwrap(), 200, 1).unwrap());
        // a = 0 gives the all-ones correlation matrix
        assert!(elliptope_contains(&[0.0; 3], &k3, 1e-10).unwrap());
        assert!(cos_map_check(&make_complete(4).unwrap(), 10, 1).is_err());
    }
}
