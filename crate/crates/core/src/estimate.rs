//! Monte Carlo volumes: hit-and-run inside a sequence of concentric balls,
//! plus plain rejection sampling for small elliptopes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::elliptope::lgamma;
use crate::error::{Error, Result};
use crate::graphs::make_complete;
use crate::lp::{Lp, LpResult, LpStatus, Sense};
use crate::polytope::{elliptope_contains, HPolytope, VPolytope, DEFAULT_PSD_TOL};

pub type LPResult = LpResult<f64>;

const INTERIOR_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// A uniformly random coordinate axis per step.
    Coordinate,
    /// A uniformly random unit vector per step.
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    pub walk_len: usize,
    pub samples_per_phase: usize,
    pub radius_growth: f64,
    pub seed: u64,
    pub runs: usize,
    pub direction: Direction,
}

impl WalkConfig {
    /// `walk_len = 10 + d`, `400 d` samples per phase, growth `4^(1/d)`, 20 runs.
    pub fn for_dim(dim: usize) -> Self {
        let d = dim.max(1);
        WalkConfig {
            walk_len: 10 + d,
            samples_per_phase: (400 * d).max(100),
            radius_growth: 4f64.powf(1.0 / d as f64),
            seed: 1,
            runs: 20,
            direction: Direction::Coordinate,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.walk_len < 1 {
            return bad("walk_len must be at least 1");
        }
        if self.samples_per_phase < 100 {
            return bad("samples_per_phase must be at least 100");
        }
        if !(self.radius_growth > 1.0 && self.radius_growth <= 2.0) {
            return bad("radius_growth must lie in (1, 2]");
        }
        if self.runs < 1 {
            return bad("runs must be at least 1");
        }
        Ok(())
    }
}

/// Summary of repeated runs, quartiles as in R's default (type 7).
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateStats {
    pub n_runs: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
}

impl EstimateStats {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("need finite run values".into()));
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let h = (v.len() - 1) as f64 * p;
            let lo = h.floor() as usize;
            let hi = (lo + 1).min(v.len() - 1);
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        };
        let mean = (v.iter().sum::<f64>() / v.len() as f64).clamp(v[0], v[v.len() - 1]);
        Ok(EstimateStats {
            n_runs: v.len(),
            min: v[0],
            q1: q(0.25),
            median: q(0.5),
            mean,
            q3: q(0.75),
            max: v[v.len() - 1],
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn lp_error(status: LpStatus) -> Error {
    match status {
        LpStatus::Infeasible => Error::EmptyPolytope,
        _ => Error::UnboundedPolytope,
    }
}

/// Center and radius of the largest ball inside `h`.
pub fn chebyshev_center(h: &HPolytope) -> Result<(Vec<f64>, f64)> {
    let d = h.dim();
    let mut obj = vec![0.0; d + 1];
    obj[d] = 1.0;
    let mut lp = Lp::new(obj, true);
    for (a, b) in h.to_f64_rows() {
        let nrm = norm(&a);
        let mut row = a;
        row.push(nrm);
        lp.row(row, Sense::Le, b);
    }
    let r = lp.solve();
    if r.status != LpStatus::Optimal {
        return Err(lp_error(r.status));
    }
    let radius = r.point[d];
    if radius < -INTERIOR_EPS {
        return Err(Error::EmptyPolytope);
    }
    Ok((r.point[..d].to_vec(), radius.max(0.0)))
}

/// Minimum and maximum of each coordinate over `h`.
pub fn coordinate_bounds(h: &HPolytope) -> Result<Vec<(f64, f64)>> {
    let rows = h.to_f64_rows();
    let d = h.dim();
    (0..d)
        .map(|k| {
            let mut ext = [0.0; 2];
            for (slot, sign) in [(0usize, -1.0), (1, 1.0)] {
                let mut obj = vec![0.0; d];
                obj[k] = sign;
                let mut lp = Lp::new(obj, true);
                for (a, b) in &rows {
                    lp.row(a.clone(), Sense::Le, *b);
                }
                let r = lp.solve();
                if r.status != LpStatus::Optimal {
                    return Err(lp_error(r.status));
                }
                ext[slot] = sign * r.value;
            }
            Ok((ext[0], ext[1]))
        })
        .collect()
}

/// A convex body the walk can move in: chord of a line through `x`.
trait Body: Sync {
    fn dim(&self) -> usize;
    /// Parameter interval `[lo, hi]` of `x + t u` inside the body.
    fn chord(&self, x: &[f64], u: &[f64]) -> (f64, f64);
}

struct HBody {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl HBody {
    fn new(h: &HPolytope, shift: &[f64]) -> Self {
        let (a, b): (Vec<_>, Vec<_>) = h
            .to_f64_rows()
            .into_iter()
            .map(|(a, b)| {
                let b = b - dot(&a, shift);
                (a, b)
            })
            .unzip();
        HBody { a, b }
    }

    fn interior(&self, x: &[f64]) -> bool {
        self.a
            .iter()
            .zip(&self.b)
            .all(|(a, b)| b - dot(a, x) > INTERIOR_EPS)
    }
}

impl Body for HBody {
    fn dim(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn chord(&self, x: &[f64], u: &[f64]) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (a, b) in self.a.iter().zip(&self.b) {
            let au = dot(a, u);
            let slack = b - dot(a, x);
            if au > INTERIOR_EPS {
                hi = hi.min(slack / au);
            } else if au < -INTERIOR_EPS {
                lo = lo.max(slack / au);
            }
        }
        (lo, hi)
    }
}

struct VBody {
    verts: Vec<Vec<f64>>,
}

impl VBody {
    /// `max t` with `x + t u` a convex combination of the vertices.
    fn reach(&self, x: &[f64], u: &[f64]) -> f64 {
        let m = self.verts.len();
        let d = x.len();
        let mut obj = vec![0.0; m + 1];
        obj[m] = 1.0;
        let mut lp = Lp::new(obj, false);
        for k in 0..d {
            let mut row: Vec<f64> = self.verts.iter().map(|v| v[k]).collect();
            row.push(-u[k]);
            lp.row(row, Sense::Eq, x[k]);
        }
        let mut ones = vec![1.0; m];
        ones.push(0.0);
        lp.row(ones, Sense::Eq, 1.0);
        let r = lp.solve();
        match r.status {
            LpStatus::Optimal => r.value.max(0.0),
            _ => 0.0,
        }
    }

    fn contains(&self, x: &[f64]) -> bool {
        let m = self.verts.len();
        let mut lp = Lp::new(vec![0.0; m], false);
        for k in 0..x.len() {
            lp.row(self.verts.iter().map(|v| v[k]).collect(), Sense::Eq, x[k]);
        }
        lp.row(vec![1.0; m], Sense::Eq, 1.0);
        lp.solve().status == LpStatus::Optimal
    }
}

impl Body for VBody {
    fn dim(&self) -> usize {
        self.verts.first().map_or(0, Vec::len)
    }

    fn chord(&self, x: &[f64], u: &[f64]) -> (f64, f64) {
        let neg: Vec<f64> = u.iter().map(|v| -v).collect();
        (-self.reach(x, &neg), self.reach(x, u))
    }
}

/// Chord of `x + t u` inside the origin-centred ball of radius `r`.
fn ball_chord(x: &[f64], u: &[f64], r: f64) -> (f64, f64) {
    let uu = dot(u, u);
    let xu = dot(x, u);
    let disc = (xu * xu - uu * (dot(x, x) - r * r)).max(0.0);
    let s = disc.sqrt();
    ((-xu - s) / uu, (-xu + s) / uu)
}

fn direction(d: usize, mode: Direction, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match mode {
        Direction::Coordinate => {
            let mut u = vec![0.0; d];
            u[rng.random_range(0..d)] = 1.0;
            u
        }
        Direction::Random => loop {
            let u: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
            let n = norm(&u);
            if n > 1e-12 {
                break u.into_iter().map(|v| v / n).collect();
            }
        },
    }
}

fn walk<B: Body + ?Sized>(
    body: &B,
    x: &mut [f64],
    steps: usize,
    ball: Option<f64>,
    mode: Direction,
    rng: &mut ChaCha8Rng,
) {
    let d = x.len();
    for _ in 0..steps {
        let u = direction(d, mode, rng);
        let (mut lo, mut hi) = body.chord(x, &u);
        if let Some(r) = ball {
            let (blo, bhi) = ball_chord(x, &u, r);
            lo = lo.max(blo);
            hi = hi.min(bhi);
        }
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            continue;
        }
        let t = rng.random_range(lo..hi);
        for (xi, ui) in x.iter_mut().zip(&u) {
            *xi += t * ui;
        }
    }
}

/// Runs `steps` hit-and-run steps from the strictly interior point `x0`.
pub fn hit_and_run(
    h: &HPolytope,
    x0: &[f64],
    steps: usize,
    mode: Direction,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    if x0.len() != h.dim() {
        return Err(Error::InvalidArgument("start point has wrong dimension".into()));
    }
    let body = HBody::new(h, &vec![0.0; h.dim()]);
    if !body.interior(x0) {
        return Err(Error::InvalidStart);
    }
    let mut x = x0.to_vec();
    walk(&body, &mut x, steps, None, mode, rng);
    Ok(x)
}

fn log_ball_volume(d: usize, r: f64) -> f64 {
    let h = d as f64 / 2.0;
    h * std::f64::consts::PI.ln() + d as f64 * r.ln() - lgamma(h + 1.0).expect("positive")
}

/// The radius schedule `r_0, r_0 g, ...`, capped at `outer`.
fn radii(inner: f64, outer: f64, growth: f64) -> Vec<f64> {
    let mut out = vec![inner];
    while *out.last().expect("nonempty") < outer {
        let next = (out.last().expect("nonempty") * growth).min(outer);
        out.push(next);
    }
    out
}

/// One run of the ball sequence: returns `log vol`. `first_phase` is the
/// log of `vol(K ∩ B_0) / vol(B_0)`.
fn sob_run<B: Body + ?Sized>(
    body: &B,
    rs: &[f64],
    first_phase: f64,
    cfg: &WalkConfig,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let d = body.dim();
    let mut log_vol = log_ball_volume(d, rs[0]) + first_phase;
    let mut x = vec![0.0; d];
    for k in 1..rs.len() {
        let inner2 = rs[k - 1] * rs[k - 1];
        let mut hits = 0usize;
        for _ in 0..cfg.samples_per_phase {
            walk(body, &mut x, cfg.walk_len, Some(rs[k]), cfg.direction, rng);
            if dot(&x, &x) <= inner2 {
                hits += 1;
            }
        }
        let ratio = hits.max(1) as f64 / cfg.samples_per_phase as f64;
        log_vol -= ratio.ln();
    }
    log_vol
}

fn run_rng(seed: u64, run: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(run as u64))
}

fn collect_runs(cfg: &WalkConfig, f: impl Fn(&mut ChaCha8Rng) -> f64 + Sync) -> Result<EstimateStats> {
    let vals: Vec<f64> = (0..cfg.runs)
        .into_par_iter()
        .map(|i| f(&mut run_rng(cfg.seed, i)).exp())
        .collect();
    EstimateStats::from_values(&vals)
}

/// Sequence-of-balls estimate of `vol(h)` over `cfg.runs` seeded runs.
pub fn sob_volume(h: &HPolytope, cfg: &WalkConfig) -> Result<EstimateStats> {
    cfg.validate()?;
    let d = h.dim();
    if d == 0 {
        return Err(Error::InvalidArgument("zero-dimensional polytope".into()));
    }
    let (c, r) = chebyshev_center(h)?;
    if r <= INTERIOR_EPS {
        return Err(Error::InvalidArgument("polytope is not full-dimensional".into()));
    }
    let bounds = coordinate_bounds(h)?;
    let outer = bounds
        .iter()
        .zip(&c)
        .map(|(&(lo, hi), ci)| (lo - ci).abs().max((hi - ci).abs()).powi(2))
        .sum::<f64>()
        .sqrt();
    let body = HBody::new(h, &c);
    let rs = radii(r, outer.max(r), cfg.radius_growth);
    collect_runs(cfg, |rng| sob_run(&body, &rs, 0.0, cfg, rng))
}

pub const MAX_VERTICES: usize = 1 << 16;

/// Sequence-of-balls estimate for a V-polytope, chords by ray-shooting LPs.
pub fn vpolytope_estimate(v: &VPolytope, cfg: &WalkConfig) -> Result<EstimateStats> {
    cfg.validate()?;
    let d = v.dim();
    let pts = v.vertices_f64();
    if pts.len() > MAX_VERTICES {
        return Err(Error::SizeLimit(format!("{} vertices", pts.len())));
    }
    if d == 0 || pts.len() < d + 1 {
        return Err(Error::InvalidArgument("polytope is not full-dimensional".into()));
    }
    let mut c = vec![0.0; d];
    for p in &pts {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi / pts.len() as f64;
        }
    }
    let verts: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| p.iter().zip(&c).map(|(a, b)| a - b).collect())
        .collect();
    let body = VBody { verts };
    let origin = vec![0.0; d];
    // inner radius: the axis reaches bound an inscribed cross-polytope
    let mut reach = f64::INFINITY;
    for k in 0..d {
        let mut u = vec![0.0; d];
        u[k] = 1.0;
        let (lo, hi) = body.chord(&origin, &u);
        reach = reach.min(-lo).min(hi);
    }
    if reach <= INTERIOR_EPS {
        return Err(Error::InvalidArgument("polytope is not full-dimensional".into()));
    }
    let inner = reach / (d as f64).sqrt();
    let outer = body.verts.iter().map(|p| norm(p)).fold(0.0, f64::max);
    let rs = radii(inner, outer.max(inner), cfg.radius_growth);
    collect_runs(cfg, |rng| {
        let mut hits = 0usize;
        for _ in 0..cfg.samples_per_phase {
            if body.contains(&uniform_in_ball(d, inner, rng)) {
                hits += 1;
            }
        }
        let frac = hits.max(1) as f64 / cfg.samples_per_phase as f64;
        sob_run(&body, &rs, frac.ln(), cfg, rng)
    })
}

fn uniform_in_ball(d: usize, r: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let u = direction(d, Direction::Random, rng);
    let s: f64 = rng.random::<f64>().powf(1.0 / d as f64) * r;
    u.into_iter().map(|v| v * s).collect()
}

pub const ELLIPTOPE_BATCHES: usize = 20;

/// Fraction of uniform points of `[0,1]^{C(n,2)}` inside `I_n`, in
/// [`ELLIPTOPE_BATCHES`] equal batches seeded `seed + batch`.
pub fn elliptope_rejection(n: usize, samples: usize, seed: u64) -> Result<EstimateStats> {
    if !(2..=5).contains(&n) {
        return Err(Error::SizeLimit(format!("rejection sampling needs 2 <= n <= 5, got {n}")));
    }
    let per = samples / ELLIPTOPE_BATCHES;
    if per == 0 {
        return Err(Error::InvalidArgument(format!(
            "need at least {ELLIPTOPE_BATCHES} samples"
        )));
    }
    let g = make_complete(n)?;
    let m = g.edge_count();
    let vals: Vec<f64> = (0..ELLIPTOPE_BATCHES)
        .into_par_iter()
        .map(|b| {
            let mut rng = run_rng(seed, b);
            let mut x = vec![0.0; m];
            let mut hits = 0usize;
            for _ in 0..per {
                x.iter_mut().for_each(|v| *v = rng.random::<f64>());
                if elliptope_contains(&x, &g, DEFAULT_PSD_TOL).expect("complete graph") {
                    hits += 1;
                }
            }
            hits as f64 / per as f64
        })
        .collect();
    EstimateStats::from_values(&vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube, met_hrep};

    #[test]
    fn chebyshev_examples() {
        let (c, r) = chebyshev_center(&cube(3)).unwrap();
        assert!(c.iter().all(|v| (v - 0.5).abs() < 1e-9));
        assert!((r - 0.5).abs() < 1e-9);
        let (c, r) = chebyshev_center(&met_hrep(3).unwrap()).unwrap();
        assert!(c.iter().all(|v| (v - 0.5).abs() < 1e-9), "{c:?}");
        assert!((r - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_empty() {
        use crate::polytope::{index_labels, Row};
        let h = HPolytope::new(
            index_labels(1),
            [Row::from_i64(&[1], 0).unwrap(), Row::from_i64(&[-1], -1).unwrap()],
        )
        .unwrap();
        assert!(matches!(chebyshev_center(&h), Err(Error::EmptyPolytope)));
    }

    #[test]
    fn walk_stays_inside() {
        let h = met_hrep(4).unwrap();
        let (c, _) = chebyshev_center(&h).unwrap();
        let mut rng = run_rng(7, 0);
        let mut x = c;
        for mode in [Direction::Coordinate, Direction::Random] {
            for _ in 0..200 {
                x = hit_and_run(&h, &x, 1, mode, &mut rng).unwrap_or(x);
                assert!(h.contains_f64(&x, 1e-12));
            }
        }
    }

    #[test]
    fn walk_rejects_boundary_start() {
        let mut rng = run_rng(1, 0);
        let err = hit_and_run(&cube(2), &[0.0, 0.5], 3, Direction::Coordinate, &mut rng);
        assert!(matches!(err, Err(Error::InvalidStart)));
    }

    #[test]
    fn uniform_on_square() {
        let h = cube(2);
        let mut rng = run_rng(3, 0);
        let mut x = vec![0.5, 0.5];
        let mut sum = [0.0; 2];
        let n = 100_000;
        for _ in 0..n {
            x = hit_and_run(&h, &x, 1, Direction::Random, &mut rng).unwrap();
            sum[0] += x[0];
            sum[1] += x[1];
        }
        for s in sum {
            assert!((s / n as f64 - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn thin_box_step() {
        use crate::polytope::{index_labels, Row};
        let h = HPolytope::new(
            index_labels(2),
            [
                Row::from_i64(&[1, 0], 1).unwrap(),
                Row::from_i64(&[-1, 0], 0).unwrap(),
                Row::new(vec![0.into(), 1_000_000_000.into()], 1.into()).unwrap(),
                Row::from_i64(&[0, -1], 0).unwrap(),
            ],
        )
        .unwrap();
        let mut rng = run_rng(5, 0);
        for mode in [Direction::Coordinate, Direction::Random] {
            let x = hit_and_run(&h, &[0.5, 5e-10], 1, mode, &mut rng).unwrap();
            assert!(h.contains_f64(&x, 0.0));
        }
    }

    #[test]
    fn stats_quantiles() {
        let s = EstimateStats::from_values(&[4.0, 1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (1.0, 2.0, 3.0, 4.0, 5.0));
        assert_eq!(s.mean, 3.0);
        let s = EstimateStats::from_values(&[1.0, 2.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (1.25, 1.5, 1.75));
        assert!(EstimateStats::from_values(&[]).is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = WalkConfig::for_dim(3);
        assert!(c.validate().is_ok());
        assert_eq!((c.walk_len, c.samples_per_phase, c.runs), (13, 1200, 20));
        c.radius_growth = 2.5;
        assert!(c.validate().is_err());
        c.radius_growth = 1.5;
        c.samples_per_phase = 50;
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_estimates() {
        let mut cfg = WalkConfig::for_dim(3);
        cfg.runs = 4;
        let s = sob_volume(&met_hrep(3).unwrap(), &cfg).unwrap();
        assert!((s.mean - 1.0 / 3.0).abs() < 0.1 / 3.0, "{s:?}");
        let again = sob_volume(&met_hrep(3).unwrap(), &cfg).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn rejection_small_n() {
        let s = elliptope_rejection(2, 1000, 1).unwrap();
        assert_eq!(s.mean, 1.0);
        let s = elliptope_rejection(3, 200_000, 1).unwrap();
        assert!((s.mean - 0.61685).abs() < 0.01);
        assert!(matches!(elliptope_rejection(6, 1000, 1), Err(Error::SizeLimit(_))));
    }
}
