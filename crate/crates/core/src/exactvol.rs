//! Exact rational volumes: closed forms for sparse graph families, the
//! rooted metric polytope, suspensions, and Lasserre's recursive facet
//! decomposition for small H-polytopes.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graphs::{FamilyKind, FamilyTag, SuspensionKind};
use crate::lp::{Lp, LpStatus, Sense};
use crate::polytope::{cut_hrep_complete, met_hrep, HPolytope, Row};
use crate::rational::{factorial, pow2, BigRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolumeMethod {
    Formula,
    Recursion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactVolume {
    pub value: BigRational,
    pub method: VolumeMethod,
    pub family: Option<FamilyTag>,
}

/// Dimension above which [`lasserre_volume`] is expected to be slow.
pub const ADVISORY_DIM: usize = 12;
/// Default hard dimension limit.
pub const HARD_DIM: usize = 16;

#[derive(Clone, Debug)]
pub struct LasserreConfig {
    pub hard_dim: usize,
    /// Skip slices containing an opposite row pair, which have no interior.
    pub prune_flat: bool,
    /// Integers the memo table may hold; later subproblems are not cached.
    pub memo_budget: usize,
}

impl Default for LasserreConfig {
    fn default() -> Self {
        LasserreConfig {
            hard_dim: HARD_DIM,
            prune_flat: true,
            memo_budget: 1 << 27,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LasserreStats {
    pub subproblems: usize,
    pub memo_hits: usize,
    pub pruned: usize,
}

pub fn lasserre_volume(h: &HPolytope) -> Result<BigRational> {
    lasserre_volume_with(h, &LasserreConfig::default()).map(|(v, _)| v)
}

pub fn lasserre_volume_with(
    h: &HPolytope,
    cfg: &LasserreConfig,
) -> Result<(BigRational, LasserreStats)> {
    let d = h.dim();
    if d > cfg.hard_dim {
        return Err(Error::SizeLimit(format!(
            "dimension {d} above the exact-engine limit {}",
            cfg.hard_dim
        )));
    }
    let rows: Rows = h
        .rows()
        .iter()
        .map(|r| {
            r.a.iter()
                .chain(std::iter::once(&r.b))
                .map(|x| x.to_i64().ok_or(Error::Overflow))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut eng = Engine {
        memo: HashMap::new(),
        stats: LasserreStats::default(),
        prune: cfg.prune_flat,
        budget: cfg.memo_budget,
    };
    let Some(rows) = canonical(d, rows)? else {
        return Ok((BigRational::zero(), eng.stats));
    };
    if d == 0 {
        return Ok((BigRational::one(), eng.stats));
    }
    check_bounded(d, &rows)?;
    let v = eng.volume(d, rows)?;
    Ok((v, eng.stats))
}

type Rows = Vec<Vec<i64>>;

struct Engine {
    // key: dimension followed by the flattened canonical rows
    memo: HashMap<Box<[i64]>, BigRational>,
    stats: LasserreStats,
    prune: bool,
    budget: usize,
}

impl Engine {
    fn volume(&mut self, d: usize, rows: Rows) -> Result<BigRational> {
        if d == 1 {
            return interval_length(&rows);
        }
        let key: Box<[i64]> = std::iter::once(d as i64)
            .chain(rows.iter().flatten().copied())
            .collect();
        if let Some(v) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(v.clone());
        }
        self.stats.subproblems += 1;
        if self.prune && has_implicit_equality(d, &rows) {
            self.stats.pruned += 1;
            self.remember(key, BigRational::zero());
            return Ok(BigRational::zero());
        }
        let mut total = BigRational::zero();
        for (i, ri) in rows.iter().enumerate() {
            let bi = ri[d];
            if bi == 0 {
                continue;
            }
            let j = pivot_column(&ri[..d]);
            let p = i128::from(ri[j].abs());
            let s = i128::from(ri[j].signum());
            let mut slice = Vec::with_capacity(rows.len() - 1);
            for (k, rk) in rows.iter().enumerate() {
                if k == i {
                    continue;
                }
                let f = s * i128::from(rk[j]);
                let out = (0..=d)
                    .filter(|&l| l != j)
                    .map(|l| {
                        let v = p * i128::from(rk[l]) - f * i128::from(ri[l]);
                        i64::try_from(v).map_err(|_| Error::Overflow)
                    })
                    .collect::<Result<Vec<i64>>>()?;
                slice.push(out);
            }
            let Some(slice) = canonical(d - 1, slice)? else {
                continue;
            };
            let sub = self.volume(d - 1, slice)?;
            total += sub * BigRational::new(BigInt::from(bi), BigInt::from(p));
        }
        let v = total / BigInt::from(d);
        self.remember(key, v.clone());
        Ok(v)
    }

    fn remember(&mut self, key: Box<[i64]>, v: BigRational) {
        if key.len() <= self.budget {
            self.budget -= key.len();
            self.memo.insert(key, v);
        }
    }
}

/// Largest coefficient magnitude, lowest index on ties.
fn pivot_column(a: &[i64]) -> usize {
    let mut best = 0;
    for (l, x) in a.iter().enumerate() {
        if x.abs() > a[best].abs() {
            best = l;
        }
    }
    best
}

/// Normalizes rows by their gcd, drops trivial rows, sorts and dedups.
/// `None` when a trivial row is violated (the set is empty).
fn canonical(d: usize, rows: Rows) -> Result<Option<Rows>> {
    let mut out = Vec::with_capacity(rows.len());
    for mut r in rows {
        if r[..d].iter().all(|&x| x == 0) {
            if r[d] < 0 {
                return Ok(None);
            }
            continue;
        }
        let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g > 1 {
            for x in r.iter_mut() {
                *x /= g;
            }
        }
        out.push(r);
    }
    out.sort_unstable();
    out.dedup();
    Ok(Some(out))
}

fn interval_length(rows: &Rows) -> Result<BigRational> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for r in rows {
        let v = BigRational::new(BigInt::from(r[1]), BigInt::from(r[0]));
        if r[0] > 0 {
            hi = Some(match hi {
                Some(h) if h <= v => h,
                _ => v,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l >= v => l,
                _ => v,
            });
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Ok(if h > l { h - l } else { BigRational::zero() }),
        _ => Err(Error::UnboundedPolytope),
    }
}

fn rows_exact(d: usize, rows: &Rows) -> Vec<(Vec<BigRational>, BigRational)> {
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    rows.iter()
        .map(|r| (r[..d].iter().map(|&x| q(x)).collect(), q(r[d])))
        .collect()
}

/// An opposite pair `a.x <= b`, `-a.x <= -b` pins the slice to a hyperplane.
fn has_implicit_equality(d: usize, rows: &Rows) -> bool {
    rows.iter().any(|r| {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        r[d] <= 0 && rows.binary_search(&neg).is_ok()
    })
}

/// Fails with `UnboundedPolytope` when the polytope is nonempty and has a
/// nonzero recession direction.
fn check_bounded(d: usize, rows: &Rows) -> Result<()> {
    let mut boxed = vec![(false, false); d];
    for r in rows {
        let nz: Vec<usize> = (0..d).filter(|&l| r[l] != 0).collect();
        if let [l] = nz[..] {
            if r[l] > 0 {
                boxed[l].0 = true;
            } else {
                boxed[l].1 = true;
            }
        }
    }
    if boxed.iter().all(|&(u, l)| u && l) {
        return Ok(());
    }
    let exact = rows_exact(d, rows);
    let mut feas = Lp::new(vec![BigRational::zero(); d], true);
    for (a, b) in &exact {
        feas.row(a.clone(), Sense::Le, b.clone());
    }
    if feas.solve().status == LpStatus::Infeasible {
        return Ok(());
    }
    for k in 0..d {
        for sign in [1, -1] {
            let mut obj = vec![BigRational::zero(); d];
            obj[k] = BigRational::from_integer(BigInt::from(sign));
            let mut lp = Lp::new(obj.clone(), true);
            for (a, _) in &exact {
                lp.row(a.clone(), Sense::Le, BigRational::zero());
            }
            lp.row(obj, Sense::Le, BigRational::one());
            let r = lp.solve();
            if r.status != LpStatus::Optimal || r.value.is_positive() {
                return Err(Error::UnboundedPolytope);
            }
        }
    }
    Ok(())
}

/// `vol(Cut(C_n)) = 1 - 2^(n-1)/n!` in 0/1 coordinates.
pub fn cycle_volume(n: usize) -> BigRational {
    let n64 = n as u64;
    BigRational::one() - BigRational::new(pow2(n64 - 1), factorial(n64))
}

pub fn formula_volume(tag: &FamilyTag) -> Result<BigRational> {
    match tag.kind() {
        FamilyKind::Forest => Ok(BigRational::one()),
        FamilyKind::Cycle | FamilyKind::Cactus | FamilyKind::Necklace => Ok(tag
            .cycle_lengths()
            .into_iter()
            .map(cycle_volume)
            .fold(BigRational::one(), |acc, v| acc * v)),
        k => Err(Error::UnsupportedFamily(format!(
            "no closed-form volume for {k:?} graphs"
        ))),
    }
}

pub fn formula_exact(tag: &FamilyTag) -> Result<ExactVolume> {
    Ok(ExactVolume {
        value: formula_volume(tag)?,
        method: VolumeMethod::Formula,
        family: Some(tag.clone()),
    })
}

/// `vol(RMet_n) = 2^(n-1) (n-1)! / (2n-2)!`; the segment for `n = 2`.
pub fn rmet_volume(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("RMet_n needs n >= 2, got {n}")));
    }
    let m = (n - 1) as u64;
    Ok(BigRational::new(pow2(m) * factorial(m), factorial(2 * m)))
}

/// Volume of the region of `Met_5` violating one pentagonal inequality.
pub fn pentagonal_cap_volume(pent: &Row) -> Result<BigRational> {
    let met = met_hrep(5)?;
    let mut rows = met.rows().to_vec();
    rows.push(Row::new(pent.a.iter().map(|x| -x).collect(), -pent.b.clone())?);
    lasserre_volume(&HPolytope::new(met.labels().to_vec(), rows)?)
}

/// `vol(Cut_5)` as `vol(Met_5)` minus the 16 pentagonal caps, which have
/// pairwise disjoint interiors.
pub fn cut5_volume() -> Result<BigRational> {
    let met = met_hrep(5)?;
    let own = met.row_set();
    let mut vol = lasserre_volume(&met)?;
    for r in cut_hrep_complete(5)?.rows().iter().filter(|r| !own.contains(*r)) {
        vol -= pentagonal_cap_volume(r)?;
    }
    Ok(vol)
}

/// Counts of alternating permutations `A_0..A_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndreTable {
    pub values: Vec<BigUint>,
}

impl AndreTable {
    pub fn get(&self, k: usize) -> &BigUint {
        &self.values[k]
    }
}

/// Seidel's boustrophedon triangle: each row is the running sum of the
/// previous one read backwards; its last entry is the next André number.
pub fn andre_numbers(k: usize) -> AndreTable {
    let mut values = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 1..=k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::zero());
        for x in row.iter().rev() {
            let s = next.last().expect("nonempty") + x;
            next.push(s);
        }
        values.push(next.last().expect("nonempty").clone());
        row = next;
    }
    AndreTable { values }
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// `vol(Cut(∇G))` for the star, path or cycle `G` on `n` vertices:
///
/// * star: `2^m (m!)^2 / (2m+1)!` with `m = n - 1` leaves,
/// * path: `A_{2n-1} / (2n-1)!`,
/// * cycle: `(n A_{2n-1} - 4^{n-1}) / (2n)!`.
///
/// Each agrees with [`lasserre_volume`] on the corresponding book, fan or
/// wheel for small `n`.
pub fn suspension_volume(kind: SuspensionKind, n: usize) -> Result<BigRational> {
    kind.base(n)?;
    let n64 = n as u64;
    Ok(match kind {
        SuspensionKind::Star => {
            let m = n64 - 1;
            let f = factorial(m);
            ratio(pow2(m) * &f * &f, factorial(2 * m + 1))
        }
        SuspensionKind::Path => {
            let a = andre_numbers(2 * n - 1);
            ratio(a.get(2 * n - 1).clone().into(), factorial(2 * n64 - 1))
        }
        SuspensionKind::Cycle => {
            let a = andre_numbers(2 * n - 1);
            let num = BigInt::from(n64) * BigInt::from(a.get(2 * n - 1).clone()) - pow2(2 * n64 - 2);
            ratio(num, factorial(2 * n64))
        }
    })
}

/// The published closed forms evaluated verbatim at `n`:
/// `n! 2^n / (2n+1)!`, `A_{2n+1} / (2n+1)!` and
/// `(n A_{2n+1} - 2^{n-2}) / (2n)!`. These do not match the volumes of
/// the suspensions under any single reading of `n`; see
/// [`suspension_volume`].
pub fn suspension_volume_printed(kind: SuspensionKind, n: usize) -> Result<BigRational> {
    let min = if kind == SuspensionKind::Cycle { 2 } else { 1 };
    if n < min {
        return Err(Error::InvalidArgument(format!("formula needs n >= {min}, got {n}")));
    }
    let n64 = n as u64;
    let a = andre_numbers(2 * n + 1);
    let a_top = BigInt::from(a.get(2 * n + 1).clone());
    Ok(match kind {
        SuspensionKind::Star => ratio(factorial(n64) * pow2(n64), factorial(2 * n64 + 1)),
        SuspensionKind::Path => ratio(a_top, factorial(2 * n64 + 1)),
        SuspensionKind::Cycle => ratio(BigInt::from(n64) * a_top - pow2(n64 - 2), factorial(2 * n64)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{classify, make_cactus, make_cycle, make_necklace, make_path};
    use crate::polytope::{cube, cut_hrep_sparse, met_hrep, rmet_hrep, Row};
    use crate::rational::{int, rat};

    #[test]
    fn cube_and_simplex() {
        assert_eq!(lasserre_volume(&cube(3)).unwrap(), int(1));
        assert_eq!(lasserre_volume(&cube(1)).unwrap(), int(1));
        // x, y >= 0, x + y <= 1 scaled by 3
        let h = HPolytope::new(
            crate::polytope::index_labels(2),
            [
                Row::from_i64(&[-1, 0], 0).unwrap(),
                Row::from_i64(&[0, -1], 0).unwrap(),
                Row::from_i64(&[1, 1], 3).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(lasserre_volume(&h).unwrap(), rat(9, 2));
    }

    #[test]
    fn small_metric_polytopes() {
        assert_eq!(lasserre_volume(&met_hrep(3).unwrap()).unwrap(), rat(1, 3));
        assert_eq!(lasserre_volume(&met_hrep(4).unwrap()).unwrap(), rat(2, 45));
        assert_eq!(lasserre_volume(&rmet_hrep(4).unwrap()).unwrap(), rat(1, 15));
    }

    #[test]
    fn pentagonal_cap() {
        let own = met_hrep(5).unwrap().row_set();
        let cut5 = crate::polytope::cut_hrep_complete(5).unwrap();
        let pent = cut5.rows().iter().find(|r| !own.contains(*r)).unwrap();
        let cap = pentagonal_cap_volume(pent).unwrap();
        assert_eq!(cap, rat(1, 170100));
        assert_eq!(rat(4, 1701) - cap * int(16), rat(32, 14175));
    }

    #[test]
    fn unbounded_and_empty() {
        let labels = crate::polytope::index_labels(2);
        let quadrant = HPolytope::new(
            labels.clone(),
            [Row::from_i64(&[-1, 0], 0).unwrap(), Row::from_i64(&[0, -1], 0).unwrap()],
        )
        .unwrap();
        assert!(matches!(lasserre_volume(&quadrant), Err(Error::UnboundedPolytope)));
        let empty = HPolytope::new(
            labels,
            [
                Row::from_i64(&[1, 0], -1).unwrap(),
                Row::from_i64(&[-1, 0], 0).unwrap(),
                Row::from_i64(&[0, 1], 1).unwrap(),
                Row::from_i64(&[0, -1], 0).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(lasserre_volume(&empty).unwrap(), int(0));
    }

    #[test]
    fn pruning_does_not_change_values() {
        let off = LasserreConfig {
            prune_flat: false,
            ..LasserreConfig::default()
        };
        for h in [met_hrep(4).unwrap(), cut_hrep_sparse(&make_cycle(5).unwrap()).unwrap()] {
            let (a, _) = lasserre_volume_with(&h, &off).unwrap();
            let (b, _) = lasserre_volume_with(&h, &LasserreConfig::default()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn hard_limit() {
        let cfg = LasserreConfig {
            hard_dim: 4,
            ..LasserreConfig::default()
        };
        assert!(matches!(
            lasserre_volume_with(&cube(5), &cfg),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn suspensions_match_engine() {
        use crate::polytope::cut_hrep_suspension;
        let cases = [
            (SuspensionKind::Star, 2..=5),
            (SuspensionKind::Path, 2..=5),
            (SuspensionKind::Cycle, 3..=4),
        ];
        for (kind, range) in cases {
            for n in range {
                let h = cut_hrep_suspension(kind, n).unwrap();
                let v = lasserre_volume(&h).unwrap();
                assert_eq!(suspension_volume(kind, n).unwrap(), v, "{kind:?} {n}");
            }
        }
        // the wheel on C_3 is K_4
        assert_eq!(suspension_volume(SuspensionKind::Cycle, 3).unwrap(), rat(2, 45));
        assert_eq!(suspension_volume(SuspensionKind::Star, 2).unwrap(), rat(1, 3));
        assert!(suspension_volume(SuspensionKind::Cycle, 2).is_err());
    }

    #[test]
    fn printed_suspension_forms() {
        let star = suspension_volume_printed(SuspensionKind::Star, 2).unwrap();
        assert_eq!(star, rat(1, 15));
        let path = suspension_volume_printed(SuspensionKind::Path, 2).unwrap();
        assert_eq!(path, rat(16, 120));
        let cyc = suspension_volume_printed(SuspensionKind::Cycle, 3).unwrap();
        assert_eq!(cyc, rat(3 * 272 - 2, 720));
        assert!(cyc > int(1));
    }

    #[test]
    fn cycles_match_formula() {
        for n in 3..=6 {
            let g = make_cycle(n).unwrap();
            let v = lasserre_volume(&cut_hrep_sparse(&g).unwrap()).unwrap();
            assert_eq!(v, cycle_volume(n), "C_{n}");
            assert_eq!(formula_volume(&classify(&g)).unwrap(), v);
        }
        assert_eq!(cycle_volume(4), rat(2, 3));
    }

    #[test]
    fn cactus_and_necklace_match_engine() {
        let bowtie = make_cactus(&[3, 3], 0).unwrap();
        let v = lasserre_volume(&cut_hrep_sparse(&bowtie).unwrap()).unwrap();
        assert_eq!(v, rat(1, 9));
        assert_eq!(formula_volume(&classify(&bowtie)).unwrap(), v);

        let g = make_cactus(&[4, 3], 2).unwrap();
        let v = lasserre_volume(&cut_hrep_sparse(&g).unwrap()).unwrap();
        assert_eq!(formula_volume(&classify(&g)).unwrap(), v);

        let neck = make_necklace(3, &[3, 3, 3]).unwrap();
        assert_eq!(
            formula_volume(&classify(&neck)).unwrap(),
            rat(1, 3).pow(4)
        );
    }

    #[test]
    fn forests_have_unit_volume() {
        assert_eq!(formula_volume(&classify(&make_path(5).unwrap())).unwrap(), int(1));
        let v = lasserre_volume(&cut_hrep_sparse(&make_path(4).unwrap()).unwrap()).unwrap();
        assert_eq!(v, int(1));
        assert!(formula_volume(&FamilyTag::Complete { n: 5 }).is_err());
        assert!(formula_volume(&FamilyTag::Other).is_err());
    }

    #[test]
    fn rooted_metric_formula() {
        assert_eq!(rmet_volume(2).unwrap(), int(1));
        assert_eq!(rmet_volume(3).unwrap(), rat(1, 3));
        assert_eq!(rmet_volume(4).unwrap(), rat(1, 15));
        assert_eq!(rmet_volume(5).unwrap(), rat(1, 105));
        for n in 3..=30 {
            let ratio = rmet_volume(n + 1).unwrap() / rmet_volume(n).unwrap();
            assert_eq!(ratio, rat(1, 2 * n as i64 - 1));
        }
        assert_eq!(lasserre_volume(&rmet_hrep(3).unwrap()).unwrap(), rat(1, 3));
    }

    fn alternating_count(n: usize) -> u64 {
        fn go(used: &mut Vec<bool>, last: usize, up: bool, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            let mut c = 0;
            for v in 0..used.len() {
                if !used[v] && (v > last) == up {
                    used[v] = true;
                    c += go(used, v, !up, left - 1);
                    used[v] = false;
                }
            }
            c
        }
        if n < 2 {
            return 1;
        }
        let mut used = vec![false; n];
        let mut c = 0;
        for first in 0..n {
            used[first] = true;
            c += go(&mut used, first, true, n - 1);
            used[first] = false;
        }
        c
    }

    #[test]
    fn andre_counts_down_up_permutations() {
        let t = andre_numbers(9);
        for n in 0..=9 {
            assert_eq!(t.get(n), &BigUint::from(alternating_count(n)), "A_{n}");
        }
    }

    #[test]
    fn andre_small_values() {
        let t = andre_numbers(10);
        let expect: [u64; 11] = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(t.get(k), &BigUint::from(*e), "A_{k}");
        }
    }
}
