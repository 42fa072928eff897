//! Time scales as finite unions of closed intervals, with the Δ-calculus
//! primitives built on top of them.
//!
//! A [`TimeScale`] is stored as sorted, pairwise disjoint closed segments
//! `[l_k, r_k]`. A degenerate segment `l_k = r_k` is an isolated point. The
//! right endpoint of every segment except the last one is right-scattered,
//! with forward jump `σ(r_k) = l_{k+1}`; every other point is right-dense.
//! The maximum of the window is right-dense by convention (`σ(max T) = max T`).
//!
//! Δ-integrals split into a dense part (composite Gauss–Legendre on a subdivision no
//! coarser than `dense_step`) and a scattered part `Σ μ(τ) f(τ)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default subdivision width for dense stretches.
pub const DEFAULT_DENSE_STEP: f64 = 1e-3;

/// Absolute/relative slack used when matching a query time to a segment end.
const SNAP_TOL: f64 = 1e-9;

fn snap_tol(t: f64) -> f64 {
    SNAP_TOL * t.abs().max(1.0)
}

/// Closed subset of the reals truncated to a working window.
#[derive(Clone, PartialEq, Serialize)]
pub struct TimeScale {
    segments: Vec<[f64; 2]>,
    window_end: f64,
}

#[derive(Deserialize)]
struct RawTimeScale {
    segments: Vec<[f64; 2]>,
    window_end: Option<f64>,
}

impl<'de> Deserialize<'de> for TimeScale {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = RawTimeScale::deserialize(deserializer)?;
        let end = raw
            .window_end
            .or_else(|| raw.segments.last().map(|s| s[1]))
            .unwrap_or(0.0);
        TimeScale::from_segments(raw.segments, end).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for TimeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.segments.len();
        if n <= 6 {
            write!(f, "TimeScale({:?}, end={})", self.segments, self.window_end)
        } else {
            write!(
                f,
                "TimeScale({} segments from {:?} to {:?}, end={})",
                n,
                self.segments[0],
                self.segments[n - 1],
                self.window_end
            )
        }
    }
}

/// Right-dense / right-scattered classification of a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrainClass {
    pub tag: GrainTag,
    pub mu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrainTag {
    RightDense,
    RightScattered,
}

impl GrainClass {
    pub fn is_scattered(&self) -> bool {
        self.tag == GrainTag::RightScattered
    }
}

/// Where a query time sits inside the time scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Location {
    /// Segment index.
    pub segment: usize,
    /// The query time, snapped to a segment end when within tolerance.
    pub t: f64,
    /// True when `t` is the right end of a segment that has a successor.
    pub scattered: bool,
}

impl TimeScale {
    /// Builds a time scale from explicit segments.
    pub fn from_segments(segments: Vec<[f64; 2]>, window_end: f64) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidSpec("time scale has no segments".into()));
        }
        for (k, s) in segments.iter().enumerate() {
            if !s[0].is_finite() || !s[1].is_finite() {
                return Err(Error::InvalidSpec(format!("segment {k} is not finite")));
            }
            if s[0] > s[1] {
                return Err(Error::InvalidSpec(format!(
                    "segment {k} has left end {} > right end {}",
                    s[0], s[1]
                )));
            }
            if k > 0 && segments[k - 1][1] >= s[0] {
                return Err(Error::InvalidSpec(format!(
                    "segments {} and {k} overlap or touch",
                    k - 1
                )));
            }
        }
        let last = segments[segments.len() - 1][1];
        if !(window_end >= last) {
            return Err(Error::InvalidSpec(format!(
                "window_end {window_end} precedes the last point {last}"
            )));
        }
        Ok(TimeScale {
            segments,
            window_end,
        })
    }

    /// `[start, end]` ⊂ R.
    pub fn interval(start: f64, end: f64) -> Result<Self> {
        TimeScale::from_segments(vec![[start, end]], end)
    }

    pub fn segments(&self) -> &[[f64; 2]] {
        &self.segments
    }

    pub fn window_end(&self) -> f64 {
        self.window_end
    }

    pub fn start(&self) -> f64 {
        self.segments[0][0]
    }

    /// Largest point of the time scale.
    pub fn end(&self) -> f64 {
        self.segments[self.segments.len() - 1][1]
    }

    /// Locates `t`, snapping to segment ends within a small tolerance.
    pub fn locate(&self, t: f64) -> Result<Location> {
        if !t.is_finite() {
            return Err(Error::Domain { t });
        }
        let tol = snap_tol(t);
        // first segment whose right end is >= t - tol
        let k = self.segments.partition_point(|s| s[1] < t - tol);
        let Some(seg) = self.segments.get(k) else {
            return Err(Error::Domain { t });
        };
        if t < seg[0] - tol {
            return Err(Error::Domain { t });
        }
        let has_next = k + 1 < self.segments.len();
        let (t, at_right) = if (t - seg[1]).abs() <= tol {
            (seg[1], true)
        } else if (t - seg[0]).abs() <= tol {
            (seg[0], false)
        } else {
            (t, false)
        };
        Ok(Location {
            segment: k,
            t,
            scattered: at_right && has_next,
        })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_ok()
    }

    /// Forward jump operator σ(t).
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let loc = self.locate(t)?;
        Ok(if loc.scattered {
            self.segments[loc.segment + 1][0]
        } else {
            loc.t
        })
    }

    /// Graininess μ(t) = σ(t) − t with its classification.
    pub fn mu(&self, t: f64) -> Result<GrainClass> {
        let loc = self.locate(t)?;
        Ok(if loc.scattered {
            GrainClass {
                tag: GrainTag::RightScattered,
                mu: self.segments[loc.segment + 1][0] - loc.t,
            }
        } else {
            GrainClass {
                tag: GrainTag::RightDense,
                mu: 0.0,
            }
        })
    }

    /// Graininess value only.
    pub fn graininess(&self, t: f64) -> Result<f64> {
        self.mu(t).map(|g| g.mu)
    }

    /// Right-scattered points with their graininess, in increasing order.
    pub fn scattered_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.segments
            .windows(2)
            .map(|w| (w[0][1], w[1][0] - w[0][1]))
    }

    /// Supremum of the graininess over the window.
    pub fn mu_max(&self) -> f64 {
        self.scattered_points().map(|(_, mu)| mu).fold(0.0, f64::max)
    }

    /// Distinct graininess values (to 1e-12), always including 0.
    pub fn distinct_mu(&self) -> Vec<f64> {
        let mut v: Vec<f64> = std::iter::once(0.0)
            .chain(self.scattered_points().map(|(_, mu)| mu))
            .collect();
        v.sort_by(|a, b| a.total_cmp(b));
        v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        v
    }

    /// True when the time scale has a dense segment.
    pub fn has_dense_part(&self) -> bool {
        self.segments.iter().any(|s| s[1] > s[0])
    }

    fn check_range(&self, a: f64, b: f64) -> Result<(Location, Location)> {
        let la = self.locate(a)?;
        let lb = self.locate(b)?;
        if la.t > lb.t {
            return Err(Error::InvalidParameter(format!(
                "integration bounds out of order: {a} > {b}"
            )));
        }
        Ok((la, lb))
    }

    /// Splits `[a, b)` into dense sub-intervals and scattered points.
    ///
    /// Dense pieces are returned as `(lo, hi)` with `lo < hi`; scattered points
    /// as `(τ, μ(τ))`. Pieces are visited in time order.
    pub fn pieces(&self, a: f64, b: f64) -> Result<Vec<Piece>> {
        let (la, lb) = self.check_range(a, b)?;
        let (a, b) = (la.t, lb.t);
        let mut out = Vec::new();
        for k in la.segment..=lb.segment {
            let [l, r] = self.segments[k];
            let lo = l.max(a);
            let hi = r.min(b);
            if hi > lo {
                out.push(Piece::Dense { lo, hi });
            }
            // r is right-scattered when a successor exists; it counts if a <= r < b
            if k + 1 < self.segments.len() && r >= a && r < b {
                out.push(Piece::Scattered {
                    t: r,
                    mu: self.segments[k + 1][0] - r,
                });
            }
        }
        Ok(out)
    }

    /// Lebesgue-Δ measure of the dense and scattered parts of `[t0, t)`.
    pub fn measure_split(&self, t0: f64, t: f64) -> Result<(f64, f64)> {
        let mut dense = 0.0;
        let mut scattered = 0.0;
        for p in self.pieces(t0, t)? {
            match p {
                Piece::Dense { lo, hi } => dense += hi - lo,
                Piece::Scattered { mu, .. } => scattered += mu,
            }
        }
        Ok((dense, scattered))
    }

    /// Δ-integral `∫_a^b f(τ) Δτ` with the default dense step.
    pub fn delta_integral<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        self.delta_integral_with_step(f, a, b, DEFAULT_DENSE_STEP)
    }

    /// Δ-integral with an explicit dense subdivision width.
    pub fn delta_integral_with_step<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        dense_step: f64,
    ) -> Result<f64> {
        if !(dense_step > 0.0) {
            return Err(Error::InvalidParameter("dense_step must be positive".into()));
        }
        let mut total = 0.0;
        for p in self.pieces(a, b)? {
            total += match p {
                Piece::Dense { lo, hi } => gauss_legendre(&f, lo, hi, dense_step),
                Piece::Scattered { t, mu } => mu * f(t),
            };
        }
        Ok(total)
    }

    /// Time-scale exponential `e_p(t, s)` for `s <= t`.
    ///
    /// The scattered factors `1 + μ(τ)p(τ)` are multiplied directly, so the
    /// sign of a negative factor is carried exactly and a zero factor
    /// (non-regressive point) makes the result exactly 0.
    pub fn exponential<F: Fn(f64) -> f64>(&self, p: F, t: f64, s: f64) -> Result<f64> {
        self.exponential_with_step(p, t, s, DEFAULT_DENSE_STEP)
    }

    pub fn exponential_with_step<F: Fn(f64) -> f64>(
        &self,
        p: F,
        t: f64,
        s: f64,
        dense_step: f64,
    ) -> Result<f64> {
        let mut log_dense = 0.0;
        let mut product = 1.0;
        for piece in self.pieces(s, t)? {
            match piece {
                Piece::Dense { lo, hi } => log_dense += gauss_legendre(&p, lo, hi, dense_step),
                Piece::Scattered { t, mu } => {
                    let factor = 1.0 + mu * p(t);
                    if factor == 0.0 {
                        return Ok(0.0);
                    }
                    product *= factor;
                }
            }
        }
        Ok(log_dense.exp() * product)
    }

    /// Exponential of a constant coefficient, `e_c(t, s) = exp(c λ_d) Π (1 + μ c)`.
    pub fn exponential_constant(&self, c: f64, t: f64, s: f64) -> Result<f64> {
        let mut dense = 0.0;
        let mut product = 1.0;
        for piece in self.pieces(s, t)? {
            match piece {
                Piece::Dense { lo, hi } => dense += hi - lo,
                Piece::Scattered { mu, .. } => product *= 1.0 + mu * c,
            }
        }
        Ok((c * dense).exp() * product)
    }

    /// Sampling grid over `[t0, t_end]`.
    pub fn grid(&self, t0: f64, t_end: f64, dense_step: f64) -> Result<Grid> {
        Grid::new(self, t0, t_end, dense_step)
    }

    /// Largest point of the time scale not exceeding `t`.
    pub fn floor_point(&self, t: f64) -> Option<f64> {
        let tol = snap_tol(t);
        let k = self.segments.partition_point(|s| s[0] <= t + tol);
        if k == 0 {
            return None;
        }
        let [l, r] = self.segments[k - 1];
        Some(if t >= r - tol { r } else { t.max(l) })
    }
}

/// A piece of `[a, b)` in the decomposition used for Δ-integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Dense { lo: f64, hi: f64 },
    Scattered { t: f64, mu: f64 },
}

/// Composite 3-point Gauss–Legendre rule on panels no wider than `step`.
///
/// The rule is open: `f` is never evaluated at `lo` or `hi`, so an
/// rd-continuous integrand that jumps at a right-scattered endpoint is
/// integrated through its left limit.
pub fn gauss_legendre<F: Fn(f64) -> f64 + ?Sized>(f: &F, lo: f64, hi: f64, step: f64) -> f64 {
    let len = hi - lo;
    if len <= 0.0 {
        return 0.0;
    }
    let n = (len / step).ceil().max(1.0) as usize;
    let h = len / n as f64;
    let node = 0.5 * (0.6f64).sqrt();
    let (w_mid, w_side) = (8.0 / 18.0, 5.0 / 18.0);
    let mut acc = 0.0;
    for i in 0..n {
        let c = lo + (i as f64 + 0.5) * h;
        acc += w_mid * f(c) + w_side * (f(c - node * h) + f(c + node * h));
    }
    acc * h
}

/// Ordered sample times in a time scale.
///
/// Dense stretches are subdivided uniformly with spacing at most
/// `dense_step`; every right-scattered point appears together with σ(t).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub times: Vec<f64>,
    pub dense_step: f64,
}

impl Grid {
    pub fn new(ts: &TimeScale, t0: f64, t_end: f64, dense_step: f64) -> Result<Self> {
        if !(dense_step > 0.0) {
            return Err(Error::InvalidParameter("dense_step must be positive".into()));
        }
        let mut times = Vec::new();
        let pieces = ts.pieces(t0, t_end)?;
        let start = ts.locate(t0)?.t;
        let end = ts.locate(t_end)?.t;
        times.push(start);
        for p in pieces {
            match p {
                Piece::Dense { lo, hi } => {
                    let n = ((hi - lo) / dense_step).ceil().max(1.0) as usize;
                    let h = (hi - lo) / n as f64;
                    for i in 1..n {
                        times.push(lo + i as f64 * h);
                    }
                    times.push(hi);
                }
                Piece::Scattered { t, mu } => {
                    let _ = t;
                    let next = ts.sigma(t)?;
                    debug_assert!((next - t - mu).abs() <= 1e-12 * next.abs().max(1.0));
                    times.push(next);
                }
            }
        }
        times.dedup();
        debug_assert_eq!(*times.last().unwrap(), end);
        Ok(Grid { times, dense_step })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Generator description for the time scales used throughout the crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TimeScaleSpec {
    /// `[start, end]` ⊂ R.
    RealInterval { start: f64, end: f64 },
    /// `hZ ∩ [start, window_end]`.
    HZ {
        h: f64,
        #[serde(default)]
        start: f64,
        window_end: f64,
    },
    /// `∪_k [k(a+b), k(a+b)+a]`: dense stretches of length a, jumps of length b.
    #[serde(rename = "p_ab")]
    PAB { a: f64, b: f64, window_end: f64 },
    /// Dense stretches of length c alternating with jumps of length h.
    Alternating { c: f64, h: f64, window_end: f64 },
    /// Seeded random dense stretches `[t_{σ_k}, t_{k+1}]` separated by gaps
    /// `μ ∈ (gap_min, gap_max] ⊂ (0, mu_max]`.
    ///
    /// A zero `length_range` produces a purely discrete time scale.
    Nonhomogeneous {
        length_range: [f64; 2],
        gap_range: [f64; 2],
        mu_max: f64,
        seed: u64,
        window_end: f64,
    },
    /// Explicit segment list.
    Explicit {
        segments: Vec<[f64; 2]>,
        window_end: f64,
    },
}

impl TimeScaleSpec {
    /// Builds the truncated time scale.
    pub fn build(&self) -> Result<TimeScale> {
        make_timescale(self)
    }

    /// Replaces the seed of a random generator.
    pub fn with_seed(mut self, new_seed: u64) -> Self {
        if let TimeScaleSpec::Nonhomogeneous { seed, .. } = &mut self {
            *seed = new_seed;
        }
        self
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be positive, got {v}")))
    }
}

fn periodic(a: f64, b: f64, window_end: f64) -> Result<TimeScale> {
    require_positive("dense length", a)?;
    require_positive("jump length", b)?;
    require_positive("window_end", window_end)?;
    let period = a + b;
    let mut segments = Vec::new();
    let mut k = 0u64;
    loop {
        let l = k as f64 * period;
        if l > window_end + snap_tol(window_end) {
            break;
        }
        let r = (l + a).min(window_end).max(l);
        segments.push([l, r]);
        k += 1;
    }
    TimeScale::from_segments(segments, window_end)
}

/// Builds a time scale from a generator description.
pub fn make_timescale(spec: &TimeScaleSpec) -> Result<TimeScale> {
    match spec {
        TimeScaleSpec::RealInterval { start, end } => {
            if !(end > start) {
                return Err(Error::InvalidSpec(format!(
                    "interval end {end} must exceed start {start}"
                )));
            }
            TimeScale::interval(*start, *end)
        }
        TimeScaleSpec::HZ {
            h,
            start,
            window_end,
        } => {
            require_positive("h", *h)?;
            if window_end < start {
                return Err(Error::InvalidSpec("window_end precedes start".into()));
            }
            let n = ((window_end - start) / h + 1e-9).floor() as u64;
            let segments = (0..=n)
                .map(|k| {
                    let t = start + k as f64 * h;
                    [t, t]
                })
                .collect();
            TimeScale::from_segments(segments, *window_end)
        }
        TimeScaleSpec::PAB { a, b, window_end } => periodic(*a, *b, *window_end),
        TimeScaleSpec::Alternating { c, h, window_end } => periodic(*c, *h, *window_end),
        TimeScaleSpec::Nonhomogeneous {
            length_range,
            gap_range,
            mu_max,
            seed,
            window_end,
        } => {
            let [lmin, lmax] = *length_range;
            let [gmin, gmax] = *gap_range;
            require_positive("window_end", *window_end)?;
            require_positive("mu_max", *mu_max)?;
            if !(lmin >= 0.0 && lmax >= lmin) {
                return Err(Error::InvalidSpec(format!(
                    "bad length range [{lmin}, {lmax}]"
                )));
            }
            if !(gmin >= 0.0 && gmax > gmin && gmax <= *mu_max) {
                return Err(Error::InvalidSpec(format!(
                    "gap range ({gmin}, {gmax}] must be nonempty and within (0, mu_max = {mu_max}]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut segments = Vec::new();
            let mut l = 0.0f64;
            while l <= *window_end {
                let len = if lmax > lmin {
                    rng.gen_range(lmin..=lmax)
                } else {
                    lmin
                };
                let r = (l + len).min(*window_end);
                segments.push([l, r]);
                // gap in (gmin, gmax]
                let u: f64 = rng.gen();
                let gap = gmax - (gmax - gmin) * u;
                l = r + gap;
                if r >= *window_end {
                    break;
                }
            }
            TimeScale::from_segments(segments, *window_end)
        }
        TimeScaleSpec::Explicit {
            segments,
            window_end,
        } => TimeScale::from_segments(segments.clone(), *window_end),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pab(a: f64, b: f64, end: f64) -> TimeScale {
        make_timescale(&TimeScaleSpec::PAB {
            a,
            b,
            window_end: end,
        })
        .unwrap()
    }

    fn hz(h: f64, end: f64) -> TimeScale {
        make_timescale(&TimeScaleSpec::HZ {
            h,
            start: 0.0,
            window_end: end,
        })
        .unwrap()
    }

    #[test]
    fn sigma_examples() {
        let p = pab(1.0, 0.24, 10.0);
        assert_eq!(p.sigma(0.5).unwrap(), 0.5);
        assert!((p.sigma(1.0).unwrap() - 1.24).abs() < 1e-15);
        let z = hz(1.0, 10.0);
        assert_eq!(z.sigma(3.0).unwrap(), 4.0);
        // last point of the window
        assert_eq!(z.sigma(10.0).unwrap(), 10.0);
    }

    #[test]
    fn mu_examples() {
        let p = pab(1.0, 0.24, 10.0);
        let g = p.mu(1.0).unwrap();
        assert_eq!(g.tag, GrainTag::RightScattered);
        assert!((g.mu - 0.24).abs() < 1e-15);
        assert_eq!(
            p.mu(0.3).unwrap(),
            GrainClass {
                tag: GrainTag::RightDense,
                mu: 0.0
            }
        );
        let z = hz(0.5, 5.0);
        for k in 0..10 {
            let g = z.mu(k as f64 * 0.5).unwrap();
            assert_eq!(g.tag, GrainTag::RightScattered);
            assert!((g.mu - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        let p = pab(1.0, 0.24, 10.0);
        assert_eq!(p.sigma(1.1), Err(Error::Domain { t: 1.1 }));
        assert!(p.mu(-1.0).is_err());
        assert!(p.mu(11.0).is_err());
        assert!(p.delta_integral(|t| t, 0.0, 1.1).is_err());
    }

    #[test]
    fn delta_integral_examples() {
        let r = TimeScale::interval(0.0, 1.0).unwrap();
        assert!((r.delta_integral(|t| t, 0.0, 1.0).unwrap() - 0.5).abs() < 1e-14);
        let z = hz(1.0, 10.0);
        assert_eq!(z.delta_integral(|t| t, 0.0, 3.0).unwrap(), 3.0);
        // one unit of dense length plus one jump of length 1 at t = 1
        let p11 = pab(1.0, 1.0, 10.0);
        assert!((p11.delta_integral(|_| 1.0, 0.0, 2.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_examples() {
        let r = TimeScale::interval(0.0, 5.0).unwrap();
        let e = r.exponential(|_| -1.0, 2.0, 0.0).unwrap();
        assert!((e - (-2.0f64).exp()).abs() < 1e-12);
        let z = hz(1.0, 10.0);
        assert_eq!(z.exponential(|_| 1.0, 3.0, 0.0).unwrap(), 8.0);
        assert_eq!(z.exponential(|_| -1.0, 1.0, 0.0).unwrap(), 0.0);
        // negative factor keeps its sign: (1 - 3)^3
        assert_eq!(z.exponential(|_| -3.0, 3.0, 0.0).unwrap(), -8.0);
    }

    #[test]
    fn measure_split_examples() {
        let p = pab(1.0, 0.24, 10.0);
        let (d, s) = p.measure_split(0.0, 2.48).unwrap();
        assert!((d - 2.0).abs() < 1e-12 && (s - 0.48).abs() < 1e-12);
        let r = TimeScale::interval(0.0, 5.0).unwrap();
        assert_eq!(r.measure_split(0.0, 5.0).unwrap(), (5.0, 0.0));
        let z = hz(1.0, 10.0);
        assert_eq!(z.measure_split(0.0, 4.0).unwrap(), (0.0, 4.0));
    }

    #[test]
    fn generator_examples() {
        let p = pab(1.0, 0.24, 10.0);
        assert_eq!(p.segments()[0], [0.0, 1.0]);
        assert!((p.segments()[1][0] - 1.24).abs() < 1e-15);
        assert!((p.segments()[1][1] - 2.24).abs() < 1e-15);

        let h = 2.0 / 7.0;
        let alt = make_timescale(&TimeScaleSpec::Alternating {
            c: 1.0,
            h,
            window_end: 5.0,
        })
        .unwrap();
        assert_eq!(alt.segments()[0], [0.0, 1.0]);
        assert!((alt.segments()[1][0] - (1.0 + h)).abs() < 1e-15);
        assert!((alt.segments()[1][1] - (2.0 + h)).abs() < 1e-15);

        let z = hz(0.5, 2.0);
        let pts: Vec<f64> = z.segments().iter().map(|s| s[0]).collect();
        assert_eq!(pts, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn generator_rejects_bad_specs() {
        assert!(make_timescale(&TimeScaleSpec::PAB {
            a: 0.0,
            b: 1.0,
            window_end: 3.0
        })
        .is_err());
        assert!(make_timescale(&TimeScaleSpec::HZ {
            h: -1.0,
            start: 0.0,
            window_end: 3.0
        })
        .is_err());
        assert!(TimeScale::from_segments(vec![[0.0, 2.0], [1.0, 3.0]], 3.0).is_err());
        assert!(TimeScale::from_segments(vec![[0.0, 2.0], [2.0, 3.0]], 3.0).is_err());
        assert!(make_timescale(&TimeScaleSpec::Nonhomogeneous {
            length_range: [0.5, 1.0],
            gap_range: [0.0, 0.5],
            mu_max: 0.25,
            seed: 1,
            window_end: 10.0
        })
        .is_err());
    }

    #[test]
    fn nonhomogeneous_is_seeded_and_bounded() {
        let spec = TimeScaleSpec::Nonhomogeneous {
            length_range: [0.2, 1.0],
            gap_range: [0.0, 0.25],
            mu_max: 0.25,
            seed: 42,
            window_end: 20.0,
        };
        let a = spec.build().unwrap();
        let b = spec.build().unwrap();
        assert_eq!(a, b);
        assert!(a.mu_max() <= 0.25);
        assert!(a.scattered_points().all(|(_, mu)| mu > 0.0));
        let c = spec.clone().with_seed(43).build().unwrap();
        assert_ne!(a, c);
        assert_eq!(a.end(), 20.0);
    }

    #[test]
    fn grid_hits_every_jump() {
        let p = pab(1.0, 0.24, 5.0);
        let g = p.grid(0.0, 5.0, 0.1).unwrap();
        for w in g.times.windows(2) {
            assert!(w[1] > w[0]);
            let (t, next) = (w[0], w[1]);
            let gc = p.mu(t).unwrap();
            if gc.is_scattered() {
                assert_eq!(next, p.sigma(t).unwrap());
            } else {
                assert!(next - t <= 0.1 + 1e-12);
            }
        }
        assert_eq!(*g.times.last().unwrap(), 5.0);
    }

    #[test]
    fn json_round_trip() {
        let p = pab(1.0, 0.24, 3.0);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"segments\":[[0.0,1.0]"));
        let back: TimeScale = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"segments": [[0, 2], [1, 3]], "window_end": 3}"#;
        assert!(serde_json::from_str::<TimeScale>(bad).is_err());

        let spec: TimeScaleSpec =
            serde_json::from_str(r#"{"kind":"p_ab","a":1,"b":0.24,"window_end":10}"#).unwrap();
        assert_eq!(
            spec,
            TimeScaleSpec::PAB {
                a: 1.0,
                b: 0.24,
                window_end: 10.0
            }
        );
    }
}
