//! Random-pair push–pull embedding of groups in the plane.
//!
//! Each step picks two distinct groups uniformly at random and moves both
//! points along their difference vector by `α·(eucl − target)` times that
//! vector: too-far pairs are pulled together, too-close pairs pushed apart.
//! Both moves read the pre-update coordinates, so the pair's centroid is
//! preserved.

use alloc::vec::Vec;
use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distance::{group_dist, DistanceError};
use crate::lattice::Lattice;
use crate::pregroup::Grouping;

const INIT_STREAM: u64 = 0;
const PAIR_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn dist(self, other: Point) -> f64 {
        let (dx, dy) = (self.x - other.x, self.y - other.y);
        libm::sqrt(dx * dx + dy * dy)
    }
}

/// Group coordinates plus the settings that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    /// One point per group, indexed like `Grouping::groups`.
    pub points: Vec<Point>,
    pub alpha: f64,
    /// Iterations applied so far.
    pub iterations: u64,
    pub seed: u64,
    pub maxdist: f64,
}

impl EmbeddingModel {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn eucl(&self, a: usize, b: usize) -> f64 {
        self.points[a].dist(self.points[b])
    }

    pub fn centroid(&self) -> Point {
        let n = self.points.len() as f64;
        let (sx, sy) = self.points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point { x: sx / n, y: sy / n }
    }
}

/// Target distances between groups.
pub trait TargetDistances {
    fn len(&self) -> usize;
    fn target(&self, a: usize, b: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dense symmetric matrix of target distances (upper triangle stored).
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                values.push(f(a, b));
            }
        }
        DistanceMatrix { n, values }
    }

    /// Group distances between representatives; one counted intersection
    /// query per group pair.
    pub fn from_groups(lattice: &Lattice, grouping: &Grouping) -> Result<Self, DistanceError> {
        let groups = &grouping.groups;
        let mut values = Vec::with_capacity(groups.len() * groups.len().saturating_sub(1) / 2);
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                values.push(group_dist(lattice, &groups[a], &groups[b])?.to_f64());
            }
        }
        Ok(DistanceMatrix { n: groups.len(), values })
    }

    fn slot(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }
}

impl TargetDistances for DistanceMatrix {
    fn len(&self) -> usize {
        self.n
    }

    fn target(&self, a: usize, b: usize) -> f64 {
        if a == b {
            0.0
        } else {
            self.values[self.slot(a, b)]
        }
    }
}

/// Group distances fetched from the occurrence store on every request.
pub struct OnDemandTargets<'a> {
    pub lattice: &'a Lattice,
    pub grouping: &'a Grouping,
}

impl TargetDistances for OnDemandTargets<'_> {
    fn len(&self) -> usize {
        self.grouping.groups.len()
    }

    fn target(&self, a: usize, b: usize) -> f64 {
        let groups = &self.grouping.groups;
        group_dist(self.lattice, &groups[a], &groups[b]).expect("validated grouping").to_f64()
    }
}

/// Points i.i.d. uniform in the unit square, reproducible per seed.
pub fn init(groups: usize, seed: u64, alpha: f64, maxdist: f64) -> EmbeddingModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(INIT_STREAM);
    let points = (0..groups).map(|_| Point { x: rng.gen::<f64>(), y: rng.gen::<f64>() }).collect();
    EmbeddingModel { points, alpha, iterations: 0, seed, maxdist }
}

/// Applies the four coordinate updates for one pair, all reading the old
/// coordinates.
pub fn update_pair(points: &mut [Point], a: usize, b: usize, target: f64, alpha: f64) {
    let (p, q) = (points[a], points[b]);
    let (dx, dy) = (p.x - q.x, p.y - q.y);
    let step = alpha * (p.dist(q) - target);
    points[a] = Point { x: p.x - step * dx, y: p.y - step * dy };
    points[b] = Point { x: q.x + step * dx, y: q.y + step * dy };
}

/// Stateful driver so a run can be split into chunks (e.g. to sample the
/// error curve) without changing the pair sequence.
pub struct Embedder {
    model: EmbeddingModel,
    rng: ChaCha8Rng,
}

impl Embedder {
    pub fn new(model: EmbeddingModel) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
        rng.set_stream(PAIR_STREAM);
        Embedder { model, rng }
    }

    pub fn model(&self) -> &EmbeddingModel {
        &self.model
    }

    pub fn into_model(self) -> EmbeddingModel {
        self.model
    }

    /// Uniform unordered pair of distinct groups. The samplers are built
    /// once per run; `gen_range` rejects up to half its draws for some `n`.
    fn draw_pair(&mut self, first: &Uniform<usize>, second: &Uniform<usize>) -> (usize, usize) {
        let a = first.sample(&mut self.rng);
        let mut b = second.sample(&mut self.rng);
        if b >= a {
            b += 1;
        }
        (a.min(b), a.max(b))
    }

    pub fn run<T: TargetDistances + ?Sized>(&mut self, iterations: u64, targets: &T) {
        if self.model.points.len() < 2 {
            return;
        }
        let alpha = self.model.alpha;
        let n = self.model.points.len();
        let (first, second) = (Uniform::new(0, n), Uniform::new(0, n - 1));
        for _ in 0..iterations {
            let (a, b) = self.draw_pair(&first, &second);
            let t = targets.target(a, b);
            update_pair(&mut self.model.points, a, b, t, alpha);
        }
        self.model.iterations += iterations;
    }
}

/// Runs `iterations` random pair updates on a fresh model.
pub fn embed<T: TargetDistances + ?Sized>(model: EmbeddingModel, iterations: u64, targets: &T) -> EmbeddingModel {
    let mut e = Embedder::new(model);
    e.run(iterations, targets);
    e.into_model()
}

/// Discrepancy between layout and targets over all group pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutError {
    /// Root of the per-pair mean squared discrepancy.
    pub rse: f64,
    /// Root of the plain sum of squared discrepancies.
    pub root_sum_sq: f64,
}

pub fn layout_error<T: TargetDistances + ?Sized>(model: &EmbeddingModel, targets: &T) -> LayoutError {
    let n = model.points.len();
    let mut sum = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            let d = model.eucl(a, b) - targets.target(a, b);
            sum += d * d;
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2).max(1) as f64;
    LayoutError { rse: libm::sqrt(sum / pairs), root_sum_sq: libm::sqrt(sum) }
}

pub fn rse<T: TargetDistances + ?Sized>(model: &EmbeddingModel, targets: &T) -> f64 {
    layout_error(model, targets).rse
}
