//! Seeded instance generators.
//!
//! Every generator is deterministic in `(n, seed)`: all randomness flows
//! from one ChaCha8 stream seeded with the 64-bit seed, so equal arguments
//! reproduce instances byte for byte. Generators register by name so
//! front-ends can select a kind at runtime.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;

/// A generated instance: the point set plus, for kinds with a natural
/// restricted-case pivot, a suggested `o`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub points: Vec<Point>,
    /// Suggested pivot for the restricted problem; `None` for kinds without
    /// a canonical one.
    pub o: Option<Point>,
}

/// A named deterministic instance generator.
pub trait Generator: Sync {
    fn name(&self) -> &'static str;

    /// Generates `n` points; equal `(n, seed)` give identical output.
    fn generate(&self, n: usize, seed: u64) -> Instance;
}

/// Uniform points in the unit square, pivot at the square center.
pub struct Uniform;

impl Generator for Uniform {
    fn name(&self) -> &'static str {
        "uniform"
    }

    fn generate(&self, n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
            .collect();
        Instance { points, o: Some(Point::new(0.5, 0.5)) }
    }
}

/// Points in strictly convex position: jittered angles on the unit circle.
///
/// The radius stays fixed, so distinct angles alone guarantee strict
/// convexity; the jitter is bounded well below half the angular spacing to
/// keep the angles distinct and in circular order.
pub struct ConvexCircle;

impl Generator for ConvexCircle {
    fn name(&self) -> &'static str {
        "convex"
    }

    fn generate(&self, n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let step = std::f64::consts::TAU / n.max(1) as f64;
        let points = (0..n)
            .map(|k| {
                let jitter: f64 = rng.gen_range(-0.4..0.4);
                let theta = (k as f64 + jitter) * step;
                Point::new(theta.cos(), theta.sin())
            })
            .collect();
        Instance { points, o: None }
    }
}

/// Two unit-radius clusters with a controlled overlap, pivot at the midpoint
/// between the cluster centers (inside both cluster footprints).
pub struct TwoCluster {
    /// Width of the lens shared by the two cluster disks as a fraction of
    /// their diameter; clamped to `[0.01, 0.99]` when generating.
    pub overlap: f64,
}

impl Generator for TwoCluster {
    fn name(&self) -> &'static str {
        "two-cluster"
    }

    fn generate(&self, n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = self.overlap.clamp(0.01, 0.99);
        // Unit disks centered at +-(1 - f) share a lens of width 2f.
        let half = 1.0 - f;
        let n1 = n - n / 2; // first cluster takes the odd point
        let points = (0..n)
            .map(|k| {
                let cx = if k < n1 { -half } else { half };
                let r = rng.gen_range(0.0f64..1.0).sqrt();
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                Point::new(cx + r * t.cos(), r * t.sin())
            })
            .collect();
        Instance { points, o: Some(Point::new(0.0, 0.0)) }
    }
}

/// Overlap fraction used by the registered `two-cluster` generator.
pub const DEFAULT_OVERLAP: f64 = 0.3;

static UNIFORM: Uniform = Uniform;
static CONVEX_CIRCLE: ConvexCircle = ConvexCircle;
static TWO_CLUSTER: TwoCluster = TwoCluster { overlap: DEFAULT_OVERLAP };
static GENERATORS: [&dyn Generator; 3] = [&UNIFORM, &CONVEX_CIRCLE, &TWO_CLUSTER];

/// All registered generators.
pub fn generators() -> &'static [&'static dyn Generator] {
    &GENERATORS
}

/// Looks up a registered generator by name.
pub fn generator(name: &str) -> Option<&'static dyn Generator> {
    GENERATORS.iter().copied().find(|g| g.name() == name)
}
