use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::projective::{RealProjectivePair, TangentPair};

/// Samples along each shot: `t = k / 99`, `k = 0..100`.
const PATH_SAMPLES: usize = 100;

/// Start point, initial direction and a distance-to-set function for one
/// geodesic shot.
pub struct Shot {
    pub start: RealProjectivePair,
    pub dir: TangentPair,
    pub deviation: Box<dyn Fn(&RealProjectivePair) -> f64 + Send + Sync>,
}

/// A subset of `ℝ𝒫ⁿ × ℝ𝒫ⁿ` that can produce points with directions
/// tangent to it.
pub trait ProbeSet {
    fn shoot(&self, rng: &mut ChaCha8Rng) -> Shot;
}

/// Shoots `samples` geodesics tangent to `set` and returns the largest
/// deviation from the set seen over `t ∈ [0, 1]`. A flow error counts as
/// an infinite deviation.
pub fn totally_geodesic_check<F>(flow: F, set: &dyn ProbeSet, samples: usize, seed: u64) -> f64
where
    F: Fn(&RealProjectivePair, &TangentPair, f64) -> Result<RealProjectivePair>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let shot = set.shoot(&mut rng);
        for k in 0..PATH_SAMPLES {
            let t = k as f64 / (PATH_SAMPLES - 1) as f64;
            let dev = match flow(&shot.start, &shot.dir, t) {
                Ok(p) => (shot.deviation)(&p),
                Err(_) => f64::INFINITY,
            };
            worst = worst.max(dev);
        }
    }
    worst
}

pub(crate) fn gaussian_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let n = dot(&v, &v).sqrt();
    v.into_iter().map(|x| x / n).collect()
}

/// Removes from `v` its components along the orthonormal vectors `basis`.
fn project_out(mut v: Vec<f64>, basis: &[&[f64]]) -> Vec<f64> {
    for b in basis {
        let c = dot(&v, b);
        v.iter_mut().zip(b.iter()).for_each(|(x, y)| *x -= c * y);
    }
    v
}

/// Random unit vector supported on the first `support` coordinates.
fn unit_on(rng: &mut ChaCha8Rng, len: usize, support: usize) -> Vec<f64> {
    let mut v = gaussian_vec(rng, support);
    v.resize(len, 0.0);
    unit(v)
}

/// Random tangent at the unit vector `q`, supported on the first
/// `support` coordinates, with length `speed`.
fn tangent_on(rng: &mut ChaCha8Rng, q: &[f64], support: usize, speed: f64) -> Vec<f64> {
    let mut v = gaussian_vec(rng, support);
    v.resize(q.len(), 0.0);
    let v = project_out(v, &[q]);
    if dot(&v, &v) == 0.0 || support < 2 {
        // a one-dimensional support is a single point of the sphere pair
        return vec![0.0; q.len()];
    }
    unit(v).into_iter().map(|x| x * speed).collect()
}

/// Fixed-point component `{b = 0}` of the Pierce mirror `(a, b) ↦ (a, −b)`
/// on `ℭ𝒫ⁿ`, with `a` the coordinates `0..=split`, taken on both sheets.
#[derive(Debug, Clone, Copy)]
pub struct PierceFixedSet {
    pub coords: usize,
    pub split: usize,
}

impl ProbeSet for PierceFixedSet {
    fn shoot(&self, rng: &mut ChaCha8Rng) -> Shot {
        let (n, k) = (self.coords, self.split + 1);
        let left = unit_on(rng, n, k);
        let right = unit_on(rng, n, k);
        let speeds: (f64, f64) = (rng.random_range(0.0..3.0), rng.random_range(0.0..3.0));
        let dir = TangentPair { left: tangent_on(rng, &left, k, speeds.0), right: tangent_on(rng, &right, k, speeds.1) };
        let split = self.split;
        let deviation = move |p: &RealProjectivePair| {
            [&p.left, &p.right]
                .iter()
                .map(|v| {
                    let tail: f64 = v[split + 1..].iter().map(|x| x * x).sum();
                    (tail / dot(v, v)).sqrt()
                })
                .fold(0.0, f64::max)
        };
        Shot { start: RealProjectivePair { left, right }, dir, deviation: Box::new(deviation) }
    }
}

/// Negative control: hypersurfaces `{⟨a, u⟩ ± ⟨b, v⟩ = 0}` of
/// `ℝ𝒫ⁿ × ℝ𝒫ⁿ` coupling the two sheets, drawn at random through the start
/// point and tangent to the initial direction. The two factors move at
/// different speeds, so the product geodesic leaves the hypersurface at
/// second order.
#[derive(Debug, Clone, Copy)]
pub struct SheetCouplingHyperplane {
    pub coords: usize,
}

impl ProbeSet for SheetCouplingHyperplane {
    fn shoot(&self, rng: &mut ChaCha8Rng) -> Shot {
        let n = self.coords;
        let left = unit_on(rng, n, n);
        let right = unit_on(rng, n, n);
        let (slow, fast) = (rng.random_range(0.5..1.0), rng.random_range(1.5..2.5));
        let dir = TangentPair { left: tangent_on(rng, &left, n, slow), right: tangent_on(rng, &right, n, fast) };
        let point: Vec<f64> = unit(left.iter().chain(&right).copied().collect());
        let tangent: Vec<f64> = unit(dir.left.iter().chain(&dir.right).copied().collect());
        let normal = unit(project_out(gaussian_vec(rng, 2 * n), &[&point, &tangent]));
        let deviation = move |p: &RealProjectivePair| {
            let a = dot(&normal[..n], &p.left) / dot(&p.left, &p.left).sqrt();
            let b = dot(&normal[n..], &p.right) / dot(&p.right, &p.right).sqrt();
            (a + b).abs().min((a - b).abs())
        };
        Shot { start: RealProjectivePair { left, right }, dir, deviation: Box::new(deviation) }
    }
}
