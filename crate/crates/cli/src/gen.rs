//! Seeded terrain generation. Vertices sit at x = 0, 1, 2, ... with integer
//! heights, so every downstream rational stays small. Identical specs yield
//! byte-identical terrains.

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twoguard_core::Terrain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Independent uniform heights.
    Uniform,
    /// Alternating low and high bands: odd vertices ridge, even vertices
    /// floor.
    Spiky,
    /// Never-descending chain with random riser heights.
    Staircase,
}

impl Profile {
    pub fn parse(s: &str) -> Result<Profile> {
        match s {
            "uniform" => Ok(Profile::Uniform),
            "spiky" => Ok(Profile::Spiky),
            "staircase" => Ok(Profile::Staircase),
            _ => bail!("unknown profile {s:?}; expected uniform, spiky, or staircase"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    pub y_min: i64,
    pub y_max: i64,
    pub profile: Profile,
}

pub fn gen_terrain(spec: &GenSpec) -> Result<Terrain> {
    if spec.n < 2 {
        bail!("need at least 2 vertices, got {}", spec.n);
    }
    if spec.y_min > spec.y_max {
        bail!("empty height range [{}, {}]", spec.y_min, spec.y_max);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = (spec.y_min, spec.y_max);
    let span = hi - lo;
    let mut ys = Vec::with_capacity(spec.n);
    match spec.profile {
        Profile::Uniform => {
            for _ in 0..spec.n {
                ys.push(rng.gen_range(lo..=hi));
            }
        }
        Profile::Spiky => {
            // Bands never overlap, so every odd vertex strictly overtops
            // its neighbors whenever span >= 1.
            let band = span / 3;
            for i in 0..spec.n {
                if i % 2 == 0 {
                    ys.push(rng.gen_range(lo..=lo + band));
                } else {
                    ys.push(rng.gen_range(hi - band..=hi));
                }
            }
        }
        Profile::Staircase => {
            let riser = (span / 4).max(1);
            let mut y = lo;
            for _ in 0..spec.n {
                ys.push(y);
                y = (y + rng.gen_range(0..=riser)).min(hi);
            }
        }
    }
    let coords: Vec<(i64, i64)> = ys.iter().enumerate().map(|(i, &y)| (i as i64, y)).collect();
    Ok(Terrain::from_ints(&coords))
}
