use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    UpperHalfPlane,
    RightHalfPlane,
    /// `|arg z| < half_angle`.
    Sector(f64),
    /// `arg z = direction`.
    Ray(f64),
}

/// Seeded sampler: log-uniform modulus, uniform argument across the region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexSampler {
    pub region: Region,
    pub count: usize,
    pub seed: u64,
    pub r_min: f64,
    pub r_max: f64,
}

impl ComplexSampler {
    pub fn new(region: Region, count: usize, seed: u64) -> Self {
        ComplexSampler {
            region,
            count,
            seed,
            r_min: 1e-3,
            r_max: 1e3,
        }
    }

    pub fn with_radius(mut self, r_min: f64, r_max: f64) -> Self {
        assert!(
            0.0 < r_min && r_min < r_max,
            "radius range must be increasing and positive"
        );
        self.r_min = r_min;
        self.r_max = r_max;
        self
    }

    fn arg_range(&self) -> (f64, f64) {
        match self.region {
            Region::UpperHalfPlane => (0.0, PI),
            Region::RightHalfPlane => (-FRAC_PI_2, FRAC_PI_2),
            Region::Sector(a) => (-a, a),
            Region::Ray(d) => (d, d),
        }
    }

    /// Endless deterministic stream of points strictly inside the region.
    pub fn stream(&self) -> impl Iterator<Item = Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (a, b) = self.arg_range();
        let (la, lb) = (self.r_min.ln(), self.r_max.ln());
        std::iter::from_fn(move || loop {
            let r = rng.gen_range(la..lb).exp();
            let t = if a == b { a } else { rng.gen_range(a..b) };
            if a != b && t == a {
                continue;
            }
            return Some(Complex64::from_polar(r, t));
        })
    }

    pub fn samples(&self) -> Vec<Complex64> {
        self.stream().take(self.count).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_in_region() {
        for region in [Region::UpperHalfPlane, Region::RightHalfPlane, Region::Sector(0.3)] {
            let s = ComplexSampler::new(region, 500, 7).samples();
            assert_eq!(s.len(), 500);
            for z in s {
                assert!(z.norm() >= 1e-3 * 0.999 && z.norm() <= 1e3 * 1.001);
                match region {
                    Region::UpperHalfPlane => assert!(z.im > 0.0),
                    Region::RightHalfPlane => assert!(z.re > 0.0),
                    Region::Sector(a) => assert!(z.arg().abs() < a),
                    Region::Ray(_) => unreachable!(),
                }
            }
        }
        let ray = ComplexSampler::new(Region::Ray(1.0), 10, 1).samples();
        assert!(ray.iter().all(|z| (z.arg() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn seeded() {
        let a = ComplexSampler::new(Region::UpperHalfPlane, 20, 3).samples();
        let b = ComplexSampler::new(Region::UpperHalfPlane, 20, 3).samples();
        let c = ComplexSampler::new(Region::UpperHalfPlane, 20, 4).samples();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
