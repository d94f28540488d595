//! Direction nets: finite unit-vector families used by every net-based
//! containment or support comparison.

use crate::error::{Error, Result};
use crate::rng::Stream;
#[cfg(test)]
use crate::tol;
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq)]
pub enum NetGeneration {
    /// `count` exact equally spaced angles in the plane.
    Angles2D { count: usize },
    /// `count` seeded points on the unit sphere in dimension `dim`.
    SphereSeeded { dim: usize, count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct DirectionNet {
    directions: Vec<Vector>,
    generation: NetGeneration,
}

/// Default net sizes: the plane is covered by exact angles, higher
/// dimensions by a seeded sphere sample.
pub const DEFAULT_COUNT_2D: usize = 720;
pub const DEFAULT_COUNT_ND: usize = 2000;

impl DirectionNet {
    pub fn angles_2d(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParam("net count must be positive".into()));
        }
        let directions = (0..count)
            .map(|k| {
                let phi = std::f64::consts::TAU * k as f64 / count as f64;
                Vector(vec![phi.cos(), phi.sin()])
            })
            .collect();
        Ok(DirectionNet {
            directions,
            generation: NetGeneration::Angles2D { count },
        })
    }

    pub fn sphere_seeded(dim: usize, count: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if count == 0 {
            return Err(Error::InvalidParam("net count must be positive".into()));
        }
        let stream = Stream::new(seed, "direction-net");
        let mut directions = Vec::with_capacity(count);
        let mut index = 0u64;
        while directions.len() < count {
            let v = Vector(stream.normal_coords(index, dim));
            index += 1;
            if let Ok(u) = v.normalized() {
                directions.push(u);
            }
        }
        Ok(DirectionNet {
            directions,
            generation: NetGeneration::SphereSeeded { dim, count, seed },
        })
    }

    /// Standard net for a dimension: 720 exact angles in the plane,
    /// 2000 seeded sphere directions otherwise.
    pub fn standard(dim: usize, seed: u64) -> Result<Self> {
        if dim == 2 {
            DirectionNet::angles_2d(DEFAULT_COUNT_2D)
        } else {
            DirectionNet::sphere_seeded(dim, DEFAULT_COUNT_ND, seed)
        }
    }

    /// Standard net with an overridden direction count.
    pub fn with_count(dim: usize, count: usize, seed: u64) -> Result<Self> {
        if dim == 2 {
            DirectionNet::angles_2d(count)
        } else {
            DirectionNet::sphere_seeded(dim, count, seed)
        }
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.directions[0].dim()
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.directions.iter()
    }

    pub fn generation(&self) -> &NetGeneration {
        &self.generation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_unit_vectors() {
        let net = DirectionNet::angles_2d(720).unwrap();
        assert_eq!(net.len(), 720);
        for d in net.iter() {
            assert!((d.norm2() - 1.0).abs() <= tol::UNIT_NORM);
        }
        let net = DirectionNet::sphere_seeded(5, 500, 9).unwrap();
        for d in net.iter() {
            assert!((d.norm2() - 1.0).abs() <= tol::UNIT_NORM);
        }
    }

    #[test]
    fn quarter_turn_angles_are_exact_axes() {
        let net = DirectionNet::angles_2d(4).unwrap();
        assert_eq!(net.directions()[0].0, vec![1.0, 0.0]);
        // cos(pi/2) evaluates to a sub-1e-16 residue, not exactly zero.
        assert!((net.directions()[1][0]).abs() < 1e-15);
        assert!((net.directions()[1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn seeded_nets_reproduce() {
        let a = DirectionNet::sphere_seeded(3, 100, 7).unwrap();
        let b = DirectionNet::sphere_seeded(3, 100, 7).unwrap();
        assert_eq!(a.directions()[50].0, b.directions()[50].0);
        let c = DirectionNet::sphere_seeded(3, 100, 8).unwrap();
        assert_ne!(a.directions()[50].0, c.directions()[50].0);
    }
}
