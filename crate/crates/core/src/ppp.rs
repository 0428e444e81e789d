//! Homogeneous Poisson point processes in planar regions.
//!
//! Sampling draws the count `N ~ Poisson(intensity * area)` and then `N`
//! independent uniform positions. Disks and annuli use the inverse-CDF radius
//! transform, so no sample is ever rejected.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Point::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn distance_squared(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.distance_squared(other).sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// A planar sampling window. Construct through the checked constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Disk {
        center: Point,
        radius: f64,
    },
    Annulus {
        center: Point,
        inner_radius: f64,
        outer_radius: f64,
    },
    /// Axis-aligned rectangle `[min.x, max.x] x [min.y, max.y]`.
    Rect { min: Point, max: Point },
}

impl Region {
    pub fn disk(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::param("radius", "disk radius must be finite and > 0"));
        }
        Ok(Region::Disk { center, radius })
    }

    pub fn annulus(center: Point, inner_radius: f64, outer_radius: f64) -> Result<Self> {
        if !(inner_radius.is_finite() && inner_radius >= 0.0) {
            return Err(Error::param("inner_radius", "must be finite and >= 0"));
        }
        if !(outer_radius.is_finite() && outer_radius > inner_radius) {
            return Err(Error::param(
                "outer_radius",
                "must be finite and exceed the inner radius",
            ));
        }
        Ok(Region::Annulus {
            center,
            inner_radius,
            outer_radius,
        })
    }

    pub fn rect(min: Point, max: Point) -> Result<Self> {
        if !(min.x.is_finite() && min.y.is_finite() && max.x.is_finite() && max.y.is_finite())
            || max.x <= min.x
            || max.y <= min.y
        {
            return Err(Error::param("rect", "corners must be finite with max > min"));
        }
        Ok(Region::Rect { min, max })
    }

    /// Centered square `[-half, half]^2`.
    pub fn square(half_side: f64) -> Result<Self> {
        Region::rect(
            Point::new(-half_side, -half_side),
            Point::new(half_side, half_side),
        )
    }

    pub fn area(&self) -> f64 {
        match *self {
            Region::Disk { radius, .. } => PI * radius * radius,
            Region::Annulus {
                inner_radius,
                outer_radius,
                ..
            } => PI * (outer_radius * outer_radius - inner_radius * inner_radius),
            Region::Rect { min, max } => (max.x - min.x) * (max.y - min.y),
        }
    }

    pub fn center(&self) -> Point {
        match *self {
            Region::Disk { center, .. } | Region::Annulus { center, .. } => center,
            Region::Rect { min, max } => Point::new(0.5 * (min.x + max.x), 0.5 * (min.y + max.y)),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match *self {
            Region::Disk { center, radius } => p.distance(&center) <= radius,
            Region::Annulus {
                center,
                inner_radius,
                outer_radius,
            } => {
                let r = p.distance(&center);
                r >= inner_radius && r <= outer_radius
            }
            Region::Rect { min, max } => {
                p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Region::Disk { center, radius } => Region::disk(center, radius).map(drop),
            Region::Annulus {
                center,
                inner_radius,
                outer_radius,
            } => Region::annulus(center, inner_radius, outer_radius).map(drop),
            Region::Rect { min, max } => Region::rect(min, max).map(drop),
        }
    }

    /// One uniform point in the region.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match *self {
            Region::Disk { center, radius } => {
                let r = radius * rng.random::<f64>().sqrt();
                let p = Point::polar(r, 2.0 * PI * rng.random::<f64>());
                Point::new(center.x + p.x, center.y + p.y)
            }
            Region::Annulus {
                center,
                inner_radius,
                outer_radius,
            } => {
                let a2 = inner_radius * inner_radius;
                let b2 = outer_radius * outer_radius;
                let r = (a2 + rng.random::<f64>() * (b2 - a2)).sqrt();
                let p = Point::polar(r, 2.0 * PI * rng.random::<f64>());
                Point::new(center.x + p.x, center.y + p.y)
            }
            Region::Rect { min, max } => Point::new(
                min.x + (max.x - min.x) * rng.random::<f64>(),
                min.y + (max.y - min.y) * rng.random::<f64>(),
            ),
        }
    }
}

/// One realization of a Poisson process.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub region: Region,
    pub intensity: f64,
}

impl PointSet {
    pub fn new(points: Vec<Point>, region: Region, intensity: f64) -> Self {
        PointSet {
            points,
            region,
            intensity,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Samples a Poisson process of the given intensity in `region`.
pub fn sample_ppp(region: Region, intensity: f64, seed: u64) -> Result<PointSet> {
    sample_ppp_with(region, intensity, &mut rng::stream(seed, &[]))
}

/// As [`sample_ppp`] but drawing from a caller-supplied generator.
pub fn sample_ppp_with<R: Rng + ?Sized>(
    region: Region,
    intensity: f64,
    rng: &mut R,
) -> Result<PointSet> {
    region.validate()?;
    if !(intensity.is_finite() && intensity >= 0.0) {
        return Err(Error::param("intensity", "must be finite and >= 0"));
    }
    let mean = intensity * region.area();
    let count = if mean > 0.0 {
        let dist =
            Poisson::new(mean).map_err(|_| Error::param("intensity", "Poisson mean out of range"))?;
        dist.sample(rng) as usize
    } else {
        0
    };
    let points = (0..count).map(|_| region.sample_uniform(rng)).collect();
    Ok(PointSet::new(points, region, intensity))
}

/// Removes every point whose distance from the region center lies in
/// `(radius - width, radius]`, preserving the order of the survivors.
pub fn enforce_empty_strip(ps: &PointSet, radius: f64, width: f64) -> Result<PointSet> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::param("width", "must be finite and > 0"));
    }
    if !(radius.is_finite() && width < radius) {
        return Err(Error::param("width", "must be smaller than the radius"));
    }
    let center = ps.region.center();
    let inner = radius - width;
    let points = ps
        .points
        .iter()
        .copied()
        .filter(|p| {
            let r = p.distance(&center);
            !(r > inner && r <= radius)
        })
        .collect();
    Ok(PointSet::new(points, ps.region, ps.intensity))
}
