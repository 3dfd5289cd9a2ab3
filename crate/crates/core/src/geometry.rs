//! Closed surfaces, collocation nodes and auxiliary source sets.
//!
//! Points are placed with a golden-angle (Fibonacci) spiral on the unit
//! sphere and mapped onto the surface. Source pools live on homothetic
//! copies of the surface, shrunk toward the centre for exterior problems
//! and inflated for interior ones.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::vec3::{self, Vec3};
use crate::scalar::Real;

/// Azimuthal offset of collocation nodes, in units of the golden angle.
const NODE_OFFSET: f64 = 0.5;
/// Azimuthal offset of source points.
const SOURCE_OFFSET: f64 = 0.0;

/// A closed star-shaped surface `x = centre + r(u) u` for unit directions
/// `u`, supplied by the caller.
pub trait StarShapedSurface<T>: Send + Sync + Debug {
    fn center(&self) -> Vec3<T>;

    /// Radial distance from the centre along the unit direction `dir`.
    fn radius(&self, dir: Vec3<T>) -> T;

    /// Outward unit normal at the surface point in direction `dir`, if the
    /// parameterization provides one.
    fn normal(&self, _dir: Vec3<T>) -> Option<Vec3<T>> {
        None
    }
}

/// Supported closed surfaces. The interior domain is Ω⁺; normals point
/// out of it.
#[derive(Debug, Clone)]
pub enum SurfaceGeometry<T> {
    Sphere { center: Vec3<T>, radius: T },
    Ellipsoid { center: Vec3<T>, radii: Vec3<T> },
    Parametric { surface: Arc<dyn StarShapedSurface<T>>, scale: T },
}

/// One point of a discretized surface with its frame and quadrature weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample<T> {
    pub point: Vec3<T>,
    pub normal: Vec3<T>,
    pub tangent1: Vec3<T>,
    pub tangent2: Vec3<T>,
    pub weight: T,
}

/// Which side of Γ the auxiliary surface lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Γ⁻, inside Ω⁺: sources for exterior problems.
    Interior,
    /// Γ⁺, enclosing Ω⁺: sources for interior problems.
    Exterior,
}

/// Source locations `y_n` on an auxiliary surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SourcePool<T> {
    pub points: Vec<Vec3<T>>,
    pub side: Side,
}

impl<T> SourcePool<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `m` quasi-uniform unit directions on a golden-angle spiral; `offset`
/// rotates the spiral about the polar axis (in golden angles).
pub fn fibonacci_directions<T: Real>(m: usize, offset: f64) -> Vec<Vec3<T>> {
    let golden = T::PI() * (T::lit(3.0) - T::lit(5.0).sqrt());
    let shift = golden * T::lit(offset);
    let mf = T::count(m);
    (0..m)
        .map(|i| {
            let fi = T::count(i);
            let z = T::one() - (fi + fi + T::one()) / mf;
            let rho = (T::one() - z * z).max(T::zero()).sqrt();
            let phi = fi * golden + shift;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

fn check_positive<T: Real>(what: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::UnsupportedSurface(format!("{what} must be positive and finite, got {v}")))
    }
}

impl<T: Real> SurfaceGeometry<T> {
    pub fn unit_sphere() -> Self {
        Self::Sphere { center: [T::zero(); 3], radius: T::one() }
    }

    pub fn sphere(center: Vec3<T>, radius: T) -> Result<Self> {
        check_positive("sphere radius", radius)?;
        Ok(Self::Sphere { center, radius })
    }

    pub fn ellipsoid(center: Vec3<T>, radii: Vec3<T>) -> Result<Self> {
        for r in radii {
            check_positive("ellipsoid radius", r)?;
        }
        Ok(Self::Ellipsoid { center, radii })
    }

    pub fn parametric(surface: Arc<dyn StarShapedSurface<T>>) -> Self {
        Self::Parametric { surface, scale: T::one() }
    }

    pub fn center(&self) -> Vec3<T> {
        match self {
            Self::Sphere { center, .. } | Self::Ellipsoid { center, .. } => *center,
            Self::Parametric { surface, .. } => surface.center(),
        }
    }

    /// Homothetic copy scaled about the centre.
    pub fn scaled(&self, factor: T) -> Self {
        match self {
            Self::Sphere { center, radius } => Self::Sphere { center: *center, radius: *radius * factor },
            Self::Ellipsoid { center, radii } => Self::Ellipsoid {
                center: *center,
                radii: radii.map(|r| r * factor),
            },
            Self::Parametric { surface, scale } => Self::Parametric {
                surface: Arc::clone(surface),
                scale: *scale * factor,
            },
        }
    }

    /// Largest distance from the centre to the surface (exact for spheres
    /// and ellipsoids, sampled for parametric surfaces).
    pub fn characteristic_size(&self) -> T {
        match self {
            Self::Sphere { radius, .. } => *radius,
            Self::Ellipsoid { radii, .. } => radii[0].max(radii[1]).max(radii[2]),
            Self::Parametric { surface, scale } => fibonacci_directions::<T>(256, SOURCE_OFFSET)
                .into_iter()
                .fold(T::zero(), |acc, u| acc.max(surface.radius(u) * *scale)),
        }
    }

    /// Implicit function: negative in Ω⁺, zero on Γ, positive outside.
    pub fn implicit(&self, x: Vec3<T>) -> T {
        let d = vec3::sub(x, self.center());
        match self {
            Self::Sphere { radius, .. } => vec3::dot(d, d) / (*radius * *radius) - T::one(),
            Self::Ellipsoid { radii, .. } => {
                (0..3).fold(T::zero(), |acc, k| acc + (d[k] / radii[k]).powi(2)) - T::one()
            }
            Self::Parametric { surface, scale } => {
                let r = vec3::norm(d);
                if r == T::zero() {
                    return -T::one();
                }
                r / (surface.radius(vec3::scale(r.recip(), d)) * *scale) - T::one()
            }
        }
    }

    pub fn contains_strictly(&self, x: Vec3<T>) -> bool {
        self.implicit(x) < T::zero()
    }

    /// Surface point associated with the unit direction `u`.
    fn map_direction(&self, u: Vec3<T>) -> Vec3<T> {
        match self {
            Self::Sphere { center, radius } => vec3::add(*center, vec3::scale(*radius, u)),
            Self::Ellipsoid { center, radii } => {
                vec3::add(*center, [radii[0] * u[0], radii[1] * u[1], radii[2] * u[2]])
            }
            Self::Parametric { surface, scale } => {
                vec3::add(surface.center(), vec3::scale(surface.radius(u) * *scale, u))
            }
        }
    }

    /// Outward normal and the area stretch `dA / dΩ` of the direction map.
    fn normal_and_jacobian(&self, u: Vec3<T>) -> Result<(Vec3<T>, T)> {
        match self {
            Self::Sphere { radius, .. } => Ok((u, *radius * *radius)),
            Self::Ellipsoid { radii, .. } => {
                let g = [u[0] / radii[0], u[1] / radii[1], u[2] / radii[2]];
                let len = vec3::norm(g);
                Ok((vec3::scale(len.recip(), g), radii[0] * radii[1] * radii[2] * len))
            }
            Self::Parametric { surface, scale } => {
                let n = surface.normal(u).ok_or_else(|| {
                    Error::UnsupportedSurface("parameterization provides no normals".into())
                })?;
                let n = vec3::normalize(n);
                let cos = vec3::dot(n, u);
                if !(cos > T::zero()) {
                    return Err(Error::UnsupportedSurface("surface is not star-shaped about its centre".into()));
                }
                let r = surface.radius(u) * *scale;
                Ok((n, r * r / cos))
            }
        }
    }

    /// Azimuthal derivative of the surface point, used to orient `t1`.
    fn azimuthal_direction(&self, u: Vec3<T>) -> Vec3<T> {
        let du = [-u[1], u[0], T::zero()];
        match self {
            Self::Ellipsoid { radii, .. } => [radii[0] * du[0], radii[1] * du[1], T::zero()],
            _ => du,
        }
    }

    fn sample_direction(&self, u: Vec3<T>, weight_per_steradian: T) -> Result<SurfaceSample<T>> {
        let point = self.map_direction(u);
        let (normal, jacobian) = self.normal_and_jacobian(u)?;
        let (tangent1, tangent2) = tangent_frame(normal, self.azimuthal_direction(u));
        Ok(SurfaceSample {
            point,
            normal,
            tangent1,
            tangent2,
            weight: jacobian * weight_per_steradian,
        })
    }

    fn sample_with_offset(&self, m: usize, offset: f64) -> Result<Vec<SurfaceSample<T>>> {
        if m < 4 {
            return Err(Error::Dimension(format!("surface sampling needs m ≥ 4, got {m}")));
        }
        let per_steradian = T::lit(4.0) * T::PI() / T::count(m);
        fibonacci_directions(m, offset)
            .into_iter()
            .map(|u| self.sample_direction(u, per_steradian))
            .collect()
    }

    /// Sample frame at a point already on the surface (within `1e-8`
    /// relative), e.g. collocation nodes read from a file.
    pub fn sample_at(&self, point: Vec3<T>, weight: T) -> Result<SurfaceSample<T>> {
        if self.implicit(point).abs() > T::lit(1e-8) {
            return Err(Error::UnsupportedSurface(format!("point {point:?} is not on the surface")));
        }
        let d = vec3::sub(point, self.center());
        let r = vec3::norm(d);
        if r == T::zero() {
            return Err(Error::UnsupportedSurface("point coincides with the centre".into()));
        }
        let u = match self {
            Self::Ellipsoid { radii, .. } => {
                vec3::normalize([d[0] / radii[0], d[1] / radii[1], d[2] / radii[2]])
            }
            _ => vec3::scale(r.recip(), d),
        };
        let mut s = self.sample_direction(u, T::zero())?;
        s.point = point;
        s.weight = weight;
        Ok(s)
    }
}

/// Right-handed orthonormal `(t1, t2)` with `t1 × t2 = n`; `t1` follows
/// `hint` projected onto the tangent plane.
fn tangent_frame<T: Real>(n: Vec3<T>, hint: Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let project = |v: Vec3<T>| vec3::sub(v, vec3::scale(vec3::dot(v, n), n));
    let mut t = project(hint);
    if vec3::norm(t) < T::lit(1e-8) {
        let axis = if n[0].abs() < T::lit(0.9) { [T::one(), T::zero(), T::zero()] } else { [T::zero(), T::one(), T::zero()] };
        t = project(axis);
    }
    let t1 = vec3::normalize(t);
    let t2 = vec3::cross(n, t1);
    (t1, t2)
}

/// `m` quasi-uniform collocation samples on the surface, deterministic in
/// `(surface, m)`. Weights integrate the surface area.
pub fn sample_surface<T: Real>(surface: &SurfaceGeometry<T>, m: usize) -> Result<Vec<SurfaceSample<T>>> {
    surface.sample_with_offset(m, NODE_OFFSET)
}

/// `m` samples using the source-pool spiral phase; used for quadrature and
/// evaluation sets that should not coincide with collocation nodes.
pub fn sample_surface_with_offset<T: Real>(
    surface: &SurfaceGeometry<T>,
    m: usize,
    offset: f64,
) -> Result<Vec<SurfaceSample<T>>> {
    surface.sample_with_offset(m, offset)
}

/// `n` sources on the homothetic copy of `surface` scaled by `scale`.
pub fn make_source_pool<T: Real>(
    surface: &SurfaceGeometry<T>,
    side: Side,
    scale: T,
    n: usize,
) -> Result<SourcePool<T>> {
    let scale_err = |reason: &str| Error::Scale {
        scale: scale.to_f64().unwrap_or(f64::NAN),
        reason: reason.to_string(),
    };
    if !scale.is_finite() || scale <= T::zero() {
        return Err(scale_err("scale must be positive"));
    }
    match side {
        Side::Interior if scale >= T::one() => {
            return Err(scale_err("interior auxiliary surface needs scale < 1"))
        }
        Side::Exterior if scale <= T::one() => {
            return Err(scale_err("exterior auxiliary surface needs scale > 1"))
        }
        _ => {}
    }
    if n == 0 {
        return Err(Error::Dimension("source pool needs at least one point".into()));
    }
    let aux = surface.scaled(scale);
    let points = fibonacci_directions(n, SOURCE_OFFSET)
        .into_iter()
        .map(|u| aux.map_direction(u))
        .collect();
    Ok(SourcePool { points, side })
}
