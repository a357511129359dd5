//! Points and curves of the upper half-plane attached to matrices and
//! lattices.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::Mat2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperbolicError {
    #[error("matrix has a zero column")]
    ZeroColumn,
    #[error("determinant must be positive")]
    NonPositiveDeterminant,
    #[error("vectors are colinear")]
    Colinear,
    #[error("basis is negatively oriented")]
    NegativelyOriented,
}

/// A point of `R ∪ {∞}` with rational coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Finite(BigRational),
    Infinity,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Finite(x) => write!(f, "{x}"),
            Endpoint::Infinity => write!(f, "inf"),
        }
    }
}

fn ratio(num: i64, den: i64) -> Endpoint {
    if den == 0 {
        Endpoint::Infinity
    } else {
        Endpoint::Finite(BigRational::new(num.into(), den.into()))
    }
}

/// Endpoints `(b/a, d/c)` at infinity of the geodesic `t ↦ A·diag(e^t, e^-t)`
/// in the space of lattices, for `A = [[a, b], [c, d]]`.
pub fn geodesic_endpoints(m: &Mat2) -> Result<(Endpoint, Endpoint), HyperbolicError> {
    let [[a, b], [c, d]] = *m;
    if (a == 0 && c == 0) || (b == 0 && d == 0) {
        return Err(HyperbolicError::ZeroColumn);
    }
    if a * d - b * c <= 0 {
        return Err(HyperbolicError::NonPositiveDeterminant);
    }
    Ok((ratio(b, a), ratio(d, c)))
}

/// The horocycle through `A`, tangent to the boundary at `d/c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Horocycle {
    Finite {
        endpoint: BigRational,
        /// Highest point `(d/c, 1/c²)`.
        apogee: (BigRational, BigRational),
    },
    AtInfinity,
}

pub fn horocycle_data(m: &Mat2) -> Result<Horocycle, HyperbolicError> {
    let [[a, b], [c, d]] = *m;
    let det = a * d - b * c;
    if det <= 0 {
        return Err(HyperbolicError::NonPositiveDeterminant);
    }
    if c == 0 {
        return Ok(Horocycle::AtInfinity);
    }
    let endpoint = BigRational::new(d.into(), c.into());
    let height = BigRational::new(det.into(), (c * c).into());
    Ok(Horocycle::Finite {
        endpoint: endpoint.clone(),
        apogee: (endpoint, height),
    })
}

/// The point `z(v)/z(u)` of the upper half-plane representing the lattice
/// spanned by `u` and `v`, up to rotation and scaling.
pub fn torus_point(u: (f64, f64), v: (f64, f64)) -> Result<Complex64, HyperbolicError> {
    let cross = u.0 * v.1 - u.1 * v.0;
    let scale = u.0.hypot(u.1) * v.0.hypot(v.1);
    if scale == 0.0 || cross.abs() <= 1e-12 * scale {
        return Err(HyperbolicError::Colinear);
    }
    if cross < 0.0 {
        return Err(HyperbolicError::NegativelyOriented);
    }
    Ok(Complex64::new(v.0, v.1) / Complex64::new(u.0, u.1))
}

/// Exact sign test on the imaginary part, for rational bases.
pub fn is_positively_oriented(u: (&BigRational, &BigRational), v: (&BigRational, &BigRational)) -> Option<bool> {
    let cross = u.0 * v.1 - u.1 * v.0;
    (!cross.is_zero()).then(|| cross.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn endpoints() {
        assert_eq!(
            geodesic_endpoints(&[[1, 0], [0, 1]]).unwrap(),
            (Endpoint::Finite(q(0, 1)), Endpoint::Infinity)
        );
        assert_eq!(
            geodesic_endpoints(&[[1, 1], [0, 1]]).unwrap(),
            (Endpoint::Finite(q(1, 1)), Endpoint::Infinity)
        );
        assert_eq!(
            geodesic_endpoints(&[[2, 1], [1, 1]]).unwrap(),
            (Endpoint::Finite(q(1, 2)), Endpoint::Finite(q(1, 1)))
        );
        assert_eq!(geodesic_endpoints(&[[0, 1], [0, 1]]), Err(HyperbolicError::ZeroColumn));
        assert_eq!(
            geodesic_endpoints(&[[0, 1], [1, 0]]),
            Err(HyperbolicError::NonPositiveDeterminant)
        );
    }

    #[test]
    fn horocycles() {
        assert_eq!(
            horocycle_data(&[[1, 0], [1, 1]]).unwrap(),
            Horocycle::Finite {
                endpoint: q(1, 1),
                apogee: (q(1, 1), q(1, 1))
            }
        );
        assert_eq!(
            horocycle_data(&[[0, -1], [1, 0]]).unwrap(),
            Horocycle::Finite {
                endpoint: q(0, 1),
                apogee: (q(0, 1), q(1, 1))
            }
        );
        assert_eq!(horocycle_data(&[[1, 1], [0, 1]]).unwrap(), Horocycle::AtInfinity);
    }

    #[test]
    fn torus_points() {
        let i = Complex64::new(0.0, 1.0);
        assert!((torus_point((1.0, 0.0), (0.0, 1.0)).unwrap() - i).norm() < 1e-15);
        assert!((torus_point((1.0, 0.0), (0.3, 2.0)).unwrap() - Complex64::new(0.3, 2.0)).norm() < 1e-15);
        assert!((torus_point((0.0, 1.0), (-1.0, 0.0)).unwrap() - i).norm() < 1e-15);
        assert_eq!(torus_point((1.0, 1.0), (2.0, 2.0)), Err(HyperbolicError::Colinear));
        assert_eq!(torus_point((0.0, 1.0), (1.0, 0.0)), Err(HyperbolicError::NegativelyOriented));
        assert_eq!(is_positively_oriented((&q(1, 1), &q(0, 1)), (&q(0, 1), &q(1, 1))), Some(true));
    }
}
