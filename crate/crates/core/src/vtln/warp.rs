use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::num::Real;

/// Number of grid points used to verify monotonicity on `[0, pi]`.
pub const MONOTONICITY_GRID: usize = 1024;

const BISECTION_TOLERANCE: f64 = 1e-12;
const BISECTION_MAX_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WarpKind {
    /// Piecewise linear, knot at `7pi/8` (or `7pi/(8a)` when `a > 1`).
    Symmetric,
    /// Piecewise linear, knot fixed at `7pi/8`.
    Asymmetric,
    /// `w + a (w/pi - (w/pi)^2)`.
    Quadratic,
    /// `pi (w/pi)^a`.
    Power,
    /// Phase response of the first-order all-pass `(z - a) / (1 - a z)`.
    Bilinear,
}

impl WarpKind {
    pub const ALL: [WarpKind; 5] = [
        WarpKind::Symmetric,
        WarpKind::Asymmetric,
        WarpKind::Quadratic,
        WarpKind::Power,
        WarpKind::Bilinear,
    ];
}

impl fmt::Display for WarpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WarpKind::Symmetric => "symmetric",
            WarpKind::Asymmetric => "asymmetric",
            WarpKind::Quadratic => "quadratic",
            WarpKind::Power => "power",
            WarpKind::Bilinear => "bilinear",
        })
    }
}

impl FromStr for WarpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WarpKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown warping function '{s}'")))
    }
}

/// A warping function `g(w, a)` mapping `[0, pi]` monotonically onto itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpSpec<T> {
    kind: WarpKind,
    alpha: T,
}

impl<T: Real> WarpSpec<T> {
    pub fn new(kind: WarpKind, alpha: T) -> Result<Self> {
        let a = alpha.as_f64();
        let in_domain = a.is_finite()
            && match kind {
                WarpKind::Symmetric | WarpKind::Asymmetric | WarpKind::Power => a > 0.0,
                WarpKind::Bilinear => a > -1.0 && a < 1.0,
                WarpKind::Quadratic => a.abs() < 4.0,
            };
        if !in_domain {
            return Err(Error::Parameter(format!("{kind} warp factor {a} outside its domain")));
        }
        let spec = Self { kind, alpha };
        if !spec.is_monotone() {
            return Err(Error::Parameter(format!("{kind} warp with factor {a} is not monotone on [0, pi]")));
        }
        Ok(spec)
    }

    /// The identity warp (bilinear with zero factor).
    pub fn identity() -> Self {
        Self { kind: WarpKind::Bilinear, alpha: T::zero() }
    }

    pub fn kind(&self) -> WarpKind {
        self.kind
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Knot `w0` of the piecewise-linear kinds.
    pub fn knot(&self) -> Option<T> {
        let seven_eighths = T::PI() * T::lit(7.0) / T::lit(8.0);
        match self.kind {
            WarpKind::Symmetric if self.alpha > T::one() => Some(seven_eighths / self.alpha),
            WarpKind::Symmetric | WarpKind::Asymmetric => Some(seven_eighths),
            _ => None,
        }
    }

    /// `g(w)` for `w` in `[0, pi]`.
    pub fn value(&self, omega: T) -> Result<T> {
        check_omega(omega)?;
        Ok(self.map(omega))
    }

    /// `g^-1(w)`: closed form where one exists, bisection for the quadratic kind.
    pub fn inverse(&self, omega: T) -> Result<T> {
        check_omega(omega)?;
        Ok(self.unmap(omega))
    }

    pub(crate) fn map(&self, omega: T) -> T {
        let pi = T::PI();
        let a = self.alpha;
        let g = match self.kind {
            WarpKind::Symmetric | WarpKind::Asymmetric => {
                let knot = self.knot().unwrap();
                if omega <= knot {
                    a * omega
                } else if omega == pi {
                    pi
                } else {
                    a * knot + (pi - a * knot) / (pi - knot) * (omega - knot)
                }
            }
            WarpKind::Quadratic => {
                let x = omega / pi;
                omega + a * (x - x * x)
            }
            WarpKind::Power => pi * (omega / pi).powf(a),
            WarpKind::Bilinear => bilinear(omega, a),
        };
        g.max(T::zero()).min(pi)
    }

    pub(crate) fn unmap(&self, omega: T) -> T {
        let pi = T::PI();
        let a = self.alpha;
        let w = match self.kind {
            WarpKind::Symmetric | WarpKind::Asymmetric => {
                let knot = self.knot().unwrap();
                let corner = a * knot;
                if omega <= corner {
                    omega / a
                } else if omega == pi {
                    pi
                } else {
                    knot + (omega - corner) * (pi - knot) / (pi - corner)
                }
            }
            WarpKind::Power => pi * (omega / pi).powf(a.recip()),
            WarpKind::Bilinear => bilinear(omega, -a),
            WarpKind::Quadratic => self.bisect(omega),
        };
        w.max(T::zero()).min(pi)
    }

    fn bisect(&self, target: T) -> T {
        let (mut lo, mut hi) = (T::zero(), T::PI());
        let tol = T::lit(BISECTION_TOLERANCE);
        let half = T::lit(0.5);
        for _ in 0..BISECTION_MAX_ITERATIONS {
            if hi - lo <= tol {
                break;
            }
            let mid = half * (lo + hi);
            if self.map(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        half * (lo + hi)
    }

    fn is_monotone(&self) -> bool {
        let analytic = match self.kind {
            // second segment slope must stay positive
            WarpKind::Asymmetric => self.alpha * self.knot().unwrap() < T::PI(),
            // g' = 1 + (a/pi)(1 - 2w/pi) is positive on [0, pi] iff |a| <= pi
            WarpKind::Quadratic => self.alpha.abs() <= T::PI(),
            _ => true,
        };
        analytic
            && grid(MONOTONICITY_GRID)
                .map(|w: T| self.map(w))
                .collect::<Vec<_>>()
                .windows(2)
                .all(|p| p[0] < p[1])
    }
}

/// Free-function form of [`WarpSpec::value`].
pub fn warp_value<T: Real>(spec: &WarpSpec<T>, omega: T) -> Result<T> {
    spec.value(omega)
}

/// Free-function form of [`WarpSpec::inverse`].
pub fn warp_inverse<T: Real>(spec: &WarpSpec<T>, omega: T) -> Result<T> {
    spec.inverse(omega)
}

/// `count` evenly spaced points from 0 to pi inclusive.
pub fn grid<T: Real>(count: usize) -> impl Iterator<Item = T> {
    (0..count).map(move |i| {
        if i + 1 == count {
            T::PI()
        } else {
            T::PI() * T::of_usize(i) / T::of_usize(count - 1)
        }
    })
}

fn bilinear<T: Real>(omega: T, a: T) -> T {
    let two = T::lit(2.0);
    omega + two * (a * omega.sin()).atan2(T::one() - a * omega.cos())
}

fn check_omega<T: Real>(omega: T) -> Result<()> {
    if !(omega >= T::zero() && omega <= T::PI()) {
        return Err(Error::Parameter(format!("normalized frequency {omega} outside [0, pi]")));
    }
    Ok(())
}
