//! Exact solution of the one-dimensional Riemann problem for an ideal gas.
//!
//! Used only as a reference for shock-tube errors. Star pressure by Newton
//! iteration on the standard pressure function; the solution is sampled in
//! the similarity variable `ξ = (x - x0) / t`.

use crate::error::{Error, Result};

/// A one-dimensional primitive state `(ρ, u, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gas1d {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl Gas1d {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        Gas1d { rho, u, p }
    }
}

#[derive(Clone, Debug)]
pub struct ExactRiemann {
    gamma: f64,
    left: Gas1d,
    right: Gas1d,
    p_star: f64,
    u_star: f64,
}

impl ExactRiemann {
    pub fn new(gamma: f64, left: Gas1d, right: Gas1d) -> Result<Self> {
        for s in [left, right] {
            if !(s.rho > 0.0 && s.p > 0.0) {
                return Err(Error::Config(format!("Riemann data must have positive density and pressure: {s:?}")));
            }
        }
        let g = gamma;
        let (al, ar) = ((g * left.p / left.rho).sqrt(), (g * right.p / right.rho).sqrt());
        if 2.0 / (g - 1.0) * (al + ar) <= right.u - left.u {
            return Err(Error::Unsupported("Riemann data generates vacuum".into()));
        }
        let mut solver = ExactRiemann {
            gamma,
            left,
            right,
            p_star: 0.0,
            u_star: 0.0,
        };
        let du = right.u - left.u;
        let mut p = (0.5 * (left.p + right.p)).max(1e-8);
        for _ in 0..100 {
            let (fl, dl) = solver.pressure_fn(p, &left);
            let (fr, dr) = solver.pressure_fn(p, &right);
            let next = (p - (fl + fr + du) / (dl + dr)).max(1e-14);
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < 1e-15 {
                break;
            }
        }
        let (fl, _) = solver.pressure_fn(p, &left);
        let (fr, _) = solver.pressure_fn(p, &right);
        solver.p_star = p;
        solver.u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
        Ok(solver)
    }

    /// Pressure and velocity of the star region.
    pub fn star(&self) -> (f64, f64) {
        (self.p_star, self.u_star)
    }

    fn pressure_fn(&self, p: f64, s: &Gas1d) -> (f64, f64) {
        let g = self.gamma;
        let a = (g * s.p / s.rho).sqrt();
        if p > s.p {
            let big_a = 2.0 / ((g + 1.0) * s.rho);
            let big_b = (g - 1.0) / (g + 1.0) * s.p;
            let q = (big_a / (p + big_b)).sqrt();
            ((p - s.p) * q, q * (1.0 - 0.5 * (p - s.p) / (big_b + p)))
        } else {
            let r = p / s.p;
            let e = (g - 1.0) / (2.0 * g);
            (
                2.0 * a / (g - 1.0) * (r.powf(e) - 1.0),
                1.0 / (s.rho * a) * r.powf(-(g + 1.0) / (2.0 * g)),
            )
        }
    }

    /// Solution at similarity coordinate `xi = (x - x0) / t`.
    pub fn sample(&self, xi: f64) -> Gas1d {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        let gm = (g - 1.0) / (g + 1.0);
        if xi <= us {
            let s = self.left;
            let a = (g * s.p / s.rho).sqrt();
            if ps > s.p {
                let shock = s.u - a * ((g + 1.0) / (2.0 * g) * ps / s.p + (g - 1.0) / (2.0 * g)).sqrt();
                if xi <= shock {
                    s
                } else {
                    let r = ps / s.p;
                    Gas1d::new(s.rho * (r + gm) / (gm * r + 1.0), us, ps)
                }
            } else {
                let a_star = a * (ps / s.p).powf((g - 1.0) / (2.0 * g));
                if xi <= s.u - a {
                    s
                } else if xi >= us - a_star {
                    Gas1d::new(s.rho * (ps / s.p).powf(1.0 / g), us, ps)
                } else {
                    let c = 2.0 / (g + 1.0) + gm / a * (s.u - xi);
                    Gas1d::new(
                        s.rho * c.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * s.u + xi),
                        s.p * c.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        } else {
            let s = self.right;
            let a = (g * s.p / s.rho).sqrt();
            if ps > s.p {
                let shock = s.u + a * ((g + 1.0) / (2.0 * g) * ps / s.p + (g - 1.0) / (2.0 * g)).sqrt();
                if xi >= shock {
                    s
                } else {
                    let r = ps / s.p;
                    Gas1d::new(s.rho * (r + gm) / (gm * r + 1.0), us, ps)
                }
            } else {
                let a_star = a * (ps / s.p).powf((g - 1.0) / (2.0 * g));
                if xi >= s.u + a {
                    s
                } else if xi <= us + a_star {
                    Gas1d::new(s.rho * (ps / s.p).powf(1.0 / g), us, ps)
                } else {
                    let c = 2.0 / (g + 1.0) - gm / a * (s.u - xi);
                    Gas1d::new(
                        s.rho * c.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * s.u + xi),
                        s.p * c.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        }
    }
}
