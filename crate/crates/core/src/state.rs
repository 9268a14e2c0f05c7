//! Fixed-size state vectors and coordinate axes.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Coordinate direction of a flux or a difference operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// A vector of `M` conservative variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State<const M: usize>(pub [f64; M]);

impl<const M: usize> State<M> {
    pub const fn zero() -> Self {
        State([0.0; M])
    }

    pub const fn splat(v: f64) -> Self {
        State([v; M])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Largest component magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        State(self.0.map(f))
    }

    pub fn zip_map(self, other: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = self;
        for (o, b) in out.0.iter_mut().zip(other.0) {
            *o = f(*o, b);
        }
        out
    }

    /// `a*self + b*other` evaluated componentwise.
    #[inline]
    pub fn lincomb(self, a: f64, other: Self, b: f64) -> Self {
        let mut out = self;
        for k in 0..M {
            out.0[k] = a * self.0[k] + b * other.0[k];
        }
        out
    }
}

impl<const M: usize> Default for State<M> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const M: usize> From<[f64; M]> for State<M> {
    fn from(v: [f64; M]) -> Self {
        State(v)
    }
}

impl<const M: usize> Index<usize> for State<M> {
    type Output = f64;
    #[inline]
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl<const M: usize> IndexMut<usize> for State<M> {
    #[inline]
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        &mut self.0[k]
    }
}

impl<const M: usize> Add for State<M> {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        for k in 0..M {
            self.0[k] += rhs.0[k];
        }
        self
    }
}

impl<const M: usize> Sub for State<M> {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        for k in 0..M {
            self.0[k] -= rhs.0[k];
        }
        self
    }
}

impl<const M: usize> Neg for State<M> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.map(|v| -v)
    }
}

impl<const M: usize> Mul<f64> for State<M> {
    type Output = Self;
    #[inline]
    fn mul(mut self, a: f64) -> Self {
        for k in 0..M {
            self.0[k] *= a;
        }
        self
    }
}

impl<const M: usize> Mul<State<M>> for f64 {
    type Output = State<M>;
    #[inline]
    fn mul(self, u: State<M>) -> State<M> {
        u * self
    }
}

impl<const M: usize> AddAssign for State<M> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        for k in 0..M {
            self.0[k] += rhs.0[k];
        }
    }
}

impl<const M: usize> SubAssign for State<M> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        for k in 0..M {
            self.0[k] -= rhs.0[k];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_is_componentwise() {
        let a = State([1.0, -2.0, 3.0]);
        let b = State([0.5, 4.0, -1.0]);
        assert_eq!(a + b, State([1.5, 2.0, 2.0]));
        assert_eq!(a - b, State([0.5, -6.0, 4.0]));
        assert_eq!(2.0 * a, a * 2.0);
        assert_eq!(-a, State([-1.0, 2.0, -3.0]));
        assert_eq!(a.norm_inf(), 3.0);
        let mut c = a;
        c += b;
        c -= b;
        assert_eq!(c, a);
        assert_eq!(a.zip_map(b, f64::max), State([1.0, 4.0, 3.0]));
        assert!(!State([1.0, f64::NAN]).is_finite());
        assert_eq!(Axis::X.other(), Axis::Y);
    }

    proptest! {
        #[test]
        fn lincomb_matches_operators(a in -10.0..10.0f64, b in -10.0..10.0f64,
                                     u in prop::array::uniform4(-1e3..1e3f64),
                                     v in prop::array::uniform4(-1e3..1e3f64)) {
            let (u, v) = (State(u), State(v));
            prop_assert_eq!(u.lincomb(a, v, b), u * a + v * b);
        }
    }
}
