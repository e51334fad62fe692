use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, GaussianRational, Rational};
use crate::quiver::DimVector;

/// Central charge on the vertex simples, `Z(S_i)` with `Im Z(S_i) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParameter {
    charges: Vec<GaussianRational>,
}

impl StabilityParameter {
    pub fn new(charges: Vec<GaussianRational>) -> Result<Self> {
        if let Some((i, z)) = charges.iter().enumerate().find(|(_, z)| !z.im.is_positive()) {
            return Err(Error::InvalidArgument(format!("charge {z} at vertex {i} must have positive imaginary part")));
        }
        Ok(Self { charges })
    }

    /// `Z(S_i) = i` at every vertex: every nonzero representation has slope zero.
    pub fn equal(k: usize) -> Self {
        Self { charges: vec![GaussianRational::from_ints(0, 1); k] }
    }

    /// Charges `Z(E_i) = −m_i + (B + iω)β_i` read off a table of `(β_i, m_i)`.
    pub fn from_sheaf_table(table: &[(Rational, Rational)], b: &Rational, omega: &Rational) -> Result<Self> {
        let charges = table
            .iter()
            .map(|(beta, m)| GaussianRational::new(-m.clone() + b.clone() * beta, omega.clone() * beta))
            .collect();
        Self::new(charges)
    }

    pub fn charges(&self) -> &[GaussianRational] {
        &self.charges
    }

    pub fn vertex_count(&self) -> usize {
        self.charges.len()
    }

    /// `Z(d) = Σ d_i Z(S_i)`.
    pub fn central_charge(&self, dims: &DimVector) -> Result<GaussianRational> {
        self.check_len(dims)?;
        let mut z = <GaussianRational as Field>::zero();
        for (&m, c) in dims.0.iter().zip(&self.charges) {
            z += &c.scale(&Rational::from_integer((m as i64).into()));
        }
        Ok(z)
    }

    /// `μ(d) = −Re Z(d) / Im Z(d)`.
    pub fn slope(&self, dims: &DimVector) -> Result<Rational> {
        if dims.is_zero() {
            return Err(Error::InvalidArgument("slope of the zero dimension vector".into()));
        }
        let z = self.central_charge(dims)?;
        Ok(-z.re / z.im)
    }

    /// Multiply every charge by a positive rational.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidArgument("scaling factor must be positive".into()));
        }
        Ok(Self { charges: self.charges.iter().map(|z| z.scale(c)).collect() })
    }

    /// `Im(Z(sub) · conj Z(whole))`; positive exactly when `μ(sub) > μ(whole)`.
    pub fn wall_value(&self, sub: &DimVector, whole: &DimVector) -> Result<Rational> {
        let a = self.central_charge(sub)?;
        let b = self.central_charge(whole)?;
        Ok(a.im * &b.re - a.re * &b.im)
    }

    /// Compare `μ(sub)` with `μ(whole)` without dividing.
    pub fn compare(&self, sub: &DimVector, whole: &DimVector) -> Result<Ordering> {
        Ok(self.wall_value(sub, whole)?.cmp(&<Rational as Zero>::zero()))
    }

    fn check_len(&self, dims: &DimVector) -> Result<()> {
        if dims.len() != self.charges.len() {
            return Err(Error::ShapeMismatch(format!(
                "dimension vector of length {} against {} charges",
                dims.len(),
                self.charges.len()
            )));
        }
        Ok(())
    }
}

/// The wall through `d′` for a fixed `d`, in the form printed by reports.
pub fn wall_equation(sub: &DimVector, whole: &DimVector) -> String {
    format!("Im(Z{sub}·conj(Z{whole})) = 0")
}
