//! Model selection: which member of the two-parameter family is under test.

use crate::poly::Poly;
use crate::rational::{format_rational, sign_pow, Rational};
use crate::var::{Axis, ParamName};
use crate::Error;

/// The two parity branches carrying a central extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Odd `N` in three spatial dimensions.
    OddN3d,
    /// Even `N` in two spatial dimensions.
    EvenN2d,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::OddN3d => "odd-N-3d",
            Branch::EvenN2d => "even-N-2d",
        }
    }
}

/// The mass: symbolic by default so identities hold for every value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mass {
    Symbolic,
    Value(Rational),
}

/// `(N, d)` with the branch inferred from parity, plus the mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelConfig {
    n: u32,
    branch: Branch,
    mass: Mass,
}

impl ModelConfig {
    /// Validates the parity rule: odd `N` needs `d = 3`, even `N` needs `d = 2`.
    pub fn new(n: u32, dim: u8) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidModel("N must be positive".into()));
        }
        let branch = match (n % 2, dim) {
            (1, 3) => Branch::OddN3d,
            (0, 2) => Branch::EvenN2d,
            _ => {
                return Err(Error::InvalidModel(format!(
                "unsupported (N, dim) = ({n}, {dim}): need N odd with dim 3 or N even with dim 2"
            )))
            }
        };
        Ok(ModelConfig {
            n,
            branch,
            mass: Mass::Symbolic,
        })
    }

    pub fn with_mass(mut self, mass: Mass) -> Self {
        if let Mass::Value(r) = &mass {
            assert!(
                *r > Rational::from_integer(0.into()),
                "mass must be positive"
            );
        }
        self.mass = mass;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u8 {
        match self.branch {
            Branch::OddN3d => 3,
            Branch::EvenN2d => 2,
        }
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn axes(&self) -> impl Iterator<Item = Axis> {
        0..self.dim()
    }

    pub fn mass(&self) -> &Mass {
        &self.mass
    }

    pub fn mass_poly(&self) -> Poly {
        match &self.mass {
            Mass::Symbolic => Poly::param(ParamName::M),
            Mass::Value(r) => Poly::constant(r.clone()),
        }
    }

    pub fn inv_mass_poly(&self) -> Poly {
        match &self.mass {
            Mass::Symbolic => Poly::param_pow(ParamName::M, -1),
            Mass::Value(r) => Poly::constant(r.recip()),
        }
    }

    pub fn mass_string(&self) -> String {
        match &self.mass {
            Mass::Symbolic => "m".into(),
            Mass::Value(r) => format_rational(r),
        }
    }

    /// Highest phase-space level: `(N-1)/2` on the odd branch, `N/2` on the
    /// even branch (where the top coordinates have no independent momenta).
    pub fn top_phase_level(&self) -> u32 {
        match self.branch {
            Branch::OddN3d => (self.n - 1) / 2,
            Branch::EvenN2d => self.n / 2,
        }
    }

    /// Levels carrying a canonical `(q_k, p_k)` pair: `0..count`.
    pub fn canonical_pair_count(&self) -> u32 {
        match self.branch {
            Branch::OddN3d => (self.n - 1) / 2 + 1,
            Branch::EvenN2d => self.n / 2,
        }
    }

    /// Order of the free Lagrangian: `(N+1)/2` or `N/2 + 1`.
    pub fn lagrangian_order(&self) -> u32 {
        match self.branch {
            Branch::OddN3d => (self.n + 1) / 2,
            Branch::EvenN2d => self.n / 2 + 1,
        }
    }

    /// Sign carried by the level-`k` boost in the point transformations.
    pub fn boost_sign(&self, k: u32) -> Rational {
        let shift = match self.branch {
            Branch::OddN3d => (self.n as i64 + 1) / 2,
            Branch::EvenN2d => self.n as i64 / 2,
        };
        sign_pow(k as i64 - shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_rule() {
        assert!(ModelConfig::new(1, 3).is_ok());
        assert!(ModelConfig::new(7, 3).is_ok());
        assert!(ModelConfig::new(2, 2).is_ok());
        assert!(ModelConfig::new(2, 3).is_err());
        assert!(ModelConfig::new(3, 2).is_err());
        assert!(ModelConfig::new(0, 3).is_err());
    }

    #[test]
    fn derived_quantities() {
        let odd = ModelConfig::new(5, 3).unwrap();
        assert_eq!(odd.top_phase_level(), 2);
        assert_eq!(odd.canonical_pair_count(), 3);
        assert_eq!(odd.lagrangian_order(), 3);

        let even = ModelConfig::new(4, 2).unwrap();
        assert_eq!(even.top_phase_level(), 2);
        assert_eq!(even.canonical_pair_count(), 2);
        assert_eq!(even.lagrangian_order(), 3);
    }

    #[test]
    fn boost_signs() {
        let cfg = ModelConfig::new(3, 3).unwrap();
        // (-1)^(k-2) for N = 3
        assert_eq!(cfg.boost_sign(0), crate::rational::rat_int(1));
        assert_eq!(cfg.boost_sign(1), crate::rational::rat_int(-1));
        let even = ModelConfig::new(2, 2).unwrap();
        // (-1)^(k-1) for N = 2
        assert_eq!(even.boost_sign(0), crate::rational::rat_int(-1));
        assert_eq!(even.boost_sign(1), crate::rational::rat_int(1));
    }
}
