//! The variable universe shared by every polynomial in the crate.
//!
//! Variables carry a *kind*: the time coordinate, jet coordinates `q^{(n)}`
//! living on configuration space, canonical phase-space pairs `(q_k, p_k)`,
//! and symbolic group/model parameters. Only parameters may appear with
//! negative (Laurent) exponents, so identities proved here hold for every
//! value of the parameters at once.

use std::fmt;

/// Spatial component index, zero based. Components display as `x`, `y`, `z`.
pub type Axis = u8;

/// Display letter of a spatial component.
pub fn axis_letter(a: Axis) -> char {
    match a {
        0 => 'x',
        1 => 'y',
        2 => 'z',
        _ => panic!("axis out of range: {a}"),
    }
}

/// Symbolic parameters: the mass and the group parameters of the various
/// one-parameter subgroups. These are the Laurent variables of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamName {
    /// Mass `m` (also the value of the central generator in this realization).
    M,
    /// Conformal parameter `c`.
    C,
    /// Time-shift parameter `tau`.
    Tau,
    /// Dilation parameter `sigma` (time rescales by `sigma^2`).
    Sigma,
    /// Generic infinitesimal parameter `eps`.
    Eps,
    /// Boost parameter component `x[level][axis]`.
    X { level: u32, axis: Axis },
    /// Rotation parameter about the given axis.
    Omega(Axis),
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamName::M => write!(f, "m"),
            ParamName::C => write!(f, "c"),
            ParamName::Tau => write!(f, "tau"),
            ParamName::Sigma => write!(f, "sigma"),
            ParamName::Eps => write!(f, "eps"),
            ParamName::X { level, axis } => write!(f, "x{}{}", level, axis_letter(*axis)),
            ParamName::Omega(axis) => write!(f, "omega_{}", axis_letter(*axis)),
        }
    }
}

/// A single variable of the ring.
///
/// The derived ordering (kind, then order/level, then component) fixes the
/// canonical monomial order used everywhere, so equality of polynomials is
/// structural and serialized output is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// The time coordinate `t`.
    Time,
    /// Jet coordinate `q^{(order)}`, component `axis`.
    Jet { order: u32, axis: Axis },
    /// Phase-space coordinate `q_level`, component `axis`.
    PhaseQ { level: u32, axis: Axis },
    /// Phase-space momentum `p_level`, component `axis`.
    PhaseP { level: u32, axis: Axis },
    /// Symbolic parameter.
    Param(ParamName),
}

impl VarId {
    pub fn jet(order: u32, axis: Axis) -> Self {
        VarId::Jet { order, axis }
    }

    pub fn phase_q(level: u32, axis: Axis) -> Self {
        VarId::PhaseQ { level, axis }
    }

    pub fn phase_p(level: u32, axis: Axis) -> Self {
        VarId::PhaseP { level, axis }
    }

    pub fn is_param(&self) -> bool {
        matches!(self, VarId::Param(_))
    }

    pub fn is_phase(&self) -> bool {
        matches!(self, VarId::PhaseQ { .. } | VarId::PhaseP { .. })
    }

    pub fn is_jet(&self) -> bool {
        matches!(self, VarId::Jet { .. })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Time => write!(f, "t"),
            VarId::Jet { order, axis } => write!(f, "q{}{}", order, axis_letter(*axis)),
            VarId::PhaseQ { level, axis } => write!(f, "Q{}{}", level, axis_letter(*axis)),
            VarId::PhaseP { level, axis } => write!(f, "P{}{}", level, axis_letter(*axis)),
            VarId::Param(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_groups_by_kind() {
        let t = VarId::Time;
        let q = VarId::jet(0, 0);
        let bigq = VarId::phase_q(0, 0);
        let p = VarId::phase_p(0, 0);
        let m = VarId::Param(ParamName::M);
        assert!(t < q && q < bigq && bigq < p && p < m);
        assert!(VarId::jet(1, 0) < VarId::jet(1, 1));
        assert!(VarId::jet(1, 2) < VarId::jet(2, 0));
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(VarId::jet(2, 0).to_string(), "q2x");
        assert_eq!(VarId::phase_p(1, 2).to_string(), "P1z");
        assert_eq!(
            VarId::Param(ParamName::X { level: 3, axis: 1 }).to_string(),
            "x3y"
        );
    }
}
