//! Structural-rule configuration: which context classes admit copying and
//! discarding, plus the adjoint-shift gates of the LNL presets.

use std::fmt;
use std::str::FromStr;

use super::ty::Polarity;

/// Whether a context is a typechecker input (checkable) or output
/// (synthesisable). Together with a polarity this names one of the four
/// System L context classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Checkable,
    Synthesisable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Linear,
    Cartesian,
    LnlBang,
    LnlFull,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Linear => "linear",
            Preset::Cartesian => "cartesian",
            Preset::LnlBang => "lnl-bang",
            Preset::LnlFull => "lnl-full",
        })
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(Preset::Linear),
            "cartesian" => Ok(Preset::Cartesian),
            "lnl-bang" => Ok(Preset::LnlBang),
            "lnl-full" => Ok(Preset::LnlFull),
            other => Err(format!("unknown preset `{other}`")),
        }
    }
}

/// Cartesian flags per context class. The lambda calculi have a single
/// context and therefore a single flag; System L has one flag per class:
/// positive input, positive output, negative input, negative output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructConfig {
    pub preset: Preset,
    pub lambda_cartesian: bool,
    /// Positive input context (synthesisable side).
    pub gamma_pos: bool,
    /// Positive output context (checkable side).
    pub delta_pos: bool,
    /// Negative input context (checkable side).
    pub gamma_neg: bool,
    /// Negative output context (synthesisable side).
    pub delta_neg: bool,
    /// Adjoint upshift forms admitted.
    pub allow_up_adjoint: bool,
    /// Adjoint downshift forms admitted.
    pub allow_down_adjoint: bool,
}

pub const LINEAR: StructConfig = StructConfig {
    preset: Preset::Linear,
    lambda_cartesian: false,
    gamma_pos: false,
    delta_pos: false,
    gamma_neg: false,
    delta_neg: false,
    allow_up_adjoint: false,
    allow_down_adjoint: false,
};

pub const CARTESIAN: StructConfig = StructConfig {
    preset: Preset::Cartesian,
    lambda_cartesian: true,
    gamma_pos: true,
    delta_pos: true,
    gamma_neg: true,
    delta_neg: true,
    allow_up_adjoint: false,
    allow_down_adjoint: false,
};

/// Copying and discarding only for negative input contexts, admitting the
/// adjoint upshift and hence the derived `!`.
pub const LNL_BANG: StructConfig = StructConfig {
    preset: Preset::LnlBang,
    lambda_cartesian: false,
    gamma_pos: false,
    delta_pos: false,
    gamma_neg: true,
    delta_neg: false,
    allow_up_adjoint: true,
    allow_down_adjoint: false,
};

/// Negative input and positive output contexts structural, admitting both
/// adjoint shifts and hence `!` and `?`.
pub const LNL_FULL: StructConfig = StructConfig {
    preset: Preset::LnlFull,
    lambda_cartesian: false,
    gamma_pos: false,
    delta_pos: true,
    gamma_neg: true,
    delta_neg: false,
    allow_up_adjoint: true,
    allow_down_adjoint: true,
};

impl StructConfig {
    pub fn preset(p: Preset) -> StructConfig {
        match p {
            Preset::Linear => LINEAR,
            Preset::Cartesian => CARTESIAN,
            Preset::LnlBang => LNL_BANG,
            Preset::LnlFull => LNL_FULL,
        }
    }

    /// Whether the class named by side and polarity admits the cartesian
    /// rules (copying in covers, discarding in thinnings).
    pub fn structural(&self, side: Side, pol: Polarity) -> bool {
        match (side, pol) {
            (_, Polarity::Unpolarised) => self.lambda_cartesian,
            (Side::Synthesisable, Polarity::Positive) => self.gamma_pos,
            (Side::Checkable, Polarity::Positive) => self.delta_pos,
            (Side::Checkable, Polarity::Negative) => self.gamma_neg,
            (Side::Synthesisable, Polarity::Negative) => self.delta_neg,
        }
    }
}
