use std::fmt;

use orthoscalar_core::Error;

/// Exit codes are part of the command-line contract.
pub mod code {
    pub const PARSE: u8 = 2;
    pub const INVARIANT: u8 = 3;
    pub const NOT_BRICK: u8 = 4;
    pub const INADMISSIBLE: u8 = 5;
    pub const SOLVER: u8 = 6;
    pub const FUNCTOR: u8 = 7;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: code::PARSE,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Self {
            code: code::INVARIANT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidLabel(_) => code::PARSE,
            Error::NotBrick => code::NOT_BRICK,
            Error::InadmissibleCharacter(_) => code::INADMISSIBLE,
            Error::SolverFailed(_) | Error::NoIsomorphism | Error::SingularSum | Error::NotOrthoscalar(_) => {
                code::SOLVER
            }
            Error::NonpositiveHead(_) | Error::Annihilated | Error::NotSpanning | Error::NonpositiveWeight(_) => {
                code::FUNCTOR
            }
            _ => code::INVARIANT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}
