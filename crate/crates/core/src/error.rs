use thiserror::Error;

use crate::group::GroupError;
use crate::numbers::NumberError;
use crate::presentation::PresentationError;
use crate::wedderburn::WedderburnError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Any failure surfaced by the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error(transparent)]
    Wedderburn(#[from] WedderburnError),
}

impl Error {
    /// Short hint printed by the CLI next to the error message.
    pub fn remediation(&self) -> &'static str {
        match self {
            Error::Presentation(PresentationError::Syntax { .. }) => {
                "check the group-spec grammar in docs/group-spec.md"
            }
            Error::Group(GroupError::GroupTooLarge { .. }) => {
                "raise --max-order, or split off elementary abelian 2-factors with `x C2^k`"
            }
            Error::Wedderburn(WedderburnError::NotStronglyMonomial { .. }) => {
                "the group is not strongly monomial; only strongly monomial groups are supported"
            }
            Error::Presentation(PresentationError::CosetOverflow { .. }) => {
                "the presentation may define an infinite group; add relators or raise the coset cap"
            }
            _ => "see the error message for the offending input",
        }
    }
}
