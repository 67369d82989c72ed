use hyperheat::classify::ClassifyError;
use hyperheat::duality::DualityError;
use hyperheat::io::IoError;
use hyperheat::semigroup::SemigroupError;
use hyperheat::spectra::SpectraError;
use hyperheat::surgery::SurgeryError;
use hyperheat::HypergraphError;
use thiserror::Error;

/// Exit code 2.
pub const EXIT_INPUT: u8 = 2;
/// Exit code 3.
pub const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Numeric(_) => "numeric",
        }
    }
}

fn spectra_is_numeric(e: &SpectraError) -> bool {
    matches!(e, SpectraError::NoConvergence { .. } | SpectraError::NonFinite(..))
}

fn classify_is_numeric(e: &ClassifyError) -> bool {
    matches!(e, ClassifyError::Spectra(s) if spectra_is_numeric(s))
}

fn split(numeric: bool, msg: String) -> CliError {
    if numeric {
        CliError::Numeric(msg)
    } else {
        CliError::Input(msg)
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        split(spectra_is_numeric(&e), e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        split(classify_is_numeric(&e), e.to_string())
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        let numeric = matches!(&e, SurgeryError::Spectra(s) if spectra_is_numeric(s));
        split(numeric, e.to_string())
    }
}

impl From<DualityError> for CliError {
    fn from(e: DualityError) -> Self {
        let numeric = match &e {
            DualityError::Spectra(s) => spectra_is_numeric(s),
            DualityError::Classify(c) => classify_is_numeric(c),
            _ => false,
        };
        split(numeric, e.to_string())
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HypergraphError> for CliError {
    fn from(e: HypergraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
