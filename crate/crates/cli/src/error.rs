use std::fmt;

/// Exit-code classes: 2 parse, 3 validation, 4 range, 5 internal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Parse,
    Validation,
    Range,
    Internal,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Parse => 2,
            Kind::Validation => 3,
            Kind::Range => 4,
            Kind::Internal => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> CliError {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn parse_at(line: usize, column: usize, message: impl fmt::Display) -> CliError {
        CliError::new(Kind::Parse, format!("parse error at line {line}, column {column}: {message}"))
    }

    pub fn context(self, ctx: impl fmt::Display) -> CliError {
        CliError {
            kind: self.kind,
            message: format!("{ctx}: {}", self.message),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<dlf::Error> for CliError {
    fn from(e: dlf::Error) -> CliError {
        use dlf::Error as E;
        let kind = match &e {
            E::Parse { .. } => Kind::Parse,
            E::Range(_) => Kind::Range,
            E::Internal(_) => Kind::Internal,
            E::Domain(_) | E::Singular(_) | E::Validation(_) | E::Centrality(_) | E::Cyclicity(_) => Kind::Validation,
        };
        CliError::new(kind, e.to_string())
    }
}

pub trait Context<T> {
    fn context(self, ctx: impl fmt::Display) -> CliResult<T>;
}

impl<T, E: Into<CliError>> Context<T> for std::result::Result<T, E> {
    fn context(self, ctx: impl fmt::Display) -> CliResult<T> {
        self.map_err(|e| e.into().context(ctx))
    }
}
