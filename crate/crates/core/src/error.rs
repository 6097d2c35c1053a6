use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator evaluates to zero")]
    DenominatorZero,
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("constraint C(r+m,m) >= md-g+1 fails for (m,r,s)=({m},{r},{s})")]
    ConstraintViolation { m: u32, r: u32, s: u32 },
    #[error("psi-coefficient of the assembled class is {psi}, expected 0, at (m,r,s)=({m},{r},{s})")]
    AssemblyInvariantViolation { m: u32, r: u32, s: u32, psi: String },
    #[error("transcription {name} does not match its symbolic counterpart")]
    TranscriptionMismatch { name: String },
    #[error("transcription {name}: {reason}")]
    Transcription { name: String, reason: String },
    #[error("orbit dimension check failed: dim Hom = {hom} < dim GL x GL = {groups}")]
    DimensionCheckFailed { hom: String, groups: String },
    #[error("weight is not proportional to the expected class: {0}")]
    ProportionalityFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
