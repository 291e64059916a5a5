use o2deg::burnside::BurnsideError;
use o2deg::degrees::DegreeError;
use o2deg::finite_group::GroupError;
use o2deg::o2_lattice::LatticeError;
use o2deg::pendula::PendulaError;
use o2deg::representations::ReprError;
use o2deg_galerkin::GalerkinError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: exit 2.
    #[error("{module}: {message}")]
    Validation { module: &'static str, message: String },
    /// Valid input the computation could not finish: exit 3.
    #[error("{module}: {message}")]
    Computation { module: &'static str, message: String },
}

impl CliError {
    pub fn validation(module: &'static str, message: impl Into<String>) -> Self {
        Self::Validation { module, message: message.into() }
    }

    pub fn computation(module: &'static str, message: impl Into<String>) -> Self {
        Self::Computation { module, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation { .. } => 2,
            Self::Computation { .. } => 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        Self::validation("finite-group", e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Unenumerable | LatticeError::InfiniteWeyl(_) => Self::computation("o2-lattice", e.to_string()),
            LatticeError::Group(g) => g.into(),
            _ => Self::validation("o2-lattice", e.to_string()),
        }
    }
}

impl From<ReprError> for CliError {
    fn from(e: ReprError) -> Self {
        match e {
            ReprError::Lattice(l) => l.into(),
            ReprError::NonIntegral(_) => Self::computation("representations", e.to_string()),
            _ => Self::validation("representations", e.to_string()),
        }
    }
}

impl From<BurnsideError> for CliError {
    fn from(e: BurnsideError) -> Self {
        match e {
            BurnsideError::Lattice(l) => l.into(),
            BurnsideError::LatticeIncomplete(_) => Self::computation("burnside", e.to_string()),
        }
    }
}

impl From<DegreeError> for CliError {
    fn from(e: DegreeError) -> Self {
        match e {
            DegreeError::Repr(r) => r.into(),
            DegreeError::Burnside(b) => b.into(),
            _ => Self::validation("degrees", e.to_string()),
        }
    }
}

impl From<PendulaError> for CliError {
    fn from(e: PendulaError) -> Self {
        match e {
            PendulaError::Degree(d) => d.into(),
            _ => Self::validation("pendula", e.to_string()),
        }
    }
}

impl From<GalerkinError> for CliError {
    fn from(e: GalerkinError) -> Self {
        match e {
            GalerkinError::Lattice(l) => l.into(),
            GalerkinError::Pendula(p) => p.into(),
            GalerkinError::Convergence { .. } => Self::computation("galerkin", e.to_string()),
            _ => Self::validation("galerkin", e.to_string()),
        }
    }
}
