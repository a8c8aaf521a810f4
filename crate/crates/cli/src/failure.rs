use e4c_core::engine::{EngineError, SolveConfig};
use e4c_core::instances::InstanceError;
use e4c_core::oracle::OracleError;
use e4c_core::replace::ReplaceError;
use e4c_core::PlanarEmbedding;

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn property(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    pub fn engine(e: EngineError, emb: &PlanarEmbedding, cfg: &SolveConfig) -> Self {
        match e {
            EngineError::NotEssentially4Connected(w) => {
                let w: Vec<String> = w.iter().map(usize::to_string).collect();
                Failure::property(format!("graph is not essentially 4-connected (separator {})", w.join(" ")))
            }
            EngineError::NoInitialCycleFound(n) if n > cfg.oracle.max_n_oi3 => Failure::usage(format!(
                "n = {n} exceeds --max-n-oi3 = {}; pass --initial",
                cfg.oracle.max_n_oi3
            )),
            EngineError::InitialCycleInvalid(_)
            | EngineError::CycleTooShortAtFixpoint(_)
            | EngineError::NoInitialCycleFound(_)
            | EngineError::Replace(ReplaceError::CycleTooShort(_)) => Failure::property(e.to_string()),
            EngineError::Oracle(o) => o.into(),
            EngineError::Replace(_) | EngineError::Internal(_) => {
                Failure::internal(format!("{e} (n = {})", emb.vertex_count()))
            }
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } | OracleError::InvalidConfig(_) | OracleError::BudgetExceeded(_) => {
                Failure::usage(e.to_string())
            }
            OracleError::PreconditionViolated(_) => Failure::property(e.to_string()),
            OracleError::Internal(_) => Failure::internal(e.to_string()),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::UnknownName(_) | InstanceError::InvalidParameter(_) => {
                Failure::usage(e.to_string())
            }
            InstanceError::GenerationInvalid(_) => Failure::property(e.to_string()),
            InstanceError::Embedding(_) => Failure::internal(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use e4c_core::instances::{named_graph, GraphName};

    #[test]
    fn engine_errors_map_to_codes() {
        let emb = named_graph(GraphName::K4).unwrap().embedding;
        let cfg = SolveConfig::default();
        let code = |e| Failure::engine(e, &emb, &cfg).code;
        assert_eq!(code(EngineError::NotEssentially4Connected(vec![0, 1, 2])), 1);
        assert_eq!(code(EngineError::NoInitialCycleFound(12)), 1);
        assert_eq!(code(EngineError::NoInitialCycleFound(40)), 2);
        assert_eq!(code(EngineError::Oracle(OracleError::TooLarge { n: 40, limit: 18 })), 2);
        assert_eq!(code(EngineError::Replace(ReplaceError::StaleInstance("x".into()))), 3);
        assert_eq!(code(EngineError::Internal("x".into())), 3);
    }
}
