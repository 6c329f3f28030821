use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation of degree {degree}: {reason}")]
    BadPermutation { degree: usize, reason: String },

    #[error("closure exceeds order bound {bound}")]
    OrderBound { bound: usize },

    #[error("unknown builtin group name `{0}`")]
    UnknownBuiltin(String),

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),

    #[error("homomorphism property violated: {0}")]
    BadHom(String),

    #[error("groupoid axiom violated: {0}")]
    GroupoidAxiom(String),

    #[error("functor property violated: {0}")]
    BadFunctor(String),

    #[error("naturality violated at object {object}")]
    BadNaturality { object: usize },

    #[error("not a strict group action: {0}")]
    BadAction(String),

    #[error("not a fibration: object {object}, base morphism {base_mor} has {lifts} lifts")]
    NotFibration {
        object: usize,
        base_mor: usize,
        lifts: usize,
    },

    #[error("enumeration bound exceeded ({0})")]
    BoundExceeded(String),

    #[error("cochain error: {0}")]
    Cochain(String),

    #[error("cocycle identity fails at {0}")]
    NotCocycle(String),

    #[error("coefficient module error: {0}")]
    CoeffModule(String),

    #[error("Schur multiplier routes disagree: route A {route_a:?}, route B {route_b:?}")]
    RouteDisagreement {
        route_a: Vec<u64>,
        route_b: Vec<u64>,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
