pub mod arith;
pub mod constructions;
pub mod error;
pub mod gabber;
pub mod graded_a;
pub mod grlambda;
pub mod grouprep;
pub mod homalg;
pub mod linalg;
pub mod quat;
pub mod rng;
pub mod witt_oracle;
