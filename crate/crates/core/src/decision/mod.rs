//! Tuple encodings, oracles, and the oracle-relative decision procedures.

mod encoding;
mod flowcharts;
mod oracle;

pub use encoding::{
    big_omega, decode_code, decode_tuple, encode_code, encode_tuple, factorize, gamma_member, pair,
    theta, unpair, Modulus, TupleCode,
};
pub use flowcharts::{
    conjectural_b, flowchart4_finiteness, flowchart5_solvability, flowchart6_finiteness_semidecide,
    flowchart7_nonneg_solvability, Event, FiniteSemi, Finiteness, Run, Solvability, Step,
    PROVIDER_MAX_HEIGHT,
};
pub use oracle::{
    Answer, EquationSpec, FiniteSetEnumerator, ListEnumerator, MockOracle, OracleConfig, OracleKind,
    SolvabilityOracle, TableEntry,
};
