//! Claim-by-claim verification with explicit thresholds, witnesses and
//! counterexamples.

mod apex;
mod audit;
mod report;
mod verify;

pub use apex::{
    table1, ApexCover, ApexDecomposition, LevelCheck, LevelFailure, TABLE1_COVER, TABLE1_HYPERGRAPH,
};
pub use audit::{default_corpus, run_audit, ApexSource, AuditTask};
pub use report::{
    overall_status, Check, ClaimId, ReportBuilder, Status, VerificationReport, SCHEMA_VERSION,
};
pub use verify::{random_cover, Verifier, VerifyOptions, CERTIFICATE_WINDOW};
