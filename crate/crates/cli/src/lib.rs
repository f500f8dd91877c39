//! Session-file front end: parsing, command dispatch, result documents and
//! benchmark tables.

pub mod bench;
pub mod document;
pub mod run;
pub mod session;

pub use bench::{bench_report, BenchReport, Suite};
pub use document::ResultDocument;
pub use run::{reverify, run_command, RunError, RunFlags};
pub use session::{load_session, parse_session, Session, SessionError};
