pub mod blowup;
pub mod field;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod projection;
pub mod rees;
pub mod runner;
pub mod scene;
pub mod trace;
pub mod value;
