pub mod catalog;
pub mod derivations;
pub mod error;
pub mod extensions;
pub mod format;
pub mod levi;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;
pub mod subspace;
pub mod table;
