pub mod corpus;
pub mod decide;
pub mod format;
pub mod ring;
pub mod skew;
