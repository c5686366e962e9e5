pub mod build;
pub mod check;
pub mod sig;
pub mod sim;
