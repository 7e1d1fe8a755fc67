pub mod braid;
pub mod cohomology;
pub mod coxeter;
pub mod hecke;
pub mod rings;
