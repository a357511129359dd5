pub mod action;
pub mod catalog;
pub mod cylinders;
pub mod flow;
pub mod lattice;
pub mod lshape;
pub mod origami;
pub mod perm;
pub mod quadfield;
