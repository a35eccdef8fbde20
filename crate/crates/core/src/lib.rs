pub mod algebra;
pub mod classification;
pub mod fan2d;
pub mod fixed_points;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod polyhedra;
pub mod presentation;
pub mod qmath;
pub mod serial;
