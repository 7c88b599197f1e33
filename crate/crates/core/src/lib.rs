pub mod bialg;
pub mod endcroc;
pub mod mho;
pub mod qlinalg;
pub mod quillen;
pub mod strata;
