pub mod algebra;
pub mod bracket;
pub mod derivation;
pub mod divergence;
pub mod error;
pub mod forms;
pub mod io;
pub mod linear;
pub mod mu;
pub mod parse;
pub mod random;
pub mod surface;
pub mod tensor;
pub mod tensoralg;
pub mod word;
pub mod verify;
