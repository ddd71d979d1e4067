//! Exact construction of Schur superfunctors, Schur superalgebras and their characters.

pub mod exactalg;
pub mod supercore;
pub mod shapes;
pub mod hopf;
pub mod schurfun;
pub mod schuralg;
pub mod chars;
pub mod verify;
