pub mod gf2;
pub mod ring;
pub mod gl;
pub mod ideal;
pub mod verify;
