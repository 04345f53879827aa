pub mod algebra;
pub mod field;
pub mod fundamental;
pub mod gluing;
pub mod lie;
pub mod linalg;
pub mod quiver;
pub mod strametz;
pub mod higher;
pub mod format;
pub mod corpus;
pub mod verify;
