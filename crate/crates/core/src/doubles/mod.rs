//! Finite groups, 3-cocycles and the data attached to twisted doubles.

mod cocycle;
mod cohomology;
mod ep3;
mod group;
mod obstruction;
mod spec;

pub use cocycle::*;
pub use cohomology::*;
pub use ep3::*;
pub use group::*;
pub use obstruction::*;
pub use spec::*;
