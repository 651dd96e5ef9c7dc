pub mod error;
pub mod extension;
pub mod gluing;
pub mod induction;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod realdata;
pub mod sample;
pub mod scheme;
pub mod surface;
pub mod text;
pub mod two_row;
pub mod verify;
pub mod worked;

pub use error::{IreError, Result, Side};

pub use extension::{FloatingExtension, NaturalExtension};
pub use gluing::{glue_ire, tree_map_eval, BranchRule, GluedTree};
pub use induction::{InductionStep, StepKind};
pub use rational::Rational;
pub use realdata::{Endpoints, Lengths};
pub use scheme::{Ext, Label, Scheme};
pub use surface::{build_surface, first_return_check, ZipperedSurface};
