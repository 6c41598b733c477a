//! Weight enumerators of linear codes over small finite fields and the groups
//! of linear substitutions that fix them.

pub mod code;
pub mod gf;
pub mod wpoly;
pub mod roots;
pub mod symgroup;
pub mod invring;
pub mod classify;
pub mod tables;
