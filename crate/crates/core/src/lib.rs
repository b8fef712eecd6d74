//! Irredundant-base statistics for permutation actions of finite groups of Lie type.
//!
//! Groups are enumerated explicitly as (semi)linear matrix groups over small
//! finite fields, so everything here is exact but limited to groups with at most
//! a few million elements.

pub mod cache;
pub mod chainstats;
pub mod config;
pub mod error;
pub mod ffield;
pub mod gaction;
pub mod grp;
pub mod liebounds;
pub mod verify;

pub use config::Limits;
pub use error::{Error, Result};
