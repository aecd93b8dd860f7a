//! mdbook cannot run code blocks that depend on an external crate, so each
//! chapter is pulled in here as a module doc and `cargo test --doc` runs its
//! snippets. A failure names the module, which names the chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/encodings.md")]
pub mod encodings {}
#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}
#[doc = include_str!("../../../book/src/scaling.md")]
pub mod scaling {}
#[doc = include_str!("../../../book/src/kinematics.md")]
pub mod kinematics {}
#[doc = include_str!("../../../book/src/design.md")]
pub mod design {}
#[doc = include_str!("../../../book/src/displays.md")]
pub mod displays {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
