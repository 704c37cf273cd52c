//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

pub mod checks;
pub mod oracle;
