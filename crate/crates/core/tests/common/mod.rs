//! Independent reference implementations used only by the test suites.

#![allow(dead_code)]

pub mod oracles;
