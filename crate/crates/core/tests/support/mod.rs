#![allow(dead_code)]

pub mod problems;
pub mod props;
