#![allow(dead_code)]

pub mod ffield;
