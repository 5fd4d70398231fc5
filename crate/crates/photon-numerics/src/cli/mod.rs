//! (under construction)
pub fn run() {}
