//! The bundled `.syz` examples.

use crate::error::Result;
use crate::session::{parse_session, SessionSpec};

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub file: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn stem(&self) -> &'static str {
        self.file.trim_end_matches(".syz")
    }

    pub fn session(&self) -> Result<SessionSpec> {
        parse_session(self.text)
    }
}

macro_rules! entry {
    ($f:literal) => {
        CorpusEntry {
            file: $f,
            text: include_str!(concat!("../corpus/", $f)),
        }
    };
}

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("01_square_of_max.syz"),
    entry!("02_cubic_monomials.syz"),
    entry!("03_node.syz"),
    entry!("04_xy_x2.syz"),
    entry!("05_xy_x3.syz"),
    entry!("06_xy_x2_y3.syz"),
    entry!("07_cusp.syz"),
    entry!("08_x2_plus_xy.syz"),
    entry!("09_cube_of_max.syz"),
    entry!("10_x4_xy_y4.syz"),
    entry!("11_ci_x2_y2.syz"),
    entry!("12_ci_x3_y2.syz"),
    entry!("13_three_vars.syz"),
];

pub fn find(stem: &str) -> Option<CorpusEntry> {
    ENTRIES.iter().copied().find(|e| e.stem() == stem)
}
