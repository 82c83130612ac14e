//! Sprouts shipped with the crate.
//!
//! `interval2` and `vicsek5` are the sprouts of the two-piece interval system
//! and the five-piece Vicsek cross. The `fig*` sprouts are small examples that
//! exhibit one phenomenon each: a non-correct and a non-regular sprout, an
//! inadmissible sprout, a boundary point with uncountably many addresses, and
//! sprouts whose main trees carry boundary cut points and ramification points.

use crate::sprout::Sprout;

pub const INTERVAL2: &str = include_str!("../fixtures/interval2.json");
pub const INTERVAL2_RELABELED: &str = include_str!("../fixtures/interval2-relabeled.json");
pub const VICSEK5: &str = include_str!("../fixtures/vicsek5.json");
pub const VICSEK5_ALTERED: &str = include_str!("../fixtures/vicsek5-altered.json");
pub const FIG1: &str = include_str!("../fixtures/fig1.json");
pub const FIG2_LEFT: &str = include_str!("../fixtures/fig2L.json");
pub const FIG2_RIGHT: &str = include_str!("../fixtures/fig2R.json");
pub const FIG3: &str = include_str!("../fixtures/fig3.json");
pub const FIG4: &str = include_str!("../fixtures/fig4.json");
pub const FIG6: &str = include_str!("../fixtures/fig6.json");
pub const FIG7: &str = include_str!("../fixtures/fig7.json");

pub const INTERVAL_IFS: &str = include_str!("../fixtures/interval-ifs.json");
pub const VICSEK_IFS: &str = include_str!("../fixtures/vicsek-ifs.json");

fn load(text: &str) -> Sprout {
    Sprout::parse(text).expect("shipped fixture parses")
}

pub fn interval2() -> Sprout {
    load(INTERVAL2)
}

pub fn interval2_relabeled() -> Sprout {
    load(INTERVAL2_RELABELED)
}

pub fn vicsek5() -> Sprout {
    load(VICSEK5)
}

pub fn vicsek5_altered() -> Sprout {
    load(VICSEK5_ALTERED)
}

pub fn fig1() -> Sprout {
    load(FIG1)
}

pub fn fig2_left() -> Sprout {
    load(FIG2_LEFT)
}

pub fn fig2_right() -> Sprout {
    load(FIG2_RIGHT)
}

pub fn fig3() -> Sprout {
    load(FIG3)
}

pub fn fig4() -> Sprout {
    load(FIG4)
}

pub fn fig6() -> Sprout {
    load(FIG6)
}

pub fn fig7() -> Sprout {
    load(FIG7)
}

/// Every shipped sprout with its file stem.
pub fn all() -> Vec<(&'static str, Sprout)> {
    vec![
        ("interval2", interval2()),
        ("interval2-relabeled", interval2_relabeled()),
        ("vicsek5", vicsek5()),
        ("vicsek5-altered", vicsek5_altered()),
        ("fig1", fig1()),
        ("fig2L", fig2_left()),
        ("fig2R", fig2_right()),
        ("fig3", fig3()),
        ("fig4", fig4()),
        ("fig6", fig6()),
        ("fig7", fig7()),
    ]
}
