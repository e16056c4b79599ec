//! Term-by-term transcription of the tabulated two-atom, three-site
//! amplitude rates, indexed by its own label table.

use std::collections::HashMap;

use num_complex::Complex64;
use qtraj_core::{Params, StateA36};

const I: Complex64 = Complex64::new(0.0, 1.0);

pub const CONFIGS: [&str; 6] = ["200", "110", "101", "020", "011", "002"];
pub const BLOCKS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

pub fn label_index() -> HashMap<(u32, &'static str, u32), usize> {
    let mut map = HashMap::new();
    for (b, &(n, e)) in BLOCKS.iter().enumerate() {
        for (k, &cfg) in CONFIGS.iter().enumerate() {
            map.insert((n, cfg, e), 6 * b + k);
        }
    }
    map
}

/// The 36 tabulated rows, term by term, ħ = 1.
pub fn a36_oracle(s: &StateA36, p: &Params) -> StateA36 {
    let idx = label_index();
    let at = |n: u32, cfg: &'static str, e: u32| s[idx[&(n, cfg, e)]];
    let (j, u, g, y, k, gm) = (p.tunneling, p.interaction, p.g, p.drive, p.kappa, p.gamma);
    let r2 = 2f64.sqrt();
    let mut d = StateA36::zero();
    let mut set = |n: u32, cfg: &'static str, e: u32, v: Complex64| d[idx[&(n, cfg, e)]] = v;

    // Ground.
    set(0, "101", 0, I * j * (at(0, "110", 0) + at(0, "011", 0)));
    set(
        0,
        "110",
        0,
        I * j * (at(0, "101", 0) + r2 * at(0, "200", 0) + r2 * at(0, "020", 0)),
    );
    set(
        0,
        "011",
        0,
        I * j * (at(0, "110", 0) + r2 * at(0, "002", 0) + r2 * at(0, "020", 0)),
    );
    set(
        0,
        "200",
        0,
        I * j * at(0, "110", 0) - I * u * at(0, "200", 0),
    );
    set(
        0,
        "020",
        0,
        I * j * r2 * (at(0, "110", 0) + at(0, "011", 0)) - I * u * at(0, "020", 0),
    );
    set(
        0,
        "002",
        0,
        I * j * r2 * at(0, "011", 0) - I * u * at(0, "002", 0),
    );

    // One photon, ground atoms.
    set(
        1,
        "101",
        0,
        I * j * (at(1, "110", 0) + at(1, "011", 0))
            + y * at(0, "101", 0)
            + g * r2 * at(0, "101", 1)
            - k * at(1, "101", 0),
    );
    set(
        1,
        "110",
        0,
        I * j * (at(1, "101", 0) + r2 * at(1, "200", 0) + r2 * at(1, "020", 0))
            + y * at(0, "110", 0)
            + g * r2 * at(0, "110", 1)
            - k * at(1, "110", 0),
    );
    set(
        1,
        "011",
        0,
        I * j * (at(1, "110", 0) + r2 * at(1, "002", 0) + r2 * at(1, "020", 0))
            + y * at(0, "011", 0)
            + g * r2 * at(0, "011", 1)
            - k * at(1, "011", 0),
    );
    set(
        1,
        "200",
        0,
        I * j * at(1, "110", 0) - I * u * at(1, "200", 0)
            + y * at(0, "200", 0)
            + g * r2 * at(0, "200", 1)
            - k * at(1, "200", 0),
    );
    set(
        1,
        "020",
        0,
        I * j * r2 * (at(1, "110", 0) + at(1, "011", 0)) - I * u * at(1, "020", 0)
            + y * at(0, "020", 0)
            + g * r2 * at(0, "020", 1)
            - k * at(1, "020", 0),
    );
    set(
        1,
        "002",
        0,
        I * j * r2 * at(1, "011", 0) - I * u * at(1, "002", 0)
            + y * at(0, "002", 0)
            + g * r2 * at(0, "002", 1)
            - k * at(1, "002", 0),
    );

    // No photon, one excited atom.
    set(
        0,
        "101",
        1,
        I * j * (at(0, "110", 1) + at(0, "011", 1))
            - g * r2 * at(1, "101", 0)
            - gm / 2.0 * at(0, "101", 1),
    );
    set(
        0,
        "110",
        1,
        I * j * (at(0, "101", 1) + r2 * at(0, "200", 1) + r2 * at(0, "020", 1))
            - g * r2 * at(1, "110", 0)
            - gm / 2.0 * at(0, "110", 1),
    );
    set(
        0,
        "011",
        1,
        I * j * (at(0, "110", 1) + r2 * at(0, "002", 1) + r2 * at(0, "020", 1))
            - g * r2 * at(1, "011", 1)
            - gm / 2.0 * at(0, "011", 1),
    );
    set(
        0,
        "200",
        1,
        I * j * at(0, "110", 1)
            - I * u * at(0, "200", 1)
            - g * r2 * at(1, "200", 0)
            - gm / 2.0 * at(0, "200", 1),
    );
    set(
        0,
        "020",
        1,
        I * j * r2 * (at(0, "110", 1) + at(0, "011", 1))
            - I * u * at(0, "020", 1)
            - g * r2 * at(1, "020", 0)
            - gm / 2.0 * at(0, "020", 1),
    );
    set(
        0,
        "002",
        1,
        I * j * r2 * at(0, "011", 1)
            - I * u * at(0, "002", 1)
            - g * r2 * at(1, "002", 0)
            - gm / 2.0 * at(0, "002", 1),
    );

    // Two photons, ground atoms.
    set(
        2,
        "101",
        0,
        I * j * (at(2, "110", 0) + at(2, "011", 0))
            + y * r2 * at(1, "101", 0)
            + 2.0 * g * at(1, "101", 1)
            - 2.0 * k * at(2, "101", 0),
    );
    set(
        2,
        "110",
        0,
        I * j * (at(2, "101", 0) + r2 * at(2, "200", 0) + r2 * at(2, "020", 0))
            + y * r2 * at(1, "110", 0)
            + 2.0 * g * at(1, "110", 1)
            - 2.0 * k * at(2, "110", 0),
    );
    set(
        2,
        "011",
        0,
        I * j * (at(2, "110", 0) + r2 * at(2, "002", 0) + r2 * at(2, "020", 0))
            + y * r2 * at(1, "011", 0)
            + 2.0 * g * at(1, "011", 1)
            - 2.0 * k * at(2, "011", 0),
    );
    set(
        2,
        "200",
        0,
        I * j * at(2, "110", 0) - I * u * at(2, "200", 0)
            + y * r2 * at(1, "200", 0)
            + 2.0 * g * at(1, "200", 1)
            - 2.0 * k * at(2, "200", 0),
    );
    set(
        2,
        "020",
        0,
        I * j * r2 * (at(2, "110", 0) + at(2, "011", 0)) - I * u * at(2, "020", 0)
            + y * r2 * at(1, "020", 0)
            + 2.0 * g * at(1, "020", 1)
            - 2.0 * k * at(2, "020", 0),
    );
    set(
        2,
        "002",
        0,
        I * j * r2 * at(2, "011", 0) - I * u * at(2, "002", 0)
            + y * r2 * at(1, "002", 0)
            + 2.0 * g * at(1, "002", 1)
            - 2.0 * k * at(2, "002", 0),
    );

    // One photon, one excited atom.
    let ke = k + gm / 2.0;
    set(
        1,
        "101",
        1,
        I * j * (at(1, "110", 1) + at(1, "011", 1)) + y * at(2, "101", 0)
            - 2.0 * g * at(2, "101", 0)
            - ke * at(1, "101", 1),
    );
    set(
        1,
        "110",
        1,
        I * j * (at(1, "101", 1) + r2 * at(1, "200", 1) + r2 * at(1, "020", 1))
            + y * at(2, "110", 0)
            - 2.0 * g * at(2, "110", 0)
            - ke * at(1, "110", 1),
    );
    set(
        1,
        "011",
        1,
        I * j * (at(1, "110", 1) + r2 * at(1, "002", 1) + r2 * at(1, "020", 1))
            + y * at(2, "011", 0)
            - 2.0 * g * at(2, "011", 0)
            - ke * at(1, "011", 1),
    );
    set(
        1,
        "200",
        1,
        I * j * at(1, "110", 1) - I * u * at(1, "200", 1) + y * at(2, "200", 0)
            - 2.0 * g * at(2, "200", 0)
            - ke * at(1, "200", 1),
    );
    set(
        1,
        "020",
        1,
        I * j * r2 * (at(1, "110", 1) + at(1, "011", 1)) - I * u * at(1, "020", 1)
            + y * at(2, "020", 0)
            - 2.0 * g * at(2, "020", 0)
            - ke * at(1, "020", 1),
    );
    set(
        1,
        "002",
        1,
        I * j * r2 * at(1, "011", 1) - I * u * at(1, "002", 1) + y * at(2, "002", 0)
            - 2.0 * g * at(2, "002", 0)
            - ke * at(1, "002", 1),
    );

    // No photon, two excited atoms.
    set(
        0,
        "101",
        2,
        I * j * (at(0, "110", 2) + at(0, "011", 2))
            - g * r2 * at(1, "101", 1)
            - gm * at(0, "101", 2),
    );
    set(
        0,
        "110",
        2,
        I * j * (at(0, "101", 2) + r2 * at(0, "200", 2) + r2 * at(0, "020", 1))
            - g * r2 * at(1, "110", 1)
            - gm * at(0, "110", 2),
    );
    set(
        0,
        "011",
        2,
        I * j * (at(0, "110", 2) + r2 * at(0, "002", 2) + r2 * at(0, "020", 1))
            - g * r2 * at(1, "011", 1)
            - gm * at(0, "011", 2),
    );
    set(
        0,
        "200",
        2,
        I * j * at(0, "110", 2)
            - I * u * at(0, "200", 2)
            - g * r2 * at(1, "200", 1)
            - gm * at(0, "200", 2),
    );
    set(
        0,
        "020",
        2,
        I * j * r2 * (at(0, "110", 2) + at(0, "011", 2))
            - I * u * at(0, "020", 2)
            - g * r2 * at(1, "020", 1)
            - gm * at(0, "020", 2),
    );
    set(
        0,
        "002",
        2,
        I * j * r2 * at(0, "011", 2)
            - I * u * at(0, "002", 2)
            - g * r2 * at(1, "002", 1)
            - gm * at(0, "002", 2),
    );
    d
}
