//! Embedded residue constant tables.
//!
//! Every table is indexed by [`Alphabet::Protein`](crate::Alphabet) symbol
//! order (`ACDEFGHIKLMNPQRSTVWY`).

use serde::Serialize;

/// Bumped whenever any constant below changes.
pub const TABLES_VERSION: &str = "2024.1";

pub const RESIDUE_ORDER: &str = "ACDEFGHIKLMNPQRSTVWY";

/// Mass of one water molecule (Da), added once for the intact chain.
pub const WATER_MASS: f64 = 18.0153;

/// Average residue masses (Da), i.e. amino-acid mass minus one water.
pub const AVERAGE_RESIDUE_MASS: [f64; 20] = [
    71.0788,  // A
    103.1388, // C
    115.0886, // D
    129.1155, // E
    147.1766, // F
    57.0519,  // G
    137.1411, // H
    113.1594, // I
    128.1741, // K
    113.1594, // L
    131.1926, // M
    114.1038, // N
    97.1167,  // P
    128.1307, // Q
    156.1875, // R
    87.0782,  // S
    101.1051, // T
    99.1326,  // V
    186.2132, // W
    163.1760, // Y
];

/// Kyte-Doolittle hydropathy.
pub const KYTE_DOOLITTLE: [f64; 20] = [
    1.8,  // A
    2.5,  // C
    -3.5, // D
    -3.5, // E
    2.8,  // F
    -0.4, // G
    -3.2, // H
    4.5,  // I
    -3.9, // K
    3.8,  // L
    1.9,  // M
    -3.5, // N
    -1.6, // P
    -3.5, // Q
    -4.5, // R
    -0.8, // S
    -0.7, // T
    4.2,  // V
    -0.9, // W
    -1.3, // Y
];

/// Bjellqvist pKa set. Charge is computed with the generic terminal values.
/// The residue-specific terminal entries are carried for the audit dump only:
/// applying them lets a C-terminal D substitution raise pI.
pub mod pka {
    pub const N_TERM: f64 = 7.5;
    pub const C_TERM: f64 = 3.55;

    /// Positively charged side chains.
    pub const K: f64 = 10.0;
    pub const R: f64 = 12.0;
    pub const H: f64 = 5.98;

    /// Negatively charged side chains.
    pub const D: f64 = 4.05;
    pub const E: f64 = 4.45;
    pub const C: f64 = 9.0;
    pub const Y: f64 = 10.0;

    pub const N_TERM_BY_RESIDUE: [(u8, f64); 7] = [
        (b'A', 7.59),
        (b'E', 7.7),
        (b'M', 7.0),
        (b'P', 8.36),
        (b'S', 6.93),
        (b'T', 6.82),
        (b'V', 7.44),
    ];

    pub const C_TERM_BY_RESIDUE: [(u8, f64); 2] = [(b'D', 4.55), (b'E', 4.75)];
}

/// Guruprasad dipeptide instability weight values. `DIWV[x][y]` is the
/// weight of dipeptide `xy` (x first in the chain).
pub const DIWV: [[f64; 20]; 20] = [
    [
        1.0, 44.94, -7.49, 1.0, 1.0, 1.0, -7.49, 1.0, 1.0, 1.0, 1.0, 1.0, 20.26, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0,
    ], // A
    [
        1.0, 1.0, 20.26, 1.0, 1.0, 1.0, 33.6, 1.0, 1.0, 20.26, 33.6, 1.0, 20.26, -6.54, 1.0, 1.0, 33.6, -6.54, 24.68,
        1.0,
    ], // C
    [
        1.0, 1.0, 1.0, 1.0, -6.54, 1.0, 1.0, 1.0, -7.49, 1.0, 1.0, 1.0, 1.0, 1.0, -6.54, 20.26, -14.03, 1.0, 1.0, 1.0,
    ], // D
    [
        1.0, 44.94, 20.26, 33.6, 1.0, 1.0, -6.54, 20.26, 1.0, 1.0, 1.0, 1.0, 20.26, 20.26, 1.0, 20.26, 1.0, 1.0,
        -14.03, 1.0,
    ], // E
    [
        1.0, 1.0, 13.34, 1.0, 1.0, 1.0, 1.0, 1.0, -14.03, 1.0, 1.0, 1.0, 20.26, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 33.601,
    ], // F
    [
        -7.49, 1.0, 1.0, -6.54, 1.0, 13.34, 1.0, -7.49, -7.49, 1.0, 1.0, -7.49, 1.0, 1.0, 1.0, 1.0, -7.49, 1.0, 13.34,
        -7.49,
    ], // G
    [
        1.0, 1.0, 1.0, 1.0, -9.37, -9.37, 1.0, 44.94, 24.68, 1.0, 1.0, 24.68, -1.88, 1.0, 1.0, 1.0, -6.54, 1.0, -1.88,
        44.94,
    ], // H
    [
        1.0, 1.0, 1.0, 44.94, 1.0, 1.0, 13.34, 1.0, -7.49, 20.26, 1.0, 1.0, -1.88, 1.0, 1.0, 1.0, 1.0, -7.49, 1.0, 1.0,
    ], // I
    [
        1.0, 1.0, 1.0, 1.0, 1.0, -7.49, 1.0, -7.49, 1.0, -7.49, 33.6, 1.0, -6.54, 24.64, 33.6, 1.0, 1.0, -7.49, 1.0,
        1.0,
    ], // K
    [
        1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -7.49, 1.0, 1.0, 1.0, 20.26, 33.6, 20.26, 1.0, 1.0, 1.0, 24.68, 1.0,
    ], // L
    [
        13.34, 1.0, 1.0, 1.0, 1.0, 1.0, 58.28, 1.0, 1.0, 1.0, -1.88, 1.0, 44.94, -6.54, -6.54, 44.94, -1.88, 1.0, 1.0,
        24.68,
    ], // M
    [
        1.0, -1.88, 1.0, 1.0, -14.03, -14.03, 1.0, 44.94, 24.68, 1.0, 1.0, 1.0, -1.88, -6.54, 1.0, 1.0, -7.49, 1.0,
        -9.37, 1.0,
    ], // N
    [
        20.26, -6.54, -6.54, 18.38, 20.26, 1.0, 1.0, 1.0, 1.0, 1.0, -6.54, 1.0, 20.26, 20.26, -6.54, 20.26, 1.0, 20.26,
        -1.88, 1.0,
    ], // P
    [
        1.0, -6.54, 20.26, 20.26, -6.54, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 20.26, 20.26, 1.0, 44.94, 1.0, -6.54, 1.0,
        -6.54,
    ], // Q
    [
        1.0, 1.0, 1.0, 1.0, 1.0, -7.49, 20.26, 1.0, 1.0, 1.0, 1.0, 13.34, 20.26, 20.26, 58.28, 44.94, 1.0, 1.0, 58.28,
        -6.54,
    ], // R
    [
        1.0, 33.6, 1.0, 20.26, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 44.94, 20.26, 20.26, 20.26, 1.0, 1.0, 1.0, 1.0,
    ], // S
    [
        1.0, 1.0, 1.0, 20.26, 13.34, -7.49, 1.0, 1.0, 1.0, 1.0, 1.0, -14.03, 1.0, -6.54, 1.0, 1.0, 1.0, 1.0, -14.03,
        1.0,
    ], // T
    [
        1.0, 1.0, -14.03, 1.0, 1.0, -7.49, 1.0, 1.0, -1.88, 1.0, 1.0, 1.0, 20.26, 1.0, 1.0, 1.0, -7.49, 1.0, 1.0, -6.54,
    ], // V
    [
        -14.03, 1.0, 1.0, 1.0, 1.0, -9.37, 24.68, 1.0, 1.0, 13.34, 24.68, 13.34, 1.0, 1.0, 1.0, 1.0, -14.03, -7.49,
        1.0, 1.0,
    ], // W
    [
        24.68, 1.0, 24.68, -6.54, 1.0, -7.49, 13.34, 1.0, 1.0, 1.0, 44.94, 1.0, 13.34, 1.0, -15.91, 1.0, -7.49, 1.0,
        -9.37, 13.34,
    ], // Y
];

#[derive(Debug, Serialize)]
struct PkaDump {
    n_term_default: f64,
    c_term_default: f64,
    terminal_variant_applied: bool,
    n_term_by_residue: Vec<(String, f64)>,
    c_term_by_residue: Vec<(String, f64)>,
    side_chain_positive: Vec<(String, f64)>,
    side_chain_negative: Vec<(String, f64)>,
}

#[derive(Debug, Serialize)]
struct TablesDump {
    version: &'static str,
    residue_order: &'static str,
    water_mass: f64,
    average_residue_mass: Vec<(String, f64)>,
    hydropathy_kyte_doolittle: Vec<(String, f64)>,
    pka_bjellqvist: PkaDump,
    diwv_guruprasad: Vec<(String, Vec<f64>)>,
}

fn per_residue(table: &[f64; 20]) -> Vec<(String, f64)> {
    RESIDUE_ORDER
        .chars()
        .zip(table.iter())
        .map(|(c, v)| (c.to_string(), *v))
        .collect()
}

fn labelled(entries: &[(u8, f64)]) -> Vec<(String, f64)> {
    entries.iter().map(|(r, v)| ((*r as char).to_string(), *v)).collect()
}

/// Pretty JSON of every embedded constant, for audit.
pub fn tables_json() -> String {
    let dump = TablesDump {
        version: TABLES_VERSION,
        residue_order: RESIDUE_ORDER,
        water_mass: WATER_MASS,
        average_residue_mass: per_residue(&AVERAGE_RESIDUE_MASS),
        hydropathy_kyte_doolittle: per_residue(&KYTE_DOOLITTLE),
        pka_bjellqvist: PkaDump {
            n_term_default: pka::N_TERM,
            c_term_default: pka::C_TERM,
            terminal_variant_applied: false,
            n_term_by_residue: labelled(&pka::N_TERM_BY_RESIDUE),
            c_term_by_residue: labelled(&pka::C_TERM_BY_RESIDUE),
            side_chain_positive: labelled(&[(b'H', pka::H), (b'K', pka::K), (b'R', pka::R)]),
            side_chain_negative: labelled(&[(b'C', pka::C), (b'D', pka::D), (b'E', pka::E), (b'Y', pka::Y)]),
        },
        diwv_guruprasad: RESIDUE_ORDER
            .chars()
            .zip(DIWV.iter())
            .map(|(c, row)| (c.to_string(), row.to_vec()))
            .collect(),
    };
    serde_json::to_string_pretty(&dump).expect("tables serialize")
}
