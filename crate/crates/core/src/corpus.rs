//! Inventory of the bundled model corpus: which file, which parameter
//! binding, and what the pipeline is expected to reproduce there. The CI
//! suites iterate this table, so the case ids and file names are stable.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::model::{Model, ModelError, ModelSource};
use crate::rational::{parse_rational, Rational};

/// One reproducible corpus case.
#[derive(Clone, Copy, Debug)]
pub struct CorpusCase {
    pub id: &'static str,
    pub file: &'static str,
    /// Parameter overrides on top of the file defaults.
    pub params: &'static [(&'static str, &'static str)],
    pub checks: &'static [CaseCheck],
}

/// A single expectation, written in the variables of the case's effective
/// (possibly transformed) field.
#[derive(Clone, Copy, Debug)]
pub enum CaseCheck {
    /// The exact constant-cofactor search at this degree returns an
    /// eigenspace for `lambda` whose span contains `g`.
    EigenPair {
        degree: u32,
        g: &'static str,
        lambda: &'static str,
    },
    /// The numeric search at this degree returns the certified pair
    /// `(g, lambda)` (after monic normalization of `g`).
    NumericPair {
        degree: u32,
        g: &'static str,
        lambda: &'static str,
    },
    /// The named integral claim certifies exactly, and drifts below the
    /// standard tolerance on the standard probe.
    Integral { name: &'static str },
    /// The named structure claim passes (or fails) exactly.
    Claim { name: &'static str, pass: bool },
}

pub const DRIFT_TOLERANCE: f64 = 1e-6;

pub fn list_cases() -> Vec<CorpusCase> {
    use CaseCheck::*;
    vec![
        CorpusCase {
            id: "three-wave/case1",
            file: "three_wave_case1.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "y*z - 1/2*z",
                    lambda: "-2",
                },
                NumericPair {
                    degree: 2,
                    g: "y*z - 1/2*z",
                    lambda: "-2",
                },
                Integral { name: "case1" },
            ],
        },
        CorpusCase {
            id: "three-wave/case2",
            file: "three_wave_case2.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "x^2 + y^2 + z",
                    lambda: "-2",
                },
                Integral { name: "case2" },
            ],
        },
        CorpusCase {
            id: "three-wave/case3",
            file: "three_wave_case3.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "x^2 + y^2 + 2*y*z",
                    lambda: "-4",
                },
                Integral { name: "case3" },
            ],
        },
        CorpusCase {
            id: "three-wave/case4",
            file: "three_wave_case4.model",
            params: &[],
            checks: &[
                NumericPair {
                    degree: 2,
                    g: "y",
                    lambda: "2*x + 1/2",
                },
                NumericPair {
                    degree: 2,
                    g: "z",
                    lambda: "-2*x - 2",
                },
                Integral { name: "case4" },
            ],
        },
        CorpusCase {
            id: "three-wave/case5",
            file: "three_wave_case5.model",
            params: &[],
            checks: &[
                NumericPair {
                    degree: 2,
                    g: "y",
                    lambda: "2*x - 1",
                },
                NumericPair {
                    degree: 2,
                    g: "z",
                    lambda: "-2*x - 2",
                },
                NumericPair {
                    degree: 2,
                    g: "x^2 + y^2 + z",
                    lambda: "-2",
                },
                Integral { name: "case5-yz" },
                Integral {
                    name: "case5-quadratic",
                },
            ],
        },
        CorpusCase {
            id: "three-wave/metriplectic-clocked",
            file: "three_wave.model",
            params: &[("gamma", "-1"), ("delta", "1")],
            checks: &[Claim {
                name: "metriplectic-clocked",
                pass: false,
            }],
        },
        CorpusCase {
            id: "three-wave/metriplectic-clock-free",
            file: "three_wave.model",
            params: &[("gamma", "-1"), ("delta", "1")],
            checks: &[Claim {
                name: "metriplectic-clock-free",
                pass: true,
            }],
        },
        CorpusCase {
            id: "three-wave/metriplectic-clock-free-gamma0",
            file: "three_wave.model",
            params: &[("gamma", "0"), ("delta", "1")],
            checks: &[
                Claim {
                    name: "metriplectic-clocked",
                    pass: false,
                },
                Claim {
                    name: "metriplectic-clock-free",
                    pass: true,
                },
            ],
        },
        CorpusCase {
            id: "three-wave/case1-transformed",
            file: "three_wave_case1_transformed.model",
            params: &[],
            checks: &[
                Claim {
                    name: "nambu-case1",
                    pass: true,
                },
                Claim {
                    name: "unit-multiplier",
                    pass: true,
                },
                Integral {
                    name: "hamiltonian-conserved",
                },
            ],
        },
        CorpusCase {
            id: "three-wave/case2-transformed",
            file: "three_wave_case2_transformed.model",
            params: &[],
            checks: &[
                Claim {
                    name: "nambu-case2",
                    pass: true,
                },
                Claim {
                    name: "unit-multiplier",
                    pass: true,
                },
                Integral {
                    name: "hamiltonian-conserved",
                },
            ],
        },
        CorpusCase {
            id: "three-wave/case3-transformed",
            file: "three_wave_case3_transformed.model",
            params: &[],
            checks: &[
                Claim {
                    name: "nambu-case3",
                    pass: true,
                },
                Claim {
                    name: "unit-multiplier",
                    pass: true,
                },
                Integral {
                    name: "hamiltonian-conserved",
                },
            ],
        },
        CorpusCase {
            id: "three-wave/case5-transformed",
            file: "three_wave_case5_transformed.model",
            params: &[],
            checks: &[
                Claim {
                    name: "hamiltonian-j1",
                    pass: true,
                },
                Claim {
                    name: "nambu-pair",
                    pass: true,
                },
                Claim {
                    name: "unit-multiplier",
                    pass: true,
                },
                Integral {
                    name: "h1-conserved",
                },
                Integral {
                    name: "h2-conserved",
                },
            ],
        },
        CorpusCase {
            id: "rabinovich/metriplectic",
            file: "rabinovich.model",
            params: &[],
            checks: &[Claim {
                name: "metriplectic-rabi",
                pass: true,
            }],
        },
        CorpusCase {
            id: "rabinovich/metriplectic-symmetric-point",
            file: "rabinovich.model",
            params: &[("h", "0"), ("nu1", "1"), ("nu2", "1"), ("nu3", "1")],
            checks: &[Claim {
                name: "metriplectic-rabi",
                pass: true,
            }],
        },
        CorpusCase {
            id: "rabinovich/g6",
            file: "rabinovich_g6.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "y^2 + z^2",
                    lambda: "-2",
                },
                Integral { name: "i1" },
            ],
        },
        CorpusCase {
            id: "rabinovich/g7",
            file: "rabinovich_g7.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "x^2 + y^2",
                    lambda: "-2",
                },
                Integral { name: "i2" },
            ],
        },
        CorpusCase {
            id: "rabinovich/joint",
            file: "rabinovich_joint.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "y^2 + z^2",
                    lambda: "-2",
                },
                EigenPair {
                    degree: 2,
                    g: "x^2 + y^2",
                    lambda: "-2",
                },
                Integral { name: "i1" },
                Integral { name: "i2" },
            ],
        },
        CorpusCase {
            id: "rabinovich/divergence-free-transformed",
            file: "rabinovich_transformed.model",
            params: &[],
            checks: &[
                Claim {
                    name: "nambu-divfree",
                    pass: true,
                },
                Claim {
                    name: "unit-multiplier",
                    pass: true,
                },
                Integral {
                    name: "h1-conserved",
                },
                Integral {
                    name: "h2-conserved",
                },
            ],
        },
        CorpusCase {
            id: "hindmarsh-rose/item1",
            file: "hindmarsh_rose_item1.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 1,
                    g: "z + 1",
                    lambda: "-1",
                },
                Integral { name: "item1" },
            ],
        },
        CorpusCase {
            id: "hindmarsh-rose/item2",
            file: "hindmarsh_rose_item2.model",
            params: &[],
            checks: &[Integral { name: "item2" }],
        },
        CorpusCase {
            id: "hindmarsh-rose/item3",
            file: "hindmarsh_rose_item3.model",
            params: &[],
            checks: &[Integral { name: "item3" }],
        },
        CorpusCase {
            id: "hindmarsh-rose/item4",
            file: "hindmarsh_rose_item4.model",
            params: &[],
            checks: &[Integral { name: "item4" }],
        },
        CorpusCase {
            id: "hindmarsh-rose/item5",
            file: "hindmarsh_rose_item5.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "x^2 + x*y - x*z + 1/4*y^2 - 1/2*y*z + 1/4*z^2",
                    lambda: "2",
                },
                Integral { name: "item5" },
            ],
        },
        CorpusCase {
            id: "hindmarsh-rose/item6",
            file: "hindmarsh_rose_item6.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 2,
                    g: "x + y - z",
                    lambda: "0",
                },
                Integral { name: "item6" },
            ],
        },
        CorpusCase {
            id: "hindmarsh-rose/metriplectic",
            file: "hindmarsh_rose_metriplectic.model",
            params: &[],
            checks: &[Claim {
                name: "metriplectic-hr",
                pass: true,
            }],
        },
        CorpusCase {
            id: "hindmarsh-rose/metriplectic-alpha-flipped",
            file: "hindmarsh_rose_metriplectic.model",
            params: &[("alpha", "1")],
            checks: &[Claim {
                name: "metriplectic-hr",
                pass: false,
            }],
        },
        CorpusCase {
            id: "oregonator/integral",
            file: "oregonator.model",
            params: &[],
            checks: &[
                EigenPair {
                    degree: 1,
                    g: "x + y + z",
                    lambda: "-2",
                },
                Integral { name: "i" },
            ],
        },
        CorpusCase {
            id: "oregonator/hamiltonian-form",
            file: "oregonator_transformed.model",
            params: &[],
            checks: &[
                Claim {
                    name: "hamiltonian-form",
                    pass: false,
                },
                Integral {
                    name: "h-conserved",
                },
            ],
        },
        CorpusCase {
            id: "oregonator/jacobi",
            file: "oregonator_transformed.model",
            params: &[],
            checks: &[Claim {
                name: "jacobi",
                pass: false,
            }],
        },
    ]
}

/// Parse the override list of a case.
pub fn case_params(case: &CorpusCase) -> BTreeMap<String, Rational> {
    case.params
        .iter()
        .map(|(k, v)| {
            (
                k.to_string(),
                parse_rational(v).unwrap_or_else(|| panic!("bad corpus parameter {k}={v}")),
            )
        })
        .collect()
}

/// Load a case's model source from the corpus directory.
pub fn load_case_source(dir: &Path, case: &CorpusCase) -> Result<ModelSource, ModelError> {
    crate::model::load_model(&dir.join(case.file))
}

/// Load and bind a case.
pub fn load_case(dir: &Path, case: &CorpusCase) -> Result<Model, ModelError> {
    load_case_source(dir, case)?.build(&case_params(case))
}

/// All distinct corpus file names, in case order.
pub fn corpus_files() -> Vec<&'static str> {
    let mut files: Vec<&'static str> = list_cases().iter().map(|c| c.file).collect();
    files.dedup();
    let mut seen = Vec::new();
    files.retain(|f| {
        if seen.contains(f) {
            false
        } else {
            seen.push(f);
            true
        }
    });
    files
}

/// Conventional corpus location relative to a workspace root.
pub fn corpus_dir_from(root: &Path) -> PathBuf {
    root.join("corpus")
}
