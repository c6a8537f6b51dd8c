//! Bundled golden sessions with their expected report fields.

use crate::report::Report;
use crate::run::{run, FieldChoice, Options};
use crate::session::parse_session;

pub struct Golden {
    pub name: &'static str,
    pub source: &'static str,
    /// `(command index, key, expected text)`.
    pub expect: &'static [(usize, &'static str, &'static str)],
}

pub const SUITE: &[Golden] = &[
    Golden {
        name: "fermat_cubic",
        source: include_str!("../sessions/fermat_cubic.chi"),
        expect: &[
            (0, "chi", "1 / (1 + t + t^2)"),
            (0, "value", "1/3"),
            (0, "class", "POSITIVE_FINITE"),
            (1, "chi_S", "0"),
            (2, "Tor_3", "0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0"),
            (2, "naive", "1, -1, 1, -1, 1, -1, 1, -1, 1"),
            (3, "check", "PASS"),
        ],
    },
    Golden {
        name: "rnc_d2",
        source: include_str!("../sessions/rnc_d2.chi"),
        expect: &[(0, "chi", "1 / (1 + t)"), (0, "value", "1/2"), (0, "class", "POSITIVE_FINITE")],
    },
    Golden {
        name: "rnc_d3",
        source: include_str!("../sessions/rnc_d3.chi"),
        expect: &[(0, "chi", "1 / (1 + 2t)"), (0, "value", "1/3"), (0, "class", "POSITIVE_FINITE")],
    },
    Golden {
        name: "rnc_d4",
        source: include_str!("../sessions/rnc_d4.chi"),
        expect: &[(0, "chi", "1 / (1 + 3t)"), (0, "value", "1/4"), (0, "class", "POSITIVE_FINITE")],
    },
    Golden {
        name: "rnc_d5",
        source: include_str!("../sessions/rnc_d5.chi"),
        expect: &[(0, "chi", "1 / (1 + 4t)"), (0, "value", "1/5"), (0, "class", "POSITIVE_FINITE")],
    },
    Golden {
        name: "two_planes",
        source: include_str!("../sessions/two_planes.chi"),
        expect: &[
            (0, "chi", "1 / (1 + 2t - t^2)"),
            (0, "value", "1/2"),
            (1, "check", "PASS"),
            (1, "coefficients", "1, -2, 5, -12, 29, -70, 169, -408, 985"),
        ],
    },
    Golden {
        name: "quadric_cone",
        source: include_str!("../sessions/quadric_cone.chi"),
        expect: &[
            (0, "chi", "1 / (1 - t^2)"),
            (0, "value", "infinity"),
            (0, "class", "INFINITE"),
            (0, "defect", "1"),
            (0, "e_MN", "1 / (1 + t)"),
        ],
    },
    Golden {
        name: "cuspidal_cubic",
        source: include_str!("../sessions/cuspidal_cubic.chi"),
        expect: &[(0, "dim", "1"), (0, "multiplicity", "1"), (1, "dim", "1"), (1, "multiplicity", "3")],
    },
    Golden {
        name: "conic_cartier",
        source: include_str!("../sessions/conic_cartier.chi"),
        expect: &[
            (0, "multiplicity", "1/2"),
            (1, "value", "1/2"),
            (2, "multiplicity", "2"),
            (3, "multiplicity", "1"),
        ],
    },
];

pub struct Outcome {
    pub name: &'static str,
    pub report: Report,
    pub mismatches: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.report.exit_code() == 0
    }
}

pub fn run_golden(g: &Golden) -> Outcome {
    let session = parse_session(g.source).unwrap_or_else(|e| panic!("bundled session {} is invalid: {e}", g.name));
    let report = run(&session, FieldChoice::Rationals, &Options::default());
    let mut mismatches = Vec::new();
    for &(idx, key, want) in g.expect {
        let got = report.commands.get(idx).and_then(|c| c.get_text(key));
        if got.as_deref() != Some(want) {
            mismatches.push(format!("command {idx} {key}: expected '{want}', got {got:?}"));
        }
    }
    for c in &report.commands {
        if let Some(e) = &c.error {
            mismatches.push(format!("'{}' failed: {e}", c.command));
        }
    }
    Outcome {
        name: g.name,
        report,
        mismatches,
    }
}

pub fn run_suite() -> Vec<Outcome> {
    SUITE.iter().map(run_golden).collect()
}
