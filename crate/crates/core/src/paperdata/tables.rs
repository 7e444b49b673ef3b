//! Table data as printed, with the minimal readings needed where the printed entry is
//! inconsistent.

use serde::Serialize;

/// A corrected reading of a printed entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reading {
    pub coinvariant: &'static str,
    pub invariant: &'static str,
    pub note: &'static str,
}

/// One row of the pairs `(𝚲^G, 𝚲_G)` for odd prime order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaRow {
    pub no: &'static str,
    pub rank_invariant: usize,
    pub coinvariant: &'static str,
    pub invariant: &'static str,
    pub sig_coinvariant: (usize, usize),
    pub a: usize,
    pub p: u64,
    pub reading: Option<Reading>,
}

impl LambdaRow {
    /// Expressions actually checked.
    pub fn checked(&self) -> (&'static str, &'static str) {
        match &self.reading {
            Some(r) => (r.coinvariant, r.invariant),
            None => (self.coinvariant, self.invariant),
        }
    }
}

const fn row(
    no: &'static str,
    rank_invariant: usize,
    coinvariant: &'static str,
    invariant: &'static str,
    sig_coinvariant: (usize, usize),
    a: usize,
    p: u64,
) -> LambdaRow {
    LambdaRow {
        no,
        rank_invariant,
        coinvariant,
        invariant,
        sig_coinvariant,
        a,
        p,
        reading: None,
    }
}

const fn fixed(
    r: LambdaRow,
    coinvariant: &'static str,
    invariant: &'static str,
    note: &'static str,
) -> LambdaRow {
    LambdaRow {
        reading: Some(Reading {
            coinvariant,
            invariant,
            note,
        }),
        ..r
    }
}

const K_SIGN: &str =
    "K_p as defined is negative definite; the printed sign contradicts the signature column";

pub const LAMBDA_P: &[LambdaRow] = &[
    row("1", 24, "A2", "U^3 + E8(-1)^2 + A2(-1)", (2, 0), 1, 3),
    row("2", 22, "U^2", "U^3 + E8(-1)^2", (2, 2), 0, 3),
    row("3", 22, "U + U(3)", "U^2 + U(3) + E8(-1)^2", (2, 2), 2, 3),
    row("4", 20, "U^2 + A2(-1)", "U^3 + E8(-1) + E6(-1)", (2, 4), 1, 3),
    row("5", 20, "U + U(3) + A2(-1)", "U^3 + E8(-1) + A2(-1)^3", (2, 4), 3, 3),
    row("6", 18, "U^2 + A2(-1)^2", "U^3 + E6(-1)^2", (2, 6), 2, 3),
    row("7", 18, "U + U(3) + A2(-1)^2", "U^2 + U(3) + E6(-1)^2", (2, 6), 4, 3),
    row("8", 16, "U^2 + E6(-1)", "U^3 + E8(-1) + A2(-1)", (2, 8), 1, 3),
    row("9", 16, "U + U(3) + E6(-1)", "U^3 + E6(-1) + A2(-1)^2", (2, 8), 3, 3),
    row("10", 16, "U + U(3) + A2(-1)^3", "U^2 + U(3) + E6(-1) + A2(-1)^2", (2, 8), 5, 3),
    row("11", 14, "U^2 + E8(-1)", "U^3 + E8(-1)", (2, 10), 0, 3),
    row("12", 14, "U + U(3) + E8(-1)", "U^2 + U(3) + E8(-1)", (2, 10), 2, 3),
    row("13", 14, "U^2 + A2(-1)^4", "U^3 + A2(-1)^4", (2, 10), 4, 3),
    row("14", 14, "U + U(3) + A2(-1)^4", "U^2 + U(3) + A2(-1)^4", (2, 10), 6, 3),
    row("15", 12, "U^2 + E8(-1) + A2(-1)", "U^3 + E6(-1)", (2, 12), 1, 3),
    row("16", 12, "U + U(3) + E8(-1) + A2(-1)", "U^2 + U(3) + E6(-1)", (2, 12), 3, 3),
    row("17", 12, "U^2 + A2(-1)^5", "U^2 + U(3) + A2(-1)^3", (2, 12), 5, 3),
    row("18", 12, "U + U(3) + A2(-1)^5", "U^2 + U(3) + E6*(-3)", (2, 12), 7, 3),
    row("19", 10, "U^2 + E6(-1)^2", "U^3 + A2(-1)^2", (2, 14), 2, 3),
    row("20", 10, "U + U(3) + E6(-1)^2", "U^2 + U(3) + A2(-1)^2", (2, 14), 4, 3),
    row("21", 10, "U + U(3) + E6(-1) + A2(-1)^3", "U + U(3)^2 + A2(-1)^2", (2, 14), 6, 3),
    row("22", 10, "U + U(3) + A2(-1)^6", "U(3)^3 + A2(-1)^2", (2, 14), 8, 3),
    fixed(
        row("23", 8, "U^2 + E8(-1) + A2(-1)", "U^3 + E6(-1)", (2, 16), 1, 3),
        "U^2 + E8(-1) + E6(-1)",
        "U^3 + A2(-1)",
        "printed entries repeat row 15 and have ranks 14 + 12; the unique p = 3, a = 1 pair with rk(𝚲^G) = 8",
    ),
    row("24", 8, "U + U(3) + E8(-1) + E6(-1)", "U^2 + U(3) + A2(-1)", (2, 16), 3, 3),
    row("25a", 8, "U^2 + E6(-1) + A2(-1)^4", "U + U(3)^2 + A2(-1)", (2, 16), 5, 3),
    row("25b", 8, "U + U(3) + E6(-1) + A2(-1)^4", "U(3)^3 + A2(-1)", (2, 16), 7, 3),
    row("26", 6, "U^2 + E8(-1)^2", "U^3", (2, 18), 0, 3),
    row("27", 6, "U + U(3) + E8(-1)^2", "U^2 + U(3)", (2, 18), 2, 3),
    row("28", 6, "U^2 + E8(-1) + A2(-1)^4", "U + U(3)^2", (2, 18), 4, 3),
    row("29", 6, "U^2 + E6(-1) + A2(-1)^5", "U(3)^3", (2, 18), 6, 3),
    row("30", 4, "U^2 + E8(-1)^2 + A2(-1)", "U + A2", (2, 20), 1, 3),
    row("31", 4, "U + U(3) + E8(-1)^2 + A2(-1)", "U(3) + A2", (2, 20), 3, 3),
    row("32", 22, "U + h5", "U^2 + h5 + E8(-1)^2", (2, 2), 1, 5),
    row("33", 18, "U + h5 + A4(-1)", "U^2 + h5 + E8(-1) + A4(-1)", (2, 6), 2, 5),
    row("34", 14, "U + h5 + E8(-1)", "U^2 + h5 + E8(-1)", (2, 10), 1, 5),
    row("35", 14, "U + h5 + A4(-1)^2", "U^2 + h5 + A4(-1)^2", (2, 10), 3, 5),
    row("36", 10, "U + h5 + E8(-1) + A4(-1)", "U^2 + h5 + A4(-1)", (2, 14), 2, 5),
    row("37", 10, "U + h5 + A4(-1)^3", "U + U(5) + h5 + A4(-1)", (2, 14), 4, 5),
    row("38", 6, "U + h5 + E8(-1)^2", "U^2 + h5", (2, 18), 1, 5),
    row("39", 6, "U + h5 + E8(-1) + A4(-1)^2", "U + U(5) + h5", (2, 18), 3, 5),
    fixed(
        row("40", 6, "U(5)^2 + A4(-1)", "U(5)^2 + h5", (2, 18), 5, 5),
        "U + h5 + A4(-1)^4",
        "U(5)^2 + h5",
        "printed 𝚲_G has rank 8; the only rank-20, (2, 18), 5-elementary a = 5 reading built from the table's blocks",
    ),
    fixed(row("41", 20, "U^2 + K7(-1)", "U^3 + E8(-1) + A6(-1)", (2, 4), 1, 7), "U^2 + K7", "U^3 + E8(-1) + A6(-1)", K_SIGN),
    row("42", 14, "U^2 + E8(-1)", "U^3 + E8(-1)", (2, 10), 0, 7),
    row("43", 14, "U + U(7) + E8(-1)", "U^2 + U(7) + E8(-1)", (2, 10), 2, 7),
    row("44", 8, "U^2 + E8(-1) + A6(-1)", "U^3 + K7", (2, 16), 1, 7),
    row("45", 8, "U + U(7) + E8(-1) + A6(-1)", "U^2 + U(7) + K7", (2, 16), 3, 7),
    fixed(row("46", 16, "K11 + E8(-1)", "U^3 + A10(-1)", (2, 8), 1, 11), "K11(-1) + E8(-1)", "U^3 + A10(-1)", K_SIGN),
    row("47", 6, "U^2 + E8(-1)^2", "U^3", (2, 18), 0, 11),
    row("48", 6, "U + U(11) + E8(-1)^2", "U^2 + U(11)", (2, 18), 2, 11),
    row("49", 14, "U + h13 + E8(-1)", "U^2 + h13 + E8(-1)", (2, 10), 1, 13),
    row("50", 10, "U^2 + E8(-1) + L17(-1)", "U^3 + L17(-1)", (2, 14), 1, 17),
    fixed(row("51", 8, "K19 + E8(-1)^2", "U^3 + K19(-1)", (2, 16), 1, 19), "K19(-1) + E8(-1)^2", "U^3 + K19", K_SIGN),
    fixed(
        row("52", 4, "U^2 + E8(-1)^2 + K23(-1)", "U + K23", (2, 20), 1, 23),
        "U^2 + E8(-1)^2 + K23",
        "U + K23(-1)",
        K_SIGN,
    ),
];

/// One of the four order-three automorphisms of cubic fourfolds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CubicCase {
    pub id: &'static str,
    pub label: &'static str,
    /// Moduli dimension of the family.
    pub d: usize,
    /// `𝐅^G` as printed (`None` for `{0}`).
    pub invariant: Option<&'static [&'static [i64]]>,
    /// `𝐅_G = T(Y)`.
    pub coinvariant: &'static str,
    pub sig_coinvariant: (usize, usize),
    pub length_invariant: usize,
    /// `A(Y)`; the first basis vector is `η`.
    pub algebraic: &'static [&'static [i64]],
    pub length_algebraic: usize,
    pub associated_k3: bool,
    pub rational: Option<bool>,
    /// Printed labeling witness `v` with `K_d = ⟨η, v⟩`, coordinates in the basis of `A(Y)`.
    pub labeling: Option<(u64, &'static [i64])>,
}

const FG_PHI35: &[&[i64]] = &[
    &[4, 2, -1, 1, 2, -2],
    &[2, 4, 1, 2, 1, -1],
    &[-1, 1, 4, 2, -2, -1],
    &[1, 2, 2, 4, -1, -2],
    &[2, 1, -2, -1, 4, -1],
    &[-2, -1, -1, -2, -1, 4],
];

const FG_PHI37: &[&[i64]] = &[
    &[6, 3, 3, 3, 3, 3, -3, 3],
    &[3, 6, 0, 0, 0, 0, -3, 0],
    &[3, 0, 6, 0, 3, 0, 0, 3],
    &[3, 0, 0, 6, 0, 3, 0, 3],
    &[3, 0, 3, 0, 6, 0, 0, 3],
    &[3, 0, 0, 3, 0, 6, -3, 0],
    &[-3, -3, 0, 0, 0, -3, 6, 0],
    &[3, 0, 3, 3, 3, 0, 0, 6],
];

const FG_PHI32: &[&[i64]] = &[
    &[4, 1, -2, -2, 1, 2, -2, -1, -2, -2, -2, 2],
    &[1, 4, -2, -1, 1, 0, 0, 1, -2, 1, 1, 2],
    &[-2, -2, 4, 2, -2, 0, 0, 1, 1, 1, 1, -1],
    &[-2, -1, 2, 4, 0, -2, 1, 2, 0, 2, 0, -2],
    &[1, 1, -2, 0, 4, -1, -1, -1, -1, 1, 0, -1],
    &[2, 0, 0, -2, -1, 4, -2, 0, 0, -1, 0, 2],
    &[-2, 0, 0, 1, -1, -2, 4, 1, 0, 0, 1, 0],
    &[-1, 1, 1, 2, -1, 0, 1, 4, 0, 2, 1, 0],
    &[-2, -2, 1, 0, -1, 0, 0, 0, 4, 0, 0, -2],
    &[-2, 1, 1, 2, 1, -1, 0, 2, 0, 4, 2, -1],
    &[-2, 1, 1, 0, 0, 0, 1, 1, 0, 2, 4, 0],
    &[2, 2, -1, -2, -1, 2, 0, 0, -2, -1, 0, 4],
];

const AY_PHI31: &[&[i64]] = &[&[3]];

const AY_PHI35: &[&[i64]] = &[
    &[3, 0, 0, 0, 0, 0, 0],
    &[0, 4, 2, -1, 1, 2, -2],
    &[0, 2, 4, 1, 2, 1, -1],
    &[0, -1, 1, 4, 2, -2, -1],
    &[0, 1, 2, 2, 4, -1, -2],
    &[0, 2, 1, -2, -1, 4, -1],
    &[0, -2, -1, -1, -2, -1, 4],
];

const AY_PHI37: &[&[i64]] = &[
    &[3, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 3, 0, 0, 0, 0, 0, 0, 0],
    &[1, 0, 3, 0, 0, 0, 0, 0, 0],
    &[1, 0, 0, 3, 0, 0, 0, 0, 0],
    &[1, 0, 0, 0, 3, 0, 0, 0, 0],
    &[1, 0, 0, 0, 0, 3, 0, 0, 0],
    &[1, 0, 0, 0, 0, 0, 3, 0, 0],
    &[1, 0, 0, 0, 0, 0, 0, 3, 0],
    &[1, 0, 0, 0, 0, 0, 0, 0, 3],
];

/// Row 9 is printed with the token `-&1` in its second column; symmetry fixes it to −1.
const AY_PHI32: &[&[i64]] = &[
    &[3, -1, -1, 1, -1, 1, -1, 1, 0, 1, 0, 1, 0],
    &[-1, 3, 1, -1, 1, -1, -1, -1, -1, 0, 1, -1, 1],
    &[-1, 1, 3, -1, -1, -1, -1, -1, -1, 0, 1, 0, 2],
    &[1, -1, -1, 3, -1, 1, -1, 1, 0, 1, -1, 0, -1],
    &[-1, 1, -1, -1, 3, -1, 1, 0, 1, -1, 1, 0, 0],
    &[1, -1, -1, 1, -1, 3, 1, 0, -1, 0, -2, 0, -1],
    &[-1, -1, -1, -1, 1, 1, 3, 0, 1, -1, -1, 0, -1],
    &[1, -1, -1, 1, 0, 0, 0, 3, 2, 1, 1, 0, 0],
    &[0, -1, -1, 0, 1, -1, 1, 2, 4, 1, 1, 1, -1],
    &[1, 0, 0, 1, -1, 0, -1, 1, 1, 3, 1, 1, -1],
    &[0, 1, 1, -1, 1, -2, -1, 1, 1, 1, 4, 1, 1],
    &[1, -1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 3, 0],
    &[0, 1, 2, -1, 0, -1, -1, 0, -1, -1, 1, 0, 4],
];

pub const CUBIC: &[CubicCase] = &[
    CubicCase {
        id: "phi31",
        label: "φ₃¹",
        d: 10,
        invariant: None,
        coinvariant: "U^2 + E8^2 + A2",
        sig_coinvariant: (20, 2),
        length_invariant: 0,
        algebraic: AY_PHI31,
        length_algebraic: 1,
        associated_k3: false,
        rational: None,
        labeling: None,
    },
    CubicCase {
        id: "phi35",
        label: "φ₃⁵",
        d: 7,
        invariant: Some(FG_PHI35),
        coinvariant: "U + U(3) + E6 + A2^3",
        sig_coinvariant: (14, 2),
        length_invariant: 5,
        algebraic: AY_PHI35,
        length_algebraic: 6,
        associated_k3: false,
        rational: None,
        labeling: None,
    },
    CubicCase {
        id: "phi37",
        label: "φ₃⁷",
        d: 6,
        invariant: Some(FG_PHI37),
        coinvariant: "U + U(3) + A2^5",
        sig_coinvariant: (12, 2),
        length_invariant: 8,
        algebraic: AY_PHI37,
        length_algebraic: 7,
        associated_k3: true,
        rational: Some(true),
        labeling: Some((14, &[0, 1, 1, 0, 0, 0, 0, 0, 0])),
    },
    CubicCase {
        id: "phi32",
        label: "φ₃²",
        d: 4,
        invariant: Some(FG_PHI32),
        coinvariant: "U + U(3) + A2^3",
        sig_coinvariant: (8, 2),
        length_invariant: 6,
        algebraic: AY_PHI32,
        length_algebraic: 5,
        associated_k3: true,
        rational: Some(true),
        labeling: Some((14, &[0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0])),
    },
];

/// The odd unimodular lattice containing `A(Y) ⊕ T(Y)`. The printed `[1]²¹ ⊕ [−1]³` has rank 24,
/// while ranks and signatures of every pair add up to 23 and `(21, 2)`.
pub const H4_READING: &str = "[1]^21 + [-1]^2";

/// One row of the invariant/coinvariant pairs induced on the twisted Laza–Saccà–Voisin manifold.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LsvRow {
    pub id: &'static str,
    pub label: &'static str,
    pub coinvariant: &'static str,
    /// Expression checked when the printed one cannot be parsed.
    pub coinvariant_reading: Option<&'static str>,
    pub invariant: &'static str,
    pub sig_invariant: (usize, usize),
    pub birational_to_j: bool,
    pub p: u64,
    /// Matching cubic case whose `𝐅_G(−1)` should share the genus of `𝐋_G`.
    pub cubic: Option<&'static str>,
}

pub const LSV: &[LsvRow] = &[
    LsvRow {
        id: "phi21",
        label: "φ₂¹",
        coinvariant: "U^2 + D4(-1)^3",
        coinvariant_reading: None,
        invariant: "U + E6(-2)",
        sig_invariant: (1, 7),
        birational_to_j: true,
        p: 2,
        cubic: None,
    },
    LsvRow {
        id: "phi23",
        label: "φ₂³",
        coinvariant: "U + [2] + [-2]^9",
        coinvariant_reading: None,
        invariant: "[2] + [-2] + E6(-1) + D4(-1)",
        sig_invariant: (1, 11),
        birational_to_j: true,
        p: 2,
        cubic: None,
    },
    LsvRow {
        id: "phi31",
        label: "φ₃¹",
        coinvariant: "U^⊕ + E8(-1)^2 + A2(-1)",
        coinvariant_reading: Some("U^2 + E8(-1)^2 + A2(-1)"),
        invariant: "U(3)",
        sig_invariant: (1, 1),
        birational_to_j: false,
        p: 3,
        cubic: Some("phi31"),
    },
    LsvRow {
        id: "phi35",
        label: "φ₃⁵",
        coinvariant: "U + U(3) + E6(-1) + A2(-1)^3",
        coinvariant_reading: None,
        invariant: "U(3) + E6*(-3)",
        sig_invariant: (1, 7),
        birational_to_j: false,
        p: 3,
        cubic: Some("phi35"),
    },
    LsvRow {
        id: "phi37",
        label: "φ₃⁷",
        coinvariant: "U + U(3) + A2(-1)^5",
        coinvariant_reading: None,
        invariant: "U(3) + E6*(-3) + A2(-1)",
        sig_invariant: (1, 9),
        birational_to_j: true,
        p: 3,
        cubic: Some("phi37"),
    },
    LsvRow {
        id: "phi32",
        label: "φ₃²",
        coinvariant: "U + U(3) + A2(-1)^3",
        coinvariant_reading: None,
        invariant: "U(3) + E6(-1) + A2(-1)^3",
        sig_invariant: (1, 13),
        birational_to_j: true,
        p: 3,
        cubic: Some("phi32"),
    },
];
