//! Reference rows: the value table for three-term forms, the `S_D(l)`
//! table and known density endpoint values.

/// One row of the three-term value table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueRow {
    /// Literal accepted by [`crate::literal::parse_tuple`].
    pub literal: &'static str,
    pub label: &'static str,
    /// `m(P_D)` to four decimals.
    pub m: f64,
    pub log_r0: Option<f64>,
    /// `α = (r2/r1) e^{iγ0}`, display form.
    pub alpha: Option<&'static str>,
    pub dilog: Option<f64>,
    /// Experimental constant `C`.
    pub c: f64,
}

pub const VALUE_TABLE: [ValueRow; 8] = [
    ValueRow {
        literal: "3,2,1",
        label: "(3,2,1)",
        m: 1.0986,
        log_r0: Some(1.0986),
        alpha: None,
        dilog: None,
        c: 0.028,
    },
    ValueRow {
        literal: "4,2,1",
        label: "(4,2,1)",
        m: 1.3862,
        log_r0: Some(1.3862),
        alpha: None,
        dilog: None,
        c: 0.064,
    },
    ValueRow {
        literal: "e^2,e,e",
        label: "(e^2,e,e)",
        m: 2.0,
        log_r0: Some(2.0),
        alpha: None,
        dilog: None,
        c: 0.080,
    },
    ValueRow {
        literal: "1,1,1",
        label: "(1,1,1)",
        m: 0.3203,
        log_r0: None,
        alpha: Some("e^{iπ/3}"),
        dilog: Some(1.0149),
        c: 0.038,
    },
    ValueRow {
        literal: "sqrt(2),1,1",
        label: "(√2,1,1)",
        m: 0.4648,
        log_r0: None,
        alpha: Some("e^{iπ/2}"),
        dilog: Some(0.9159),
        c: 0.027,
    },
    ValueRow {
        literal: "1.732,1,1",
        label: "(1.732,1,1)",
        m: 0.5815,
        log_r0: None,
        alpha: Some("e^{i2π/3}"),
        dilog: Some(0.6766),
        c: 0.027,
    },
    ValueRow {
        literal: "1.8478,1,1",
        label: "(1.8478,1,1)",
        m: 0.6272,
        log_r0: None,
        alpha: Some("e^{i3π/4}"),
        dilog: Some(0.5238),
        c: 0.034,
    },
    ValueRow {
        literal: "1.932,1,1",
        label: "(1.932,1,1)",
        m: 0.6624,
        log_r0: None,
        alpha: Some("e^{i5π/6}"),
        dilog: Some(0.3569),
        c: 0.035,
    },
];

/// The tabulated `m` of the `(1,1,1)` row is `0.3203`; the closed form and
/// both series give `D(e^{iπ/3})/π`, which is this value.
pub const ONES_MAHLER: f64 = 0.323_065_947_2;

/// One row of the `S_D(l)` table at `N = 200`, 512 bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdlRow {
    pub literal: &'static str,
    pub label: &'static str,
    pub l: u32,
    pub value: f64,
    /// Half a unit in the last tabulated digit, rounded up to `5·10^-k`.
    pub tolerance: f64,
}

pub const SDL_TABLE: [SdlRow; 9] = [
    SdlRow {
        literal: "1,1,-1",
        label: "(1,1,-1)",
        l: 1,
        value: 0.5511,
        tolerance: 5e-4,
    },
    SdlRow {
        literal: "1,1,-1",
        label: "(1,1,-1)",
        l: 2,
        value: 0.0511,
        tolerance: 5e-4,
    },
    SdlRow {
        literal: "1,1,-1",
        label: "(1,1,-1)",
        l: 3,
        value: -0.28,
        tolerance: 5e-3,
    },
    SdlRow {
        literal: "1,2,1",
        label: "(1,2,1)",
        l: 1,
        value: 0.5040,
        tolerance: 5e-4,
    },
    SdlRow {
        literal: "1,2,1",
        label: "(1,2,1)",
        l: 2,
        value: 0.0039,
        tolerance: 5e-4,
    },
    SdlRow {
        literal: "1,2,1",
        label: "(1,2,1)",
        l: 3,
        value: -0.329,
        tolerance: 5e-3,
    },
    SdlRow {
        literal: "4,1,1",
        label: "(4,1,1)",
        l: 1,
        value: 0.2164,
        tolerance: 5e-4,
    },
    SdlRow {
        literal: "4,1,1",
        label: "(4,1,1)",
        l: 2,
        value: -0.2836,
        tolerance: 5e-4,
    },
    SdlRow {
        literal: "4,1,1",
        label: "(4,1,1)",
        l: 3,
        value: -0.6169,
        tolerance: 5e-4,
    },
];

/// Endpoint value of `a·I(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPoint {
    pub steps: [f64; 3],
    pub a: f64,
    pub value: f64,
    pub tolerance: f64,
}

pub const DENSITY_ENDPOINTS: [DensityPoint; 4] = [
    DensityPoint {
        steps: [3.0, 2.0, 1.0],
        a: 6.0,
        value: 0.159,
        tolerance: 1e-3,
    },
    DensityPoint {
        steps: [4.0, 2.0, 1.0],
        a: 1.0,
        value: 0.056_269_77,
        tolerance: 1e-7,
    },
    DensityPoint {
        steps: [5.0, 4.0, 3.0],
        a: 12.0,
        value: 0.071_176_254,
        tolerance: 1e-7,
    },
    DensityPoint {
        steps: [1.0, 1.0, 1.0],
        a: 3.0,
        value: 0.276,
        tolerance: 1e-3,
    },
];

/// Step lengths of the four reference walks.
pub const REFERENCE_WALKS: [[f64; 3]; 4] = [
    [3.0, 2.0, 1.0],
    [4.0, 2.0, 1.0],
    [5.0, 4.0, 3.0],
    [1.0, 1.0, 1.0],
];
