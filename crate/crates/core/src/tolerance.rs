use serde::Serialize;

/// Pass thresholds for every verified identity. Lengths are relative to
/// the reference triangle's diameter, areas are relative to the quantity
/// being compared, angles are in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Incidence and concurrency residuals of constructed points.
    pub construct: f64,
    /// Angle identities.
    pub angle: f64,
    /// Area identities (geometric mean, inscription, inverse pairs).
    pub area: f64,
    /// Closed-form pedal area ratio.
    pub pedal_formula: f64,
    /// Agreement of the two routes to each pedal point.
    pub route_agreement: f64,
    /// Six interior pedal points, relative to the fitted radius.
    pub concyclic: f64,
    /// Six exterior points, relative to the fitted radius.
    pub exterior_concyclic: f64,
    /// Constructed extremal areas against the brute-force sweeps.
    pub oracle_relative: f64,
    /// How far any sweep sample may beat the construction, times |ABC|.
    pub oracle_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            construct: 1e-8,
            angle: 1e-9,
            area: 1e-9,
            pedal_formula: 1e-10,
            route_agreement: 1e-7,
            concyclic: 1e-7,
            exterior_concyclic: 1e-6,
            oracle_relative: 1e-6,
            oracle_slack: 1e-9,
        }
    }
}

impl Tolerances {
    /// Overrides the interior concyclicity threshold; the exterior one keeps
    /// its tenfold allowance for inversion noise.
    pub fn with_concyclic(mut self, tol: f64) -> Self {
        self.concyclic = tol;
        self.exterior_concyclic = 10.0 * tol;
        self
    }

    pub fn with_construct(mut self, tol: f64) -> Self {
        self.construct = tol;
        self
    }
}
