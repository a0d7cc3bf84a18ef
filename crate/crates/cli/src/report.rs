use serde::Serialize;

/// Envelope shared by every command. Field order is the serialization order.
#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub reference: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, result: T) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            reference: reference(command),
            ring: None,
            seed: None,
            result,
        }
    }

    pub fn ring(mut self, ring: &midpoint::RingSpec) -> Self {
        self.ring = Some(ring.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// One-line statement of what each command computes.
pub fn reference(command: &str) -> &'static str {
    match command {
        "hull-member" => "membership in the T-convex hull Cnv_T(X) = Cnv_Q(X) restricted to T-coefficient combinations",
        "caratheodory" => "affinely independent positive support of a rational hull point",
        "synth-formula" => "existential chain formula with parameters in I°(T) defining y = sum xi_i x_i",
        "verify-formula" => "symbolic check that a chain formula determines y = sum xi_i x_i",
        "eval-term" => "exact evaluation of a barycentric term",
        "laws-check" => "idempotence, twisted commutativity, entropicity and cancellativity of x y p",
        "closure" => "bounded closure of a point set under T-segments",
        "probe-convexity" => "search for a rational combination leaving the T-hull",
        "affine-equiv" => "affine equivalence of V-polytopes by vertex correspondence",
        "iso-check" => "isomorphism of (C, I°(T)) and (C', I°(T)) for rational polytopes, decided by affine equivalence",
        "hexagon-demo" => "centrally symmetric hexagon: a0 a3 1/2 = a1 a4 1/2 while no vertex is in the hull of the others",
        _ => "",
    }
}
