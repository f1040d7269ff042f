//! Inflection points of real hyperelliptic curves, computed exactly, and
//! their behaviour under patchworking degenerations into elliptic pieces.

pub mod curve;
pub mod error;
pub mod inflection;
pub mod patchwork;
pub mod registry;
pub mod report;
pub mod specialize;
pub mod svg;
pub mod sweep;
pub mod tropical;
pub mod wronskian;

pub use curve::{
    rational_sqrt, Branch, Component, CurvePoint, Divisor, DivisorTerm, FFElement, HyperellipticCurve,
    LocalPoint, XCoord,
};
pub use error::{Error, ErrorKind, Result};
pub use inflection::{
    analyze, analyze_wronskian, elliptic_complete_trichotomy, inflection_divisor, parity_vector,
    real_inflection_summary, InflectionReport, SeriesBasis,
};
pub use registry::{isolator_registry, wronskian_registry, Registry, Toolkit};
pub use wronskian::{full_wronskian, Wronskian, WronskianStrategy};
pub use patchwork::{
    assemble_family, glue_roots, induced_subdivision, initial_degeneration, instantiate, EllipticPiece, NuFunction,
    PatchworkFamily, Subdivision,
};
pub use tropical::{
    build_skeleton, specialize_divisor, specialize_inflection, tropicalize, ComplexDivisor, LeadingTerm,
    MetrizedComplex, SkeletonVertex, TropicalPlaneCurve,
};
pub use sweep::{run_sweep, SampleRecord, SweepResult, SweepSample};
pub use specialize::{
    compatibility_check, elliptic_inflection, lower_bound_instances, marked_point_weights, regeneration_check,
    EllipticSeries,
};
