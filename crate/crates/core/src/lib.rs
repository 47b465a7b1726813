//! Coverage of a convex quadrilateral by tangent elliptical UAV footprints.
//!
//! An optimal equal-circle packing of the unit square is carried onto the
//! target quadrilateral by a projective homography. Each circle becomes an
//! ellipse; each ellipse gets one UAV whose altitude minimizes the worst-case
//! air-to-ground path loss over its footprint, with the antenna tilt and
//! beam half-angle that produce exactly that footprint.
//!
//! ```
//! use quadcover::{plan, Environment, Quadrilateral, Scenario};
//!
//! let quad = Quadrilateral::from_coords([[-100.0, -100.0], [200.0, -300.0], [1500.0, 250.0], [50.0, 400.0]])?;
//! let plan = plan(&Scenario::new(quad, 4, 2e9, Environment::suburban()))?;
//! assert_eq!(plan.placements.len(), 4);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod channel;
pub mod conic;
pub mod geometry;
pub mod homography;
pub mod oracle;
pub mod packing;
pub mod placement;
pub mod planner;
pub mod search;
pub mod verify;

pub use channel::{p_los, pl_max, w_factor, Environment, LinkGeometry};
pub use conic::{
    classify, ellipse_area, extract_ellipse, map_circle, tangency_check, Circle, Conic, ConicKind, EllipseFootprint,
    Relation,
};
pub use geometry::{GeometryError, Point2, Quadrilateral};
pub use homography::{Homography, HomographyError, VanishingPoint};
pub use packing::{get_packing, load_packing_file, packing_density, PackingConfig, PackingError};
pub use placement::{
    antenna_angles, assemble_placement, optimize_altitude, projection_offset, OffsetSign, UavPlacement,
};
pub use planner::{
    coverage_fraction_mc, hexagon_comparison, plan, plan_with, rectangle_comparison, OffsetPolicy, Plan, PlanError,
    Scenario, Validation,
};
