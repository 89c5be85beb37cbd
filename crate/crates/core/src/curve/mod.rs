//! Metric-graph models of tropical curves with parallel-ray classes.

mod canonical;
mod glue;
mod model;
mod point;
mod subdivide;
mod subgraph;
mod union;

pub use canonical::canonical_model;
pub use glue::{glue, validate_embedding, EdgeImage, Embedding, Glued};
pub use model::{parse_length, Curve, CurveDesc, Dir, Edge, EdgeDesc, Vertex, INF_SUFFIX};
pub use point::{Distance, PointRef};
pub use subdivide::{subdivide, Subdivision};
pub use subgraph::{split_components, Component, Piece, SubCurve, Subgraph, SubgraphSpec};
pub use union::disjoint_union;
