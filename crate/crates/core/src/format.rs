//! Structured-text records for bodies. Matrices are stored row-major.
//!
//! ```toml
//! dimension = 2
//! shape = "linear_image"
//! transform = [2.0, 0.0, 0.0, 2.0]
//!
//! [base]
//! dimension = 2
//! shape = "ball"
//! radius = 1.0
//! ```

use serde::{Deserialize, Serialize};

use crate::body::{Halfspace, Shape, SymmetricConvexBody};
use crate::error::Error;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyRecord {
    pub dimension: usize,
    #[serde(flatten)]
    pub shape: ShapeRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeRecord {
    Ball {
        radius: f64,
    },
    Box {
        halfwidths: Vec<f64>,
    },
    Ellipsoid {
        q_matrix: Vec<f64>,
    },
    Polytope {
        halfspaces: Vec<Halfspace>,
    },
    LinearImage {
        transform: Vec<f64>,
        base: Box<BodyRecord>,
    },
    Intersection {
        left: Box<BodyRecord>,
        right: Box<BodyRecord>,
    },
}

impl From<SymmetricConvexBody> for BodyRecord {
    fn from(body: SymmetricConvexBody) -> Self {
        BodyRecord::from(&body)
    }
}

impl From<&SymmetricConvexBody> for BodyRecord {
    fn from(body: &SymmetricConvexBody) -> Self {
        let shape = match body.shape() {
            Shape::Ball { radius } => ShapeRecord::Ball { radius: *radius },
            Shape::Box { halfwidths } => ShapeRecord::Box {
                halfwidths: halfwidths.clone(),
            },
            Shape::Ellipsoid(e) => ShapeRecord::Ellipsoid {
                q_matrix: linalg::to_row_major(e.q()),
            },
            Shape::Polytope { halfspaces } => ShapeRecord::Polytope {
                halfspaces: halfspaces.clone(),
            },
            Shape::LinearImage(li) => ShapeRecord::LinearImage {
                transform: linalg::to_row_major(li.transform()),
                base: Box::new(li.base().into()),
            },
            Shape::Intersection(a, b) => ShapeRecord::Intersection {
                left: Box::new(a.as_ref().into()),
                right: Box::new(b.as_ref().into()),
            },
        };
        BodyRecord {
            dimension: body.dim(),
            shape,
        }
    }
}

impl TryFrom<BodyRecord> for SymmetricConvexBody {
    type Error = Error;

    fn try_from(rec: BodyRecord) -> Result<Self, Error> {
        let n = rec.dimension;
        let body = match rec.shape {
            ShapeRecord::Ball { radius } => SymmetricConvexBody::ball(n, radius)?,
            ShapeRecord::Box { halfwidths } => SymmetricConvexBody::cube(halfwidths)?,
            ShapeRecord::Ellipsoid { q_matrix } => {
                SymmetricConvexBody::ellipsoid(linalg::from_row_major(n, n, &q_matrix)?)?
            }
            ShapeRecord::Polytope { halfspaces } => SymmetricConvexBody::polytope(n, halfspaces)?,
            ShapeRecord::LinearImage { transform, base } => SymmetricConvexBody::linear_image(
                linalg::from_row_major(n, n, &transform)?,
                SymmetricConvexBody::try_from(*base)?,
            )?,
            ShapeRecord::Intersection { left, right } => SymmetricConvexBody::intersect(
                SymmetricConvexBody::try_from(*left)?,
                SymmetricConvexBody::try_from(*right)?,
            )?,
        };
        if body.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: body.dim(),
            });
        }
        Ok(body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{random_body, ShapeKind};

    #[test]
    fn nested_toml_document() {
        let text = r#"
dimension = 2
shape = "intersection"

[left]
dimension = 2
shape = "linear_image"
transform = [2, 0, 0, 2]

[left.base]
dimension = 2
shape = "ball"
radius = 1

[right]
dimension = 2
shape = "box"
halfwidths = [0.5, 3.0]
"#;
        let body: SymmetricConvexBody = toml::from_str(text).unwrap();
        assert!(body.contains(&[0.4, 1.9]).unwrap());
        assert!(!body.contains(&[0.6, 0.0]).unwrap());
        assert!(!body.contains(&[0.0, 2.1]).unwrap());
    }

    #[test]
    fn malformed_records_are_rejected() {
        let wrong_len = "dimension = 2\nshape = \"ellipsoid\"\nq_matrix = [1, 0, 0]\n";
        assert!(toml::from_str::<SymmetricConvexBody>(wrong_len).is_err());
        let wrong_dim = "dimension = 3\nshape = \"box\"\nhalfwidths = [1, 1]\n";
        assert!(toml::from_str::<SymmetricConvexBody>(wrong_dim).is_err());
        let unknown = "dimension = 2\nshape = \"torus\"\n";
        assert!(toml::from_str::<SymmetricConvexBody>(unknown).is_err());
    }

    #[test]
    fn records_survive_a_round_trip() {
        for (i, kind) in [ShapeKind::Ball, ShapeKind::Box, ShapeKind::Ellipsoid, ShapeKind::Polytope]
            .into_iter()
            .enumerate()
        {
            let body = random_body(kind, 3, 1.0, i as u64).unwrap();
            let text = toml::to_string(&body).unwrap();
            let back: SymmetricConvexBody = toml::from_str(&text).unwrap();
            assert_eq!(BodyRecord::from(&body), BodyRecord::from(&back));
        }
    }
}
