use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::Atom;
use crate::scalar::Scalar;

/// Number of heuristic features (and weights).
pub const NUM_FEATURES: usize = 5;

/// A prover variant: linear scoring weights over
/// `(bias, depth, size, vars, body_len)` plus a goal depth limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeuristicParams<S> {
    pub weights: [S; NUM_FEATURES],
    pub depth_limit: usize,
}

impl<S: Scalar> HeuristicParams<S> {
    pub fn new(weights: [S; NUM_FEATURES], depth_limit: usize) -> Result<Self> {
        let p = HeuristicParams {
            weights,
            depth_limit,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth_limit < 1 {
            return Err(Error::InvalidArgument(
                "depth_limit must be at least 1".into(),
            ));
        }
        if let Some(i) = self.weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument(format!("weight {i} is not finite")));
        }
        Ok(())
    }

    /// Same depth limit, weights multiplied by `c`.
    pub fn scaled(&self, c: S) -> Self {
        HeuristicParams {
            weights: self.weights.map(|w| w * c),
            depth_limit: self.depth_limit,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("params serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }
}

impl<S: Scalar> Default for HeuristicParams<S> {
    /// Uniform scoring, so selection falls back to creation order
    /// (breadth-first), with room for 16 levels of subgoals.
    fn default() -> Self {
        HeuristicParams {
            weights: [S::zero(); NUM_FEATURES],
            depth_limit: 16,
        }
    }
}

/// What the heuristic sees of a goal node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureVector<S>(pub [S; NUM_FEATURES]);

/// `(1, depth, size, distinct vars, body length of the producing clause)`.
///
/// Size counts the predicate plus every functor and variable occurrence.
pub fn features<S: Scalar>(
    goal: &Atom,
    depth: usize,
    producing_clause_body_len: usize,
) -> FeatureVector<S> {
    FeatureVector([
        S::one(),
        S::from_count(depth),
        S::from_count(goal.size()),
        S::from_count(goal.vars().len()),
        S::from_count(producing_clause_body_len),
    ])
}

/// Linear score: dot product of weights and features, summed left to right.
pub fn score<S: Scalar>(params: &HeuristicParams<S>, f: &FeatureVector<S>) -> S {
    params
        .weights
        .iter()
        .zip(&f.0)
        .fold(S::zero(), |acc, (w, x)| acc + *w * *x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory_io::parse_goal;

    fn f(text: &str, depth: usize, body: usize) -> [f64; 5] {
        features::<f64>(&parse_goal(text).unwrap(), depth, body).0
    }

    #[test]
    fn feature_examples() {
        assert_eq!(f("even(z)", 0, 0), [1.0, 0.0, 2.0, 0.0, 0.0]);
        assert_eq!(f("even(s(s(X)))", 2, 1), [1.0, 2.0, 4.0, 1.0, 1.0]);
        assert_eq!(f("plus(X,Y,X)", 1, 2), [1.0, 1.0, 4.0, 2.0, 2.0]);
    }

    #[test]
    fn score_examples() {
        let fv = FeatureVector([1.0, 2.0, 3.0, 1.0, 1.0]);
        let zero = HeuristicParams::new([0.0; 5], 3).unwrap();
        assert_eq!(score(&zero, &fv), 0.0);
        let bias = HeuristicParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 3).unwrap();
        assert_eq!(score(&bias, &fv), 1.0);
        let mixed = HeuristicParams::new([0.5, -1.0, 0.0, 0.0, 0.0], 3).unwrap();
        assert_eq!(score(&mixed, &fv), -1.5);
        let mixed32 = HeuristicParams::<f32>::new([0.5, -1.0, 0.0, 0.0, 0.0], 3).unwrap();
        assert_eq!(
            score(&mixed32, &FeatureVector([1.0, 2.0, 3.0, 1.0, 1.0])),
            -1.5f32
        );
    }

    #[test]
    fn params_validation() {
        assert!(HeuristicParams::new([0.0f64; 5], 0).is_err());
        assert!(HeuristicParams::new([0.0, f64::NAN, 0.0, 0.0, 0.0], 2).is_err());
        assert!(
            HeuristicParams::<f64>::from_json(r#"{"weights":[1,2,3],"depth_limit":4}"#).is_err()
        );
        let p = HeuristicParams::<f64>::from_json(r#"{"weights":[1,2,3,4,0.5],"depth_limit":4}"#)
            .unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"weights":[1.0,2.0,3.0,4.0,0.5],"depth_limit":4}"#
        );
    }
}
