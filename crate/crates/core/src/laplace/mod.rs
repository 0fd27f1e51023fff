//! Closed-form Laplace transforms, their numerical forward and inverse
//! counterparts, and the homogeneity check η(bp) = b^ν η(p).

mod descriptor;
mod quadrature;
mod talbot;

pub use descriptor::{
    lt_eval, lt_eval_continued, lt_eval_real, power_transform, TransformDescriptor,
};
pub use quadrature::{lt_forward_numeric, QuadratureConfig};
pub use talbot::{lt_invert_fn, lt_invert_grid, lt_invert_numeric, InversionConfig};

/// Returns (η(bp), b^ν η(p)) for η(p) = p^ν.
pub fn self_similarity_check(nu: f64, b: f64, p: f64) -> (f64, f64) {
    let eta = |x: f64| x.powf(nu);
    (eta(b * p), b.powf(nu) * eta(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneity_examples() {
        assert_eq!(self_similarity_check(0.5, 4.0, 1.0), (2.0, 2.0));
        let (l, r) = self_similarity_check(1.0, 3.0, 0.25);
        assert_eq!((l, r), (0.75, 0.75));
        let (l, r) = self_similarity_check(0.7, 2.3, 1.9);
        assert!((l - r).abs() < 1e-15 * l);
    }
}
