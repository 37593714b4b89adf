use super::types::{Direction, Measure};
use crate::error::{check_dim, Error, Result};

/// `ν = μ · exp h`, i.e. `dν/dμ = exp h`.
pub fn cone_automorphism(mu: &Measure, h: &Direction) -> Result<Measure> {
    if !mu.in_cone() {
        return Err(Error::NotInCone);
    }
    check_dim(mu.len(), h.len())?;
    Measure::new(mu.weights().iter().zip(h.values()).map(|(m, v)| m * v.exp()).collect())
}

/// The unique automorphism direction carrying `μ` to `ν`: `h = ln(ν/μ)`.
pub fn automorphism_log(mu: &Measure, nu: &Measure) -> Result<Direction> {
    if !(mu.in_cone() && nu.in_cone()) {
        return Err(Error::NotInCone);
    }
    check_dim(mu.len(), nu.len())?;
    Direction::new(mu.weights().iter().zip(nu.weights()).map(|(m, n)| (n / m).ln()).collect())
}

/// One-parameter subgroup orbit `f(s) = f₀ · exp(s h)`.
pub fn cone_geodesic(f0: &Measure, h: &Direction, s: f64) -> Result<Measure> {
    cone_automorphism(f0, &h.scaled(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(w: &[f64]) -> Measure {
        Measure::new(w.to_vec()).unwrap()
    }

    fn d(h: &[f64]) -> Direction {
        Direction::new(h.to_vec()).unwrap()
    }

    fn close(a: &Measure, b: &Measure, rel: f64) -> bool {
        a.weights().iter().zip(b.weights()).all(|(x, y)| (x - y).abs() <= rel * x.abs().max(y.abs()))
    }

    #[test]
    fn examples() {
        let nu = cone_automorphism(&m(&[1.0, 1.0]), &d(&[2f64.ln(), 0.0])).unwrap();
        assert!(close(&nu, &m(&[2.0, 1.0]), 1e-15));
        assert_eq!(cone_automorphism(&m(&[0.3, 2.0]), &Direction::zero(2)).unwrap(), m(&[0.3, 2.0]));
        assert_eq!(cone_automorphism(&m(&[0.0, 2.0]), &Direction::zero(2)), Err(Error::NotInCone));

        assert_eq!(automorphism_log(&m(&[1.5, 2.0]), &m(&[1.5, 2.0])).unwrap(), Direction::zero(2));
        let h = automorphism_log(&m(&[1.0, 1.0]), &m(&[2.0, 1.0])).unwrap();
        assert_eq!(h.values(), &[2f64.ln(), 0.0]);
        assert!(automorphism_log(&m(&[1.0, -1.0]), &m(&[2.0, 1.0])).is_err());

        assert_eq!(cone_geodesic(&m(&[1.0, 1.0]), &d(&[1.0, -1.0]), 0.0).unwrap(), m(&[1.0, 1.0]));
        let g = cone_geodesic(&m(&[1.0, 1.0]), &d(&[1.0, -1.0]), 1.0).unwrap();
        assert!(close(&g, &m(&[1f64.exp(), (-1f64).exp()]), 1e-15));
    }

    fn cone_vec() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(1e-3f64..10.0, 4)
    }

    fn dir_vec() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-3.0f64..3.0, 4)
    }

    proptest! {
        #[test]
        fn composition_adds_directions(mu in cone_vec(), h1 in dir_vec(), h2 in dir_vec()) {
            let (mu, h1, h2) = (m(&mu), d(&h1), d(&h2));
            let twice = cone_automorphism(&cone_automorphism(&mu, &h1).unwrap(), &h2).unwrap();
            let once = cone_automorphism(&mu, &h1.add(&h2).unwrap()).unwrap();
            prop_assert!(close(&twice, &once, 1e-12));
        }

        #[test]
        fn log_is_a_transitivity_witness(mu in cone_vec(), nu in cone_vec()) {
            let (mu, nu) = (m(&mu), m(&nu));
            let h = automorphism_log(&mu, &nu).unwrap();
            prop_assert!(close(&cone_automorphism(&mu, &h).unwrap(), &nu, 1e-14));
        }

        #[test]
        fn subgroup_law(f0 in cone_vec(), h in dir_vec(), s in -2.0f64..2.0, t in -2.0f64..2.0) {
            let (f0, h) = (m(&f0), d(&h));
            let stepped = cone_geodesic(&cone_geodesic(&f0, &h, s).unwrap(), &h, t).unwrap();
            prop_assert!(close(&stepped, &cone_geodesic(&f0, &h, s + t).unwrap(), 1e-12));
        }
    }
}
