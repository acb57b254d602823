use num_traits::One;

use crate::transforms::LegVector;

/// `T(a)` is lattice-free iff `κ(a) >= 1`.
pub fn is_lattice_free_axis(a: &LegVector) -> bool {
    a.kappa() >= crate::exactgeom::Rat::one()
}

/// `T(a)` is maximal lattice-free iff `κ(a) = 1`.
pub fn is_maximal_lattice_free_axis(a: &LegVector) -> bool {
    a.kappa().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{int, rat};

    #[test]
    fn kappa_criteria() {
        let l = |a: &[i64]| LegVector::from_ints(a).unwrap();
        assert!(is_lattice_free_axis(&l(&[2, 2])));
        assert!(!is_lattice_free_axis(&l(&[3, 3])));
        assert!(is_lattice_free_axis(&l(&[1, 5])));
        assert!(is_maximal_lattice_free_axis(&l(&[2, 3, 6])));
        assert!(!is_maximal_lattice_free_axis(&l(&[1, 5])));
        let half = LegVector::new(vec![int(3), int(3), rat(9, 2), int(9)]).unwrap();
        assert!(is_maximal_lattice_free_axis(&half));
    }
}
