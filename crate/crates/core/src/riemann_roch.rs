//! Adjunction and Riemann-Roch at the level of Euler characteristics.
//!
//! Individual cohomology dimensions h^0, h^1, h^2 are never computed: the
//! lattice model has no geometric data to compute them from.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::{rat, Rational};

/// Arithmetic and geometric genus of a curve, `0 <= pg <= pa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusData {
    pa: i64,
    pg: i64,
}

impl GenusData {
    pub fn new(pa: i64, pg: i64) -> Result<Self> {
        if pg < 0 {
            return Err(Error::InvalidParameter {
                name: "pg",
                reason: alloc::format!("must be >= 0, got {pg}"),
            });
        }
        if pg > pa {
            return Err(Error::InvalidParameter {
                name: "pg",
                reason: alloc::format!("geometric genus {pg} exceeds arithmetic genus {pa}"),
            });
        }
        Ok(Self { pa, pg })
    }

    pub fn pa(&self) -> i64 {
        self.pa
    }

    pub fn pg(&self) -> i64 {
        self.pg
    }
}

/// `p_a(C) = (C.C + K.C)/2 + 1`. Non-integer results mean `C` is not the
/// class of a curve.
pub fn arithmetic_genus(surface: &SurfaceModel, c: &DivisorClass) -> Result<Rational> {
    let cc = surface.intersect(c, c)?;
    let kc = surface.intersect(surface.canonical(), c)?;
    Ok((cc + kc) / rat(2) + Rational::one())
}

/// Arithmetic genus as an integer, or `None` if the class fails the parity
/// condition.
pub fn integral_arithmetic_genus(surface: &SurfaceModel, c: &DivisorClass) -> Result<Option<i64>> {
    let pa = arithmetic_genus(surface, c)?;
    if !pa.is_integer() {
        return Ok(None);
    }
    Ok(i64::try_from(pa.to_integer()).ok())
}

/// `chi(O_X(D)) = chi(O_X) + D.(D - K)/2`.
pub fn chi_of_divisor(surface: &SurfaceModel, d: &DivisorClass) -> Result<Rational> {
    surface.lattice().check(d)?;
    let d_minus_k = d - surface.canonical();
    Ok(rat(surface.chi()) + surface.intersect(d, &d_minus_k)? / rat(2))
}

/// Right-hand side of the self-intersection identity obtained from
/// Riemann-Roch applied to `mK + C`, with the alternating sum of cohomology
/// dimensions replaced by `chi(mK + C)`:
///
/// `chi/(m-1) + m K^2/2 + 2 pa + pa/(m-1) - 2 - 1/(m-1) - chi(mK+C)/(m-1)`.
///
/// For every class and every `m != 1` this equals `C.C`.
pub fn self_intersection_via_chi(
    surface: &SurfaceModel,
    c: &DivisorClass,
    m: i64,
) -> Result<Rational> {
    if m == 1 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: "m = 1 divides by m - 1".into(),
        });
    }
    let pa = arithmetic_genus(surface, c)?;
    let k2 = surface.k_squared();
    let twisted = surface
        .canonical()
        .scale(&rat(m))
        .add_scaled(&Rational::one(), c);
    let chi_twisted = chi_of_divisor(surface, &twisted)?;
    let inv = Rational::one() / rat(m - 1);
    let chi = rat(surface.chi());
    Ok(
        &chi * &inv + rat(m) * k2 / rat(2) + rat(2) * &pa + &pa * &inv
            - rat(2)
            - &inv
            - chi_twisted * &inv,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blow_up, make_projective_plane};

    #[test]
    fn genus_of_lines_and_cubics() {
        let p2 = make_projective_plane();
        assert_eq!(
            arithmetic_genus(&p2, &DivisorClass::from_ints(&[1])).unwrap(),
            rat(0)
        );
        assert_eq!(
            arithmetic_genus(&p2, &DivisorClass::from_ints(&[3])).unwrap(),
            rat(1)
        );
        let bl2 = blow_up(&p2, 2).unwrap();
        let line = DivisorClass::from_ints(&[1, -1, -1]);
        assert_eq!(arithmetic_genus(&bl2, &line).unwrap(), rat(0));
    }

    #[test]
    fn plane_curve_genus_formula() {
        let p2 = make_projective_plane();
        for d in 1..20i64 {
            let pa = arithmetic_genus(&p2, &DivisorClass::from_ints(&[d])).unwrap();
            assert_eq!(pa, rat((d - 1) * (d - 2) / 2));
        }
    }

    #[test]
    fn parity_failure_is_none() {
        let p2 = make_projective_plane();
        let bl1 = blow_up(&p2, 1).unwrap();
        // 2E1: C^2 = -4, K.C = -2, pa = -2 (integral but negative)
        assert_eq!(
            integral_arithmetic_genus(&bl1, &DivisorClass::from_ints(&[0, 2])).unwrap(),
            Some(-2)
        );
    }

    #[test]
    fn chi_values() {
        let p2 = make_projective_plane();
        let zero = DivisorClass::zero(1);
        assert_eq!(chi_of_divisor(&p2, &zero).unwrap(), rat(1));
        assert_eq!(chi_of_divisor(&p2, p2.canonical()).unwrap(), rat(1));
        let anti = -p2.canonical();
        assert_eq!(chi_of_divisor(&p2, &anti).unwrap(), rat(10));
        // h^0(O(3)) by counting monomials x^a y^b z^c with a+b+c = 3
        let monomials = (0..=3)
            .flat_map(|a| (0..=3 - a).map(move |b| (a, b)))
            .count();
        assert_eq!(rat(monomials as i64), rat(10));
    }

    #[test]
    fn self_intersection_via_chi_examples() {
        let p2 = make_projective_plane();
        assert_eq!(
            self_intersection_via_chi(&p2, &DivisorClass::from_ints(&[1]), 2).unwrap(),
            rat(1)
        );
        let bl1 = blow_up(&p2, 1).unwrap();
        assert_eq!(
            self_intersection_via_chi(&bl1, &DivisorClass::from_ints(&[0, 1]), 0).unwrap(),
            rat(-1)
        );
        let bl3 = blow_up(&p2, 3).unwrap();
        let line = DivisorClass::from_ints(&[1, -1, -1, 0]);
        assert_eq!(self_intersection_via_chi(&bl3, &line, -3).unwrap(), rat(-1));
        assert!(self_intersection_via_chi(&bl3, &line, 1).is_err());
    }

    #[test]
    fn genus_data_validation() {
        assert!(GenusData::new(2, 1).is_ok());
        assert!(GenusData::new(0, 1).is_err());
        assert!(GenusData::new(3, -1).is_err());
    }
}
