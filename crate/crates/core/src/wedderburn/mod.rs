//! Wedderburn decomposition of `QG` for strongly monomial groups.

mod algebra;
mod component;
mod dixon;
mod shoda;

use thiserror::Error;

use crate::group::{cyclotomic_classes, FiniteGroup};

pub use algebra::{epsilon, hat, GroupAlgebraElement};
pub use component::{identify, simple_component, CrossedProductDescriptor, DivisionPart, SimpleComponent};
pub use dixon::{character_oracle, dixon_prime, CharacterOracle};
pub use shoda::{is_strong_shoda_pair, strong_shoda_pairs, StrongShodaPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedderburnError {
    #[error("strong Shoda pairs of {group} account for dimension {found} of {order}")]
    NotStronglyMonomial {
        group: String,
        found: usize,
        order: usize,
    },
    #[error("idempotent check failed: {detail}")]
    IdempotentCheck { detail: String },
    #[error("character oracle disagrees: {detail}")]
    OracleMismatch { detail: String },
}

/// The simple components of `QG`, one per strong Shoda pair found.
///
/// Checks that the idempotents are central, pairwise orthogonal and sum to
/// `1`, and that the dimensions add up to `|G|`.
pub fn decompose(g: &FiniteGroup, cap: usize) -> crate::Result<Vec<SimpleComponent>> {
    let pairs = strong_shoda_pairs(g, cap)?;
    let found: usize = pairs.iter().map(|p| p.q_dimension(g)).sum();
    let n = g.order();
    if found != n {
        return Err(WedderburnError::NotStronglyMonomial {
            group: g.label().to_string(),
            found,
            order: n,
        }
        .into());
    }
    let mut total = GroupAlgebraElement::zero(n);
    for (i, p) in pairs.iter().enumerate() {
        if !p.e.is_central(g) || !p.e.is_idempotent(g) {
            return Err(WedderburnError::IdempotentCheck {
                detail: format!("e(G,H,K) for |H|={}, |K|={} is not a central idempotent", p.h.order(), p.k.order()),
            }
            .into());
        }
        let (num, den) = p.e.coefficient_parts(0);
        if num * n as i128 != den * p.q_dimension(g) as i128 {
            return Err(WedderburnError::IdempotentCheck {
                detail: format!("coefficient of 1 in e is {num}/{den}, not dim/|G|"),
            }
            .into());
        }
        for q in &pairs[..i] {
            if !p.e.mul(g, &q.e).is_zero() {
                return Err(WedderburnError::IdempotentCheck {
                    detail: "two idempotents are not orthogonal".into(),
                }
                .into());
            }
        }
        total = total.add(&p.e);
    }
    if total != GroupAlgebraElement::one(n) {
        return Err(WedderburnError::IdempotentCheck {
            detail: "idempotents do not sum to 1".into(),
        }
        .into());
    }
    let mut out = Vec::with_capacity(pairs.len());
    for p in &pairs {
        out.push(simple_component(g, p)?);
    }
    Ok(out)
}

/// Outcome of comparing a decomposition with the character oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub prime: u64,
    pub components: usize,
    pub rational_orbits: usize,
    pub cyclotomic_classes: usize,
    /// For each component, the oracle's dimension of the matching orbit.
    pub orbit_dimensions: Vec<usize>,
}

/// Matches every component to a rational character orbit and compares
/// counts and dimensions.
pub fn cross_check(g: &FiniteGroup, components: &[SimpleComponent]) -> Result<CrossCheck, WedderburnError> {
    let oracle = character_oracle(g)?;
    if oracle.degree_square_sum() != g.order() {
        return Err(WedderburnError::OracleMismatch {
            detail: format!("squared degrees sum to {}, not {}", oracle.degree_square_sum(), g.order()),
        });
    }
    let ncyc = cyclotomic_classes(g).len();
    let check = CrossCheck {
        prime: oracle.prime,
        components: components.len(),
        rational_orbits: oracle.orbits.len(),
        cyclotomic_classes: ncyc,
        orbit_dimensions: Vec::new(),
    };
    if check.components != check.rational_orbits || check.rational_orbits != ncyc {
        return Err(WedderburnError::OracleMismatch {
            detail: format!(
                "{} components, {} rational orbits, {} cyclotomic classes",
                check.components, check.rational_orbits, ncyc
            ),
        });
    }
    let mut used = vec![false; oracle.orbits.len()];
    let mut dims = Vec::new();
    for c in components {
        let o = oracle.orbit_of_idempotent(g, &c.pair.e)?;
        if used[o] {
            return Err(WedderburnError::OracleMismatch {
                detail: "two components match the same orbit".into(),
            });
        }
        used[o] = true;
        let d = oracle.orbit_dimension(o);
        if d != c.q_dimension {
            return Err(WedderburnError::OracleMismatch {
                detail: format!("component of dimension {} matches an orbit of dimension {d}", c.q_dimension),
            });
        }
        dims.push(d);
    }
    Ok(CrossCheck {
        orbit_dimensions: dims,
        ..check
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dicyclic, dihedral, DEFAULT_SUBGROUP_CAP};

    #[test]
    fn decompositions_pass_the_oracle() {
        for g in [dicyclic(8).unwrap(), dihedral(8).unwrap(), dihedral(12).unwrap(), dicyclic(12).unwrap()] {
            let comps = decompose(&g, DEFAULT_SUBGROUP_CAP).unwrap();
            let check = cross_check(&g, &comps).unwrap();
            assert_eq!(check.components, comps.len());
            assert_eq!(check.orbit_dimensions.iter().sum::<usize>(), g.order());
        }
    }
}
