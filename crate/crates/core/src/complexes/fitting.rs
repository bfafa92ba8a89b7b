use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::ring::{Algebra, Poly};

use super::free::GradedMap;
use super::homology::FpModule;
use super::resolution::{generator_map, map_is_minimal};
use super::submodule::Submodule;

/// Ideal generated by the entries of a map.
pub fn entry_ideal<F: Field>(alg: &Algebra<F>, m: &GradedMap<F>) -> Result<Ideal<F>> {
    let entries: Vec<Poly<F>> = m.entries.iter().flatten().filter(|p| !p.is_zero()).cloned().collect();
    Ideal::from_polys(alg, &entries)
}

/// `Fitt^1` of a minimally presented module: the ideal of entries.
pub fn fitt1_of_presentation<F: Field>(alg: &Algebra<F>, pres: &GradedMap<F>) -> Result<Ideal<F>> {
    if !map_is_minimal(alg, pres)? {
        return Err(Error::Hypothesis("presentation is not minimal".into()));
    }
    entry_ideal(alg, pres)
}

/// `Fitt^1` of an ideal with the given minimal generators, computed from two
/// presentations built on differently ordered generating sets; both must agree.
pub fn fitt1_ideal<F: Field>(alg: &Algebra<F>, gens: &[Poly<F>]) -> Result<Ideal<F>> {
    let first = FpModule::ideal(alg, gens)?;
    let a = fitt1_of_presentation(alg, &first.pres)?;
    let mut rev: Vec<Poly<F>> = gens.iter().rev().cloned().collect();
    // Unitriangular change within each degree, so the second kernel is found
    // with different pivots.
    for i in 0..rev.len() {
        for j in i + 1..rev.len() {
            if rev[i].degree() == rev[j].degree() {
                rev[i] = rev[i].add(&rev[j]);
            }
        }
    }
    let row = GradedMap::row(alg.field(), alg.nvars(), 0, &rev)?;
    let ker = Submodule::kernel(alg, &row)?;
    let relations = generator_map(alg, &ker, ker.valid_through())?;
    let b = fitt1_of_presentation(alg, &relations)?;
    if !a.same_as(&b) {
        return Err(Error::Invariant("Fitting ideal depends on the presentation".into()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn maximal_ideal_of_teter_ring_fixture() {
        let f = PrimeField::new(7).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let g = [Poly::var(&f, 2, 0).pow(3), Poly::var(&f, 2, 1).pow(3)];
        let s = Algebra::from_generators(&f, names, &g, 6).unwrap();
        let gens = [Poly::var(&f, 2, 0), Poly::var(&f, 2, 1)];
        let fitt = fitt1_ideal(&s, &gens).unwrap();
        assert_eq!(fitt, Ideal::maximal(&s));
    }
}
