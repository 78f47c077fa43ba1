//! Homomorphisms between finitely presented abelian groups, stored as a
//! matrix in SNF coordinates: row `i` holds the target coordinates of the
//! image of the `i`-th source coordinate basis element.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lattice::{left_kernel, Lattice};
use super::matrix::{Dense, IntMatrix};
use super::{FPAbGroup, RelatorSource};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FPAbGroup>,
    target: Arc<FPAbGroup>,
    matrix: Dense,
}

fn add_scaled(acc: &mut [BigInt], c: &BigInt, v: &[BigInt]) {
    for (x, y) in acc.iter_mut().zip(v) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Relation lattice of `g` in its own coordinates: `d_i e_i`.
fn relation_lattice(g: &FPAbGroup) -> Lattice {
    let n = g.ncoords();
    let mut l = Lattice::new(n);
    for (i, d) in g.coord_orders().iter().enumerate() {
        if !d.is_zero() {
            let mut v = vec![BigInt::zero(); n];
            v[i] = d.clone();
            l.insert(&v);
        }
    }
    l
}

/// Sublattice of coordinate space spanned by `gens` and the relations of `g`.
pub fn span_lattice(g: &FPAbGroup, gens: &[Vec<BigInt>]) -> Lattice {
    let mut l = relation_lattice(g);
    for v in gens {
        l.insert(v);
    }
    l
}

impl GroupHom {
    /// From the target coordinates of every source generator. Fails with
    /// `IllDefinedHom` if some relation generator of the source has a
    /// nonzero image.
    pub fn from_gen_coords(
        source: Arc<FPAbGroup>,
        target: Arc<FPAbGroup>,
        gen_coords: &[Vec<BigInt>],
    ) -> Result<Self> {
        if gen_coords.len() != source.num_gens() {
            return Err(Error::DimensionMismatch { expected: source.num_gens(), got: gen_coords.len() });
        }
        let nt = target.ncoords();
        let image = |v: &[(usize, BigInt)]| {
            let mut acc = vec![BigInt::zero(); nt];
            for (g, c) in v {
                add_scaled(&mut acc, c, &gen_coords[*g]);
            }
            acc
        };
        for (k, r) in source.relation_generators().iter().enumerate() {
            if !target.coords_is_zero(&image(r)) {
                return Err(Error::IllDefinedHom(k));
            }
        }
        let matrix = (0..source.ncoords()).map(|i| target.canonical(image(&source.section(i)))).collect();
        Ok(GroupHom { source, target, matrix })
    }

    /// From a coordinate matrix; checks that `d_i` times row `i` vanishes.
    pub fn from_coord_matrix(source: Arc<FPAbGroup>, target: Arc<FPAbGroup>, matrix: Dense) -> Result<Self> {
        if matrix.len() != source.ncoords() {
            return Err(Error::DimensionMismatch { expected: source.ncoords(), got: matrix.len() });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != target.ncoords() {
                return Err(Error::DimensionMismatch { expected: target.ncoords(), got: row.len() });
            }
            let d = &source.coord_orders()[i];
            if !d.is_zero() {
                let scaled: Vec<BigInt> = row.iter().map(|x| x * d).collect();
                if !target.coords_is_zero(&scaled) {
                    return Err(Error::IllDefinedHom(i));
                }
            }
        }
        let matrix = matrix.into_iter().map(|r| target.canonical(r)).collect();
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: Arc<FPAbGroup>) -> Self {
        let n = g.ncoords();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        GroupHom { source: g.clone(), target: g, matrix: m }
    }

    pub fn zero(source: Arc<FPAbGroup>, target: Arc<FPAbGroup>) -> Self {
        let m = vec![vec![BigInt::zero(); target.ncoords()]; source.ncoords()];
        GroupHom { source, target, matrix: m }
    }

    pub fn source(&self) -> &Arc<FPAbGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FPAbGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &Dense {
        &self.matrix
    }

    pub fn apply_coords(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.target.ncoords()];
        for (x, row) in c.iter().zip(&self.matrix) {
            add_scaled(&mut acc, x, row);
        }
        self.target.canonical(acc)
    }

    /// Image of a source generator vector, in target coordinates.
    pub fn apply(&self, v: &[(usize, BigInt)]) -> Result<Vec<BigInt>> {
        Ok(self.apply_coords(&self.source.coords_sparse(v)?))
    }

    /// Streams every original relator of the source and checks its image,
    /// given per-generator target coordinates. Returns the relator count.
    pub fn certify_relators(
        &self,
        src: &dyn RelatorSource,
        gen_coords: &dyn Fn(usize) -> Vec<BigInt>,
    ) -> Result<usize> {
        let nt = self.target.ncoords();
        let mut count = 0;
        let mut bad = None;
        let mut cache: std::collections::HashMap<usize, Vec<BigInt>> = Default::default();
        src.for_each_relator(&mut |row| {
            if bad.is_some() {
                return;
            }
            let mut acc = vec![BigInt::zero(); nt];
            for (g, c) in row {
                let img = cache.entry(*g).or_insert_with(|| gen_coords(*g));
                add_scaled(&mut acc, &BigInt::from(*c), img);
            }
            if !self.target.coords_is_zero(&acc) {
                bad = Some(count);
            }
            count += 1;
        });
        match bad {
            Some(k) => Err(Error::IllDefinedHom(k)),
            None => Ok(count),
        }
    }

    pub fn compose(&self, next: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(Error::TargetMismatch);
        }
        let m = self.matrix.iter().map(|r| next.apply_coords(r)).collect();
        GroupHom::from_coord_matrix(self.source.clone(), next.target.clone(), m)
    }

    /// Lattice `{y : y A in L_target}` in source coordinates.
    fn kernel_lattice(&self) -> Lattice {
        let (ns, nt) = (self.source.ncoords(), self.target.ncoords());
        let mut m: Dense = self.matrix.clone();
        for (j, d) in self.target.coord_orders().iter().enumerate() {
            if !d.is_zero() {
                let mut r = vec![BigInt::zero(); nt];
                r[j] = d.clone();
                m.push(r);
            }
        }
        let rows = m.len();
        let mut l = relation_lattice(&self.source);
        for k in left_kernel(&m, rows, nt) {
            l.insert(&k[..ns]);
        }
        l
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        let k = self.kernel_lattice();
        Subgroup::from_lattice(self.source.clone(), &k)
    }

    pub fn image(&self) -> Result<FPAbGroup> {
        let k = self.kernel_lattice();
        let ns = self.source.ncoords();
        FPAbGroup::from_relations(ns, &IntMatrix::from_dense(&k.basis(), ns)?)
    }

    /// Image as a sublattice of target coordinates (relations included).
    pub fn image_lattice(&self) -> Lattice {
        span_lattice(&self.target, &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        let rel = relation_lattice(&self.source);
        self.kernel_lattice().basis().iter().all(|b| rel.contains(b))
    }

    pub fn is_surjective(&self) -> bool {
        let nt = self.target.ncoords();
        let l = self.image_lattice();
        (0..nt).all(|j| {
            let mut e = vec![BigInt::zero(); nt];
            e[j] = BigInt::one();
            l.contains(&e)
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Whether `f` and `g` agree as maps.
    pub fn equals(&self, o: &GroupHom) -> bool {
        self.matrix.len() == o.matrix.len()
            && self.matrix.iter().zip(&o.matrix).all(|(a, b)| {
                let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                self.target.coords_is_zero(&diff)
            })
    }
}

/// A subgroup presented on its own generators, with its inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<FPAbGroup>,
    pub inclusion: GroupHom,
    /// Generators in ambient coordinates.
    pub generators: Dense,
}

impl Subgroup {
    /// Subgroup `K / L` for a lattice `K` containing the ambient relations `L`.
    fn from_lattice(ambient: Arc<FPAbGroup>, k: &Lattice) -> Result<Self> {
        let basis = k.basis();
        let kdim = basis.len();
        let n = ambient.ncoords();
        let mut rel = IntMatrix::new(kdim);
        for (i, d) in ambient.coord_orders().iter().enumerate() {
            if !d.is_zero() {
                let mut v = vec![BigInt::zero(); n];
                v[i] = d.clone();
                let x = k.solve(&v).expect("ambient relations lie in the kernel lattice");
                rel.push_dense(&x)?;
            }
        }
        let group = Arc::new(FPAbGroup::from_relations(kdim, &rel)?);
        let gen_coords: Vec<Vec<BigInt>> = basis.iter().map(|b| ambient.canonical(b.clone())).collect();
        let inclusion = GroupHom::from_gen_coords(group.clone(), ambient, &gen_coords)?;
        Ok(Subgroup { group, inclusion, generators: basis })
    }

    pub fn lattice(&self) -> Lattice {
        span_lattice(self.inclusion.target(), &self.generators)
    }
}

/// `A + B` on the concatenated coordinates, with projections and injections.
pub struct DirectSum {
    pub group: Arc<FPAbGroup>,
    pub proj: [GroupHom; 2],
    pub inj: [GroupHom; 2],
}

pub fn direct_sum(a: &Arc<FPAbGroup>, b: &Arc<FPAbGroup>) -> Result<DirectSum> {
    let orders: Vec<BigInt> = a.coord_orders().iter().chain(b.coord_orders()).cloned().collect();
    let group = Arc::new(FPAbGroup::cyclic_sum(&orders));
    let (na, nb) = (a.ncoords(), b.ncoords());
    let unit = |k: usize, n: usize| {
        let mut v = vec![BigInt::zero(); n];
        v[k] = BigInt::one();
        v
    };
    // generator k of `group` is coordinate k of a, then of b
    let proj_a: Vec<Vec<BigInt>> =
        (0..na + nb).map(|k| if k < na { unit(k, na) } else { vec![BigInt::zero(); na] }).collect();
    let proj_b: Vec<Vec<BigInt>> =
        (0..na + nb).map(|k| if k >= na { unit(k - na, nb) } else { vec![BigInt::zero(); nb] }).collect();
    let pa = GroupHom::from_gen_coords(group.clone(), a.clone(), &proj_a)?;
    let pb = GroupHom::from_gen_coords(group.clone(), b.clone(), &proj_b)?;
    let ia: Dense = (0..na).map(|k| group.coords_of_gen(k)).collect::<Result<_>>()?;
    let ib: Dense = (0..nb).map(|k| group.coords_of_gen(na + k)).collect::<Result<_>>()?;
    let ia = GroupHom::from_coord_matrix(a.clone(), group.clone(), ia)?;
    let ib = GroupHom::from_coord_matrix(b.clone(), group.clone(), ib)?;
    Ok(DirectSum { group, proj: [pa, pb], inj: [ia, ib] })
}

pub struct Pullback {
    pub sum: DirectSum,
    /// `{(a, b) : f(a) = g(b)}` inside `A + B`.
    pub kernel: Subgroup,
    pub proj_a: GroupHom,
    pub proj_b: GroupHom,
}

impl Pullback {
    pub fn group(&self) -> &Arc<FPAbGroup> {
        &self.kernel.group
    }

    /// `(x, y)` in sum coordinates.
    pub fn pair_coords(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.sum.inj[0].apply_coords(x);
        for (a, b) in c.iter_mut().zip(self.sum.inj[1].apply_coords(y)) {
            *a += b;
        }
        self.sum.group.canonical(c)
    }
}

pub fn pullback(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    if !Arc::ptr_eq(f.target(), g.target()) && f.target().coord_orders() != g.target().coord_orders() {
        return Err(Error::TargetMismatch);
    }
    let sum = direct_sum(f.source(), g.source())?;
    let c = f.target().clone();
    let mut m: Dense = f.matrix().clone();
    for r in g.matrix() {
        m.push(r.iter().map(|x| -x).collect());
    }
    // generators of the sum are the coordinates of A, then of B
    let diff = GroupHom::from_gen_coords(sum.group.clone(), c, &m)?;
    let kernel = diff.kernel()?;
    let proj_a = kernel.inclusion.compose(&sum.proj[0])?;
    let proj_b = kernel.inclusion.compose(&sum.proj[1])?;
    Ok(Pullback { sum, kernel, proj_a, proj_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::InvariantFactors;

    fn z(n: i64) -> Arc<FPAbGroup> {
        Arc::new(if n == 0 { FPAbGroup::free(1) } else { FPAbGroup::from_i64(1, &[vec![n]]).unwrap() })
    }

    fn reduction(a: &Arc<FPAbGroup>, b: &Arc<FPAbGroup>) -> GroupHom {
        let img = b.coords_of_gen(0).unwrap();
        GroupHom::from_gen_coords(a.clone(), b.clone(), &[img]).unwrap()
    }

    #[test]
    fn identity_and_reductions() {
        let g = z(6);
        let id = GroupHom::identity(g.clone());
        assert!(id.is_isomorphism());
        assert!(id.kernel().unwrap().group.is_trivial());

        let r = reduction(&z(0), &z(2));
        assert!(!r.is_isomorphism());
        assert!(r.is_surjective());
        assert_eq!(r.kernel().unwrap().group.invariant_factors(), InvariantFactors::new(1, &[]));

        let r = reduction(&z(4), &z(2));
        assert_eq!(r.kernel().unwrap().group.invariant_factors(), InvariantFactors::new(0, &[2]));
        assert_eq!(r.image().unwrap().invariant_factors(), InvariantFactors::new(0, &[2]));
    }

    #[test]
    fn ill_defined_rejected() {
        // Z/4 -> Z/3, 1 -> 1 is not a homomorphism
        let src = z(4);
        let tgt = z(3);
        let img = tgt.coords_of_gen(0).unwrap();
        assert!(matches!(GroupHom::from_gen_coords(src, tgt, &[img]), Err(Error::IllDefinedHom(_))));
    }

    #[test]
    fn pullback_examples() {
        let (zz, z2, z4) = (z(0), z(2), z(4));
        let pb = pullback(&reduction(&zz, &z2), &GroupHom::identity(z2.clone())).unwrap();
        assert_eq!(pb.group().invariant_factors(), InvariantFactors::new(1, &[]));

        let pb = pullback(&reduction(&zz, &z2), &reduction(&z4, &z2)).unwrap();
        assert_eq!(pb.group().invariant_factors(), InvariantFactors::new(1, &[2]));
        let fa = pb.proj_a.compose(&reduction(&zz, &z2)).unwrap();
        let gb = pb.proj_b.compose(&reduction(&z4, &z2)).unwrap();
        assert!(fa.equals(&gb));

        let (a, b, c) = (z(3), z(5), z(7));
        let pb = pullback(&GroupHom::zero(a, c.clone()), &GroupHom::zero(b, c)).unwrap();
        assert_eq!(pb.group().invariant_factors(), InvariantFactors::new(0, &[15]));
    }
}
