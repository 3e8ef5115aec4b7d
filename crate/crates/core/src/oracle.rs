//! Reference implementations by exhaustive enumeration, and seeded random
//! instance generators.
//!
//! Nothing here uses the tensor algebra of [`crate::tensor`] or the junction
//! tree: each routine walks every assignment with plain index arithmetic and
//! reads tensor entries straight from their row-major data. Tensors are only
//! touched through their raw labels, sizes and data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::model::{GraphicalModel, TensorHypernetwork, DEFAULT_STATE_CAP};
use crate::scalar::{Field, Scalar};
use crate::tensor::LabeledTensor;
use crate::zoo::SiteOperator;

/// Offset of `tensor`'s entry under the global assignment `x`, where
/// `x[label]` is the value of that label.
fn entry<S: Scalar>(tensor: &LabeledTensor<S>, x: &[usize]) -> S {
    let mut offset = 0;
    for (&label, &size) in tensor.labels().iter().zip(tensor.sizes()) {
        offset = offset * size + x[label];
    }
    tensor.data()[offset]
}

/// Advances a mixed-radix counter; false once it wraps to all zeros.
fn next_assignment(x: &mut [usize], sizes: &[usize]) -> bool {
    for i in (0..x.len()).rev() {
        x[i] += 1;
        if x[i] < sizes[i] {
            return true;
        }
        x[i] = 0;
    }
    false
}

fn check_cap(sizes: &[usize]) -> Result<()> {
    let total = sizes
        .iter()
        .fold(1u128, |a, &s| a.saturating_mul(s as u128));
    if total > DEFAULT_STATE_CAP {
        return Err(Error::size("enumeration", total, DEFAULT_STATE_CAP));
    }
    Ok(())
}

/// Sums `weight(x)` over all assignments `x` of `sizes`, accumulating into
/// the output cell addressed by the `kept` coordinates of `x`.
fn accumulate<S: Scalar>(
    sizes: &[usize],
    kept: &[usize],
    weight: impl Fn(&[usize]) -> S,
) -> Result<LabeledTensor<S>> {
    check_cap(sizes)?;
    let kept_sizes: Vec<usize> = kept.iter().map(|&k| sizes[k]).collect();
    let out_len: usize = kept_sizes.iter().product();
    let mut out = vec![S::zero(); out_len];
    let mut x = vec![0usize; sizes.len()];
    loop {
        let mut cell = 0;
        for (&k, &s) in kept.iter().zip(&kept_sizes) {
            cell = cell * s + x[k];
        }
        out[cell] += weight(&x);
        if !next_assignment(&mut x, sizes) {
            break;
        }
    }
    LabeledTensor::new(kept.to_vec(), kept_sizes, out)
}

/// Unnormalized joint of a graphical model, one assignment at a time.
pub fn enumerate_joint<S: Scalar>(gm: &GraphicalModel<S>) -> Result<LabeledTensor<S>> {
    let all: Vec<usize> = (0..gm.variable_count()).collect();
    enumerate_marginal(gm, &all)
}

/// Unnormalized marginal over `vars` (sorted, distinct).
pub fn enumerate_marginal<S: Scalar>(
    gm: &GraphicalModel<S>,
    vars: &[usize],
) -> Result<LabeledTensor<S>> {
    let mut kept = vars.to_vec();
    kept.sort_unstable();
    kept.dedup();
    accumulate(gm.cardinalities(), &kept, |x| {
        let mut w = S::one();
        for p in gm.potentials() {
            w *= entry(p, x);
        }
        w
    })
}

/// Tensor hypernetwork state: loops over every assignment of every
/// hyperedge and keeps the dangling ones.
pub fn enumerate_contraction<S: Scalar>(tn: &TensorHypernetwork<S>) -> Result<LabeledTensor<S>> {
    let dangling: Vec<usize> = (0..tn.edge_count())
        .filter(|&e| tn.hypergraph().edge(e).len() == 1)
        .collect();
    enumerate_contraction_open(tn, &dangling)
}

/// Contraction that keeps the hyperedges in `open` and sums all others.
pub fn enumerate_contraction_open<S: Scalar>(
    tn: &TensorHypernetwork<S>,
    open: &[usize],
) -> Result<LabeledTensor<S>> {
    let mut kept = open.to_vec();
    kept.sort_unstable();
    kept.dedup();
    accumulate(tn.edge_sizes(), &kept, |x| {
        let mut w = S::one();
        for t in tn.tensors() {
            w *= entry(t, x);
        }
        w
    })
}

/// `<psi| A |psi>` from the dense state vector of an MPS. The physical
/// (dangling) edges are taken in increasing id order, which is site order
/// for networks built by [`crate::zoo::mps`].
pub fn dense_expectation<S: Scalar>(
    psi: &TensorHypernetwork<S>,
    blocks: &[SiteOperator<S>],
) -> Result<S> {
    let state = enumerate_contraction(psi)?;
    let dims = state.sizes().to_vec();
    if blocks.len() != dims.len() || blocks.iter().zip(&dims).any(|(b, &n)| b.dim() != n) {
        return Err(Error::Shape(
            "blocks do not match the physical dimensions".into(),
        ));
    }
    let amplitudes = state.data();
    let mut total = S::zero();
    let mut ket = vec![0usize; dims.len()];
    let mut ket_index = 0;
    loop {
        let mut bra = vec![0usize; dims.len()];
        let mut bra_index = 0;
        loop {
            let mut w = amplitudes[bra_index].conj();
            w *= amplitudes[ket_index];
            for (i, b) in blocks.iter().enumerate() {
                w *= b.get(bra[i], ket[i]);
            }
            total += w;
            bra_index += 1;
            if !next_assignment(&mut bra, &dims) {
                break;
            }
        }
        ket_index += 1;
        if !next_assignment(&mut ket, &dims) {
            break;
        }
    }
    Ok(total)
}

/// Bounds for random instances. The scalar field is the type parameter of
/// the generator functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomInstanceSpec {
    pub max_variables: usize,
    pub max_hyperedges: usize,
    pub max_size: usize,
    pub seed: u64,
}

impl RandomInstanceSpec {
    pub fn new(max_variables: usize, max_hyperedges: usize, max_size: usize, seed: u64) -> Self {
        RandomInstanceSpec {
            max_variables,
            max_hyperedges,
            max_size,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_variables == 0 || self.max_hyperedges == 0 || self.max_size == 0 {
            return Err(Error::Domain(
                "random instance bounds must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// How a random hyperedge was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Empty,
    Singleton,
    Duplicate,
    General,
}

/// Probability of each degenerate hyperedge kind.
pub const DEGENERATE_PROBABILITY: f64 = 0.1;

/// Random hypergraph together with the kind each hyperedge was drawn as.
pub fn random_hypergraph_with_kinds<R: Rng>(
    spec: &RandomInstanceSpec,
    rng: &mut R,
) -> Result<(Hypergraph, Vec<EdgeKind>)> {
    spec.validate()?;
    let d = if spec.max_variables >= 2 {
        rng.gen_range(2..=spec.max_variables)
    } else {
        spec.max_variables
    };
    let c = rng.gen_range(0..=spec.max_hyperedges);
    let vertices: Vec<usize> = (0..d).collect();
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(c);
    let mut kinds = Vec::with_capacity(c);
    for _ in 0..c {
        let u: f64 = rng.gen();
        let (edge, kind) = if u < DEGENERATE_PROBABILITY {
            (Vec::new(), EdgeKind::Empty)
        } else if u < 2.0 * DEGENERATE_PROBABILITY {
            (vec![rng.gen_range(0..d)], EdgeKind::Singleton)
        } else if u < 3.0 * DEGENERATE_PROBABILITY && !edges.is_empty() {
            (
                edges[rng.gen_range(0..edges.len())].clone(),
                EdgeKind::Duplicate,
            )
        } else {
            let k = if d >= 2 { rng.gen_range(2..=d) } else { d };
            let mut e: Vec<usize> = vertices.choose_multiple(rng, k).copied().collect();
            e.sort_unstable();
            (e, EdgeKind::General)
        };
        edges.push(edge);
        kinds.push(kind);
    }
    Ok((Hypergraph::new(d, edges)?, kinds))
}

pub fn random_hypergraph(spec: &RandomInstanceSpec) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(random_hypergraph_with_kinds(spec, &mut rng)?.0)
}

/// Random entry: uniform on [0, 1] for reals (nonnegative, so the model is
/// a valid distribution), uniform on the unit disk for complex scalars.
fn random_entry<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let x = S::sample_unit(rng);
    match S::FIELD {
        Field::Real => S::from_real(x.modulus()),
        Field::Complex => x,
    }
}

fn random_tensor<S: Scalar, R: Rng>(
    labels: &[usize],
    sizes: &[usize],
    rng: &mut R,
) -> Result<LabeledTensor<S>> {
    let shape: Vec<usize> = labels.iter().map(|&l| sizes[l]).collect();
    let len = shape.iter().product();
    let data = (0..len).map(|_| random_entry(rng)).collect();
    LabeledTensor::new(labels.to_vec(), shape, data)
}

pub fn random_gm<S: Scalar>(spec: &RandomInstanceSpec) -> Result<GraphicalModel<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (h, _) = random_hypergraph_with_kinds(spec, &mut rng)?;
    let cards: Vec<usize> = (0..h.vertex_count())
        .map(|_| rng.gen_range(1..=spec.max_size))
        .collect();
    let potentials = h
        .edges()
        .iter()
        .map(|e| random_tensor(e, &cards, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    GraphicalModel::new(h, cards, potentials)
}

/// Random tensor hypernetwork; `max_variables` bounds the number of tensor
/// sites and `max_hyperedges` the number of hyperedges.
pub fn random_tn<S: Scalar>(spec: &RandomInstanceSpec) -> Result<TensorHypernetwork<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (h, _) = random_hypergraph_with_kinds(spec, &mut rng)?;
    let sizes: Vec<usize> = (0..h.edge_count())
        .map(|_| rng.gen_range(1..=spec.max_size))
        .collect();
    let tensors = h
        .incident_edges()
        .iter()
        .map(|star| random_tensor(star, &sizes, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    TensorHypernetwork::new(h, sizes, tensors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn fixture_joint_by_hand() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let psi0 = LabeledTensor::new(vec![0, 1], vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let psi1 = LabeledTensor::new(vec![1, 2], vec![2, 2], vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let gm = GraphicalModel::new(h, vec![2, 2, 2], vec![psi0, psi1]).unwrap();
        let joint = enumerate_joint(&gm).unwrap();
        // P(x0,x1,x2) = A[x0][x1] * [x1 == x2]
        assert_eq!(joint.data(), &[1.0, 0.0, 0.0, 2.0, 3.0, 0.0, 0.0, 4.0]);
        assert_eq!(joint.data().iter().sum::<f64>(), 10.0);
        assert_eq!(enumerate_marginal(&gm, &[1]).unwrap().data(), &[4.0, 6.0]);
    }

    #[test]
    fn joint_without_hyperedges_is_ones() {
        let gm =
            GraphicalModel::<f64>::new(Hypergraph::new(2, vec![]).unwrap(), vec![2, 3], vec![])
                .unwrap();
        assert_eq!(enumerate_joint(&gm).unwrap().data(), &[1.0; 6]);
        let h = Hypergraph::new(1, vec![vec![]]).unwrap();
        let gm = GraphicalModel::new(h, vec![2], vec![LabeledTensor::scalar(0.5)]).unwrap();
        assert_eq!(enumerate_joint(&gm).unwrap().data(), &[0.5, 0.5]);
    }

    #[test]
    fn contraction_oracle_cases() {
        // rank-one CP: three vectors sharing a size-1 hyperedge
        let h = Hypergraph::new(3, vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]).unwrap();
        let a = LabeledTensor::new(vec![0, 3], vec![2, 1], vec![1.0, 2.0]).unwrap();
        let b = LabeledTensor::new(vec![1, 3], vec![2, 1], vec![1.0, 1.0]).unwrap();
        let c = LabeledTensor::new(vec![2, 3], vec![2, 1], vec![3.0, 0.0]).unwrap();
        let tn = TensorHypernetwork::new(h, vec![2, 2, 2, 1], vec![a, b, c]).unwrap();
        let s = enumerate_contraction(&tn).unwrap();
        assert_eq!(s.data(), &[3.0, 0.0, 3.0, 0.0, 6.0, 0.0, 6.0, 0.0]);

        // two matrices sharing edge 1: [[1,2],[3,4]] x [[5,6],[7,8]]
        let h = Hypergraph::new(2, vec![vec![0], vec![0, 1], vec![1]]).unwrap();
        let m1 = LabeledTensor::new(vec![0, 1], vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let m2 = LabeledTensor::new(vec![1, 2], vec![2, 2], vec![5.0, 6.0, 7.0, 8.0]).unwrap();
        let tn = TensorHypernetwork::new(h, vec![2, 2, 2], vec![m1, m2]).unwrap();
        assert_eq!(
            enumerate_contraction(&tn).unwrap().data(),
            &[19.0, 22.0, 43.0, 50.0]
        );

        let h = Hypergraph::new(2, vec![]).unwrap();
        let tn = TensorHypernetwork::new(
            h,
            vec![],
            vec![LabeledTensor::scalar(2.0), LabeledTensor::scalar(4.0)],
        )
        .unwrap();
        assert_eq!(
            enumerate_contraction(&tn).unwrap().scalar_value(),
            Some(8.0)
        );
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let spec = RandomInstanceSpec::new(6, 6, 3, 42);
        assert_eq!(
            random_hypergraph(&spec).unwrap(),
            random_hypergraph(&spec).unwrap()
        );
        assert_eq!(
            random_gm::<f64>(&spec).unwrap(),
            random_gm::<f64>(&spec).unwrap()
        );
        assert_eq!(
            random_tn::<Complex64>(&spec).unwrap(),
            random_tn::<Complex64>(&spec).unwrap()
        );
    }

    #[test]
    fn generators_respect_bounds() {
        for seed in 0..1000 {
            let spec = RandomInstanceSpec::new(7, 5, 3, seed);
            let gm = random_gm::<f64>(&spec).unwrap();
            assert!(gm.variable_count() <= 7 && gm.variable_count() >= 2);
            assert!(gm.hypergraph().edge_count() <= 5);
            assert!(gm.cardinalities().iter().all(|&c| (1..=3).contains(&c)));
            assert!(gm
                .potentials()
                .iter()
                .all(|p| p.data().iter().all(|&x| (0.0..=1.0).contains(&x))));
        }
    }

    #[test]
    fn degenerate_kind_frequencies() {
        let spec = RandomInstanceSpec::new(12, 12, 3, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut counts = [0usize; 4];
        let mut total = 0usize;
        for _ in 0..1000 {
            let (h, kinds) = random_hypergraph_with_kinds(&spec, &mut rng).unwrap();
            for (e, k) in h.edges().iter().zip(&kinds) {
                match k {
                    EdgeKind::Empty => assert!(e.is_empty()),
                    EdgeKind::Singleton => assert_eq!(e.len(), 1),
                    EdgeKind::General => assert!(e.len() >= 2),
                    EdgeKind::Duplicate => {}
                }
                counts[*k as usize] += 1;
            }
            total += kinds.len();
        }
        for kind in [EdgeKind::Empty, EdgeKind::Singleton, EdgeKind::Duplicate] {
            let freq = counts[kind as usize] as f64 / total as f64;
            assert!((freq - 0.1).abs() <= 0.03, "{kind:?} frequency {freq}");
        }
    }
}
