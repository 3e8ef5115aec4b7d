//! Constructors for named networks and models.
//!
//! Label numbering is fixed per family and documented on each constructor.
//! Tensor data is always row-major in increasing label order; random fills
//! draw tensors in vertex (or hyperedge) order from one ChaCha8 stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::model::{GraphicalModel, TensorHypernetwork};
use crate::scalar::Scalar;
use crate::tensor::{Label, LabeledTensor};

/// How tensor entries are populated.
#[derive(Debug, Clone, PartialEq)]
pub enum Fill<S> {
    Ones,
    /// Independent draws: uniform on [-1, 1] for reals, uniform on the unit
    /// disk for complex numbers.
    Random(u64),
    /// One row-major buffer per tensor, in construction order.
    Data(Vec<Vec<S>>),
}

struct Filler<'a, S> {
    fill: &'a Fill<S>,
    rng: Option<ChaCha8Rng>,
    next: usize,
}

impl<'a, S: Scalar> Filler<'a, S> {
    fn new(fill: &'a Fill<S>) -> Self {
        let rng = match fill {
            Fill::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
            _ => None,
        };
        Filler { fill, rng, next: 0 }
    }

    fn tensor(&mut self, labels: &[Label], sizes: &[usize]) -> Result<LabeledTensor<S>> {
        let mut axes: Vec<(Label, usize)> =
            labels.iter().copied().zip(sizes.iter().copied()).collect();
        axes.sort_unstable();
        let (labels, sizes): (Vec<Label>, Vec<usize>) = axes.into_iter().unzip();
        let len: usize = sizes.iter().product();
        let index = self.next;
        self.next += 1;
        let data = match self.fill {
            Fill::Ones => vec![S::one(); len],
            Fill::Random(_) => {
                let rng = self.rng.as_mut().expect("seeded");
                (0..len).map(|_| S::sample_unit(rng)).collect()
            }
            Fill::Data(buffers) => {
                let buf = buffers
                    .get(index)
                    .ok_or_else(|| Error::Shape(format!("no data for tensor {index}")))?;
                if buf.len() != len {
                    return Err(Error::Shape(format!(
                        "tensor {index} needs {len} entries, got {}",
                        buf.len()
                    )));
                }
                buf.clone()
            }
        };
        LabeledTensor::new(labels, sizes, data)
    }

    fn finish(self) -> Result<()> {
        if let Fill::Data(buffers) = self.fill {
            if buffers.len() != self.next {
                return Err(Error::Shape(format!(
                    "{} data buffers for {} tensors",
                    buffers.len(),
                    self.next
                )));
            }
        }
        Ok(())
    }
}

fn positive(what: &str, values: &[usize]) -> Result<()> {
    if values.contains(&0) {
        return Err(Error::Domain(format!("{what} must be at least 1")));
    }
    Ok(())
}

fn build_tn<S: Scalar>(
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
    edge_sizes: Vec<usize>,
    fill: &Fill<S>,
) -> Result<TensorHypernetwork<S>> {
    let h = Hypergraph::new(vertex_count, edges)?;
    let mut filler = Filler::new(fill);
    let tensors = h
        .incident_edges()
        .iter()
        .map(|star| {
            let sizes: Vec<usize> = star.iter().map(|&e| edge_sizes[e]).collect();
            filler.tensor(star, &sizes)
        })
        .collect::<Result<Vec<_>>>()?;
    filler.finish()?;
    TensorHypernetwork::new(h, edge_sizes, tensors)
}

fn build_gm<S: Scalar>(
    cardinalities: Vec<usize>,
    edges: Vec<Vec<usize>>,
    fill: &Fill<S>,
) -> Result<GraphicalModel<S>> {
    let h = Hypergraph::new(cardinalities.len(), edges)?;
    let mut filler = Filler::new(fill);
    let potentials = h
        .edges()
        .iter()
        .map(|e| {
            let sizes: Vec<usize> = e.iter().map(|&u| cardinalities[u]).collect();
            filler.tensor(e, &sizes)
        })
        .collect::<Result<Vec<_>>>()?;
    filler.finish()?;
    GraphicalModel::new(h, cardinalities, potentials)
}

/// Open-boundary matrix product state on `d` sites.
///
/// Site `i` is vertex `i`. Edge `2i` is its physical (dangling) index of
/// size `n`; edge `2i + 1` is the bond between sites `i` and `i + 1`, size
/// `r`.
pub fn mps<S: Scalar>(
    d: usize,
    n: usize,
    r: usize,
    fill: &Fill<S>,
) -> Result<TensorHypernetwork<S>> {
    positive("sites, physical and bond sizes", &[d, n, r])?;
    let mut edges = Vec::with_capacity(2 * d - 1);
    let mut sizes = Vec::with_capacity(2 * d - 1);
    for i in 0..d {
        edges.push(vec![i]);
        sizes.push(n);
        if i + 1 < d {
            edges.push(vec![i, i + 1]);
            sizes.push(r);
        }
    }
    build_tn(d, edges, sizes, fill)
}

/// Square matrix acting on one physical index.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteOperator<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> SiteOperator<S> {
    /// `data` is row-major, `dim * dim` entries.
    pub fn new(dim: usize, data: Vec<S>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::Shape(format!(
                "operator of dimension {dim} needs {} entries, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(SiteOperator { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![S::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = S::one();
        }
        SiteOperator { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.data[row * self.dim + col]
    }
}

/// Site count, physical sizes and bond sizes of a network laid out like
/// [`mps`], or `None` if `psi` has a different shape.
pub fn mps_shape<S: Scalar>(
    psi: &TensorHypernetwork<S>,
) -> Option<(usize, Vec<usize>, Vec<usize>)> {
    let d = psi.vertex_count();
    if d == 0 || psi.edge_count() != 2 * d - 1 {
        return None;
    }
    let h = psi.hypergraph();
    let mut phys = Vec::with_capacity(d);
    let mut bonds = Vec::with_capacity(d - 1);
    for i in 0..d {
        if h.edge(2 * i) != [i] {
            return None;
        }
        phys.push(psi.edge_sizes()[2 * i]);
        if i + 1 < d {
            if h.edge(2 * i + 1) != [i, i + 1] {
                return None;
            }
            bonds.push(psi.edge_sizes()[2 * i + 1]);
        }
    }
    Some((d, phys, bonds))
}

/// `<psi| A |psi>` as a closed network in three rows.
///
/// For site `i`: vertex `3i` is the ket tensor, `3i + 1` the operator, `3i + 2`
/// the conjugated bra tensor. Edge `4i` joins ket and operator, `4i + 1`
/// operator and bra, `4i + 2` is the ket bond to site `i + 1` and `4i + 3`
/// the bra bond. The operator tensor has entry `A[q][p]` at ket index `p`,
/// bra index `q`.
pub fn mps_sandwich<S: Scalar>(
    psi: &TensorHypernetwork<S>,
    blocks: &[SiteOperator<S>],
) -> Result<TensorHypernetwork<S>> {
    let (d, phys, bonds) = mps_shape(psi)
        .ok_or_else(|| Error::Shape("network is not a matrix product state".into()))?;
    if blocks.len() != d {
        return Err(Error::Shape(format!(
            "{} blocks for {d} sites",
            blocks.len()
        )));
    }
    if let Some(i) = (0..d).find(|&i| blocks[i].dim() != phys[i]) {
        return Err(Error::Shape(format!(
            "block {i} has dimension {}, site has {}",
            blocks[i].dim(),
            phys[i]
        )));
    }
    let edge_count = 4 * d - 2;
    let mut edges = vec![Vec::new(); edge_count];
    let mut sizes = vec![0; edge_count];
    for i in 0..d {
        let (ket, op, bra) = (3 * i, 3 * i + 1, 3 * i + 2);
        edges[4 * i] = vec![ket, op];
        edges[4 * i + 1] = vec![op, bra];
        sizes[4 * i] = phys[i];
        sizes[4 * i + 1] = phys[i];
        if i + 1 < d {
            edges[4 * i + 2] = vec![ket, ket + 3];
            edges[4 * i + 3] = vec![bra, bra + 3];
            sizes[4 * i + 2] = bonds[i];
            sizes[4 * i + 3] = bonds[i];
        }
    }
    let ket_label = |l: Label| 2 * l;
    let bra_label = |l: Label| ket_label(l) + 1;
    let mut tensors = Vec::with_capacity(3 * d);
    for (i, (site, block)) in psi.tensors().iter().zip(blocks).enumerate() {
        tensors.push(site.relabel(ket_label)?);
        let n = block.dim();
        let op_data = (0..n * n).map(|k| block.get(k % n, k / n)).collect();
        tensors.push(LabeledTensor::new(
            vec![4 * i, 4 * i + 1],
            vec![n, n],
            op_data,
        )?);
        tensors.push(site.conj().relabel(bra_label)?);
    }
    TensorHypernetwork::new(Hypergraph::new(3 * d, edges)?, sizes, tensors)
}

/// Tucker network: core vertex 0 and factor-matrix vertices `1..=d`.
/// Edge `k` is the dangling index of matrix `k + 1` (size `n_k`); edge
/// `d + k` joins the core to matrix `k + 1` (size `m_k`).
pub fn tucker<S: Scalar>(
    ns: &[usize],
    ms: &[usize],
    fill: &Fill<S>,
) -> Result<TensorHypernetwork<S>> {
    let d = ns.len();
    if d == 0 || ms.len() != d {
        return Err(Error::Domain(format!(
            "tucker needs matching nonempty dimension lists, got {} and {}",
            d,
            ms.len()
        )));
    }
    positive("tucker dimensions", ns)?;
    positive("tucker ranks", ms)?;
    let mut edges: Vec<Vec<usize>> = (0..d).map(|k| vec![k + 1]).collect();
    edges.extend((0..d).map(|k| vec![0, k + 1]));
    let sizes = ns.iter().chain(ms).copied().collect();
    build_tn(d + 1, edges, sizes, fill)
}

/// CP network: vertex `k` is the factor matrix of mode `k` (size
/// `n_k × r`). Edge `k` is its dangling index and edge `d` the shared rank
/// index over all vertices.
pub fn cp<S: Scalar>(ns: &[usize], r: usize, fill: &Fill<S>) -> Result<TensorHypernetwork<S>> {
    let d = ns.len();
    if d < 2 {
        return Err(Error::Domain(format!("cp needs at least 2 modes, got {d}")));
    }
    positive("cp dimensions and rank", ns)?;
    positive("cp dimensions and rank", &[r])?;
    let mut edges: Vec<Vec<usize>> = (0..d).map(|k| vec![k]).collect();
    edges.push((0..d).collect());
    let sizes = ns.iter().copied().chain([r]).collect();
    build_tn(d, edges, sizes, fill)
}

/// Three variables with pairwise potentials on `{0,1}`, `{0,2}`, `{1,2}`.
pub fn no_three_way<S: Scalar>(sizes: [usize; 3], fill: &Fill<S>) -> Result<GraphicalModel<S>> {
    positive("variable sizes", &sizes)?;
    build_gm(
        sizes.to_vec(),
        vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        fill,
    )
}

/// Grid of `rows × cols` variables numbered row-major, with pairwise
/// hyperedges: all horizontal neighbor pairs (row-major) then all vertical
/// ones. `sizes` holds one cardinality for every variable, or a single
/// value shared by all.
pub fn ising_grid<S: Scalar>(
    rows: usize,
    cols: usize,
    sizes: &[usize],
    fill: &Fill<S>,
) -> Result<GraphicalModel<S>> {
    positive("grid rows and columns", &[rows, cols])?;
    let count = rows * cols;
    let cards = match sizes.len() {
        1 => vec![sizes[0]; count],
        len if len == count => sizes.to_vec(),
        len => {
            return Err(Error::Domain(format!(
                "{len} sizes for a grid of {count} variables"
            )))
        }
    };
    positive("variable sizes", &cards)?;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols - 1 {
            edges.push(vec![i * cols + j, i * cols + j + 1]);
        }
    }
    for i in 0..rows - 1 {
        for j in 0..cols {
            edges.push(vec![i * cols + j, (i + 1) * cols + j]);
        }
    }
    build_gm(cards, edges, fill)
}

/// Open-boundary PEPS on a `rows × cols` grid, vertices row-major. Edges
/// are numbered node by node: the physical index (size `n`), then the bond
/// to the right neighbor, then the bond to the neighbor below (size `r`),
/// each when present. A single row reproduces [`mps`] exactly.
pub fn peps_grid<S: Scalar>(
    rows: usize,
    cols: usize,
    n: usize,
    r: usize,
    fill: &Fill<S>,
) -> Result<TensorHypernetwork<S>> {
    positive(
        "grid rows, columns, physical and bond sizes",
        &[rows, cols, n, r],
    )?;
    let mut edges = Vec::new();
    let mut sizes = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            edges.push(vec![v]);
            sizes.push(n);
            if j + 1 < cols {
                edges.push(vec![v, v + 1]);
                sizes.push(r);
            }
            if i + 1 < rows {
                edges.push(vec![v, v + cols]);
                sizes.push(r);
            }
        }
    }
    build_tn(rows * cols, edges, sizes, fill)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_complex::Complex64;

    fn close(a: &LabeledTensor<f64>, b: &LabeledTensor<f64>) -> bool {
        a.labels() == b.labels() && a.max_abs_diff(b).unwrap() <= 1e-12 * b.max_modulus().max(1.0)
    }

    #[test]
    fn mps_layout() {
        let psi = mps::<f64>(4, 2, 3, &Fill::Ones).unwrap();
        assert_eq!(psi.edge_count(), 7);
        assert_eq!(psi.dangling_edges(), vec![0, 2, 4, 6]);
        assert_eq!(psi.tensors()[0].sizes(), &[2, 3]);
        assert_eq!(psi.tensors()[1].labels(), &[1, 2, 3]);
        assert_eq!(psi.tensors()[1].sizes(), &[3, 2, 3]);
        assert_eq!(psi.tensors()[3].sizes(), &[3, 2]);
        let single = mps::<f64>(1, 3, 2, &Fill::Ones).unwrap();
        assert_eq!(single.tensors()[0].sizes(), &[3]);
        assert!(mps::<f64>(0, 2, 2, &Fill::Ones).is_err());
    }

    #[test]
    fn two_site_mps_is_a_matrix_product() {
        let a = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let b = vec![1.0, 0.0, 2.0, 1.0, -1.0, 3.0];
        let psi = mps::<f64>(2, 2, 3, &Fill::Data(vec![a.clone(), b.clone()])).unwrap();
        let state = oracle::enumerate_contraction(&psi).unwrap();
        // site 1 tensor has labels (1, 2): rows are the bond index
        let mut expected = vec![0.0; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..3 {
                    expected[i * 2 + j] += a[i * 3 + k] * b[k * 2 + j];
                }
            }
        }
        assert_eq!(state.data(), expected.as_slice());
    }

    #[test]
    fn random_fill_is_deterministic_and_bounded() {
        let a = mps::<f64>(3, 2, 2, &Fill::Random(9)).unwrap();
        let b = mps::<f64>(3, 2, 2, &Fill::Random(9)).unwrap();
        let c = mps::<f64>(3, 2, 2, &Fill::Random(10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a
            .tensors()
            .iter()
            .flat_map(|t| t.data())
            .all(|x| x.abs() <= 1.0));
        let z = mps::<Complex64>(3, 2, 2, &Fill::Random(9)).unwrap();
        assert!(z
            .tensors()
            .iter()
            .flat_map(|t| t.data())
            .all(|x| x.norm() <= 1.0));
    }

    #[test]
    fn data_fill_checks_counts() {
        assert!(matches!(
            mps::<f64>(2, 2, 2, &Fill::Data(vec![vec![1.0; 4]])),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            mps::<f64>(1, 2, 2, &Fill::Data(vec![vec![1.0; 3]])),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            mps::<f64>(1, 2, 2, &Fill::Data(vec![vec![1.0; 2], vec![1.0]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn sandwich_layout() {
        let psi = mps::<f64>(4, 2, 3, &Fill::Ones).unwrap();
        let s = mps_sandwich(&psi, &vec![SiteOperator::identity(2); 4]).unwrap();
        assert_eq!(s.edge_count(), 14);
        assert_eq!(s.vertex_count(), 12);
        assert!(s.dangling_edges().is_empty());
        let gm = s.to_graphical_model();
        assert_eq!(gm.variable_count(), 14);
        assert!(mps_sandwich(&psi, &vec![SiteOperator::identity(3); 4]).is_err());
        assert!(mps_sandwich(&psi, &vec![SiteOperator::identity(2); 3]).is_err());
        let cp3 = cp::<f64>(&[2, 2, 2], 2, &Fill::Ones).unwrap();
        assert!(mps_sandwich(&cp3, &vec![SiteOperator::identity(2); 3]).is_err());
    }

    #[test]
    fn sandwich_matches_dense_expectation() {
        for seed in 0..5 {
            let psi = mps::<Complex64>(3, 2, 2, &Fill::Random(seed)).unwrap();
            let blocks: Vec<SiteOperator<Complex64>> = (0..3)
                .map(|i| {
                    let data = (0..4)
                        .map(|k| Complex64::new((k + i) as f64 * 0.5 - 1.0, k as f64 * 0.25))
                        .collect();
                    SiteOperator::new(2, data).unwrap()
                })
                .collect();
            let network = mps_sandwich(&psi, &blocks).unwrap();
            let value = oracle::enumerate_contraction(&network)
                .unwrap()
                .scalar_value()
                .unwrap();
            let expected = oracle::dense_expectation(&psi, &blocks).unwrap();
            assert!((value - expected).norm() <= 1e-12 * expected.norm().max(1.0));
        }
    }

    #[test]
    fn product_state_has_unit_norm() {
        let e0 = vec![1.0, 0.0];
        let psi = mps::<f64>(3, 2, 1, &Fill::Data(vec![e0.clone(), e0.clone(), e0])).unwrap();
        let s = mps_sandwich(&psi, &vec![SiteOperator::identity(2); 3]).unwrap();
        assert_eq!(
            oracle::enumerate_contraction(&s).unwrap().scalar_value(),
            Some(1.0)
        );
    }

    #[test]
    fn tucker_cases() {
        let t = tucker::<f64>(&[2, 3, 2], &[1, 1, 1], &Fill::Random(4)).unwrap();
        assert_eq!(t.dangling_edges(), vec![0, 1, 2]);
        let state = oracle::enumerate_contraction(&t).unwrap();
        // rank one: T[i,j,k] T[0,0,0] = T[i,0,0] T[0,j,k]
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    let lhs = state.get(&[i, j, k]).unwrap() * state.get(&[0, 0, 0]).unwrap();
                    let rhs = state.get(&[i, 0, 0]).unwrap() * state.get(&[0, j, k]).unwrap();
                    assert!((lhs - rhs).abs() < 1e-12);
                }
            }
        }

        let core: Vec<f64> = (0..8).map(|x| x as f64 - 2.5).collect();
        let id = vec![1.0, 0.0, 0.0, 1.0];
        let t = tucker::<f64>(
            &[2, 2, 2],
            &[2, 2, 2],
            &Fill::Data(vec![core.clone(), id.clone(), id.clone(), id]),
        )
        .unwrap();
        assert_eq!(
            oracle::enumerate_contraction(&t).unwrap().data(),
            core.as_slice()
        );
    }

    #[test]
    fn tucker_matches_direct_sum() {
        let (ns, ms) = ([2, 3, 2], [2, 2, 3]);
        let t = tucker::<f64>(&ns, &ms, &Fill::Random(11)).unwrap();
        let g = t.tensors()[0].data();
        let mats: Vec<&[f64]> = (1..4).map(|v| t.tensors()[v].data()).collect();
        let state = oracle::enumerate_contraction(&t).unwrap();
        for i in 0..ns[0] {
            for j in 0..ns[1] {
                for k in 0..ns[2] {
                    let mut sum = 0.0;
                    for a in 0..ms[0] {
                        for b in 0..ms[1] {
                            for c in 0..ms[2] {
                                sum += g[(a * ms[1] + b) * ms[2] + c]
                                    * mats[0][i * ms[0] + a]
                                    * mats[1][j * ms[1] + b]
                                    * mats[2][k * ms[2] + c];
                            }
                        }
                    }
                    assert!((state.get(&[i, j, k]).unwrap() - sum).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn cp_cases() {
        let data = vec![vec![1.0, 2.0], vec![1.0, 1.0], vec![3.0, 0.0]];
        let t = cp::<f64>(&[2, 2, 2], 1, &Fill::Data(data)).unwrap();
        let state = oracle::enumerate_contraction(&t).unwrap();
        assert_eq!(state.data(), &[3.0, 0.0, 3.0, 0.0, 6.0, 0.0, 6.0, 0.0]);

        let (ns, r) = ([2, 3, 2], 3);
        let t = cp::<f64>(&ns, r, &Fill::Random(5)).unwrap();
        let f: Vec<&[f64]> = t.tensors().iter().map(|x| x.data()).collect();
        let state = oracle::enumerate_contraction(&t).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    let sum: f64 = (0..r)
                        .map(|l| f[0][i * r + l] * f[1][j * r + l] * f[2][k * r + l])
                        .sum();
                    assert!((state.get(&[i, j, k]).unwrap() - sum).abs() < 1e-12);
                }
            }
        }
        assert!(cp::<f64>(&[2], 2, &Fill::Ones).is_err());
    }

    #[test]
    fn cp_without_dangling_is_dual_to_tucker_core() {
        let ns = [2, 3, 4];
        let c = cp::<f64>(&ns, 2, &Fill::Ones).unwrap();
        let shared: Vec<Vec<usize>> = c.hypergraph().edges()[ns.len()..].to_vec();
        let cp_core = Hypergraph::new(ns.len(), shared).unwrap();
        let dual = cp_core.dual();
        // a single tensor carrying one index per mode: the Tucker core
        let t = tucker::<f64>(&ns, &[2, 2, 2], &Fill::Ones).unwrap();
        assert_eq!(dual.vertex_count(), 1);
        assert_eq!(dual.edges(), &[vec![0], vec![0], vec![0]]);
        assert_eq!(t.hypergraph().degree(0), dual.degree(0));
        assert_eq!(t.tensors()[0].labels().len(), dual.edge_count());
    }

    #[test]
    fn no_three_way_shape() {
        let gm = no_three_way::<f64>([2, 3, 4], &Fill::Ones).unwrap();
        let m = gm.hypergraph().to_incidence();
        assert_eq!(m.entries(), &[1, 1, 0, 1, 0, 1, 0, 1, 1]);
        assert_eq!(m, m.transpose());
        assert_eq!(gm.to_tensor_network().hypergraph(), gm.hypergraph());
        let joint = gm.joint_tensor(true).unwrap();
        assert!(joint.data().iter().all(|&p| (p - 1.0 / 24.0).abs() < 1e-15));
    }

    #[test]
    fn ising_shapes() {
        let gm = ising_grid::<f64>(2, 2, &[2], &Fill::Ones).unwrap();
        assert_eq!(gm.variable_count(), 4);
        assert_eq!(
            gm.hypergraph().edges(),
            &[vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]]
        );
        let chain = ising_grid::<f64>(1, 4, &[2, 3, 2, 3], &Fill::Ones).unwrap();
        assert_eq!(
            chain.hypergraph().edges(),
            &[vec![0, 1], vec![1, 2], vec![2, 3]]
        );
        assert!(ising_grid::<f64>(2, 2, &[2, 2], &Fill::Ones).is_err());
    }

    #[test]
    fn single_row_peps_is_mps() {
        for k in 1..5 {
            let p = peps_grid::<f64>(1, k, 2, 3, &Fill::Random(3)).unwrap();
            let m = mps::<f64>(k, 2, 3, &Fill::Random(3)).unwrap();
            assert_eq!(p, m);
        }
    }

    #[test]
    fn small_peps_contracts() {
        let p = peps_grid::<f64>(2, 2, 2, 2, &Fill::Random(8)).unwrap();
        assert_eq!(p.edge_count(), 8);
        assert_eq!(p.dangling_edges().len(), 4);
        let state = oracle::enumerate_contraction(&p).unwrap();
        assert_eq!(state.len(), 16);
        let direct = p.state_bruteforce().unwrap();
        assert!(close(&state, &direct));
    }
}
