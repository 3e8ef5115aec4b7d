//! Graphical models, tensor hypernetworks and the duality between them.
//!
//! A graphical model on a hypergraph `H` carries one potential per hyperedge.
//! The dual tensor hypernetwork lives on `H*`: the potential of hyperedge `C`
//! becomes the tensor at dual vertex `C`, and variable `u` becomes dual
//! hyperedge `u` with size `|X_u|`. Label ids are preserved in both
//! directions (variable `u` and dual edge `u` share label `u`), so the two
//! conversions are exact inverses of each other.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;
use crate::tensor::{product_sum, Label, LabeledTensor};

/// Cap on the number of assignments enumerated by the brute-force paths.
pub const DEFAULT_STATE_CAP: u128 = 1 << 20;

fn state_space(sizes: impl IntoIterator<Item = usize>) -> u128 {
    sizes
        .into_iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphicalModel<S> {
    hypergraph: Hypergraph,
    cardinalities: Vec<usize>,
    potentials: Vec<LabeledTensor<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorHypernetwork<S> {
    hypergraph: Hypergraph,
    edge_sizes: Vec<usize>,
    tensors: Vec<LabeledTensor<S>>,
}

fn check_factor<S: Scalar>(
    what: &str,
    index: usize,
    tensor: &LabeledTensor<S>,
    labels: &[Label],
    sizes: &[usize],
) -> Result<()> {
    if tensor.labels() != labels {
        return Err(Error::Invalid(format!(
            "{what} {index} has labels {:?}, expected {labels:?}",
            tensor.labels()
        )));
    }
    let expected: Vec<usize> = labels.iter().map(|&l| sizes[l]).collect();
    if tensor.sizes() != expected.as_slice() {
        return Err(Error::Invalid(format!(
            "{what} {index} has sizes {:?}, expected {expected:?}",
            tensor.sizes()
        )));
    }
    Ok(())
}

impl<S: Scalar> GraphicalModel<S> {
    pub fn new(
        hypergraph: Hypergraph,
        cardinalities: Vec<usize>,
        potentials: Vec<LabeledTensor<S>>,
    ) -> Result<Self> {
        hypergraph.validate()?;
        if cardinalities.len() != hypergraph.vertex_count() {
            return Err(Error::Invalid(format!(
                "{} cardinalities for {} variables",
                cardinalities.len(),
                hypergraph.vertex_count()
            )));
        }
        if let Some(u) = cardinalities.iter().position(|&c| c == 0) {
            return Err(Error::Invalid(format!("variable {u} has cardinality 0")));
        }
        if potentials.len() != hypergraph.edge_count() {
            return Err(Error::Invalid(format!(
                "{} potentials for {} hyperedges",
                potentials.len(),
                hypergraph.edge_count()
            )));
        }
        for (j, (p, e)) in potentials.iter().zip(hypergraph.edges()).enumerate() {
            check_factor("potential", j, p, e, &cardinalities)?;
        }
        Ok(GraphicalModel {
            hypergraph,
            cardinalities,
            potentials,
        })
    }

    /// Model whose potentials are all ones.
    pub fn uniform(hypergraph: Hypergraph, cardinalities: Vec<usize>) -> Result<Self> {
        let potentials = hypergraph
            .edges()
            .iter()
            .map(|e| {
                let sizes = e
                    .iter()
                    .map(|&u| cardinalities.get(u).copied().unwrap_or(1))
                    .collect();
                LabeledTensor::ones(e.clone(), sizes)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(hypergraph, cardinalities, potentials)
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn potentials(&self) -> &[LabeledTensor<S>] {
        &self.potentials
    }

    pub fn variable_count(&self) -> usize {
        self.hypergraph.vertex_count()
    }

    /// Number of joint assignments, saturating.
    pub fn state_space(&self) -> u128 {
        state_space(self.cardinalities.iter().copied())
    }

    /// Returns a copy with one more hyperedge and its potential.
    pub fn with_hyperedge(&self, edge: Vec<usize>, potential: LabeledTensor<S>) -> Result<Self> {
        let mut hypergraph = self.hypergraph.clone();
        hypergraph.push_edge(edge)?;
        let mut potentials = self.potentials.clone();
        potentials.push(potential);
        Self::new(hypergraph, self.cardinalities.clone(), potentials)
    }

    /// The dual tensor hypernetwork: tensor `T_C = psi_C` at dual vertex
    /// `C`, dual hyperedge `u` of size `|X_u|`.
    pub fn to_tensor_network(&self) -> TensorHypernetwork<S> {
        TensorHypernetwork {
            hypergraph: self.hypergraph.dual(),
            edge_sizes: self.cardinalities.clone(),
            tensors: self.potentials.clone(),
        }
    }

    /// Product of all potentials over every variable, divided by `Z` when
    /// `normalized`.
    pub fn joint_tensor(&self, normalized: bool) -> Result<LabeledTensor<S>> {
        self.joint_tensor_capped(normalized, DEFAULT_STATE_CAP)
    }

    pub fn joint_tensor_capped(&self, normalized: bool, cap: u128) -> Result<LabeledTensor<S>> {
        let required = self.state_space();
        if required > cap {
            return Err(Error::size("joint tensor", required, cap));
        }
        let covered = self.covered_variables();
        let free: Vec<usize> = (0..self.variable_count())
            .filter(|&u| !covered[u])
            .collect();
        let free_sizes = free.iter().map(|&u| self.cardinalities[u]).collect();
        let ones = LabeledTensor::ones(free, free_sizes)?;
        let mut factors: Vec<&LabeledTensor<S>> = self.potentials.iter().collect();
        factors.push(&ones);
        let joint = product_sum(&factors, &[])?;
        if normalized {
            Ok(joint.normalize()?.0)
        } else {
            Ok(joint)
        }
    }

    /// Unnormalized marginal over `vars`: the joint summed over every other
    /// variable.
    pub fn marginal_bruteforce(&self, vars: &[usize]) -> Result<LabeledTensor<S>> {
        self.check_variables(vars)?;
        self.joint_tensor(false)?.marginalize_to(vars)
    }

    /// Restricts variable `var` to the states in `keep` (strictly
    /// increasing). Potentials that do not mention `var` are untouched.
    pub fn condition(&self, var: usize, keep: &[usize]) -> Result<Self> {
        self.check_variables(&[var])?;
        if keep.is_empty() {
            return Err(Error::Domain(format!("empty state set for variable {var}")));
        }
        let size = self.cardinalities[var];
        for (i, &k) in keep.iter().enumerate() {
            if k >= size {
                return Err(Error::Index { index: k, size });
            }
            if i > 0 && keep[i - 1] >= k {
                return Err(Error::Domain(
                    "kept states must be strictly increasing".into(),
                ));
            }
        }
        let potentials = self
            .potentials
            .iter()
            .map(|p| {
                if p.has_label(var) {
                    p.slice(var, keep)
                } else {
                    Ok(p.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cardinalities = self.cardinalities.clone();
        cardinalities[var] = keep.len();
        Self::new(self.hypergraph.clone(), cardinalities, potentials)
    }

    pub(crate) fn check_variables(&self, vars: &[usize]) -> Result<()> {
        match vars.iter().find(|&&u| u >= self.variable_count()) {
            Some(&u) => Err(Error::Domain(format!(
                "variable {u} does not exist (model has {})",
                self.variable_count()
            ))),
            None => Ok(()),
        }
    }

    fn covered_variables(&self) -> Vec<bool> {
        let mut covered = vec![false; self.variable_count()];
        for e in self.hypergraph.edges() {
            for &u in e {
                covered[u] = true;
            }
        }
        covered
    }
}

impl<S: Scalar> TensorHypernetwork<S> {
    pub fn new(
        hypergraph: Hypergraph,
        edge_sizes: Vec<usize>,
        tensors: Vec<LabeledTensor<S>>,
    ) -> Result<Self> {
        hypergraph.validate()?;
        if edge_sizes.len() != hypergraph.edge_count() {
            return Err(Error::Invalid(format!(
                "{} edge sizes for {} hyperedges",
                edge_sizes.len(),
                hypergraph.edge_count()
            )));
        }
        if let Some(e) = edge_sizes.iter().position(|&n| n == 0) {
            return Err(Error::Invalid(format!("hyperedge {e} has size 0")));
        }
        if tensors.len() != hypergraph.vertex_count() {
            return Err(Error::Invalid(format!(
                "{} tensors for {} vertices",
                tensors.len(),
                hypergraph.vertex_count()
            )));
        }
        for (v, (t, star)) in tensors.iter().zip(hypergraph.incident_edges()).enumerate() {
            check_factor("tensor", v, t, &star, &edge_sizes)?;
        }
        Ok(TensorHypernetwork {
            hypergraph,
            edge_sizes,
            tensors,
        })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn edge_sizes(&self) -> &[usize] {
        &self.edge_sizes
    }

    pub fn tensors(&self) -> &[LabeledTensor<S>] {
        &self.tensors
    }

    pub fn vertex_count(&self) -> usize {
        self.hypergraph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.hypergraph.edge_count()
    }

    /// Hyperedges with exactly one vertex; they index the state.
    pub fn dangling_edges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| self.hypergraph.edge(e).len() == 1)
            .collect()
    }

    /// Hyperedges with two or more vertices; they are summed over.
    pub fn bound_edges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| self.hypergraph.edge(e).len() >= 2)
            .collect()
    }

    /// The dual graphical model: variables are hyperedges, cliques are
    /// vertices.
    pub fn to_graphical_model(&self) -> GraphicalModel<S> {
        GraphicalModel {
            hypergraph: self.hypergraph.dual(),
            cardinalities: self.edge_sizes.clone(),
            potentials: self.tensors.clone(),
        }
    }

    /// The tensor hypernetwork state by direct summation.
    pub fn state_bruteforce(&self) -> Result<LabeledTensor<S>> {
        self.contract_open_bruteforce(&self.dangling_edges())
    }

    /// Sums every hyperedge not listed in `open` and keeps the listed ones as
    /// free indices. A summed hyperedge with no vertices contributes the
    /// factor `n_e`.
    pub fn contract_open_bruteforce(&self, open: &[usize]) -> Result<LabeledTensor<S>> {
        if let Some(&e) = open.iter().find(|&&e| e >= self.edge_count()) {
            return Err(Error::Domain(format!("hyperedge {e} does not exist")));
        }
        let required = state_space(self.edge_sizes.iter().copied());
        if required > DEFAULT_STATE_CAP {
            return Err(Error::size(
                "brute-force contraction",
                required,
                DEFAULT_STATE_CAP,
            ));
        }
        let mut summed = Vec::new();
        let mut free_open = Vec::new();
        let mut factor = S::one();
        for e in 0..self.edge_count() {
            let vertex_free = self.hypergraph.edge(e).is_empty();
            match (open.contains(&e), vertex_free) {
                (true, true) => free_open.push(e),
                (true, false) => {}
                (false, true) => factor *= S::from_real(self.edge_sizes[e] as f64),
                (false, false) => summed.push(e),
            }
        }
        let sizes = free_open.iter().map(|&e| self.edge_sizes[e]).collect();
        let ones = LabeledTensor::ones(free_open, sizes)?;
        let mut factors: Vec<&LabeledTensor<S>> = self.tensors.iter().collect();
        factors.push(&ones);
        Ok(product_sum(&factors, &summed)?.scale(factor))
    }
}

/// Graphical model to its dual tensor hypernetwork.
pub fn gm_to_tn<S: Scalar>(gm: &GraphicalModel<S>) -> TensorHypernetwork<S> {
    gm.to_tensor_network()
}

/// Tensor hypernetwork to its dual graphical model.
pub fn tn_to_gm<S: Scalar>(tn: &TensorHypernetwork<S>) -> GraphicalModel<S> {
    tn.to_graphical_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    pub(crate) fn fixture() -> GraphicalModel<f64> {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let psi0 = LabeledTensor::new(vec![0, 1], vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let psi1 = LabeledTensor::new(vec![1, 2], vec![2, 2], vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        GraphicalModel::new(h, vec![2, 2, 2], vec![psi0, psi1]).unwrap()
    }

    #[test]
    fn validation_rejects_mismatches() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let p = LabeledTensor::<f64>::ones(vec![0, 1], vec![2, 3]).unwrap();
        assert!(GraphicalModel::new(h.clone(), vec![2, 2], vec![p.clone()]).is_err());
        assert!(GraphicalModel::<f64>::new(h.clone(), vec![2, 3], vec![]).is_err());
        assert!(GraphicalModel::new(h.clone(), vec![2, 0], vec![p.clone()]).is_err());
        assert!(GraphicalModel::new(h, vec![2, 3], vec![p]).is_ok());
    }

    #[test]
    fn duality_on_fixture() {
        let gm = fixture();
        let tn = gm.to_tensor_network();
        assert_eq!(tn.vertex_count(), 2);
        assert_eq!(tn.hypergraph().edges(), &[vec![0], vec![0, 1], vec![1]]);
        assert_eq!(tn.dangling_edges(), vec![0, 2]);
        assert_eq!(tn.bound_edges(), vec![1]);
        assert_eq!(tn.to_graphical_model(), gm);
        assert_eq!(gm_to_tn(&tn_to_gm(&tn)), tn);
    }

    #[test]
    fn joint_of_fixture() {
        let gm = fixture();
        let p = gm.joint_tensor(true).unwrap();
        assert!((p.get(&[0, 1, 1]).unwrap() - 0.2).abs() < 1e-15);
        let raw = gm.joint_tensor(false).unwrap();
        assert_eq!(raw.total_sum(), 10.0);
        assert_eq!(raw, oracle::enumerate_joint(&gm).unwrap());
    }

    #[test]
    fn joint_degenerate_cases() {
        let h = Hypergraph::new(2, vec![vec![]]).unwrap();
        let gm = GraphicalModel::new(h, vec![2, 3], vec![LabeledTensor::scalar(5.0)]).unwrap();
        let raw = gm.joint_tensor(false).unwrap();
        assert!(raw.data().iter().all(|&x| x == 5.0));
        let p = gm.joint_tensor(true).unwrap();
        assert!(p.data().iter().all(|&x| (x - 1.0 / 6.0).abs() < 1e-15));

        let bare =
            GraphicalModel::<f64>::new(Hypergraph::new(2, vec![]).unwrap(), vec![2, 2], vec![])
                .unwrap();
        assert_eq!(bare.joint_tensor(false).unwrap().data(), &[1.0; 4]);
    }

    #[test]
    fn joint_cap() {
        let h = Hypergraph::new(21, vec![]).unwrap();
        let gm = GraphicalModel::<f64>::new(h, vec![2; 21], vec![]).unwrap();
        assert!(matches!(gm.joint_tensor(false), Err(Error::Size { .. })));
    }

    #[test]
    fn marginals_of_fixture() {
        let gm = fixture();
        assert_eq!(gm.marginal_bruteforce(&[1]).unwrap().data(), &[4.0, 6.0]);
        assert_eq!(
            gm.marginal_bruteforce(&[]).unwrap().scalar_value(),
            Some(10.0)
        );
        assert_eq!(
            gm.marginal_bruteforce(&[0, 1, 2]).unwrap(),
            gm.joint_tensor(false).unwrap()
        );
        let tn = gm.to_tensor_network();
        for w in [vec![], vec![0], vec![1], vec![0, 2], vec![0, 1, 2]] {
            assert_eq!(
                tn.contract_open_bruteforce(&w).unwrap(),
                gm.marginal_bruteforce(&w).unwrap()
            );
        }
    }

    #[test]
    fn conditioning_fixture() {
        let gm = fixture();
        assert_eq!(gm.condition(0, &[0, 1]).unwrap(), gm);
        let c = gm.condition(0, &[0]).unwrap();
        let joint = c.joint_tensor(false).unwrap();
        assert_eq!(
            joint,
            gm.joint_tensor(false).unwrap().slice(0, &[0]).unwrap()
        );
        let m = c.marginal_bruteforce(&[1]).unwrap().normalize().unwrap().0;
        assert!((m.data()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.data()[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!(matches!(gm.condition(0, &[]), Err(Error::Domain(_))));

        let h = Hypergraph::new(2, vec![vec![0]]).unwrap();
        let lone = GraphicalModel::<f64>::uniform(h, vec![2, 3]).unwrap();
        let c = lone.condition(1, &[0, 2]).unwrap();
        assert_eq!(c.cardinalities(), &[2, 2]);
        assert_eq!(c.potentials(), lone.potentials());
    }

    #[test]
    fn state_with_vertex_free_edges() {
        // one vertex carrying edge 0, edge 1 touches nothing
        let h = Hypergraph::new(1, vec![vec![0], vec![]]).unwrap();
        let t = LabeledTensor::new(vec![0], vec![2], vec![1.0, 2.0]).unwrap();
        let tn = TensorHypernetwork::new(h, vec![2, 3], vec![t]).unwrap();
        let state = tn.state_bruteforce().unwrap();
        assert_eq!(state.data(), &[3.0, 6.0]);
        let gm = tn.to_graphical_model();
        assert_eq!(gm.marginal_bruteforce(&[0]).unwrap(), state);
    }

    #[test]
    fn edge_free_network_is_outer_product() {
        let h = Hypergraph::new(2, vec![]).unwrap();
        let tn = TensorHypernetwork::new(
            h,
            vec![],
            vec![LabeledTensor::scalar(2.0), LabeledTensor::scalar(-3.0)],
        )
        .unwrap();
        assert_eq!(tn.state_bruteforce().unwrap().scalar_value(), Some(-6.0));
    }
}
