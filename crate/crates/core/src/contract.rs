//! Tensor hypernetwork contraction through the dual graphical model, and
//! explicit contraction plans with exact operation counts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::junction::{self, JunctionDiagnostics, JunctionOptions};
use crate::model::TensorHypernetwork;
use crate::scalar::Scalar;
use crate::tensor::{product_sum, LabeledTensor};
use crate::zoo::{mps_sandwich, SiteOperator};

/// Largest output tensor [`contract`] will materialize.
pub const DEFAULT_OUTPUT_CAP: u128 = 1 << 20;

fn sorted_unique(edges: &[usize]) -> Vec<usize> {
    let mut v = edges.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// The state of `tn`: every bound edge summed, dangling edges kept.
pub fn contract<S: Scalar>(tn: &TensorHypernetwork<S>) -> Result<LabeledTensor<S>> {
    contract_with_open(tn, &tn.dangling_edges())
}

/// Sums every edge not in `open`. The open edges are forced into one
/// clique of the dual model (with an all-ones potential), information is
/// collected into that clique, and the rest of it is summed out. The result
/// is not normalized.
pub fn contract_with_open<S: Scalar>(
    tn: &TensorHypernetwork<S>,
    open: &[usize],
) -> Result<LabeledTensor<S>> {
    let open = sorted_unique(open);
    if let Some(&e) = open.iter().find(|&&e| e >= tn.edge_count()) {
        return Err(Error::Domain(format!("hyperedge {e} does not exist")));
    }
    let required = open.iter().fold(1u128, |acc, &e| {
        acc.saturating_mul(tn.edge_sizes()[e] as u128)
    });
    if required > DEFAULT_OUTPUT_CAP {
        return Err(Error::size(
            "contraction output",
            required,
            DEFAULT_OUTPUT_CAP,
        ));
    }
    let gm = tn.to_graphical_model();
    if open.is_empty() {
        return Ok(LabeledTensor::scalar(junction::total_sum(&gm)?));
    }
    let sizes = open.iter().map(|&e| tn.edge_sizes()[e]).collect();
    let gm = gm.with_hyperedge(open.clone(), LabeledTensor::ones(open.clone(), sizes)?)?;
    let mut tree = junction::compile(&gm, &JunctionOptions::default())?.tree;
    let sink = tree
        .node_containing(&open)
        .ok_or_else(|| Error::Internal("open edges missing from the tree".into()))?;
    tree.collect_to(sink)?;
    tree.nodes()[sink].potential.marginalize_to(&open)
}

/// One plan step, addressed by edge id or live tensor id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanStep {
    /// Multiply every live tensor carrying this edge and sum the edge out.
    Sum(usize),
    /// Outer-multiply two live tensors. Tensor ids start with the network's
    /// vertices `0..V`; each step result takes the next id.
    Merge([usize; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ContractionPlan {
    pub steps: Vec<PlanStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CostReport {
    pub mults: u64,
    pub adds: u64,
    pub peak_entries: u64,
}

/// A plan together with the junction tree it was read from.
#[derive(Debug, Clone, Serialize)]
pub struct PlanReport {
    pub steps: Vec<PlanStep>,
    pub sink: usize,
    pub schedule: Vec<(usize, usize)>,
    pub junction: JunctionDiagnostics,
}

/// Plan that sums bound edges in the order the dual variables leave the
/// collect sweep: for each message `C1 -> C2`, the variables of `C1 \ S`,
/// then whatever remains in the sink clique.
pub fn plan_from_junction_tree<S: Scalar>(tn: &TensorHypernetwork<S>) -> Result<ContractionPlan> {
    Ok(ContractionPlan {
        steps: plan_report(tn)?.steps,
    })
}

pub fn plan_report<S: Scalar>(tn: &TensorHypernetwork<S>) -> Result<PlanReport> {
    let open = tn.dangling_edges();
    let mut gm = tn.to_graphical_model();
    if !open.is_empty() {
        let sizes = open.iter().map(|&e| tn.edge_sizes()[e]).collect();
        gm = gm.with_hyperedge(open.clone(), LabeledTensor::ones(open.clone(), sizes)?)?;
    }
    let compiled = junction::compile(&gm, &JunctionOptions::default())?;
    let tree = &compiled.tree;
    let sink = if open.is_empty() {
        tree.terminal()
    } else {
        tree.node_containing(&open)
            .ok_or_else(|| Error::Internal("open edges missing from the tree".into()))?
    };
    let schedule = tree.collect_schedule(sink);
    let mut done: BTreeSet<usize> = open.iter().copied().collect();
    let mut steps = Vec::new();
    let mut emit = |vars: &mut dyn Iterator<Item = usize>, steps: &mut Vec<PlanStep>| {
        for u in vars {
            if done.insert(u) {
                steps.push(PlanStep::Sum(u));
            }
        }
    };
    for &(from, to) in &schedule {
        let k = tree
            .edge_between(from, to)
            .expect("schedule follows tree edges");
        let sep = &tree.edges()[k].separator;
        let mut leaving = tree.nodes()[from]
            .clique
            .iter()
            .copied()
            .filter(|u| sep.binary_search(u).is_err());
        emit(&mut leaving, &mut steps);
    }
    emit(&mut tree.nodes()[sink].clique.iter().copied(), &mut steps);
    Ok(PlanReport {
        steps,
        sink,
        schedule,
        junction: JunctionDiagnostics::new(&compiled.triangulation, tree),
    })
}

struct Live<S> {
    slots: Vec<Option<LabeledTensor<S>>>,
    entries: u64,
}

impl<S: Scalar> Live<S> {
    fn take(&mut self, id: usize) -> Result<LabeledTensor<S>> {
        let t = self
            .slots
            .get_mut(id)
            .and_then(Option::take)
            .ok_or_else(|| Error::Plan(format!("tensor {id} is not live")))?;
        self.entries -= t.len() as u64;
        Ok(t)
    }

    fn push(&mut self, t: LabeledTensor<S>) {
        self.entries += t.len() as u64;
        self.slots.push(Some(t));
    }
}

/// Runs `plan` step by step, counting scalar multiplications and additions
/// exactly. A fused step over `k` tensors with index union `U` costs
/// `(k - 1)|U|` multiplications and `|U| - |U \ e|` additions. Edges with no
/// vertices contribute the scalar `n_e` at no cost. Tensors still live at
/// the end are outer-multiplied in id order.
pub fn execute_plan<S: Scalar>(
    tn: &TensorHypernetwork<S>,
    plan: &ContractionPlan,
) -> Result<(LabeledTensor<S>, CostReport)> {
    let dangling: BTreeSet<usize> = tn.dangling_edges().into_iter().collect();
    let mut live = Live {
        slots: Vec::with_capacity(tn.vertex_count() + plan.steps.len()),
        entries: 0,
    };
    for t in tn.tensors() {
        live.push(t.clone());
    }
    let mut cost = CostReport {
        peak_entries: live.entries,
        ..CostReport::default()
    };
    let mut summed = BTreeSet::new();
    for step in &plan.steps {
        match *step {
            PlanStep::Sum(e) => {
                if e >= tn.edge_count() {
                    return Err(Error::Plan(format!("hyperedge {e} does not exist")));
                }
                if dangling.contains(&e) {
                    return Err(Error::Plan(format!("hyperedge {e} is dangling")));
                }
                if !summed.insert(e) {
                    return Err(Error::Plan(format!("hyperedge {e} was already summed")));
                }
                let carriers: Vec<usize> = live
                    .slots
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t.as_ref().is_some_and(|t| t.has_label(e)))
                    .map(|(id, _)| id)
                    .collect();
                if carriers.is_empty() {
                    live.push(LabeledTensor::scalar(S::from_real(
                        tn.edge_sizes()[e] as f64,
                    )));
                    cost.peak_entries = cost.peak_entries.max(live.entries);
                    continue;
                }
                let operands: Vec<&LabeledTensor<S>> = carriers
                    .iter()
                    .map(|&id| live.slots[id].as_ref().expect("carrier is live"))
                    .collect();
                let result = product_sum(&operands, &[e])?;
                let union = (result.len() * tn.edge_sizes()[e]) as u64;
                cost.mults += (operands.len() as u64 - 1) * union;
                cost.adds += union - result.len() as u64;
                cost.peak_entries = cost.peak_entries.max(live.entries + result.len() as u64);
                for id in carriers {
                    live.take(id)?;
                }
                live.push(result);
            }
            PlanStep::Merge([a, b]) => {
                if a == b {
                    return Err(Error::Plan(format!("cannot merge tensor {a} with itself")));
                }
                let ta = live.take(a)?;
                let tb = live.take(b)?;
                let result = product_sum(&[&ta, &tb], &[])?;
                cost.mults += result.len() as u64;
                cost.peak_entries = cost
                    .peak_entries
                    .max(live.entries + (ta.len() + tb.len() + result.len()) as u64);
                live.push(result);
            }
        }
    }
    let remaining: Vec<LabeledTensor<S>> = live.slots.into_iter().flatten().collect();
    if let Some(e) = remaining
        .iter()
        .flat_map(|t| t.labels().iter().copied())
        .find(|e| !dangling.contains(e))
    {
        return Err(Error::Plan(format!(
            "plan leaves bound hyperedge {e} unsummed"
        )));
    }
    let unsummed: Vec<usize> = (0..tn.edge_count())
        .filter(|e| !dangling.contains(e) && !summed.contains(e))
        .collect();
    if let Some(e) = unsummed.first() {
        return Err(Error::Plan(format!("plan never sums hyperedge {e}")));
    }
    let mut entries: u64 = remaining.iter().map(|t| t.len() as u64).sum();
    let mut iter = remaining.into_iter();
    let mut acc = iter
        .next()
        .unwrap_or_else(|| LabeledTensor::scalar(S::one()));
    for t in iter {
        let result = product_sum(&[&acc, &t], &[])?;
        cost.mults += result.len() as u64;
        cost.peak_entries = cost.peak_entries.max(entries + result.len() as u64);
        entries = entries + result.len() as u64 - acc.len() as u64 - t.len() as u64;
        acc = result;
    }
    Ok((acc, cost))
}

/// `<psi| A |psi>` for an MPS `psi` and one operator per site, by summing
/// the closed sandwich network through its dual model.
pub fn expectation_value<S: Scalar>(
    psi: &TensorHypernetwork<S>,
    blocks: &[SiteOperator<S>],
) -> Result<S> {
    let sandwich = mps_sandwich(psi, blocks)?;
    junction::total_sum(&sandwich.to_graphical_model())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::oracle::{self, RandomInstanceSpec};
    use crate::zoo::{self, Fill};
    use num_complex::Complex64;

    fn matmul_tn() -> TensorHypernetwork<f64> {
        // vertices 0, 1; edge 0 dangling on 0, edge 1 shared, edge 2 dangling on 1
        let h = Hypergraph::new(2, vec![vec![0], vec![0, 1], vec![1]]).unwrap();
        let a = LabeledTensor::new(vec![0, 1], vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = LabeledTensor::new(vec![1, 2], vec![2, 2], vec![5.0, 6.0, 7.0, 8.0]).unwrap();
        TensorHypernetwork::new(h, vec![2, 2, 2], vec![a, b]).unwrap()
    }

    fn rel(a: &LabeledTensor<f64>, b: &LabeledTensor<f64>) -> f64 {
        assert_eq!(a.labels(), b.labels());
        a.max_abs_diff(b).unwrap() / b.max_modulus().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn matmul_contraction_and_cost() {
        let tn = matmul_tn();
        let expected = [19.0, 22.0, 43.0, 50.0];
        assert_eq!(contract(&tn).unwrap().data(), &expected);
        let plan = plan_from_junction_tree(&tn).unwrap();
        assert_eq!(plan.steps, vec![PlanStep::Sum(1)]);
        let (t, cost) = execute_plan(&tn, &plan).unwrap();
        assert_eq!(t.data(), &expected);
        assert_eq!((cost.mults, cost.adds), (8, 4));
        assert_eq!(cost.peak_entries, 12);
    }

    #[test]
    fn plan_errors() {
        let tn = matmul_tn();
        let bad = |steps| execute_plan(&tn, &ContractionPlan { steps }).unwrap_err();
        assert!(matches!(bad(vec![PlanStep::Sum(7)]), Error::Plan(_)));
        assert!(matches!(bad(vec![PlanStep::Sum(0)]), Error::Plan(_)));
        assert!(matches!(
            bad(vec![PlanStep::Sum(1), PlanStep::Sum(1)]),
            Error::Plan(_)
        ));
        assert!(matches!(bad(vec![]), Error::Plan(_)));
        assert!(matches!(bad(vec![PlanStep::Merge([0, 5])]), Error::Plan(_)));
        assert!(matches!(bad(vec![PlanStep::Merge([0, 0])]), Error::Plan(_)));
    }

    #[test]
    fn merge_then_sum_agrees() {
        let tn = matmul_tn();
        let plan = ContractionPlan {
            steps: vec![PlanStep::Merge([0, 1]), PlanStep::Sum(1)],
        };
        let (t, cost) = execute_plan(&tn, &plan).unwrap();
        assert_eq!(t.data(), &[19.0, 22.0, 43.0, 50.0]);
        assert_eq!((cost.mults, cost.adds), (8, 4));
    }

    #[test]
    fn edge_free_network_is_outer_product() {
        let h = Hypergraph::new(2, vec![]).unwrap();
        let tn = TensorHypernetwork::new(
            h,
            vec![],
            vec![LabeledTensor::scalar(2.0), LabeledTensor::scalar(3.0)],
        )
        .unwrap();
        let (t, cost) = execute_plan(&tn, &ContractionPlan::default()).unwrap();
        assert_eq!(t.scalar_value(), Some(6.0));
        assert_eq!(cost.mults, 1);
        assert_eq!(contract(&tn).unwrap().scalar_value(), Some(6.0));

        let cp = zoo::cp::<f64>(
            &[2, 3],
            1,
            &Fill::Data(vec![vec![1.0, 2.0], vec![1.0, 0.0, 3.0]]),
        )
        .unwrap();
        assert_eq!(
            contract(&cp).unwrap().data(),
            &[1.0, 0.0, 3.0, 2.0, 0.0, 6.0]
        );
    }

    #[test]
    fn vertex_free_edges() {
        let h = Hypergraph::new(1, vec![vec![], vec![0], vec![]]).unwrap();
        let v = LabeledTensor::new(vec![1], vec![2], vec![1.0, 2.0]).unwrap();
        let tn = TensorHypernetwork::new(h, vec![3, 2, 4], vec![v]).unwrap();
        let expected = tn.state_bruteforce().unwrap();
        assert!(rel(&contract(&tn).unwrap(), &expected) < 1e-15);
        let plan = plan_from_junction_tree(&tn).unwrap();
        let (t, _) = execute_plan(&tn, &plan).unwrap();
        assert!(rel(&t, &expected) < 1e-15);
        let opened = contract_with_open(&tn, &[0, 1]).unwrap();
        assert!(rel(&opened, &tn.contract_open_bruteforce(&[0, 1]).unwrap()) < 1e-15);
    }

    #[test]
    fn output_cap() {
        let tn = zoo::cp::<f64>(&[1 << 7, 1 << 7, 1 << 7], 1, &Fill::Ones).unwrap();
        assert!(matches!(contract(&tn), Err(Error::Size { .. })));
    }

    #[test]
    fn random_networks_agree_with_oracle() {
        for seed in 0..60 {
            let tn = oracle::random_tn::<f64>(&RandomInstanceSpec::new(5, 6, 3, seed)).unwrap();
            let expected = oracle::enumerate_contraction(&tn).unwrap();
            assert!(
                rel(&contract(&tn).unwrap(), &expected) <= 1e-10,
                "seed {seed}"
            );
            let plan = plan_from_junction_tree(&tn).unwrap();
            let (t, _) = execute_plan(&tn, &plan).unwrap();
            assert!(rel(&t, &expected) <= 1e-10, "seed {seed}");
            // reversed sum order is another valid plan
            let mut steps = plan.steps.clone();
            steps.reverse();
            let (t, _) = execute_plan(&tn, &ContractionPlan { steps }).unwrap();
            assert!(rel(&t, &expected) <= 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn sandwich_plan_starts_at_the_left_end() {
        let psi = zoo::mps::<f64>(4, 2, 2, &Fill::Ones).unwrap();
        let s = zoo::mps_sandwich(&psi, &vec![SiteOperator::identity(2); 4]).unwrap();
        let plan = plan_from_junction_tree(&s).unwrap();
        assert_eq!(plan.steps[0], PlanStep::Sum(0));
        assert_eq!(plan.steps.len(), 14);
    }

    #[test]
    fn expectation_values() {
        let e0 = vec![1.0, 0.0];
        let psi = zoo::mps::<f64>(3, 2, 1, &Fill::Data(vec![e0.clone(), e0.clone(), e0])).unwrap();
        assert_eq!(
            expectation_value(&psi, &vec![SiteOperator::identity(2); 3]).unwrap(),
            1.0
        );

        let psi = zoo::mps::<Complex64>(3, 2, 3, &Fill::Random(2)).unwrap();
        let blocks = vec![SiteOperator::identity(2); 3];
        let norm = expectation_value(&psi, &blocks).unwrap();
        let state = oracle::enumerate_contraction(&psi).unwrap();
        let direct: f64 = state.data().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - Complex64::new(direct, 0.0)).norm() < 1e-12);
        assert!(expectation_value(&psi, &vec![SiteOperator::identity(3); 3]).is_err());
    }
}
