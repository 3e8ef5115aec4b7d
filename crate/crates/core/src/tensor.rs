//! Dense tensors whose axes carry integer labels.
//!
//! Every tensor is stored with its labels in ascending order and its data in
//! row-major order over those labels. Constructors accept any label order and
//! permute the data into canonical form, so two tensors over the same labels
//! are always laid out identically and can be compared entry by entry.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Axis identifier. In a graphical model a label is a variable id, in a
/// tensor hypernetwork it is a hyperedge id.
pub type Label = usize;

/// Tolerance on "sums to one" for the entropy functions.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTensor<S> {
    labels: Vec<Label>,
    sizes: Vec<usize>,
    data: Vec<S>,
}

/// Row-major strides for `sizes`.
fn strides_of(sizes: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    strides
}

/// Mixed-radix counter over a set of axes that tracks one linear offset per
/// operand. Advancing the last axis first yields row-major order.
struct Odometer {
    sizes: Vec<usize>,
    index: Vec<usize>,
    /// strides[operand][axis]
    strides: Vec<Vec<usize>>,
    offsets: Vec<usize>,
}

impl Odometer {
    fn new(sizes: Vec<usize>, strides: Vec<Vec<usize>>) -> Self {
        let operands = strides.len();
        Odometer {
            index: vec![0; sizes.len()],
            sizes,
            strides,
            offsets: vec![0; operands],
        }
    }

    /// Moves to the next multi-index. Returns false after wrapping around.
    fn advance(&mut self) -> bool {
        for axis in (0..self.sizes.len()).rev() {
            self.index[axis] += 1;
            for (off, st) in self.offsets.iter_mut().zip(&self.strides) {
                *off += st[axis];
            }
            if self.index[axis] < self.sizes[axis] {
                return true;
            }
            let span = self.sizes[axis];
            for (off, st) in self.offsets.iter_mut().zip(&self.strides) {
                *off -= st[axis] * span;
            }
            self.index[axis] = 0;
        }
        false
    }
}

fn checked_len(sizes: &[usize]) -> Result<usize> {
    sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .ok_or_else(|| Error::Shape("tensor size overflows usize".into()))
}

impl<S: Scalar> LabeledTensor<S> {
    /// Builds a tensor from labels, sizes and row-major data given in the
    /// same (arbitrary) label order. The result is canonicalized.
    pub fn new(labels: Vec<Label>, sizes: Vec<usize>, data: Vec<S>) -> Result<Self> {
        if labels.len() != sizes.len() {
            return Err(Error::Shape(format!(
                "{} labels but {} sizes",
                labels.len(),
                sizes.len()
            )));
        }
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Shape(format!("label {} has size 0", labels[pos])));
        }
        let len = checked_len(&sizes)?;
        if data.len() != len {
            return Err(Error::Shape(format!(
                "data has {} entries, shape requires {}",
                data.len(),
                len
            )));
        }
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&i| labels[i]);
        for w in order.windows(2) {
            if labels[w[0]] == labels[w[1]] {
                return Err(Error::Shape(format!("duplicate label {}", labels[w[0]])));
            }
        }
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return Ok(LabeledTensor {
                labels,
                sizes,
                data,
            });
        }
        let src_strides = strides_of(&sizes);
        let new_labels: Vec<Label> = order.iter().map(|&i| labels[i]).collect();
        let new_sizes: Vec<usize> = order.iter().map(|&i| sizes[i]).collect();
        let permuted: Vec<usize> = order.iter().map(|&i| src_strides[i]).collect();
        let mut odo = Odometer::new(new_sizes.clone(), vec![permuted]);
        let mut out = Vec::with_capacity(len);
        loop {
            out.push(data[odo.offsets[0]]);
            if !odo.advance() {
                break;
            }
        }
        Ok(LabeledTensor {
            labels: new_labels,
            sizes: new_sizes,
            data: out,
        })
    }

    pub fn scalar(value: S) -> Self {
        LabeledTensor {
            labels: Vec::new(),
            sizes: Vec::new(),
            data: vec![value],
        }
    }

    pub fn filled(labels: Vec<Label>, sizes: Vec<usize>, value: S) -> Result<Self> {
        let len = checked_len(&sizes)?;
        Self::new(labels, sizes, vec![value; len])
    }

    pub fn ones(labels: Vec<Label>, sizes: Vec<usize>) -> Result<Self> {
        Self::filled(labels, sizes, S::one())
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn has_label(&self, label: Label) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    pub fn size_of(&self, label: Label) -> Option<usize> {
        self.labels
            .binary_search(&label)
            .ok()
            .map(|pos| self.sizes[pos])
    }

    /// Entry at `assignment`, given in ascending label order.
    pub fn get(&self, assignment: &[usize]) -> Option<S> {
        if assignment.len() != self.labels.len() {
            return None;
        }
        let mut offset = 0;
        for (&x, &size) in assignment.iter().zip(&self.sizes) {
            if x >= size {
                return None;
            }
            offset = offset * size + x;
        }
        Some(self.data[offset])
    }

    /// The single entry of a label-free tensor.
    pub fn scalar_value(&self) -> Option<S> {
        self.is_scalar().then(|| self.data[0])
    }

    pub fn total_sum(&self) -> S {
        let mut acc = S::zero();
        for &x in &self.data {
            acc += x;
        }
        acc
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        LabeledTensor {
            labels: self.labels.clone(),
            sizes: self.sizes.clone(),
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn scale(&self, factor: S) -> Self {
        self.map(|x| {
            let mut y = x;
            y *= factor;
            y
        })
    }

    /// Renames every label through `rename`. The map must be injective on
    /// this tensor's labels.
    pub fn relabel(&self, rename: impl Fn(Label) -> Label) -> Result<Self> {
        let labels = self.labels.iter().map(|&l| rename(l)).collect();
        Self::new(labels, self.sizes.clone(), self.data.clone())
    }

    /// Aligned product: the result carries the union of both label sets.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        product_sum(&[self, other], &[])
    }

    pub fn sum_out(&self, label: Label) -> Result<Self> {
        product_sum(&[self], &[label])
    }

    pub fn sum_over(&self, labels: &[Label]) -> Result<Self> {
        product_sum(&[self], labels)
    }

    /// Sums out every label not in `keep`. Labels of `keep` that the tensor
    /// does not carry are ignored.
    pub fn marginalize_to(&self, keep: &[Label]) -> Result<Self> {
        let drop: Vec<Label> = self
            .labels
            .iter()
            .copied()
            .filter(|l| !keep.contains(l))
            .collect();
        self.sum_over(&drop)
    }

    /// Restricts the axis `label` to the indices in `keep` (strictly
    /// increasing). The label is retained with size `keep.len()`.
    pub fn slice(&self, label: Label, keep: &[usize]) -> Result<Self> {
        let axis = self
            .labels
            .binary_search(&label)
            .map_err(|_| Error::UnknownLabel(label))?;
        if keep.is_empty() {
            return Err(Error::Domain(format!("empty slice on label {label}")));
        }
        let size = self.sizes[axis];
        for (i, &k) in keep.iter().enumerate() {
            if k >= size {
                return Err(Error::Index { index: k, size });
            }
            if i > 0 && keep[i - 1] >= k {
                return Err(Error::Domain(format!(
                    "slice indices on label {label} must be strictly increasing"
                )));
            }
        }
        let outer: usize = self.sizes[..axis].iter().product();
        let inner: usize = self.sizes[axis + 1..].iter().product();
        let mut data = Vec::with_capacity(outer * keep.len() * inner);
        for o in 0..outer {
            for &k in keep {
                let start = (o * size + k) * inner;
                data.extend_from_slice(&self.data[start..start + inner]);
            }
        }
        let mut sizes = self.sizes.clone();
        sizes[axis] = keep.len();
        Ok(LabeledTensor {
            labels: self.labels.clone(),
            sizes,
            data,
        })
    }

    /// Divides by the total sum. Returns the normalized tensor and the sum.
    pub fn normalize(&self) -> Result<(Self, S)> {
        let z = self.total_sum();
        if z == S::zero() {
            return Err(Error::Degenerate);
        }
        Ok((self.map(|x| x / z), z))
    }

    /// Largest entrywise modulus of the difference, or `None` when the two
    /// tensors have different labels or sizes.
    pub fn max_abs_diff(&self, other: &Self) -> Option<f64> {
        if self.labels != other.labels || self.sizes != other.sizes {
            return None;
        }
        Some(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a - b).modulus())
                .fold(0.0, f64::max),
        )
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }
}

impl LabeledTensor<f64> {
    /// Normalization under probability semantics: entries must be
    /// nonnegative and the total positive.
    pub fn normalize_probability(&self) -> Result<(Self, f64)> {
        if let Some(x) = self.data.iter().find(|x| x.is_nan() || **x < 0.0) {
            return Err(Error::Domain(format!(
                "probability tensor has invalid entry {x}"
            )));
        }
        self.normalize()
    }

    /// Shannon entropy in nats, with 0 log 0 = 0.
    pub fn shannon_entropy(&self) -> Result<f64> {
        let mut total = 0.0;
        for &p in &self.data {
            if p.is_nan() || p < 0.0 {
                return Err(Error::Domain(format!("entropy of negative entry {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::Domain(format!("entries sum to {total}, expected 1")));
        }
        Ok(-self
            .data
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.ln())
            .sum::<f64>())
    }

    /// Entanglement entropy -tr(T log T), read elementwise; this coincides
    /// with the Shannon entropy of the same tensor.
    pub fn entanglement_entropy(&self) -> Result<f64> {
        self.shannon_entropy()
    }
}

/// Multiplies all `factors` (aligned on shared labels) and sums out
/// `summed` in one pass, without materializing the full product.
///
/// Every label in `summed` must be carried by at least one factor. With no
/// factors the result is the scalar one.
pub fn product_sum<S: Scalar>(
    factors: &[&LabeledTensor<S>],
    summed: &[Label],
) -> Result<LabeledTensor<S>> {
    let mut union: Vec<(Label, usize)> = Vec::new();
    for t in factors {
        for (&l, &s) in t.labels.iter().zip(&t.sizes) {
            match union.binary_search_by_key(&l, |&(ul, _)| ul) {
                Ok(pos) => {
                    if union[pos].1 != s {
                        return Err(Error::Shape(format!(
                            "label {l} has size {} and {s}",
                            union[pos].1
                        )));
                    }
                }
                Err(pos) => union.insert(pos, (l, s)),
            }
        }
    }
    for &l in summed {
        if union.binary_search_by_key(&l, |&(ul, _)| ul).is_err() {
            return Err(Error::UnknownLabel(l));
        }
    }
    // output axes first, summed axes innermost
    let mut axes: Vec<(Label, usize)> = union
        .iter()
        .copied()
        .filter(|(l, _)| !summed.contains(l))
        .collect();
    let out_rank = axes.len();
    let mut summed_axes: Vec<(Label, usize)> = union
        .iter()
        .copied()
        .filter(|(l, _)| summed.contains(l))
        .collect();
    axes.append(&mut summed_axes);

    let strides: Vec<Vec<usize>> = factors
        .iter()
        .map(|t| {
            let own = strides_of(&t.sizes);
            axes.iter()
                .map(|(l, _)| match t.labels.binary_search(l) {
                    Ok(pos) => own[pos],
                    Err(_) => 0,
                })
                .collect()
        })
        .collect();

    let out_labels: Vec<Label> = axes[..out_rank].iter().map(|&(l, _)| l).collect();
    let out_sizes: Vec<usize> = axes[..out_rank].iter().map(|&(_, s)| s).collect();
    let out_len = checked_len(&out_sizes)?;
    let inner_len = checked_len(&axes[out_rank..].iter().map(|&(_, s)| s).collect::<Vec<_>>())?;

    let mut odo = Odometer::new(axes.iter().map(|&(_, s)| s).collect(), strides);
    let mut data = Vec::with_capacity(out_len);
    for _ in 0..out_len {
        let mut acc = S::zero();
        for _ in 0..inner_len {
            let mut term = S::one();
            for (t, &off) in factors.iter().zip(&odo.offsets) {
                term *= t.data[off];
            }
            acc += term;
            odo.advance();
        }
        data.push(acc);
    }
    Ok(LabeledTensor {
        labels: out_labels,
        sizes: out_sizes,
        data,
    })
}
