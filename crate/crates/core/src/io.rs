//! JSON documents tagged `"format": "hyperdual/1"`.
//!
//! Floating-point numbers are written with 17 significant digits (`%.17g`
//! style) so every double survives a round trip and reruns are
//! byte-identical. Complex entries are `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::contract::{CostReport, PlanReport};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::model::{GraphicalModel, TensorHypernetwork};
use crate::scalar::{Field, Scalar};
use crate::tensor::{Label, LabeledTensor};
use crate::zoo::SiteOperator;

pub const FORMAT: &str = "hyperdual/1";

/// `x` with 17 significant digits, trailing zeros trimmed, fixed notation
/// for decimal exponents in `-5..17` and scientific notation otherwise.
pub fn format_f64(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::Format(format!("{x} cannot be written as JSON")));
    }
    if x == 0.0 {
        return Ok(if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        });
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let body = if (-5..17).contains(&exp) {
        let s = if exp >= 0 {
            let point = exp as usize + 1;
            format!("{}.{}", &digits[..point], &digits[point..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    } else {
        let frac = digits[1..].trim_end_matches('0');
        let mant = if frac.is_empty() {
            digits[..1].to_string()
        } else {
            format!("{}.{}", &digits[..1], frac)
        };
        format!("{mant}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    };
    Ok(format!("{sign}{body}"))
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("formatted number is valid JSON")
}

/// A real number as a raw JSON token.
pub fn number(x: f64) -> Result<Box<RawValue>> {
    Ok(raw(format_f64(x)?))
}

/// A scalar as a raw JSON token: a number, or `[re, im]` in the complex
/// field.
pub fn scalar_json<S: Scalar>(x: S) -> Result<Box<RawValue>> {
    let (re, im) = x.parts();
    match S::FIELD {
        Field::Real => number(re),
        Field::Complex => Ok(raw(format!("[{},{}]", format_f64(re)?, format_f64(im)?))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gm,
    Tn,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyModel<S> {
    Gm(GraphicalModel<S>),
    Tn(TensorHypernetwork<S>),
}

impl<S: Scalar> AnyModel<S> {
    pub fn kind(&self) -> ModelKind {
        match self {
            AnyModel::Gm(_) => ModelKind::Gm,
            AnyModel::Tn(_) => ModelKind::Tn,
        }
    }

    pub fn dual(&self) -> Self {
        match self {
            AnyModel::Gm(gm) => AnyModel::Tn(gm.to_tensor_network()),
            AnyModel::Tn(tn) => AnyModel::Gm(tn.to_graphical_model()),
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        match self {
            AnyModel::Gm(gm) => gm.hypergraph(),
            AnyModel::Tn(tn) => tn.hypergraph(),
        }
    }

    /// The model viewed as a graphical model (tensor networks are dualized).
    pub fn as_gm(&self) -> GraphicalModel<S> {
        match self {
            AnyModel::Gm(gm) => gm.clone(),
            AnyModel::Tn(tn) => tn.to_graphical_model(),
        }
    }
}

/// A parsed model document in whichever field it declared.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Real(AnyModel<f64>),
    Complex(AnyModel<Complex64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Deserialize)]
struct TensorIn {
    labels: Vec<Label>,
    sizes: Vec<usize>,
    data: Vec<Entry>,
}

#[derive(Serialize)]
struct TensorOut {
    labels: Vec<Label>,
    sizes: Vec<usize>,
    data: Vec<Box<RawValue>>,
}

#[derive(Deserialize)]
struct Header {
    format: String,
}

#[derive(Deserialize)]
struct ModelIn {
    kind: ModelKind,
    field: Field,
    hypergraph: Hypergraph,
    sizes: Vec<usize>,
    factors: Vec<TensorIn>,
}

#[derive(Serialize)]
struct ModelOut<'a> {
    format: &'static str,
    kind: ModelKind,
    field: Field,
    hypergraph: &'a Hypergraph,
    sizes: &'a [usize],
    factors: Vec<TensorOut>,
}

fn format_error(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

fn parse_versioned<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    let header: Header = serde_json::from_str(text).map_err(format_error)?;
    if header.format != FORMAT {
        return Err(Error::Format(format!(
            "unsupported format {:?}, expected {FORMAT:?}",
            header.format
        )));
    }
    serde_json::from_str(text).map_err(format_error)
}

fn entry_to<S: Scalar>(e: &Entry) -> Result<S> {
    let (re, im) = match *e {
        Entry::Real(x) => (x, 0.0),
        Entry::Complex([re, im]) => (re, im),
    };
    S::from_parts(re, im)
        .ok_or_else(|| Error::Format(format!("complex entry [{re}, {im}] in a real document")))
}

fn tensor_in<S: Scalar>(t: &TensorIn) -> Result<LabeledTensor<S>> {
    let data = t.data.iter().map(entry_to).collect::<Result<Vec<S>>>()?;
    LabeledTensor::new(t.labels.clone(), t.sizes.clone(), data).map_err(format_error)
}

fn tensor_out<S: Scalar>(t: &LabeledTensor<S>) -> Result<TensorOut> {
    Ok(TensorOut {
        labels: t.labels().to_vec(),
        sizes: t.sizes().to_vec(),
        data: t
            .data()
            .iter()
            .map(|&x| scalar_json(x))
            .collect::<Result<_>>()?,
    })
}

fn build_model<S: Scalar>(doc: &ModelIn) -> Result<AnyModel<S>> {
    let h = Hypergraph::new(
        doc.hypergraph.vertex_count(),
        doc.hypergraph.edges().to_vec(),
    )
    .map_err(format_error)?;
    let factors: Vec<LabeledTensor<S>> =
        doc.factors.iter().map(tensor_in).collect::<Result<_>>()?;
    let model = match doc.kind {
        ModelKind::Gm => GraphicalModel::new(h, doc.sizes.clone(), factors).map(AnyModel::Gm),
        ModelKind::Tn => TensorHypernetwork::new(h, doc.sizes.clone(), factors).map(AnyModel::Tn),
    };
    model.map_err(format_error)
}

pub fn parse_model(text: &str) -> Result<Document> {
    let doc: ModelIn = parse_versioned(text)?;
    match doc.field {
        Field::Real => build_model(&doc).map(Document::Real),
        Field::Complex => build_model(&doc).map(Document::Complex),
    }
}

/// Compact single-line JSON for a model.
pub fn model_to_json<S: Scalar>(model: &AnyModel<S>) -> Result<String> {
    let (hypergraph, sizes, factors) = match model {
        AnyModel::Gm(gm) => (gm.hypergraph(), gm.cardinalities(), gm.potentials()),
        AnyModel::Tn(tn) => (tn.hypergraph(), tn.edge_sizes(), tn.tensors()),
    };
    let out = ModelOut {
        format: FORMAT,
        kind: model.kind(),
        field: S::FIELD,
        hypergraph,
        sizes,
        factors: factors.iter().map(tensor_out).collect::<Result<_>>()?,
    };
    serde_json::to_string(&out).map_err(format_error)
}

pub fn document_to_json(doc: &Document) -> Result<String> {
    match doc {
        Document::Real(m) => model_to_json(m),
        Document::Complex(m) => model_to_json(m),
    }
}

#[derive(Serialize)]
struct TensorDocOut {
    format: &'static str,
    kind: &'static str,
    field: Field,
    #[serde(flatten)]
    tensor: TensorOut,
}

#[derive(Deserialize)]
struct TensorDocIn {
    field: Field,
    #[serde(flatten)]
    tensor: TensorIn,
}

pub fn tensor_to_json<S: Scalar>(t: &LabeledTensor<S>) -> Result<String> {
    let out = TensorDocOut {
        format: FORMAT,
        kind: "tensor",
        field: S::FIELD,
        tensor: tensor_out(t)?,
    };
    serde_json::to_string(&out).map_err(format_error)
}

/// Reads a tensor document into field `S`. Real documents can be read as
/// complex, not the other way round.
pub fn parse_tensor<S: Scalar>(text: &str) -> Result<LabeledTensor<S>> {
    let doc: TensorDocIn = parse_versioned(text)?;
    if doc.field == Field::Complex && S::FIELD == Field::Real {
        return Err(Error::Format("complex tensor read as real".into()));
    }
    tensor_in(&doc.tensor)
}

#[derive(Serialize, Deserialize)]
struct BlockIo<T> {
    n: usize,
    data: Vec<T>,
}

#[derive(Serialize)]
struct BlocksOut {
    format: &'static str,
    kind: &'static str,
    field: Field,
    blocks: Vec<BlockIo<Box<RawValue>>>,
}

#[derive(Deserialize)]
struct BlocksIn {
    field: Field,
    blocks: Vec<BlockIo<Entry>>,
}

/// Per-site operators in whichever field the document declared.
#[derive(Debug, Clone, PartialEq)]
pub enum Blocks {
    Real(Vec<SiteOperator<f64>>),
    Complex(Vec<SiteOperator<Complex64>>),
}

fn build_blocks<S: Scalar>(doc: &BlocksIn) -> Result<Vec<SiteOperator<S>>> {
    doc.blocks
        .iter()
        .map(|b| {
            let data = b.data.iter().map(entry_to).collect::<Result<Vec<S>>>()?;
            SiteOperator::new(b.n, data).map_err(format_error)
        })
        .collect()
}

pub fn parse_blocks(text: &str) -> Result<Blocks> {
    let doc: BlocksIn = parse_versioned(text)?;
    match doc.field {
        Field::Real => build_blocks(&doc).map(Blocks::Real),
        Field::Complex => build_blocks(&doc).map(Blocks::Complex),
    }
}

pub fn blocks_to_json<S: Scalar>(blocks: &[SiteOperator<S>]) -> Result<String> {
    let out = BlocksOut {
        format: FORMAT,
        kind: "blocks",
        field: S::FIELD,
        blocks: blocks
            .iter()
            .map(|b| {
                Ok(BlockIo {
                    n: b.dim(),
                    data: b
                        .data()
                        .iter()
                        .map(|&x| scalar_json(x))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?,
    };
    serde_json::to_string(&out).map_err(format_error)
}

#[derive(Serialize)]
struct ScalarOut {
    format: &'static str,
    kind: &'static str,
    field: Field,
    value: Box<RawValue>,
}

pub fn scalar_to_json<S: Scalar>(x: S) -> Result<String> {
    let out = ScalarOut {
        format: FORMAT,
        kind: "scalar",
        field: S::FIELD,
        value: scalar_json(x)?,
    };
    serde_json::to_string(&out).map_err(format_error)
}

#[derive(Serialize)]
struct PlanOut<'a> {
    format: &'static str,
    kind: &'static str,
    #[serde(flatten)]
    report: &'a PlanReport,
    cost: CostReport,
}

pub fn plan_to_json(report: &PlanReport, cost: CostReport) -> Result<String> {
    let out = PlanOut {
        format: FORMAT,
        kind: "plan",
        report,
        cost,
    };
    serde_json::to_string(&out).map_err(format_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, Fill};

    #[test]
    fn seventeen_digit_formatting() {
        let cases = [
            (1.0, "1"),
            (0.1, "0.10000000000000001"),
            (-2.5, "-2.5"),
            (0.0, "0"),
            (1e-7, "9.9999999999999995e-08"),
            (1e20, "1e+20"),
            (123456.0, "123456"),
            (1.0 / 3.0, "0.33333333333333331"),
            (0.0001, "0.0001"),
            (1e16, "10000000000000000"),
            (1e17, "1e+17"),
        ];
        for (x, s) in cases {
            assert_eq!(format_f64(x).unwrap(), s, "{x}");
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert!(format_f64(f64::NAN).is_err());
    }

    #[test]
    fn formatting_round_trips() {
        let mut x = 0.123_456_789_f64;
        for _ in 0..2000 {
            x = (x * 7.77 + 0.31).fract() * 10f64.powi(((x * 1000.0) as i32 % 40) - 20);
            let s = format_f64(x).unwrap();
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn model_round_trip_is_byte_stable() {
        let tn = zoo::mps::<Complex64>(3, 2, 2, &Fill::Random(4)).unwrap();
        let text = model_to_json(&AnyModel::Tn(tn.clone())).unwrap();
        let Document::Complex(AnyModel::Tn(back)) = parse_model(&text).unwrap() else {
            panic!("wrong document kind")
        };
        assert_eq!(back, tn);
        assert_eq!(model_to_json(&AnyModel::Tn(back)).unwrap(), text);

        let gm = zoo::no_three_way::<f64>([2, 3, 2], &Fill::Random(1)).unwrap();
        let text = model_to_json(&AnyModel::Gm(gm.clone())).unwrap();
        assert!(text.starts_with(
            r#"{"format":"hyperdual/1","kind":"gm","field":"real","hypergraph":{"vertices":3,"#
        ));
        assert_eq!(
            parse_model(&text).unwrap(),
            Document::Real(AnyModel::Gm(gm))
        );
    }

    #[test]
    fn parse_errors_are_format_errors() {
        assert!(matches!(parse_model("{"), Err(Error::Format(_))));
        assert!(matches!(
            parse_model(r#"{"format":"other/2","kind":"gm"}"#),
            Err(Error::Format(_))
        ));
        let bad_labels = r#"{"format":"hyperdual/1","kind":"gm","field":"real","hypergraph":{"vertices":2,"edges":[[0,1]]},"sizes":[2,2],"factors":[{"labels":[0],"sizes":[2],"data":[1,2]}]}"#;
        assert!(matches!(parse_model(bad_labels), Err(Error::Format(_))));
        let complex_in_real = r#"{"format":"hyperdual/1","kind":"gm","field":"real","hypergraph":{"vertices":1,"edges":[[0]]},"sizes":[1],"factors":[{"labels":[0],"sizes":[1],"data":[[1,2]]}]}"#;
        assert!(matches!(
            parse_model(complex_in_real),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn tensor_and_blocks_round_trip() {
        let t = LabeledTensor::new(vec![3, 1], vec![2, 2], vec![1.0, 2.0, 3.0, 0.25]).unwrap();
        let text = tensor_to_json(&t).unwrap();
        assert_eq!(parse_tensor::<f64>(&text).unwrap(), t);
        let z = parse_tensor::<Complex64>(&text).unwrap();
        assert_eq!(z.data()[3], Complex64::new(0.25, 0.0));

        let blocks = vec![
            SiteOperator::<f64>::identity(2),
            SiteOperator::new(1, vec![3.5]).unwrap(),
        ];
        let text = blocks_to_json(&blocks).unwrap();
        assert_eq!(parse_blocks(&text).unwrap(), Blocks::Real(blocks));
        assert_eq!(
            scalar_to_json(Complex64::new(1.0, -0.5)).unwrap(),
            r#"{"format":"hyperdual/1","kind":"scalar","field":"complex","value":[1,-0.5]}"#
        );
    }
}
