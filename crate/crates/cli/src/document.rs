//! The JSON complex document: facets over vertex labels, optional weights and
//! orientation flips.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use simplicial::{Face, Orientation, SimplicialComplex, VertexLabel, Weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightPreset {
    Unit,
    Normalized,
}

impl WeightPreset {
    pub fn build(self, k: &SimplicialComplex) -> Weights {
        match self {
            WeightPreset::Unit => Weights::unit(k),
            WeightPreset::Normalized => Weights::normalized(k),
        }
    }
}

/// A positive weight written as a decimal string so it reloads bit for bit.
/// Plain JSON numbers are accepted on input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decimal(pub f64);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // Display for f64 prints the shortest string that parses back exactly
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Decimal(x)),
            Raw::Str(s) => s
                .trim()
                .parse()
                .map(Decimal)
                .map_err(|_| serde::de::Error::custom(format!("weight {s:?} is not a decimal number"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    /// Sorted vertex labels; `[]` is the empty face.
    pub face: Vec<VertexLabel>,
    pub weight: Decimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    /// Vertex order; defaults to the sorted labels of the facets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexLabel>>,
    pub facets: Vec<Vec<VertexLabel>>,
    /// Weights of every face, the empty face included.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_preset: Option<WeightPreset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation_flips: Option<Vec<Vec<VertexLabel>>>,
}

/// A rejected document, with the JSON location of the problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl InputError {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

/// A document turned into a complex with its weights and orientation.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub complex: SimplicialComplex,
    pub weights: Weights,
    pub orientation: Orientation,
}

fn labels_text(labels: &[VertexLabel]) -> String {
    let parts: Vec<String> = labels.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn face_of(k: &SimplicialComplex, labels: &[VertexLabel], at: &str) -> Result<Face, InputError> {
    let mut seen = HashSet::new();
    if let Some(l) = labels.iter().find(|l| !seen.insert(*l)) {
        return Err(InputError::new(at, format!("vertex {l} repeated")));
    }
    k.face_from_labels(labels).map_err(|e| InputError::new(at, e.to_string()))
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| {
            let location = format!("line {} column {}", e.line(), e.column());
            let full = e.to_string();
            let message = full.strip_suffix(&format!(" at {location}")).unwrap_or(&full);
            InputError::new(location, message)
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the complex, weights and orientation.
    pub fn load(&self) -> Result<Loaded, InputError> {
        for (n, facet) in self.facets.iter().enumerate() {
            let at = format!("facets[{n}]");
            if facet.is_empty() {
                return Err(InputError::new(at, "a facet must list at least one vertex"));
            }
            let mut seen = HashSet::new();
            if let Some(l) = facet.iter().find(|l| !seen.insert(*l)) {
                return Err(InputError::new(at, format!("vertex {l} repeated")));
            }
            if let Some(order) = &self.vertices {
                if let Some(l) = facet.iter().find(|l| !order.contains(l)) {
                    return Err(InputError::new(at, format!("vertex {l} is not listed in vertices")));
                }
            }
        }
        let complex = match &self.vertices {
            Some(order) => {
                let mut seen = HashSet::new();
                if let Some(p) = order.iter().position(|l| !seen.insert(l)) {
                    return Err(InputError::new(format!("vertices[{p}]"), "vertex listed twice"));
                }
                SimplicialComplex::with_vertex_order(order.clone(), &self.facets)
            }
            None => SimplicialComplex::from_labeled_facets(&self.facets),
        }
        .map_err(|e| InputError::new("facets", e.to_string()))?;

        let weights = match (&self.weights, self.weight_preset) {
            (Some(_), Some(_)) => {
                return Err(InputError::new(
                    "weight_preset",
                    "give either explicit weights or a preset, not both",
                ))
            }
            (Some(entries), None) => explicit_weights(&complex, entries)?,
            (None, preset) => preset.unwrap_or(WeightPreset::Unit).build(&complex),
        };

        let mut orientation = Orientation::canonical();
        for (n, labels) in self.orientation_flips.iter().flatten().enumerate() {
            let at = format!("orientation_flips[{n}]");
            let f = face_of(&complex, labels, &at)?;
            orientation = orientation
                .reorient(&f)
                .map_err(|e| InputError::new(at, e.to_string()))?;
        }

        Ok(Loaded {
            name: self.name.clone(),
            complex,
            weights,
            orientation,
        })
    }

    /// The document of `k`, listing its vertex order explicitly. Weights are
    /// written out unless they are all 1.
    pub fn from_complex(name: &str, k: &SimplicialComplex, w: &Weights) -> Self {
        let weights = (!w.is_unit()).then(|| {
            k.all_faces()
                .map(|f| WeightEntry {
                    face: k.face_labels(f),
                    weight: Decimal(w.of(k, f).expect("face of k")),
                })
                .collect()
        });
        ComplexDocument {
            name: name.to_owned(),
            vertices: Some(k.labels().to_vec()),
            facets: k.facets().iter().filter(|f| !f.is_empty()).map(|f| k.face_labels(f)).collect(),
            weights,
            weight_preset: None,
            orientation_flips: None,
        }
    }
}

fn explicit_weights(k: &SimplicialComplex, entries: &[WeightEntry]) -> Result<Weights, InputError> {
    let mut given: HashMap<Face, f64> = HashMap::new();
    for (n, e) in entries.iter().enumerate() {
        let at = format!("weights[{n}]");
        let f = face_of(k, &e.face, &format!("{at}.face"))?;
        let x = e.weight.0;
        if !(x.is_finite() && x > 0.0) {
            return Err(InputError::new(format!("{at}.weight"), format!("weight {x} is not positive")));
        }
        if given.insert(f, x).is_some() {
            return Err(InputError::new(at, format!("face {} given twice", labels_text(&e.face))));
        }
    }
    if let Some(f) = k.all_faces().find(|f| !given.contains_key(f)) {
        return Err(InputError::new(
            "weights",
            format!("no weight for face {}", labels_text(&k.face_labels(f))),
        ));
    }
    Weights::from_fn(k, |f| given[f]).map_err(|e| InputError::new("weights", e.to_string()))
}
