//! JSON instance files.
//!
//! ```json
//! {
//!   "q": 7,
//!   "poset": { "n": 5, "relations": [[1, 2]] },
//!   "pi": [2, 3, 4, 2, 2],
//!   "weight": "lee",
//!   "code": { "q": 7, "generator": [[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1]] },
//!   "ideal": [1, 2],
//!   "radius": 3,
//!   "method": "auto",
//!   "caps": { "ideals": 4194304, "space": 10000000 },
//!   "format": "json",
//!   "seed": 1
//! }
//! ```
//!
//! Keys beyond the space description are optional.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::distribution::MethodChoice;
use crate::error::{Error, Result};
use crate::poset::{mask_of, ElementSet, Poset};
use crate::space::{BlockSpace, LabelMap};
use crate::weight::WeightModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub n: usize,
    #[serde(default)]
    pub relations: Vec<[usize; 2]>,
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset> {
        let rel: Vec<(usize, usize)> = self.relations.iter().map(|&[a, b]| (a, b)).collect();
        Poset::new(self.n, &rel)
    }

    pub fn from_poset(p: &Poset) -> Self {
        PosetSpec {
            n: p.len(),
            relations: p.cover_relations().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// `"lee"`, `"hamming"` or `{"table": [0, w_1, …, w_{q-1}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Named(String),
    Table { table: Vec<u32> },
}

impl WeightSpec {
    pub fn build(&self, q: u32) -> Result<WeightModel> {
        match self {
            WeightSpec::Named(name) => match name.to_ascii_lowercase().as_str() {
                "lee" => WeightModel::lee(q),
                "hamming" => WeightModel::hamming(q),
                other => Err(Error::Config(format!("unknown weight `{other}`"))),
            },
            WeightSpec::Table { table } => {
                if table.len() != q as usize {
                    return Err(Error::Config(format!(
                        "weight table has {} entries but q = {q}",
                        table.len()
                    )));
                }
                WeightModel::custom(table.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q: u32,
    #[serde(default)]
    pub generator: Vec<Vec<u32>>,
}

impl CodeSpec {
    pub fn from_code(code: &LinearCode) -> Self {
        CodeSpec {
            q: code.q(),
            generator: code.generator().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub ideals: Option<usize>,
    pub space: Option<u128>,
    pub codewords: Option<u128>,
    pub arrangements: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub q: u32,
    pub poset: PosetSpec,
    pub pi: Vec<u32>,
    pub weight: WeightSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn space(&self) -> Result<BlockSpace> {
        if self.q < 2 {
            return Err(Error::Config(format!("q = {} is below 2", self.q)));
        }
        if self.pi.len() != self.poset.n {
            return Err(Error::Config(format!(
                "pi lists {} block lengths for a poset on {} elements",
                self.pi.len(),
                self.poset.n
            )));
        }
        BlockSpace::new(
            self.poset.build()?,
            LabelMap::new(self.pi.clone())?,
            self.weight.build(self.q)?,
        )
    }

    /// The configured code, checked against the space.
    pub fn code(&self, space: &BlockSpace) -> Result<Option<LinearCode>> {
        let Some(spec) = &self.code else {
            return Ok(None);
        };
        if spec.q != self.q {
            return Err(Error::Config(format!(
                "code is over F_{} but the space is over Z_{}",
                spec.q, self.q
            )));
        }
        let mut code = LinearCode::new(spec.q, space.total_len(), spec.generator.clone())?;
        if let Some(cap) = self.caps.codewords {
            code = code.with_codeword_cap(cap);
        }
        Ok(Some(code))
    }

    pub fn ideal_mask(&self) -> Option<ElementSet> {
        self.ideal.as_deref().map(mask_of)
    }

    pub fn method_choice(&self) -> Result<MethodChoice> {
        self.method.as_deref().map_or(Ok(MethodChoice::Auto), str::parse)
    }
}
