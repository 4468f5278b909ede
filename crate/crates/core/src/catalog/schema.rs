//! On-disk form of a definition document (TOML).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

fn is_true(b: &bool) -> bool {
    *b
}

fn yes() -> bool {
    true
}

fn default_scale() -> String {
    "1/2".into()
}

/// `[left, right, value]`, e.g. `["X", "V", "1/2"]` or `["W", "X", "Y"]`.
pub type Triple = [String; 3];

/// `[name, expression]`.
pub type Named = [String; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub group: GroupSpec,
    #[serde(default)]
    pub twist: TwistSpec,
    /// Labeled group points; unlisted coordinates take identity values.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieSpec>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub laurent: Vec<String>,
    #[serde(default)]
    pub unipotent: Vec<String>,
    /// Coproduct defects `q(y) = Δ(y) - y⊗1 - 1⊗y`, written with `(x)`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coproduct: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TwistSpec {
    #[default]
    Trivial,
    /// `exp(scale·r)` for `r = Σ c a∧b` on an abelian support.
    #[serde(rename = "expR")]
    ExpR {
        support: GroupSpec,
        /// Images of the group's variables in the support.
        embedding: BTreeMap<String, String>,
        r: Vec<Triple>,
        #[serde(default = "default_scale")]
        scale: String,
    },
    /// Finitely many values of `J` and `J^-1` on monomial pairs.
    Table {
        j: Vec<Triple>,
        j_inv: Vec<Triple>,
        certified_degree: usize,
    },
    /// A twist on another group pulled back along a Hopf map into it.
    Pullback {
        group: GroupSpec,
        twist: Box<TwistSpec>,
        embedding: BTreeMap<String, String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub r: BTreeMap<String, WedgeSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, WedgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    /// `"a,b" = "c"` for `[a,b] = c`; unlisted brackets vanish.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub brackets: BTreeMap<String, String>,
}

/// `Σ c x∧y` (an r-matrix) or `ω(x,y) = c` (a form), on `subalgebra` of
/// `algebra` (all of it when empty).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeSpec {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subalgebra: Vec<String>,
    pub terms: Vec<Triple>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ProductKind {
    #[default]
    TwoSided,
    Left,
    Right,
}

fn all_products() -> Vec<ProductKind> {
    vec![ProductKind::TwoSided, ProductKind::Left, ProductKind::Right]
}

fn is_all_products(p: &[ProductKind]) -> bool {
    p == all_products()
}

fn is_two_sided(p: &ProductKind) -> bool {
    *p == ProductKind::TwoSided
}

/// One check directive. `degree` falls back to the run's default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Validate,
    Cocycle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    Cotriangular {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    CoproductHom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    Associativity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        #[serde(default = "all_products", skip_serializing_if = "is_all_products")]
        products: Vec<ProductKind>,
    },
    LeadingTerm {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    PrimitivePairing,
    LemmaFormula,
    OreTower {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    /// Bracket table of `elements` (the generators when empty) compared
    /// with `expected`; unlisted pairs are expected to commute.
    Presentation {
        #[serde(default, skip_serializing_if = "is_two_sided")]
        product: ProductKind,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        elements: Vec<Named>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<Triple>>,
    },
    LieClosure {
        basis: Vec<Named>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        images: Vec<Named>,
    },
    /// Substitution quotient of the two-sided algebra, then relations
    /// inside it. `definitions` are evaluated with the quotient product.
    Quotient {
        substitution: BTreeMap<String, String>,
        #[serde(default = "yes", skip_serializing_if = "is_true")]
        accept: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        aliases: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<Triple>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        definitions: Vec<Named>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        weyl: Vec<Named>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        not_weyl: Vec<Named>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        relations: Vec<Triple>,
    },
    /// All smash relations; `expected` lists `[y, x, p]` with
    /// `x^-1·y·x = y + p`.
    Smash {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        expected: Vec<Triple>,
    },
    DoubleCoset {
        points: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    /// `J^g = J` (or `!=` when `invariant = false`) at each point; `witness`
    /// is `[a, b, J^g(a,b), J(a,b)]`.
    Invariance {
        points: Vec<String>,
        #[serde(default = "yes", skip_serializing_if = "is_true")]
        invariant: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<[String; 4]>,
    },
    /// Twisted product equals the commutative one.
    ProductEquality {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    Cybe {
        r: String,
        #[serde(default = "yes", skip_serializing_if = "is_true")]
        solution: bool,
    },
    /// `ω <-> r` round trip with the quasi-Frobenius check, from either side.
    Duality {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        form: Option<String>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Validate => "validate",
            Task::Cocycle { .. } => "cocycle",
            Task::Cotriangular { .. } => "cotriangular",
            Task::CoproductHom { .. } => "coproduct-hom",
            Task::Associativity { .. } => "associativity",
            Task::LeadingTerm { .. } => "leading-term",
            Task::PrimitivePairing => "primitive-pairing",
            Task::LemmaFormula => "lemma-formula",
            Task::OreTower { .. } => "ore-tower",
            Task::Presentation { .. } => "presentation",
            Task::LieClosure { .. } => "lie-closure",
            Task::Quotient { .. } => "quotient",
            Task::Smash { .. } => "smash",
            Task::DoubleCoset { .. } => "double-coset",
            Task::Invariance { .. } => "invariance",
            Task::ProductEquality { .. } => "product-equality",
            Task::Cybe { .. } => "cybe",
            Task::Duality { .. } => "duality",
        }
    }
}
