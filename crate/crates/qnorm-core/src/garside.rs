//! Finite Garside-family fragments: the greedy predicate, head function,
//! derivation of the normalisation table from a fragment, the
//! characterisation checks (class (4,3) + left-weighted), and triangular
//! presentations.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::analysis::{check_axioms_43, check_left_weighted, LeftWeighted};
use crate::error::{Error, Result};
use crate::normaliser::{elements_up_to, left_divides, multiply, MonoidElement};
use crate::qmap::QuadMap;
use crate::words::{Alphabet, Letter};

/// A finite fragment of a Garside family: its simples and the normal
/// decomposition (length at most two) of every product of two simples.
#[derive(Debug)]
pub struct GarsideFragment {
    names: Vec<String>,
    unit: usize,
    /// product[x * n + y] = normal decomposition of simples[x] * simples[y],
    /// as simple ids, without unit entries.
    product: Vec<Vec<usize>>,
    derived: OnceLock<QuadMap>,
}

#[derive(Deserialize)]
struct FragmentFile {
    simples: Vec<String>,
    unit: String,
    product: Vec<(String, String, Vec<String>)>,
}

impl GarsideFragment {
    pub fn from_json(data: &str) -> Result<Self> {
        let file: FragmentFile =
            serde_json::from_str(data).map_err(|e| Error::Parse(e.to_string()))?;
        let mut ids = HashMap::new();
        for (i, name) in file.simples.iter().enumerate() {
            if ids.insert(name.clone(), i).is_some() {
                return Err(Error::FragmentIntegrity(format!(
                    "duplicate simple `{name}`"
                )));
            }
        }
        let unit = *ids
            .get(&file.unit)
            .ok_or_else(|| Error::FragmentIntegrity("unit is not a simple".into()))?;
        let n = file.simples.len();
        let mut product: Vec<Option<Vec<usize>>> = vec![None; n * n];
        for (x, y, decomp) in &file.product {
            let xi = *ids
                .get(x)
                .ok_or_else(|| Error::FragmentIntegrity(format!("unknown simple `{x}`")))?;
            let yi = *ids
                .get(y)
                .ok_or_else(|| Error::FragmentIntegrity(format!("unknown simple `{y}`")))?;
            if decomp.len() > 2 {
                return Err(Error::FragmentIntegrity(format!(
                    "decomposition of {x}*{y} has length {}",
                    decomp.len()
                )));
            }
            let d = decomp
                .iter()
                .map(|s| {
                    ids.get(s).copied().ok_or_else(|| {
                        Error::FragmentIntegrity(format!("unknown simple `{s}`"))
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            if product[xi * n + yi].replace(d).is_some() {
                return Err(Error::FragmentIntegrity(format!(
                    "duplicate product entry for ({x}, {y})"
                )));
            }
        }
        let product = product
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                p.ok_or_else(|| {
                    Error::FragmentIntegrity(format!(
                        "product table is not total (missing entry {k})"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let frag = GarsideFragment {
            names: file.simples,
            unit,
            product,
            derived: OnceLock::new(),
        };
        frag.validate()?;
        Ok(frag)
    }

    pub fn simple_count(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn simple(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn decomposition(&self, x: usize, y: usize) -> &[usize] {
        &self.product[x * self.names.len() + y]
    }

    /// Structural checks: identity laws, no nontrivial invertibles,
    /// decompositions fixed under the table (greedy pairs are their own
    /// products). Right-divisor closure inside the ambient monoid is
    /// established by the offline generator.
    pub fn validate(&self) -> Result<()> {
        let n = self.names.len();
        for x in 0..n {
            let ex = if x == self.unit { vec![] } else { vec![x] };
            if self.decomposition(self.unit, x) != ex.as_slice()
                || self.decomposition(x, self.unit) != ex.as_slice()
            {
                return Err(Error::FragmentIntegrity(format!(
                    "unit laws fail at `{}`",
                    self.names[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let d = self.decomposition(x, y);
                if d.is_empty() && (x != self.unit || y != self.unit) {
                    return Err(Error::FragmentIntegrity(format!(
                        "nontrivial invertibles: {} * {} = 1",
                        self.names[x], self.names[y]
                    )));
                }
                if d.contains(&self.unit) {
                    return Err(Error::FragmentIntegrity(
                        "decompositions must not contain the unit".into(),
                    ));
                }
                if d.len() == 2 && self.decomposition(d[0], d[1]) != d {
                    return Err(Error::FragmentIntegrity(format!(
                        "decomposition of {}*{} is not normal",
                        self.names[x], self.names[y]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The quadratic normalisation derived from the fragment: the unit
    /// becomes the neutral letter `e`, and φ(s|t) is the e-padded normal
    /// decomposition of st.
    pub fn derive_normalisation(&self) -> Result<&QuadMap> {
        if let Some(map) = self.derived.get() {
            return Ok(map);
        }
        if self.names.iter().any(|n| n == "e") {
            return Err(Error::FragmentIntegrity(
                "a simple is named `e`, which is reserved for the neutral".into(),
            ));
        }
        let names: Vec<String> = self
            .names
            .iter()
            .map(|n| {
                if n == &self.names[self.unit] {
                    "e".to_string()
                } else {
                    n.clone()
                }
            })
            .collect();
        let alphabet = Alphabet::with_neutral(names, "e")?;
        let e = Letter(self.unit as u16);
        let n = self.names.len();
        let mut entries = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let d = self.decomposition(x, y);
                let image = match d.len() {
                    0 => (e, e),
                    1 => (Letter(d[0] as u16), e),
                    _ => (Letter(d[0] as u16), Letter(d[1] as u16)),
                };
                let key = (Letter(x as u16), Letter(y as u16));
                if image != key {
                    entries.push((key, image));
                }
            }
        }
        let map = QuadMap::from_entries(alphabet, &entries)?;
        let _ = self.derived.set(map);
        Ok(self.derived.get().unwrap())
    }

    /// The monoid element of one simple (the unit is the empty element).
    pub fn element(&self, id: usize) -> Result<MonoidElement> {
        let map = self.derive_normalisation()?;
        if id == self.unit {
            Ok(MonoidElement::unit())
        } else {
            MonoidElement::from_letter(map, Letter(id as u16))
        }
    }

    /// The S-greedy predicate on the pair (s1, s2).
    ///
    /// With `skip_f` the check is ∀s ∈ S: s ⪯ s1·s2 ⇒ s ⪯ s1, the valid
    /// characterisation when the fragment is a genuine Garside family.
    /// Without it, f additionally ranges over monoid elements of degree at
    /// most `f_bound`.
    pub fn is_greedy(
        &self,
        s1: usize,
        s2: usize,
        skip_f: bool,
        f_bound: usize,
    ) -> Result<bool> {
        let map = self.derive_normalisation()?;
        let e1 = self.element(s1)?;
        let e2 = self.element(s2)?;
        let fs = if skip_f {
            vec![MonoidElement::unit()]
        } else {
            elements_up_to(map, f_bound)
        };
        for f in &fs {
            let fs1 = multiply(map, f, &e1)?;
            let fs1s2 = multiply(map, &fs1, &e2)?;
            for s in 0..self.simple_count() {
                if s == self.unit {
                    continue;
                }
                let es = self.element(s)?;
                let bound = fs1s2.degree();
                if left_divides(map, &es, &fs1s2, bound)?.divides
                    && !left_divides(map, &es, &fs1, fs1.degree())?.divides
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The S-maximal left-divisor of g: the first entry of its normal
    /// decomposition (the unit for g = 1).
    pub fn head(&self, g: &MonoidElement) -> Result<usize> {
        match g.nf().get(0) {
            None => Ok(self.unit),
            Some(l) => Ok(l.index()),
        }
    }
}

/// The two sides of the Theorem-C characterisation, cross-validated.
#[derive(Debug, Clone)]
pub struct GarsideVerdict {
    pub axioms_43: bool,
    pub left_weighted: Option<LeftWeighted>,
    /// The predicate side: class (4,3) and left-weighted.
    pub garside_shaped: bool,
    /// Agreement between φ-invariance and the direct greedy checks, when a
    /// fragment was supplied or constructible. A discrepancy carries the
    /// offending pair of simple names.
    pub greedy_agreement: Option<std::result::Result<(), (String, String)>>,
    /// A bounded falsification search for left-cancellativity: a triple
    /// with x·y = x·z and y ≠ z, if one exists within the degree bound.
    pub cancellation_counterexample: Option<(String, String, String)>,
    pub cancellation_bound: usize,
}

/// Evaluates the characterisation predicates and, when possible,
/// cross-validates invariance against the greedy definition; also searches
/// triples of bounded degree for a left-cancellativity failure.
pub fn check_garside_characterisation(
    map: &QuadMap,
    fragment: Option<&GarsideFragment>,
    cancellation_bound: usize,
) -> Result<GarsideVerdict> {
    let axioms = check_axioms_43(map);
    let left_weighted = if axioms && map.neutral_verified() {
        Some(check_left_weighted(map, 1)?)
    } else {
        None
    };
    let garside_shaped = axioms
        && left_weighted
            .as_ref()
            .map(|lw| lw.holds)
            .unwrap_or(false);

    let greedy_agreement = match fragment {
        Some(frag) if garside_shaped => Some(greedy_cross_check(frag)?),
        None if garside_shaped => {
            let constructed = fragment_from_map(map)?;
            Some(greedy_cross_check(&constructed)?)
        }
        _ => None,
    };

    let cancellation_counterexample = if map.neutral_verified() {
        cancellation_search(map, cancellation_bound)?
    } else {
        None
    };

    Ok(GarsideVerdict {
        axioms_43: axioms,
        left_weighted,
        garside_shaped,
        greedy_agreement,
        cancellation_counterexample,
        cancellation_bound,
    })
}

fn greedy_cross_check(
    frag: &GarsideFragment,
) -> Result<std::result::Result<(), (String, String)>> {
    let map = frag.derive_normalisation()?;
    for x in 0..frag.simple_count() {
        for y in 0..frag.simple_count() {
            let invariant =
                map.pair_invariant(Letter(x as u16), Letter(y as u16));
            let greedy = frag.is_greedy(x, y, true, 0)?;
            if invariant != greedy {
                return Ok(Err((
                    frag.name(x).to_string(),
                    frag.name(y).to_string(),
                )));
            }
        }
    }
    Ok(Ok(()))
}

/// Builds the fragment whose simples are the unit plus the e-free letters
/// of the map, with products read off φ.
pub fn fragment_from_map(map: &QuadMap) -> Result<GarsideFragment> {
    let e = map.verified_neutral()?;
    let names: Vec<String> = map
        .alphabet()
        .letters()
        .map(|l| {
            if l == e {
                "1".to_string()
            } else {
                map.alphabet().name(l).to_string()
            }
        })
        .collect();
    let n = names.len();
    let mut product = Vec::with_capacity(n * n);
    for x in map.alphabet().letters() {
        for y in map.alphabet().letters() {
            let (s2, t2) = map.image(x, y);
            let mut d = Vec::new();
            if s2 != e {
                d.push(s2.index());
            }
            if t2 != e {
                d.push(t2.index());
            }
            product.push(d);
        }
    }
    let frag = GarsideFragment {
        names,
        unit: e.index(),
        product,
        derived: OnceLock::new(),
    };
    frag.validate()?;
    Ok(frag)
}

fn cancellation_search(
    map: &QuadMap,
    bound: usize,
) -> Result<Option<(String, String, String)>> {
    let elements = elements_up_to(map, bound);
    for x in &elements {
        let mut seen: HashMap<MonoidElement, &MonoidElement> = HashMap::new();
        for y in &elements {
            let p = multiply(map, x, y)?;
            if let Some(prev) = seen.get(&p) {
                return Ok(Some((
                    map.alphabet().render(x.nf()),
                    map.alphabet().render(prev.nf()),
                    map.alphabet().render(y.nf()),
                )));
            }
            seen.insert(p, y);
        }
    }
    Ok(None)
}

/// A triangular presentation: relations s·t = st with all of s, t, st
/// among the e-free letters (st may also be the unit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularPresentation {
    pub relations: Vec<TriangularRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularRelation {
    pub left: Letter,
    pub right: Letter,
    /// None encodes st = 1.
    pub product: Option<Letter>,
}

/// Enumerates the relations s|t = st with st of degree at most one.
///
/// Preconditions: the class-(4,3) axioms, left-weightedness, and a
/// verified neutral; refused otherwise.
pub fn triangular_presentation(map: &QuadMap) -> Result<TriangularPresentation> {
    if !check_axioms_43(map) {
        return Err(Error::PreconditionFailed(
            "triangular presentation requires the class-(4,3) axioms".into(),
        ));
    }
    map.verified_neutral()?;
    let lw = check_left_weighted(map, 1)?;
    if !lw.holds {
        return Err(Error::PreconditionFailed(
            "triangular presentation requires a left-weighted normalisation".into(),
        ));
    }
    let mut relations = Vec::new();
    for s in map.alphabet().plain_letters() {
        for t in map.alphabet().plain_letters() {
            let xs = MonoidElement::from_letter(map, s)?;
            let xt = MonoidElement::from_letter(map, t)?;
            let st = multiply(map, &xs, &xt)?;
            if st.degree() <= 1 {
                relations.push(TriangularRelation {
                    left: s,
                    right: t,
                    product: st.nf().get(0),
                });
            }
        }
    }
    Ok(TriangularPresentation { relations })
}
