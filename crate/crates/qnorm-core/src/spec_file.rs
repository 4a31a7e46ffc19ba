//! The JSON system-spec file format: generators, an optional neutral, and
//! the non-identity entries of the length-two table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmap::QuadMap;
use crate::words::Alphabet;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemSpecFile {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neutral: Option<String>,
    #[serde(default)]
    pub phi: Vec<PhiEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiEntry {
    pub r#in: [String; 2],
    pub out: [String; 2],
}

/// Parses a system-spec file into an interned alphabet and total table;
/// unlisted pairs default to the identity.
pub fn parse_spec(bytes: &[u8]) -> Result<QuadMap> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    let file: SystemSpecFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("{e}")))?;
    from_file(&file)
}

pub fn from_file(file: &SystemSpecFile) -> Result<QuadMap> {
    let alphabet = match &file.neutral {
        Some(e) => Alphabet::with_neutral(file.generators.clone(), e)?,
        None => Alphabet::new(file.generators.clone())?,
    };
    let entries = file
        .phi
        .iter()
        .enumerate()
        .map(|(k, entry)| {
            let resolve = |name: &str| {
                alphabet.letter(name).map_err(|_| {
                    Error::Parse(format!(
                        "phi entry {k}: unknown letter `{name}`"
                    ))
                })
            };
            Ok((
                (resolve(&entry.r#in[0])?, resolve(&entry.r#in[1])?),
                (resolve(&entry.out[0])?, resolve(&entry.out[1])?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    QuadMap::from_entries(alphabet, &entries)
}

/// Serialises a map back to the file format (non-identity entries only).
pub fn to_file(map: &QuadMap) -> SystemSpecFile {
    let alphabet = map.alphabet();
    let mut phi = Vec::new();
    for s in alphabet.letters() {
        for t in alphabet.letters() {
            let (s2, t2) = map.image(s, t);
            if (s2, t2) != (s, t) {
                phi.push(PhiEntry {
                    r#in: [alphabet.name(s).into(), alphabet.name(t).into()],
                    out: [alphabet.name(s2).into(), alphabet.name(t2).into()],
                });
            }
        }
    }
    SystemSpecFile {
        generators: alphabet.letters().map(|l| alphabet.name(l).into()).collect(),
        neutral: alphabet.neutral().map(|e| alphabet.name(e).into()),
        phi,
    }
}
