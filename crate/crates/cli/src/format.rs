//! The `roa-v1` automaton and `row-v1` word file formats.

use std::io::Write;
use std::path::Path;

use indexmap::IndexMap;
use roa_core::{Acceptance, Alphabet, Automaton, FiniteWord, Letter, Relation, StateSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const AUTOMATON_FORMAT: &str = "roa-v1";
pub const WORD_FORMAT: &str = "row-v1";

/// Letters whose key starts with this prefix are anonymous: they are known
/// only by the relation listed for them under `symbols`.
pub const ANONYMOUS_PREFIX: char = '#';

type Pairs = Vec<[usize; 2]>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonFile {
    format: String,
    states: usize,
    initial: Vec<usize>,
    acceptance: AcceptanceJson,
    alphabet: AlphabetJson,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "lowercase")]
enum AcceptanceJson {
    Finite(Vec<usize>),
    Buchi(Vec<usize>),
    GenBuchi(Vec<Vec<usize>>),
    Rabin(Vec<(Vec<usize>, Vec<usize>)>),
    Streett(Vec<(Vec<usize>, Vec<usize>)>),
    Muller(Vec<Vec<usize>>),
    Parity(Vec<u32>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum AlphabetJson {
    #[serde(rename = "named")]
    Named {
        letters: IndexMap<String, Pairs>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symbols: Option<SymbolsJson>,
    },
    #[serde(rename = "implicit-full")]
    ImplicitFull {},
}

/// Relations carried by letters, over `states` symbol states.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolsJson {
    states: usize,
    letters: IndexMap<String, Pairs>,
}

fn set_of(states: usize, v: &[usize], path: &str) -> CliResult<StateSet> {
    let mut s = StateSet::new();
    for &q in v {
        if q >= states {
            return Err(CliError::format(path, format!("state {q} out of range for {states} states")));
        }
        s.insert(q);
    }
    Ok(s)
}

fn set_vec(s: &StateSet) -> Vec<usize> {
    s.iter().collect()
}

fn relation_of(states: usize, pairs: &Pairs, path: &str) -> CliResult<Relation> {
    Relation::from_pairs(states, pairs.iter().map(|&[p, q]| (p, q))).map_err(|e| CliError::format(path, e.to_string()))
}

fn pairs_of(r: &Relation) -> Pairs {
    r.pairs().map(|(p, q)| [p, q]).collect()
}

fn json_error(path: &str, e: serde_json::Error) -> CliError {
    CliError::format(path, e.to_string())
}

/// Reads an automaton in `roa-v1` JSON, or in HOA when the text starts with
/// a `HOA:` header.
pub fn parse_automaton(src: &str, path: &str) -> CliResult<Automaton> {
    if src.trim_start().starts_with("HOA:") {
        return crate::hoa::parse_hoa(src, path);
    }
    let file: AutomatonFile = serde_json::from_str(src).map_err(|e| json_error(path, e))?;
    if file.format != AUTOMATON_FORMAT {
        return Err(CliError::format(path, format!("expected format {AUTOMATON_FORMAT:?}, found {:?}", file.format)));
    }
    let n = file.states;
    let initial = set_of(n, &file.initial, path)?;
    let sets = |vs: &[Vec<usize>]| vs.iter().map(|v| set_of(n, v, path)).collect::<CliResult<Vec<_>>>();
    let pairs = |ps: &[(Vec<usize>, Vec<usize>)]| {
        ps.iter().map(|(g, b)| Ok((set_of(n, g, path)?, set_of(n, b, path)?))).collect::<CliResult<Vec<_>>>()
    };
    let acceptance = match &file.acceptance {
        AcceptanceJson::Finite(f) => Acceptance::Finite(set_of(n, f, path)?),
        AcceptanceJson::Buchi(f) => Acceptance::Buchi(set_of(n, f, path)?),
        AcceptanceJson::GenBuchi(fs) => Acceptance::GenBuchi(sets(fs)?),
        AcceptanceJson::Rabin(ps) => Acceptance::Rabin(pairs(ps)?),
        AcceptanceJson::Streett(ps) => Acceptance::Streett(pairs(ps)?),
        AcceptanceJson::Muller(fs) => Acceptance::Muller(sets(fs)?),
        AcceptanceJson::Parity(c) => Acceptance::Parity(c.clone()),
    };
    let built = match file.alphabet {
        AlphabetJson::ImplicitFull {} => Automaton::new(n, initial, Alphabet::ImplicitFull, acceptance),
        AlphabetJson::Named { letters, symbols } => {
            let mut entries = Vec::with_capacity(letters.len());
            for (key, trans) in &letters {
                let relation = match &symbols {
                    Some(s) => s.letters.get(key).map(|p| relation_of(s.states, p, path)).transpose()?,
                    None => None,
                };
                let name = (!key.starts_with(ANONYMOUS_PREFIX)).then(|| key.clone());
                if name.is_none() && relation.is_none() {
                    return Err(CliError::format(path, format!("anonymous letter {key:?} has no symbol relation")));
                }
                entries.push((Letter { name, relation }, relation_of(n, trans, path)?));
            }
            if let Some(s) = &symbols {
                if let Some(k) = s.letters.keys().find(|k| !letters.contains_key(*k)) {
                    return Err(CliError::format(path, format!("symbol {k:?} is not a letter")));
                }
            }
            Automaton::explicit(n, initial, entries, acceptance)
        }
    };
    built.map_err(|e| CliError::format(path, e.to_string()))
}

/// Dimension of the relations that serve as letters of `a`, if any.
pub fn symbol_states(a: &Automaton) -> Option<usize> {
    match a.alphabet() {
        Alphabet::ImplicitFull => Some(a.states()),
        Alphabet::Explicit(e) => e.letters().iter().find_map(|l| l.relation.as_ref().map(Relation::dim)),
        Alphabet::Derived { symbol_states, .. } => Some(*symbol_states),
    }
}

pub fn automaton_json(a: &Automaton) -> CliResult<String> {
    let sets = |fs: &[StateSet]| fs.iter().map(set_vec).collect();
    let pairs = |ps: &[(StateSet, StateSet)]| ps.iter().map(|(g, b)| (set_vec(g), set_vec(b))).collect();
    let acceptance = match a.acceptance() {
        Acceptance::Finite(f) => AcceptanceJson::Finite(set_vec(f)),
        Acceptance::Buchi(f) => AcceptanceJson::Buchi(set_vec(f)),
        Acceptance::GenBuchi(fs) => AcceptanceJson::GenBuchi(sets(fs)),
        Acceptance::Rabin(ps) => AcceptanceJson::Rabin(pairs(ps)),
        Acceptance::Streett(ps) => AcceptanceJson::Streett(pairs(ps)),
        Acceptance::Muller(fs) => AcceptanceJson::Muller(sets(fs)),
        Acceptance::Parity(c) => AcceptanceJson::Parity(c.clone()),
    };
    let alphabet = match a.alphabet() {
        Alphabet::ImplicitFull => AlphabetJson::ImplicitFull {},
        Alphabet::Derived { .. } => {
            return Err(CliError::Usage("automata with derived alphabets cannot be written out".into()))
        }
        Alphabet::Explicit(e) => {
            let mut letters = IndexMap::new();
            let mut symbols = IndexMap::new();
            let dim = symbol_states(a);
            for (i, (l, t)) in e.letters().iter().zip(e.transitions()).enumerate() {
                let key = l.name.clone().unwrap_or_else(|| format!("{ANONYMOUS_PREFIX}{i}"));
                if let Some(r) = &l.relation {
                    if Some(r.dim()) != dim {
                        return Err(CliError::Usage("letter relations have mixed dimensions".into()));
                    }
                    symbols.insert(key.clone(), pairs_of(r));
                }
                letters.insert(key, pairs_of(t));
            }
            let symbols = dim.map(|states| SymbolsJson { states, letters: symbols });
            AlphabetJson::Named { letters, symbols }
        }
    };
    let file = AutomatonFile {
        format: AUTOMATON_FORMAT.into(),
        states: a.states(),
        initial: set_vec(a.initial()),
        acceptance,
        alphabet,
    };
    Ok(serde_json::to_string_pretty(&file).expect("automaton serializes") + "\n")
}

/// A letter reference: a letter name or an inline relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LetterRef {
    Name(String),
    Pairs(Pairs),
}

/// A word as written in a `row-v1` file. An empty period marks a finite word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub format: String,
    /// Dimension of inline relations; defaults to the automaton's.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    pub prefix: Vec<LetterRef>,
    #[serde(default)]
    pub period: Vec<LetterRef>,
}

impl WordFile {
    pub fn new(prefix: &[Letter], period: &[Letter]) -> Self {
        let states = prefix.iter().chain(period).find_map(|l| l.relation.as_ref().map(Relation::dim));
        let refs = |w: &[Letter]| w.iter().map(letter_ref).collect();
        WordFile { format: WORD_FORMAT.into(), states, prefix: refs(prefix), period: refs(period) }
    }

    pub fn parse(src: &str, path: &str) -> CliResult<Self> {
        let w: WordFile = serde_json::from_str(src).map_err(|e| json_error(path, e))?;
        if w.format != WORD_FORMAT {
            return Err(CliError::format(path, format!("expected format {WORD_FORMAT:?}, found {:?}", w.format)));
        }
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("word serializes") + "\n"
    }

    /// Resolves the references; `dim` is used when the file gives no dimension.
    pub fn resolve(&self, dim: Option<usize>, path: &str) -> CliResult<(FiniteWord, FiniteWord)> {
        let dim = self.states.or(dim);
        let conv = |refs: &[LetterRef]| -> CliResult<FiniteWord> {
            refs.iter()
                .map(|r| match r {
                    LetterRef::Name(n) => Ok(Letter::named(n.clone())),
                    LetterRef::Pairs(p) => {
                        let d =
                            dim.ok_or_else(|| CliError::format(path, "inline relation without a known dimension"))?;
                        Ok(Letter::rel(relation_of(d, p, path)?))
                    }
                })
                .collect()
        };
        Ok((conv(&self.prefix)?, conv(&self.period)?))
    }
}

fn letter_ref(l: &Letter) -> LetterRef {
    match (&l.name, &l.relation) {
        (Some(n), _) => LetterRef::Name(n.clone()),
        (None, Some(r)) => LetterRef::Pairs(pairs_of(r)),
        (None, None) => LetterRef::Name(String::new()),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &str, contents: &[u8]) -> CliResult<()> {
    let target = Path::new(path);
    let dir = match target.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.persist(target).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_automaton("{\n  \"format\": \"roa-v1\",\n  \"states\": x\n}", "a.json").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn anonymous_letters_round_trip() {
        let r = Relation::from_pairs(2, [(0, 1)]).unwrap();
        let a = Automaton::explicit(
            1,
            StateSet::singleton(0),
            vec![(Letter::rel(r), Relation::identity(1)), (Letter::named("x"), Relation::empty(1))],
            Acceptance::Buchi(StateSet::singleton(0)),
        )
        .unwrap();
        let text = automaton_json(&a).unwrap();
        let b = parse_automaton(&text, "-").unwrap();
        assert_eq!(b.explicit_alphabet().unwrap().letters(), a.explicit_alphabet().unwrap().letters());
        assert_eq!(automaton_json(&b).unwrap(), text);
    }

    #[test]
    fn finite_words_have_empty_periods() {
        let w = WordFile::parse(r#"{"format":"row-v1","prefix":["a",[[0,0]]]}"#, "-").unwrap();
        let (u, v) = w.resolve(Some(2), "-").unwrap();
        assert_eq!(u.len(), 2);
        assert!(v.is_empty());
        assert!(w.resolve(None, "-").is_err());
    }
}
