//! HOA export for Büchi and generalized Büchi automata with explicit
//! alphabets, and a reader for the line-oriented subset this module writes.
//!
//! Each letter becomes one atomic proposition; an edge on letter `i` is
//! labelled by the conjunction asserting proposition `i` and negating the
//! rest. Relations carried by letters are kept in `roa-symbol` headers.

use std::fmt::Write;

use roa_core::{Acceptance, Automaton, Letter, Relation, StateSet};

use crate::error::{CliError, CliResult};
use crate::format::{symbol_states, ANONYMOUS_PREFIX};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn encode_pairs(r: &Relation) -> String {
    r.pairs().map(|(p, q)| format!("{p}>{q}")).collect::<Vec<_>>().join(" ")
}

pub fn to_hoa(a: &Automaton) -> CliResult<String> {
    let alpha = a.explicit_alphabet().ok_or_else(|| CliError::Usage("HOA export needs an explicit alphabet".into()))?;
    let sets: Vec<StateSet> = match a.acceptance() {
        Acceptance::Buchi(f) => vec![f.clone()],
        Acceptance::GenBuchi(fs) => fs.clone(),
        other => {
            return Err(CliError::Usage(format!(
                "HOA export supports Büchi and generalized Büchi, not {}",
                other.kind().name()
            )))
        }
    };
    let k = alpha.len();
    let mut out = String::new();
    let _ = writeln!(out, "HOA: v1");
    let _ = writeln!(out, "States: {}", a.states());
    for q in a.initial().iter() {
        let _ = writeln!(out, "Start: {q}");
    }
    let names: Vec<String> = alpha
        .letters()
        .iter()
        .enumerate()
        .map(|(i, l)| l.name.clone().unwrap_or_else(|| format!("{ANONYMOUS_PREFIX}{i}")))
        .collect();
    let _ = writeln!(out, "AP: {k}{}", names.iter().map(|n| format!(" {}", quote(n))).collect::<String>());
    let infs = (0..sets.len()).map(|i| format!("Inf({i})")).collect::<Vec<_>>().join("&");
    if sets.len() == 1 {
        let _ = writeln!(out, "acc-name: Buchi");
    } else {
        let _ = writeln!(out, "acc-name: generalized-Buchi {}", sets.len());
    }
    let _ = writeln!(out, "Acceptance: {} {infs}", sets.len());
    let _ = writeln!(out, "properties: state-acc explicit-labels trans-labels");
    if let Some(dim) = symbol_states(a).filter(|_| alpha.letters().iter().any(|l| l.relation.is_some())) {
        let _ = writeln!(out, "roa-symbols: {dim}");
        for (i, l) in alpha.letters().iter().enumerate() {
            if let Some(r) = &l.relation {
                let _ = writeln!(out, "roa-symbol: {i} {}", quote(&encode_pairs(r)));
            }
        }
    }
    let _ = writeln!(out, "--BODY--");
    for q in 0..a.states() {
        let marks: Vec<String> = (0..sets.len()).filter(|&i| sets[i].contains(q)).map(|i| i.to_string()).collect();
        if marks.is_empty() {
            let _ = writeln!(out, "State: {q}");
        } else {
            let _ = writeln!(out, "State: {q} {{{}}}", marks.join(" "));
        }
        for (i, t) in alpha.transitions().iter().enumerate() {
            let label = (0..k).map(|j| if j == i { j.to_string() } else { format!("!{j}") }).collect::<Vec<_>>();
            for &d in t.successors(q) {
                let _ = writeln!(out, "[{}] {d}", label.join("&"));
            }
        }
    }
    let _ = writeln!(out, "--END--");
    Ok(out)
}

/// Splits a header value into words, keeping quoted strings whole.
fn tokens(s: &str, path: &str) -> CliResult<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut tok = String::from("\"");
            loop {
                match chars.next() {
                    Some('\\') => tok.extend(chars.next()),
                    Some('"') => break,
                    Some(ch) => tok.push(ch),
                    None => return Err(CliError::format(path, "unterminated string")),
                }
            }
            out.push(tok);
        } else {
            let mut tok = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() {
                    break;
                }
                tok.push(ch);
                chars.next();
            }
            out.push(tok);
        }
    }
    Ok(out)
}

fn num(s: &str, path: &str, line: usize) -> CliResult<usize> {
    s.parse().map_err(|_| CliError::format(path, format!("line {line}: expected a number, found {s:?}")))
}

fn parse_acceptance(toks: &[String], path: &str, line: usize) -> CliResult<(usize, Option<bool>)> {
    let bad = || CliError::format(path, format!("line {line}: unsupported acceptance condition"));
    let count = num(toks.first().ok_or_else(bad)?, path, line)?;
    let formula: String = toks[1..].concat();
    match formula.as_str() {
        "t" => return Ok((count, Some(true))),
        "f" => return Ok((count, Some(false))),
        _ => {}
    }
    let expect = (0..count).map(|i| format!("Inf({i})")).collect::<Vec<_>>().join("&");
    if count == 0 || formula != expect {
        return Err(bad());
    }
    Ok((count, None))
}

fn parse_label(label: &str, aps: usize, path: &str, line: usize) -> CliResult<Option<usize>> {
    let bad = || CliError::format(path, format!("line {line}: unsupported label [{label}]"));
    if label.trim() == "t" {
        return Ok(None);
    }
    let mut positive = None;
    for lit in label.split('&').map(str::trim) {
        if lit.starts_with('!') {
            continue;
        }
        let i = num(lit, path, line)?;
        if i >= aps || positive.replace(i).is_some() {
            return Err(bad());
        }
    }
    positive.map(Some).ok_or_else(bad)
}

pub fn parse_hoa(src: &str, path: &str) -> CliResult<Automaton> {
    let mut states = None;
    let mut initial = StateSet::new();
    let mut aps: Vec<String> = Vec::new();
    let mut acc: Option<(usize, Option<bool>)> = None;
    let mut symbol_dim = None;
    let mut symbols: Vec<(usize, String)> = Vec::new();
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    for (ln, line) in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        if line == "--BODY--" {
            break;
        }
        let (key, value) =
            line.split_once(':').ok_or_else(|| CliError::format(path, format!("line {ln}: expected a header")))?;
        let toks = tokens(value, path)?;
        match key {
            "States" => states = Some(num(toks.first().map_or("", String::as_str), path, ln)?),
            "Start" => {
                for t in toks.iter().flat_map(|t| t.split('&')) {
                    initial.insert(num(t, path, ln)?);
                }
            }
            "AP" => aps = toks.iter().skip(1).map(|t| t.trim_start_matches('"').to_string()).collect(),
            "Acceptance" => acc = Some(parse_acceptance(&toks, path, ln)?),
            "roa-symbols" => symbol_dim = Some(num(toks.first().map_or("", String::as_str), path, ln)?),
            "roa-symbol" if toks.len() == 2 => {
                symbols.push((num(&toks[0], path, ln)?, toks[1].trim_start_matches('"').to_string()))
            }
            _ => {}
        }
    }
    let n = states.ok_or_else(|| CliError::format(path, "missing States header"))?;
    let (count, constant) = acc.ok_or_else(|| CliError::format(path, "missing Acceptance header"))?;
    let mut marks = vec![StateSet::new(); count];
    let mut trans = vec![Relation::empty(n); aps.len()];
    let mut current: Option<usize> = None;
    let mut ended = false;
    for (ln, line) in lines {
        if line.is_empty() {
            continue;
        }
        if line == "--END--" {
            ended = true;
            break;
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let toks = tokens(rest, path)?;
            let q = num(toks.first().map_or("", String::as_str), path, ln)?;
            if q >= n {
                return Err(CliError::format(path, format!("line {ln}: state {q} out of range")));
            }
            let acc_part = rest.split_once('{').map(|(_, r)| r.trim_end_matches('}'));
            for m in acc_part.into_iter().flat_map(str::split_whitespace) {
                let m = num(m, path, ln)?;
                marks.get_mut(m).ok_or_else(|| CliError::format(path, format!("line {ln}: bad set {m}")))?.insert(q);
            }
            current = Some(q);
        } else if let Some(rest) = line.strip_prefix('[') {
            let q = current.ok_or_else(|| CliError::format(path, format!("line {ln}: edge before State")))?;
            let (label, dest) =
                rest.split_once(']').ok_or_else(|| CliError::format(path, format!("line {ln}: unterminated label")))?;
            if dest.contains('{') {
                return Err(CliError::format(path, format!("line {ln}: transition acceptance is not supported")));
            }
            let d = num(dest.trim(), path, ln)?;
            let letters: Vec<usize> = match parse_label(label, aps.len(), path, ln)? {
                Some(i) => vec![i],
                None => (0..aps.len()).collect(),
            };
            for i in letters {
                trans[i].insert(q, d).map_err(|e| CliError::format(path, format!("line {ln}: {e}")))?;
            }
        } else {
            return Err(CliError::format(path, format!("line {ln}: unexpected body line")));
        }
    }
    if !ended {
        return Err(CliError::format(path, "missing --END--"));
    }
    let acceptance = match (constant, count) {
        (Some(true), _) => Acceptance::Buchi(StateSet::full(n)),
        (Some(false), _) => Acceptance::Buchi(StateSet::new()),
        (None, 1) => Acceptance::Buchi(marks.remove(0)),
        (None, _) => Acceptance::GenBuchi(marks),
    };
    let mut letters: Vec<Letter> = aps
        .iter()
        .map(|a| Letter { name: (!a.starts_with(ANONYMOUS_PREFIX)).then(|| a.clone()), relation: None })
        .collect();
    for (i, pairs) in symbols {
        let dim = symbol_dim.ok_or_else(|| CliError::format(path, "roa-symbol without roa-symbols"))?;
        let mut r = Relation::empty(dim);
        for pq in pairs.split_whitespace() {
            let (p, q) = pq.split_once('>').ok_or_else(|| CliError::format(path, format!("bad pair {pq:?}")))?;
            r.insert(num(p, path, 0)?, num(q, path, 0)?).map_err(|e| CliError::format(path, e.to_string()))?;
        }
        letters.get_mut(i).ok_or_else(|| CliError::format(path, format!("roa-symbol {i} has no AP")))?.relation =
            Some(r);
    }
    if let Some(l) = letters.iter().find(|l| l.name.is_none() && l.relation.is_none()) {
        return Err(CliError::format(path, format!("anonymous proposition {:?} has no roa-symbol", l.describe())));
    }
    Automaton::explicit(n, initial, letters.into_iter().zip(trans).collect(), acceptance)
        .map_err(|e| CliError::format(path, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_tokens_keep_spaces() {
        let t = tokens(r#" 2 "a b" "c\"d""#, "-").unwrap();
        assert_eq!(t, vec!["2", "\"a b", "\"c\"d"]);
    }

    #[test]
    fn rejects_transition_acceptance() {
        let src =
            "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[0] 0 {0}\n--END--\n";
        assert!(parse_hoa(src, "-").is_err());
    }
}
