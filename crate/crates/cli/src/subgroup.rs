use crate::output::CliError;
use hsp_core::groups::{Element, GroupHandle, IndexedGroup, Perm, Subgroup};
use serde_json::Value;
use std::path::Path;

/// Subgroup generated by the listed elements. `arg` is a file path, a JSON
/// list of elements, or (for S_n) cycle notation such as `[(12), (123)]`.
/// An empty list gives the trivial subgroup.
pub fn parse_subgroup(group: &IndexedGroup, arg: &str) -> Result<Subgroup, CliError> {
    let text = if Path::new(arg).is_file() { std::fs::read_to_string(arg)? } else { arg.to_string() };
    let elems = parse_elements(group.handle(), text.trim())?;
    let idx = elems.iter().map(|e| group.index_of(e)).collect::<Result<Vec<_>, _>>()?;
    Ok(group.closure(&idx))
}

fn parse_elements(handle: &GroupHandle, text: &str) -> Result<Vec<Element>, CliError> {
    if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(text) {
        return items
            .iter()
            .map(|v| match (v, handle) {
                (Value::String(s), GroupHandle::Symmetric(n)) => Ok(Element::Perm(Perm::from_cycles(s, *n)?)),
                _ => Ok(handle.element_from_json(v)?),
            })
            .collect();
    }
    let GroupHandle::Symmetric(n) = handle else {
        return Err(CliError::Config(format!("subgroup for {} must be a JSON element list", handle.name())));
    };
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| CliError::Config(format!("cannot read subgroup {text:?}")))?;
    split_cycle_words(inner)?.iter().map(|w| Ok(Element::Perm(Perm::from_cycles(w, *n)?))).collect()
}

/// Splits `(12)(34), (123)` into one word per element; separators outside
/// parentheses end a word.
fn split_cycle_words(s: &str) -> Result<Vec<String>, CliError> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' | ' ' | ';' if depth == 0 => {
                if !cur.is_empty() {
                    words.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(c),
        }
        if !(0..=1).contains(&depth) {
            return Err(CliError::Config(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(CliError::Config(format!("unbalanced parentheses in {s:?}")));
    }
    if !cur.is_empty() {
        words.push(cur);
    }
    Ok(words)
}
