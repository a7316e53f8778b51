//! Parser for the textual element format `c * e1e3 + (a + b*z) * e2 - e4`.

use super::{CliffordElement, CliffordError, Monomial, Signature};
use crate::scalar::Cyclotomic8;

/// Splits `s` (whitespace already removed) at top-level additive signs.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>, String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0usize;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or("unbalanced parenthesis")?,
            _ => {}
        }
        let is_sep = depth == 0 && (ch == '+' || ch == '-') && !matches!(prev, Some('^' | '/' | '*'));
        if is_sep {
            if !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = false;
            } else if prev.is_some() && !matches!(prev, Some('+' | '-')) {
                return Err("misplaced sign".into());
            }
            if ch == '-' {
                negative = !negative;
            }
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err("unbalanced parenthesis".into());
    }
    if current.is_empty() {
        return Err("dangling sign".into());
    }
    terms.push((negative, current));
    Ok(terms)
}

/// Splits a term at top-level `*`.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (idx, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => {
                out.push(&term[start..idx]);
                start = idx + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

/// Parses a word `e3e1e2` into its generator indices (1-based).
fn parse_word(word: &str) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for part in word.strip_prefix('e')?.split('e') {
        if part.is_empty() || !part.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        out.push(part.parse().ok()?);
    }
    Some(out)
}

pub(super) fn parse_element(sig: Signature, input: &str) -> Result<CliffordElement, CliffordError> {
    let fail = |reason: String| CliffordError::Parse { input: input.to_string(), reason };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(fail("empty input".into()));
    }
    let mut total = CliffordElement::zero(sig);
    for (negative, term) in split_terms(&s).map_err(fail)? {
        let mut coeff = Cyclotomic8::one().signed(negative);
        let mut monomial = Monomial::ONE;
        for factor in split_factors(&term) {
            if factor.is_empty() {
                return Err(fail("empty factor".into()));
            }
            if let Some(inner) = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')) {
                coeff *= &inner.parse::<Cyclotomic8>().map_err(|e| fail(e.to_string()))?;
            } else if let Some(indices) = parse_word(factor) {
                for index in indices {
                    if index == 0 || index > sig.n() {
                        return Err(CliffordError::IndexOutOfRange { index, n: sig.n() });
                    }
                    let (neg, m) = monomial.product(Monomial::generator(index - 1));
                    monomial = m;
                    coeff = coeff.signed(neg);
                }
            } else {
                coeff *= &factor.parse::<Cyclotomic8>().map_err(|e| fail(e.to_string()))?;
            }
        }
        total.add_term(monomial, coeff);
    }
    Ok(total)
}
