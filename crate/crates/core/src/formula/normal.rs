use thiserror::Error;

use super::{Atom, SystemFormula};

/// Default cap on the number of atom occurrences in a normal form.
pub const DEFAULT_ATOM_LIMIT: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("normal form exceeds {0} atoms; restructure the input or raise the limit")]
    TooLarge(usize),
}

// A normal form as a list of clauses; for a DNF each clause is a conjunction.
type Clauses = Vec<Vec<Atom>>;

fn add_clause(out: &mut Clauses, c: Vec<Atom>) {
    // first occurrence order is kept so normal forms read like the input
    let mut k: Vec<Atom> = Vec::with_capacity(c.len());
    for a in c {
        if !k.contains(&a) {
            k.push(a);
        }
    }
    let c = k;
    // absorption: a clause implied by a shorter one is dropped
    if out.iter().any(|d| is_subset(d, &c)) {
        return;
    }
    out.retain(|d| !is_subset(&c, d));
    out.push(c);
}

fn is_subset(a: &[Atom], b: &[Atom]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn size(c: &Clauses) -> usize {
    c.iter().map(|k| k.len()).sum()
}

// Clauses of the normal form whose outer connective is `outer_is_or`.
// `None` is the absorbing constant (true for a DNF), an empty list the neutral one.
fn clauses(f: &SystemFormula, outer_is_or: bool, limit: usize) -> Result<Option<Clauses>, NormalFormError> {
    Ok(match f {
        SystemFormula::True => {
            if outer_is_or {
                None
            } else {
                Some(Vec::new())
            }
        }
        SystemFormula::False => {
            if outer_is_or {
                Some(Vec::new())
            } else {
                None
            }
        }
        SystemFormula::Atom(a) => Some(vec![vec![a.clone()]]),
        SystemFormula::And(c) | SystemFormula::Or(c) => {
            let is_or = matches!(f, SystemFormula::Or(_));
            if is_or == outer_is_or {
                // same connective as the outer level: concatenate
                let mut out = Vec::new();
                for t in c {
                    match clauses(t, outer_is_or, limit)? {
                        None => return Ok(None),
                        Some(cs) => {
                            for k in cs {
                                add_clause(&mut out, k);
                            }
                        }
                    }
                    if size(&out) > limit {
                        return Err(NormalFormError::TooLarge(limit));
                    }
                }
                Some(out)
            } else {
                // inner connective: distribute
                let mut acc: Clauses = vec![Vec::new()];
                for t in c {
                    let cs = match clauses(t, outer_is_or, limit)? {
                        // neutral element of the inner connective
                        None => continue,
                        Some(cs) => cs,
                    };
                    if cs.is_empty() {
                        return Ok(Some(Vec::new()));
                    }
                    let mut next = Vec::new();
                    for a in &acc {
                        for b in &cs {
                            let mut k = a.clone();
                            k.extend(b.iter().cloned());
                            add_clause(&mut next, k);
                        }
                        if size(&next) > limit {
                            return Err(NormalFormError::TooLarge(limit));
                        }
                    }
                    acc = next;
                }
                if acc.len() == 1 && acc[0].is_empty() {
                    // every child was the neutral constant
                    return Ok(None);
                }
                Some(acc)
            }
        }
    })
}

fn build(cs: Option<Clauses>, outer_is_or: bool) -> SystemFormula {
    match cs {
        None => SystemFormula::from_bool(outer_is_or),
        Some(cs) => {
            let parts: Vec<SystemFormula> = cs
                .into_iter()
                .map(|k| {
                    let atoms: Vec<SystemFormula> = k.into_iter().map(SystemFormula::Atom).collect();
                    if outer_is_or {
                        SystemFormula::and(atoms)
                    } else {
                        SystemFormula::or(atoms)
                    }
                })
                .collect();
            if outer_is_or {
                SystemFormula::or(parts)
            } else {
                SystemFormula::and(parts)
            }
        }
    }
}

/// Disjunctive normal form by distribution, with duplicate atoms removed and
/// absorbed conjunctions dropped.
pub fn to_dnf(f: &SystemFormula, atom_limit: usize) -> Result<SystemFormula, NormalFormError> {
    Ok(build(clauses(f, true, atom_limit)?, true))
}

/// Conjunctive normal form, dual to [`to_dnf`].
pub fn to_cnf(f: &SystemFormula, atom_limit: usize) -> Result<SystemFormula, NormalFormError> {
    Ok(build(clauses(f, false, atom_limit)?, false))
}
