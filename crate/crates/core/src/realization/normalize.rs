//! Conversion of a general realization (variables of any degree) into a
//! normal one realizing the same external behavior.

use super::model::{fresh_label, Realization};
use crate::algebra::CodeSubgroup;
use crate::corpus::builders::equality_code;
use crate::error::Result;

fn replicate(r: &mut Realization, var: &str, keep_var: bool) -> Result<()> {
    let alpha = r.alphabet_of(var).unwrap().clone();
    let ends = r.ends(var);
    let mut taken = r.all_labels();
    let mut replicas = Vec::new();
    for (k, end) in ends.iter().enumerate() {
        let name = fresh_label(&format!("{var}#{}", k + 1), &taken);
        taken.insert(name.clone());
        let c = r.constraints.get_mut(&end.constraint).unwrap();
        c.vars[end.slot] = name.clone();
        let amb = c.code.ambient().relabel(&c.vars)?;
        c.code = c.code.with_ambient(&amb)?;
        replicas.push(name);
    }
    for name in &replicas {
        r.add_state(name, alpha.clone())?;
    }
    let mut vars: Vec<String> = Vec::new();
    if keep_var {
        vars.push(var.to_string());
    } else {
        r.states.shift_remove(var);
    }
    vars.extend(replicas.iter().cloned());
    let cid = fresh_label(&format!("eq_{var}"), &taken);
    let code = equality_code(&alpha, vars.len());
    r.add_constraint_code(&cid, &vars, &code)
}

/// Returns a normal realization with the same external behavior: symbols of
/// degree > 1 and states of degree > 2 are replaced by equality constraints
/// over replicas, states of degree 1 are projected out, states of degree 0
/// are dropped, and unused symbols get an unconstrained dummy node.
pub fn normalize(input: &Realization) -> Result<Realization> {
    let mut r = input.clone();
    let states: Vec<String> = r.states.keys().cloned().collect();
    for s in states {
        if r.is_boundary(&s) {
            continue;
        }
        let ends = r.ends(&s);
        let distinct = ends.len() == 2 && ends[0].constraint != ends[1].constraint;
        match ends.len() {
            0 => {
                r.states.shift_remove(&s);
            }
            1 => {
                let c = r.constraints.get_mut(&ends[0].constraint).unwrap();
                let others: Vec<String> = c.vars.iter().filter(|v| **v != s).cloned().collect();
                c.code = c.code.project(&others)?;
                c.vars = others;
                r.states.shift_remove(&s);
            }
            2 if distinct => {}
            _ => {
                r.states.get_mut(&s).unwrap().iso = None;
                replicate(&mut r, &s, false)?;
            }
        }
    }
    let symbols: Vec<String> = r.symbols.keys().cloned().collect();
    for a in symbols {
        match r.ends(&a).len() {
            0 => {
                let taken = r.all_labels();
                let cid = fresh_label(&format!("free_{a}"), &taken);
                let amb = r.ambient_of(std::slice::from_ref(&a))?;
                r.add_constraint_code(&cid, std::slice::from_ref(&a), &CodeSubgroup::full(&amb))?;
            }
            1 => {}
            _ => replicate(&mut r, &a, true)?,
        }
    }
    Ok(r)
}
