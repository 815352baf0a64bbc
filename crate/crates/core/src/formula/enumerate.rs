use super::Formula;
use crate::semantics::Mode;

type Wrap = fn(Formula) -> Formula;

/// Formulas over `props` in the language of `mode`, with modal depth at most
/// `max_depth`, listed by size (node count) and then structurally: unary
/// operators (the mode's negation, `[]`, `<>`) before `&` before `|`, and
/// children in their own enumeration order. At most `max_count` are
/// returned.
///
/// Atoms are the propositions; `T` and `F` are used only when `props` is
/// empty.
pub fn enumerate_formulas(props: &[String], max_depth: usize, max_count: usize, mode: Mode) -> Vec<Formula> {
    let atoms: Vec<Formula> = if props.is_empty() {
        vec![Formula::Top, Formula::Bot]
    } else {
        props.iter().map(|p| Formula::Prop(p.clone())).collect()
    };
    // Each wrapper with the modal depth it adds.
    let unary: [(Wrap, usize); 3] = [
        (
            match mode {
                Mode::Classical => Formula::class_neg,
                Mode::Paraconsistent => Formula::para_neg,
                Mode::Paracomplete => Formula::comp_neg,
            },
            usize::from(mode != Mode::Classical),
        ),
        (Formula::boxed, 1),
        (Formula::diamond, 1),
    ];
    let binary: [fn(Formula, Formula) -> Formula; 2] = [Formula::and, Formula::or];

    let mut out: Vec<Formula> = Vec::new();
    // levels[size] holds (formula, depth) of that node count.
    let mut levels: Vec<Vec<(Formula, usize)>> = vec![Vec::new()];
    let mut size = 1;
    while out.len() < max_count {
        let mut level: Vec<(Formula, usize)> = Vec::new();
        let mut room = max_count - out.len();
        let mut emit = |f: Formula, depth: usize, level: &mut Vec<(Formula, usize)>| -> bool {
            if depth <= max_depth && room > 0 {
                level.push((f, depth));
                room -= 1;
            }
            room > 0
        };
        'fill: {
            if size == 1 {
                for atom in &atoms {
                    if !emit(atom.clone(), 0, &mut level) {
                        break 'fill;
                    }
                }
                break 'fill;
            }
            for (wrap, cost) in unary {
                for (inner, depth) in &levels[size - 1] {
                    if !emit(wrap(inner.clone()), depth + cost, &mut level) {
                        break 'fill;
                    }
                }
            }
            if size >= 3 {
                for join in binary {
                    for left_size in 1..=size - 2 {
                        let right_size = size - 1 - left_size;
                        for (l, ld) in &levels[left_size] {
                            for (r, rd) in &levels[right_size] {
                                if !emit(join(l.clone(), r.clone()), *ld.max(rd), &mut level) {
                                    break 'fill;
                                }
                            }
                        }
                    }
                }
            }
        }
        out.extend(level.iter().map(|(f, _)| f.clone()));
        levels.push(level);
        size += 1;
    }
    out
}
