//! Monotone-free NAE-3SAT formulas: normalization and a small solver.
//!
//! Literals are non-zero integers, `v` for variable `v` and `-v` for its
//! negation, variables numbered from 1.

use std::collections::BTreeMap;

use super::ReduceError;

pub type Clause = [i64; 3];

/// A raw formula as read from DIMACS: three literals per clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Clause>,
}

/// Truth values, entry `v - 1` for variable `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, lit: i64) -> bool {
        let v = self.0[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    pub fn nae_satisfies(&self, clauses: &[Clause]) -> bool {
        clauses.iter().all(|c| {
            let t = c.iter().filter(|&&l| self.value(l)).count();
            t == 1 || t == 2
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizeMode {
    /// Complement clauses with two or more negations and nothing else.
    Core,
    /// Complement, give every occurring literal three occurrences, and space
    /// occurrences at least six clauses apart in the doubled formula.
    Full,
}

/// Where a clause of a normalized formula came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Input clause `i` (0-based), complemented or not.
    Input { index: usize, complemented: bool },
    /// `{carrier, p, q}` with fresh `p` true and `q` false.
    Padding,
    /// Three fresh literals; the first true, the second false.
    Filler,
}

/// A formula with at most one negation per clause, together with how it was
/// obtained. The construction uses the doubled clause list `c_{m+i} = c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeFormula {
    pub vars: usize,
    pub clauses: Vec<Clause>,
    pub origin: Vec<Origin>,
    /// Variables of the input formula; larger ones are fresh.
    pub input_vars: usize,
    /// Values making every padding and filler clause NAE-satisfied, for the
    /// fresh variables `input_vars + 1 ..= vars`.
    pub fresh_values: Vec<bool>,
    pub mode: NormalizeMode,
}

impl NaeFormula {
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn doubled(&self) -> Vec<Clause> {
        let mut c = self.clauses.clone();
        c.extend_from_slice(&self.clauses);
        c
    }

    /// Restriction of an assignment to the input variables.
    pub fn project(&self, a: &Assignment) -> Assignment {
        Assignment(a.0[..self.input_vars].to_vec())
    }

    /// Extend an assignment of the input variables by the fresh defaults.
    pub fn extend(&self, a: &Assignment) -> Assignment {
        let mut v = a.0[..self.input_vars].to_vec();
        v.extend_from_slice(&self.fresh_values);
        Assignment(v)
    }

    /// Structural invariants the graph construction relies on.
    pub fn check(&self) -> Result<(), ReduceError> {
        check_clauses(self.vars, &self.clauses)?;
        if self.clauses.is_empty() {
            return Err(ReduceError::Formula("no clauses".into()));
        }
        if let Some(c) = self.clauses.iter().find(|c| c.iter().filter(|&&l| l < 0).count() > 1) {
            return Err(ReduceError::Formula(format!("clause {c:?} has more than one negation")));
        }
        Ok(())
    }
}

fn check_clauses(vars: usize, clauses: &[Clause]) -> Result<(), ReduceError> {
    for c in clauses {
        for (k, &l) in c.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize > vars {
                return Err(ReduceError::Formula(format!("literal {l} out of range 1..={vars}")));
            }
            if c[..k].iter().any(|&o| o.abs() == l.abs()) {
                return Err(ReduceError::Formula(format!("clause {c:?} repeats a variable")));
            }
        }
    }
    Ok(())
}

fn occurrences(clauses: &[Clause]) -> BTreeMap<i64, usize> {
    let mut occ = BTreeMap::new();
    for c in clauses {
        for &l in c {
            *occ.entry(l).or_insert(0) += 1;
        }
    }
    occ
}

/// A pair of occurrence indices closer than six in the doubled formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacingViolation {
    /// 1-based clause index in the doubled formula.
    pub clause: usize,
    pub detail: String,
}

/// Check the spacing condition on the doubled formula. For clause `i` and
/// each of its literals, `prev` and `succ` are the nearest other clauses
/// containing the literal, with sentinels `-6` and `2m + 6`. Every `prev` and
/// `succ` must differ from `i` by at least six, and for distinct literals of
/// the clause the `prev` values (and the `succ` values) must differ by at
/// least six unless both are sentinels.
pub fn spacing_violations(clauses: &[Clause]) -> Vec<SpacingViolation> {
    let m = clauses.len() as i64;
    let total = 2 * m;
    let lo = -6;
    let hi = 2 * m + 6;
    let mut at: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for i in 1..=total {
        for &l in &clauses[((i - 1) % m) as usize] {
            at.entry(l).or_default().push(i);
        }
    }
    let mut out = Vec::new();
    for i in 1..=total {
        let c = clauses[((i - 1) % m) as usize];
        let mut prev = [0i64; 3];
        let mut succ = [0i64; 3];
        for (h, &l) in c.iter().enumerate() {
            let pos = &at[&l];
            let k = pos.binary_search(&i).expect("clause contains its literal");
            prev[h] = if k == 0 { lo } else { pos[k - 1] };
            succ[h] = pos.get(k + 1).copied().unwrap_or(hi);
            if i - prev[h] < 6 || succ[h] - i < 6 {
                out.push(SpacingViolation { clause: i as usize, detail: format!("literal {l} recurs within six clauses") });
            }
        }
        for a in 0..3 {
            for b in a + 1..3 {
                for (name, v, s) in [("prev", prev, lo), ("succ", succ, hi)] {
                    if !(v[a] == s && v[b] == s) && (v[a] - v[b]).abs() < 6 {
                        out.push(SpacingViolation {
                            clause: i as usize,
                            detail: format!("{name} of literals {} and {} are {} and {}", c[a], c[b], v[a], v[b]),
                        });
                    }
                }
            }
        }
    }
    out
}

fn complement(raw: &Cnf) -> (Vec<Clause>, Vec<Origin>) {
    raw.clauses
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let flip = c.iter().filter(|&&l| l < 0).count() >= 2;
            let c = if flip { [-c[0], -c[1], -c[2]] } else { *c };
            (c, Origin::Input { index, complemented: flip })
        })
        .unzip()
}

/// Normalize a raw formula. NAE-satisfiability is preserved; an assignment
/// of the result projects to one of the input, and an assignment of the input
/// extends to the result by [`NaeFormula::extend`].
pub fn normalize_nae(raw: &Cnf, mode: NormalizeMode) -> Result<NaeFormula, ReduceError> {
    check_clauses(raw.vars, &raw.clauses)?;
    if raw.clauses.is_empty() {
        return Err(ReduceError::Formula("no clauses".into()));
    }
    let (clauses, origin) = complement(raw);
    let mut f = NaeFormula {
        vars: raw.vars,
        clauses,
        origin,
        input_vars: raw.vars,
        fresh_values: Vec::new(),
        mode,
    };
    if mode == NormalizeMode::Full {
        let short = occurrences(&f.clauses).values().any(|&k| k < 3);
        if short || !spacing_violations(&f.clauses).is_empty() {
            space(&mut f)?;
        }
    }
    Ok(f)
}

/// A lane-0 entry before fresh variables are assigned.
#[derive(Clone, Copy)]
enum Slot {
    Input(Clause, Origin),
    Pad(i64),
}

impl Slot {
    fn literals(&self) -> &[i64] {
        match self {
            Slot::Input(c, _) => c,
            Slot::Pad(l) => std::slice::from_ref(l),
        }
    }
}

/// Rebuild the formula in blocks of six clauses. Lane 0 of each block holds
/// an input clause or a padding clause `{carrier, p, q}`; lanes 1 to 5 hold
/// filler clauses `{A_r, B_{r, k mod 2}, C_{r, k mod 3}}` over fresh
/// variables, so equal literals in one lane are six or more apart and filler
/// literals recur after 1, 2 and 3 blocks. The number of blocks is a multiple
/// of six so that the pattern continues into the second copy.
///
/// Padding number `t` uses `p_{t mod a}` and `q_{t mod b}`, which recur
/// `a` and `b` paddings later; `a` and `b` are chosen to differ from the
/// distance at which every carrier recurs. Padding is added until every
/// literal occurs three times, no two literals of a lane-0 clause recur in
/// the same clause, and such `a`, `b` exist.
fn space(f: &mut NaeFormula) -> Result<(), ReduceError> {
    let mut lane: Vec<Slot> = f.clauses.iter().zip(&f.origin).map(|(&c, &o)| Slot::Input(c, o)).collect();
    let occ = occurrences(&f.clauses);
    for (&l, &k) in &occ {
        for _ in k..3 {
            lane.push(Slot::Pad(l));
        }
    }
    // Ties between input clauses: intercept one literal with a padding.
    let mut rounds = 0;
    while let Some((i, l)) = first_tie(&lane) {
        lane.insert(i + 1, Slot::Pad(l));
        rounds += 1;
        if rounds > 10 * f.clauses.len() + 100 {
            return Err(ReduceError::Formula("could not separate repeated literal pairs".into()));
        }
    }
    let carriers: Vec<i64> = occ.keys().copied().collect();
    for extra in 0..400 {
        let mut l = lane.clone();
        l.extend((0..extra).map(|e| Slot::Pad(carriers[e % carriers.len()])));
        let pads: Vec<usize> = (0..l.len()).filter(|&i| matches!(l[i], Slot::Pad(_))).collect();
        let np = pads.len();
        if l.len() < 12 || l.len() % 6 != 0 || np < 6 {
            continue;
        }
        let dist = carrier_distances(&l, &pads);
        let ok = |x: usize| np % x == 0 && np / x >= 3 && !dist.contains(&x);
        let Some((a, b)) = (1..=np / 3).flat_map(|a| (a + 1..=np / 3).map(move |b| (a, b))).find(|&(a, b)| ok(a) && ok(b))
        else {
            continue;
        };
        let (clauses, origin, fresh) = assemble(&l, f.input_vars, a, b);
        if spacing_violations(&clauses).is_empty() {
            f.vars = f.input_vars + fresh.len();
            f.clauses = clauses;
            f.origin = origin;
            f.fresh_values = fresh;
            return Ok(());
        }
    }
    Err(ReduceError::Formula("spacing did not converge".into()))
}

/// For each padding, the number of paddings until its carrier recurs, when
/// the carrier recurs in a padding before any input clause (cyclically).
fn carrier_distances(lane: &[Slot], pads: &[usize]) -> Vec<usize> {
    let n = lane.len();
    let mut out = Vec::new();
    for (t, &i) in pads.iter().enumerate() {
        let l = lane[i].literals()[0];
        let j = (1..=n).map(|d| (i + d) % n).find(|&j| lane[j].literals().contains(&l)).expect("self");
        if matches!(lane[j], Slot::Pad(_)) {
            let u = pads.binary_search(&j).expect("padding");
            out.push((u + pads.len() - t - 1) % pads.len() + 1);
        }
    }
    out
}

/// First lane-0 entry two of whose literals next occur (cyclically) in the
/// same entry.
fn first_tie(lane: &[Slot]) -> Option<(usize, i64)> {
    let n = lane.len();
    for i in 0..n {
        let lits = lane[i].literals();
        let next: Vec<usize> = lits
            .iter()
            .map(|&l| (1..=n).map(|d| (i + d) % n).find(|&j| lane[j].literals().contains(&l)).expect("self"))
            .collect();
        for a in 0..next.len() {
            for b in a + 1..next.len() {
                if next[a] == next[b] {
                    return Some((i, lits[a]));
                }
            }
        }
    }
    None
}

fn assemble(lane: &[Slot], input_vars: usize, a: usize, b: usize) -> (Vec<Clause>, Vec<Origin>, Vec<bool>) {
    let mut fresh: Vec<bool> = Vec::new();
    let new_var = |value: bool, fresh: &mut Vec<bool>| {
        fresh.push(value);
        (input_vars + fresh.len()) as i64
    };
    let p_vars: Vec<i64> = (0..a).map(|_| new_var(true, &mut fresh)).collect();
    let q_vars: Vec<i64> = (0..b).map(|_| new_var(false, &mut fresh)).collect();
    let mut filler_vars = Vec::new();
    for _ in 1..6 {
        let a = new_var(true, &mut fresh);
        let b: Vec<i64> = (0..2).map(|_| new_var(false, &mut fresh)).collect();
        let c: Vec<i64> = (0..3).map(|_| new_var(false, &mut fresh)).collect();
        filler_vars.push((a, b, c));
    }
    let mut clauses = Vec::with_capacity(6 * lane.len());
    let mut origin = Vec::with_capacity(6 * lane.len());
    let mut t = 0;
    for (k, slot) in lane.iter().enumerate() {
        match *slot {
            Slot::Input(c, o) => {
                clauses.push(c);
                origin.push(o);
            }
            Slot::Pad(l) => {
                clauses.push([l, p_vars[t % a], q_vars[t % b]]);
                origin.push(Origin::Padding);
                t += 1;
            }
        }
        for (a, b, c) in &filler_vars {
            clauses.push([*a, b[k % 2], c[k % 3]]);
            origin.push(Origin::Filler);
        }
    }
    (clauses, origin, fresh)
}

/// Backtracking search with NAE propagation: a clause with two equal
/// literals forces the third. Variable 1 is fixed to false first, since
/// complements of solutions are solutions.
pub fn solve_nae(f: &NaeFormula) -> Option<Assignment> {
    solve_clauses(f.vars, &f.clauses)
}

pub fn solve_clauses(vars: usize, clauses: &[Clause]) -> Option<Assignment> {
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); vars + 1];
    for (i, c) in clauses.iter().enumerate() {
        for &l in c {
            watch[l.unsigned_abs() as usize].push(i);
        }
    }
    let mut val: Vec<Option<bool>> = vec![None; vars + 1];
    let mut trail: Vec<usize> = Vec::new();
    if go(1, vars, clauses, &watch, &mut val, &mut trail) {
        Some(Assignment((1..=vars).map(|v| val[v].unwrap_or(false)).collect()))
    } else {
        None
    }
}

fn lit_val(val: &[Option<bool>], l: i64) -> Option<bool> {
    val[l.unsigned_abs() as usize].map(|b| b == (l > 0))
}

/// Assign and propagate; false on conflict. Assigned variables are pushed
/// on the trail.
fn assign(
    var: usize,
    value: bool,
    clauses: &[Clause],
    watch: &[Vec<usize>],
    val: &mut [Option<bool>],
    trail: &mut Vec<usize>,
) -> bool {
    let mut stack = vec![(var, value)];
    while let Some((v, b)) = stack.pop() {
        match val[v] {
            Some(x) if x == b => continue,
            Some(_) => return false,
            None => {}
        }
        val[v] = Some(b);
        trail.push(v);
        for &ci in &watch[v] {
            let c = clauses[ci];
            let vals: Vec<Option<bool>> = c.iter().map(|&l| lit_val(val, l)).collect();
            let known: Vec<bool> = vals.iter().flatten().copied().collect();
            if known.len() == 3 && known[0] == known[1] && known[1] == known[2] {
                return false;
            }
            if known.len() == 2 && known[0] == known[1] {
                let k = vals.iter().position(|x| x.is_none()).expect("one unknown");
                let l = c[k];
                // The free literal must take the other value.
                stack.push((l.unsigned_abs() as usize, (!known[0]) == (l > 0)));
            }
        }
    }
    true
}

fn go(
    from: usize,
    vars: usize,
    clauses: &[Clause],
    watch: &[Vec<usize>],
    val: &mut [Option<bool>],
    trail: &mut Vec<usize>,
) -> bool {
    let Some(v) = (from..=vars).find(|&v| val[v].is_none()) else {
        return true;
    };
    for b in [false, true] {
        let mark = trail.len();
        if assign(v, b, clauses, watch, val, trail) && go(v + 1, vars, clauses, watch, val, trail) {
            return true;
        }
        for u in trail.drain(mark..) {
            val[u] = None;
        }
        if v == 1 {
            // Complement symmetry: variable 1 false suffices.
            break;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn brute(vars: usize, clauses: &[Clause]) -> bool {
        (0..1u64 << vars).any(|mask| Assignment((0..vars).map(|i| mask >> i & 1 == 1).collect()).nae_satisfies(clauses))
    }

    pub(crate) fn random_cnf(rng: &mut ChaCha8Rng, vars: usize, m: usize) -> Cnf {
        let clauses = (0..m)
            .map(|_| {
                let mut c = [0i64; 3];
                let mut k = 0;
                while k < 3 {
                    let v = rng.random_range(1..=vars as i64);
                    if c[..k].iter().all(|&o| o.abs() != v) {
                        c[k] = if rng.random_bool(0.5) { v } else { -v };
                        k += 1;
                    }
                }
                c
            })
            .collect();
        Cnf { vars, clauses }
    }

    #[test]
    fn solver_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let vars = rng.random_range(3..=7);
            let m = rng.random_range(1..=14);
            let f = random_cnf(&mut rng, vars, m);
            let got = solve_clauses(vars, &f.clauses);
            assert_eq!(got.is_some(), brute(vars, &f.clauses), "{f:?}");
            if let Some(a) = got {
                assert!(a.nae_satisfies(&f.clauses));
            }
        }
    }

    #[test]
    fn complementing_preserves_solutions() {
        let raw = Cnf { vars: 3, clauses: vec![[-1, -2, 3], [1, 2, -3]] };
        let f = normalize_nae(&raw, NormalizeMode::Core).unwrap();
        assert_eq!(f.clauses, vec![[1, 2, -3], [1, 2, -3]]);
        assert_eq!(f.origin[0], Origin::Input { index: 0, complemented: true });
    }

    #[test]
    fn full_normalization_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let vars = rng.random_range(3..=6);
            let m = rng.random_range(1..=6);
            let raw = random_cnf(&mut rng, vars, m);
            let f = normalize_nae(&raw, NormalizeMode::Full).unwrap();
            f.check().unwrap();
            assert!(spacing_violations(&f.clauses).is_empty());
            assert!(occurrences(&f.clauses).values().all(|&k| k >= 3));
            let sat = brute(vars, &raw.clauses);
            let sol = solve_nae(&f);
            assert_eq!(sol.is_some(), sat);
            if let Some(a) = sol {
                assert!(f.project(&a).nae_satisfies(&raw.clauses));
            }
            if let Some(a) = solve_clauses(vars, &raw.clauses) {
                assert!(f.extend(&a).nae_satisfies(&f.clauses));
            }
            let again = normalize_nae(&Cnf { vars: f.vars, clauses: f.clauses.clone() }, NormalizeMode::Full).unwrap();
            assert_eq!(again.clauses, f.clauses);
        }
    }

    #[test]
    fn spacing_checker_flags_close_occurrences() {
        let v = spacing_violations(&[[1, 2, 3], [1, 4, 5]]);
        assert!(!v.is_empty());
    }
}
