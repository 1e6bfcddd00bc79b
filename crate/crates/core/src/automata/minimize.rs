use std::collections::HashMap;
use std::str::FromStr;

use super::{accessible_part, Dfa};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinimizeAlgo {
    Hopcroft,
    Moore,
}

impl FromStr for MinimizeAlgo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hopcroft" => Ok(MinimizeAlgo::Hopcroft),
            "moore" => Ok(MinimizeAlgo::Moore),
            other => Err(Error::InvalidArgument(format!(
                "unknown minimization algorithm '{other}'"
            ))),
        }
    }
}

/// Minimal complete DFA for `L(d)`, numbered breadth-first from the initial
/// state. Both algorithms produce identical output.
pub fn minimize(d: &Dfa, algo: MinimizeAlgo) -> Dfa {
    let acc = accessible_part(d);
    let classes = nerode_classes(&acc, algo);
    accessible_part(&quotient(&acc, &classes))
}

/// Nerode class of every state of `d` (all states, reachable or not).
///
/// Class ids are dense in `0..m` but otherwise arbitrary.
pub fn nerode_classes(d: &Dfa, algo: MinimizeAlgo) -> Vec<usize> {
    match algo {
        MinimizeAlgo::Hopcroft => hopcroft(d),
        MinimizeAlgo::Moore => moore(d),
    }
}

/// Quotient of `d` by a congruence given as a class id per state.
pub fn quotient(d: &Dfa, classes: &[usize]) -> Dfa {
    let m = classes.iter().max().map_or(0, |&c| c + 1);
    let mut rep = vec![usize::MAX; m];
    for (q, &c) in classes.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let trans = (0..d.alphabet().len())
        .map(|a| rep.iter().map(|&q| classes[d.step(q, a)]).collect())
        .collect();
    let finals = rep.iter().map(|&q| d.is_final(q)).collect();
    Dfa::from_parts(d.alphabet().to_vec(), classes[d.initial()], finals, trans)
}

fn moore(d: &Dfa) -> Vec<usize> {
    let n = d.n_states();
    let k = d.alphabet().len();
    let mut class: Vec<usize> = normalize(
        &d.final_flags()
            .iter()
            .map(|&f| f as usize)
            .collect::<Vec<_>>(),
    );
    let mut count = class.iter().max().map_or(0, |&c| c + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|a| class[d.step(q, a)]));
            let fresh = ids.len();
            next.push(*ids.entry(sig).or_insert(fresh));
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

fn normalize(raw: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    raw.iter()
        .map(|&c| {
            let fresh = ids.len();
            *ids.entry(c).or_insert(fresh)
        })
        .collect()
}

#[allow(clippy::needless_range_loop)]
fn hopcroft(d: &Dfa) -> Vec<usize> {
    let n = d.n_states();
    let k = d.alphabet().len();

    // inverse transitions in CSR layout: for letter a and target r,
    // inv[a][start[a][r]..start[a][r+1]] are the sources
    let mut starts = Vec::with_capacity(k);
    let mut inverse = Vec::with_capacity(k);
    for a in 0..k {
        let row = d.row(a);
        let mut start = vec![0usize; n + 1];
        for &r in row {
            start[r + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut srcs = vec![0usize; n];
        for (q, &r) in row.iter().enumerate() {
            srcs[fill[r]] = q;
            fill[r] += 1;
        }
        starts.push(start);
        inverse.push(srcs);
    }

    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let finals: Vec<usize> = (0..n).filter(|&q| d.is_final(q)).collect();
    let others: Vec<usize> = (0..n).filter(|&q| !d.is_final(q)).collect();
    for part in [others, finals] {
        if !part.is_empty() {
            let id = blocks.len();
            for &q in &part {
                block_of[q] = id;
            }
            blocks.push(part);
        }
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut in_pending: Vec<Vec<bool>> = Vec::new();
    for b in 0..blocks.len() {
        in_pending.push(vec![true; k]);
        for a in 0..k {
            pending.push((b, a));
        }
    }

    let mut marked = vec![false; n];
    let mut marked_count: Vec<usize> = vec![0; blocks.len()];
    while let Some((splitter, a)) = pending.pop() {
        in_pending[splitter][a] = false;
        let mut touched = Vec::new();
        let mut sources = Vec::new();
        for &r in &blocks[splitter] {
            for &q in &inverse[a][starts[a][r]..starts[a][r + 1]] {
                if !marked[q] {
                    marked[q] = true;
                    sources.push(q);
                    let b = block_of[q];
                    if marked_count[b] == 0 {
                        touched.push(b);
                    }
                    marked_count[b] += 1;
                }
            }
        }
        for b in touched {
            let hit = marked_count[b];
            marked_count[b] = 0;
            if hit == blocks[b].len() {
                continue;
            }
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                blocks[b].iter().partition(|&&q| marked[q]);
            let new_id = blocks.len();
            for &q in &inside {
                block_of[q] = new_id;
            }
            blocks[b] = outside;
            let small_is_new = blocks[b].len() >= inside.len();
            blocks.push(inside);
            marked_count.push(0);
            in_pending.push(vec![false; k]);
            for c in 0..k {
                if in_pending[b][c] {
                    in_pending[new_id][c] = true;
                    pending.push((new_id, c));
                } else {
                    let pick = if small_is_new { new_id } else { b };
                    in_pending[pick][c] = true;
                    pending.push((pick, c));
                }
            }
        }
        for q in sources {
            marked[q] = false;
        }
    }
    block_of
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::fig1;
    use super::super::{equivalent, print_dfa};
    use super::*;

    /// The square-root automaton of `fig1`: states [01],[10],[00],[11].
    fn fig2() -> Dfa {
        Dfa::new(
            vec!["a".into(), "b".into()],
            4,
            0,
            [3],
            vec![vec![1, 0, 3, 2], vec![3, 3, 3, 3]],
        )
        .unwrap()
    }

    /// Brute-force table filling, used as an oracle for both algorithms.
    #[allow(clippy::needless_range_loop)]
    fn table_filling(d: &Dfa) -> Vec<Vec<bool>> {
        let n = d.n_states();
        let mut dist = vec![vec![false; n]; n];
        for p in 0..n {
            for q in 0..n {
                dist[p][q] = d.is_final(p) != d.is_final(q);
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..n {
                for q in 0..n {
                    if !dist[p][q]
                        && (0..d.alphabet().len()).any(|a| dist[d.step(p, a)][d.step(q, a)])
                    {
                        dist[p][q] = true;
                        changed = true;
                    }
                }
            }
        }
        dist
    }

    #[test]
    fn sqrt_figure_minimizes_to_three_states() {
        let d = fig2();
        let dist = table_filling(&d);
        // [01] ~ [10]; [00] and [11] are separated from everything
        assert!(!dist[0][1]);
        assert!(dist[0][2] && dist[0][3] && dist[2][3]);
        for algo in [MinimizeAlgo::Hopcroft, MinimizeAlgo::Moore] {
            let m = minimize(&d, algo);
            assert_eq!(m.n_states(), 3);
            assert!(equivalent(&d, &m).unwrap());
        }
    }

    #[test]
    fn minimal_input_is_fixed_point() {
        let a = fig1();
        assert_eq!(minimize(&a, MinimizeAlgo::Hopcroft), a);
        assert_eq!(minimize(&a, MinimizeAlgo::Moore), a);
    }

    #[test]
    fn single_state_languages() {
        let empty = Dfa::new(vec!["a".into()], 3, 0, [], vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(minimize(&empty, MinimizeAlgo::Hopcroft).n_states(), 1);
        let full = Dfa::new(vec!["a".into()], 3, 0, [0, 1, 2], vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(minimize(&full, MinimizeAlgo::Moore).n_states(), 1);
    }

    #[test]
    fn algorithms_agree_with_table_filling() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let k = rng.gen_range(1..=3);
            let alphabet: Vec<String> = (0..k).map(|i| format!("l{i}")).collect();
            let trans = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let d = Dfa::new(alphabet, n, rng.gen_range(0..n), finals, trans).unwrap();
            let dist = table_filling(&d);
            for algo in [MinimizeAlgo::Hopcroft, MinimizeAlgo::Moore] {
                let cls = nerode_classes(&d, algo);
                for p in 0..n {
                    for q in 0..n {
                        assert_eq!(cls[p] == cls[q], !dist[p][q]);
                    }
                }
            }
            let h = minimize(&d, MinimizeAlgo::Hopcroft);
            let m = minimize(&d, MinimizeAlgo::Moore);
            assert_eq!(print_dfa(&h), print_dfa(&m));
            assert!(h.n_states() <= d.n_states());
            assert_eq!(minimize(&h, MinimizeAlgo::Hopcroft), h);
        }
    }
}
