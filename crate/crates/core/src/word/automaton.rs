use super::Letter;

const NONE: u32 = u32::MAX;

/// Suffix automaton over `{x, y}`; accepts exactly the factors of its text.
#[derive(Debug, Clone)]
pub struct SuffixAutomaton {
    next: Vec<[u32; 2]>,
    link: Vec<u32>,
    len: Vec<u32>,
    last: u32,
}

impl SuffixAutomaton {
    pub fn new() -> Self {
        SuffixAutomaton {
            next: vec![[NONE; 2]],
            link: vec![NONE],
            len: vec![0],
            last: 0,
        }
    }

    pub fn build(text: &[Letter]) -> Self {
        let mut sa = SuffixAutomaton::new();
        sa.next.reserve(2 * text.len());
        for &l in text {
            sa.extend(l);
        }
        sa
    }

    pub fn extend(&mut self, letter: Letter) {
        let c = letter as usize;
        let cur = self.add_state(self.len[self.last as usize] + 1, [NONE; 2]);
        let mut p = self.last;
        while p != NONE && self.next[p as usize][c] == NONE {
            self.next[p as usize][c] = cur;
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.next[p as usize][c];
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.add_state(self.len[p as usize] + 1, self.next[q as usize]);
                self.link[clone as usize] = self.link[q as usize];
                while p != NONE && self.next[p as usize][c] == q {
                    self.next[p as usize][c] = clone;
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    fn add_state(&mut self, len: u32, next: [u32; 2]) -> u32 {
        self.next.push(next);
        self.link.push(NONE);
        self.len.push(len);
        (self.next.len() - 1) as u32
    }

    pub fn root(&self) -> u32 {
        0
    }

    /// Follows one transition; `None` when the extended word is not a factor.
    pub fn step(&self, state: u32, letter: Letter) -> Option<u32> {
        let s = self.next[state as usize][letter as usize];
        (s != NONE).then_some(s)
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        word.iter()
            .try_fold(self.root(), |s, &l| self.step(s, l))
            .is_some()
    }

    pub fn state_count(&self) -> usize {
        self.next.len()
    }
}

impl Default for SuffixAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::letters_from_str;
    use proptest::prelude::*;

    fn naive_contains(text: &[Letter], w: &[Letter]) -> bool {
        w.is_empty() || text.windows(w.len()).any(|win| win == w)
    }

    proptest! {
        #[test]
        fn agrees_with_substring_search(text in "[xy]{0,40}", w in "[xy]{0,6}") {
            let text = letters_from_str(&text).unwrap();
            let w = letters_from_str(&w).unwrap();
            let sa = SuffixAutomaton::build(&text);
            prop_assert_eq!(sa.contains(&w), naive_contains(&text, &w));
        }
    }
}
