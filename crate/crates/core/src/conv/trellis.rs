use alloc::vec::Vec;

use super::ConvEncoder;
use crate::blockcode::LinearBlockCode;
use crate::{invalid, Error, Result};

/// One edge of a trellis section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Branch {
    pub from: u32,
    pub to: u32,
    /// Information bits carried by the branch, bit `i` = `i`-th info bit of the section.
    pub input: u32,
    /// Code bits emitted, bit `j` = `j`-th code bit of the section.
    pub output: u64,
}

/// The branches between two consecutive trellis depths.
#[derive(Debug, Clone)]
pub struct Section {
    pub info_bits: usize,
    pub code_bits: usize,
    pub branches: Vec<Branch>,
    /// `systematic[i]` is the code-bit position that always equals info bit `i`.
    pub systematic: Vec<Option<usize>>,
}

impl Section {
    fn new(info_bits: usize, code_bits: usize, branches: Vec<Branch>) -> Self {
        let systematic = (0..info_bits)
            .map(|i| {
                (0..code_bits).find(|&j| {
                    branches
                        .iter()
                        .all(|b| (b.input >> i & 1) as u64 == b.output >> j & 1)
                })
            })
            .collect();
        Self {
            info_bits,
            code_bits,
            branches,
            systematic,
        }
    }
}

/// A time-varying trellis: a start state, a sequence of sections and an
/// optional forced end state.
#[derive(Debug, Clone)]
pub struct Trellis {
    num_states: usize,
    start: u32,
    end: Option<u32>,
    sections: Vec<Section>,
}

impl Trellis {
    /// The trellis of `encoder` over `info_steps` input blocks followed by
    /// `m` zero-input tail sections that drive the encoder back to state 0.
    pub fn terminated(encoder: &ConvEncoder, info_steps: usize) -> Self {
        let states = encoder.num_states() as u32;
        let k = encoder.k_in();
        let n = encoder.n_out();
        let full: Vec<Branch> = (0..states)
            .flat_map(|s| {
                (0..1u32 << k).map(move |u| {
                    let (to, output) = encoder.step(s, u);
                    Branch {
                        from: s,
                        to,
                        input: u,
                        output,
                    }
                })
            })
            .collect();
        let tail: Vec<Branch> = (0..states)
            .map(|s| {
                let (to, output) = encoder.step(s, 0);
                Branch {
                    from: s,
                    to,
                    input: 0,
                    output,
                }
            })
            .collect();
        let mut sections = Vec::with_capacity(info_steps + encoder.memory_order());
        let info = Section::new(k, n, full);
        let flush = Section::new(0, n, tail);
        sections.extend(core::iter::repeat_n(info, info_steps));
        sections.extend(core::iter::repeat_n(flush, encoder.memory_order()));
        Self {
            num_states: states as usize,
            start: 0,
            end: Some(0),
            sections,
        }
    }

    /// Syndrome trellis of a systematic block code: one code bit per section,
    /// states are partial syndromes, and only paths ending in the zero
    /// syndrome are codewords. Info positions carry one info bit each.
    pub fn from_systematic_code(code: &LinearBlockCode) -> Result<Self> {
        let h = code.parity_check_rows()?;
        let r = h.len();
        if r > 20 {
            return Err(Error::Capacity(alloc::format!("{r} parity bits")));
        }
        let column = |j: usize| -> u32 {
            h.iter()
                .enumerate()
                .fold(0u32, |acc, (i, row)| acc | ((row >> j & 1) as u32) << i)
        };
        let states = 1u32 << r;
        let sections = (0..code.n())
            .map(|j| {
                let col = column(j);
                let is_info = j < code.k();
                let branches = (0..states)
                    .flat_map(|s| {
                        (0..2u32).map(move |b| Branch {
                            from: s,
                            to: if b == 1 { s ^ col } else { s },
                            input: if is_info { b } else { 0 },
                            output: b as u64,
                        })
                    })
                    .collect();
                Section::new(usize::from(is_info), 1, branches)
            })
            .collect();
        Ok(Self {
            num_states: states as usize,
            start: 0,
            end: Some(0),
            sections,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn end(&self) -> Option<u32> {
        self.end
    }

    pub fn is_terminated(&self) -> bool {
        self.end.is_some()
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    /// Total number of information bits along a path.
    pub fn info_len(&self) -> usize {
        self.sections.iter().map(|s| s.info_bits).sum()
    }

    /// Total number of code bits along a path.
    pub fn code_len(&self) -> usize {
        self.sections.iter().map(|s| s.code_bits).sum()
    }

    /// Offsets of each section's first info bit and first code bit.
    pub fn offsets(&self) -> Vec<(usize, usize)> {
        self.sections
            .iter()
            .scan((0, 0), |acc, s| {
                let cur = *acc;
                acc.0 += s.info_bits;
                acc.1 += s.code_bits;
                Some(cur)
            })
            .collect()
    }

    /// Follow the path selected by `info` (one bit per info position) and
    /// return its code bits. Sections without info bits take the first branch
    /// leaving the current state that keeps the end state reachable, which is
    /// unique for convolutional tails; for syndrome trellises the parity bit is
    /// the one whose branch leads toward the zero syndrome.
    pub fn encode_path(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.info_len() {
            return Err(Error::LengthMismatch {
                expected: self.info_len(),
                actual: info.len(),
            });
        }
        let reach = self.backward_reachable();
        let mut out = Vec::with_capacity(self.code_len());
        let mut state = self.start;
        let mut pos = 0;
        for (t, sec) in self.sections.iter().enumerate() {
            let input = (0..sec.info_bits).fold(0u32, |acc, i| acc | ((info[pos + i] & 1) as u32) << i);
            pos += sec.info_bits;
            let branch = sec
                .branches
                .iter()
                .find(|b| b.from == state && b.input == input && reach[t + 1][b.to as usize])
                .ok_or_else(|| invalid("no branch continues the path"))?;
            out.extend((0..sec.code_bits).map(|j| (branch.output >> j & 1) as u8));
            state = branch.to;
        }
        Ok(out)
    }

    /// `reach[t][s]`: state `s` at depth `t` can still reach the end state.
    pub fn backward_reachable(&self) -> Vec<Vec<bool>> {
        let depth = self.sections.len();
        let mut reach = alloc::vec![alloc::vec![false; self.num_states]; depth + 1];
        match self.end {
            Some(e) => reach[depth][e as usize] = true,
            None => reach[depth].iter_mut().for_each(|r| *r = true),
        }
        for t in (0..depth).rev() {
            for b in &self.sections[t].branches {
                if reach[t + 1][b.to as usize] {
                    reach[t][b.from as usize] = true;
                }
            }
        }
        reach
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn terminated_shape() {
        let e = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
        let t = Trellis::terminated(&e, 5);
        assert_eq!(t.sections().len(), 7);
        assert_eq!(t.info_len(), 5);
        assert_eq!(t.code_len(), 14);
        for sec in &t.sections()[..5] {
            for s in 0..4u32 {
                assert_eq!(sec.branches.iter().filter(|b| b.from == s).count(), 2);
            }
        }
    }

    #[test]
    fn path_matches_encoder() {
        let e = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
        let t = Trellis::terminated(&e, 4);
        let u = [1u8, 1, 0, 1];
        assert_eq!(t.encode_path(&u).unwrap(), e.encode(&u, true).unwrap());
    }

    #[test]
    fn systematic_output_detected() {
        // (1, 1 + D + D^2): output 0 is systematic.
        let e = ConvEncoder::rate_one_over(&[0b1, 0b111]).unwrap();
        let t = Trellis::terminated(&e, 3);
        assert_eq!(t.sections()[0].systematic, vec![Some(0)]);
        let e = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
        assert_eq!(Trellis::terminated(&e, 3).sections()[0].systematic, vec![None]);
    }

    #[test]
    fn block_code_trellis_paths_are_codewords() {
        let h = LinearBlockCode::hamming74();
        let t = Trellis::from_systematic_code(&h).unwrap();
        assert_eq!(t.info_len(), 4);
        for m in 0..16u64 {
            let info: Vec<u8> = (0..4).map(|i| (m >> i & 1) as u8).collect();
            assert_eq!(t.encode_path(&info).unwrap(), h.encode(&info).unwrap());
        }
    }
}
