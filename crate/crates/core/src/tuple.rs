//! Mixed-radix encoding of argument tuples.
//!
//! A tuple `(a_1, ..., a_n)` over `{0, ..., q-1}` is stored at index
//! `a_1 q^{n-1} + ... + a_n`, first component most significant. Operation
//! tables, power-algebra elements and local-rule tables all share this layout.

/// Index of `args` in base `q`.
pub fn encode(args: &[usize], q: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * q + a)
}

/// Writes the base-`q` digits of `index` into `out`, most significant first.
pub fn decode_into(mut index: usize, q: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
}

pub fn decode(index: usize, q: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    decode_into(index, q, &mut out);
    out
}

/// Advances `digits` to the next tuple in ascending lexicographic order.
/// Returns `false` once every tuple has been visited (digits wrap to zero).
pub fn next_tuple(digits: &mut [usize], q: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}
