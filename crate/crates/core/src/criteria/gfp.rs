//! Incremental row echelon form over GF(p) that remembers how each stored row
//! was built from the input vectors. Used to find the first input vector that
//! depends linearly on its predecessors, together with the dependency.

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (i128::from(a), i128::from(p));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(i128::from(p)) as u64
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

pub(crate) struct Echelon {
    p: u64,
    inputs: usize,
    /// (pivot column, reduced row, combination of inputs producing the row)
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl Echelon {
    pub(crate) fn new(p: u64) -> Self {
        Echelon {
            p,
            inputs: 0,
            rows: Vec::new(),
        }
    }

    /// Inserts the next input vector. If it lies in the span of the previous
    /// inputs, returns `c` with `v = sum_j c[j] * input_j`; otherwise stores it
    /// and returns `None`.
    pub(crate) fn push(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let index = self.inputs;
        self.inputs += 1;
        let mut row: Vec<u64> = v.iter().map(|x| x % p).collect();
        // combo expresses `row` as a combination of inputs 0..=index
        let mut combo = vec![0u64; index + 1];
        combo[index] = 1;
        for (pivot, basis, basis_combo) in &self.rows {
            let factor = row[*pivot];
            if factor == 0 {
                continue;
            }
            for (x, b) in row.iter_mut().zip(basis) {
                *x = (*x + p - mul(factor, *b, p)) % p;
            }
            for (c, b) in combo.iter_mut().zip(basis_combo) {
                *c = (*c + p - mul(factor, *b, p)) % p;
            }
        }
        match row.iter().position(|x| *x != 0) {
            Some(pivot) => {
                let scale = inv_mod(row[pivot], p);
                row.iter_mut().for_each(|x| *x = mul(*x, scale, p));
                combo.iter_mut().for_each(|x| *x = mul(*x, scale, p));
                self.rows.push((pivot, row, combo));
                None
            }
            None => {
                // 0 = v - sum_j (-combo[j]) input_j
                combo.pop();
                Some(combo.iter().map(|c| (p - c) % p).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_dependency_with_coefficients() {
        let mut e = Echelon::new(3);
        assert_eq!(e.push(&[1, 0]), None);
        assert_eq!(e.push(&[0, 1]), None);
        // (2, 1) = 2*(1,0) + 1*(0,1)
        assert_eq!(e.push(&[2, 1]), Some(vec![2, 1]));
    }

    #[test]
    fn zero_vector_depends_trivially() {
        let mut e = Echelon::new(5);
        assert_eq!(e.push(&[0, 0, 0]), Some(vec![]));
        assert_eq!(e.push(&[5, 10, 0]), Some(vec![0]));
    }

    #[test]
    fn inverse_mod_prime() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(mul(a, inv_mod(a, p), p), 1);
            }
        }
    }
}
