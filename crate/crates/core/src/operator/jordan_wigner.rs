//! Jordan-Wigner mapping: qubit `p` is spin orbital `p`, with the Z-string on
//! strictly smaller indices.

use num_complex::Complex64;

use super::fermion::{FermiSum, LadderOp};
use super::pauli::{PauliString, PauliSum};
use crate::error::{Error, Result};

/// `a_p^dag -> Z_0..Z_{p-1} (X_p - iY_p)/2`, `a_p -> Z_0..Z_{p-1} (X_p + iY_p)/2`.
pub fn ladder_to_pauli(op: LadderOp, n_qubits: usize) -> Result<PauliSum> {
    if op.index >= n_qubits {
        return Err(Error::IndexOutOfRange {
            index: op.index,
            n_orbitals: n_qubits,
        });
    }
    let mut x = PauliString::identity(n_qubits);
    for q in 0..op.index {
        x.set(q, 'Z')?;
    }
    let mut y = x.clone();
    x.set(op.index, 'X')?;
    y.set(op.index, 'Y')?;
    let y_coeff = if op.dagger { -0.5 } else { 0.5 };
    let mut out = PauliSum::zero(n_qubits);
    out.add_term(x, Complex64::new(0.5, 0.0));
    out.add_term(y, Complex64::new(0.0, y_coeff));
    Ok(out)
}

pub fn jordan_wigner(s: &FermiSum, n_orbitals: usize) -> Result<PauliSum> {
    if let Some(m) = s.max_index() {
        if m >= n_orbitals {
            return Err(Error::IndexOutOfRange {
                index: m,
                n_orbitals,
            });
        }
    }
    let mut out = PauliSum::zero(n_orbitals);
    for (string, c) in s.terms() {
        let mut term = PauliSum::identity(n_orbitals);
        for op in string.ops() {
            term = term.mul(&ladder_to_pauli(op, n_orbitals)?)?;
        }
        out = out.axpy(*c, &term)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn creation_on_one_orbital() {
        let jw = jordan_wigner(&FermiSum::creation(1, 0), 1).unwrap();
        let expected =
            PauliSum::from_terms(1, [("X", Complex64::new(0.5, 0.0)), ("Y", Complex64::new(0.0, -0.5))])
                .unwrap();
        assert!(jw.max_deviation(&expected) < 1e-15);
    }

    #[test]
    fn number_operator() {
        for p in 0..4 {
            let n = FermiSum::from_word(4, &[LadderOp::create(p), LadderOp::annihilate(p)], Complex64::new(1.0, 0.0))
                .unwrap();
            let jw = jordan_wigner(&n, 4).unwrap();
            let mut z = PauliString::identity(4);
            z.set(p, 'Z').unwrap();
            let mut expected = PauliSum::identity(4).scale(Complex64::new(0.5, 0.0));
            expected.add_term(z, Complex64::new(-0.5, 0.0));
            assert!(jw.max_deviation(&expected) < 1e-15);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(jordan_wigner(&FermiSum::creation(3, 2), 2).is_err());
    }
}
