//! Iterative radix-2 FFT over power-of-two lengths, plus the 2-D row/column
//! transform.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Kernel `e^{-2πi jk/N}`.
    Forward,
    /// Kernel `e^{+2πi jk/N}`, unnormalised.
    Inverse,
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::invalid(
            "FFT length",
            format!("{n} is not a power of two"),
        ));
    }
    Ok(())
}

/// In-place unnormalised transform.
pub fn fft(data: &mut [Complex64], dir: Direction) -> Result<()> {
    let n = data.len();
    check_len(n)?;
    let bits = n.trailing_zeros();
    if bits > 0 {
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                data.swap(i, j);
            }
        }
    }
    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let half = len / 2;
        // Twiddles computed directly (not by recurrence) to keep round-off flat.
        let tw: Vec<Complex64> = (0..half)
            .map(|k| {
                let a = ang * k as f64;
                Complex64::new(math::cos(a), math::sin(a))
            })
            .collect();
        for chunk in data.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let t = hi[k] * tw[k];
                hi[k] = lo[k] - t;
                lo[k] += t;
            }
        }
        len <<= 1;
    }
    Ok(())
}

/// In-place transform of row-major data with the given shape (1-D or 2-D).
pub fn fft_nd(data: &mut [Complex64], shape: &[usize], dir: Direction) -> Result<()> {
    match *shape {
        [n] => {
            if data.len() != n {
                return Err(Error::invalid("FFT shape", "length mismatch"));
            }
            fft(data, dir)
        }
        [rows, cols] => {
            if data.len() != rows * cols {
                return Err(Error::invalid("FFT shape", "length mismatch"));
            }
            check_len(rows)?;
            for row in data.chunks_exact_mut(cols) {
                fft(row, dir)?;
            }
            let mut column = alloc::vec![Complex64::new(0.0, 0.0); rows];
            for c in 0..cols {
                for r in 0..rows {
                    column[r] = data[r * cols + c];
                }
                fft(&mut column, dir)?;
                for r in 0..rows {
                    data[r * cols + c] = column[r];
                }
            }
            Ok(())
        }
        _ => Err(Error::invalid(
            "FFT shape",
            format!("unsupported dimension {}", shape.len()),
        )),
    }
}

/// Signed integer frequency index of FFT bin `k` for length `n`.
pub fn signed_index(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (j, v)| {
                        let a = -2.0 * PI * (j * k) as f64 / n as f64;
                        acc + v * Complex64::new(math::cos(a), math::sin(a))
                    })
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let x: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(math::sin(i as f64 * 0.7), (i * i % 5) as f64))
            .collect();
        let mut y = x.clone();
        fft(&mut y, Direction::Forward).unwrap();
        let z = naive_dft(&x);
        for (a, b) in y.iter().zip(&z) {
            assert!((a - b).norm() < 1e-12);
        }
        fft(&mut y, Direction::Inverse).unwrap();
        for (a, b) in y.iter().zip(&x) {
            assert!((a / 16.0 - b).norm() < 1e-13);
        }
    }

    #[test]
    fn two_dimensional_impulse_is_flat() {
        let mut d = vec![Complex64::new(0.0, 0.0); 8 * 4];
        d[0] = Complex64::new(1.0, 0.0);
        fft_nd(&mut d, &[8, 4], Direction::Forward).unwrap();
        assert!(d
            .iter()
            .all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn rejects_non_power_of_two() {
        let mut d = vec![Complex64::new(0.0, 0.0); 6];
        assert!(fft(&mut d, Direction::Forward).is_err());
    }

    #[test]
    fn signed_indices() {
        assert_eq!(signed_index(0, 8), 0);
        assert_eq!(signed_index(3, 8), 3);
        assert_eq!(signed_index(4, 8), -4);
        assert_eq!(signed_index(7, 8), -1);
    }
}
