//! Smith normal form over ℤ, with the change-of-basis matrices, and the
//! solver and kernel built on top of it.

use num_bigint::BigInt;

use floer_algebra::linalg::{kernel_dense, smith_dense, solve_dense, Matrix};

fn main() -> floer_algebra::Result<()> {
    let m: Matrix<BigInt> = Matrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_dense(m.clone())?;
    println!("M =\n{m}");
    println!("invariant factors: {:?}", s.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d_matrix());
    println!("U·M·V = D checked");

    let b: Vec<BigInt> = [2, -6, 10].into_iter().map(BigInt::from).collect();
    match solve_dense(m.clone(), &b)? {
        Some(x) => println!("M x = {b:?} has integer solution {x:?}"),
        None => println!("no integer solution"),
    }
    let odd: Vec<BigInt> = [1, 0, 0].into_iter().map(BigInt::from).collect();
    println!("M x = {odd:?} solvable over ℤ: {}", solve_dense(m.clone(), &odd)?.is_some());

    let singular: Matrix<BigInt> = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
    for v in kernel_dense(singular)? {
        println!("kernel vector {v:?}");
    }
    Ok(())
}
