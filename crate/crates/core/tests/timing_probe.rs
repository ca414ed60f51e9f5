use nls_core::{GridHamiltonian, KineticSymbol, Potential, TorusGrid};

#[test]
#[ignore]
fn probe_3d_apply_timing() {
    let grid = TorusGrid::new(3, 96, 20.0).unwrap();
    let sym = KineticSymbol::fractional(1.75).unwrap();
    let pot = Potential::inverse_power(1.0, 3.5, 3).unwrap();
    let t0 = std::time::Instant::now();
    let mut ham = GridHamiltonian::new(&sym, Some(&pot), &grid).unwrap();
    eprintln!("build 96^3: {:?}", t0.elapsed());
    let n = grid.total_points();
    let x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let t0 = std::time::Instant::now();
    for _ in 0..5 {
        ham.apply(&x, &mut y).unwrap();
    }
    eprintln!("apply 96^3 x5: {:?}", t0.elapsed());

    let grid = TorusGrid::new(3, 128, 40.0).unwrap();
    let t0 = std::time::Instant::now();
    let mut ham = GridHamiltonian::new(&sym, Some(&pot), &grid).unwrap();
    eprintln!("build 128^3: {:?}", t0.elapsed());
    let n = grid.total_points();
    let x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let t0 = std::time::Instant::now();
    for _ in 0..3 {
        ham.apply(&x, &mut y).unwrap();
    }
    eprintln!("apply 128^3 x3: {:?}", t0.elapsed());

    let n = 884736;
    let a = vec![1.0f64; n];
    let mut b = vec![0.5f64; n];
    let t0 = std::time::Instant::now();
    let mut acc = 0.0;
    for _ in 0..200 {
        acc += a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>();
        for (bi, ai) in b.iter_mut().zip(&a) {
            *bi += 1e-9 * ai;
        }
    }
    eprintln!("200 dot+axpy at 96^3: {:?} (acc={acc})", t0.elapsed());
}
