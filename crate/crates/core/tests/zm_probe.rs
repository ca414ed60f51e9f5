use nls_core::grid;

#[test]
#[ignore]
fn probe_zero_mode_l_study() {
    let t0 = std::time::Instant::now();
    let study = grid::zero_mode_l_study(1.0, 1.0, 0, 3, 0.625, &[10.0, 20.0, 40.0]).unwrap();
    for (l, rep) in &study {
        eprintln!(
            "L={l}: N implied {}, residual = {:.6e}, subbox = {:.3}",
            rep.grid.n, rep.residual, rep.subbox_fraction
        );
    }
    eprintln!("took {:?}", t0.elapsed());
}
