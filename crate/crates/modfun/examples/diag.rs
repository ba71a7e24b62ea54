use modfun::*;
use modfun::assemble::*;
use modfun::lsq::solve_least_squares;
use modfun::basis::{BasisSet, Expansion};
use modfun::noise::{NoiseSpec, add_noise, relative_error};

fn run(u: &Field1D, u_tt: &Field1D, grid_x: &Grid1D, fam: &ModulatingFamily, i_count: usize) -> (f64, f64, f64) {
    let truth = Field1D::from_fn(*grid_x, |x| x).unwrap();
    let basis = BasisSet::monomial(i_count, 3.0).unwrap();
    let sys = assemble_ip3(u, u_tt, fam, &basis, &basis).unwrap();
    let est = solve_least_squares(&sys).unwrap();
    let f_hat = Expansion::new(basis, est.coeffs[..i_count].to_vec()).unwrap().sample(grid_x, 0).unwrap();
    let c_hat = Expansion::new(basis, est.coeffs[i_count..].to_vec()).unwrap().sample(grid_x, 0).unwrap();
    (relative_error(&f_hat, &truth).unwrap(), relative_error(&c_hat, &truth).unwrap(), est.condition_estimate)
}

fn main() {
    let pi = std::f64::consts::PI;
    let n = 3001usize;
    let grid_x = Grid1D::new(n, 3.0).unwrap();
    let grid_t = Grid1D::new(n, 1.0).unwrap();
    for k in [2.0f64, 3.0, 4.0] {
        let p = forward::WaveProblem {
            grid_x, grid_t,
            velocity: forward::Velocity::Spatial(Field1D::from_fn(grid_x, |x| x).unwrap()),
            source: Field2D::from_fn(grid_x, grid_t, |x, _| x).unwrap(),
            initial_value: Field1D::from_fn(grid_x, |x| (k * pi * x / 3.0).sin()).unwrap(),
            initial_velocity: Field1D::zeros(grid_x),
            left_boundary: vec![0.0; n],
            right_boundary: vec![0.0; n],
        };
        let sol = forward::solve_wave(&p).unwrap();
        let mid = (n - 1) / 2;
        let u = sol.u.slice_t(mid).unwrap();
        let u_tt = sol.u_tt.slice_t(mid).unwrap();
        for (i_count, m_count) in [(2usize, 17usize), (2, 27), (3, 17)] {
            let fam = ModulatingFamily::polynomial(m_count, 3.0, 3.0).unwrap();
            let (e0f, e0c, cond) = run(&u, &u_tt, &grid_x, &fam, i_count);
            let mut errs_f = vec![];
            let mut errs_c = vec![];
            for seed in 1..=10u64 {
                let un = add_noise(&u, NoiseSpec { level_percent: 5.0, seed }).unwrap();
                let utn = add_noise(&u_tt, NoiseSpec { level_percent: 5.0, seed: seed + 1000 }).unwrap();
                let (ef, ec, _) = run(&un, &utn, &grid_x, &fam, i_count);
                errs_f.push(ef); errs_c.push(ec);
            }
            errs_f.sort_by(|a, b| a.partial_cmp(b).unwrap());
            errs_c.sort_by(|a, b| a.partial_cmp(b).unwrap());
            println!("k={k} I=J={i_count} M={m_count}: cond {cond:.2e} free ({e0f:.2e}%, {e0c:.2e}%) 5%-median ({:.3}%, {:.3}%)", errs_f[5], errs_c[5]);
        }
    }
}
