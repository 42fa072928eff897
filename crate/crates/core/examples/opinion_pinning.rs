//! Pinning a small-world opinion network to a stubborn agent.

use tscale::certificates::{check_pinning, StateBox};
use tscale::models::{opinion_network_field, opinion_setup, stubborn_trajectory, OPINION_SEED};
use tscale::solver::integrate;

/// Final disagreement with the stubborn agent and the two pinning verdicts.
pub fn run_example() -> tscale::Result<(f64, bool, bool)> {
    let setup = opinion_setup(OPINION_SEED)?;
    let ts = &setup.timescale;
    let step = 1e-2;
    let reference = stubborn_trajectory(ts, &setup.op, 0.0, setup.t_end, step)?;
    let field = opinion_network_field(&setup.net, &setup.op, |t| reference.eval(t))?;
    let traj = integrate(ts, &field, 0.0, &setup.x0, setup.t_end, step)?;
    let xr = reference.eval(setup.t_end);
    let err = traj.last().x.iter().map(|x| (x - xr).abs()).fold(0.0, f64::max);

    let node = setup.op.node_field();
    let state_box = StateBox::grid(vec![[-5.0, 5.0]], 201);
    let all = check_pinning(&setup.net, &node, &state_box, &ts.distinct_mu())?;
    let dense = check_pinning(&setup.net, &node, &state_box, &[0.0])?;
    for (label, rep) in [("all graininess", &all), ("dense points", &dense)] {
        println!(
            "{label:>15}: {:?}, c_bar^2 = {:.4}, lambda in [{:.4}, {:.4}]",
            rep.verdict,
            rep.constant("c_bar_sq").unwrap_or(f64::NAN),
            rep.constant("lambda_min").unwrap_or(f64::NAN),
            rep.constant("lambda_max").unwrap_or(f64::NAN),
        );
    }
    println!("max_i |x_i - x_r| at t = {}: {err:.3e}", setup.t_end);
    Ok((err, all.holds(), dense.holds()))
}

fn main() -> tscale::Result<()> {
    run_example().map(|_| ())
}
