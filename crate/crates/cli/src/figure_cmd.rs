//! The `figure1` subcommand: concurrence band of the qutrit-qubit family as
//! CSV. The lower column is the witness-derived line 2 r alpha; the upper
//! column is the overlap of the state with its filtered image, computed by
//! running the structured map (it coincides with the closed quadratic
//! (78 a^2 - 78 a + 154)/768 to machine precision).

use clap::Args;
use spa_detect::{
    build_family2, family2_kappa, overlap, spa_pt_qutrit_qubit, Family2Params, QutritQubitSpaParams,
};

use crate::textfmt::sig6;
use crate::{Failure, EXIT_DETECTED};

#[derive(Args)]
pub struct FigureArgs {
    /// Number of evenly spaced grid points on [0, 1] (at least 2).
    #[arg(long, default_value_t = 101)]
    steps: u32,
}

pub fn run(args: &FigureArgs) -> Result<i32, Failure> {
    if args.steps < 2 {
        return Err(Failure::input(format!(
            "--steps must be at least 2, got {}",
            args.steps
        )));
    }
    let params = QutritQubitSpaParams::default();
    let mut out = String::from("alpha,lower,upper\n");
    for i in 0..args.steps {
        let alpha = f64::from(i) / f64::from(args.steps - 1);
        let kappa = family2_kappa(alpha);
        let r = 1.0 / (4.0 * (1.0 + kappa * kappa));
        let lower = 2.0 * r * alpha;
        let rho = build_family2(&Family2Params { alpha })?;
        let filtered = spa_pt_qutrit_qubit(&rho, &params)?;
        let upper = overlap(rho.matrix(), filtered.matrix());
        out.push_str(&format!(
            "{},{},{}\n",
            sig6(alpha),
            sig6(lower),
            sig6(upper)
        ));
    }
    print!("{out}");
    Ok(EXIT_DETECTED)
}
