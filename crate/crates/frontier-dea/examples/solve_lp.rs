//! Build and solve a small linear program with the built-in simplex solver.
//!
//! ```bash
//! cargo run -p frontier-dea --example solve_lp
//! ```

use frontier_dea::lp::{self, LinearProgram, Relation};

fn main() -> frontier_dea::Result<()> {
    // Maximize 2x + 3y over a small polytope.
    let lp = LinearProgram::maximize(vec![2.0, 3.0])
        .subject_to(vec![1.0, 1.0], Relation::Le, 4.0)
        .subject_to(vec![1.0, 3.0], Relation::Le, 6.0);

    let solution = lp::solve(&lp, lp::DEFAULT_TOLERANCE)?;
    println!("status:     {:?}", solution.status);
    println!("iterations: {}", solution.iterations);
    if let Some((value, point)) = solution.optimal() {
        println!("objective:  {value}");
        println!("point:      {point:?}");
        println!(
            "feasible:   {}",
            lp::check_feasible(&lp, point, lp::DEFAULT_TOLERANCE)?
        );
    }

    // Infeasible and unbounded problems are verdicts, not errors.
    let infeasible = LinearProgram::minimize(vec![0.0]).subject_to(vec![1.0], Relation::Le, -1.0);
    println!(
        "x <= -1 with x >= 0: {:?}",
        lp::solve(&infeasible, lp::DEFAULT_TOLERANCE)?.status
    );
    let unbounded = LinearProgram::minimize(vec![-1.0]).subject_to(vec![1.0], Relation::Ge, 1.0);
    println!(
        "minimize -x with x >= 1: {:?}",
        lp::solve(&unbounded, lp::DEFAULT_TOLERANCE)?.status
    );
    Ok(())
}
