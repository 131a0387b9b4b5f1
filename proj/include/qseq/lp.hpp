#pragma once

// Small dense linear programming: two-phase simplex (Bland's rule) for
// equality-constrained feasibility problems with nonnegative variables.

#include <Eigen/Dense>
#include <string>

namespace qseq {

struct LPResult {
    enum class Status { feasible, infeasible };
    Status status = Status::infeasible;
    Eigen::VectorXd x;        // solution when feasible
    double phase1_objective = 0.0; // infeasibility certificate when infeasible
    int iterations = 0;
};

// Find x >= 0 with A x = b. Rows with all-zero coefficients and zero rhs are
// dropped; a zero row with nonzero rhs is immediately infeasible.
// Deterministic: Bland's rule pivoting, pivot tolerance `pivot_tol`.
LPResult lp_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     double pivot_tol = 1e-11);

// Minimize c.x subject to A x = b, x >= 0 (phase 1 then phase 2).
// status==infeasible when no feasible point exists; unbounded problems throw.
LPResult lp_minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& b, double pivot_tol = 1e-11);

} // namespace qseq
