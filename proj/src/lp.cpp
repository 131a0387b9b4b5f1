#include "qseq/lp.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace qseq {
namespace {

// Standard dense simplex on a tableau in canonical form.
// tableau: m x (n+1), last column = rhs; basis: m basic column indices.
// cost: reduced-cost row of length n+1 (last entry = -objective).
// Bland's rule: entering = smallest index with negative reduced cost;
// leaving = smallest basic index among the min-ratio ties.
struct Tableau {
    Eigen::MatrixXd T;   // m x (n+1)
    Eigen::RowVectorXd z; // 1 x (n+1) reduced costs
    std::vector<int> basis;
    double tol;

    void pivot(int row, int col) {
        T.row(row) /= T(row, col);
        for (int r = 0; r < T.rows(); ++r)
            if (r != row && std::abs(T(r, col)) > 0.0)
                T.row(r) -= T(r, col) * T.row(row);
        if (std::abs(z(col)) > 0.0) z -= z(col) * T.row(row);
        basis[row] = col;
    }

    // Returns false if unbounded.
    bool iterate(int* iters) {
        const int n = static_cast<int>(T.cols()) - 1;
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (z(j) < -tol) { enter = j; break; }
            if (enter < 0) return true; // optimal
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < T.rows(); ++r) {
                if (T(r, enter) > tol) {
                    double ratio = T(r, n) / T(r, enter);
                    if (ratio < best_ratio - tol ||
                        (ratio < best_ratio + tol &&
                         (leave < 0 || basis[r] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return false; // unbounded
            pivot(leave, enter);
            ++*iters;
        }
    }
};

} // namespace

static LPResult solve_two_phase(const Eigen::VectorXd* c_opt,
                                const Eigen::MatrixXd& A_in,
                                const Eigen::VectorXd& b_in, double tol) {
    // Drop null rows; normalize to b >= 0.
    std::vector<int> keep;
    for (int r = 0; r < A_in.rows(); ++r) {
        if (A_in.row(r).cwiseAbs().maxCoeff() <= tol) {
            if (std::abs(b_in(r)) > 1e-9)
                return {LPResult::Status::infeasible, {}, std::abs(b_in(r)), 0};
            continue;
        }
        keep.push_back(r);
    }
    const int m = static_cast<int>(keep.size());
    const int n = static_cast<int>(A_in.cols());
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (int r = 0; r < m; ++r) {
        double s = b_in(keep[r]) < 0 ? -1.0 : 1.0;
        A.row(r) = s * A_in.row(keep[r]);
        b(r) = s * b_in(keep[r]);
    }

    LPResult res;
    if (m == 0) {
        res.status = LPResult::Status::feasible;
        res.x = Eigen::VectorXd::Zero(n);
        return res;
    }

    // Phase 1: artificials as starting basis.
    Tableau t;
    t.tol = tol;
    t.T.resize(m, n + m + 1);
    t.T.leftCols(n) = A;
    t.T.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    t.T.col(n + m) = b;
    t.basis.resize(m);
    for (int r = 0; r < m; ++r) t.basis[r] = n + r;
    t.z = Eigen::RowVectorXd::Zero(n + m + 1);
    for (int j = n; j < n + m; ++j) t.z(j) = 1.0;
    for (int r = 0; r < m; ++r) t.z -= t.T.row(r); // price out artificials

    int iters = 0;
    if (!t.iterate(&iters))
        throw std::runtime_error("lp: phase-1 unbounded (internal error)");
    double phase1 = -t.z(n + m);
    res.iterations = iters;
    if (phase1 > 1e-9) {
        res.status = LPResult::Status::infeasible;
        res.phase1_objective = phase1;
        return res;
    }

    // Drive any residual artificial out of the basis (degenerate rows).
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] >= n) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (std::abs(t.T(r, j)) > tol) { enter = j; break; }
            if (enter >= 0) t.pivot(r, enter);
        }
    }

    if (c_opt) {
        // Phase 2 on the original columns.
        Tableau t2;
        t2.tol = tol;
        t2.T.resize(m, n + 1);
        t2.T.leftCols(n) = t.T.leftCols(n);
        t2.T.col(n) = t.T.col(n + m);
        t2.basis = t.basis;
        t2.z = Eigen::RowVectorXd::Zero(n + 1);
        for (int j = 0; j < n; ++j) t2.z(j) = (*c_opt)(j);
        for (int r = 0; r < m; ++r)
            if (t2.basis[r] < n && std::abs(t2.z(t2.basis[r])) > 0.0)
                t2.z -= t2.z(t2.basis[r]) * t2.T.row(r);
        int it2 = 0;
        if (!t2.iterate(&it2)) throw std::runtime_error("lp: objective unbounded");
        res.iterations += it2;
        res.x = Eigen::VectorXd::Zero(n);
        for (int r = 0; r < m; ++r)
            if (t2.basis[r] < n) res.x(t2.basis[r]) = t2.T(r, n);
    } else {
        res.x = Eigen::VectorXd::Zero(n);
        for (int r = 0; r < m; ++r)
            if (t.basis[r] < n) res.x(t.basis[r]) = t.T(r, n + m);
    }
    res.status = LPResult::Status::feasible;
    return res;
}

LPResult lp_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     double pivot_tol) {
    return solve_two_phase(nullptr, A, b, pivot_tol);
}

LPResult lp_minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& b, double pivot_tol) {
    return solve_two_phase(&c, A, b, pivot_tol);
}

} // namespace qseq
