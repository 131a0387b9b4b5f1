#include "qseq/decoupling.hpp"

#include <cmath>

namespace qseq {

namespace {

// Orthogonal Hermitian basis with Tr(b_i b_j) = 2 delta_ij.
const std::vector<Mat>& herm_basis(int dim) {
    static const std::vector<Mat> b3 = [] {
        const auto& gm = gell_mann();
        return std::vector<Mat>(gm.begin(), gm.end());
    }();
    static const std::vector<Mat> b2 = [] {
        auto ops = spin_operators(2);
        std::vector<Mat> b;
        b.push_back(Mat::Identity(2, 2));
        b.push_back(2.0 * ops.Sx);
        b.push_back(2.0 * ops.Sy);
        b.push_back(2.0 * ops.Sz);
        return b;
    }();
    if (dim == 3) return b3;
    if (dim == 2) return b2;
    throw std::invalid_argument("herm_basis: dim must be 2 or 3");
}

// One-spin coefficients, traceless components only (index 0 dropped).
Eigen::VectorXd coeffs1(const Mat& A) {
    const auto& b = herm_basis(static_cast<int>(A.rows()));
    Eigen::VectorXd c(static_cast<int>(b.size()) - 1);
    for (size_t i = 1; i < b.size(); ++i)
        c(static_cast<int>(i) - 1) = 0.5 * (b[i] * A).trace().real();
    return c;
}

// Two-spin coefficients in the product basis, (0,0) component dropped.
Eigen::VectorXd coeffs2(const Mat& A) {
    const int d = static_cast<int>(std::lround(std::sqrt(double(A.rows()))));
    const auto& b = herm_basis(d);
    const int nb = static_cast<int>(b.size());
    Eigen::VectorXd c(nb * nb - 1);
    int k = 0;
    for (int mu = 0; mu < nb; ++mu)
        for (int nu = 0; nu < nb; ++nu) {
            if (mu == 0 && nu == 0) continue;
            c(k++) = 0.25 * (kron(b[mu], b[nu]) * A).trace().real();
        }
    return c;
}

} // namespace

TransformedTerms transformed_terms(const Mat& frame, const Mat& unitary,
                                   const HamiltonianSpec& spec) {
    const int d = static_cast<int>(frame.rows());
    const Mat Sz = spin_operators(d).Sz;
    if (!is_unitary(unitary))
        throw std::invalid_argument("transformed_terms: non-unitary input");
    if (!frames_equal(unitary.adjoint() * Sz * unitary, frame, 1e-8))
        throw std::invalid_argument("transformed_terms: unitary does not realize frame");
    TransformedTerms t;
    t.dz = unitary.adjoint() * Sz * unitary;
    t.dz2 = traceless(Mat(unitary.adjoint() * Sz * Sz * unitary));
    Mat UU = kron(unitary, unitary);
    t.int2 = traceless(Mat(UU.adjoint() * two_body_interaction(spec) * UU));
    return t;
}

double verify_weights(const std::vector<Mat>& frames,
                      const std::vector<Mat>& unitaries,
                      const std::vector<double>& weights,
                      const HamiltonianSpec& spec, const DecouplingTarget& target) {
    const int d = static_cast<int>(frames[0].rows());
    Mat sz_sum = Mat::Zero(d, d), z2_sum = Mat::Zero(d, d);
    Mat int_sum = Mat::Zero(d * d, d * d);
    for (size_t k = 0; k < frames.size(); ++k) {
        auto t = transformed_terms(frames[k], unitaries[k], spec);
        sz_sum += weights[k] * t.dz;
        z2_sum += weights[k] * t.dz2;
        int_sum += weights[k] * t.int2;
    }
    double r2 = 0;
    if (target.kill_disorder_z) r2 += coeffs1(sz_sum).squaredNorm();
    if (target.kill_disorder_z2) r2 += coeffs1(z2_sum).squaredNorm();
    if (target.kill_interaction) {
        if (target.interaction_proportional) {
            Mat pat = traceless(target.interaction_pattern);
            double pn2 = coeffs2(pat).squaredNorm();
            double proj = pn2 > 0 ? coeffs2(int_sum).dot(coeffs2(pat)) / pn2 : 0.0;
            r2 += (coeffs2(int_sum) - proj * coeffs2(pat)).squaredNorm();
        } else {
            r2 += coeffs2(int_sum).squaredNorm();
        }
    }
    return std::sqrt(r2);
}

SolveResult solve_weights(const std::vector<Mat>& frames,
                          const std::vector<Mat>& unitaries,
                          const HamiltonianSpec& spec,
                          const DecouplingTarget& target) {
    if (frames.empty()) throw std::invalid_argument("solve_weights: no frames");
    if (frames.size() != unitaries.size())
        throw std::invalid_argument("solve_weights: frame/unitary count mismatch");
    if (!target.kill_disorder_z && !target.kill_disorder_z2 && !target.kill_interaction)
        throw std::invalid_argument("solve_weights: no active condition");
    const int n = static_cast<int>(frames.size());

    std::vector<Eigen::VectorXd> col_rows(n);
    int nrows = 0;
    for (int k = 0; k < n; ++k) {
        auto t = transformed_terms(frames[k], unitaries[k], spec);
        std::vector<double> rows;
        auto push = [&rows](const Eigen::VectorXd& v) {
            for (int i = 0; i < v.size(); ++i) rows.push_back(v(i));
        };
        if (target.kill_disorder_z) push(coeffs1(t.dz));
        if (target.kill_disorder_z2) push(coeffs1(t.dz2));
        if (target.kill_interaction) push(coeffs2(t.int2));
        col_rows[k] = Eigen::Map<Eigen::VectorXd>(rows.data(),
                                                  static_cast<int>(rows.size()));
        nrows = static_cast<int>(rows.size());
    }

    // Columns: weights, plus a free (split) proportionality coefficient.
    const bool prop = target.kill_interaction && target.interaction_proportional;
    const int ncols = n + (prop ? 2 : 0);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nrows + 1, ncols);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nrows + 1);
    for (int k = 0; k < n; ++k) A.block(0, k, nrows, 1) = col_rows[k];
    if (prop) {
        Eigen::VectorXd pat_rows = Eigen::VectorXd::Zero(nrows);
        Eigen::VectorXd pc = coeffs2(traceless(target.interaction_pattern));
        pat_rows.tail(pc.size()) = pc;
        A.col(n) = -(Eigen::VectorXd(nrows + 1) << pat_rows, 0.0).finished();
        A.col(n + 1) = -A.col(n);
    }
    A.row(nrows).head(n).setOnes(); // sum of weights = 1
    b(nrows) = 1.0;

    SolveResult out;
    LPResult lp = lp_feasible(A, b);
    if (lp.status != LPResult::Status::feasible) {
        out.infeasibility_certificate = lp.phase1_objective;
        return out;
    }
    out.feasible = true;
    out.set.frames = frames;
    out.set.unitaries = unitaries;

    // Prefer the uniform solution when it verifies directly.
    std::vector<double> uniform(n, 1.0 / n);
    double u_res = verify_weights(frames, unitaries, uniform, spec, target);
    if (u_res <= 1e-9) {
        out.set.weights = uniform;
        out.set.uniform = true;
        out.set.residual = u_res;
        return out;
    }
    out.set.weights.assign(n, 0.0);
    for (int k = 0; k < n; ++k) out.set.weights[k] = lp.x(k);
    out.set.residual = verify_weights(frames, unitaries, out.set.weights, spec, target);
    if (out.set.residual > 1e-9)
        throw std::runtime_error("solve_weights: LP solution failed independent verification");
    return out;
}

bool bloch_triple_ok(const Mat& S1, const Mat& S2, const Mat& S3, double tol) {
    Mat A = S1 * S1 + S2 * S2 + S3 * S3;
    return traceless_norm(A) <= tol;
}

std::vector<std::array<int, 3>> bloch_sphere_partitions(const std::vector<Mat>& axes) {
    if (axes.size() != 6)
        throw std::invalid_argument("bloch_sphere_partitions: need 6 axis representatives");
    std::vector<std::array<int, 3>> found;
    for (int j = 1; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k) {
            std::array<int, 3> block1 = {0, j, k};
            std::vector<int> block2;
            for (int i = 1; i < 6; ++i)
                if (i != j && i != k) block2.push_back(i);
            if (bloch_triple_ok(axes[0], axes[j], axes[k]) &&
                bloch_triple_ok(axes[block2[0]], axes[block2[1]], axes[block2[2]]))
                found.push_back(block1);
        }
    return found;
}

} // namespace qseq
