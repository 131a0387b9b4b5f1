#include "qseq/spin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qseq {

SpinOps spin_operators(int dim) {
    SpinOps ops;
    ops.dim = dim;
    if (dim == 3) {
        const double s = 1.0 / std::sqrt(2.0);
        ops.Sz = Mat::Zero(3, 3);
        ops.Sz.diagonal() << 1.0, 0.0, -1.0;
        ops.Sx = Mat::Zero(3, 3);
        ops.Sx(0, 1) = ops.Sx(1, 0) = ops.Sx(1, 2) = ops.Sx(2, 1) = s;
        ops.Sy = Mat::Zero(3, 3);
        ops.Sy(0, 1) = cd(0, -s);
        ops.Sy(1, 0) = cd(0, s);
        ops.Sy(1, 2) = cd(0, -s);
        ops.Sy(2, 1) = cd(0, s);
        ops.Sz2 = ops.Sz * ops.Sz;
        ops.Sperp_z = Mat::Zero(3, 3);
        ops.Sperp_z.diagonal() << 1.0, -2.0, 1.0;
        ops.Sperp_z /= std::sqrt(3.0);
    } else if (dim == 2) {
        ops.Sz = Mat::Zero(2, 2);
        ops.Sz.diagonal() << 0.5, -0.5;
        ops.Sx = Mat::Zero(2, 2);
        ops.Sx(0, 1) = ops.Sx(1, 0) = 0.5;
        ops.Sy = Mat::Zero(2, 2);
        ops.Sy(0, 1) = cd(0, -0.5);
        ops.Sy(1, 0) = cd(0, 0.5);
        ops.Sz2 = ops.Sz * ops.Sz;
        ops.Sperp_z = Mat::Zero(2, 2);
    } else {
        throw std::invalid_argument("spin_operators: dim must be 2 or 3");
    }
    return ops;
}

const std::array<Mat, 9>& gell_mann() {
    static const std::array<Mat, 9> basis = [] {
        std::array<Mat, 9> L;
        for (auto& m : L) m = Mat::Zero(3, 3);
        L[0] = std::sqrt(2.0 / 3.0) * Mat::Identity(3, 3);
        L[1](0, 1) = L[1](1, 0) = 1.0;
        L[2](0, 1) = cd(0, -1);
        L[2](1, 0) = cd(0, 1);
        L[3].diagonal() << 1.0, -1.0, 0.0;
        L[4](0, 2) = L[4](2, 0) = 1.0;
        L[5](0, 2) = cd(0, -1);
        L[5](2, 0) = cd(0, 1);
        L[6](1, 2) = L[6](2, 1) = 1.0;
        L[7](1, 2) = cd(0, -1);
        L[7](2, 1) = cd(0, 1);
        L[8].diagonal() << 1.0, 1.0, -2.0;
        L[8] /= std::sqrt(3.0);
        return L;
    }();
    return basis;
}

RVec gell_mann_decompose(const Mat& op) {
    if (op.rows() != 3 || op.cols() != 3)
        throw std::invalid_argument("gell_mann_decompose: need a 3x3 matrix");
    const auto& L = gell_mann();
    RVec c(9);
    for (int mu = 0; mu < 9; ++mu)
        c(mu) = 0.5 * (L[mu].adjoint() * op).trace().real();
    return c;
}

Mat gell_mann_reconstruct(const RVec& c) {
    const auto& L = gell_mann();
    Mat out = Mat::Zero(3, 3);
    for (int mu = 0; mu < 9; ++mu) out += c(mu) * L[mu];
    return out;
}

Mat exp_i_herm(const Mat& H, double s) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const auto& w = es.eigenvalues();
    const Mat& V = es.eigenvectors();
    Vec phases(w.size());
    for (int k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, s * w(k));
    return V * phases.asDiagonal() * V.adjoint();
}

Mat log_unitary(const Mat& U, bool* branch_flag, double branch_tol) {
    // U is normal; its Schur form is diagonal to machine precision.
    Eigen::ComplexSchur<Mat> schur(U);
    const Mat& Q = schur.matrixU();
    const Mat& T = schur.matrixT();
    const int n = static_cast<int>(U.rows());
    if (branch_flag) *branch_flag = false;
    Vec logs(n);
    for (int k = 0; k < n; ++k) {
        double phi = std::arg(T(k, k));
        if (branch_flag && std::abs(std::abs(phi) - PI) < branch_tol) *branch_flag = true;
        logs(k) = cd(phi, 0.0);
    }
    Mat H = Q * (-logs).asDiagonal() * Q.adjoint(); // U = exp(-iH)
    return 0.5 * (H + H.adjoint());
}

bool is_unitary(const Mat& U, double tol) {
    return (U.adjoint() * U - Mat::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() < tol;
}

bool is_hermitian(const Mat& A, double tol) {
    return (A - A.adjoint()).cwiseAbs().maxCoeff() < tol;
}

Mat traceless(const Mat& A) {
    const int n = static_cast<int>(A.rows());
    return A - (A.trace() / double(n)) * Mat::Identity(n, n);
}

double traceless_norm(const Mat& A) { return traceless(A).norm(); }

Mat kron(const Mat& A, const Mat& B) {
    Mat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

bool is_frame(const Mat& F, int dim, double tol) {
    if (F.rows() != dim || F.cols() != dim) return false;
    if (!is_hermitian(F, 1e-9)) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(F);
    RVec ref(dim);
    if (dim == 3)
        ref << -1.0, 0.0, 1.0;
    else
        ref << -0.5, 0.5;
    return (es.eigenvalues() - ref).cwiseAbs().maxCoeff() < tol;
}

std::string frame_key(const Mat& F) {
    std::string key;
    key.reserve(static_cast<size_t>(F.size()) * 24);
    char buf[48];
    for (int i = 0; i < F.rows(); ++i)
        for (int j = 0; j < F.cols(); ++j) {
            double re = std::round(F(i, j).real() * 1e6) / 1e6 + 0.0;
            double im = std::round(F(i, j).imag() * 1e6) / 1e6 + 0.0;
            std::snprintf(buf, sizeof buf, "%.6f,%.6f;", re, im);
            key += buf;
        }
    return key;
}

bool frames_equal(const Mat& A, const Mat& B, double tol) {
    return (A - B).norm() < tol;
}

Mat conjugate_frame(const Mat& frame, const Mat& pulse_unitary) {
    if (!is_unitary(pulse_unitary))
        throw std::invalid_argument("conjugate_frame: non-unitary pulse");
    Mat out = pulse_unitary.adjoint() * frame * pulse_unitary;
    return 0.5 * (out + out.adjoint());
}

Mat realizing_unitary(const Mat& frame) {
    const int n = static_cast<int>(frame.rows());
    Eigen::SelfAdjointEigenSolver<Mat> es(frame); // ascending eigenvalues
    Mat U(n, n);
    // rows of U are the eigenvectors ordered to match the spectrum of Sz
    for (int k = 0; k < n; ++k) U.row(k) = es.eigenvectors().col(n - 1 - k).adjoint();
    return U;
}

Mat balanced_double_drive(double theta1, double theta2) {
    Mat V = Mat::Zero(3, 3);
    V(0, 0) = std::polar(1.0, theta1);
    V(1, 1) = 1.0;
    V(2, 2) = std::polar(1.0, -theta2);
    const Mat Sx = spin_operators(3).Sx;
    return V.adjoint() * Sx * V;
}

Mat single_transition_drive(int which, double phase) {
    Mat G = Mat::Zero(3, 3);
    if (which == 0) {
        G(0, 1) = std::polar(1.0, -phase);
        G(1, 0) = std::conj(G(0, 1));
    } else if (which == 1) {
        G(1, 2) = std::polar(1.0, -phase);
        G(2, 1) = std::conj(G(1, 2));
    } else {
        throw std::invalid_argument("single_transition_drive: which must be 0 or 1");
    }
    return G;
}

Mat pulse_average_operator(const Mat& generator, const Mat& observable, double angle) {
    if (!is_hermitian(generator, 1e-9))
        throw std::invalid_argument("pulse_average_operator: generator not Hermitian");
    if (!(angle != 0))
        throw std::invalid_argument("pulse_average_operator: angle must be nonzero");
    Eigen::SelfAdjointEigenSolver<Mat> es(generator);
    const auto& g = es.eigenvalues();
    const Mat& V = es.eigenvectors();
    Mat O = V.adjoint() * observable * V;
    const int n = static_cast<int>(g.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double gap = g(a) - g(b);
            if (std::abs(gap * angle) < 1e-12) continue; // factor 1
            cd f = (std::polar(1.0, gap * angle) - cd(1.0, 0.0)) / (cd(0, 1) * gap * angle);
            O(a, b) *= f;
        }
    return V * O * V.adjoint();
}

double geodesic_deviation(const Mat& generator) {
    const Mat Sz = spin_operators(3).Sz;
    const Mat S1 = Sz;
    std::array<Mat, 33> traj;
    double moved = 0.0;
    for (int k = 0; k < 33; ++k) {
        double t = (PI / 2.0) * k / 32.0;
        Mat Ut = exp_i_herm(generator, t);
        traj[k] = Ut * Sz * Ut.adjoint();
        moved = std::max(moved, (traj[k] - S1).norm());
    }
    if (moved < 1e-12) return 0.0; // Sz invariant under this drive
    // On a geodesic the quarter point is (S1+S2)/sqrt2, which fixes S2.
    const Mat S2 = std::sqrt(2.0) * traj[16] - S1;
    double worst = 0.0;
    for (int k = 0; k < 33; ++k) {
        double t = (PI / 2.0) * k / 32.0;
        worst = std::max(worst, (traj[k] - (std::cos(t) * S1 + std::sin(t) * S2)).norm());
    }
    return worst;
}

void HamiltonianSpec::validate() const {
    if (disorder_z < 0 || disorder_z2 < 0 || coupling_scale < 0)
        throw std::invalid_argument("HamiltonianSpec: scales must be >= 0");
    if (coupling_mode == CouplingMode::explicit_matrix) {
        if (coupling_matrix.rows() != coupling_matrix.cols())
            throw std::invalid_argument("HamiltonianSpec: coupling matrix must be square");
        if (!coupling_matrix.isApprox(coupling_matrix.transpose(), 1e-12))
            throw std::invalid_argument("HamiltonianSpec: coupling matrix must be symmetric");
        if (coupling_matrix.diagonal().cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("HamiltonianSpec: coupling diagonal must be zero");
    }
}

namespace {
Mat unit(int d, int i, int j) {
    Mat e = Mat::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}
} // namespace

Mat two_body_interaction(const HamiltonianSpec& spec) {
    if (spec.model == ModelKind::spin_half_dipolar) {
        auto ops = spin_operators(2);
        return kron(ops.Sx, ops.Sx) + kron(ops.Sy, ops.Sy) - 2.0 * kron(ops.Sz, ops.Sz);
    }
    auto ops = spin_operators(3);
    if (spec.model == ModelKind::scar_bipartite) return kron(ops.Sz, ops.Sz);
    // spin-1 dipolar: Sz Sz - (1/2) flip-flop(0,+1) - (1/2) flip-flop(0,-1)
    Mat ff0p = kron(unit(3, 0, 1), unit(3, 1, 0)) + kron(unit(3, 1, 0), unit(3, 0, 1));
    Mat ff0m = kron(unit(3, 1, 2), unit(3, 2, 1)) + kron(unit(3, 2, 1), unit(3, 1, 2));
    return kron(ops.Sz, ops.Sz) - 0.5 * ff0p - 0.5 * ff0m;
}

bool secular_equivalence_check(const Mat& U1, const Mat& U2,
                               const HamiltonianSpec& spec, double tol) {
    const int d = static_cast<int>(U1.rows());
    const Mat Sz = spin_operators(d).Sz;
    Mat f1 = U1.adjoint() * Sz * U1;
    Mat f2 = U2.adjoint() * Sz * U2;
    if ((f1 - f2).norm() > tol)
        throw std::invalid_argument("secular_equivalence_check: frames differ");
    return secular_equivalence_check(U1, U2, two_body_interaction(spec), tol);
}

bool secular_equivalence_check(const Mat& U1, const Mat& U2, const Mat& H,
                               double tol) {
    const int d = static_cast<int>(U1.rows());
    const Mat Sz = spin_operators(d).Sz;
    Mat f1 = U1.adjoint() * Sz * U1;
    Mat f2 = U2.adjoint() * Sz * U2;
    if ((f1 - f2).norm() > tol)
        throw std::invalid_argument("secular_equivalence_check: frames differ");
    Mat W1 = kron(U1, U1), W2 = kron(U2, U2);
    return (W1.adjoint() * H * W1 - W2.adjoint() * H * W2).norm() < tol;
}

} // namespace qseq
