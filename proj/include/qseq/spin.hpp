#pragma once

// Dense complex operator algebra for spin-1/2 and spin-1: standard operators,
// the Gell-Mann basis, frame conjugation, geodesic pulse primitives, and the
// small exp/log helpers everything else builds on.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qseq {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double PI = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// constants and operators

struct SpinOps {
    int dim;
    Mat Sx, Sy, Sz, Sz2, Sperp_z;
};

// dim in {2,3}. For dim 3, Sz = diag(1,0,-1) and Sx = (1/sqrt2)[[0,1,0],[1,0,1],[0,1,0]].
// For dim 2, the conventional spin-1/2 matrices (Sz = diag(1/2,-1/2)).
SpinOps spin_operators(int dim);

// Gell-Mann basis lambda_0..lambda_8 with lambda_0 = sqrt(2/3) I and
// Tr(lambda_mu lambda_nu) = 2 delta_mu_nu.
const std::array<Mat, 9>& gell_mann();

// Coefficients c with op = sum c_mu lambda_mu (length 9, index 0 = lambda_0).
RVec gell_mann_decompose(const Mat& op);
Mat gell_mann_reconstruct(const RVec& c);

// ---------------------------------------------------------------------------
// small dense matrix functions

// exp(i s H) for Hermitian H, via the self-adjoint eigensolver.
Mat exp_i_herm(const Mat& H, double s);

// Eigenphase log of a unitary: returns Hermitian H with U = exp(-i H).
// branch_flag is set when an eigenphase lies within branch_tol of +-pi.
Mat log_unitary(const Mat& U, bool* branch_flag = nullptr, double branch_tol = 1e-6);

bool is_unitary(const Mat& U, double tol = 1e-10);
bool is_hermitian(const Mat& A, double tol = 1e-12);

// Frobenius norm of the traceless part.
double traceless_norm(const Mat& A);
Mat traceless(const Mat& A);

Mat kron(const Mat& A, const Mat& B);

// ---------------------------------------------------------------------------
// frames

// A frame is a Hermitian operator with the spectrum of Sz. Frames are handled
// as plain matrices plus helpers; equality tolerance is 1e-9 Frobenius and
// hashing keys round entries to 6 decimals.
bool is_frame(const Mat& F, int dim, double tol = 1e-9);

// Canonical hash key (entries rounded to 1e-6).
std::string frame_key(const Mat& F);

bool frames_equal(const Mat& A, const Mat& B, double tol = 1e-9);

// U^dag S^z U with unitarity check.
Mat conjugate_frame(const Mat& frame, const Mat& pulse_unitary);

// Some unitary realizing the given frame (columns = eigenvectors ordered so
// that U^dag Sz U = F). Any diagonal-phase gauge is equally valid.
Mat realizing_unitary(const Mat& frame);

// ---------------------------------------------------------------------------
// balanced double driving and geodesics

// Generator of balanced double driving: V^dag Sx V with
// V = diag(e^{i t1}, 1, e^{-i t2}). Spectrum {1,0,-1}.
Mat balanced_double_drive(double theta1, double theta2);

// Single-transition drive generator: unit amplitude on transition block
// (0:|+1>-|0>, 1:|0>-|-1>) with drive phase. A population-inverting pi pulse
// corresponds to rotation angle pi/2 of this generator.
Mat single_transition_drive(int which, double phase);

// (1/angle) Int_0^angle e^{iG t} O e^{-iG t} dt, exactly via the spectral
// (commutant-projection) formula. Gaps below 1e-12 use the limiting factor 1.
Mat pulse_average_operator(const Mat& generator, const Mat& observable, double angle);

// max over a 33-point grid of || e^{iGt} Sz e^{-iGt} - (cos t S1 + sin t S2) ||_F
// with S1, S2 the endpoint frames of the quarter rotation. 0 means geodesic.
double geodesic_deviation(const Mat& generator);

// ---------------------------------------------------------------------------
// Hamiltonian specification

enum class CouplingMode { uniform, gaussian, explicit_matrix };
enum class ModelKind { spin1_dipolar, spin_half_dipolar, scar_bipartite };

struct HamiltonianSpec {
    ModelKind model = ModelKind::spin1_dipolar;
    double disorder_z = 0.0;     // rad/s, Gaussian std of h_i
    double disorder_z2 = 0.0;    // rad/s, Gaussian std of D_i
    double coupling_scale = 0.0; // rad/s, J
    CouplingMode coupling_mode = CouplingMode::uniform;
    Eigen::MatrixXd coupling_matrix; // used with explicit_matrix
    double scar_field = 0.0;     // rad/s, h of the scar model
    void validate() const;
};

// Two-body interaction term of the given model for one (i,j) pair at unit J.
// spin1_dipolar: Sz Sz - (1/2) H^{XY,0+} - (1/2) H^{XY,0-}  (9x9)
// spin_half_dipolar: Sx Sx + Sy Sy - 2 Sz Sz                (4x4)
// scar_bipartite (intergroup): Sz (x) Sz                    (9x9)
Mat two_body_interaction(const HamiltonianSpec& spec);

// Theorem-1 check: with U1, U2 realizing the same frame, their transformed
// 2-spin secular Hamiltonians coincide. Throws if the frames differ.
bool secular_equivalence_check(const Mat& U1, const Mat& U2,
                               const HamiltonianSpec& spec, double tol = 1e-9);

// Same check for an explicit two-body operator H (d^2 x d^2). Gauge invariance
// holds iff H commutes with the total Sz (secular); e.g. Sx (x) Sx fails.
bool secular_equivalence_check(const Mat& U1, const Mat& U2, const Mat& H,
                               double tol = 1e-9);

} // namespace qseq
