#pragma once

#include <string>
#include <vector>

#include "leakyloop/geometry.hpp"

namespace leakyloop::spectral {

/// Nystrom discretization of the Birman-Schwinger operator
/// (alpha / 2 pi) K0(kappa |Gamma(s) - Gamma(s')|) on the curve's arc grid.
/// Symmetric by construction; the diagonal log singularity is absorbed by
/// the quadrature rule, so every entry is finite.
class BSMatrix {
public:
    BSMatrix(int n, double alpha, double kappa, double curve_length,
             std::string scheme, bool self_intersecting,
             std::vector<double> data);

    int size() const { return n_; }
    double alpha() const { return alpha_; }
    double kappa() const { return kappa_; }
    double curve_length() const { return curve_length_; }

    /// Quadrature scheme tag: "kress-log" (spectral accuracy, moderate
    /// kappa) or "local-trapezoid" (large kappa, localized kernel).
    const std::string& scheme() const { return scheme_; }

    /// Propagated warning from the curve; never an error.
    bool self_intersecting() const { return self_intersecting_; }

    double entry(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& data() const { return data_; }

    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    /// max_ij |M_ij - M_ji|; zero by construction, kept for auditing.
    double symmetry_defect() const;

private:
    int n_;
    double alpha_;
    double kappa_;
    double curve_length_;
    std::string scheme_;
    bool self_intersecting_;
    std::vector<double> data_;
};

/// Assembles the Birman-Schwinger matrix. Requires a closed curve
/// (closure defect <= 1e-10 L). Smooth-curve accuracy is spectral in N via
/// the periodic log-splitting rule; once kappa * diameter is large enough
/// to break that split numerically, assembly switches to a punctured
/// trapezoid with an exact diagonal patch (the kernel is then localized and
/// needs no global singularity treatment).
BSMatrix assemble_bs_matrix(const geometry::ArcLengthCurve& curve, double alpha,
                            double kappa);

struct EigenPair {
    double lambda;
    std::vector<double> vector;  // entrywise positive, discrete L2 normalized
    int iterations;
};

/// Dominant eigenpair by shifted power iteration with Rayleigh-quotient
/// stopping, all-ones start vector (near-constant for near-circular
/// curves), dense symmetric fallback for moderate sizes. Throws
/// convergence_error when the budget is exhausted with no fallback.
EigenPair max_eigenpair(const BSMatrix& matrix, double rel_tol = 1e-12,
                        int max_iterations = 4000,
                        const std::vector<double>* warm_start = nullptr);

/// Convenience wrapper: dominant eigenvalue of the assembled operator.
double lambda_max(const geometry::ArcLengthCurve& curve, double alpha, double kappa);

struct GroundStateResult {
    double kappa_star;
    double energy;                    // -kappa_star^2
    std::vector<double> eigenvector;  // Perron vector samples on the arc grid
    double lambda_residual;           // |lambda_max(kappa_star) - 1|
    int bisection_iterations;
    int grid_size;
};

/// Ground state via bisection on the strictly decreasing lambda_max(kappa):
/// the bracket is auto-expanded from kappa = alpha until
/// lambda(lo) > 1 > lambda(hi), then narrowed to width tol. Throws
/// no_bound_state_error when the expansion budget runs out with
/// lambda_max < 1 everywhere (grid too coarse for the bound state).
GroundStateResult ground_state(const geometry::ArcLengthCurve& curve, double alpha,
                               double tol = 1e-8);

/// Planar eigenfunction psi(x) = Σ w_i (1/2pi) K0(kappa* |x - Gamma(s_i)|)
/// phi(s_i), trapezoid weights w_i = L/N. Throws point_on_support_error
/// within 1e-8 L of a curve sample.
double eigenfunction_at(const GroundStateResult& result,
                        const geometry::ArcLengthCurve& curve, Vec2 x);

/// Lowest eigenvalue of the strong-coupling comparison operator
/// -d^2/ds^2 - gamma(s)^2 / 4 on [0, L] with periodic boundary conditions,
/// by Fourier-Galerkin truncation with 2M+1 modes.
double strong_coupling_reference(const geometry::CurvatureSpec& spec,
                                 int mode_cutoff);

} // namespace leakyloop::spectral
