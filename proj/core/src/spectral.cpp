#include "leakyloop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "leakyloop/errors.hpp"
#include "leakyloop/quadrature.hpp"
#include "leakyloop/specfun.hpp"

namespace leakyloop::spectral {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Beyond this kernel argument the log-split pair (I0 grows, K0 decays)
// cancels away too many digits; the kernel is then localized anyway.
constexpr double kSplitLimit = 16.0;

// Quadrature weights for ln(4 sin^2((t - t_j)/2)) on the uniform periodic
// grid t_j = 2 pi j / N (N even): exact for trigonometric polynomials of
// degree < N/2.
std::vector<double> kress_log_weights(int n) {
    const int half = n / 2;
    std::vector<double> r(n);
    for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int m = 1; m < half; ++m)
            sum += std::cos(kTwoPi * m * k / n) / m;
        r[k] = -(4.0 * kPi / n) * sum - (4.0 * kPi / (n * n)) * (k % 2 == 0 ? 1.0 : -1.0);
    }
    return r;
}

// ∫_0^z K0(v) dv. The log end is peeled off analytically; the remainder is
// smooth and handled by Gauss panels.
double k0_integral(double z) {
    const double m = std::min(z, 2.0);
    const double smooth = quadrature::gauss_panel(
        [](double v) {
            if (v < 1e-300) return 0.0;
            return specfun::bessel_k0(v) + std::log(0.5 * v) + specfun::euler_gamma;
        },
        0.0, m, 32);
    double total = smooth + m * (1.0 - specfun::euler_gamma - std::log(0.5 * m));
    if (z > 2.0) {
        const int panels = 1 + static_cast<int>(z - 2.0);
        total += quadrature::gauss_composite(
            [](double v) { return specfun::bessel_k0(v); }, 2.0, z, panels, 16);
    }
    return total;
}

} // namespace

BSMatrix::BSMatrix(int n, double alpha, double kappa, double curve_length,
                   std::string scheme, bool self_intersecting,
                   std::vector<double> data)
    : n_(n),
      alpha_(alpha),
      kappa_(kappa),
      curve_length_(curve_length),
      scheme_(std::move(scheme)),
      self_intersecting_(self_intersecting),
      data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("BSMatrix: data size mismatch");
}

void BSMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        const double* row = data_.data() + static_cast<std::size_t>(i) * n_;
        double sum = 0.0;
        for (int j = 0; j < n_; ++j) sum += row[j] * x[j];
        y[i] = sum;
    }
}

double BSMatrix::symmetry_defect() const {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            worst = std::max(worst, std::abs(entry(i, j) - entry(j, i)));
    return worst;
}

BSMatrix assemble_bs_matrix(const geometry::ArcLengthCurve& curve, double alpha,
                            double kappa) {
    if (!(alpha > 0.0) || !(kappa > 0.0))
        throw std::invalid_argument("assemble_bs_matrix: alpha, kappa must be positive");
    if (!curve.is_closed(1e-10))
        throw std::invalid_argument(
            "assemble_bs_matrix: curve must be closed to 1e-10 L");

    const int n = curve.grid_size();
    const double L = curve.length();
    const double h = L / n;

    // Bounding-box diagonal: an upper bound on every chord, so the split
    // regime can never be entered with a kernel argument past the limit.
    double xmin = curve.point(0).x, xmax = xmin, ymin = curve.point(0).y, ymax = ymin;
    for (const auto& p : curve.points()) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double max_chord = std::hypot(xmax - xmin, ymax - ymin);

    std::vector<double> data(static_cast<std::size_t>(n) * n);
    auto at = [&](int i, int j) -> double& {
        return data[static_cast<std::size_t>(i) * n + j];
    };

    if (kappa * max_chord <= kSplitLimit) {
        // Periodic log-split: kernel = a(t,t') ln(4 sin^2((t-t')/2)) + b(t,t')
        // with both factors smooth; Kress weights for the log part,
        // trapezoid for the rest.
        const std::vector<double> r = kress_log_weights(n);
        const double c0 = alpha * L / (4.0 * kPi * kPi);
        const double w = kTwoPi / n;
        const double diag_b = c0 * (std::log(4.0 * kPi / (kappa * L)) -
                                    specfun::euler_gamma);
        for (int i = 0; i < n; ++i) {
            at(i, i) = r[0] * (-0.5 * c0) + w * diag_b;
            for (int j = i + 1; j < n; ++j) {
                const double z = kappa * curve.chord(i, j - i);
                const double i0 = specfun::bessel_i0(z);
                const double lg =
                    std::log(4.0 * std::pow(std::sin(kPi * (j - i) / n), 2));
                const double a = -0.5 * c0 * i0;
                const double b = c0 * specfun::bessel_k0(z) + 0.5 * c0 * i0 * lg;
                const double val = r[j - i] * a + w * b;
                at(i, j) = val;
                at(j, i) = val;
            }
        }
        return BSMatrix(n, alpha, kappa, L, "kress-log",
                        curve.self_intersecting(), std::move(data));
    }

    // Localized regime: punctured trapezoid with the diagonal cell patched
    // by the exact integral of K0 across the puncture.
    const double c1 = alpha / kTwoPi;
    const double diag = (alpha / (kPi * kappa)) * k0_integral(0.5 * kappa * h);
    for (int i = 0; i < n; ++i) {
        at(i, i) = diag;
        for (int j = i + 1; j < n; ++j) {
            const double z = kappa * curve.chord(i, j - i);
            const double val = h * c1 * specfun::bessel_k0(z);
            at(i, j) = val;
            at(j, i) = val;
        }
    }
    return BSMatrix(n, alpha, kappa, L, "local-trapezoid",
                    curve.self_intersecting(), std::move(data));
}

EigenPair max_eigenpair(const BSMatrix& matrix, double rel_tol, int max_iterations,
                        const std::vector<double>* warm_start) {
    const int n = matrix.size();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    if (warm_start && static_cast<int>(warm_start->size()) == n) v = *warm_start;

    std::vector<double> w(n);
    double lambda = 0.0, lambda_prev = 0.0;
    int stable = 0;

    auto finalize = [&](double lam, std::vector<double> vec, int iters) {
        // Perron normalization: discrete L2 norm 1, entrywise positive.
        double mean = 0.0;
        for (double x : vec) mean += x;
        if (mean < 0.0)
            for (double& x : vec) x = -x;
        double norm2 = 0.0;
        for (double x : vec) norm2 += x * x;
        const double h = matrix.curve_length() / n;
        const double scale = 1.0 / std::sqrt(norm2 * h);
        for (double& x : vec) x *= scale;
        for (double x : vec)
            if (!(x > 0.0))
                throw convergence_error(
                    "max_eigenpair: dominant vector is not entrywise positive");
        return EigenPair{lam, std::move(vec), iters};
    };

    // Rayleigh increments stagnate at the summation-noise floor ~ N eps, so
    // the stagnation test carries that floor; the residual test is what
    // certifies the eigenvalue (symmetric matrix: error <= resid^2 / gap).
    const double noise_floor =
        4.0 * n * std::numeric_limits<double>::epsilon();
    const double delta_tol = std::max(0.05 * rel_tol, noise_floor);
    for (int it = 1; it <= max_iterations; ++it) {
        matrix.apply(v, w);
        double num = 0.0, den = 0.0, wnorm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            num += v[i] * w[i];
            den += v[i] * v[i];
            wnorm2 += w[i] * w[i];
        }
        lambda = num / den;
        const double wnorm = std::sqrt(wnorm2);
        if (!(wnorm > 0.0))
            throw convergence_error("max_eigenpair: iterate collapsed to zero");
        // ||M v - lambda v||^2 = ||w||^2 - lambda^2 for unit v.
        const double resid2 = std::max(wnorm2 / den - lambda * lambda, 0.0);
        const double resid = std::sqrt(resid2);
        for (int i = 0; i < n; ++i) v[i] = w[i] / wnorm;

        const double scale = std::max(std::abs(lambda), 1e-300);
        if (it > 3 && resid <= 3e-7 * scale &&
            std::abs(lambda - lambda_prev) <= delta_tol * scale) {
            if (++stable >= 2) return finalize(lambda, v, it);
        } else {
            stable = 0;
        }
        lambda_prev = lambda;
    }

    if (n <= 2048) {
        // Slowly separating spectrum: fall back to a dense symmetric solve.
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = matrix.entry(i, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
        if (solver.info() != Eigen::Success)
            throw convergence_error("max_eigenpair: dense fallback failed");
        const double lam = solver.eigenvalues()(n - 1);
        std::vector<double> vec(n);
        for (int i = 0; i < n; ++i) vec[i] = solver.eigenvectors()(i, n - 1);
        return finalize(lam, std::move(vec), max_iterations);
    }
    throw convergence_error("max_eigenpair: power iteration budget exhausted");
}

double lambda_max(const geometry::ArcLengthCurve& curve, double alpha, double kappa) {
    return max_eigenpair(assemble_bs_matrix(curve, alpha, kappa)).lambda;
}

GroundStateResult ground_state(const geometry::ArcLengthCurve& curve, double alpha,
                               double tol) {
    if (!(alpha > 0.0)) throw std::invalid_argument("ground_state: alpha must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("ground_state: tol must be positive");
    if (!curve.is_closed(1e-10))
        throw std::invalid_argument("ground_state: curve must be closed to 1e-10 L");

    std::vector<double> warm;
    auto eval = [&](double kappa) {
        const EigenPair pair =
            max_eigenpair(assemble_bs_matrix(curve, alpha, kappa), 1e-12, 4000,
                          warm.empty() ? nullptr : &warm);
        warm = pair.vector;
        return pair.lambda;
    };

    // Bracket from kappa = alpha (the straight-line bound state sits at
    // alpha/2; factor-2 headroom), expanding each side on a 60-step budget.
    constexpr int kBudget = 60;
    double hi = alpha;
    int steps = 0;
    while (eval(hi) >= 1.0) {
        hi *= 2.0;
        if (++steps >= kBudget)
            throw no_bound_state_error(
                "ground_state: lambda_max stayed >= 1 during upward expansion");
    }
    double lo = 0.5 * hi;
    steps = 0;
    while (eval(lo) <= 1.0) {
        lo *= 0.5;
        if (++steps >= kBudget)
            throw no_bound_state_error(
                "ground_state: lambda_max < 1 down to kappa = " + std::to_string(lo) +
                "; the grid is too coarse to resolve the bound state");
    }

    int iterations = 0;
    while (hi - lo > tol && iterations < kBudget) {
        const double mid = 0.5 * (lo + hi);
        if (eval(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
        ++iterations;
    }

    const double kappa_star = 0.5 * (lo + hi);
    const EigenPair final_pair =
        max_eigenpair(assemble_bs_matrix(curve, alpha, kappa_star), 1e-12, 4000,
                      warm.empty() ? nullptr : &warm);

    GroundStateResult result;
    result.kappa_star = kappa_star;
    result.energy = -kappa_star * kappa_star;
    result.eigenvector = final_pair.vector;
    result.lambda_residual = std::abs(final_pair.lambda - 1.0);
    result.bisection_iterations = iterations;
    result.grid_size = curve.grid_size();
    return result;
}

double eigenfunction_at(const GroundStateResult& result,
                        const geometry::ArcLengthCurve& curve, Vec2 x) {
    const int n = curve.grid_size();
    if (static_cast<int>(result.eigenvector.size()) != n)
        throw std::invalid_argument("eigenfunction_at: result/curve grid mismatch");
    const double L = curve.length();
    const double w = L / n;

    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = distance(x, curve.point(i));
        if (d < 1e-8 * L)
            throw point_on_support_error(
                "eigenfunction_at: evaluation point lies on the curve support");
        sum += specfun::free_kernel(result.kappa_star, d) * result.eigenvector[i];
    }
    return w * sum;
}

double strong_coupling_reference(const geometry::CurvatureSpec& spec,
                                 int mode_cutoff) {
    if (mode_cutoff < 0)
        throw std::invalid_argument("strong_coupling_reference: cutoff must be >= 0");
    const double L = spec.length();
    const double gamma0 = kTwoPi / L;

    int max_n = 0;
    for (const auto& m : spec.modes()) max_n = std::max(max_n, m.n);

    // V = -gamma^2 / 4 is band-limited to 2 max_n, so the trapezoid DFT of
    // its samples recovers the Fourier coefficients exactly.
    const int qmax = 2 * mode_cutoff;
    const int grid = 4 * (max_n + mode_cutoff) + 8;
    std::vector<std::complex<double>> vhat(2 * qmax + 1);
    for (int q = -qmax; q <= qmax; ++q) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double s = L * j / grid;
            const double gamma = gamma0 + spec.g(s);
            const double v = -0.25 * gamma * gamma;
            acc += v * std::exp(std::complex<double>(0.0, -kTwoPi * q * j / grid));
        }
        vhat[q + qmax] = acc / static_cast<double>(grid);
    }

    const int dim = 2 * mode_cutoff + 1;
    Eigen::MatrixXcd h(dim, dim);
    for (int j = -mode_cutoff; j <= mode_cutoff; ++j) {
        for (int k = -mode_cutoff; k <= mode_cutoff; ++k) {
            std::complex<double> val = vhat[j - k + qmax];
            if (j == k) val += std::pow(kTwoPi * j / L, 2);
            h(j + mode_cutoff, k + mode_cutoff) = val;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw convergence_error("strong_coupling_reference: eigensolver failed");
    return solver.eigenvalues()(0);
}

} // namespace leakyloop::spectral
