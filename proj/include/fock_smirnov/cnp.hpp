#pragma once

// Finite samples of complete Pick spaces: k(x, y) = 1 / (1 - <u(x), u(y)>)
// for a ball-valued map u, and restriction of commutative Smirnov data to the
// sampled set E = u(points).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fock_smirnov/commutative.hpp"

namespace fock_smirnov {

struct CnpSample {
    int d = 1;
    std::vector<std::string> labels;
    std::vector<std::vector<Complex>> u;

    std::size_t size() const noexcept { return u.size(); }

    void validate() const {
        if (labels.size() != u.size()) throw std::invalid_argument("CnpSample: labels and u-values differ in count");
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (static_cast<int>(u[k].size()) != d)
                throw std::invalid_argument("CnpSample: point '" + labels[k] + "' has wrong dimension");
            double r = 0.0;
            for (Complex c : u[k]) r += std::norm(c);
            if (!(r < 1.0))
                throw std::domain_error("CnpSample: u('" + labels[k] + "') is not inside the open unit ball");
        }
    }
};

inline Complex ball_inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

inline Eigen::MatrixXcd kernel_matrix(const CnpSample& sample) {
    sample.validate();
    const auto m = static_cast<Eigen::Index>(sample.size());
    Eigen::MatrixXcd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            k(i, j) = 1.0 / (1.0 - ball_inner(sample.u[static_cast<std::size_t>(i)], sample.u[static_cast<std::size_t>(j)]));
    return k;
}

inline double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
    if (hermitian.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

struct RestrictionReport {
    double residual = 0.0;       // max_i max_x |h_i(u(x)) a(u(x)) - b_i(u(x))|
    double min_abs_a = 0.0;      // min_x |a(u(x))|
    std::vector<Complex> a_values;
    CommutativePair pair;
};

inline RestrictionReport restrict_smirnov(const std::vector<MultiIndexSeries>& hs, const CnpSample& sample, int n,
                                          const EngineOptions& opts = {}) {
    sample.validate();
    RestrictionReport rep{0.0, std::numeric_limits<double>::infinity(), {}, commutative_smirnov(sample.d, hs, n, opts)};
    for (const auto& z : sample.u) {
        const Complex az = eval_point(rep.pair.a, z);
        rep.a_values.push_back(az);
        rep.min_abs_a = std::min(rep.min_abs_a, std::abs(az));
        for (std::size_t i = 0; i < hs.size(); ++i)
            rep.residual = std::max(rep.residual, std::abs(eval_point(hs[i], z) * az - eval_point(rep.pair.b[i], z)));
    }
    if (sample.size() == 0) rep.min_abs_a = 0.0;
    return rep;
}

struct OuterCheck {
    bool outer = false;
    double min_abs = 0.0;
    std::string criterion = "finite-sample criterion";
};

/// M_a^* acts on the kernel functions of E with eigenvalues conj(a(u(x))), so
/// on a finite sample the restriction has dense range iff a has no zero on E.
inline OuterCheck outer_restriction_check(const MultiIndexSeries& a, const CnpSample& sample) {
    sample.validate();
    if (a.dim() != sample.d) throw std::invalid_argument("outer_restriction_check: dimension mismatch");
    OuterCheck out;
    out.min_abs = std::numeric_limits<double>::infinity();
    for (const auto& z : sample.u) out.min_abs = std::min(out.min_abs, std::abs(eval_point(a, z)));
    if (sample.size() == 0) out.min_abs = 0.0;
    out.outer = sample.size() > 0 && out.min_abs > 0.0;
    return out;
}

/// Degree <= n truncation of the H^2_d kernel function k_w(z) = (1 - <z, w>)^{-1}.
inline MultiIndexSeries kernel_function(const std::vector<Complex>& w, int n) {
    const int d = static_cast<int>(w.size());
    MultiIndexSeries k(d);
    for (const auto& m : enumerate_multi_indices(d, n)) {
        Complex c = 1.0 / monomial_weight(m);
        for (int j = 0; j < d; ++j) c *= std::pow(std::conj(w[static_cast<std::size_t>(j)]), m.counts[static_cast<std::size_t>(j)]);
        k.add_term(m, c);
    }
    return k;
}

}  // namespace fock_smirnov
