#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fock_smirnov/series.hpp"

namespace fock_smirnov {

using Rng = std::mt19937_64;

/// Random n x n tuple with ||sum_j X_j X_j^*|| drawn uniformly from (0.05, 1] * max_norm.
inline MatrixTuple random_ball_tuple(Rng& rng, int d, int n, double max_norm = 0.81) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> level(0.05, 1.0);
    std::vector<Eigen::MatrixXcd> mats;
    for (int j = 0; j < d; ++j) {
        Eigen::MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                m(r, c) = Complex(re, im);
            }
        mats.push_back(std::move(m));
    }
    MatrixTuple x(std::move(mats));
    const double spread = 1.0 - in_free_ball(x).margin;
    const double target = max_norm * level(rng);
    const double s = spread > 0.0 ? std::sqrt(target / spread) : 0.0;
    for (auto& m : x.mats) m *= s;
    return x;
}

/// Random point of the open ball in C^d with ||z||^2 <= max_norm.
inline std::vector<Complex> random_ball_point(Rng& rng, int d, double max_norm = 0.81) {
    const auto x = random_ball_tuple(rng, d, 1, max_norm);
    std::vector<Complex> z;
    for (const auto& m : x.mats) z.push_back(m(0, 0));
    return z;
}

/// Random sparse polynomial: each word of length <= degree kept with probability density.
inline FreeSeries random_polynomial(Rng& rng, int d, int degree, double density = 0.5, bool complex_coeffs = true) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution keep(density);
    FreeSeries f(d);
    for (const auto& w : enumerate_words(d, degree)) {
        if (!keep(rng)) continue;
        const double re = unit(rng);
        const double im = complex_coeffs ? unit(rng) : 0.0;
        f.add_term(w, Complex(re, im));
    }
    return f;
}

}  // namespace fock_smirnov
