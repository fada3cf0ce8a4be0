#include <catch2/catch_amalgamated.hpp>

#include "fock_smirnov/sampling.hpp"
#include "fock_smirnov/smirnov.hpp"
#include "oracles.hpp"

using namespace fock_smirnov;
using Catch::Approx;

namespace {

const FreeSeries X1 = FreeSeries::monomial(2, Word{1});
const FreeSeries X2 = FreeSeries::monomial(2, Word{2});
const FreeSeries One = FreeSeries::constant(2, 1.0);

FreeSeries example1() { return X1 + FreeSeries::monomial(2, Word{2, 1}); }
FreeSeries example2() { return X1 + FreeSeries::monomial(2, Word{1, 2}); }
FreeSeries example3() {
    return X1 + scale(0.5, FreeSeries::monomial(2, Word{1, 2}) + FreeSeries::monomial(2, Word{2, 1}));
}

Word power2(int k) { return Word(std::vector<int>(static_cast<std::size_t>(k), 2)); }

}  // namespace

TEST_CASE("graph_representer on the worked examples", "[smirnov]") {
    SECTION("X1 + X2X1: G = 3I") {
        const auto rep = graph_representer(example1(), 6);
        REQUIRE(rep.coefficients.support_size() == 1);
        REQUIRE(std::abs(rep.coefficients.constant_term() - 1.0 / 3.0) < 1e-15);
        REQUIRE(rep.norm_sq == Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SECTION("zero symbol") {
        const auto rep = graph_representer(FreeSeries(2), 5);
        REQUIRE(rep.coefficients.terms() == One.terms());
        REQUIRE(rep.norm_sq == 1.0);
    }
    SECTION("X1 + X1X2, N = 8: tridiagonal in grade") {
        const int n = 8;
        const auto rep = graph_representer(example2(), n);
        const auto tri = oracle::tridiagonal_representer(3.0, 1.0, n);
        REQUIRE(rep.coefficients.support_size() == static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) {
            const Complex ck = rep.coefficients.coeff(power2(k));
            REQUIRE(std::abs(ck - tri[static_cast<std::size_t>(k)]) < 1e-15);
            REQUIRE(std::abs(ck.imag()) < 1e-15);
            if (k > 0) {
                const Complex prev = rep.coefficients.coeff(power2(k - 1));
                REQUIRE(ck.real() * prev.real() < 0.0);
                REQUIRE(std::abs(ck) < std::abs(prev));
            }
        }
        // Infinite-section closed form c_k = (1/c0^2)(-c1/c0)^k, up to the finite-section tail.
        const double ratio = oracle::c1 / oracle::c0;
        for (int k = 0; k <= 4; ++k) {
            const double closed = std::pow(-ratio, k) / (oracle::c0 * oracle::c0);
            REQUIRE(std::abs(rep.coefficients.coeff(power2(k)) - closed) < 4.0 * std::pow(ratio, 2 * n + 2 - k));
        }
    }
}

TEST_CASE("component solve agrees with the full dense Gram solve", "[smirnov][oracle]") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + trial % 3;
        const int n = d == 3 ? 2 : 3;
        const std::vector<FreeSeries> hs{random_polynomial(rng, d, 2, 0.3), random_polynomial(rng, d, 1, 0.5)};
        const auto rep = graph_representer(SymbolColumn(d, hs), n);
        const Eigen::VectorXcd dense = oracle::dense_representer(hs, d, n);
        REQUIRE((coeff_vector(rep.coefficients, n) - dense).norm() < 1e-12);
        REQUIRE(rep.norm_sq == Approx(dense(0).real()).epsilon(1e-12));
    }
}

TEST_CASE("canonical_pair reproduces the worked examples", "[smirnov]") {
    SECTION("example 1: constant A") {
        for (int n = 2; n <= 10; ++n) {
            const auto pair = canonical_pair(example1(), n);
            REQUIRE(max_coeff_diff(pair.a, FreeSeries::constant(2, oracle::inv_sqrt3)) < 1e-15);
            REQUIRE(max_coeff_diff(pair.b.at(0), scale(oracle::inv_sqrt3, example1())) < 1e-15);
        }
    }
    SECTION("example 2") {
        const auto pair = canonical_pair(example2(), 30);
        REQUIRE(max_coeff_diff(pair.a, oracle::geometric_inverse(2, 2, oracle::c0, oracle::c1, 30)) < 1e-8);
        REQUIRE(max_coeff_diff(pair.b.at(0), cauchy_product(example2(), pair.a)) == 0.0);
        REQUIRE(pair.a0() == Approx(1.0 / oracle::c0).epsilon(1e-12));
    }
    SECTION("example 3") {
        const auto pair = canonical_pair(example3(), 30);
        REQUIRE(max_coeff_diff(pair.a, oracle::geometric_inverse(2, 2, oracle::d0, oracle::d1, 30)) < 1e-8);
    }
    SECTION("zero symbol") {
        const auto pair = canonical_pair(FreeSeries(2), 6);
        REQUIRE(pair.a.terms() == One.terms());
        REQUIRE(pair.b.at(0).is_zero());
    }
    SECTION("empty column") {
        const auto pair = canonical_pair(SymbolColumn(3, {}), 4);
        REQUIRE(pair.a.terms() == FreeSeries::constant(3, 1.0).terms());
        REQUIRE(pair.b.empty());
    }
}

TEST_CASE("a_inverse satisfies the norm identity on the worked examples", "[smirnov]") {
    const double ex1 = fock_norm_sq(a_inverse(canonical_pair(example1(), 8), 8));
    REQUIRE(ex1 == Approx(3.0).epsilon(1e-14));

    const auto inv2 = a_inverse(canonical_pair(example2(), 30), 30);
    REQUIRE(max_coeff_diff(inv2, scale(oracle::c0, One) + scale(oracle::c1, X2)) < 1e-8);
    REQUIRE(fock_norm_sq(inv2) == Approx(3.0).margin(1e-8));

    const auto inv3 = a_inverse(canonical_pair(example3(), 30), 30);
    REQUIRE(max_coeff_diff(inv3, scale(oracle::d0, One) + scale(oracle::d1, X2)) < 1e-8);
    REQUIRE(fock_norm_sq(inv3) == Approx(2.5).margin(1e-8));
    REQUIRE(oracle::d0 * oracle::d1 == Approx(0.5).margin(1e-15));
}

TEST_CASE("norm identity converges monotonically in N", "[smirnov]") {
    for (const FreeSeries& h : {example2(), example3()}) {
        const double target = 1.0 + fock_norm_sq(h);
        double last = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 16; ++n) {
            const double gap = std::abs(fock_norm_sq(a_inverse(canonical_pair(h, n), n)) - target);
            REQUIRE(gap <= last);
            last = gap;
        }
        REQUIRE(last < 1e-6);
    }
}

TEST_CASE("verify_pair", "[smirnov]") {
    SECTION("example 1 at N = 4") {
        const auto pair = canonical_pair(example1(), 4);
        const auto rep = verify_pair(example1(), pair, 4);
        REQUIRE(rep.isometry_residual <= 1e-12);
        REQUIRE(rep.factorization_residual <= 1e-12);
        REQUIRE(rep.norm_identity_residual <= 1e-12);
        REQUIRE(rep.invertibility_margin == Approx(oracle::inv_sqrt3).epsilon(1e-14));
        REQUIRE(rep.tuples_sampled >= 10);
        REQUIRE(rep.passes(1e-12));
    }
    SECTION("zero symbol") {
        const auto pair = canonical_pair(FreeSeries(2), 5);
        const auto rep = verify_pair(FreeSeries(2), pair, 5);
        REQUIRE(rep.isometry_residual == 0.0);
        REQUIRE(rep.invertibility_margin == 1.0);
    }
    SECTION("example 2 at N = 30") {
        const auto pair = canonical_pair(example2(), 30);
        const auto rep = verify_pair(example2(), pair, 30);
        REQUIRE(rep.headroom_degree == 27);
        REQUIRE(rep.isometry_method == "symbol_l1_bound");
        REQUIRE(rep.isometry_residual <= 1e-8);
        REQUIRE(rep.factorization_residual <= 1e-8);
        REQUIRE(rep.norm_identity_residual <= 1e-8);
        REQUIRE(rep.passes(1e-8));
    }
    SECTION("a corrupted pair fails") {
        auto pair = canonical_pair(example2(), 12);
        pair.a.add_term(Word{1}, 0.05);
        const auto rep = verify_pair(example2(), pair, 12);
        REQUIRE_FALSE(rep.passes(1e-8));
        REQUIRE(rep.isometry_residual > 1e-3);
    }
    SECTION("same seed, same report") {
        const auto pair = canonical_pair(example3(), 10);
        const auto r1 = verify_pair(example3(), pair, 10, {12, 99});
        const auto r2 = verify_pair(example3(), pair, 10, {12, 99});
        REQUIRE(r1.factorization_residual == r2.factorization_residual);
        REQUIRE(r1.invertibility_margin == r2.invertibility_margin);
    }
}

TEST_CASE("symbol-assembled isometry block equals the dense stacked product", "[smirnov][oracle]") {
    Rng rng(32);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = 1 + trial % 2;
        const SymbolColumn h(d, {random_polynomial(rng, d, 2, 0.5)});
        const int n = 4;
        const auto pair = canonical_pair(h, n);
        const int k = 2;
        REQUIRE((isometry_defect_block(pair, k) - oracle::dense_isometry_defect(pair, k)).norm() < 1e-12);
    }
}

TEST_CASE("symbol l1 bound dominates the dense spectral norm", "[smirnov]") {
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const SymbolColumn h(2, {random_polynomial(rng, 2, 2, 0.5)});
        const auto pair = canonical_pair(h, 5);
        const auto dense = verify_pair(h, pair, 5, {10, 1, 1u << 20});
        const auto bound = verify_pair(h, pair, 5, {10, 1, 0});
        REQUIRE(dense.isometry_method == "dense");
        REQUIRE(bound.isometry_method == "symbol_l1_bound");
        REQUIRE(bound.isometry_residual >= dense.isometry_residual - 1e-15);
    }
}

TEST_CASE("canonical pairs of random symbols", "[smirnov][property]") {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + trial % 2;
        const int n = d == 1 ? 10 : 5;
        const SymbolColumn h(d, {random_polynomial(rng, d, 2, 0.5), random_polynomial(rng, d, 1, 0.5)});
        const auto pair = canonical_pair(h, n);

        // phase convention and representer bounds
        REQUIRE(pair.a.constant_term().imag() == 0.0);
        REQUIRE(pair.a0() > 0.0);
        REQUIRE(pair.representer_norm_sq > 0.0);
        REQUIRE(pair.representer_norm_sq <= 1.0 + 1e-15);
        REQUIRE(pair.a0() == Approx(std::sqrt(pair.representer_norm_sq)).epsilon(1e-15));

        // outer-triangularity: diagonal-degree block of M_A is a_0 I
        const auto ma = left_mult_matrix(pair.a, 2).matrix;
        const auto diag = ma.topRows(static_cast<Eigen::Index>(word_count(d, 2)));
        for (Eigen::Index r = 0; r < diag.rows(); ++r) REQUIRE(diag(r, r) == Complex(pair.a0()));

        // pointwise factorization and invertibility
        const auto rep = verify_pair(h, pair, n, {10, static_cast<std::uint64_t>(trial)});
        REQUIRE(rep.factorization_residual <= 1e-10);
        REQUIRE(rep.invertibility_margin > 0.0);
        for (std::size_t i = 0; i < h.size(); ++i)
            REQUIRE(max_coeff_diff(pair.b[i], oracle::cauchy(h.entries()[i], pair.a, n + h.entries()[i].degree())) < 1e-13);
    }
}

TEST_CASE("pair is unique up to a unimodular scalar", "[smirnov][property]") {
    Rng rng(35);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int trial = 0; trial < 50; ++trial) {
        const FreeSeries h = random_polynomial(rng, 2, 2, 0.5);
        const Complex phase = std::polar(1.0, angle(rng));
        const auto p = canonical_pair(h, 4);
        const auto q = canonical_pair(scale(phase, h), 4);
        REQUIRE(max_coeff_diff(p.a, q.a) < 1e-12);
        REQUIRE(max_coeff_diff(scale(phase, p.b[0]), q.b[0]) < 1e-12);
    }
}

TEST_CASE("common denominator for a column", "[smirnov]") {
    SECTION("H = (X1, X2): G = 3I") {
        const SymbolColumn h(2, {X1, X2});
        const auto g = gram_defect(h.entries(), 2, 3);
        REQUIRE((g - 3.0 * Eigen::MatrixXcd::Identity(g.rows(), g.cols())).norm() == 0.0);
        const auto pair = canonical_pair(h, 20);
        REQUIRE(max_coeff_diff(pair.a, FreeSeries::constant(2, oracle::inv_sqrt3)) < 1e-15);
        REQUIRE(fock_norm_sq(a_inverse(pair, 20)) == Approx(3.0).epsilon(1e-14));
    }
    SECTION("two nontrivial entries share one A") {
        const SymbolColumn h(2, {example2(), example1()});
        const auto pair = canonical_pair(h, 16);
        for (std::size_t i = 0; i < 2; ++i)
            REQUIRE(max_coeff_diff(pair.b[i], cauchy_product(h.entries()[i], pair.a)) == 0.0);
        const auto rep = verify_pair(h, pair, 16);
        REQUIRE(rep.norm_identity_residual < 1e-6);
        REQUIRE(fock_norm_sq(a_inverse(pair, 16)) == Approx(1.0 + 2.0 + 2.0).margin(1e-6));
    }
}

TEST_CASE("fejer_riesz_degree1", "[smirnov]") {
    const auto ex2 = fejer_riesz_degree1(3.0, 1.0);
    REQUIRE(ex2.c0 == Approx(oracle::c0).epsilon(1e-15));
    REQUIRE(std::abs(ex2.c1 - oracle::c1) < 1e-12);

    const auto ex3 = fejer_riesz_degree1(2.5, 0.5);
    REQUIRE(ex3.c0 * ex3.c1.real() == Approx(0.5).epsilon(1e-14));
    REQUIRE(ex3.c0 * ex3.c0 + std::norm(ex3.c1) == Approx(2.5).epsilon(1e-14));
    REQUIRE(std::abs(ex3.c0 - oracle::d0) < 1e-12);

    const auto triv = fejer_riesz_degree1(1.0, 0.0);
    REQUIRE(triv.c0 == 1.0);
    REQUIRE(triv.c1 == Complex{});

    const auto rotated = fejer_riesz_degree1(3.0, Complex(0.0, 1.0));
    REQUIRE(std::abs(rotated.c1 - Complex(0.0, oracle::c1)) < 1e-12);

    REQUIRE_THROWS_AS(fejer_riesz_degree1(2.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(fejer_riesz_degree1(1.0, 0.7), std::domain_error);
}

TEST_CASE("oversized Gram component is rejected", "[smirnov]") {
    const FreeSeries dense_symbol =
        X1 + X2 + FreeSeries::monomial(2, Word{1, 2}) + FreeSeries::monomial(2, Word{2, 1});
    REQUIRE_THROWS_AS(graph_representer(dense_symbol, 12, {100}), std::length_error);
}
