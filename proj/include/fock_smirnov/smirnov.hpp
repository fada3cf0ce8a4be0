#pragma once

// Canonical inner-outer (Smirnov) pairs for polynomial free functions.
//
// For a column H = (H_1, ..., H_k) of free polynomials, the graph of F -> HF
// restricted to degree <= N has Gram matrix G = I + sum_i M_{H_i}^* M_{H_i}.
// The Riesz representer of (F, HF) -> <F, xi_0> is the graph vector over
// c = G^{-1} e_0, with squared norm c_0. Normalizing it gives the wandering
// vector, whose first component is A and whose remaining components are
// B_i = H_i A.
//
// G couples only words reachable from the empty word through its sparsity
// pattern, so the solve is carried out on that connected component. This is
// exact, and keeps d = 2, N = 30 problems (2^31 words) tractable whenever H
// only couples a thin set of words.

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fock_smirnov/fock_ops.hpp"
#include "fock_smirnov/parallel.hpp"
#include "fock_smirnov/sampling.hpp"
#include "fock_smirnov/series.hpp"
#include "fock_smirnov/words.hpp"

namespace fock_smirnov {

/// The symbol of a column multiplier F -> (H_1 F, ..., H_k F). Carries d so
/// that the empty column is well defined.
class SymbolColumn {
public:
    SymbolColumn(int d, std::vector<FreeSeries> entries) : d_(d), entries_(std::move(entries)) {
        if (d < 1) throw std::invalid_argument("SymbolColumn: d must be >= 1");
        for (const auto& h : entries_)
            if (h.dim() != d) throw std::invalid_argument("SymbolColumn: entry dimension mismatch");
    }
    SymbolColumn(const FreeSeries& h) : SymbolColumn(h.dim(), {h}) {}  // NOLINT(google-explicit-constructor)
    explicit SymbolColumn(std::vector<FreeSeries> entries)
        : SymbolColumn(entries.empty() ? 1 : entries.front().dim(), std::move(entries)) {}

    int dim() const noexcept { return d_; }
    const std::vector<FreeSeries>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    int max_degree() const noexcept { return fock_smirnov::max_degree(entries_); }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& h : entries_) s += fock_norm_sq(h);
        return s;
    }

private:
    int d_;
    std::vector<FreeSeries> entries_;
};

struct EngineOptions {
    /// Largest connected component of the Gram matrix the dense solve accepts.
    std::size_t max_component = 12000;
};

struct GraphRepresenter {
    FreeSeries coefficients;       // c = G^{-1} e_0 on the component of the empty word
    double norm_sq = 0.0;          // ||v||^2 = c_0
    std::vector<Word> component;   // graded-lex sorted support of the solve
};

struct SmirnovPair {
    FreeSeries a;
    std::vector<FreeSeries> b;
    int truncation = 0;
    double representer_norm_sq = 0.0;
    std::size_t component_size = 0;
    std::string phase = "a0>0";

    double a0() const { return a.constant_term().real(); }
};

inline std::vector<Word> gram_component(const SymbolColumn& h, int n, const EngineOptions& opts,
                                        std::map<Word, FreeSeries>* columns = nullptr) {
    std::map<Word, FreeSeries> cols;
    std::deque<Word> queue{Word{}};
    std::map<Word, bool> seen{{Word{}, true}};
    while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        FreeSeries col = gram_column(h.entries(), w, h.dim(), n);
        for (const auto& [v, c] : col.terms()) {
            if (seen.emplace(v, true).second) {
                if (seen.size() > opts.max_component)
                    throw std::length_error("graph_representer: Gram component exceeds " +
                                            std::to_string(opts.max_component) +
                                            " words; lower the truncation degree");
                queue.push_back(v);
            }
        }
        cols.emplace(std::move(w), std::move(col));
    }
    std::vector<Word> component;
    component.reserve(cols.size());
    for (const auto& [w, col] : cols) component.push_back(w);
    if (columns != nullptr) *columns = std::move(cols);
    return component;
}

/// Solves G c = e_0 on the truncated graph; v = sum_alpha c_alpha (xi_alpha + H xi_alpha).
inline GraphRepresenter graph_representer(const SymbolColumn& h, int n, const EngineOptions& opts = {}) {
    if (n < 0) throw std::invalid_argument("graph_representer: negative truncation");
    std::map<Word, FreeSeries> columns;
    auto component = gram_component(h, n, opts, &columns);

    const auto size = static_cast<Eigen::Index>(component.size());
    std::map<Word, Eigen::Index> position;
    for (Eigen::Index k = 0; k < size; ++k) position.emplace(component[static_cast<std::size_t>(k)], k);

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(size, size);
    for (Eigen::Index k = 0; k < size; ++k)
        for (const auto& [w, c] : columns.at(component[static_cast<std::size_t>(k)]).terms())
            g(position.at(w), k) = c;

    Eigen::LLT<Eigen::MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("graph_representer: internal error, Gram matrix not positive definite");
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
    rhs(0) = 1.0;  // the empty word sorts first
    const Eigen::VectorXcd c = llt.solve(rhs);

    GraphRepresenter rep{FreeSeries(h.dim()), c(0).real(), std::move(component)};
    for (Eigen::Index k = 0; k < size; ++k) rep.coefficients.add_term(rep.component[static_cast<std::size_t>(k)], c(k));
    if (!(rep.norm_sq > 0.0))
        throw std::runtime_error("graph_representer: internal error, non-positive representer norm");
    return rep;
}

/// A = c / ||v||, B_i = H_i A (exact product, degree <= N + deg H_i); a_0 = ||v|| > 0.
inline SmirnovPair canonical_pair(const SymbolColumn& h, int n, const EngineOptions& opts = {}) {
    const GraphRepresenter rep = graph_representer(h, n, opts);
    const double norm = std::sqrt(rep.norm_sq);
    SmirnovPair pair{FreeSeries(h.dim()), {}, n, rep.norm_sq, rep.component.size()};
    for (const auto& [w, c] : rep.coefficients.terms())
        pair.a.add_term(w, w.empty() ? Complex(norm) : c / norm);
    for (const auto& hi : h.entries()) pair.b.push_back(cauchy_product(hi, pair.a));
    return pair;
}

inline FreeSeries a_inverse(const SmirnovPair& pair, int n) {
    if (!(pair.a0() > 0.0)) throw std::domain_error("a_inverse: a_0 must be positive");
    return invert(pair.a, n);
}

/// Symbol t_mu of Phi^* Phi for the stacked column Phi = (A; B_1; ...):
/// (Phi^* Phi)[mu beta, beta] = t_mu and (Phi^* Phi)[beta, mu beta] = conj(t_mu).
inline std::map<Word, Complex> column_gram_symbol(const SmirnovPair& pair, int max_len) {
    std::map<Word, Complex> t;
    auto accumulate = [&](const FreeSeries& phi) {
        for (const auto& [w, c] : phi.terms()) {
            for (std::size_t k = 0; k <= w.size(); ++k) {
                if (static_cast<int>(w.size() - k) > max_len) continue;
                auto [gamma, mu] = split_at(w, k);
                const Complex pg = phi.coeff(gamma);
                if (pg != Complex{}) t[mu] += std::conj(pg) * c;
            }
        }
    };
    accumulate(pair.a);
    for (const auto& b : pair.b) accumulate(b);
    return t;
}

/// Compression of Phi^* Phi - I to the degree <= k basis, assembled from the symbol.
inline Eigen::MatrixXcd isometry_defect_block(const SmirnovPair& pair, int k) {
    const int d = pair.a.dim();
    auto t = column_gram_symbol(pair, k);
    t[Word{}] -= 1.0;
    const auto basis = enumerate_words(d, k);
    const auto size = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(size, size);
    for (Eigen::Index col = 0; col < size; ++col) {
        const Word& beta = basis[static_cast<std::size_t>(col)];
        for (const auto& [mu, tm] : t) {
            if (static_cast<int>(mu.size() + beta.size()) > k) break;
            const auto row = static_cast<Eigen::Index>(word_index(concat(mu, beta), d));
            e(row, col) += tm;
            if (!mu.empty()) e(col, row) += std::conj(tm);
        }
    }
    return e;
}

struct VerificationReport {
    double isometry_residual = 0.0;
    double factorization_residual = 0.0;
    double norm_identity_residual = 0.0;
    double invertibility_margin = 0.0;
    int truncation = 0;
    int headroom_degree = 0;
    int tuples_sampled = 0;
    std::string isometry_method;  // "dense" or "symbol_l1_bound"

    bool passes(double tol) const {
        return isometry_residual <= tol && factorization_residual <= tol && norm_identity_residual <= tol &&
               invertibility_margin > 0.0;
    }
};

struct VerifyOptions {
    int tuples = 12;
    std::uint64_t seed = 0;
    /// Headroom blocks with at most this many words get an exact spectral norm;
    /// larger ones are bounded by |t_0 - 1| + 2 sum_{mu != 0} |t_mu|.
    std::size_t dense_limit = 512;
};

inline double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

inline VerificationReport verify_pair(const SymbolColumn& h, const SmirnovPair& pair, int n,
                                      const VerifyOptions& opts = {}) {
    VerificationReport rep;
    rep.truncation = n;
    rep.headroom_degree = std::max(0, n - h.max_degree() - 1);
    const int d = h.dim();

    // (a) column isometry on the headroom block
    if (word_count(d, rep.headroom_degree) <= opts.dense_limit) {
        const Eigen::MatrixXcd e = isometry_defect_block(pair, rep.headroom_degree);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
        rep.isometry_residual = es.eigenvalues().cwiseAbs().maxCoeff();
        rep.isometry_method = "dense";
    } else {
        auto t = column_gram_symbol(pair, rep.headroom_degree);
        t[Word{}] -= 1.0;
        double bound = 0.0;
        for (const auto& [mu, tm] : t) bound += (mu.empty() ? 1.0 : 2.0) * std::abs(tm);
        rep.isometry_residual = bound;
        rep.isometry_method = "symbol_l1_bound";
    }

    // (b), (d) pointwise factorization and invertibility at sampled tuples
    Rng rng(opts.seed);
    std::vector<MatrixTuple> tuples;
    for (int s = 0; s < std::max(opts.tuples, 10); ++s) tuples.push_back(random_ball_tuple(rng, d, 1 + s % 3));
    std::vector<double> fact(tuples.size(), 0.0);
    std::vector<double> margin(tuples.size(), 0.0);
    parallel_for(tuples.size(), [&](std::size_t s) {
        const Eigen::MatrixXcd ax = eval(pair.a, tuples[s]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ax);
        margin[s] = svd.singularValues().minCoeff();
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Eigen::MatrixXcd r = eval(h.entries()[i], tuples[s]) * ax - eval(pair.b[i], tuples[s]);
            fact[s] = std::max(fact[s], spectral_norm(r));
        }
    });
    rep.tuples_sampled = static_cast<int>(tuples.size());
    rep.factorization_residual = *std::max_element(fact.begin(), fact.end());
    rep.invertibility_margin = *std::min_element(margin.begin(), margin.end());

    // (c) norm identity ||A^{-1}||^2 = 1 + sum ||H_i||^2
    rep.norm_identity_residual = std::abs(fock_norm_sq(a_inverse(pair, n)) - 1.0 - h.norm_sq());
    return rep;
}

struct FejerRieszFactor {
    double c0;
    Complex c1;
};

/// Outer factor of r0 + r1 z + conj(r1) conj(z) = |c0 + c1 z|^2 on |z| = 1,
/// with c0 > |c1| and c1 carrying the phase of r1.
inline FejerRieszFactor fejer_riesz_degree1(double r0, Complex r1) {
    const double m = std::abs(r1);
    if (!(r0 > 2.0 * m))
        throw std::domain_error("fejer_riesz_degree1: symbol not strictly positive on the circle (r0 <= 2|r1|)");
    const double c0 = std::sqrt(0.5 * (r0 + std::sqrt(r0 * r0 - 4.0 * m * m)));
    return {c0, r1 / c0};
}

}  // namespace fock_smirnov
