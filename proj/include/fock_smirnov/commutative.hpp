#pragma once

// Drury-Arveson side: multi-index series with the H^2_d norm, the
// norm-preserving free lift, symmetrization, and commutative Smirnov pairs
// obtained by pushing the free canonical pair down to commuting arguments.

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fock_smirnov/series.hpp"
#include "fock_smirnov/smirnov.hpp"
#include "fock_smirnov/words.hpp"

namespace fock_smirnov {

class MultiIndexSeries {
public:
    using Terms = std::map<MultiIndex, Complex>;

    explicit MultiIndexSeries(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("MultiIndexSeries: d must be >= 1");
    }
    MultiIndexSeries(int d, const Terms& terms) : MultiIndexSeries(d) {
        for (const auto& [n, c] : terms) add_term(n, c);
    }

    static MultiIndexSeries constant(int d, Complex c) {
        MultiIndexSeries h(d);
        h.add_term(MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)), c);
        return h;
    }

    int dim() const noexcept { return d_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first.total(); }

    Complex coeff(const MultiIndex& n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? Complex{} : it->second;
    }
    Complex constant_term() const { return coeff(MultiIndex(std::vector<int>(static_cast<std::size_t>(d_), 0))); }

    void add_term(const MultiIndex& n, Complex c) {
        if (n.dim() != d_) throw std::invalid_argument("MultiIndexSeries: index has wrong length");
        for (int k : n.counts)
            if (k < 0) throw std::invalid_argument("MultiIndexSeries: negative exponent");
        if (c == Complex{}) return;
        auto [it, inserted] = terms_.try_emplace(n, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{}) terms_.erase(it);
        }
    }

    MultiIndexSeries truncated(int n) const {
        MultiIndexSeries out(d_);
        for (const auto& [m, c] : terms_)
            if (m.total() <= n) out.terms_.emplace(m, c);
        return out;
    }

private:
    int d_;
    Terms terms_;
};

inline MultiIndexSeries operator+(const MultiIndexSeries& f, const MultiIndexSeries& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("add: dimension mismatch");
    MultiIndexSeries out = f;
    for (const auto& [n, c] : g.terms()) out.add_term(n, c);
    return out;
}

inline MultiIndexSeries operator-(const MultiIndexSeries& f, const MultiIndexSeries& g) {
    MultiIndexSeries out = f;
    for (const auto& [n, c] : g.terms()) out.add_term(n, -c);
    return out;
}

/// n! / |n|!, the squared H^2_d norm of z^n.
inline double monomial_weight(const MultiIndex& n) {
    double w = 1.0;
    int running = 0;
    for (int k : n.counts)
        for (int j = 1; j <= k; ++j) {
            ++running;
            w *= static_cast<double>(j) / static_cast<double>(running);
        }
    return w;
}

inline double da_norm_sq(const MultiIndexSeries& h) {
    double s = 0.0;
    for (const auto& [n, c] : h.terms()) s += std::norm(c) * monomial_weight(n);
    return s;
}

inline Complex eval_point(const MultiIndexSeries& h, const std::vector<Complex>& z) {
    if (static_cast<int>(z.size()) != h.dim()) throw std::invalid_argument("eval_point: point has wrong dimension");
    Complex s{};
    for (const auto& [n, c] : h.terms()) {
        Complex m = c;
        for (std::size_t k = 0; k < z.size(); ++k) m *= std::pow(z[k], n.counts[k]);
        s += m;
    }
    return s;
}

/// Commutative product truncated to total degree <= n.
inline MultiIndexSeries multiply(const MultiIndexSeries& f, const MultiIndexSeries& g, int n) {
    if (f.dim() != g.dim()) throw std::invalid_argument("multiply: dimension mismatch");
    MultiIndexSeries out(f.dim());
    for (const auto& [a, x] : f.terms())
        for (const auto& [b, y] : g.terms())
            if (a.total() + b.total() <= n) out.add_term(a + b, x * y);
    return out;
}

/// 1/f to total degree <= n by the graded recursion.
inline MultiIndexSeries invert(const MultiIndexSeries& f, int n) {
    const Complex f0 = f.constant_term();
    if (f0 == Complex{}) throw std::domain_error("invert: zero constant term, series is not invertible");
    MultiIndexSeries g = MultiIndexSeries::constant(f.dim(), 1.0 / f0);
    for (int k = 1; k <= n; ++k) {
        const MultiIndexSeries r = multiply(f, g, k);
        MultiIndexSeries step(f.dim());
        for (const auto& [m, c] : r.terms())
            if (m.total() == k) step.add_term(m, -c / f0);
        g = g + step;
    }
    return g;
}

/// Coefficient (n!/|n|!) h_n on every word with letter count n. Isometric into
/// the Fock space, and reproduces h on commuting scalar arguments.
inline FreeSeries free_lift(const MultiIndexSeries& h) {
    FreeSeries out(h.dim());
    for (const auto& [n, c] : h.terms()) {
        const Complex weighted = c * monomial_weight(n);
        for (const auto& w : words_with_counts(n)) out.add_term(w, weighted);
    }
    return out;
}

/// h_n = sum_{lambda(alpha) = n} f_alpha.
inline MultiIndexSeries symmetrize(const FreeSeries& f) {
    MultiIndexSeries out(f.dim());
    for (const auto& [w, c] : f.terms()) out.add_term(letter_count(w, f.dim()), c);
    return out;
}

inline double max_coeff_diff(const MultiIndexSeries& f, const MultiIndexSeries& g) {
    double m = 0.0;
    const auto diff = f - g;
    for (const auto& [n, c] : diff.terms()) m = std::max(m, std::abs(c));
    return m;
}

/// All multi-indices of total degree <= n, graded-lex.
inline std::vector<MultiIndex> enumerate_multi_indices(int d, int n) {
    std::vector<MultiIndex> out;
    for (int total = 0; total <= n; ++total) {
        std::vector<int> cur(static_cast<std::size_t>(d), 0);
        // lex-ordered compositions of total into d parts
        std::vector<MultiIndex> layer;
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == d - 1) {
                cur[static_cast<std::size_t>(pos)] = left;
                layer.emplace_back(cur);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, total);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

/// Multiplication by f on the orthonormal monomial basis e_n = sqrt(|n|!/n!) z^n,
/// degree <= n into degree <= n + deg f.
struct MultiIndexOperator {
    int d = 1;
    int domain_degree = 0;
    int codomain_degree = 0;
    Eigen::MatrixXcd matrix;
};

inline MultiIndexOperator da_mult_matrix(const MultiIndexSeries& f, int n, int out_degree = -1) {
    const int d = f.dim();
    if (out_degree < 0) out_degree = n + f.degree();
    const auto dom = enumerate_multi_indices(d, n);
    const auto cod = enumerate_multi_indices(d, out_degree);
    std::map<MultiIndex, Eigen::Index> row;
    for (std::size_t k = 0; k < cod.size(); ++k) row.emplace(cod[k], static_cast<Eigen::Index>(k));
    MultiIndexOperator op{d, n, out_degree,
                          Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(cod.size()),
                                                 static_cast<Eigen::Index>(dom.size()))};
    for (std::size_t col = 0; col < dom.size(); ++col) {
        const double in_weight = monomial_weight(dom[col]);
        for (const auto& [m, c] : f.terms()) {
            const MultiIndex target = dom[col] + m;
            if (target.total() > out_degree) continue;
            op.matrix(row.at(target), static_cast<Eigen::Index>(col)) +=
                c * std::sqrt(monomial_weight(target) / in_weight);
        }
    }
    return op;
}

/// Largest singular value of the stacked column (f_1; f_2; ...) on degree <= n.
inline double column_norm(const std::vector<MultiIndexSeries>& column, int n) {
    if (column.empty()) return 0.0;
    int out = 0;
    for (const auto& f : column) out = std::max(out, n + f.degree());
    const auto dom = static_cast<Eigen::Index>(enumerate_multi_indices(column.front().dim(), n).size());
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(dom, dom);
    for (const auto& f : column) {
        const auto m = da_mult_matrix(f, n, out).matrix;
        gram.noalias() += m.adjoint() * m;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

struct CommutativePair {
    MultiIndexSeries a;
    std::vector<MultiIndexSeries> b;
    MultiIndexSeries a_inverse;  // symmetrization of A^{-1}
    SmirnovPair free_pair;
};

/// Pushes the free canonical pair of the given lifts down to commuting arguments.
inline CommutativePair commutative_smirnov_from_lifts(const SymbolColumn& lifts, int n, const EngineOptions& opts = {}) {
    SmirnovPair pair = canonical_pair(lifts, n, opts);
    CommutativePair out{symmetrize(pair.a), {}, symmetrize(a_inverse(pair, n)), std::move(pair)};
    for (const auto& b : out.free_pair.b) out.b.push_back(symmetrize(b));
    return out;
}

/// Lifts each h_i with the norm-preserving lift, then pushes down.
inline CommutativePair commutative_smirnov(int d, const std::vector<MultiIndexSeries>& hs, int n,
                                           const EngineOptions& opts = {}) {
    std::vector<FreeSeries> lifts;
    for (const auto& h : hs) {
        if (h.dim() != d) throw std::invalid_argument("commutative_smirnov: dimension mismatch");
        lifts.push_back(free_lift(h));
    }
    return commutative_smirnov_from_lifts(SymbolColumn(d, std::move(lifts)), n, opts);
}

}  // namespace fock_smirnov
