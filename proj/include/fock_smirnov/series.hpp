#pragma once

// Truncated free power series F(X) ~ sum_alpha c_alpha X^alpha and their
// arithmetic: Cauchy products, inversion, transposition, Fock norms and
// evaluation on matrix tuples in the free ball.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fock_smirnov/words.hpp"

namespace fock_smirnov {

using Complex = std::complex<double>;

class FreeSeries {
public:
    using Terms = std::map<Word, Complex>;

    explicit FreeSeries(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("FreeSeries: d must be >= 1");
    }
    FreeSeries(int d, Terms terms) : FreeSeries(d) {
        for (auto& [w, c] : terms) add_term(w, c);
    }

    static FreeSeries constant(int d, Complex c) {
        FreeSeries f(d);
        f.add_term(Word{}, c);
        return f;
    }
    static FreeSeries monomial(int d, const Word& w, Complex c = 1.0) {
        FreeSeries f(d);
        f.add_term(w, c);
        return f;
    }

    int dim() const noexcept { return d_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t support_size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Longest word carrying a nonzero coefficient; 0 for the zero series.
    int degree() const noexcept {
        return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size());
    }

    Complex coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Complex{} : it->second;
    }
    Complex constant_term() const { return coeff(Word{}); }

    /// Accumulates c onto the coefficient of w, dropping exact zeros.
    void add_term(const Word& w, Complex c) {
        if (!w.fits(d_)) throw std::invalid_argument("FreeSeries: word has a letter outside {1..d}");
        if (c == Complex{}) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{}) terms_.erase(it);
        }
    }

    /// Terms of length <= n.
    FreeSeries truncated(int n) const {
        FreeSeries out(d_);
        for (const auto& [w, c] : terms_)
            if (static_cast<int>(w.size()) <= n) out.terms_.emplace(w, c);
        return out;
    }

private:
    int d_;
    Terms terms_;
};

inline void require_same_dim(const FreeSeries& f, const FreeSeries& g, const char* op) {
    if (f.dim() != g.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(f.dim()) + " vs " + std::to_string(g.dim()) + ")");
}

inline FreeSeries operator+(const FreeSeries& f, const FreeSeries& g) {
    require_same_dim(f, g, "add");
    FreeSeries out = f;
    for (const auto& [w, c] : g.terms()) out.add_term(w, c);
    return out;
}

inline FreeSeries scale(Complex s, const FreeSeries& f) {
    FreeSeries out(f.dim());
    if (s == Complex{}) return out;
    for (const auto& [w, c] : f.terms()) out.add_term(w, s * c);
    return out;
}

inline FreeSeries operator-(const FreeSeries& f, const FreeSeries& g) { return f + scale(-1.0, g); }

/// (FG)_alpha = sum over splits beta gamma = alpha of f_beta g_gamma, kept up to degree n.
inline FreeSeries cauchy_product(const FreeSeries& f, const FreeSeries& g, int n) {
    require_same_dim(f, g, "cauchy_product");
    if (n < 0) throw std::invalid_argument("cauchy_product: negative truncation");
    FreeSeries out(f.dim());
    for (const auto& [u, a] : f.terms()) {
        if (static_cast<int>(u.size()) > n) break;
        for (const auto& [v, b] : g.terms()) {
            if (static_cast<int>(u.size() + v.size()) > n) break;
            out.add_term(concat(u, v), a * b);
        }
    }
    return out;
}

/// Untruncated product of two finite series.
inline FreeSeries cauchy_product(const FreeSeries& f, const FreeSeries& g) {
    return cauchy_product(f, g, f.degree() + g.degree());
}

inline double fock_norm_sq(const FreeSeries& f) {
    double s = 0.0;
    for (const auto& [w, c] : f.terms()) s += std::norm(c);
    return s;
}

inline FreeSeries transpose_series(const FreeSeries& f) {
    FreeSeries out(f.dim());
    for (const auto& [w, c] : f.terms()) out.add_term(transpose(w), c);
    return out;
}

/// Left inverse to degree n: g_alpha = -(1/f_0) sum_{beta gamma = alpha, beta != 0} f_beta g_gamma.
/// Only words reachable as concatenations of f's nonconstant support are visited.
inline FreeSeries invert(const FreeSeries& f, int n) {
    const Complex f0 = f.constant_term();
    if (f0 == Complex{}) throw std::domain_error("invert: zero constant term, series is not invertible");
    if (n < 0) throw std::invalid_argument("invert: negative truncation");

    std::vector<std::pair<Word, Complex>> tail;
    for (const auto& [w, c] : f.terms())
        if (!w.empty() && static_cast<int>(w.size()) <= n) tail.emplace_back(w, c);

    FreeSeries g(f.dim());
    // Pending sums, keyed in graded order: every contribution to a word comes
    // from a strictly shorter one, so the smallest key is always complete.
    std::map<Word, Complex> pending;
    auto push = [&](const Word& gamma, Complex g_gamma) {
        for (const auto& [beta, fb] : tail) {
            if (static_cast<int>(beta.size() + gamma.size()) > n) continue;
            pending[concat(beta, gamma)] += fb * g_gamma;
        }
    };
    const Complex g0 = 1.0 / f0;
    g.add_term(Word{}, g0);
    push(Word{}, g0);
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const Complex value = -node.mapped() / f0;
        if (value == Complex{}) continue;
        g.add_term(node.key(), value);
        push(node.key(), value);
    }
    return g;
}

/// d-tuple of n x n complex matrices.
struct MatrixTuple {
    std::vector<Eigen::MatrixXcd> mats;

    MatrixTuple() = default;
    explicit MatrixTuple(std::vector<Eigen::MatrixXcd> m) : mats(std::move(m)) { validate(); }

    /// Tuple of 1x1 matrices, i.e. a point of C^d.
    static MatrixTuple scalars(const std::vector<Complex>& z) {
        std::vector<Eigen::MatrixXcd> m;
        for (Complex c : z) m.push_back(Eigen::MatrixXcd::Constant(1, 1, c));
        return MatrixTuple(std::move(m));
    }
    static MatrixTuple zeros(int d, int n) {
        return MatrixTuple(std::vector<Eigen::MatrixXcd>(static_cast<std::size_t>(d), Eigen::MatrixXcd::Zero(n, n)));
    }

    int dim() const noexcept { return static_cast<int>(mats.size()); }
    int size() const noexcept { return mats.empty() ? 0 : static_cast<int>(mats.front().rows()); }

    void validate() const {
        if (mats.empty()) throw std::invalid_argument("MatrixTuple: empty tuple");
        const auto n = mats.front().rows();
        for (const auto& m : mats)
            if (m.rows() != n || m.cols() != n)
                throw std::invalid_argument("MatrixTuple: matrices must all be n x n with a common n");
    }
};

/// Exact finite sum sum_alpha c_alpha X^alpha. Word powers are cached by prefix.
inline Eigen::MatrixXcd eval(const FreeSeries& f, const MatrixTuple& x) {
    x.validate();
    if (x.dim() != f.dim())
        throw std::invalid_argument("eval: tuple has " + std::to_string(x.dim()) +
                                    " matrices, series has d = " + std::to_string(f.dim()));
    const int n = x.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    std::map<Word, Eigen::MatrixXcd> powers;
    powers.emplace(Word{}, Eigen::MatrixXcd::Identity(n, n));
    std::function<const Eigen::MatrixXcd&(const Word&)> power = [&](const Word& w) -> const Eigen::MatrixXcd& {
        if (auto it = powers.find(w); it != powers.end()) return it->second;
        auto [head, last] = split_at(w, w.size() - 1);
        Eigen::MatrixXcd p = power(head) * x.mats[static_cast<std::size_t>(last[0] - 1)];
        return powers.emplace(w, std::move(p)).first->second;
    };
    for (const auto& [w, c] : f.terms()) out += c * power(w);
    return out;
}

struct BallMembership {
    bool inside;
    double margin;  // 1 - ||sum_j X_j X_j^*||
};

inline BallMembership in_free_ball(const MatrixTuple& x) {
    x.validate();
    const int n = x.size();
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& m : x.mats) s += m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
    const double margin = 1.0 - es.eigenvalues().maxCoeff();
    return {margin > 0.0, margin};
}

/// Coefficient vector on the degree <= n word basis (terms above n are dropped).
inline Eigen::VectorXcd coeff_vector(const FreeSeries& f, int n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(word_count(f.dim(), n)));
    for (const auto& [w, c] : f.terms())
        if (static_cast<int>(w.size()) <= n) v(static_cast<Eigen::Index>(word_index(w, f.dim()))) = c;
    return v;
}

inline FreeSeries from_coeff_vector(int d, const Eigen::VectorXcd& v) {
    FreeSeries f(d);
    int n = 0;
    while (word_count(d, n) < static_cast<std::size_t>(v.size())) ++n;
    if (word_count(d, n) != static_cast<std::size_t>(v.size()))
        throw std::invalid_argument("from_coeff_vector: length is not a graded word count");
    const auto basis = enumerate_words(d, n);
    for (std::size_t k = 0; k < basis.size(); ++k) f.add_term(basis[k], v(static_cast<Eigen::Index>(k)));
    return f;
}

/// Max coefficient modulus of f - g over the union of supports.
inline double max_coeff_diff(const FreeSeries& f, const FreeSeries& g) {
    double m = 0.0;
    const auto diff = f - g;
    for (const auto& [w, c] : diff.terms()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace fock_smirnov
