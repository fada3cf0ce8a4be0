#pragma once

// Matrix models of operators on the truncated Fock space: creation operators,
// the transpose unitary, left/right multiplication by polynomials, and the
// defect Gram matrix I + sum_i M_{H_i}^* M_{H_i}.

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fock_smirnov/parallel.hpp"
#include "fock_smirnov/series.hpp"
#include "fock_smirnov/words.hpp"

namespace fock_smirnov {

/// Operator from the degree <= domain_degree basis into the degree <=
/// codomain_degree basis, both in graded-lex word order.
struct TruncatedOperator {
    int d = 1;
    int domain_degree = 0;
    int codomain_degree = 0;
    Eigen::MatrixXcd matrix;

    Eigen::Index rows() const { return matrix.rows(); }
    Eigen::Index cols() const { return matrix.cols(); }
};

enum class Side { left, right };

namespace detail {

inline void check_letter(int d, int i) {
    if (i < 1 || i > d)
        throw std::out_of_range("letter " + std::to_string(i) + " outside {1.." + std::to_string(d) + "}");
}

/// Assembles column k as coeff_vector(column_series(basis[k])) on degree <= out_degree.
template <typename ColumnFn>
TruncatedOperator assemble(int d, int n, int out_degree, ColumnFn&& column_series) {
    const auto basis = enumerate_words(d, n);
    TruncatedOperator op{d, n, out_degree,
                         Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(word_count(d, out_degree)),
                                                static_cast<Eigen::Index>(basis.size()))};
    parallel_for(basis.size(), [&](std::size_t k) {
        const FreeSeries col = column_series(basis[k]);
        for (const auto& [w, c] : col.terms())
            op.matrix(static_cast<Eigen::Index>(word_index(w, d)), static_cast<Eigen::Index>(k)) = c;
    });
    return op;
}

}  // namespace detail

/// L_i xi_alpha = xi_{i alpha} (left) or R_i xi_alpha = xi_{alpha i} (right), degree n -> n+1.
inline TruncatedOperator creation_matrix(int d, int i, int n, Side side) {
    detail::check_letter(d, i);
    return detail::assemble(d, n, n + 1, [&](const Word& a) {
        return FreeSeries::monomial(d, side == Side::left ? concat(Word{i}, a) : concat(a, Word{i}));
    });
}

/// W xi_alpha = xi_{alpha^dagger} on the degree <= n basis.
inline TruncatedOperator transpose_unitary(int d, int n) {
    return detail::assemble(d, n, n, [&](const Word& a) { return FreeSeries::monomial(d, transpose(a)); });
}

/// G -> F G from degree <= n into degree <= n + deg F. Exact for polynomial F.
inline TruncatedOperator left_mult_matrix(const FreeSeries& f, int n) {
    const int d = f.dim();
    return detail::assemble(d, n, n + f.degree(), [&](const Word& a) {
        return cauchy_product(f, FreeSeries::monomial(d, a));
    });
}

/// G -> G F from degree <= n into degree <= n + deg F.
inline TruncatedOperator right_mult_matrix(const FreeSeries& f, int n) {
    const int d = f.dim();
    return detail::assemble(d, n, n + f.degree(), [&](const Word& a) {
        return cauchy_product(FreeSeries::monomial(d, a), f);
    });
}

/// Adjoint of left multiplication, applied to a finite series:
/// (M_H^* F)_beta = sum_delta conj(h_delta) f_{delta beta}.
inline FreeSeries left_mult_adjoint(const FreeSeries& h, const FreeSeries& f) {
    require_same_dim(h, f, "left_mult_adjoint");
    FreeSeries out(f.dim());
    for (const auto& [w, c] : f.terms()) {
        for (std::size_t k = 0; k <= w.size(); ++k) {
            auto [prefix, rest] = split_at(w, k);
            const Complex hk = h.coeff(prefix);
            if (hk != Complex{}) out.add_term(rest, std::conj(hk) * c);
        }
    }
    return out;
}

/// Right backward shift R_j^*: xi_{alpha j} -> xi_alpha, other words -> 0.
inline FreeSeries right_backward_shift(const FreeSeries& f, int j) {
    detail::check_letter(f.dim(), j);
    FreeSeries out(f.dim());
    for (const auto& [w, c] : f.terms())
        if (!w.empty() && w[w.size() - 1] == j) out.add_term(split_at(w, w.size() - 1).first, c);
    return out;
}

inline int max_degree(const std::vector<FreeSeries>& hs) {
    int m = 0;
    for (const auto& h : hs) m = std::max(m, h.degree());
    return m;
}

inline int common_dim(const std::vector<FreeSeries>& hs, int fallback) {
    if (hs.empty()) return fallback;
    for (const auto& h : hs)
        if (h.dim() != hs.front().dim()) throw std::invalid_argument("H list: dimension mismatch");
    return hs.front().dim();
}

/// Column alpha of G = I + sum_i M_{H_i}^* M_{H_i}, restricted to words of length <= n.
inline FreeSeries gram_column(const std::vector<FreeSeries>& hs, const Word& alpha, int d, int n) {
    FreeSeries col = FreeSeries::monomial(d, alpha);
    const FreeSeries basis_vec = FreeSeries::monomial(d, alpha);
    for (const auto& h : hs) col = col + left_mult_adjoint(h, cauchy_product(h, basis_vec));
    return col.truncated(n);
}

/// Dense I + sum_i M_{H_i}^H M_{H_i} on the degree <= n basis, each M_{H_i}
/// the exact (n -> n + deg H_i) matrix.
inline Eigen::MatrixXcd gram_defect(const std::vector<FreeSeries>& hs, int d, int n) {
    d = common_dim(hs, d);
    const auto size = static_cast<Eigen::Index>(word_count(d, n));
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(size, size);
    for (const auto& h : hs) {
        const auto m = left_mult_matrix(h, n).matrix;
        g.noalias() += m.adjoint() * m;
    }
    return g;
}

}  // namespace fock_smirnov
