#pragma once

// JSON wire formats.
//   Word:             [1, 2]        ([] is the empty word)
//   FreeSeries:       {"d": 2, "terms": [{"word": [1, 2], "re": 0.5, "im": 0.0}, ...]}
//   MultiIndexSeries: {"d": 2, "terms": [{"index": [1, 1], "re": 1.0, "im": 0.0}, ...]}
//   CnpSample:        {"d": 2, "points": [{"label": "x0", "u": [[re, im], ...]}, ...]}
//   MatrixTuple:      {"matrices": [[[[re, im], ...], ...], ...]}  (row-major)

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fock_smirnov/cnp.hpp"
#include "fock_smirnov/commutative.hpp"
#include "fock_smirnov/fock_ops.hpp"
#include "fock_smirnov/series.hpp"
#include "fock_smirnov/smirnov.hpp"

namespace fock_smirnov::io {

using json = nlohmann::json;

/// Rounds to 12 significant digits so that the shortest round-trip printing
/// used by the serializer emits at most 12.
inline double round12(double x) {
    if (!std::isfinite(x)) return x;
    if (x == 0.0) return 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::strtod(buf, nullptr);
}

inline json complex_to_json(Complex c) { return json::array({round12(c.real()), round12(c.imag())}); }

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json word_to_json(const Word& w) { return json(w.letters()); }

inline Word word_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("word must be an array of letters");
    return Word(j.get<std::vector<int>>());
}

inline json to_json(const FreeSeries& f) {
    json terms = json::array();
    for (const auto& [w, c] : f.terms())
        terms.push_back({{"word", word_to_json(w)}, {"re", round12(c.real())}, {"im", round12(c.imag())}});
    return {{"d", f.dim()}, {"terms", terms}};
}

inline FreeSeries free_series_from_json(const json& j) {
    FreeSeries f(j.at("d").get<int>());
    for (const auto& t : j.at("terms")) {
        const Word w = word_from_json(t.at("word"));
        if (!w.fits(f.dim())) throw std::invalid_argument("term word has a letter outside {1..d}");
        f.add_term(w, {t.value("re", 0.0), t.value("im", 0.0)});
    }
    return f;
}

inline json to_json(const MultiIndexSeries& h) {
    json terms = json::array();
    for (const auto& [n, c] : h.terms())
        terms.push_back({{"index", n.counts}, {"re", round12(c.real())}, {"im", round12(c.imag())}});
    return {{"d", h.dim()}, {"terms", terms}};
}

inline MultiIndexSeries multi_index_series_from_json(const json& j) {
    MultiIndexSeries h(j.at("d").get<int>());
    for (const auto& t : j.at("terms"))
        h.add_term(MultiIndex(t.at("index").get<std::vector<int>>()), {t.value("re", 0.0), t.value("im", 0.0)});
    return h;
}

inline json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols) throw std::invalid_argument("matrix rows differ in length");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row.at(static_cast<std::size_t>(c)));
    }
    return m;
}

inline json to_json(const TruncatedOperator& op) {
    return {{"d", op.d},
            {"domain_degree", op.domain_degree},
            {"codomain_degree", op.codomain_degree},
            {"matrix", matrix_to_json(op.matrix)}};
}

inline MatrixTuple matrix_tuple_from_json(const json& j) {
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json(m));
    return MatrixTuple(std::move(mats));
}

inline std::vector<Complex> point_from_json(const json& j) {
    std::vector<Complex> z;
    for (const auto& c : j) z.push_back(complex_from_json(c));
    return z;
}

inline json point_to_json(const std::vector<Complex>& z) {
    json out = json::array();
    for (Complex c : z) out.push_back(complex_to_json(c));
    return out;
}

inline json to_json(const CnpSample& s) {
    json pts = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) pts.push_back({{"label", s.labels[k]}, {"u", point_to_json(s.u[k])}});
    return {{"d", s.d}, {"points", pts}};
}

inline CnpSample cnp_sample_from_json(const json& j) {
    CnpSample s;
    s.d = j.at("d").get<int>();
    for (const auto& p : j.at("points")) {
        s.labels.push_back(p.value("label", "x" + std::to_string(s.labels.size())));
        s.u.push_back(point_from_json(p.at("u")));
    }
    s.validate();
    return s;
}

inline json to_json(const VerificationReport& r) {
    return {{"isometry_residual", round12(r.isometry_residual)},
            {"factorization_residual", round12(r.factorization_residual)},
            {"norm_identity_residual", round12(r.norm_identity_residual)},
            {"invertibility_margin", round12(r.invertibility_margin)},
            {"truncation", r.truncation},
            {"headroom_degree", r.headroom_degree},
            {"tuples_sampled", r.tuples_sampled},
            {"isometry_method", r.isometry_method}};
}

inline json to_json(const SmirnovPair& p) {
    json bs = json::array();
    for (const auto& b : p.b) bs.push_back(to_json(b));
    return {{"A", to_json(p.a)},
            {"B", bs},
            {"a0", round12(p.a0())},
            {"truncation", p.truncation},
            {"representer_norm_sq", round12(p.representer_norm_sq)},
            {"component_size", p.component_size},
            {"phase", p.phase}};
}

}  // namespace fock_smirnov::io
