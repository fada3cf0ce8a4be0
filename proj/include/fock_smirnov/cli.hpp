#pragma once

// Batch front end: one JSON problem file in, one JSON report out.
//
// Problem file keys (all optional except what the mode needs):
//   "mode"   : factor | lift | eval | verify | cnp-check
//   "degree" : truncation N >= 1 (default 10)
//   "tol"    : residual tolerance > 0 (default 1e-8)
//   "seed"   : sampling seed (default 0)
//   "d"      : ambient dimension, only needed for an empty H list
//   "H"      : FreeSeries or array of them
//   "h"      : MultiIndexSeries or array of them (factor lifts them)
//   "A","B"  : a candidate pair for verify
//   "X" / "z": MatrixTuple / scalar point for eval
//   "sample" : CnpSample for cnp-check
// Command-line flags override the file.
//
// Exit codes: 0 success, 1 residual failure, 2 input error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fock_smirnov/cnp.hpp"
#include "fock_smirnov/commutative.hpp"
#include "fock_smirnov/json_io.hpp"
#include "fock_smirnov/series.hpp"
#include "fock_smirnov/smirnov.hpp"

namespace fock_smirnov::cli {

using io::json;

enum ExitCode : int { success = 0, residual_failure = 1, input_error = 2 };

struct Options {
    std::string input;
    std::optional<std::string> mode;
    std::optional<int> degree;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string output = "stdout";
};

struct ProblemSpec {
    std::string mode;
    int degree = 10;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    json payload;
};

/// Thrown for anything wrong with the problem file or flags.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& modes() {
    static const std::vector<std::string> m{"factor", "lift", "eval", "verify", "cnp-check"};
    return m;
}

inline ProblemSpec make_problem(json payload, const Options& opts) {
    ProblemSpec spec;
    spec.payload = std::move(payload);
    if (!spec.payload.is_object()) throw InputError("problem file must hold a JSON object");
    try {
        spec.mode = opts.mode.value_or(spec.payload.value("mode", std::string{}));
        spec.degree = opts.degree.value_or(spec.payload.value("degree", 10));
        spec.tol = opts.tol.value_or(spec.payload.value("tol", 1e-8));
        spec.seed = opts.seed.value_or(spec.payload.value("seed", std::uint64_t{0}));
    } catch (const json::exception& e) {
        throw InputError(std::string("bad problem header: ") + e.what());
    }
    if (std::find(modes().begin(), modes().end(), spec.mode) == modes().end())
        throw InputError("unknown mode '" + spec.mode + "'");
    if (spec.degree < 1) throw InputError("degree must be >= 1");
    if (!(spec.tol > 0.0)) throw InputError("tol must be > 0");
    return spec;
}

inline ProblemSpec load_problem(const Options& opts) {
    std::ifstream in(opts.input);
    if (!in) throw InputError("cannot open input '" + opts.input + "'");
    json payload;
    try {
        payload = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return make_problem(std::move(payload), opts);
}

namespace detail {

template <typename T, typename Parse>
std::vector<T> list_of(const json& j, Parse&& parse) {
    std::vector<T> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(parse(e));
    } else {
        out.push_back(parse(j));
    }
    return out;
}

inline std::vector<FreeSeries> free_list(const json& p, const char* key) {
    return p.contains(key) ? list_of<FreeSeries>(p.at(key), io::free_series_from_json) : std::vector<FreeSeries>{};
}

inline std::vector<MultiIndexSeries> multi_list(const json& p, const char* key) {
    return p.contains(key) ? list_of<MultiIndexSeries>(p.at(key), io::multi_index_series_from_json)
                           : std::vector<MultiIndexSeries>{};
}

inline int ambient_dim(const json& p, const std::vector<FreeSeries>& hs, const std::vector<MultiIndexSeries>& cs) {
    if (!hs.empty()) return hs.front().dim();
    if (!cs.empty()) return cs.front().dim();
    return p.value("d", 1);
}

/// The free symbol column: "H" as given, or norm-preserving lifts of "h".
inline SymbolColumn symbol_column(const json& p, std::vector<MultiIndexSeries>* commutative = nullptr) {
    const auto hs = free_list(p, "H");
    const auto cs = multi_list(p, "h");
    if (!hs.empty() && !cs.empty()) throw InputError("give either \"H\" or \"h\", not both");
    const int d = ambient_dim(p, hs, cs);
    if (commutative != nullptr) *commutative = cs;
    if (!cs.empty()) {
        std::vector<FreeSeries> lifts;
        for (const auto& h : cs) lifts.push_back(free_lift(h));
        return SymbolColumn(d, std::move(lifts));
    }
    return SymbolColumn(d, hs);
}

}  // namespace detail

struct CommandResult {
    json report;
    bool pass = true;
};

inline CommandResult cmd_factor(const ProblemSpec& spec) {
    std::vector<MultiIndexSeries> commutative;
    const SymbolColumn h = detail::symbol_column(spec.payload, &commutative);
    const SmirnovPair pair = canonical_pair(h, spec.degree);
    const VerificationReport rep = verify_pair(h, pair, spec.degree, {12, spec.seed});
    CommandResult out;
    out.pass = rep.passes(spec.tol);
    out.report = {{"mode", "factor"}, {"degree", spec.degree}, {"tol", spec.tol},
                  {"pair", io::to_json(pair)}, {"report", io::to_json(rep)}, {"pass", out.pass}};
    if (!commutative.empty()) {
        json bs = json::array();
        for (const auto& b : pair.b) bs.push_back(io::to_json(symmetrize(b)));
        out.report["commutative"] = {{"a", io::to_json(symmetrize(pair.a))},
                                     {"b", bs},
                                     {"a_inverse", io::to_json(symmetrize(a_inverse(pair, spec.degree)))}};
    }
    return out;
}

inline CommandResult cmd_lift(const ProblemSpec& spec) {
    const auto cs = detail::multi_list(spec.payload, "h");
    if (cs.empty()) throw InputError("lift needs \"h\"");
    json lifts = json::array();
    json norms = json::array();
    for (const auto& h : cs) {
        const FreeSeries f = free_lift(h);
        lifts.push_back(io::to_json(f));
        norms.push_back({{"da_norm_sq", io::round12(da_norm_sq(h))}, {"fock_norm_sq", io::round12(fock_norm_sq(f))}});
    }
    return {{{"mode", "lift"}, {"lifts", lifts}, {"norms", norms}}, true};
}

inline CommandResult cmd_eval(const ProblemSpec& spec) {
    const auto& p = spec.payload;
    auto hs = detail::free_list(p, "H");
    if (hs.empty()) hs = detail::free_list(p, "F");
    if (hs.empty()) throw InputError("eval needs \"H\"");
    MatrixTuple x;
    if (p.contains("X")) {
        x = io::matrix_tuple_from_json(p.at("X"));
    } else if (p.contains("z")) {
        x = MatrixTuple::scalars(io::point_from_json(p.at("z")));
    } else {
        throw InputError("eval needs \"X\" or \"z\"");
    }
    const BallMembership ball = in_free_ball(x);
    json values = json::array();
    for (const auto& h : hs) values.push_back(io::matrix_to_json(eval(h, x)));
    return {{{"mode", "eval"}, {"values", values}, {"in_free_ball", ball.inside},
             {"ball_margin", io::round12(ball.margin)}},
            true};
}

inline CommandResult cmd_verify(const ProblemSpec& spec) {
    const auto& p = spec.payload;
    const SymbolColumn h = detail::symbol_column(p);
    auto candidate = [&] {
        SmirnovPair given{io::free_series_from_json(p.at("A")), detail::free_list(p, "B"), spec.degree, 0.0, 0};
        if (given.b.size() != h.size()) throw InputError("\"B\" must have one entry per H entry");
        if (!(given.a0() > 0.0)) throw InputError("candidate A must have a positive constant term");
        given.representer_norm_sq = given.a0() * given.a0();
        given.phase = "given";
        return given;
    };
    const SmirnovPair pair = p.contains("A") ? candidate() : canonical_pair(h, spec.degree);
    const VerificationReport rep = verify_pair(h, pair, spec.degree, {12, spec.seed});
    CommandResult out;
    out.pass = rep.passes(spec.tol);
    out.report = {{"mode", "verify"}, {"degree", spec.degree}, {"tol", spec.tol},
                  {"report", io::to_json(rep)}, {"pass", out.pass}};
    return out;
}

inline CommandResult cmd_cnp_check(const ProblemSpec& spec) {
    const auto& p = spec.payload;
    if (!p.contains("sample")) throw InputError("cnp-check needs \"sample\"");
    const CnpSample sample = io::cnp_sample_from_json(p.at("sample"));
    const Eigen::MatrixXcd k = kernel_matrix(sample);
    const double lo = min_eigenvalue(k);
    CommandResult out;
    out.pass = lo >= -1e-10;
    out.report = {{"mode", "cnp-check"}, {"kernel", io::matrix_to_json(k)},
                  {"min_eigenvalue", io::round12(lo)}, {"psd", lo >= -1e-10}};
    const auto cs = detail::multi_list(p, "h");
    if (!cs.empty()) {
        const RestrictionReport r = restrict_smirnov(cs, sample, spec.degree);
        const OuterCheck outer = outer_restriction_check(r.pair.a, sample);
        json avals = json::array();
        for (Complex a : r.a_values) avals.push_back(io::complex_to_json(a));
        out.report["restriction"] = {{"residual", io::round12(r.residual)},
                                     {"a_values", avals},
                                     {"outer", outer.outer},
                                     {"min_abs_a", io::round12(outer.min_abs)},
                                     {"criterion", outer.criterion}};
        out.pass = out.pass && r.residual <= spec.tol && outer.outer;
    }
    out.report["pass"] = out.pass;
    return out;
}

inline CommandResult dispatch(const ProblemSpec& spec) {
    if (spec.mode == "factor") return cmd_factor(spec);
    if (spec.mode == "lift") return cmd_lift(spec);
    if (spec.mode == "eval") return cmd_eval(spec);
    if (spec.mode == "verify") return cmd_verify(spec);
    return cmd_cnp_check(spec);
}

/// Runs one problem; the report goes to opts.output (or `out` for "stdout").
inline int run(const Options& opts, std::ostream& out, std::ostream& err) {
    CommandResult result;
    try {
        result = dispatch(load_problem(opts));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    const std::string text = result.report.dump(2) + "\n";
    if (opts.output.empty() || opts.output == "stdout") {
        out << text;
    } else {
        std::ofstream f(opts.output);
        if (!f) {
            err << "error: cannot write '" << opts.output << "'\n";
            return input_error;
        }
        f << text;
    }
    return result.pass ? success : residual_failure;
}

}  // namespace fock_smirnov::cli
