#include <iostream>

#include <CLI11.hpp>

#include "fock_smirnov/cli.hpp"

int main(int argc, char** argv) {
    using fock_smirnov::cli::Options;
    CLI::App app{"Canonical Smirnov factorizations of free polynomials on the truncated Fock space"};
    Options opts;
    std::string mode;
    int degree = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    app.add_option("--input", opts.input, "JSON problem file")->required();
    auto* mode_opt = app.add_option("--mode", mode, "factor | lift | eval | verify | cnp-check");
    auto* degree_opt = app.add_option("--degree", degree, "truncation degree N");
    auto* tol_opt = app.add_option("--tol", tol, "residual tolerance");
    auto* seed_opt = app.add_option("--seed", seed, "sampling seed");
    app.add_option("--output", opts.output, "report path, or 'stdout'");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : fock_smirnov::cli::input_error;
    }
    if (*mode_opt) opts.mode = mode;
    if (*degree_opt) opts.degree = degree;
    if (*tol_opt) opts.tol = tol;
    if (*seed_opt) opts.seed = seed;
    return fock_smirnov::cli::run(opts, std::cout, std::cerr);
}
