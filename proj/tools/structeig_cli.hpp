#pragma once

// Command-line driver. Everything lives in a header so the test suite can call
// run() with captured streams; main.cpp only forwards argv.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "structeig.hpp"

namespace structeig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTolerance = 3;

/// Failure that maps to a specific exit code.
struct ExitError : std::runtime_error {
    int code;
    ExitError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void usage_error(const std::string& msg) { throw ExitError(kExitUsage, msg); }

// ---------------------------------------------------------------------------
// Option bundles
// ---------------------------------------------------------------------------

struct BuildOptions {
    std::string family;
    int variant = 1;
    std::size_t n = 0;
    int m = -1;
    std::string alpha;
    std::size_t n_elems = 0;
    std::size_t half_n = 0;
    std::string scale = "1";
    std::string layout = "coordinate";
    std::string out;
};

struct SpectrumOptions {
    std::string family;
    int variant = 1;
    std::size_t n = 0;
    std::string alpha;
    std::string beta = "1";
    std::size_t n_elems = 0;
    std::size_t half_n = 0;
    bool no_oracle = false;
    double tol = 1e-8;
    double perturb = 0.0;
    std::string out;
};

struct IdentityOptions {
    std::string kind;
    std::size_t n = 0;
    int k = 0;
    int l = 0;
    int random = 0;
    std::uint64_t seed = 1;
    std::string matrix;
    std::string bmatrix;
    std::string form = "proof";
    std::string alpha = "2,-1";
    std::string beta = "1,0";
    double tol = 1e-8;
};

struct DispersionOptions {
    std::string method;
    std::size_t n = 0;
    std::string out;
};

struct PevpOptions {
    std::string input;
    bool no_oracle = false;
    double tol = 1e-8;
    std::string out;
};

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace detail {

inline CoefficientBand band_from(const std::string& text, const char* flag) {
    if (text.empty()) usage_error(std::string("missing ") + flag);
    try {
        return CoefficientBand{parse_complex_list(text)};
    } catch (const Error& e) {
        usage_error(std::string(flag) + ": " + e.what());
    }
}

inline CornerParams corner_from(const std::string& text, const char* flag) {
    const CoefficientBand b = band_from(text, flag);
    if (b.values.size() != 4) usage_error(std::string(flag) + " needs exactly four values");
    return {b.values[0], b.values[1], b.values[2], b.values[3]};
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) usage_error("cannot open '" + path + "' for writing");
    f << text;
}

inline DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) usage_error("cannot open '" + path + "'");
    try {
        return read_matrix_market(f);
    } catch (const Error& e) {
        usage_error(path + ": " + e.what());
    }
}

inline HankelVariant variant_from(int v) {
    try {
        return hankel_variant_from_int(v);
    } catch (const Error& e) {
        usage_error(e.what());
    }
}

// Random Hermitian matrix with entries uniform in the unit square.
inline DenseMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = u(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = Scalar{u(rng), u(rng)};
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

// Hermitian positive definite: G G* + n I.
inline DenseMatrix random_hpd(std::size_t n, std::mt19937_64& rng) {
    const DenseMatrix g = random_hermitian(n, rng);
    DenseMatrix b = g * g.adjoint();
    for (std::size_t i = 0; i < n; ++i) b(i, i) += static_cast<double>(n);
    return b;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

inline int cmd_build(const BuildOptions& o, std::ostream& out) {
    MatrixMarketLayout layout = MatrixMarketLayout::Coordinate;
    if (o.layout == "array") layout = MatrixMarketLayout::ArrayReal;
    else if (o.layout != "coordinate") usage_error("--layout must be coordinate or array");
    Scalar scale{1.0};
    try {
        scale = parse_complex(o.scale);
    } catch (const Error& e) {
        usage_error(std::string("--scale: ") + e.what());
    }

    auto emit = [&](const DenseMatrix& a, const std::string& suffix) {
        DenseMatrix s = a;
        if (scale != Scalar{1.0}) s *= scale;
        std::string path = o.out;
        // A stiffness/mass pair always goes to two files, named after the family by default.
        if (!suffix.empty() && (path.empty() || path == "-")) path = o.family;
        if (!suffix.empty()) {
            const auto dot = path.rfind(".mtx");
            path = dot == std::string::npos ? path + suffix + ".mtx" : path.substr(0, dot) + suffix + ".mtx";
        }
        detail::write_text(path, to_matrix_market(s, layout), out);
    };

    try {
        if (o.family == "toeplitz-hankel" || o.family == "toeplitz") {
            const CoefficientBand band = detail::band_from(o.alpha, "--alpha");
            if (o.n == 0) usage_error("missing --n");
            if (o.m >= 0 && o.m != band.bandwidth())
                usage_error("--m " + std::to_string(o.m) + " disagrees with --alpha bandwidth " +
                            std::to_string(band.bandwidth()));
            if (o.family == "toeplitz") emit(build_toeplitz(band, o.n), "");
            else emit(assemble_toeplitz_hankel(band, o.n, detail::variant_from(o.variant)), "");
        } else if (o.family == "corner-block") {
            if (o.half_n == 0) usage_error("missing --half-n");
            emit(build_corner_block(detail::corner_from(o.alpha, "--alpha"), o.half_n), "");
        } else if (o.family == "fem-p2" || o.family == "fem-p3") {
            if (o.n_elems == 0) usage_error("missing --n-elems");
            const StiffnessMass km = o.family == "fem-p2" ? build_fem_p2(o.n_elems) : build_fem_p3(o.n_elems);
            emit(km.stiffness, "_K");
            emit(km.mass, "_M");
        } else {
            usage_error("unknown --family '" + o.family + "'");
        }
    } catch (const Error& e) {
        usage_error(e.what());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumProblem {
    DenseMatrix a, b;
    EigenSolution analytic;
};

inline SpectrumProblem spectrum_problem(const SpectrumOptions& o) {
    SpectrumProblem p;
    if (o.family == "toeplitz-hankel") {
        if (o.n == 0) usage_error("missing --n");
        const HankelVariant v = detail::variant_from(o.variant);
        CoefficientBand alpha = detail::band_from(o.alpha, "--alpha");
        CoefficientBand beta = detail::band_from(o.beta, "--beta");
        const int m = std::max(alpha.bandwidth(), beta.bandwidth());
        if (m < 1) usage_error("bandwidth must be at least 1");
        alpha = alpha.padded(m), beta = beta.padded(m);
        p.analytic = gevp_eigenpairs(alpha, beta, o.n, v);
        p.a = assemble_toeplitz_hankel(alpha, o.n, v);
        p.b = assemble_toeplitz_hankel(beta, o.n, v);
    } else if (o.family == "corner-block") {
        if (o.half_n == 0) usage_error("missing --half-n");
        const CornerParams alpha = detail::corner_from(o.alpha, "--alpha");
        const CornerParams beta = detail::corner_from(o.beta == "1" ? "1,0,0,1" : o.beta, "--beta");
        p.analytic = corner_block_eigenpairs(alpha, beta, o.half_n);
        p.a = build_corner_block(alpha, o.half_n);
        p.b = build_corner_block(beta, o.half_n);
    } else if (o.family == "fem-p2" || o.family == "fem-p3") {
        if (o.n_elems == 0) usage_error("missing --n-elems");
        const StiffnessMass km = o.family == "fem-p2" ? build_fem_p2(o.n_elems) : build_fem_p3(o.n_elems);
        p.a = km.stiffness, p.b = km.mass;
        if (o.family == "fem-p2") {
            p.analytic = fem_p2_eigenpairs(o.n_elems);
        } else {
            // Closed-form eigenvalues, eigenvectors by inverse iteration.
            p.analytic = recover_eigenvectors(p.a, p.b, fem_p3_eigenvalues(o.n_elems));
            p.analytic.provenance = Provenance::Analytic;
            p.analytic.h = 1.0 / static_cast<double>(o.n_elems);
        }
    } else {
        usage_error("unknown --family '" + o.family + "'");
    }
    return p;
}

inline int cmd_spectrum(const SpectrumOptions& o, std::ostream& out, std::ostream& err) {
    SpectrumProblem p;
    try {
        p = spectrum_problem(o);
    } catch (const Error& e) {
        usage_error(e.what());
    }
    EigenSolution sol = p.analytic.sorted();
    for (auto& pair : sol.pairs) pair.value += o.perturb;
    attach_residuals(sol, p.a, p.b);

    OracleReport report;
    std::vector<const SpectrumMatch*> match_of(sol.size(), nullptr);
    if (!o.no_oracle) {
        try {
            report = match_spectra(sol, solve_gevp_numeric(p.a, p.b));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::TooLargeForGeneralPath || e.code() == ErrorCode::SingularB)
                usage_error(std::string(e.what()) + " (use --no-oracle)");
            throw;
        }
        for (const auto& m : report.matches) match_of[m.analytic_index] = &m;
    }

    std::ostringstream csv;
    std::vector<std::string> header{"mode_index", "lambda_re", "lambda_im", "residual"};
    if (!o.no_oracle) header.insert(header.end(), {"oracle_lambda_re", "oracle_lambda_im", "oracle_distance"});
    write_csv_row(csv, header);

    double worst_residual = 0.0, worst_relative = 0.0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const EigenPair& pr = sol.pairs[i];
        std::vector<std::string> row{std::to_string(pr.mode), format_double(pr.value.real()),
                                     format_double(display_imag(pr.value)), format_double(pr.residual)};
        worst_residual = std::max(worst_residual, pr.residual);
        if (!o.no_oracle) {
            if (const SpectrumMatch* m = match_of[i]) {
                row.push_back(format_double(m->numeric.real()));
                row.push_back(format_double(display_imag(m->numeric)));
                row.push_back(format_double(m->distance));
                const double mag = std::max({std::abs(m->analytic), std::abs(m->numeric), 1.0});
                worst_relative = std::max(worst_relative, m->distance / mag);
            } else {
                row.insert(row.end(), {"", "", ""});
            }
        }
        write_csv_row(csv, row);
    }
    detail::write_text(o.out, csv.str(), out);

    bool fail = worst_residual > o.tol;
    if (fail) err << "residual " << format_double(worst_residual) << " exceeds tolerance " << o.tol << '\n';
    if (!o.no_oracle) {
        if (report.count_mismatch) {
            err << "oracle returned a different number of eigenvalues\n";
            fail = true;
        }
        if (worst_relative > o.tol) {
            err << "oracle distance " << format_double(worst_relative) << " exceeds tolerance " << o.tol << '\n';
            fail = true;
        }
    }
    return fail ? kExitTolerance : kExitOk;
}

// ---------------------------------------------------------------------------
// identity
// ---------------------------------------------------------------------------

inline void print_report(std::ostream& out, const IdentityReport& r) {
    out << "kind=" << r.kind << " n=" << r.n;
    if (r.j) out << " j=" << r.j;
    out << " k=" << r.k;
    if (r.l) out << " l=" << r.l;
    // Both sides at 15 digits so exact values read cleanly; diffs carry the detail.
    out << " lhs=" << format_scalar(r.lhs, 15) << " rhs=" << format_scalar(r.rhs, 15)
        << " abs_diff=" << format_double(r.abs_diff, 3) << " rel_diff=" << format_double(r.rel_diff, 3);
    if (r.ill_conditioned) out << " warning=ill-conditioned";
    out << '\n';
}

inline int cmd_identity(const IdentityOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<IdentityReport> reports;
    bool gated = true;

    try {
        if (o.kind == "ti31" || o.kind == "ti3" || o.kind == "ti3g") {
            if (o.n < 2) usage_error("--n must be at least 2");
            const int n = static_cast<int>(o.n);
            const TrigKind kind = o.kind == "ti31" ? TrigKind::Ti31 : o.kind == "ti3" ? TrigKind::Ti3 : TrigKind::Ti3g;
            TrigBands bands;
            if (kind == TrigKind::Ti3g) {
                const CoefficientBand a = detail::band_from(o.alpha, "--alpha");
                const CoefficientBand b = detail::band_from(o.beta, "--beta");
                if (a.values.size() != 2 || b.values.size() != 2) usage_error("ti3g needs two-term --alpha and --beta");
                bands = {a.values[0], a.values[1], b.values[0], b.values[1]};
                gated = false;  // holds as printed only in special cases
            }
            std::vector<int> ks, ls;
            if (o.k) ks.push_back(o.k);
            else for (int k = 1; k <= n; ++k) ks.push_back(k);
            if (kind == TrigKind::Ti31) ls.push_back(1);
            else if (o.l) ls.push_back(o.l);
            else for (int l = 1; l <= n; ++l) ls.push_back(l);
            for (int k : ks)
                for (int l : ls) reports.push_back(trig_identity(kind, n, k, l, bands));
        } else if (o.kind == "eve" || o.kind == "gevp-eve") {
            const bool gevp = o.kind == "gevp-eve";
            std::vector<GeviForm> forms;
            if (gevp) {
                if (o.form == "proof" || o.form == "both") forms.push_back(GeviForm::ProofForm);
                if (o.form == "literal" || o.form == "both") forms.push_back(GeviForm::Literal);
                if (forms.empty()) usage_error("--form must be proof, literal or both");
            }
            std::vector<std::pair<DenseMatrix, DenseMatrix>> cases;
            if (!o.matrix.empty()) {
                DenseMatrix a = detail::read_matrix_file(o.matrix);
                DenseMatrix b = o.bmatrix.empty() ? DenseMatrix::identity(a.rows()) : detail::read_matrix_file(o.bmatrix);
                cases.emplace_back(std::move(a), std::move(b));
            } else if (o.random > 0) {
                if (o.n < 2) usage_error("--n must be at least 2");
                std::mt19937_64 rng(o.seed);
                for (int t = 0; t < o.random; ++t) {
                    DenseMatrix a = detail::random_hermitian(o.n, rng);
                    DenseMatrix b = gevp ? detail::random_hpd(o.n, rng) : DenseMatrix::identity(o.n);
                    cases.emplace_back(std::move(a), std::move(b));
                }
            } else {
                usage_error("give --matrix or --random");
            }
            for (const auto& [a, b] : cases) {
                const int n = static_cast<int>(a.rows());
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= n; ++k) {
                        if (o.k && k != o.k) continue;
                        if (!gevp) reports.push_back(eve_identity_evp(a, j, k));
                        else
                            for (GeviForm f : forms) reports.push_back(eve_identity_gevp(a, b, j, k, f));
                    }
            }
        } else {
            usage_error("unknown --kind '" + o.kind + "'");
        }
    } catch (const Error& e) {
        usage_error(e.what());
    }

    double worst = 0.0, worst_literal = 0.0;
    for (const auto& r : reports) {
        print_report(out, r);
        if (r.ill_conditioned) continue;
        if (r.kind == "gevp-eve-literal") worst_literal = std::max(worst_literal, r.rel_diff);
        else worst = std::max(worst, r.rel_diff);
    }
    out << "summary reports=" << reports.size() << " max_rel_diff=" << format_double(worst);
    if (worst_literal > 0.0) out << " literal_max_rel_diff=" << format_double(worst_literal);
    out << '\n';
    if (gated && worst > o.tol) {
        err << "identity violated: max rel_diff " << format_double(worst) << " exceeds " << o.tol << '\n';
        return kExitTolerance;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dispersion
// ---------------------------------------------------------------------------

struct DispersionRow {
    int j = 0;
    double lambda_h = 0.0;
    double lambda_exact = 0.0;
    double rel_error = 0.0;
    std::string branch;
};

/// Discrete spectrum of the chosen scheme for −u'' = λu on (0,1), ascending,
/// against (jπ)².
inline std::vector<DispersionRow> dispersion_table(const std::string& method, std::size_t n) {
    std::vector<std::pair<double, std::string>> values;
    if (method == "fem2") {
        const EigenSolution sol = fem_p2_eigenpairs(n);
        for (const auto& p : sol.pairs) {
            const std::string br = p.mode < static_cast<int>(n) ? "minus" : p.mode == static_cast<int>(n) ? "10n2" : "plus";
            values.emplace_back(p.value.real(), br);
        }
    } else {
        CoefficientBand alpha, beta;
        if (method == "fdm" || method == "fem1") {
            alpha = CoefficientBand{Vector{2.0, -1.0}};
            beta = method == "fdm" ? CoefficientBand{Vector{1.0, 0.0}} : CoefficientBand{Vector{2.0 / 3.0, 1.0 / 6.0}};
        } else if (method == "iga2-example") {
            alpha = CoefficientBand{Vector{1.0, -1.0 / 3.0, -1.0 / 6.0}};
            beta = CoefficientBand{Vector{11.0 / 20.0, 13.0 / 60.0, 1.0 / 120.0}};
        } else {
            usage_error("unknown --method '" + method + "'");
        }
        const double h = 1.0 / static_cast<double>(n + 1);
        EigenSolution sol = gevp_eigenpairs(alpha, beta, n, HankelVariant::Set1);
        // FDM: A/h² against I. FEM-type pencils: A/h against B·h.
        sol = method == "fdm" ? scale_pencil(sol, 1.0 / (h * h), 1.0) : scale_pencil(sol, 1.0 / h, h);
        for (const auto& p : sol.pairs) values.emplace_back(p.value.real(), "main");
    }
    std::stable_sort(values.begin(), values.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<DispersionRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        DispersionRow r;
        r.j = static_cast<int>(i + 1);
        r.lambda_h = values[i].first;
        r.lambda_exact = std::pow(r.j * kPi, 2);
        r.rel_error = std::abs(r.lambda_h - r.lambda_exact) / r.lambda_exact;
        r.branch = values[i].second;
        rows.push_back(std::move(r));
    }
    return rows;
}

inline int cmd_dispersion(const DispersionOptions& o, std::ostream& out) {
    if (o.method != "fdm" && o.method != "fem1" && o.method != "fem2" && o.method != "iga2-example")
        usage_error("unknown --method '" + o.method + "'");
    if (o.n == 0) usage_error("missing --n");
    std::vector<DispersionRow> rows;
    try {
        rows = dispersion_table(o.method, o.n);
    } catch (const Error& e) {
        usage_error(e.what());
    }
    std::ostringstream csv;
    write_csv_row(csv, {"j", "lambda_h", "lambda_exact", "rel_error", "branch"});
    for (const auto& r : rows)
        write_csv_row(csv, {std::to_string(r.j), format_double(r.lambda_h), format_double(r.lambda_exact),
                            format_double(r.rel_error), r.branch});
    detail::write_text(o.out, csv.str(), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// pevp
// ---------------------------------------------------------------------------

/// {"variant":1,"n":8,"bands":[[A0...],[A1...],...]}; entries are numbers or
/// complex literal strings.
inline PolynomialPencil parse_pencil_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        usage_error(std::string("invalid JSON: ") + e.what());
    }
    PolynomialPencil p;
    try {
        p.variant = detail::variant_from(j.at("variant").get<int>());
        const int n = j.at("n").get<int>();
        if (n < 1) usage_error("\"n\" must be positive");
        p.n = static_cast<std::size_t>(n);
        for (const auto& band : j.at("bands")) {
            Vector values;
            for (const auto& v : band) {
                if (v.is_number()) values.emplace_back(v.get<double>());
                else if (v.is_string()) values.push_back(parse_complex(v.get<std::string>()));
                else usage_error("band entries must be numbers or strings");
            }
            p.coeff_bands.push_back(CoefficientBand{std::move(values)});
        }
    } catch (const nlohmann::json::exception& e) {
        usage_error(std::string("pencil JSON: ") + e.what());
    } catch (const Error& e) {
        usage_error(e.what());
    }
    return p;
}

inline int cmd_pevp(const PevpOptions& o, std::ostream& out, std::ostream& err) {
    std::string text;
    if (o.input.empty()) usage_error("missing --input");
    if (o.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(o.input);
        if (!f) usage_error("cannot open '" + o.input + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    const PolynomialPencil pencil = parse_pencil_json(text);
    PevpSolution sol;
    std::vector<DenseMatrix> mats;
    try {
        sol = pevp_eigenpairs(pencil);
        mats = pencil.matrices();
    } catch (const Error& e) {
        usage_error(e.what());
    }

    Vector oracle;
    if (!o.no_oracle) oracle = solve_pevp_numeric(mats).eigenvalues;
    std::vector<bool> used(oracle.size(), false);

    std::ostringstream csv;
    std::vector<std::string> header{"mode_index", "root", "lambda_re", "lambda_im", "backward_error", "degree_drop"};
    if (!o.no_oracle) header.push_back("oracle_distance");
    write_csv_row(csv, header);
    double worst_be = 0.0, worst_dist = 0.0;
    for (const auto& mode : sol.modes)
        for (std::size_t r = 0; r < mode.roots.size(); ++r) {
            const Scalar lam = mode.roots[r];
            const DenseMatrix pl = evaluate_matrix_polynomial(mats, lam);
            double scale = 0.0, pw = 1.0;
            for (const auto& c : mats) scale += norm_inf(c) * pw, pw *= std::abs(lam);
            Vector x = mode.vector;
            const double be = norm_inf(pl * x) / (scale * norm_inf(x));
            worst_be = std::max(worst_be, be);
            std::vector<std::string> row{std::to_string(mode.mode), std::to_string(r + 1), format_double(lam.real()),
                                         format_double(display_imag(lam)), format_double(be),
                                         mode.degree_drop ? "1" : "0"};
            if (!o.no_oracle) {
                std::size_t best = oracle.size();
                double bd = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < oracle.size(); ++i)
                    if (!used[i] && std::abs(oracle[i] - lam) < bd) bd = std::abs(oracle[i] - lam), best = i;
                if (best < oracle.size()) {
                    used[best] = true;
                    row.push_back(format_double(bd));
                    worst_dist = std::max(worst_dist, bd / std::max(1.0, std::abs(lam)));
                } else {
                    row.push_back("");
                }
            }
            write_csv_row(csv, row);
        }
    detail::write_text(o.out, csv.str(), out);
    bool fail = worst_be > o.tol || (!o.no_oracle && worst_dist > o.tol);
    if (fail) err << "pevp check failed: backward error " << format_double(worst_be) << ", oracle distance "
                  << format_double(worst_dist) << '\n';
    return fail ? kExitTolerance : kExitOk;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

/// Parses `args` (without the program name) and runs the subcommand.
/// Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form eigenpairs of structured matrix pencils, checked against a dense oracle", "structeig"};
    app.require_subcommand(1);

    BuildOptions bo;
    auto* build = app.add_subcommand("build", "Write a structured matrix in Matrix Market format");
    build->add_option("--family", bo.family, "toeplitz-hankel | toeplitz | corner-block | fem-p2 | fem-p3")->required();
    build->add_option("--variant", bo.variant, "Hankel variant 1-4");
    build->add_option("--n", bo.n, "Matrix dimension");
    build->add_option("--m", bo.m, "Bandwidth (checked against --alpha)");
    build->add_option("--alpha", bo.alpha, "Comma-separated complex literals");
    build->add_option("--n-elems", bo.n_elems, "FEM element count");
    build->add_option("--half-n", bo.half_n, "Corner-block half size");
    build->add_option("--scale", bo.scale, "Constant multiplying the output");
    build->add_option("--layout", bo.layout, "coordinate | array");
    build->add_option("--out", bo.out, "Output file; FEM pairs go to <out>_K.mtx and <out>_M.mtx (default prefix: the family)");

    SpectrumOptions so;
    auto* spectrum = app.add_subcommand("spectrum", "Closed-form eigenpairs with residual and oracle columns");
    spectrum->add_option("--family", so.family, "toeplitz-hankel | corner-block | fem-p2 | fem-p3")->required();
    spectrum->add_option("--variant", so.variant, "Hankel variant 1-4");
    spectrum->add_option("--n", so.n, "Matrix dimension");
    spectrum->add_option("--alpha", so.alpha, "A band (or four corner parameters)");
    spectrum->add_option("--beta", so.beta, "B band (default identity)");
    spectrum->add_option("--n-elems", so.n_elems, "FEM element count");
    spectrum->add_option("--half-n", so.half_n, "Corner-block half size");
    spectrum->add_flag("--no-oracle", so.no_oracle, "Skip the dense numerical oracle");
    spectrum->add_option("--tol", so.tol, "Residual tolerance (exit 3 above it)");
    spectrum->add_option("--perturb", so.perturb, "Debug: shift every analytic eigenvalue");
    spectrum->add_option("--out", so.out, "CSV output file");

    IdentityOptions io;
    auto* identity = app.add_subcommand("identity", "Evaluate eigenvector-eigenvalue and trigonometric identities");
    identity->add_option("--kind", io.kind, "eve | gevp-eve | ti31 | ti3 | ti3g")->required();
    identity->add_option("--n", io.n, "Dimension");
    identity->add_option("--k", io.k, "Entry index (default: all)");
    identity->add_option("--l", io.l, "Removed row for ti3/ti3g (default: all)");
    identity->add_option("--random", io.random, "Number of random matrices");
    identity->add_option("--seed", io.seed, "Random seed");
    identity->add_option("--matrix", io.matrix, "Matrix Market file for A");
    identity->add_option("--bmatrix", io.bmatrix, "Matrix Market file for B (gevp-eve)");
    identity->add_option("--form", io.form, "proof | literal | both (gevp-eve)");
    identity->add_option("--alpha", io.alpha, "Two-term A band for ti3g");
    identity->add_option("--beta", io.beta, "Two-term B band for ti3g");
    identity->add_option("--tol", io.tol, "Tolerance on rel_diff");

    DispersionOptions dopt;
    auto* dispersion = app.add_subcommand("dispersion", "Discrete against continuum Laplacian eigenvalues");
    dispersion->add_option("--method", dopt.method, "fdm | fem1 | fem2 | iga2-example")->required();
    dispersion->add_option("--n,--n-elems", dopt.n, "Dimension (elements for fem2)")->required();
    dispersion->add_option("--out", dopt.out, "CSV output file");

    PevpOptions po;
    auto* pevp = app.add_subcommand("pevp", "Polynomial eigenvalue problem from a JSON pencil");
    pevp->add_option("--input", po.input, "JSON file, or - for stdin")->required();
    pevp->add_flag("--no-oracle", po.no_oracle, "Skip the companion-linearization oracle");
    pevp->add_option("--tol", po.tol, "Tolerance on backward error and oracle distance");
    pevp->add_option("--out", po.out, "CSV output file");

    std::vector<const char*> argv{"structeig"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*build) return cmd_build(bo, out);
        if (*spectrum) return cmd_spectrum(so, out, err);
        if (*identity) return cmd_identity(io, out, err);
        if (*dispersion) return cmd_dispersion(dopt, out);
        if (*pevp) return cmd_pevp(po, out, err);
    } catch (const ExitError& e) {
        err << "error: " << e.what() << '\n';
        return e.code;
    } catch (const Error& e) {
        // Numerical failures that escape validation: the tolerance contract was not met.
        err << "error: " << e.what() << '\n';
        return kExitTolerance;
    }
    return kExitUsage;
}

}  // namespace structeig::cli
