#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "structeig/dense.hpp"

namespace structeig {

// ---------------------------------------------------------------------------
// Complex literals: "a", "ai", "a+bi", "i", "-i", with p/q rationals anywhere
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_decimal(const std::string& t, std::string_view whole) {
    if (t.empty()) throw Error(ErrorCode::ParseError, "empty number in '" + std::string(whole) + "'");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw Error(ErrorCode::ParseError, "bad number '" + t + "' in '" + std::string(whole) + "'");
    return v;
}

// Integers p/q are divided once, so the result is the correctly rounded value.
inline double parse_real_part(const std::string& t, std::string_view whole) {
    const auto slash = t.find('/');
    if (slash == std::string::npos) return parse_decimal(t, whole);
    const double p = parse_decimal(t.substr(0, slash), whole);
    const double q = parse_decimal(t.substr(slash + 1), whole);
    if (q == 0.0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(whole) + "'");
    return p / q;
}

inline double parse_imag_coeff(const std::string& t, std::string_view whole) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real_part(t, whole);
}

}  // namespace detail

/// Parses one complex literal. Whitespace is ignored.
inline Scalar parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex literal");
    if (s.back() != 'i') return {detail::parse_real_part(s, text), 0.0};

    s.pop_back();
    // The split is the last sign that is neither leading nor an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t p = s.size(); p-- > 1;)
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
            split = p;
            break;
        }
    if (split == std::string::npos) return {0.0, detail::parse_imag_coeff(s, text)};
    return {detail::parse_real_part(s.substr(0, split), text), detail::parse_imag_coeff(s.substr(split), text)};
}

/// Comma-separated list of complex literals.
inline Vector parse_complex_list(std::string_view text) {
    Vector out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// "%.17g" by default, which round-trips every finite double.
inline std::string format_double(double v, int digits = 17) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Imaginary part to print, zeroed when below 1e-12 relative to max(1, |z|).
inline double display_imag(Scalar z) {
    return std::abs(z.imag()) < 1e-12 * std::max(1.0, std::abs(z)) ? 0.0 : z.imag();
}

/// "a", or "a+bi" / "a-bi" when the imaginary part survives display_imag.
inline std::string format_scalar(Scalar z, int digits = 17) {
    const double im = display_imag(z);
    if (im == 0.0) return format_double(z.real(), digits);
    std::string out = format_double(z.real(), digits);
    out += im < 0 ? "-" : "+";
    out += format_double(std::abs(im), digits);
    out += "i";
    return out;
}

// ---------------------------------------------------------------------------
// Matrix Market
// ---------------------------------------------------------------------------

enum class MatrixMarketLayout {
    Coordinate,  // coordinate complex, symmetric storage when A = Aᵀ exactly
    ArrayReal    // dense column-major real; requires zero imaginary parts
};

inline void write_matrix_market(std::ostream& os, const DenseMatrix& a,
                                MatrixMarketLayout layout = MatrixMarketLayout::Coordinate) {
    if (layout == MatrixMarketLayout::ArrayReal) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a(i, j).imag() != 0.0)
                    throw Error(ErrorCode::InvalidArgument, "array real layout needs a real matrix");
        os << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.rows(); ++i) os << format_double(a(i, j).real()) << '\n';
        return;
    }
    const bool sym = is_symmetric(a);
    std::vector<std::string> lines;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = sym ? j : 0; i < a.rows(); ++i) {
            const Scalar v = a(i, j);
            if (v == Scalar{}) continue;
            lines.push_back(std::to_string(i + 1) + ' ' + std::to_string(j + 1) + ' ' + format_double(v.real()) + ' ' +
                            format_double(v.imag()));
        }
    os << "%%MatrixMarket matrix coordinate complex " << (sym ? "symmetric" : "general") << '\n';
    os << a.rows() << ' ' << a.cols() << ' ' << lines.size() << '\n';
    for (const auto& l : lines) os << l << '\n';
}

inline std::string to_matrix_market(const DenseMatrix& a, MatrixMarketLayout layout = MatrixMarketLayout::Coordinate) {
    std::ostringstream os;
    write_matrix_market(os, a, layout);
    return os.str();
}

/// Reads coordinate or array storage with real, integer or complex fields and
/// general, symmetric, hermitian or skew-symmetric symmetry.
inline DenseMatrix read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "empty Matrix Market stream");
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    object = lower(object), format = lower(format), field = lower(field), symmetry = lower(symmetry);
    if (banner != "%%MatrixMarket" || object != "matrix")
        throw Error(ErrorCode::ParseError, "missing %%MatrixMarket matrix banner");
    const bool coordinate = format == "coordinate";
    if (!coordinate && format != "array") throw Error(ErrorCode::ParseError, "unknown format '" + format + "'");
    const bool complex_field = field == "complex";
    if (!complex_field && field != "real" && field != "integer" && field != "double")
        throw Error(ErrorCode::ParseError, "unsupported field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian" && symmetry != "skew-symmetric")
        throw Error(ErrorCode::ParseError, "unsupported symmetry '" + symmetry + "'");

    auto next_data_line = [&]() -> std::string {
        while (std::getline(is, line)) {
            const std::string t = detail::trim(line);
            if (!t.empty() && t[0] != '%') return t;
        }
        throw Error(ErrorCode::ParseError, "unexpected end of Matrix Market data");
    };
    auto read_value = [&](std::istringstream& ls) {
        double re = 0.0, im = 0.0;
        if (!(ls >> re)) throw Error(ErrorCode::ParseError, "bad Matrix Market value line '" + line + "'");
        if (complex_field && !(ls >> im)) throw Error(ErrorCode::ParseError, "missing imaginary part in '" + line + "'");
        return Scalar{re, im};
    };
    auto mirror = [&](DenseMatrix& a, std::size_t i, std::size_t j, Scalar v) {
        a(i, j) = v;
        if (i == j) return;
        if (symmetry == "symmetric") a(j, i) = v;
        else if (symmetry == "hermitian") a(j, i) = std::conj(v);
        else if (symmetry == "skew-symmetric") a(j, i) = -v;
    };

    std::istringstream sz(next_data_line());
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols) || rows == 0 || cols == 0) throw Error(ErrorCode::ParseError, "bad size line");
    DenseMatrix a(rows, cols);
    if (coordinate) {
        if (!(sz >> nnz)) throw Error(ErrorCode::ParseError, "coordinate size line needs an entry count");
        for (std::size_t e = 0; e < nnz; ++e) {
            std::istringstream ls(next_data_line());
            std::size_t i = 0, j = 0;
            if (!(ls >> i >> j) || i < 1 || j < 1 || i > rows || j > cols)
                throw Error(ErrorCode::ParseError, "bad coordinate index in '" + line + "'");
            mirror(a, i - 1, j - 1, read_value(ls));
        }
    } else {
        const bool general = symmetry == "general";
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = general ? 0 : j; i < rows; ++i) {
                if (symmetry == "skew-symmetric" && i == j) continue;
                std::istringstream ls(next_data_line());
                mirror(a, i, j, read_value(ls));
            }
    }
    return a;
}

inline DenseMatrix parse_matrix_market(const std::string& text) {
    std::istringstream is(text);
    return read_matrix_market(is);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Writes one comma-separated row; fields are emitted verbatim.
inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << '\n';
}

}  // namespace structeig
