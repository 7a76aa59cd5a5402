#include <gtest/gtest.h>

#include <cstring>

#include "test_support.hpp"

using namespace structeig;
using namespace structeig::testing;

namespace {

void expect_error(ErrorCode code, auto&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(ParseComplex, Forms) {
    EXPECT_EQ(parse_complex("3"), Scalar(3, 0));
    EXPECT_EQ(parse_complex("-2.5"), Scalar(-2.5, 0));
    EXPECT_EQ(parse_complex("2i"), Scalar(0, 2));
    EXPECT_EQ(parse_complex("i"), Scalar(0, 1));
    EXPECT_EQ(parse_complex("-i"), Scalar(0, -1));
    EXPECT_EQ(parse_complex("8+2i"), Scalar(8, 2));
    EXPECT_EQ(parse_complex("5-i"), Scalar(5, -1));
    EXPECT_EQ(parse_complex(" 1 - 3i "), Scalar(1, -3));
    EXPECT_EQ(parse_complex("1e-3+2e+1i"), Scalar(1e-3, 20));
}

TEST(ParseComplex, RationalsAreCorrectlyRounded) {
    EXPECT_EQ(parse_complex("-1/3"), Scalar(-1.0 / 3.0, 0));
    EXPECT_EQ(parse_complex("1/120"), Scalar(1.0 / 120.0, 0));
    EXPECT_EQ(parse_complex("1/2+3/4i"), Scalar(0.5, 0.75));
}

TEST(ParseComplex, Errors) {
    expect_error(ErrorCode::ParseError, [] { parse_complex(""); });
    expect_error(ErrorCode::ParseError, [] { parse_complex("abc"); });
    expect_error(ErrorCode::ParseError, [] { parse_complex("1/0"); });
    expect_error(ErrorCode::ParseError, [] { parse_complex("2+"); });
    expect_error(ErrorCode::ParseError, [] { parse_complex("1e999"); });
}

TEST(ParseComplexList, CommaSeparated) {
    const Vector v = parse_complex_list("1,-1/3,-1/6");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[1], Scalar(-1.0 / 3.0));
    expect_error(ErrorCode::ParseError, [] { parse_complex_list("1,,2"); });
}

TEST(FormatScalar, SuppressesRoundoffImaginaryParts) {
    EXPECT_EQ(format_scalar(Scalar(0.5, 1e-17)), "0.5");
    EXPECT_EQ(format_scalar(Scalar(2, -0.5)), "2-0.5i");
    EXPECT_EQ(format_scalar(Scalar(1, 3), 3), "1+3i");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(MatrixMarket, ExactHeaderForSymmetricStorage) {
    const std::string text = to_matrix_market(DenseMatrix{{2, -1}, {-1, 2}});
    EXPECT_EQ(text,
              "%%MatrixMarket matrix coordinate complex symmetric\n"
              "2 2 3\n"
              "1 1 2 0\n"
              "2 1 -1 0\n"
              "2 2 2 0\n");
}

TEST(MatrixMarket, GeneralStorageForNonsymmetric) {
    const std::string text = to_matrix_market(DenseMatrix{{1, 2}, {0, Scalar(0, 1)}});
    EXPECT_EQ(text.substr(0, text.find('\n')), "%%MatrixMarket matrix coordinate complex general");
}

TEST(MatrixMarket, RoundTripIsBitExact) {
    Rng rng(137);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t r = rng.integer(1, 7), c = rng.integer(1, 7);
        DenseMatrix a = trial % 2 ? random_matrix(r, c, rng) : random_hermitian(r, rng);
        if (trial % 4 == 0) a = a + a.transpose();  // exercise symmetric storage
        a(0, 0) = 0.0;
        const DenseMatrix back = parse_matrix_market(to_matrix_market(a));
        ASSERT_EQ(back.rows(), a.rows());
        ASSERT_EQ(back.cols(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                EXPECT_TRUE(bit_equal(back(i, j).real(), a(i, j).real()));
                EXPECT_TRUE(bit_equal(back(i, j).imag(), a(i, j).imag()));
            }
    }
}

TEST(MatrixMarket, ArrayRealLayoutRoundTrip) {
    const DenseMatrix a{{1.0 / 3, 2}, {3, 4}, {5, 6}};
    const std::string text = to_matrix_market(a, MatrixMarketLayout::ArrayReal);
    EXPECT_EQ(text.substr(0, text.find('\n')), "%%MatrixMarket matrix array real general");
    EXPECT_EQ(parse_matrix_market(text), a);
    expect_error(ErrorCode::InvalidArgument,
                 [] { to_matrix_market(DenseMatrix{{Scalar(0, 1)}}, MatrixMarketLayout::ArrayReal); });
}

TEST(MatrixMarket, ReadsHermitianAndSkewStorage) {
    const DenseMatrix h = parse_matrix_market(
        "%%MatrixMarket matrix coordinate complex hermitian\n% comment\n2 2 2\n1 1 1 0\n2 1 3 4\n");
    EXPECT_EQ(h(0, 1), Scalar(3, -4));
    EXPECT_EQ(h(1, 0), Scalar(3, 4));
    const DenseMatrix s = parse_matrix_market("%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 5\n");
    EXPECT_EQ(s(0, 1), Scalar(-5));
    const DenseMatrix i = parse_matrix_market("%%MatrixMarket matrix array integer symmetric\n2 2\n1\n2\n3\n");
    EXPECT_EQ(i, (DenseMatrix{{1, 2}, {2, 3}}));
}

TEST(MatrixMarket, MalformedInputs) {
    expect_error(ErrorCode::ParseError, [] { parse_matrix_market(""); });
    expect_error(ErrorCode::ParseError, [] { parse_matrix_market("%%MatrixMarket vector coordinate real general\n"); });
    expect_error(ErrorCode::ParseError, [] { parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n"); });
    expect_error(ErrorCode::ParseError,
                 [] { parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"); });
    expect_error(ErrorCode::ParseError,
                 [] { parse_matrix_market("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1\n"); });
    expect_error(ErrorCode::ParseError,
                 [] { parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"); });
}

TEST(Csv, RowsAreCommaJoined) {
    std::ostringstream os;
    write_csv_row(os, {"j", "lambda_h", "lambda_exact"});
    write_csv_row(os, {"1", "9.8"});
    EXPECT_EQ(os.str(), "j,lambda_h,lambda_exact\n1,9.8\n");
}
