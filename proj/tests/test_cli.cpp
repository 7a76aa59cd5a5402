#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "structeig_cli.hpp"
#include "test_support.hpp"

using namespace structeig;
using namespace structeig::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> fields;
        std::string f;
        std::istringstream ls(line);
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("structeig_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

TEST(CliBuild, IgaCornerEntry) {
    const Result r = run_cli({"build", "--family", "toeplitz-hankel", "--variant", "1", "--n", "6", "--m", "2", "--alpha",
                              "1,-1/3,-1/6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const DenseMatrix a = parse_matrix_market(r.out);
    ASSERT_EQ(a.rows(), 6u);
    EXPECT_NEAR(a(0, 0).real(), 7.0 / 6.0, 1e-15);
    EXPECT_EQ(a, assemble_toeplitz_hankel(CoefficientBand{Vector{1.0, -1.0 / 3, -1.0 / 6}}, 6, HankelVariant::Set1));
}

TEST(CliBuild, FemP2WritesBothMatrices) {
    TempDir dir;
    const std::string prefix = dir.file("p2");
    const Result r = run_cli({"build", "--family", "fem-p2", "--n-elems", "4", "--out", prefix});
    ASSERT_EQ(r.code, 0) << r.err;
    const DenseMatrix k = parse_matrix_market(slurp(prefix + "_K.mtx"));
    const DenseMatrix m = parse_matrix_market(slurp(prefix + "_M.mtx"));
    EXPECT_EQ(k.rows(), 7u);
    EXPECT_EQ(m.rows(), 7u);
    EXPECT_EQ(k, build_fem_p2(4).stiffness);
}

TEST(CliBuild, MissingAlphaIsUsageError) {
    EXPECT_EQ(run_cli({"build", "--family", "toeplitz-hankel", "--n", "6"}).code, 2);
}

TEST(CliBuild, ValidationFailuresAreUsageErrors) {
    const Result overlap = run_cli({"build", "--family", "toeplitz-hankel", "--variant", "2", "--n", "4", "--alpha", "1,2,3,4"});
    EXPECT_EQ(overlap.code, 2);
    EXPECT_NE(overlap.err.find("2m-1"), std::string::npos);
    EXPECT_EQ(run_cli({"build", "--family", "toeplitz-hankel", "--n", "6", "--m", "3", "--alpha", "1,2"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--family", "toeplitz-hankel", "--n", "6", "--alpha", "1,x"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--family", "nope", "--n", "6"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--family", "toeplitz-hankel", "--variant", "5", "--n", "6", "--alpha", "2,-1"}).code, 2);
}

TEST(CliBuild, RoundTripIsBitExactOnComplexBands) {
    const Result r = run_cli({"build", "--family", "toeplitz-hankel", "--variant", "3", "--n", "5", "--alpha",
                              "8+2i,5-i,2i", "--scale", "1/3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const DenseMatrix want =
        assemble_toeplitz_hankel(CoefficientBand{Vector{Scalar(8, 2), Scalar(5, -1), Scalar(0, 2)}}, 5, HankelVariant::Set3) *
        Scalar(1.0 / 3.0);
    EXPECT_EQ(parse_matrix_market(r.out), want);
}

TEST(CliBuild, ArrayLayoutAndCornerBlock) {
    const Result r = run_cli({"build", "--family", "corner-block", "--half-n", "2", "--alpha", "10,11,12,13", "--layout", "array"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("%%MatrixMarket matrix array real general", 0), 0u);
    EXPECT_EQ(parse_matrix_market(r.out), build_corner_block(CornerParams{10.0, 11.0, 12.0, 13.0}, 2));
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

TEST(CliSpectrum, SecondDifferenceMiddleModeIsTwo) {
    const Result r = run_cli({"spectrum", "--family", "toeplitz-hankel", "--variant", "1", "--n", "5", "--alpha", "2,-1",
                              "--beta", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"mode_index", "lambda_re", "lambda_im", "residual", "oracle_lambda_re",
                                                 "oracle_lambda_im", "oracle_distance"}));
    bool found = false;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i][0] == "3") {
            EXPECT_NEAR(std::stod(rows[i][1]), 2.0, 1e-15);
            EXPECT_LE(std::stod(rows[i][3]), 1e-15);
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(CliSpectrum, FemP2ContainsTenNSquared) {
    const Result r = run_cli({"spectrum", "--family", "fem-p2", "--n-elems", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 8u);
    bool found = false;
    for (std::size_t i = 1; i < rows.size(); ++i) found = found || std::stod(rows[i][1]) == 160.0;
    EXPECT_TRUE(found);
}

TEST(CliSpectrum, FemP3AndCornerBlock) {
    EXPECT_EQ(run_cli({"spectrum", "--family", "fem-p3", "--n-elems", "3"}).code, 0);
    EXPECT_EQ(run_cli({"spectrum", "--family", "corner-block", "--half-n", "2", "--alpha", "2,-1,0,2"}).code, 0);
}

TEST(CliSpectrum, ComplexPencilPassesOracle) {
    const Result r = run_cli({"spectrum", "--family", "toeplitz-hankel", "--variant", "3", "--n", "5", "--alpha",
                              "8+2i,5-i,2i", "--beta", "6,3i,1-i"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(CliSpectrum, PerturbationTripsTolerance) {
    const Result r = run_cli({"spectrum", "--family", "toeplitz-hankel", "--n", "5", "--alpha", "2,-1", "--perturb", "0.1"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("exceeds tolerance"), std::string::npos);
}

TEST(CliSpectrum, NoOracleDropsColumns) {
    const Result r = run_cli({"spectrum", "--family", "toeplitz-hankel", "--n", "4", "--alpha", "2,-1", "--no-oracle"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(csv_rows(r.out)[0].size(), 4u);
}

TEST(CliSpectrum, WritesCsvFile) {
    TempDir dir;
    const std::string path = dir.file("s.csv");
    ASSERT_EQ(run_cli({"spectrum", "--family", "fem-p2", "--n-elems", "3", "--out", path}).code, 0);
    EXPECT_EQ(csv_rows(slurp(path)).size(), 6u);
}

TEST(CliSpectrum, UsageErrors) {
    EXPECT_EQ(run_cli({"spectrum", "--family", "toeplitz-hankel", "--n", "5"}).code, 2);
    EXPECT_EQ(run_cli({"spectrum", "--family", "bogus"}).code, 2);
    EXPECT_EQ(run_cli({"spectrum"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
}

// ---------------------------------------------------------------------------
// identity
// ---------------------------------------------------------------------------

TEST(CliIdentity, Ti31SmallestCase) {
    const Result r = run_cli({"identity", "--kind", "ti31", "--n", "2", "--k", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("lhs=0.5 rhs=0.5"), std::string::npos) << r.out;
}

TEST(CliIdentity, RandomEveBelowTolerance) {
    const Result r = run_cli({"identity", "--kind", "eve", "--random", "10", "--n", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto pos = r.out.find("max_rel_diff=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LT(std::stod(r.out.substr(pos + 13)), 1e-8);
}

TEST(CliIdentity, GevpBothFormsLiteralDoesNotGate) {
    TempDir dir;
    std::ofstream(dir.file("a.mtx")) << to_matrix_market(DenseMatrix{{0, 1}, {1, 0}});
    std::ofstream(dir.file("b.mtx")) << to_matrix_market(DenseMatrix{{1, 0}, {0, 2}});
    const Result r = run_cli({"identity", "--kind", "gevp-eve", "--matrix", dir.file("a.mtx"), "--bmatrix",
                              dir.file("b.mtx"), "--form", "both"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("gevp-eve-literal"), std::string::npos);
    EXPECT_NE(r.out.find("literal_max_rel_diff="), std::string::npos);
}

TEST(CliIdentity, Ti3AllRowsAndTi3gBands) {
    EXPECT_EQ(run_cli({"identity", "--kind", "ti3", "--n", "6"}).code, 0);
    const Result g = run_cli({"identity", "--kind", "ti3g", "--n", "5", "--k", "1", "--l", "2", "--beta", "4,1"});
    EXPECT_EQ(g.code, 0) << g.err;
}

TEST(CliIdentity, ToleranceFailureOnProvenIdentity) {
    EXPECT_EQ(run_cli({"identity", "--kind", "eve", "--random", "2", "--n", "4", "--tol", "0"}).code, 3);
}

TEST(CliIdentity, UnknownKindIsUsageError) {
    EXPECT_EQ(run_cli({"identity", "--kind", "nope", "--n", "3"}).code, 2);
}

// ---------------------------------------------------------------------------
// dispersion
// ---------------------------------------------------------------------------

TEST(CliDispersion, FdmFirstMode) {
    const Result r = run_cli({"dispersion", "--method", "fdm", "--n", "10"});
    ASSERT_EQ(r.code, 0);
    const auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"j", "lambda_h", "lambda_exact", "rel_error", "branch"}));
    const double want = (2 - 2 * std::cos(kPi / 11)) * 121;
    EXPECT_NEAR(std::stod(rows[1][1]), want, 1e-12);
    EXPECT_NEAR(std::stod(rows[1][3]), std::abs(want - kPi * kPi) / (kPi * kPi), 1e-14);
}

TEST(CliDispersion, Fem1ConvergesAtFourthOrder) {
    std::vector<double> err;
    for (const char* n : {"15", "31", "63"}) {
        const auto rows = csv_rows(run_cli({"dispersion", "--method", "fem1", "--n", n}).out);
        err.push_back(std::stod(rows[1][3]));
    }
    // h halves (n+1 doubles) between runs.
    EXPECT_NEAR(err[0] / err[1], 4.0, 0.4);
    EXPECT_NEAR(err[1] / err[2], 4.0, 0.4);
}

TEST(CliDispersion, Fem2MarksTenNSquaredBranch) {
    const auto rows = csv_rows(run_cli({"dispersion", "--method", "fem2", "--n-elems", "8"}).out);
    ASSERT_EQ(rows.size(), 16u);
    bool found = false;
    for (const auto& row : rows)
        if (row[4] == "10n2") {
            EXPECT_EQ(std::stod(row[1]), 640.0);
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(CliDispersion, IgaExampleRuns) {
    const auto rows = csv_rows(run_cli({"dispersion", "--method", "iga2-example", "--n", "20"}).out);
    EXPECT_EQ(rows.size(), 21u);
    EXPECT_LT(std::stod(rows[1][3]), 1e-4);
}

TEST(CliDispersion, UnknownMethod) {
    EXPECT_EQ(run_cli({"dispersion", "--method", "spectral", "--n", "8"}).code, 2);
}

// ---------------------------------------------------------------------------
// pevp
// ---------------------------------------------------------------------------

TEST(CliPevp, QuadraticPencilFromJson) {
    TempDir dir;
    const std::string path = dir.file("p.json");
    std::ofstream(path) << R"({"variant":1,"n":6,"bands":[[1,0.2],["3+i",0.1],[4,1]]})";
    const Result r = run_cli({"pevp", "--input", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 13u);
    EXPECT_EQ(rows[0].back(), "oracle_distance");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][4]), 1e-10);
}

TEST(CliPevp, BadInputs) {
    TempDir dir;
    std::ofstream(dir.file("bad.json")) << "{not json";
    EXPECT_EQ(run_cli({"pevp", "--input", dir.file("bad.json")}).code, 2);
    std::ofstream(dir.file("zero.json")) << R"({"variant":1,"n":1,"bands":[[1],[1],[1]]})";
    EXPECT_EQ(run_cli({"pevp", "--input", dir.file("zero.json")}).code, 2);
    EXPECT_EQ(run_cli({"pevp", "--input", dir.file("missing.json")}).code, 2);
}
