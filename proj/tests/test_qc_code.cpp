#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcldpc/base_matrix.hpp"
#include "qcldpc/compact_index.hpp"
#include "qcldpc/layer_schedule.hpp"
#include "test_support.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

using namespace qcldpc;
using namespace qcldpc::testing;

namespace {

ParseErrorKind parse_failure(std::string_view text, std::size_t expected_line)
{
    try {
        (void)parse_base_matrix(text);
    } catch (const ParseError& e) {
        CHECK(e.line() == expected_line);
        return e.kind();
    }
    FAIL("expected a parse error");
    return ParseErrorKind::bad_token;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("parse the three-row example matrix")
{
    const auto base = parse_base_matrix("3 3 4\n1 0 -1\n2 1 1\n0 2 0\n");
    CHECK(base.n_rows() == 3);
    CHECK(base.n_cols() == 3);
    CHECK(base.z() == 4);
    CHECK(base == no_merge_example(4));
    CHECK(base.edge_count() == 8);
}

TEST_CASE("smallest valid matrix")
{
    const auto base = parse_base_matrix("1 2 1\n0 0\n");
    CHECK(base.n_rows() == 1);
    CHECK(base.n_cols() == 2);
    CHECK(descriptor(base).rate == doctest::Approx(0.5));
}

TEST_CASE("parse errors carry kind and line")
{
    CHECK(parse_failure("2 3 4\n0 1 2\n-1 -1 -1\n", 3) == ParseErrorKind::empty_check_row);
    CHECK(parse_failure("2 3\n0 1 2\n", 1) == ParseErrorKind::malformed_header);
    CHECK(parse_failure("", 1) == ParseErrorKind::malformed_header);
    CHECK(parse_failure("0 3 4\n", 1) == ParseErrorKind::malformed_header);
    CHECK(parse_failure("2 3 4\n0 1 2\n0 1\n", 3) == ParseErrorKind::wrong_column_count);
    CHECK(parse_failure("2 3 4\n0 1 2\n", 3) == ParseErrorKind::wrong_row_count);
    CHECK(parse_failure("1 3 4\n0 1 2\n0 1 2\n", 3) == ParseErrorKind::wrong_row_count);
    CHECK(parse_failure("1 3 4\n0 4 2\n", 2) == ParseErrorKind::shift_out_of_range);
    CHECK(parse_failure("1 3 4\n0 -2 2\n", 2) == ParseErrorKind::shift_out_of_range);
    CHECK(parse_failure("1 3 4\n0 x 2\n", 2) == ParseErrorKind::bad_token);
    CHECK(parse_failure("1 3 4\n0 1.5 2\n", 2) == ParseErrorKind::bad_token);

    try {
        (void)parse_base_matrix("2 3 4\n0 1 2\n-1 -1 -1\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "line 3: empty check row");
    }
}

TEST_CASE("trailing blank lines and CRLF are tolerated")
{
    CHECK(parse_base_matrix("1 2 3\r\n0 2\r\n\n\n") == BaseMatrix(1, 2, 3, {0, 2}));
}

TEST_CASE("constructor rejects invalid grids")
{
    CHECK_THROWS_AS(BaseMatrix(1, 2, 0, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BaseMatrix(1, 2, 4, {0}), std::invalid_argument);
    CHECK_THROWS_AS(BaseMatrix(1, 2, 4, {-1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(BaseMatrix(1, 2, 4, {0, 4}), std::invalid_argument);
}

TEST_CASE("serializer output is canonical")
{
    CHECK(serialize(no_merge_example(4)) == "3 3 4\n1 0 -1\n2 1 1\n0 2 0\n");
    CHECK(parse_base_matrix(" 3  3 4\n1\t0 -1\n+2 1 1 \n0 2 0") == no_merge_example(4));
}

TEST_CASE("shipped matrix files are in canonical form")
{
    for (const char* name : {"demo_4x8_z100.txt", "desk_4x8_z32.txt", "desk_mergeable_8x16_z32.txt",
                             "desk_rate0.1_18x20_z32.txt"}) {
        CAPTURE(name);
        const std::string text = read_file(code_path(name));
        CHECK(serialize(parse_base_matrix(text)) == text);
    }
}

TEST_CASE("load_base_matrix reports unreadable files")
{
    CHECK_THROWS_AS(load_base_matrix("/nonexistent/matrix.txt"), std::ios_base::failure);
    CHECK(load_base_matrix(code_path("demo_4x8_z100.txt")).n_cols() == 8);
}

TEST_CASE("parse of serialize is identity on random matrices")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto base = random_base(rng);
        CHECK(parse_base_matrix(serialize(base)) == base);
    }
}

TEST_CASE("expand: zero shift is the identity")
{
    const auto h = expand(BaseMatrix(1, 1, 3, {0}));
    REQUIRE(h.n_checks() == 3);
    for (std::uint32_t k = 0; k < 3; ++k) {
        REQUIRE(h.row(k).size() == 1);
        CHECK(h.row(k)[0] == k);
    }
}

TEST_CASE("expand: shift one rotates right")
{
    const auto h = expand(BaseMatrix(1, 1, 3, {1}));
    CHECK(h.row(0)[0] == 1);
    CHECK(h.row(1)[0] == 2);
    CHECK(h.row(2)[0] == 0);
    CHECK(h.col(0)[0] == 2);
}

TEST_CASE("expand matches the dense circulant oracle on the three-row example")
{
    const auto base = no_merge_example(4);
    const auto h = expand(base);
    CHECK(h.n_edges() == 32);
    const auto dense = dense_expand(base);
    std::size_t ones = 0;
    for (std::size_t m = 0; m < h.n_checks(); ++m) {
        std::vector<std::uint32_t> expected;
        for (std::size_t n = 0; n < dense[m].size(); ++n)
            if (dense[m][n])
                expected.push_back(static_cast<std::uint32_t>(n));
        ones += expected.size();
        const auto row = h.row(m);
        CHECK(std::vector<std::uint32_t>(row.begin(), row.end()) == expected);
    }
    CHECK(ones == 32);
}

TEST_CASE("expansion properties on random matrices")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto base = random_base(rng);
        const auto h = expand(base);
        const auto dense = dense_expand(base);
        const std::size_t z = base.z();
        CAPTURE(serialize(base));

        std::vector<std::size_t> col_deg(base.n_cols(), 0);
        for (std::size_t c = 0; c < base.n_cols(); ++c)
            for (std::size_t r = 0; r < base.n_rows(); ++r)
                col_deg[c] += base.is_zero(r, c) ? 0 : 1;

        for (std::size_t m = 0; m < h.n_checks(); ++m) {
            const auto row = h.row(m);
            CHECK(std::is_sorted(row.begin(), row.end()));
            std::size_t base_row_deg = 0;
            for (std::size_t c = 0; c < base.n_cols(); ++c)
                base_row_deg += base.is_zero(m / z, c) ? 0 : 1;
            CHECK(row.size() == base_row_deg);
            std::vector<std::uint8_t> from_sparse(h.n_vars(), 0);
            for (const auto n : row)
                from_sparse[n] = 1;
            CHECK(from_sparse == dense[m]);
        }
        for (std::size_t n = 0; n < h.n_vars(); ++n) {
            CHECK(h.col(n).size() == col_deg[n / z]);
            for (std::size_t i = 0; i < h.col(n).size(); ++i)
                CHECK(h.edge_vars()[h.col_edges(n)[i]] == n);
        }
        CHECK(h.n_edges() == z * std::accumulate(col_deg.begin(), col_deg.end(), std::size_t{0}));
    }
}

TEST_CASE("compact index of the three-row example")
{
    const auto base = no_merge_example(4);
    const auto index = build_compact_index(base, single_row_schedule(3));
    CHECK(index.total_edges() == 8);
    CHECK(index.expanded_edges() == 32);
    const auto degrees = index.col_degrees();
    CHECK(std::vector<std::size_t>(degrees.begin(), degrees.end()) == std::vector<std::size_t>{3, 3, 2});
    CHECK(index.n_layers() == 3);
    CHECK(index.max_row_degree() == 3);

    const auto edges = index.edges();
    REQUIRE(edges.size() == 8);
    CHECK(edges[0] == EdgeRecord{1, 0, 0});
    CHECK(edges[1] == EdgeRecord{0, 0, 1});
    CHECK(edges[2] == EdgeRecord{2, 1, 0});
    CHECK(edges[6] == EdgeRecord{2, 2, 1});
    CHECK(edges[7] == EdgeRecord{0, 2, 2});
}

TEST_CASE("compact index groups edges by layer order")
{
    const auto base = merge_rows_02_example(5);
    const auto schedule = greedy_schedule(base);
    const auto index = build_compact_index(base, schedule);
    REQUIRE(index.n_layers() == 2);
    const auto first = index.layer_rows(0);
    REQUIRE(first.size() == 2);
    CHECK(first[0].base_row == 0);
    CHECK(first[1].base_row == 2);
    CHECK(first[1].layer_slot == 1);
    CHECK(index.layer_rows(1)[0].base_row == 1);
    CHECK(index.layer_rows(1)[0].layer_slot == 2);
    // row 2 = [-1 2 1] sits in slot 1
    const auto row2 = index.row_edges(first[1]);
    REQUIRE(row2.size() == 2);
    CHECK(row2[0] == EdgeRecord{2, 1, 1});
    CHECK(row2[1] == EdgeRecord{1, 1, 2});
    CHECK(index.edges()[2].layer_slot == 1);
}

TEST_CASE("compact index edge counts")
{
    CHECK(build_compact_index(merge_rows_01_example(4), greedy_schedule(merge_rows_01_example(4))).total_edges() == 6);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto base = random_base(rng);
        const auto index = build_compact_index(base, greedy_schedule(base));
        const auto deg = index.col_degrees();
        CHECK(index.total_edges() == base.edge_count());
        CHECK(std::accumulate(deg.begin(), deg.end(), std::size_t{0}) == base.edge_count());
        CHECK(index.expanded_edges() == base.edge_count() * base.z());
    }
}

TEST_CASE("compact index rejects bad schedules")
{
    CHECK_THROWS_AS(LayerSchedule({}, 3), std::invalid_argument);
    CHECK_THROWS_AS(LayerSchedule({{0, 1}, {3}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_compact_index(no_merge_example(4), single_row_schedule(2)), std::invalid_argument);
    // rows 0 and 1 of the first example share column 0
    CHECK_THROWS_AS(build_compact_index(no_merge_example(4), LayerSchedule({{0, 1}, {2}}, 3)), std::invalid_argument);
}

TEST_CASE("descriptor arithmetic")
{
    SUBCASE("4x8 demo shape")
    {
        const auto d = descriptor(load_base_matrix(code_path("demo_4x8_z100.txt")));
        CHECK(d.block_length == 800);
        CHECK(d.n_checks == 400);
        CHECK(d.rate == doctest::Approx(0.5));
    }
    SUBCASE("square matrices have no positive rate")
    {
        CHECK_THROWS_AS(descriptor(no_merge_example(100)), std::invalid_argument);
    }
    SUBCASE("1507 base edges at z = 2500")
    {
        // 360 x 400 (rate 0.1): every row gets 4 entries, 67 rows a fifth
        const std::size_t rows = 360, cols = 400;
        std::vector<int> shifts(rows * cols, -1);
        std::size_t placed = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t count = r < 67 ? 5 : 4;
            for (std::size_t j = 0; j < count; ++j)
                shifts[r * cols + (r + j * 37) % cols] = static_cast<int>((r * 7 + j) % 2500);
            placed += count;
        }
        REQUIRE(placed == 1507);
        const auto d = descriptor(BaseMatrix(rows, cols, 2500, std::move(shifts)));
        CHECK(d.total_edges == 1507);
        CHECK(d.total_expanded_edges == 3767500);
        CHECK(d.block_length == 1000000);
        CHECK(d.rate == doctest::Approx(0.1));
    }
}
