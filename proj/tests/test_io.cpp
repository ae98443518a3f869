#include <gtest/gtest.h>

#include <filesystem>

#include "hadamax/error.hpp"
#include "hadamax/io.hpp"

using namespace hadamax;

TEST(MatrixText, RoundTrip) {
    const auto h = construct_q3(*FieldContext::build(7, 1));
    const auto text = format_matrix(h);
    EXPECT_EQ(text.substr(0, 2), "8\n");
    EXPECT_EQ(parse_matrix(text), h);
    EXPECT_EQ(parse_matrix("2\r\n+-\r\n--\r\n\n"), SignMatrix::from_rows({{1, -1}, {-1, -1}}));
}

TEST(MatrixText, Errors) {
    for (const char* bad : {"", "x\n", "0\n", "2\n++\n", "2\n++\n+\n", "2\n++\n+0\n", "2\n++\n++\n++\n"}) {
        try {
            parse_matrix(bad);
            ADD_FAILURE() << "accepted: " << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::ParseError);
        }
    }
}

TEST(PartitionText, ParsesDataFiles) {
    const auto p = parse_partition(read_file(std::filesystem::path(HADAMAX_DATA_DIR) / "m3.scheme"));
    EXPECT_EQ(p.q, 17u);
    EXPECT_EQ(p.m, 3u);
    EXPECT_EQ(p.e, 12u);
    EXPECT_EQ(p.h[1], (std::vector<std::uint32_t>{0, 2, 9, 10}));
    EXPECT_EQ(parse_partition(format_partition(p)), p);
    const auto p5 = parse_partition(read_file(std::filesystem::path(HADAMAX_DATA_DIR) / "m5.scheme"));
    EXPECT_EQ(p5.h[0], (std::vector<std::uint32_t>{2, 3, 10, 19}));
}

TEST(PartitionText, Errors) {
    for (const char* bad : {"17 3\n1\n2\n3\n4\n", "17 3 12\n1 5\n", "17 3 12\n1 x\n2\n3\n4\n", "17 3 12\n1 12\n2\n3\n4\n",
                            "17 3 0\n1\n2\n3\n4\n"}) {
        EXPECT_THROW(parse_partition(bad), Error) << bad;
    }
    EXPECT_THROW(read_file("/nonexistent/file"), Error);
}

TEST(Json, ExcessReportFields) {
    const auto r = excess_report(construct_q3(*FieldContext::build(11, 1)));
    const auto j = to_json(r);
    for (const char* key : {"n", "excess", "k", "t", "s", "bound", "row_sums", "classification"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["n"], 12);
    EXPECT_EQ(j["excess"], r.excess);
    std::int64_t total = 0;
    for (const auto& [value, count] : j["row_sums"].items()) total += std::stoll(value) * count.get<std::int64_t>();
    EXPECT_EQ(total, r.excess);
}

TEST(Json, SchemeReportShape) {
    SchemePartition part{17, 3, 12, {{{1, 5}, {0, 2, 9, 10}, {7, 11}, {3, 4, 6, 8}}}, 1};
    auto ext = scheme_field(part);
    const auto j = to_json(align_partition(*ext, part));
    EXPECT_TRUE(j["is_scheme"].get<bool>());
    EXPECT_TRUE(j["table1_match"].get<bool>());
    EXPECT_EQ(j["eigenmatrix"].size(), 5u);
    EXPECT_EQ(j["eigenmatrix"][0].size(), 5u);
    EXPECT_EQ(j["eigenmatrix"][0][1][0], 48.0);
    EXPECT_EQ(j["class_sizes"], (std::vector<int>{1, 48, 96, 48, 96}));
}

TEST(Files, AtomicWrite) {
    const auto dir = std::filesystem::temp_directory_path() / "hadamax_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    EXPECT_EQ(read_file(path), "second");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
    std::filesystem::remove_all(dir);
}
