#include <gtest/gtest.h>

#include <filesystem>

#include "sparsesense/error.hpp"
#include "sparsesense/io_util.hpp"

using namespace sparsesense;

TEST(IoUtil, FormatExactRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 0.0}) {
    const auto text = format_exact(v);
    EXPECT_EQ(parse_double(text).value(), v) << text;
  }
}

TEST(IoUtil, FormatSig9) {
  EXPECT_EQ(format_sig9(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_sig9(0.5), "0.5");
  EXPECT_EQ(format_sig9(123456789012.0), "1.23456789e+11");
}

TEST(IoUtil, ParseNumbers) {
  EXPECT_EQ(parse_double(" +1.5 ").value(), 1.5);
  EXPECT_FALSE(parse_double("").has_value());
  EXPECT_FALSE(parse_double("1.5x").has_value());
  EXPECT_EQ(parse_int("42").value(), 42);
  EXPECT_FALSE(parse_int("4.2").has_value());
}

TEST(IoUtil, SplitAndTrim) {
  const auto parts = split("a,,b,", ',');
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(parts[1], "");
  EXPECT_EQ(parts[3], "");
  EXPECT_EQ(trim("  x \r"), "x");
}

TEST(IoUtil, Fnv1aKnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(IoUtil, AtomicWriteCreatesParentsAndLeavesNoTemp) {
  const auto dir = std::filesystem::temp_directory_path() / "sparsesense_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "out.txt";
  write_file_atomic(path, "hello");
  EXPECT_EQ(read_text_file(path), "hello");
  write_file_atomic(path, "again");
  EXPECT_EQ(read_text_file(path), "again");
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(path.parent_path())) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_text_file(path), IoError);
}
