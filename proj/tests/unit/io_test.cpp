#include "qtensor/io.hpp"

#include <sstream>

#include <gtest/gtest.h>

namespace qtensor {
namespace {

TEST(ParseTensor, ReadsEntriesAndComments) {
  std::istringstream in(
      "# the first sign-pattern example\n"
      "tensor 3 2\n"
      "\n"
      "1 2 1 1\n"
      "  # indented comment\n"
      "2 1 1 -1\n");
  const Tensor a = parse_tensor(in);
  EXPECT_EQ(a.order(), 3);
  EXPECT_EQ(a.dim(), 2);
  EXPECT_EQ(a.at({0, 1, 0}), 1.0);
  EXPECT_EQ(a.at({1, 0, 0}), -1.0);
}

TEST(ParseInstance, ReadsQLine) {
  std::istringstream in("tensor 3 2\n1 2 2 1\nq -4 1.5e0\n");
  const TcpInstance inst = parse_instance(in);
  EXPECT_EQ(inst.q, (Vector(2) << -4, 1.5).finished());
}

int error_line(const std::string& text, bool instance) {
  std::istringstream in(text);
  try {
    if (instance) {
      parse_instance(in, "f");
    } else {
      parse_tensor(in, "f");
    }
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("f:" + std::to_string(e.line())),
              std::string::npos);
    return e.line();
  }
  return -1;
}

TEST(ParseErrors, NameTheLine) {
  EXPECT_EQ(error_line("tensor 3\n", false), 1);
  EXPECT_EQ(error_line("# c\nmatrix 3 2\n", false), 2);
  EXPECT_EQ(error_line("tensor 3 2\n1 1 1 1\n1 1 3 1\n", false), 3);
  EXPECT_EQ(error_line("tensor 3 2\n1 1 1\n", false), 2);
  EXPECT_EQ(error_line("tensor 3 2\n1 1 1 abc\n", false), 2);
  EXPECT_EQ(error_line("tensor 1 2\n", false), 1);
  EXPECT_EQ(error_line("tensor 3 2\nq 1 1\n", false), 2);
  EXPECT_EQ(error_line("tensor 3 2\n1 1 1 1\n", true), 2);
  EXPECT_EQ(error_line("tensor 3 2\nq 1\n", true), 2);
  EXPECT_EQ(error_line("tensor 3 2\nq 1 1\nq 1 1\n", true), 3);
  EXPECT_EQ(error_line("", false), 1);
}

TEST(ReadFiles, MissingFileThrows) {
  EXPECT_THROW(read_tensor_file("/nonexistent/qtensor.tensor"), TensorError);
}

TEST(WriteTensor, RoundTripsFullPrecision) {
  const Tensor a = Tensor::from_entries(
      3, 2, {{{1, 1, 2}, 0.1}, {{2, 2, 2}, 1.0 / 3.0}, {{2, 1, 1}, -1e-300}});
  std::stringstream buf;
  write_instance(buf, TcpInstance(a, (Vector(2) << 0.7, -2.0 / 3.0).finished()));
  const TcpInstance back = parse_instance(buf);
  EXPECT_EQ(back.tensor.coeffs(), a.coeffs());
  EXPECT_EQ(back.q, (Vector(2) << 0.7, -2.0 / 3.0).finished());
}

}  // namespace
}  // namespace qtensor
