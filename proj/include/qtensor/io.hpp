#pragma once

#include <iosfwd>
#include <string>

#include "qtensor/tcp.hpp"
#include "qtensor/tensor.hpp"

namespace qtensor {

/// Text formats.
///
/// Tensor file:
///   tensor <m> <n>
///   <i1> ... <im> <value>     (1-based indices; unlisted coefficients are 0)
/// Instance file: a tensor file plus one line `q <v1> ... <vn>`.
/// Lines whose first non-blank character is '#' are comments.

class ParseError : public TensorError {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

Tensor parse_tensor(std::istream& in, const std::string& source = "<input>");
TcpInstance parse_instance(std::istream& in,
                           const std::string& source = "<input>");

Tensor read_tensor_file(const std::string& path);
TcpInstance read_instance_file(const std::string& path);

/// Writes the nonzero coefficients in storage order with round-trip
/// precision.
void write_tensor(std::ostream& out, const Tensor& a);
void write_instance(std::ostream& out, const TcpInstance& inst);

}  // namespace qtensor
