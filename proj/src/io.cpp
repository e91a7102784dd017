#include "qtensor/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace qtensor {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return tokens;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Parsed {
  Tensor tensor;
  std::optional<Vector> q;
};

Parsed parse(std::istream& in, const std::string& source, bool want_q) {
  int line_no = 0;
  int order = 0;
  int dim = 0;
  bool have_header = false;
  std::vector<Entry> entries;
  std::optional<Vector> q;
  auto fail = [&](const std::string& what) {
    throw ParseError(source, line_no, what);
  };

  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::vector<std::string> tok = split(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (!have_header) {
      if (tok[0] != "tensor" || tok.size() != 3) {
        fail("expected header `tensor <m> <n>`");
      }
      const auto m = to_int(tok[1]);
      const auto n = to_int(tok[2]);
      if (!m || !n) fail("header order and dimension must be integers");
      if (*m < 2) fail("order must be at least 2");
      if (*n < 1) fail("dimension must be at least 1");
      order = *m;
      dim = *n;
      have_header = true;
      continue;
    }
    if (tok[0] == "q") {
      if (!want_q) fail("unexpected q line in a tensor file");
      if (q) fail("duplicate q line");
      if (static_cast<int>(tok.size()) != dim + 1) {
        fail("q line needs " + std::to_string(dim) + " values");
      }
      Vector v(dim);
      for (int i = 0; i < dim; ++i) {
        const auto x = to_double(tok[i + 1]);
        if (!x) fail("bad number `" + tok[i + 1] + "`");
        v[i] = *x;
      }
      q = v;
      continue;
    }
    if (static_cast<int>(tok.size()) != order + 1) {
      fail("entry needs " + std::to_string(order) + " indices and a value");
    }
    Entry e;
    for (int k = 0; k < order; ++k) {
      const auto i = to_int(tok[k]);
      if (!i) fail("bad index `" + tok[k] + "`");
      if (*i < 1 || *i > dim) {
        fail("index " + tok[k] + " outside [1, " + std::to_string(dim) + "]");
      }
      e.index.push_back(*i);
    }
    const auto v = to_double(tok[order]);
    if (!v) fail("bad number `" + tok[order] + "`");
    e.value = *v;
    entries.push_back(std::move(e));
  }
  if (!have_header) {
    line_no = std::max(line_no, 1);
    fail("missing header `tensor <m> <n>`");
  }
  if (want_q && !q) fail("missing q line");
  try {
    return {Tensor::from_entries(order, dim, std::move(entries)), q};
  } catch (const TensorError& e) {
    fail(e.what());
  }
  throw ParseError(source, line_no, "unreachable");
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TensorError("cannot open " + path);
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line,
                       const std::string& what)
    : TensorError(source + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

Tensor parse_tensor(std::istream& in, const std::string& source) {
  return parse(in, source, false).tensor;
}

TcpInstance parse_instance(std::istream& in, const std::string& source) {
  Parsed p = parse(in, source, true);
  return TcpInstance(std::move(p.tensor), std::move(*p.q));
}

Tensor read_tensor_file(const std::string& path) {
  std::ifstream in = open(path);
  return parse_tensor(in, path);
}

TcpInstance read_instance_file(const std::string& path) {
  std::ifstream in = open(path);
  return parse_instance(in, path);
}

void write_tensor(std::ostream& out, const Tensor& a) {
  const auto precision = out.precision(17);
  out << "tensor " << a.order() << " " << a.dim() << "\n";
  for (const Entry& e : a.nonzero_entries()) {
    for (int i : e.index) out << i << " ";
    out << e.value << "\n";
  }
  out.precision(precision);
}

void write_instance(std::ostream& out, const TcpInstance& inst) {
  write_tensor(out, inst.tensor);
  const auto precision = out.precision(17);
  out << "q";
  for (int i = 0; i < inst.q.size(); ++i) out << " " << inst.q[i];
  out << "\n";
  out.precision(precision);
}

}  // namespace qtensor
