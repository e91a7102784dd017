#include "qtensor/verdict.hpp"

#include <sstream>

namespace qtensor {

const char* class_name(TensorClass cls) {
  switch (cls) {
    case TensorClass::kNonnegative:
      return "nonnegative";
    case TensorClass::kQ:
      return "Q";
    case TensorClass::kR0:
      return "R0";
    case TensorClass::kR:
      return "R";
    case TensorClass::kER:
      return "ER";
    case TensorClass::kP0:
      return "P0";
    case TensorClass::kP0Prime:
      return "P0prime";
    case TensorClass::kSP0:
      return "SP0";
    case TensorClass::kSemiPositive:
      return "semipositive";
    case TensorClass::kCopositive:
      return "copositive";
  }
  return "?";
}

std::optional<TensorClass> parse_class(std::string_view name) {
  for (TensorClass cls : kAllClasses) {
    if (name == class_name(cls)) return cls;
  }
  if (name == "P0'") return TensorClass::kP0Prime;
  if (name == "semi-positive") return TensorClass::kSemiPositive;
  return std::nullopt;
}

const char* to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::kCertifiedHolds:
      return "CERTIFIED";
    case VerdictStatus::kFalsified:
      return "FALSIFIED";
    case VerdictStatus::kUnfalsified:
      return "UNFALSIFIED";
  }
  return "?";
}

const char* to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kPoint:
      return "point";
    case WitnessKind::kPair:
      return "pair";
    case WitnessKind::kPointScalar:
      return "point-scalar";
    case WitnessKind::kIndex:
      return "index";
    case WitnessKind::kQVector:
      return "q-vector";
  }
  return "?";
}

Witness Witness::point(Vector x) {
  Witness w;
  w.kind = WitnessKind::kPoint;
  w.x = std::move(x);
  return w;
}

Witness Witness::pair(Vector x, Vector y) {
  Witness w;
  w.kind = WitnessKind::kPair;
  w.x = std::move(x);
  w.y = std::move(y);
  return w;
}

Witness Witness::point_scalar(Vector x, double t) {
  Witness w;
  w.kind = WitnessKind::kPointScalar;
  w.x = std::move(x);
  w.t = t;
  return w;
}

Witness Witness::index_of(int i) {
  Witness w;
  w.kind = WitnessKind::kIndex;
  w.index = i;
  return w;
}

Witness Witness::q_vector(Vector q) {
  Witness w;
  w.kind = WitnessKind::kQVector;
  w.q = std::move(q);
  return w;
}

std::string format_vector(const Vector& v) {
  std::ostringstream out;
  out.precision(17);
  out << "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) out << ",";
    out << v[i];
  }
  out << ")";
  return out.str();
}

std::string Witness::summary() const {
  std::ostringstream out;
  switch (kind) {
    case WitnessKind::kPoint:
      out << "x=" << format_vector(x);
      break;
    case WitnessKind::kPair:
      out << "x=" << format_vector(x) << " y=" << format_vector(y);
      break;
    case WitnessKind::kPointScalar:
      out << "x=" << format_vector(x) << " t=" << t;
      break;
    case WitnessKind::kIndex:
      out << "index=" << index + 1;
      if (!coefficient.empty()) {
        out << " coefficient=(";
        for (std::size_t k = 0; k < coefficient.size(); ++k) {
          if (k > 0) out << ",";
          out << coefficient[k];
        }
        out << ")";
      }
      if (x.size() > 0) out << " x=" << format_vector(x);
      break;
    case WitnessKind::kQVector:
      out << "q=" << format_vector(q);
      break;
  }
  return out.str();
}

std::string to_text(const Verdict& v) {
  std::ostringstream out;
  out << class_name(v.cls) << " " << to_string(v.status);
  if (v.witness) {
    out << " " << v.witness->summary() << " violation=" << v.witness->violation;
  }
  if (!v.certificate.empty()) out << " [" << v.certificate << "]";
  return out.str();
}

std::string to_record(const Verdict& v) {
  std::ostringstream out;
  out.precision(17);
  out << "class=" << class_name(v.cls) << " status=" << to_string(v.status);
  if (!v.certificate.empty()) out << " certificate=" << v.certificate;
  if (v.witness) {
    const Witness& w = *v.witness;
    out << " witness=" << to_string(w.kind);
    if (w.x.size() > 0) out << " x=" << format_vector(w.x);
    if (w.y.size() > 0) out << " y=" << format_vector(w.y);
    if (w.kind == WitnessKind::kPointScalar) out << " t=" << w.t;
    if (w.index >= 0) out << " index=" << w.index + 1;
    if (w.q.size() > 0) out << " q=" << format_vector(w.q);
    out << " violation=" << w.violation;
  }
  out << " samples=" << v.effort.samples << " searches=" << v.effort.searches
      << " seed=" << v.effort.seed;
  if (v.effort.inconclusive > 0) {
    out << " inconclusive=" << v.effort.inconclusive;
  }
  return out.str();
}

}  // namespace qtensor
