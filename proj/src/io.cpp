#include "polargrass/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polargrass {

namespace {

template <typename M>
json matrix_json(const M& a) {
  json data = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      cplx z(a(i, k));
      data.push_back(json::array({z.real(), z.imag()}));
    }
  }
  json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  j["data"] = std::move(data);
  return j;
}

Index count_field(const json& j, const char* key) {
  const json& v = require_field(j, key, "matrix");
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ParseError(std::string("matrix: '") + key + "' must be a non-negative integer");
  }
  const auto n = v.get<long long>();
  if (n < 0) throw ParseError(std::string("matrix: '") + key + "' is negative");
  return static_cast<Index>(n);
}

void write_number(std::ostream& os, double x) {
  if (!std::isfinite(x)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

void write_string(std::ostream& os, const std::string& s) { os << json(s).dump(); }

void write_value(std::ostream& os, const json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        write_string(os, it.key());
        os << (indent > 0 ? ": " : ":");
        write_value(os, it.value(), indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Leaf arrays of scalars stay on one line; keeps matrices readable.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat ? ", " : ",");
        if (!flat) pad(depth + 1);
        write_value(os, j[i], indent, depth + 1);
      }
      if (!flat) pad(depth);
      os << ']';
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    case json::value_t::string:
      write_string(os, j.get<std::string>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

json matrix_to_json(const CMatrix& a) { return matrix_json(a); }
json matrix_to_json(const RMatrix& a) { return matrix_json(a); }

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object");
  const Index rows = count_field(j, "rows");
  const Index cols = count_field(j, "cols");
  const json& data = require_field(j, "data", "matrix");
  if (!data.is_array()) throw ParseError("matrix: 'data' must be an array");
  if (static_cast<Index>(data.size()) != rows * cols) {
    std::ostringstream os;
    os << "matrix: 'data' has " << data.size() << " entries, expected " << rows * cols;
    throw ParseError(os.str());
  }
  CMatrix a(rows, cols);
  for (Index idx = 0; idx < rows * cols; ++idx) {
    a(idx / cols, idx % cols) = complex_from_json(data[static_cast<std::size_t>(idx)]);
  }
  return a;
}

RMatrix real_matrix_from_json(const json& j) {
  CMatrix a = matrix_from_json(j);
  if (max_abs(RMatrix(a.imag())) != 0.0) throw ParseError("matrix: expected real entries");
  return a.real();
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where) {
  if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed) ok = ok || it.key() == key;
    if (!ok) throw ParseError(std::string(where) + ": unknown key '" + it.key() + "'");
  }
}

const json& require_field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string(where) + ": missing '" + key + "'");
  }
  return j.at(key);
}

double number_field(const json& j, const char* key, const char* where) {
  const json& v = require_field(j, key, where);
  if (!v.is_number()) throw ParseError(std::string(where) + ": '" + key + "' must be a number");
  return v.get<double>();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  write_value(os, j, indent, 0);
  os << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("write failed for '" + path + "'");
}

}  // namespace polargrass
