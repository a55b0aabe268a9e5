#include "translab/json_io.hpp"

#include "translab/errors.hpp"

#include <regex>

namespace translab {

AnyField parse_field_tag(std::string_view tag) {
  if (tag == "Q") return Field<Rational>();
  if (tag == "Qi") return Field<GaussRational>();
  static const std::regex gf(R"(GF\((\d{1,10})(\^2)?\))");
  std::cmatch m;
  if (!std::regex_match(tag.data(), tag.data() + tag.size(), m, gf))
    throw ParseError("unknown field '" + std::string(tag) + "' (expected Q, Qi, GF(p) or GF(p^2))");
  const std::int64_t p = std::stoll(m[1].str());
  try {
    if (m[2].matched) return Field<QuadExt>(p);
    return Field<PrimeField>(p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string field_tag(const AnySubspace& v) {
  return std::visit([](const auto& s) { return s.field().tag(); }, v);
}

json subspace_to_json(const AnySubspace& v) {
  return std::visit([](const auto& s) { return subspace_to_json(s); }, v);
}

namespace {

std::string at(const std::string& source, const std::string& path) { return source + ": " + path + ": "; }

Index dimension_field(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) throw ParseError(at(source, std::string("/") + key) + "missing");
  const json& v = doc[key];
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096)
    throw ParseError(at(source, std::string("/") + key) + "expected a positive integer");
  return v.get<Index>();
}

template <class S>
AnySubspace load(const Field<S>& f, const json& doc, Index rows, Index cols, bool strict, const std::string& source) {
  if (!doc.contains("basis")) throw ParseError(at(source, "/basis") + "missing");
  const json& basis = doc["basis"];
  if (!basis.is_array()) throw ParseError(at(source, "/basis") + "expected an array of entry lists");
  const Index len = rows * cols;
  Mat<S> coords(static_cast<Index>(basis.size()), len);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string path = "/basis/" + std::to_string(i);
    if (!basis[i].is_array() || static_cast<Index>(basis[i].size()) != len)
      throw ParseError(at(source, path) + "expected " + std::to_string(len) + " row-major entries");
    for (std::size_t q = 0; q < basis[i].size(); ++q) {
      const json& e = basis[i][q];
      const std::string epath = path + "/" + std::to_string(q);
      if (!e.is_string()) throw ParseError(at(source, epath) + "entries must be strings");
      try {
        coords(static_cast<Index>(i), static_cast<Index>(q)) = f.parse(e.get<std::string>());
      } catch (const ParseError& err) {
        throw ParseError(at(source, epath) + err.what());
      }
    }
  }
  MatrixSubspace<S> v(rows, cols, f, coords);
  if (strict && v.dim() != coords.rows())
    throw ParseError(at(source, "/basis") + "generators are linearly dependent (dim " + std::to_string(v.dim()) +
                     " from " + std::to_string(coords.rows()) + ")");
  return v;
}

}  // namespace

AnySubspace subspace_from_json(std::string_view text, bool strict, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Byte offset to line and column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
  if (!doc.is_object()) throw ParseError(at(source, "/") + "expected an object");
  if (!doc.contains("field") || !doc["field"].is_string()) throw ParseError(at(source, "/field") + "missing or not a string");
  AnyField field;
  try {
    field = parse_field_tag(doc["field"].get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(at(source, "/field") + e.what());
  }
  const Index rows = dimension_field(doc, "rows", source), cols = dimension_field(doc, "cols", source);
  return std::visit([&](const auto& f) { return load(f, doc, rows, cols, strict, source); }, field);
}

}  // namespace translab
