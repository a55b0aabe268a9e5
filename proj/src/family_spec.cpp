#include "translab/family_spec.hpp"

#include "translab/errors.hpp"

#include <charconv>

namespace translab {

const std::vector<std::pair<std::string, std::string>>& family_catalog() {
  static const std::vector<std::pair<std::string, std::string>> c{
      {"toeplitz", "n"},           {"hankel", "n"},
      {"minimal", "m,n,k"},        {"diagann", "m,n,k"},
      {"rankann", "m,n,k"},        {"tracezero", "n"},
      {"dualtrans8", ""},          {"dualtrans8thm", ""},
      {"phiblock", "n,k"},         {"sltensor", "d,m"},
      {"rowaug", "<family spec>"}, {"pattern", "n:<n*n 0/1 mask>"},
      {"vandiag", "p,k"},          {"full", "m,n"},
      {"zero", "m,n"},             {"cornertoeplitz", "N,j"},
      {"cornerint", "N"},
  };
  return c;
}

namespace {

std::size_t arity(const std::string& name) {
  for (const auto& [n, sig] : family_catalog())
    if (n == name) return sig.empty() ? 0 : static_cast<std::size_t>(std::count(sig.begin(), sig.end(), ',') + 1);
  throw ParseError("unknown family '" + name + "'");
}

Index parse_param(std::string_view s, std::string_view whole) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("bad parameter '" + std::string(s) + "' in family spec '" + std::string(whole) + "'");
  if (v < 0 || v > 64) throw ParameterOutOfRange("parameter " + std::string(s) + " outside 0..64");
  return static_cast<Index>(v);
}

bool known(std::string_view name) {
  for (const auto& [n, sig] : family_catalog())
    if (n == name) return true;
  return false;
}

FamilySpec parse_body(std::string_view s, std::string_view whole) {
  FamilySpec spec;
  const auto colon = s.find(':');
  spec.name = std::string(s.substr(0, colon));
  const std::size_t want = arity(spec.name);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  if (spec.name == "rowaug") {
    if (rest.empty()) throw ParseError("rowaug needs an inner family spec");
    spec.inner = std::make_shared<FamilySpec>(parse_body(rest, whole));
    return spec;
  }
  if (spec.name == "pattern") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw ParseError("pattern spec is pattern:n:<mask>");
    const Index n = parse_param(rest.substr(0, c2), whole);
    spec.params = {n};
    spec.mask = std::string(rest.substr(c2 + 1));
    if (static_cast<Index>(spec.mask.size()) != n * n ||
        spec.mask.find_first_not_of("01") != std::string::npos)
      throw ParseError("pattern mask must be " + std::to_string(n * n) + " characters of 0/1");
    return spec;
  }
  if (!rest.empty()) {
    std::size_t pos = 0;
    while (true) {
      const auto comma = rest.find(',', pos);
      spec.params.push_back(parse_param(rest.substr(pos, comma - pos), whole));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  if (spec.params.size() != want)
    throw ParseError("family '" + spec.name + "' takes " + std::to_string(want) + " parameter(s), got " +
                     std::to_string(spec.params.size()));
  return spec;
}

}  // namespace

std::string FamilySpec::text() const {
  std::string out = name;
  if (name == "rowaug") {
    FamilySpec in = *inner;
    in.field = "Q";
    out += ":" + in.text();
  } else if (name == "pattern") {
    out += ":" + std::to_string(params.at(0)) + ":" + mask;
  } else {
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : ":") + std::to_string(params[i]);
  }
  if (field != "Q") out += "@" + field;
  return out;
}

bool is_family_spec(std::string_view s) {
  const auto at = s.rfind('@');
  const std::string_view body = s.substr(0, at);
  return known(body.substr(0, body.find(':')));
}

FamilySpec parse_family_spec(std::string_view s) {
  const auto at = s.rfind('@');
  FamilySpec spec = parse_body(s.substr(0, at), s);
  if (at != std::string_view::npos) {
    spec.field = std::string(s.substr(at + 1));
    parse_field_tag(spec.field);  // validates
  }
  return spec;
}

template <class S>
MatrixSubspace<S> build_family(const FamilySpec& spec, const Field<S>& f) {
  const auto& p = spec.params;
  const std::string& n = spec.name;
  if (n == "toeplitz") return toeplitz_space(f, p[0]);
  if (n == "hankel") return hankel_space(f, p[0]);
  if (n == "minimal") return minimal_k_transitive(f, p[0], p[1], p[2]);
  if (n == "diagann") return min_rank_diagonal_annihilator(f, p[0], p[1], p[2]);
  if (n == "rankann") return rank_annihilator_space(f, p[0], p[1], p[2]);
  if (n == "tracezero") return trace_zero(f, p[0]);
  if (n == "dualtrans8") return dual_transitive_8dim(f);
  if (n == "dualtrans8thm") return dual_transitive_8dim_theorem_form(f);
  if (n == "phiblock") return phi_block_space(f, p[0], p[1]);
  if (n == "sltensor") return sl_tensor_full(f, p[0], p[1]);
  if (n == "rowaug") return row_augmented_space(build_family(*spec.inner, f));
  if (n == "vandiag") return vandermonde_diagonal_space(f, p[0], p[1]);
  if (n == "cornertoeplitz") return corner_toeplitz(f, p[0], p[1]);
  if (n == "cornerint") return corner_toeplitz_intersection(f, p[0]);
  if (n == "full" || n == "zero" || n == "pattern") {
    const Index rows = p[0], cols = n == "pattern" ? p[0] : p[1];
    if (rows < 1 || cols < 1) throw ParameterOutOfRange(n + " needs positive dimensions");
    if (n == "full") return full_space(f, rows, cols);
    if (n == "zero") return zero_space(f, rows, cols);
    std::set<std::pair<Index, Index>> support;
    for (Index q = 0; q < rows * cols; ++q)
      if (spec.mask[static_cast<std::size_t>(q)] == '1') support.emplace(q / cols, q % cols);
    return pattern_subspace(rows, cols, f, support);
  }
  throw ParseError("unknown family '" + n + "'");
}

template MatrixSubspace<Rational> build_family(const FamilySpec&, const Field<Rational>&);
template MatrixSubspace<GaussRational> build_family(const FamilySpec&, const Field<GaussRational>&);
template MatrixSubspace<PrimeField> build_family(const FamilySpec&, const Field<PrimeField>&);
template MatrixSubspace<QuadExt> build_family(const FamilySpec&, const Field<QuadExt>&);

AnySubspace build_family(const FamilySpec& spec) {
  return std::visit([&](const auto& f) -> AnySubspace { return build_family(spec, f); }, parse_field_tag(spec.field));
}

std::string to_string(ExpectedProperty::Kind kind) {
  using K = ExpectedProperty::Kind;
  switch (kind) {
    case K::Dimension: return "dimension";
    case K::Transitive: return "transitive";
    case K::NotTransitive: return "not-transitive";
    case K::Separating: return "separating";
    case K::NotSeparating: return "not-separating";
    case K::PreannihilatorTransitive: return "preannihilator-transitive";
  }
  return "dimension";
}

std::vector<ExpectedProperty> expected_properties(const FamilySpec& spec) {
  using K = ExpectedProperty::Kind;
  const auto& p = spec.params;
  const std::string& n = spec.name;
  std::vector<ExpectedProperty> out;
  if (n == "toeplitz" || n == "hankel") {
    out.push_back({K::Dimension, 2 * p[0] - 1});
    if (p[0] >= 2) out.push_back({K::Transitive, 1});
    if (n == "toeplitz" && p[0] >= 3) {
      out.push_back({K::NotTransitive, 2});
      out.push_back({K::Separating, 2});
      out.push_back({K::NotSeparating, 3});
    }
  } else if (n == "minimal") {
    out.push_back({K::Dimension, p[2] * (p[0] + p[1] - p[2])});
    out.push_back({K::Transitive, p[2]});
    out.push_back({K::NotTransitive, p[2] + 1});
  } else if (n == "diagann") {
    out.push_back({K::Dimension, p[0] * p[1] - p[2] * (p[0] + p[1] - p[2])});
  } else if (n == "rankann") {
    out.push_back({K::Dimension, p[0] * p[1] - 1});
    out.push_back({K::Transitive, p[2]});
    out.push_back({K::NotTransitive, p[2] + 1});
  } else if (n == "tracezero") {
    out.push_back({K::Dimension, p[0] * p[0] - 1});
    out.push_back({K::Transitive, p[0] - 1});
    out.push_back({K::NotTransitive, p[0]});
  } else if (n == "dualtrans8") {
    out.push_back({K::Dimension, 8});
    out.push_back({K::Transitive, 1});
    out.push_back({K::PreannihilatorTransitive, 1});
  } else if (n == "dualtrans8thm") {
    out.push_back({K::Dimension, 8});
  } else if (n == "phiblock") {
    out.push_back({K::Dimension, 2 * p[0] * p[0]});
    out.push_back({K::Transitive, p[1]});
    out.push_back({K::PreannihilatorTransitive, p[1]});
  } else if (n == "sltensor") {
    out.push_back({K::Dimension, (p[0] * p[0] - 1) * p[1] * p[1]});
    out.push_back({K::Transitive, p[0] - 1});
    out.push_back({K::NotTransitive, p[0]});
  } else if (n == "rowaug") {
    const FamilySpec& in = *spec.inner;
    const Index cols = build_family(in, Field<Rational>()).cols();
    const auto inner = expected_properties(in);
    for (const auto& e : inner)
      if (e.kind == K::Dimension) out.push_back({K::Dimension, e.value + cols});
    out.push_back({K::Separating, cols});
    if (in.name == "zero") out.push_back({K::NotTransitive, 1});
    for (const auto& e : inner)
      if (e.kind == K::Transitive || (e.kind == K::NotTransitive && in.name != "zero")) out.push_back(e);
  } else if (n == "pattern") {
    out.push_back({K::Dimension, static_cast<Index>(std::count(spec.mask.begin(), spec.mask.end(), '1'))});
    const bool all = spec.mask.find('0') == std::string::npos;
    out.push_back({all ? K::Transitive : K::NotTransitive, 1});
  } else if (n == "vandiag") {
    out.push_back({K::Dimension, p[0] - p[1]});
  } else if (n == "full") {
    out.push_back({K::Dimension, p[0] * p[1]});
    out.push_back({K::Transitive, std::min(p[0], p[1])});
  } else if (n == "zero") {
    out.push_back({K::Dimension, 0});
  } else if (n == "cornertoeplitz") {
    const Index s = 2 * p[1] + 1;
    out.push_back({K::Dimension, p[0] * p[0] - s * s + 2 * s - 1});
  }
  return out;
}

}  // namespace translab
