#pragma once

// JSON interchange for subspaces and verdicts.
//
// Subspace: {"rows": m, "cols": n, "field": "Q" | "Qi" | "GF(p)" | "GF(p^2)",
//            "basis": [[row-major entry strings], ...]}

#include "translab/deciders.hpp"
#include "translab/field.hpp"
#include "translab/subspace.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

namespace translab {

using json = nlohmann::ordered_json;

using AnySubspace = std::variant<MatrixSubspace<Rational>, MatrixSubspace<GaussRational>, MatrixSubspace<PrimeField>,
                                 MatrixSubspace<QuadExt>>;
using AnyField = std::variant<Field<Rational>, Field<GaussRational>, Field<PrimeField>, Field<QuadExt>>;

/// "Q", "Qi", "GF(p)", "GF(p^2)".
AnyField parse_field_tag(std::string_view tag);

std::string field_tag(const AnySubspace& v);

/// Parses subspace JSON. Errors are ParseError with "source:line:col" for
/// syntax problems and "source: <json path>" for content problems. With
/// strict set, a dependent generator list is rejected.
AnySubspace subspace_from_json(std::string_view text, bool strict = false, const std::string& source = "<input>");

template <class S>
json matrix_to_json(const Field<S>& f, const Mat<S>& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(f.format(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
json vector_to_json(const Field<S>& f, const Vec<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(f.format(v(i)));
  return out;
}

template <class S>
json subspace_to_json(const MatrixSubspace<S>& v) {
  json basis = json::array();
  for (Index i = 0; i < v.dim(); ++i) {
    json entries = json::array();
    for (Index q = 0; q < v.ambient_dim(); ++q) entries.push_back(v.field().format(v.coords()(i, q)));
    basis.push_back(std::move(entries));
  }
  return json{{"rows", v.rows()}, {"cols", v.cols()}, {"field", v.field().tag()}, {"basis", std::move(basis)}};
}

json subspace_to_json(const AnySubspace& v);

inline json evidence_to_json(const Evidence& e) {
  json enums = json::array();
  for (const auto& x : e.enumerations)
    enums.push_back({{"field", x.field}, {"kind", x.kind}, {"visited", x.visited}, {"total", x.total}});
  json out{{"strategies", e.strategies}, {"primes", e.primes}, {"enumerations", std::move(enums)}};
  out["seed"] = e.seed ? json(*e.seed) : json(nullptr);
  out["budget_exceeded"] = e.budget_exceeded;
  out["notes"] = e.notes;
  return out;
}

template <class S>
json witness_to_json(const Field<S>& f, const RankWitness<S>& w) {
  return json{{"coefficients", vector_to_json(f, w.coefficients)},
              {"matrix", matrix_to_json(f, w.matrix)},
              {"rank", w.rank},
              {"rank_bound", w.rank_bound}};
}

template <class S>
json verdict_to_json(const Field<S>& f, const TransitivityVerdict<S>& v) {
  json out{{"kind", "transitivity"}, {"k", v.k}, {"field", v.field}, {"status", to_string(v.status)}};
  out["certified_over"] = v.certified_over;
  out["validity"] = v.validity();
  out["witness"] = v.witness ? witness_to_json(f, *v.witness) : json(nullptr);
  out["closure_certificate"] = v.closure_certificate ? json(*v.closure_certificate) : json(nullptr);
  out["evidence"] = evidence_to_json(v.evidence);
  return out;
}

template <class S>
json verdict_to_json(const Field<S>& f, const SeparationVerdict<S>& v) {
  json out{{"kind", "separation"}, {"k", v.k}, {"field", v.field}, {"status", to_string(v.status)}};
  out["certified_over"] = v.certified_over;
  out["validity"] = v.validity();
  out["witness"] = v.witness ? matrix_to_json(f, *v.witness) : json(nullptr);
  out["evidence"] = evidence_to_json(v.evidence);
  return out;
}

}  // namespace translab
