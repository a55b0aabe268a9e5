// translab: build matrix subspaces, decide k-transitivity and k-separation,
// compose subspaces and reproduce the report.
//
// Exit codes: 0 computed (a verdict may still be Unknown), 1 usage or input
// error, 2 budget exceeded, 3 report with failing rows.

#include "translab/deciders.hpp"
#include "translab/family_spec.hpp"
#include "translab/json_io.hpp"
#include "translab/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace translab;

namespace {

constexpr int kUsage = 1;
constexpr int kBudget = 2;
constexpr int kReportFailed = 3;

AnySubspace load_input(const std::string& input, bool strict) {
  if (is_family_spec(input)) return build_family(parse_family_spec(input));
  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input);
    if (!in) throw ParseError("cannot open '" + input + "' (not a file or family spec)");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return subspace_from_json(text, strict, input == "-" ? "<stdin>" : input);
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ParseError("cannot write '" + out + "'");
  f << text;
}

template <class Fn>
json binary(const AnySubspace& a, const AnySubspace& b, Fn&& fn) {
  return std::visit(
      [&](const auto& x, const auto& y) -> json {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<X, Y>) {
          return subspace_to_json(fn(x, y));
        } else {
          throw FieldMismatch("operands are over " + x.field().tag() + " and " + y.field().tag());
        }
      },
      a, b);
}

template <class F>
json extremes_over(const MatrixSubspace<F>& l, const std::string& input, std::uint64_t budget) {
  const auto x = rank_extremes_ff(l, budget);
  json j{{"input", input}, {"field", l.field().tag()}, {"min_nonzero_rank", x.min_nonzero_rank}};
  j["max_singular_rank"] = x.max_singular_rank ? json(*x.max_singular_rank) : json(nullptr);
  j["enumerated"] = x.enumerated;
  if (x.min_witness) j["min_witness"] = matrix_to_json(l.field(), x.min_witness->matrix);
  if (x.max_singular_witness) j["max_singular_witness"] = matrix_to_json(l.field(), x.max_singular_witness->matrix);
  j["observation"] = "r + s >= n is asserted over C only";
  return j;
}

template <class S>
json extremes_json(const MatrixSubspace<S>& l, const std::string& input, std::int64_t prime, std::uint64_t budget) {
  if constexpr (Field<S>::finite) {
    return extremes_over(l, input, budget);
  } else {
    if (!is_prime(prime)) throw ParseError("--prime: " + std::to_string(prime) + " is not prime");
    json j;
    detail::with_reduction(l, prime, [&](const auto&, const auto& reduced) {
      if (!reduced) throw ParseError("dimension drops modulo " + std::to_string(prime));
      j = extremes_over(*reduced, input, budget);
    });
    return j;
  }
}

struct Options {
  std::string input, input2, output;
  Index k = 1;
  std::string strategy = "certify";
  std::vector<std::int64_t> primes{5, 7};
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  bool strict = false;
  int max_r = 8;
  int attempts = 200;
  std::int64_t prime = 5;
  std::string format = "json";
  std::string what;
};

DeciderConfig config(const Options& o) {
  DeciderConfig c;
  c.primes = o.primes;
  c.seed = o.seed;
  c.budget = o.budget;
  c.threads = o.threads;
  c.strategy = parse_strategy(o.strategy);
  return c;
}

json with_input(const std::string& input, json body) {
  json out{{"input", input}};
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translab: transitive and separating subspaces of matrices"};
  app.require_subcommand(1);
  Options o;
  std::string families;
  for (const auto& [name, sig] : family_catalog()) families += "  " + name + (sig.empty() ? "" : ":" + sig) + "\n";
  app.footer("Inputs are subspace JSON files, '-' for stdin, or family specs (optionally suffixed @Q, @Qi,\n"
             "@GF(p), @GF(p^2)):\n" + families);

  auto add_decider_opts = [&](CLI::App* c) {
    c->add_option("-k", o.k, "k")->required()->check(CLI::Range(1, 64));
    c->add_option("--strategy", o.strategy, "certify | ff | numeric | exact")
        ->check(CLI::IsMember({"certify", "auto", "ff", "numeric", "exact"}));
    c->add_option("--primes", o.primes, "primes for finite-field certification")->delimiter(',');
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--budget", o.budget, "enumeration budget (points or subspaces)");
    c->add_option("--threads", o.threads, "threads for exhaustive enumeration")->check(CLI::Range(1, 256));
  };
  auto add_input = [&](CLI::App* c) {
    c->add_option("input", o.input, "subspace file or family spec")->required();
    c->add_flag("--strict", o.strict, "reject dependent generator lists");
  };
  auto add_output = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "output file (default stdout)"); };

  auto* c_new = app.add_subcommand("new", "build a family instance");
  c_new->add_option("spec", o.input, "family spec")->required();
  add_output(c_new);

  auto* c_check = app.add_subcommand("check", "decide k-transitivity");
  add_input(c_check);
  add_decider_opts(c_check);

  auto* c_sep = app.add_subcommand("sep", "decide k-separation");
  add_input(c_sep);
  add_decider_opts(c_sep);

  auto* c_pre = app.add_subcommand("preann", "pre-annihilator under the trace pairing");
  add_input(c_pre);
  add_output(c_pre);

  auto* c_tensor = app.add_subcommand("tensor", "span of Kronecker products");
  add_input(c_tensor);
  c_tensor->add_option("input2", o.input2, "second subspace")->required();
  add_output(c_tensor);

  auto* c_prod = app.add_subcommand("prod", "span of products A B");
  add_input(c_prod);
  c_prod->add_option("input2", o.input2, "second subspace")->required();
  add_output(c_prod);

  auto* c_pow = app.add_subcommand("power-index", "least r with span{L, ..., L^r} full");
  add_input(c_pow);
  c_pow->add_option("--max-r", o.max_r, "largest power tried")->check(CLI::Range(1, 64));

  auto* c_inv = app.add_subcommand("invertible", "random search for an invertible element");
  add_input(c_inv);
  c_inv->add_option("--attempts", o.attempts, "attempts")->check(CLI::Range(1, 1000000));
  c_inv->add_option("--seed", o.seed, "RNG seed");

  auto* c_ext = app.add_subcommand("extremes", "minimum nonzero and maximum singular rank over a finite field");
  add_input(c_ext);
  c_ext->add_option("--prime", o.prime, "prime used to reduce Q input");
  c_ext->add_option("--budget", o.budget, "enumeration budget");

  auto* c_report = app.add_subcommand("report", "reproduce every claim in the manifest");
  c_report->add_option("what", o.what, "report name")->required()->check(CLI::IsMember({"paper"}));
  c_report->add_option("--format", o.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  c_report->add_option("--primes", o.primes, "primes for finite-field certification")->delimiter(',');
  c_report->add_option("--seed", o.seed, "RNG seed");
  c_report->add_option("--budget", o.budget, "enumeration budget");
  c_report->add_option("--threads", o.threads, "threads for exhaustive enumeration")->check(CLI::Range(1, 256));
  add_output(c_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*c_new) {
      emit(subspace_to_json(build_family(parse_family_spec(o.input))), o.output);
    } else if (*c_check || *c_sep) {
      const DeciderConfig cfg = config(o);
      for (auto p : cfg.primes)
        if (!is_prime(p)) throw ParseError("--primes: " + std::to_string(p) + " is not prime");
      bool budget_hit = false;
      const json out = std::visit(
          [&](const auto& l) -> json {
            if (*c_check) {
              const auto v = check_k_transitive(l, o.k, cfg);
              budget_hit = v.evidence.budget_exceeded;
              return verdict_to_json(l.field(), v);
            }
            const auto v = check_k_separating(l, o.k, cfg);
            budget_hit = v.evidence.budget_exceeded;
            return verdict_to_json(l.field(), v);
          },
          load_input(o.input, o.strict));
      emit(with_input(o.input, out), "");
      return budget_hit ? kBudget : 0;
    } else if (*c_pre) {
      emit(std::visit([](const auto& l) { return subspace_to_json(preannihilator(l)); }, load_input(o.input, o.strict)),
           o.output);
    } else if (*c_tensor) {
      emit(binary(load_input(o.input, o.strict), load_input(o.input2, o.strict),
                  [](const auto& a, const auto& b) { return tensor(a, b); }),
           o.output);
    } else if (*c_prod) {
      emit(binary(load_input(o.input, o.strict), load_input(o.input2, o.strict),
                  [](const auto& a, const auto& b) { return product_span(a, b); }),
           o.output);
    } else if (*c_pow) {
      const auto r = std::visit([&](const auto& l) { return power_span_index(l, o.max_r); }, load_input(o.input, o.strict));
      emit(json{{"input", o.input}, {"max_r", o.max_r}, {"power_index", r ? json(*r) : json(nullptr)}}, "");
    } else if (*c_inv) {
      const json out = std::visit(
          [&](const auto& l) -> json {
            const auto e = find_invertible(l, o.attempts, o.seed);
            json j{{"input", o.input}, {"seed", o.seed}, {"attempts", o.attempts}};
            if (!e) {
              j["found"] = false;
              return j;
            }
            j["found"] = true;
            j["attempt"] = e->attempt;
            j["coefficients"] = vector_to_json(l.field(), e->coefficients);
            j["matrix"] = matrix_to_json(l.field(), e->matrix);
            return j;
          },
          load_input(o.input, o.strict));
      emit(out, "");
    } else if (*c_ext) {
      const json out = std::visit([&](const auto& l) { return extremes_json(l, o.input, o.prime, o.budget); },
                                  load_input(o.input, o.strict));
      emit(out, "");
    } else if (*c_report) {
      DeciderConfig cfg;
      cfg.primes = o.primes;
      cfg.seed = o.seed;
      cfg.budget = o.budget;
      cfg.threads = o.threads;
      const Report r = report_paper(cfg);
      if (o.format == "table") {
        if (o.output.empty() || o.output == "-") {
          std::cout << r.table();
        } else {
          std::ofstream(o.output) << r.table();
        }
      } else {
        emit(r.to_json(), o.output);
      }
      return r.all_pass() ? 0 : kReportFailed;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "translab: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "translab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "translab: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
