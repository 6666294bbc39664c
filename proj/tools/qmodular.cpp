// qmodular: command-line front end for the q-expansion engine.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qmodular/expr_parser.hpp"
#include "qmodular/identities.hpp"
#include "qmodular/json_io.hpp"
#include "qmodular/levels.hpp"

using namespace qmodular;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::optional<int> level;
  std::optional<long> weight;
  std::optional<long> prec;
  std::string format = "text";
  std::string out;
  std::string expr;
  std::string identity = "all";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int need_level(const Options& o) {
  if (!o.level) throw UsageError("--level is required");
  return *o.level;
}

long need_weight(const Options& o) {
  if (!o.weight) throw UsageError("--weight is required");
  if (*o.weight % 2 != 0) throw UsageError("--weight must be even");
  return *o.weight;
}

const std::string& need_expr(const Options& o) {
  if (o.expr.empty()) throw UsageError("--expr is required");
  return o.expr;
}

bool json_format(const Options& o) { return o.format == "json"; }

void emit(const Options& o, const std::string& doc) {
  if (o.out.empty()) {
    std::cout << doc << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot open " + o.out + " for writing");
  f << doc << '\n';
}

int cmd_dims(const Options& o) {
  const Registry& reg = Registry::builtin();
  if (o.weight) {
    const long d = reg.dimension(need_level(o), need_weight(o));
    emit(o, json_format(o) ? dims_json(*o.level, {{*o.weight, d}}) : std::to_string(d));
    return kOk;
  }
  std::ostringstream text;
  std::string doc;
  const int lo = o.level.value_or(1), hi = o.level.value_or(10);
  for (int N = lo; N <= hi; ++N) {
    reg.level(N);
    std::vector<std::pair<long, long>> rows;
    text << "N=" << N << ":";
    for (long w = 2; w <= 16; w += 2) {
      rows.emplace_back(w, reg.dimension(N, w));
      text << ' ' << rows.back().second;
    }
    text << '\n';
    if (json_format(o)) doc += dims_json(N, rows) + (N < hi ? "\n" : "");
  }
  std::string t = text.str();
  t.pop_back();
  emit(o, json_format(o) ? doc : t);
  return kOk;
}

int cmd_basis(const Options& o) {
  const int N = need_level(o);
  const long w = need_weight(o);
  const long d = Registry::builtin().dimension(N, w);
  const BasisSet b = basis(N, w, o.prec.value_or(d + 10));
  if (json_format(o)) {
    emit(o, basis_json(b));
    return kOk;
  }
  std::ostringstream text;
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    const auto& e = b.elements[i];
    text << e.label << " = " << to_display_string(e.series) << (i + 1 < b.elements.size() ? "\n" : "");
  }
  emit(o, text.str());
  return kOk;
}

int cmd_expand(const Options& o) {
  const FormExpr e = parse_expr(need_expr(o));
  Expander expander;
  const long p = o.prec.value_or(ceil_long(expander.valuation_bound(e)) + 10);
  const QSeries f = expander.expand(e, p);
  emit(o, json_format(o) ? series_json(f) : to_display_string(f));
  return kOk;
}

int cmd_reduce(const Options& o) {
  const int N = need_level(o);
  const long w = need_weight(o);
  const FormExpr e = parse_expr(need_expr(o));
  if (e.weight() != w) throw UsageError("expression has weight " + to_string(e.weight()));
  const long d = Registry::builtin().dimension(N, w);
  const long p = o.prec.value_or(d + 10);
  Expander expander;
  const BasisSet b = basis(N, w, p, expander);
  const std::vector<Rational> c = reduce(expander.expand(e, p), b);
  if (json_format(o)) {
    emit(o, coordinates_json(N, w, c));
    return kOk;
  }
  std::ostringstream text;
  for (std::size_t s = 0; s < c.size(); ++s) {
    text << b.elements[s].label << ": " << to_string(c[s]) << (s + 1 < c.size() ? "\n" : "");
  }
  emit(o, text.str());
  return kOk;
}

int cmd_verify(const Options& o) {
  const long p = o.prec.value_or(0);
  std::vector<IdentityReport> reports;
  if (o.identity == "all") {
    reports = check_all(p);
  } else {
    const IdentityCase& c = find_identity(o.identity);
    Expander expander;
    reports.push_back(check(c, p > 0 ? p : c.default_prec, expander));
  }
  bool ok = true;
  std::ostringstream text;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    ok = ok && r.pass;
    text << (r.pass ? "PASS " : "FAIL ") << r.name << " (prec " << r.prec << ")";
    if (!r.pass) {
      text << ": first difference at q^" << to_string(*r.first_bad_exponent) << ", lhs " << to_string(r.lhs_coefficient)
           << ", rhs " << to_string(r.rhs_coefficient);
    }
    if (i + 1 < reports.size()) text << '\n';
  }
  emit(o, json_format(o) ? identities_json(reports) : text.str());
  return ok ? kOk : kVerifyFailed;
}

// E(2018,10,2018) = E(4,10,2) E(2,10,0)^335 Delta_10^336 of weight 2018.
int cmd_bench(const Options& o) {
  static const char* const expected[] = {"1",
                                         "-672",
                                         "226131",
                                         "-50806116",
                                         "8574211132",
                                         "-1159385836896",
                                         "130843082948319",
                                         "-12676560614152160",
                                         "1076314597159060977",
                                         "-81359425707034726432"};
  constexpr long kWeight = 2018, kIndex = 2018, kTerms = 10;
  const auto t0 = std::chrono::steady_clock::now();
  Expander expander;
  const QSeries f = basis_element(10, kWeight, kIndex, kIndex + kTerms, expander);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool ok = f.valuation() == kIndex;
  std::ostringstream text;
  text << "E(" << kWeight << ",10," << kIndex << ") = " << Registry::builtin().element_label(10, kWeight, kIndex) << '\n';
  for (long i = 0; i < kTerms; ++i) {
    const Rational c = f.coefficient(Rational(kIndex + i));
    const bool match = to_string(c) == expected[i];
    ok = ok && match;
    text << "q^" << kIndex + i << ": " << to_string(c) << (match ? "" : "  (expected " + std::string(expected[i]) + ")")
         << '\n';
  }
  text << "time: " << secs << " s\n" << (ok ? "match" : "MISMATCH");
  emit(o, text.str());
  return ok ? kOk : kVerifyFailed;
}

int cmd_dump_levels(const Options& o) {
  emit(o, levels_json(Registry::builtin()));
  return kOk;
}

int usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotInSpan:
      return kVerifyFailed;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-expansions of modular forms on Gamma0(N), 1 <= N <= 10"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--level", o.level, "Level N")->check(CLI::Range(1, 10));
    sub->add_option("--weight", o.weight, "Even weight 2k")->check(CLI::PositiveNumber);
    sub->add_option("--prec", o.prec, "Series known to O(q^P)")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out, "Write the document to this file");
    return sub;
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
  commands.emplace_back(common(app.add_subcommand("basis", "Unitary upper-triangular basis")), cmd_basis);
  commands.emplace_back(common(app.add_subcommand("dims", "Dimensions of M_2k(Gamma0(N))")), cmd_dims);
  auto* expand_cmd = common(app.add_subcommand("expand", "Expand an expression"));
  expand_cmd->add_option("--expr", o.expr, "Expression to expand");
  commands.emplace_back(expand_cmd, cmd_expand);
  auto* reduce_cmd = common(app.add_subcommand("reduce", "Coordinates of an expression in the basis"));
  reduce_cmd->add_option("--expr", o.expr, "Expression to reduce");
  commands.emplace_back(reduce_cmd, cmd_reduce);
  auto* verify_cmd = common(app.add_subcommand("verify", "Check registered identities"));
  verify_cmd->add_option("--identity", o.identity, "Identity name or 'all'");
  commands.emplace_back(verify_cmd, cmd_verify);
  commands.emplace_back(common(app.add_subcommand("bench", "High-weight level-10 basis element")), cmd_bench);
  commands.emplace_back(common(app.add_subcommand("dump-levels", "Registry as JSON")), cmd_dump_levels);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn(o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage_kind(e.kind());
  }
  return kUsage;
}
