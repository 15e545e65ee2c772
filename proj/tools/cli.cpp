#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "kapranov/error.hpp"
#include "kapranov/json_io.hpp"

namespace kapranov::cli {

namespace {

struct Result {
  Json payload;
  int code = kOk;
};

struct Options {
  std::string format = "json";
  std::string n_range;
  int n = 0;
  int h = 1;
  unsigned threads = 1;
  std::string file;
  std::string json;
  std::string sets;
  int chart = 1;
  int degree_chart = 0;
  std::uint64_t seed = 0;
  int trials = 20;
  std::string kind = "psi";
  std::string side;
  long genus = 0;
  int ambient = 0;
  std::string degs;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (...) {
      throw InputError("bad n range '" + text + "'");
    }
    if (used != s.size()) throw InputError("bad n range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  return {to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
}

Json read_json_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("cannot parse " + where + ": " + e.what());
  }
}

Json read_json_input(const Options& o) {
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw InputError("cannot open " + o.file);
    std::stringstream buf;
    buf << in.rdbuf();
    return read_json_text(buf.str(), o.file);
  }
  if (!o.json.empty()) return read_json_text(o.json, "--json");
  return nullptr;
}

ForgetfulMorphism load_morphism(const Options& o) {
  Json j = read_json_input(o);
  if (j.is_null()) {
    if (o.n == 0 || o.sets.empty()) throw InputError("give --file, --json, or --n with --sets");
    j = {{"n", o.n}, {"forgotten", read_json_text(o.sets, "--sets")}};
  }
  return morphism_from_json(j);
}

Json issues_json(const std::vector<MorphismIssue>& issues) {
  Json out = Json::array();
  for (const auto& i : issues)
    out.push_back({{"kind", issue_name(i.kind)}, {"positions", i.positions}, {"message", i.message}});
  return out;
}

Json sets_json(const std::vector<IndexSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(to_json(s));
  return out;
}

// Valid morphism or an invalid-input result.
std::optional<Result> reject_invalid(const ForgetfulMorphism& m) {
  auto issues = validate(m);
  if (issues.empty()) return std::nullopt;
  return Result{{{"valid", false}, {"issues", issues_json(issues)}}, kInvalidInput};
}

Result picard_verify(const Options& o) {
  const auto [lo, hi] = parse_range(o.n_range);
  if (lo < 5 || hi > 12 || lo > hi) throw InputError("picard verify needs 5 <= n <= 12");
  Json results = Json::array();
  bool ok = true;
  for (int n = lo; n <= hi; ++n) {
    Json nonzero = Json::array();
    const auto residuals = verify_all_relations(n);
    for (const auto& r : residuals)
      if (!r.residual.is_zero())
        nonzero.push_back({{"relation", relation_name(r.kind)}, {"charts", r.charts}, {"residual", r.residual.to_string()}});
    ok = ok && nonzero.empty();
    results.push_back({{"n", n}, {"rank", picard_rank(n)}, {"checked", residuals.size()}, {"nonzero", nonzero}});
  }
  return {{{"ok", ok}, {"results", results}}, ok ? kOk : kPropertyViolated};
}

Result picard_rank_cmd(const Options& o) {
  const auto [lo, hi] = parse_range(o.n_range);
  Json ranks = Json::object();
  for (int n = lo; n <= hi; ++n) ranks[std::to_string(n)] = picard_rank(n);
  if (lo == hi) return {{{"n", lo}, {"rank", picard_rank(lo)}}};
  return {{{"ranks", ranks}}};
}

Result picard_class(const Options& o) {
  const int n = parse_range(o.n_range).first;
  DivisorClass d = DivisorClass::zero(n);
  if (o.kind == "psi") {
    d = psi_class(n, o.chart);
  } else if (o.kind == "canonical") {
    d = canonical_class(n);
  } else if (o.kind == "boundary") {
    d = boundary_class(boundary_label(index_set_from_json(n, read_json_text(o.side, "--side"))));
  } else {
    throw InputError("--kind must be psi, canonical or boundary");
  }
  return {to_json(d)};
}

Result morphism_check(const Options& o) {
  const ForgetfulMorphism m = load_morphism(o);
  if (auto bad = reject_invalid(m)) return *bad;
  Json out = {{"valid", true}, {"h", m.fiber_dim()}, {"morphism", to_json(m)}};
  const auto violations = star_violations(m);
  out["surjective"] = violations.empty();
  out["violations"] = violations;
  if (violations.empty()) {
    out["reduced"] = is_reduced(m);
    out["equality_subfamilies"] = equality_subfamilies(m);
  }
  const auto chart = linear_chart(m);
  out["linear_chart"] = chart ? Json(*chart) : Json(nullptr);
  out["fiber"] = to_json(fiber_descriptor(m, o.chart));
  return {out, violations.empty() ? kOk : kPropertyViolated};
}

Result morphism_reduce(const Options& o) {
  const ForgetfulMorphism m = load_morphism(o);
  if (auto bad = reject_invalid(m)) return *bad;
  if (!is_surjective(m))
    return {{{"surjective", false}, {"violations", star_violations(m)}}, kPropertyViolated};
  const Reduction r = reduce(m);
  Json trace = Json::array();
  for (const auto& step : r.trace)
    trace.push_back({{"positions", step.positions}, {"merged", sets_json(step.merged)}, {"result", to_json(step.result)}});
  return {{{"surjective", true},
           {"h", m.fiber_dim()},
           {"reduced", to_json(r.reduced)},
           {"steps", r.trace.size()},
           {"trace", trace}}};
}

Result morphism_classify(const Options& o) {
  if (o.n < 5 || o.n > 8) throw InputError("classify needs 5 <= n <= 8");
  if (o.h < 1) throw InputError("classify needs h >= 1");
  const auto orbits = classify_orbits(o.n, o.h, o.threads);
  Json list = Json::array();
  for (const auto& m : orbits) list.push_back(sets_json(m.forgotten));
  return {{{"n", o.n}, {"h", o.h}, {"count", orbits.size()}, {"orbits", list}}};
}

CurveNumerics load_numerics(const Options& o) {
  Json j = read_json_input(o);
  if (j.is_null()) throw InputError("give --file or --json");
  return numerics_from_json(j);
}

Result numerics_genus(const Options& o) {
  const CurveNumerics c = load_numerics(o);
  return {{{"n", c.n}, {"g", genus_from_m(c)}}};
}

Result numerics_degree(const Options& o) {
  const CurveNumerics c = load_numerics(o);
  const long g = c.g ? *c.g : genus_from_m(c);
  Json d = Json::object();
  for (int i = 1; i <= c.n; ++i)
    if (o.degree_chart == 0 || o.degree_chart == i) d[std::to_string(i)] = degree_from_m(c, g, i);
  return {{{"n", c.n}, {"g", g}, {"d", d}}};
}

Result numerics_identities(const Options& o) {
  CurveNumerics c = load_numerics(o);
  if (!c.g || !c.d) {
    CurveNumerics full = complete_numerics(c);
    if (!c.g) c.g = full.g;
    if (!c.d) c.d = full.d;
  }
  Json failures = Json::array();
  for (const auto& f : check_identities(c))
    failures.push_back({{"identity", f.identity}, {"charts", f.charts}, {"lhs", f.lhs.get_str()}, {"rhs", f.rhs.get_str()}});
  Json out = {{"numerics", to_json(c)},
              {"ok", failures.empty()},
              {"failures", failures},
              {"specialized", to_json(specialize_identity_iii(c.n, *c.g))},
              {"factors_through_point", factors_through_point(c)}};
  return {out, failures.empty() ? kOk : kPropertyViolated};
}

Result numerics_specialize(const Options& o) {
  if (o.n < 5) throw InputError("specialize needs n >= 5");
  return {to_json(specialize_identity_iii(o.n, o.genus))};
}

Result numerics_ci_genus(const Options& o) {
  std::vector<long> degs;
  std::stringstream in(o.degs);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      degs.push_back(std::stol(item, &used));
      if (used != item.size()) throw InputError("bad degree '" + item + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad degree '" + item + "'");
    }
  }
  return {{{"ambient", o.ambient}, {"degrees", degs}, {"g", ci_genus(o.ambient, degs).get_str()}}};
}

Result geom_config(const Options& o) { return {to_json(random_config(o.n, o.chart, o.seed))}; }

Result geom_oracle(const Options& o) {
  const ForgetfulMorphism m = load_morphism(o);
  if (auto bad = reject_invalid(m)) return *bad;
  const RationalConfig cfg = random_config(m.n, o.chart, o.seed);
  const StarRankReport r = star_rank_check(cfg, m, o.trials, o.threads);
  const bool surjective = is_surjective(m);
  const bool agree = surjective == r.verdict;
  return {{{"agree", agree},
           {"surjective", surjective},
           {"rank_verdict", r.verdict},
           {"h", r.h},
           {"min_dim", r.min_dim},
           {"trial_dims", r.trial_dims},
           {"violations", star_violations(m)},
           {"seed", o.seed},
           {"trials", o.trials}},
          agree ? kOk : kPropertyViolated};
}

Result geom_rnc(const Options& o) {
  const RationalConfig cfg = random_config(o.n, o.chart, o.seed);
  for (std::uint64_t t = 0; t < 16; ++t) {
    auto rng = trial_rng(o.seed, 1000 + t);
    const Vec extra = random_point(cfg.dim(), rng);
    RNC c;
    try {
      c = rnc_through(cfg, extra);
    } catch (const Error& e) {
      if (e.code() == Errc::DegeneratePoint) continue;
      throw;
    }
    const RncCheck check = check_rnc(cfg, c, extra, rng);
    Json params = Json::array();
    for (const auto& [label, st] : c.params)
      params.push_back({{"label", label}, {"param", {to_string(st.first), to_string(st.second)}}});
    Json coords = Json::array();
    for (const auto& f : c.coords) coords.push_back(to_json(f));
    const bool ok = check.incidence && check.spans && check.hyperplane_roots == c.degree;
    return {{{"degree", c.degree},
             {"incidence", check.incidence ? "ok" : "fail"},
             {"spans", check.spans},
             {"hyperplane_roots", check.hyperplane_roots},
             {"extra_point", to_json(extra)},
             {"params", params},
             {"coords", coords}},
            ok ? kOk : kPropertyViolated};
  }
  throw Error(Errc::DegeneratePoint, "no general extra point found");
}

Result geom_factorize(const Options& o) {
  const ForgetfulMorphism m = load_morphism(o);
  if (auto bad = reject_invalid(m)) return *bad;
  const auto chart = linear_chart(m);
  if (!chart) throw InputError("every label is forgotten; the fiber is not linear in any chart");
  if (!is_surjective(m) || m.fiber_dim() < 1) throw InputError("factorize needs a surjective morphism with h >= 1");
  const RationalConfig cfg = random_config(m.n, *chart, o.seed);
  auto rng = trial_rng(o.seed, 0);
  const LinearSubspace fiber = linear_fiber(cfg, m, random_point(cfg.dim(), rng));
  const auto recovered = linear_fiber_factorization(cfg, fiber);
  std::vector<IndexSet> expected = m.forgotten;
  std::sort(expected.begin(), expected.end());
  const bool match = recovered && recovered->forgotten == expected;
  return {{{"chart", *chart},
           {"fiber_dimension", fiber.dimension()},
           {"recovered", recovered ? sets_json(recovered->forgotten) : Json(nullptr)},
           {"match", match}},
          match ? kOk : kPropertyViolated};
}

void render_table(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar_list = [](const Json& a) {
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const Json& x) { return !x.is_structured() || (x.is_array() && std::none_of(x.begin(), x.end(), [](const Json& y) { return y.is_object(); })); });
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !scalar_list(value))) {
        out << pad << key << ":\n";
        render_table(value, out, indent + 2);
      } else {
        out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (item.is_structured() && !scalar_list(item)) {
        out << pad << "-\n";
        render_table(item, out, indent + 2);
      } else {
        out << pad << "- " << item.dump() << '\n';
      }
    }
  } else {
    out << pad << j.dump() << '\n';
  }
}

int exit_for(Errc code) {
  switch (code) {
    case Errc::NonIntegerGenus:
    case Errc::NegativeGenus:
    case Errc::ChartInconsistency:
    case Errc::NonIntegerDegree:
    case Errc::NonPositiveDegree: return kPropertyViolated;
    default: return kInvalidInput;
  }
}

void write_out_dir(const std::string& name, const std::string& text) {
  const char* dir = std::getenv("KAPRANOV_OUT_DIR");
  if (!dir || !*dir) return;
  std::filesystem::create_directories(dir);
  std::ofstream(std::filesystem::path(dir) / (name + ".json")) << text << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kapranov-model toolkit for M_{0,n}: Picard relations, forgetful morphisms, curve numerics, exact geometry"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::function<Result()> action;
  std::string name;

  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  auto on = [&](CLI::App* sub, const std::string& label, Result (*fn)(const Options&)) {
    sub->callback([&, label, fn] {
      name = label;
      action = [&, fn] { return fn(o); };
    });
  };
  auto morphism_inputs = [&](CLI::App* sub) {
    sub->add_option("--file", o.file, "Morphism JSON file");
    sub->add_option("--json", o.json, "Inline morphism JSON");
    sub->add_option("--n", o.n, "Number of markings");
    sub->add_option("--sets", o.sets, "Forgotten sets, e.g. [[1,2],[3,4]]");
  };
  auto numerics_inputs = [&](CLI::App* sub) {
    sub->add_option("--file", o.file, "Numerics JSON file");
    sub->add_option("--json", o.json, "Inline numerics JSON");
  };

  auto* picard = app.add_subcommand("picard", "Picard group of M_{0,n} in the chart-1 basis");
  picard->require_subcommand(1);
  auto* pv = picard->add_subcommand("verify", "Check every relation for every chart tuple");
  pv->add_option("--n", o.n_range, "n or a range such as 5..9")->required();
  on(pv, "picard_verify", picard_verify);
  auto* pr = picard->add_subcommand("rank", "Rank of the Picard group");
  pr->add_option("--n", o.n_range, "n or a range")->required();
  on(pr, "picard_rank", picard_rank_cmd);
  auto* pc = picard->add_subcommand("class", "A divisor class in the basis");
  pc->add_option("--n", o.n_range, "n")->required();
  pc->add_option("--kind", o.kind, "psi, canonical or boundary");
  pc->add_option("--chart", o.chart, "Chart for psi");
  pc->add_option("--side", o.side, "Boundary side, e.g. [1,2]");
  on(pc, "picard_class", picard_class);

  auto* morphism = app.add_subcommand("morphism", "Products of forgetful maps");
  morphism->require_subcommand(1);
  auto* mc = morphism->add_subcommand("check", "Validity, surjectivity, reducedness, fiber description");
  morphism_inputs(mc);
  mc->add_option("--chart", o.chart, "Chart for the fiber descriptor");
  on(mc, "morphism_check", morphism_check);
  auto* mr = morphism->add_subcommand("reduce", "Merge equality subfamilies until reduced");
  morphism_inputs(mr);
  on(mr, "morphism_reduce", morphism_reduce);
  auto* mk = morphism->add_subcommand("classify", "Reduced surjective morphisms up to relabelling");
  mk->set_help_flag("--help", "Print this help message and exit");
  mk->add_option("--n", o.n, "Number of markings")->required();
  mk->add_option("--h", o.h, "Fiber dimension");
  mk->add_option("--threads", o.threads, "Worker threads");
  on(mk, "morphism_classify", morphism_classify);

  auto* numerics = app.add_subcommand("numerics", "Genus and degree calculus for fibrations by curves");
  numerics->require_subcommand(1);
  auto* ng = numerics->add_subcommand("genus", "Arithmetic genus from m");
  numerics_inputs(ng);
  on(ng, "numerics_genus", numerics_genus);
  auto* nd = numerics->add_subcommand("degree", "Chart degrees d_i from m");
  numerics_inputs(nd);
  nd->add_option("--chart", o.degree_chart, "Single chart (0 for all)");
  on(nd, "numerics_degree", numerics_degree);
  auto* ni = numerics->add_subcommand("identities", "Check every identity");
  numerics_inputs(ni);
  on(ni, "numerics_identities", numerics_identities);
  auto* ns = numerics->add_subcommand("specialize", "Genus identity for fixed n and g");
  ns->add_option("--n", o.n, "Number of markings")->required();
  ns->add_option("--g", o.genus, "Genus")->required();
  on(ns, "numerics_specialize", numerics_specialize);
  auto* nc = numerics->add_subcommand("ci-genus", "Genus of a complete-intersection curve");
  nc->add_option("--ambient", o.ambient, "Dimension N of P^N")->required();
  nc->add_option("--degs", o.degs, "Comma-separated degrees")->required();
  on(nc, "numerics_ci_genus", numerics_ci_genus);

  auto* geom = app.add_subcommand("geom", "Exact rational geometry");
  geom->require_subcommand(1);
  auto* go = geom->add_subcommand("oracle", "Compare (*) with the exact rank test");
  morphism_inputs(go);
  go->add_option("--seed", o.seed, "Configuration seed");
  go->add_option("--trials", o.trials, "Random trials")->check(CLI::PositiveNumber);
  go->add_option("--chart", o.chart, "Chart");
  go->add_option("--threads", o.threads, "Worker threads");
  on(go, "geom_oracle", geom_oracle);
  auto* gr = geom->add_subcommand("rnc", "Rational normal curve through a configuration");
  gr->add_option("--n", o.n, "Number of markings")->required();
  gr->add_option("--seed", o.seed, "Seed");
  gr->add_option("--chart", o.chart, "Chart");
  on(gr, "geom_rnc", geom_rnc);
  auto* gf = geom->add_subcommand("factorize", "Recover a linear morphism from its fiber");
  morphism_inputs(gf);
  gf->add_option("--seed", o.seed, "Seed");
  on(gf, "geom_factorize", geom_factorize);
  auto* gc = geom->add_subcommand("config", "Print a seeded configuration");
  gc->add_option("--n", o.n, "Number of markings")->required();
  gc->add_option("--chart", o.chart, "Chart");
  gc->add_option("--seed", o.seed, "Seed");
  on(gc, "geom_config", geom_config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  Result r;
  try {
    r = action();
  } catch (const InputError& e) {
    r = {{{"error", "InvalidInput"}, {"message", e.what()}}, kInvalidInput};
  } catch (const Error& e) {
    r = {{{"error", errc_name(e.code())}, {"message", e.what()}}, exit_for(e.code())};
  }
  const std::string text = r.payload.dump(2);
  if (o.format == "table")
    render_table(r.payload, out, 0);
  else
    out << text << '\n';
  if (r.code != kOk) err << "kapranov: exit " << r.code << '\n';
  write_out_dir(name, text);
  return r.code;
}

}  // namespace kapranov::cli
