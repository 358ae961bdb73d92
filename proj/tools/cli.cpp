#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cache.hpp"
#include "wcomp/bounds.hpp"
#include "wcomp/errors.hpp"
#include "wcomp/family.hpp"
#include "wcomp/io.hpp"
#include "wcomp/search.hpp"

namespace wcomp::cli {

namespace {

using io::Json;

constexpr const char* kAlgorithmVersion = "wcomp-v1";
constexpr std::uint64_t kDefaultBudget = 50'000'000;

std::vector<CompositionSpace> parse_spaces(const std::string& text) {
  std::vector<CompositionSpace> spaces;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    spaces.push_back(CompositionSpace::parse(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spaces;
}

std::string spaces_key(const std::vector<CompositionSpace>& spaces) {
  std::string s;
  for (std::size_t i = 0; i < spaces.size(); ++i) s += (i ? "," : "") + spaces[i].to_string();
  return s;
}

std::vector<Part> parse_values(const std::string& text) {
  std::vector<Part> out;
  for (std::size_t v : parse_index_list(text)) out.push_back(static_cast<Part>(v));
  return out;
}

void print_family_text(std::ostream& out, const Family& f) {
  out << "P(" << f.space().n() << "," << f.space().l() << ") family of size " << f.size() << "\n";
  for (const Composition& u : f.members()) out << "  " << u.to_string() << "\n";
}

void print_result_text(std::ostream& out, const SearchResult& r) {
  out << "product=" << to_decimal(r.product) << "\n";
  out << "optimal=" << (r.optimal ? "true" : "false") << "\n";
  out << "nodes=" << r.nodes << "\n";
  for (std::size_t j = 0; j < r.witnesses.size(); ++j) {
    out << "witness " << j + 1 << ":";
    for (const Composition& u : r.witnesses[j].members()) out << " " << u.to_string();
    out << "\n";
  }
  if (r.all_maximizers) out << "maximizers=" << r.all_maximizers->size() << "\n";
}

struct Options {
  // Empty until parsed; each verb then applies its own default.
  std::string format;
  std::string cache_dir;
};

std::optional<ResultCache> open_cache(const Options& opt, std::ostream& err) {
  std::string dir = opt.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv(kCacheEnv)) dir = env;
  if (dir.empty()) return std::nullopt;
  return ResultCache(dir, err);
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw InvalidArgument("unsupported --format " + format);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact search and bounds for r-cross t-intersecting families of weak compositions", "wcomp"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Options opt;
  std::string space_text, spaces_text, ls_text, ns_text, T_text, system_path, family_path, v_text, xs_text, ys_text,
      limits_text, method = "exact", algorithm = "auto";
  std::size_t t = 1, copies = 0;
  std::uint64_t budget = kDefaultBudget, n_min = 1, n_max = 6;
  unsigned workers = 1;
  bool all_maximizers = false, count_only = false;

  auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache", opt.cache_dir, std::string("Result cache directory (default: $") + kCacheEnv + ")");
  };

  CLI::App* space = app.add_subcommand("space", "Count and enumerate P(n,l)");
  space->add_option("--space", space_text, "Space as n:l")->required();
  space->add_flag("--count-only", count_only, "Print only the cardinality");
  space->add_option("--format", opt.format, "text | json");

  CLI::App* star = app.add_subcommand("star", "Build the star family of a t-set T");
  star->add_option("--space", space_text, "Space as n:l")->required();
  star->add_option("--T", T_text, "Comma-separated 1-based coordinates")->required();
  star->add_option("--copies", copies, "Emit a system of this many copies with t = |T| instead of one family");
  star->add_option("--format", opt.format, "json | text");

  CLI::App* check = app.add_subcommand("check", "Test a system file for the cross t-intersecting property");
  check->add_option("--system", system_path, "System JSON file")->required()->check(CLI::ExistingFile);
  check->add_option("--format", opt.format, "text | json");

  CLI::App* search = app.add_subcommand("search", "Exact maximum product search");
  search->add_option("--spaces", spaces_text, "Comma-separated spaces n:l")->required();
  search->add_option("--t", t, "Agreement threshold")->required();
  search->add_option("--budget-nodes", budget, "Node budget per top-level branch");
  search->add_option("--workers", workers, "Worker threads (results do not depend on it)");
  search->add_option("--algorithm", algorithm, "auto | r2 | general");
  search->add_option("--limits", limits_text, "Per-space micro limits for exact general search");
  search->add_flag("--all-maximizers", all_maximizers, "Collect every maximizer");
  search->add_option("--format", opt.format, "text | json");
  add_cache(search);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive maximum product (micro instances)");
  oracle->add_option("--spaces", spaces_text, "Comma-separated spaces n:l")->required();
  oracle->add_option("--t", t, "Agreement threshold")->required();
  oracle->add_option("--limits", limits_text, "Per-space cardinality caps");
  oracle->add_flag("--all-maximizers", all_maximizers, "Collect every maximizer");
  oracle->add_option("--format", opt.format, "text | json");
  add_cache(oracle);

  CLI::App* scan = app.add_subcommand("scan", "Scan n for the point where stars become the unique maximizers");
  scan->add_option("--ls", ls_text, "Part counts l1,l2")->required();
  scan->add_option("--t", t, "Agreement threshold")->required();
  scan->add_option("--n-min", n_min, "First n");
  scan->add_option("--n-max", n_max, "Last n");
  scan->add_option("--budget-nodes", budget, "Node budget per top-level branch");
  scan->add_option("--workers", workers, "Worker threads (results do not depend on it)");
  scan->add_option("--format", opt.format, "csv | json | text");
  add_cache(scan);

  CLI::App* bound = app.add_subcommand("bound", "Evaluate the product bound and the sufficient n0");
  bound->add_option("--ls", ls_text, "Part counts l_j")->required();
  bound->add_option("--t", t, "Agreement threshold")->required();
  bound->add_option("--ns", ns_text, "Totals n_j (enables the product bound)");
  bound->add_option("--format", opt.format, "text | json");

  CLI::App* independent = app.add_subcommand("independent", "Extract an independent subfamily");
  independent->add_option("--family", family_path, "Family JSON file")->required()->check(CLI::ExistingFile);
  independent->add_option("--method", method, "greedy | exact");
  independent->add_option("--budget-nodes", budget, "Node budget for the exact method");
  independent->add_option("--format", opt.format, "json | text");

  CLI::App* dichotomy = app.add_subcommand("dichotomy", "Decide which branch of the agreement dichotomy holds");
  dichotomy->add_option("--family", family_path, "Family JSON file")->required()->check(CLI::ExistingFile);
  dichotomy->add_option("--v", v_text, "Composition v, e.g. (0,2,3)")->required();
  dichotomy->add_option("--xs", xs_text, "t increasing coordinates")->required();
  dichotomy->add_option("--ys", ys_text, "t values")->required();
  dichotomy->add_option("--t", t, "Agreement threshold")->required();
  dichotomy->add_option("--format", opt.format, "text | json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    std::optional<ResultCache> cache;

    if (space->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      check_format(opt.format, {"text", "json"});
      const std::size_t colon = space_text.find(':');
      if (colon == std::string::npos) throw InvalidArgument("space must be written n:l");
      const std::vector<std::size_t> nl = parse_index_list(space_text.substr(0, colon) + "," + space_text.substr(colon + 1));
      const BigInt count = count_compositions(nl[0], nl[1]);
      Json j{{"n", nl[0]}, {"l", nl[1]}, {"cardinality", to_decimal(count)}};
      if (count_only) {
        if (opt.format == "json")
          out << j.dump() << "\n";
        else
          out << "|P(" << nl[0] << "," << nl[1] << ")| = " << to_decimal(count) << "\n";
        return kExitOk;
      }
      const CompositionSpace s = CompositionSpace::parse(space_text);
      if (opt.format == "json") {
        Json elems = Json::array();
        for (const Composition& u : enumerate(s)) elems.push_back(io::composition_to_json(u));
        j["elements"] = std::move(elems);
        out << j.dump() << "\n";
      } else {
        out << "|P(" << s.n() << "," << s.l() << ")| = " << s.size() << "\n";
        Rank k = 0;
        for (const Composition& u : enumerate(s)) out << k++ << " " << u.to_string() << "\n";
      }
      return kExitOk;
    }

    if (star->parsed()) {
      if (opt.format.empty()) opt.format = "json";
      check_format(opt.format, {"text", "json"});
      const CompositionSpace s = CompositionSpace::parse(space_text);
      const StarSpec spec{parse_index_list(T_text)};
      const Family f = make_star(s, spec);
      if (copies > 0) {
        if (spec.coords.empty()) throw InvalidArgument("--copies needs a non-empty T (t = |T|)");
        const FamilySystem sys(std::vector<Family>(copies, f), spec.coords.size());
        out << (opt.format == "json" ? io::system_to_json(sys).dump() : io::system_to_json(sys).dump(2)) << "\n";
      } else if (opt.format == "json") {
        out << io::family_to_json(f).dump() << "\n";
      } else {
        print_family_text(out, f);
      }
      return kExitOk;
    }

    if (check->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      check_format(opt.format, {"text", "json"});
      const FamilySystem sys = io::system_from_json(io::read_json_file(system_path));
      const CrossCheck c = is_cross_t_intersecting(sys);
      if (opt.format == "json") {
        Json j{{"r", sys.r()}, {"t", sys.t()}, {"l", sys.l()}, {"cross_t_intersecting", c.holds}};
        if (!c.holds) {
          Json w = Json::array();
          for (const Composition& u : c.witness) w.push_back(io::composition_to_json(u));
          j["witness"] = std::move(w);
        }
        out << j.dump() << "\n";
      } else {
        out << "cross-" << sys.t() << "-intersecting: " << (c.holds ? "true" : "false") << "\n";
        if (!c.holds) {
          out << "witness:";
          for (const Composition& u : c.witness) out << " " << u.to_string();
          out << "\n";
        }
        if (!sys.in_theorem_regime()) out << "note: l = " << sys.l() << " < t + 2\n";
      }
      return c.holds ? kExitOk : kExitViolated;
    }

    if (search->parsed() || oracle->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      check_format(opt.format, {"text", "json"});
      SearchProblem problem;
      problem.spaces = parse_spaces(spaces_text);
      problem.t = t;
      problem.node_budget = budget;
      problem.workers = workers;
      problem.all_maximizers = all_maximizers;
      if (!limits_text.empty())
        for (std::size_t v : parse_index_list(limits_text)) problem.micro_limits.push_back(v);
      if (problem.r() < 2) throw InvalidArgument("need at least two spaces");
      if (t == 0) throw InvalidArgument("--t must be positive");

      std::string algo = oracle->parsed() ? "oracle" : algorithm;
      if (algo == "auto") algo = problem.r() == 2 ? "r2" : "general";
      if (algo != "r2" && algo != "general" && algo != "oracle") throw InvalidArgument("unknown --algorithm " + algo);
      if (algo == "r2" && problem.r() != 2) throw InvalidArgument("--algorithm r2 needs exactly two spaces");

      std::string limits_key;
      for (Rank v : problem.limits()) limits_key += std::to_string(v) + ".";
      const std::string key = std::string(kAlgorithmVersion) + ";" + algo + ";spaces=" + spaces_key(problem.spaces) +
                              ";t=" + std::to_string(t) + ";budget=" + (algo == "oracle" ? "none" : std::to_string(budget)) +
                              ";all=" + (all_maximizers ? "1" : "0") + ";limits=" + limits_key;
      cache = open_cache(opt, err);

      SearchResult result;
      std::optional<Json> cached = cache ? cache->get(key) : std::nullopt;
      bool from_cache = false;
      if (cached) {
        try {
          result = io::search_result_from_json(*cached);
          from_cache = true;
        } catch (const InvalidArgument& e) {
          err << "warning: ignoring unreadable cache entry (" << e.what() << ")\n";
        }
      }
      if (!from_cache) {
        if (algo == "r2")
          result = max_product_r2(problem);
        else if (algo == "general")
          result = max_product_general(problem);
        else
          result = brute_oracle(problem);
        if (cache) cache->put(key, io::search_result_to_json(result));
      }
      if (opt.format == "json")
        out << io::search_result_to_json(result).dump() << "\n";
      else
        print_result_text(out, result);
      return kExitOk;
    }

    if (scan->parsed()) {
      if (opt.format.empty()) opt.format = "csv";
      check_format(opt.format, {"csv", "json", "text"});
      const std::vector<std::size_t> ls = parse_index_list(ls_text);
      if (ls.size() != 2) throw InvalidArgument("--ls takes exactly two part counts");
      if (std::min(ls[0], ls[1]) < t + 2) throw InvalidArgument("scan needs min(l1,l2) >= t + 2");
      if (n_min > n_max) throw InvalidArgument("--n-min exceeds --n-max");
      cache = open_cache(opt, err);

      std::vector<ScanRow> rows;
      for (std::uint64_t n = n_min; n <= n_max; ++n) {
        const std::string key = std::string(kAlgorithmVersion) + ";scan-row;l1=" + std::to_string(ls[0]) +
                                ";l2=" + std::to_string(ls[1]) + ";t=" + std::to_string(t) + ";n=" + std::to_string(n) +
                                ";budget=" + std::to_string(budget);
        std::optional<ScanRow> row;
        if (cache)
          if (std::optional<Json> cached = cache->get(key)) {
            try {
              row = io::scan_row_from_json(*cached);
            } catch (const InvalidArgument& e) {
              err << "warning: ignoring unreadable cache entry (" << e.what() << ")\n";
            }
          }
        if (!row) {
          row = scan_row(ls[0], ls[1], t, n, budget, workers);
          if (cache) cache->put(key, io::scan_row_to_json(*row));
        }
        rows.push_back(std::move(*row));
      }
      const std::optional<std::uint64_t> threshold = empirical_threshold(rows);
      const BoundReport report = sufficient_n0({ls[0], ls[1]}, t);
      if (cache) err << "cache: " << cache->hits() << " hit(s), " << cache->misses() << " miss(es)\n";

      if (opt.format == "json") {
        Json jrows = Json::array();
        for (const ScanRow& r : rows) jrows.push_back(io::scan_row_to_json(r));
        Json j{{"l1", ls[0]}, {"l2", ls[1]}, {"t", t}, {"rows", std::move(jrows)},
               {"empirical_threshold", threshold ? Json(*threshold) : Json(nullptr)},
               {"sufficient_n0", to_decimal(report.sufficient_n0)}};
        out << j.dump() << "\n";
      } else {
        io::write_scan_csv(out, rows);
        if (opt.format == "text") {
          out << "empirical_threshold=" << (threshold ? std::to_string(*threshold) : "none") << "\n";
          out << "sufficient_n0=" << to_decimal(report.sufficient_n0) << "\n";
        }
      }
      return kExitOk;
    }

    if (bound->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      check_format(opt.format, {"text", "json"});
      const std::vector<std::size_t> ls = parse_index_list(ls_text);
      BoundReport report;
      if (!ns_text.empty()) {
        const std::vector<std::size_t> ns = parse_index_list(ns_text);
        if (ns.size() != ls.size()) throw InvalidArgument("--ns and --ls must have the same length");
        std::vector<SpaceShape> shapes;
        for (std::size_t j = 0; j < ls.size(); ++j) shapes.push_back({ns[j], ls[j]});
        report = bound_report(shapes, t);
      } else {
        report = sufficient_n0(std::vector<std::uint64_t>(ls.begin(), ls.end()), t);
      }
      if (opt.format == "json") {
        out << io::bound_report_to_json(report).dump() << "\n";
      } else {
        if (report.rhs) out << "rhs=" << to_decimal(*report.rhs) << "\n";
        for (const auto& [label, value] : report.per_case_thresholds) out << label << "=" << to_decimal(value) << "\n";
        out << "sufficient_n0=" << to_decimal(report.sufficient_n0) << "\n";
      }
      return kExitOk;
    }

    if (independent->parsed()) {
      if (opt.format.empty()) opt.format = "json";
      check_format(opt.format, {"text", "json"});
      const Family f = io::family_from_json(io::read_json_file(family_path));
      Family picked(f.space());
      bool optimal = true;
      if (method == "greedy") {
        picked = greedy_independent(f);
        optimal = false;
      } else if (method == "exact") {
        IndependentResult r = max_independent(f, budget);
        picked = std::move(r.family);
        optimal = r.optimal;
      } else {
        throw InvalidArgument("unknown --method " + method);
      }
      if (opt.format == "json") {
        Json j = io::family_to_json(picked);
        j["size"] = picked.size();
        j["optimal"] = optimal;
        out << j.dump() << "\n";
      } else {
        print_family_text(out, picked);
        out << "optimal=" << (optimal ? "true" : "false") << "\n";
      }
      return kExitOk;
    }

    if (dichotomy->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      check_format(opt.format, {"text", "json"});
      const Family a = io::family_from_json(io::read_json_file(family_path));
      const Composition v = Composition::parse(v_text);
      const std::vector<std::size_t> xs = parse_index_list(xs_text);
      const std::vector<Part> ys = parse_values(ys_text);
      const DichotomyResult d = dichotomy_check(a, v, xs, ys, t);
      if (opt.format == "json") {
        Json j{{"verdict", to_string(d.verdict)}, {"independent_size", d.independent_size}};
        if (d.branch_a_witness) j["branch_a_witness"] = io::composition_to_json(*d.branch_a_witness);
        out << j.dump() << "\n";
      } else {
        out << "verdict=" << to_string(d.verdict) << "\n";
        out << "independent_size=" << d.independent_size << "\n";
        if (d.branch_a_witness) out << "branch_a_witness=" << d.branch_a_witness->to_string() << "\n";
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::logic_error& e) {
    // A dichotomy instance where neither branch holds.
    err << "error: " << e.what() << "\n";
    return kExitViolated;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace wcomp::cli
