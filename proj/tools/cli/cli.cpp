#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "macdecay/catalog.hpp"
#include "macdecay/io.hpp"
#include "macdecay/witness.hpp"

namespace macdecay::cli {

using nlohmann::json;

namespace {

SearchMode parse_mode(const std::string& s) {
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "sampled") return SearchMode::Sampled;
  throw ConfigError("mode must be exhaustive or sampled, got '" + s + "'");
}

Pattern parse_pattern(const std::string& s) {
  if (s == "first-user" || s == "first_user") return Pattern::FirstUser;
  if (s == "all-users" || s == "all_users") return Pattern::AllUsers;
  throw ConfigError("pattern must be first-user or all-users, got '" + s + "'");
}

template <class T>
T get_or_throw(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

bool is_auto(const json& code, const char* key) {
  return !code.contains(key) || (code.at(key).is_string() && code.at(key).get<std::string>() == "auto");
}

TowerPtr resolve_tower(const json& code, json& resolved) {
  try {
    if (code.contains("tower")) return Tower::create(tower_params_from_json(code.at("tower")));
    const int m = get_or_throw<int>(code, "m");
    const RingTag field = parse_field_name(get_or_throw<std::string>(code, "K"));
    const int u = get_or_throw<int>(code, "U");
    const int nt = get_or_throw<int>(code, "n_t");
    if (u < 1 || nt < 1) throw ConfigError("U and n_t must be positive");
    PeriodSpec ps;
    if (code.contains("H")) {
      ps = {m, get_or_throw<std::vector<int>>(code, "H")};
      ps.validate();
      if (ps.degree() != u * nt)
        throw ConfigError("subgroup H gives degree " + std::to_string(ps.degree()) + ", but U n_t = " + std::to_string(u * nt));
    } else {
      ps = PeriodSpec::for_degree(m, u * nt);
    }
    resolved["shorthand"] = {{"m", m}, {"K", field_name(field)}, {"U", u}, {"n_t", nt}, {"H", ps.subgroup_gens}};
    return make_period_tower(ps, field, u, nt);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

QuadElem auto_prime(const Tower& t) {
  for (long bound = 50; bound <= 100000; bound *= 4) {
    const auto primes = find_inert_primes(t, bound);
    if (!primes.empty()) return primes.front();
  }
  throw ConfigError("no inert prime of norm <= 100000; give p explicitly");
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (std::filesystem::path(dir) / name).string());
  f << content;
}

json task_params(const RunOptions& o) {
  return {{"seed", o.seed},
          {"budget", o.budget},
          {"mode", mode_name(o.mode)},
          {"samples", o.samples},
          {"pattern", pattern_name(o.pattern)},
          {"nmax", o.nmax},
          {"tolerance", o.tolerance}};
}

std::vector<int> config_bounds(const RunOptions& o, const CodeSpec& spec) {
  if (!o.config.contains("bounds")) return std::vector<int>(static_cast<std::size_t>(spec.users()), 1);
  const auto b = get_or_throw<std::vector<int>>(o.config, "bounds");
  if (static_cast<int>(b.size()) != spec.users()) throw ConfigError("bounds needs one entry per user");
  for (int n : b)
    if (n < 1) throw ConfigError("bounds must be >= 1");
  return b;
}

json det_json(const CodeSpec& spec, const ExactDet& d) {
  return {{"numerator", field_elem_to_json(d.num)},
          {"p_exponent", d.p_exp},
          {"abs", d.is_zero() ? "0" : abs_det_ball(d, spec.p()).mid},
          {"tau_fixed", in_fixed_field(d.num, spec.users())}};
}

}  // namespace

std::pair<CodeSpec, json> resolve_code(const json& code) {
  if (!code.is_object()) throw ConfigError("config needs a \"code\" object");
  json resolved = json::object();
  const TowerPtr tower = resolve_tower(code, resolved);
  const QuadElem p = is_auto(code, "p") ? auto_prime(*tower) : quad_from_json(code.at("p"), tower->field());
  int k = 0;
  if (is_auto(code, "k")) {
    k = choose_k(tower->users(), tower->antennas());
  } else {
    k = get_or_throw<int>(code, "k");
  }
  try {
    CodeSpec spec = CodeSpec::create(tower, p, k);
    json out = codespec_to_json(spec);
    if (resolved.contains("shorthand")) out["shorthand"] = resolved["shorthand"];
    out["p_source"] = is_auto(code, "p") ? "auto" : "explicit";
    out["k_source"] = is_auto(code, "k") ? "auto" : "explicit";
    return {std::move(spec), std::move(out)};
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

int cmd_catalog(const RunOptions& o, std::ostream& out) {
  std::string csv = "degree,m,H,f,inert_Q(i),inert_Q(sqrt-3)\n";
  auto join = [](const auto& v, auto fmt) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + fmt(x);
    return s;
  };
  auto str = [](const auto& x) {
    std::ostringstream os;
    os << x;
    return os.str();
  };
  for (const auto& row : catalog_rows(o.max_degree, o.norm_bound))
    csv += std::to_string(row.degree) + "," + std::to_string(row.spec.m) + "," + join(row.spec.subgroup_gens, str) + "," +
           join(row.f.coeffs(), str) + "," + join(row.gaussian_primes, str) + "," + join(row.eisenstein_primes, str) + "\n";
  if (!o.out_dir.empty()) write_file(o.out_dir, "catalog.csv", csv);
  out << csv;
  return kOk;
}

int cmd_inert_search(const RunOptions& o, std::ostream& out) {
  json resolved = json::object();
  const TowerPtr t = resolve_tower(o.config.value("code", json::object()), resolved);
  std::string csv = "p,norm,disc_valuation\n";
  for (const auto& p : find_inert_primes(*t, o.norm_bound))
    csv += p.to_string() + "," + p.norm().get_str() + "," + std::to_string(ok_valuation(t->discriminant(), p)) + "\n";
  if (!o.out_dir.empty()) write_file(o.out_dir, "inert_primes.csv", csv);
  out << csv;
  return kOk;
}

int cmd_build(const RunOptions& o, std::ostream& out) {
  auto [spec, resolved] = resolve_code(o.config.value("code", json::object()));
  json report = {{"code", resolved}};
  json lattice = json::array();
  bool ok = true;
  for (int j = 1; j <= spec.users(); ++j) {
    const auto r = certify_lattice_rank(spec, j);
    ok = ok && r.rank == r.expected;
    lattice.push_back({{"user", j}, {"generators", r.expected}, {"rank", r.rank}, {"abs_det", format_double(r.abs_det)}});
  }
  report["lattice"] = lattice;

  std::vector<CoeffBox> boxes;
  if (o.config.contains("codewords")) {
    CoeffBox box(static_cast<std::size_t>(spec.users()));
    for (const auto& cw : o.config.at("codewords")) {
      auto [user, coeffs] = codeword_from_json(cw);
      if (user < 1 || user > spec.users()) throw ConfigError("codeword user out of range");
      box[static_cast<std::size_t>(user - 1)] = std::move(coeffs);
    }
    boxes.push_back(std::move(box));
  }
  if (o.config.contains("codeword_csv")) {
    std::ifstream f(get_or_throw<std::string>(o.config, "codeword_csv"));
    if (!f) throw ConfigError("cannot open codeword_csv");
    for (const auto& row : read_coeff_csv(f)) {
      if (static_cast<int>(row.size()) != spec.users() * spec.rank())
        throw ConfigError("codeword_csv rows need U * 2 U n_t^2 = " + std::to_string(spec.users() * spec.rank()) + " entries");
      CoeffBox box;
      for (int j = 0; j < spec.users(); ++j)
        box.emplace_back(row.begin() + j * spec.rank(), row.begin() + (j + 1) * spec.rank());
      boxes.push_back(std::move(box));
    }
  }
  json dets = json::array();
  for (const auto& box : boxes) {
    try {
      const ExactDet d = codeword_det(spec, box);
      ok = ok && !d.is_zero();
      dets.push_back({{"coeffs", box}, {"det", det_json(spec, d)}});
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  }
  if (!boxes.empty()) report["codewords"] = dets;
  const std::string text = report.dump(2) + "\n";
  if (!o.out_dir.empty()) write_file(o.out_dir, "build.json", text);
  out << text;
  return ok ? kOk : kCriteriaViolated;
}

int cmd_rank_check(const RunOptions& o, std::ostream& out) {
  auto [spec, resolved] = resolve_code(o.config.value("code", json::object()));
  const auto bounds = config_bounds(o, spec);
  std::function<bool(CoeffBox&)> next;
  std::vector<std::vector<std::vector<long>>> lists;
  std::vector<std::size_t> idx;
  std::vector<CoeffBox> samples;
  std::size_t pos = 0;
  bool done = false;
  if (o.mode == SearchMode::Exhaustive) {
    if (search_space_size(spec, bounds) > o.budget) throw BudgetExceeded("rank-check box count exceeds the budget; use sampled mode");
    for (int n : bounds) lists.push_back(nonzero_box_vectors(spec.rank(), n));
    idx.assign(lists.size(), 0);
    next = [&](CoeffBox& box) {
      if (done) return false;
      box.resize(lists.size());
      for (std::size_t j = 0; j < lists.size(); ++j) box[j] = lists[j][idx[j]];
      std::size_t j = lists.size();
      while (j > 0 && ++idx[j - 1] == lists[j - 1].size()) idx[--j] = 0;
      done = j == 0;
      return true;
    };
  } else {
    if (static_cast<double>(o.samples) > o.budget) throw BudgetExceeded("sample count exceeds the budget");
    samples = sample_boxes(spec, bounds, o.samples, o.seed);
    next = [&](CoeffBox& box) {
      if (pos == samples.size()) return false;
      box = samples[pos++];
      return true;
    };
  }
  const auto rep = rank_criterion_check(spec, next);
  const bool ok = !rep.counterexample && rep.tau_violations == 0;
  json j = {{"code", resolved},
            {"bounds", bounds},
            {"mode", mode_name(o.mode)},
            {"seed", o.seed},
            {"checked", rep.checked},
            {"tau_violations", rep.tau_violations},
            {"counterexample", rep.counterexample ? json(*rep.counterexample) : json(nullptr)},
            {"pass", ok}};
  const std::string text = j.dump(2) + "\n";
  if (!o.out_dir.empty()) write_file(o.out_dir, "rank_check.json", text);
  out << text;
  return ok ? kOk : kCriteriaViolated;
}

int cmd_decay(const RunOptions& o, std::ostream& out) {
  auto [spec, resolved] = resolve_code(o.config.value("code", json::object()));
  SearchOptions so;
  so.mode = o.mode;
  so.samples = o.samples;
  so.seed = o.seed;
  so.budget = o.budget;
  so.workers = o.workers;
  const auto curve = decay_curve(spec, o.nmax, o.pattern, so);
  const std::string csv = decay_csv(curve, o.timing);

  const int u = spec.users();
  const int nt = spec.antennas();
  const double expected = o.pattern == Pattern::FirstUser ? -(u - 1) * nt : -u * (u - 1) * nt;
  json fit = nullptr;
  bool pass = true;
  if (curve.size() >= 3) {
    const DecayFit f = fit_decay_exponent(curve);
    pass = std::fabs(f.slope - expected) <= o.tolerance;
    fit = {{"slope", format_double(f.slope)}, {"intercept", format_double(f.intercept)}, {"residual", format_double(f.residual)}};
  }
  json points = json::array();
  for (const auto& r : curve) points.push_back(decay_report_to_json(r, o.timing));
  json j = {{"config", {{"code", resolved}, {"task", "decay"}, {"params", task_params(o)}}},
            {"points", points},
            {"fit", fit},
            {"expected_slope", expected},
            {"pass", pass}};
  char summary[160];
  std::snprintf(summary, sizeof summary, "# fit slope=%s expected=%g tolerance=%g %s\n",
                fit.is_null() ? "n/a" : fit["slope"].get<std::string>().c_str(), expected, o.tolerance, pass ? "PASS" : "FAIL");
  if (!o.out_dir.empty()) {
    write_file(o.out_dir, "decay.csv", csv);
    write_file(o.out_dir, "decay.json", j.dump(2) + "\n");
    out << summary;
  } else {
    out << csv << summary;
  }
  return pass ? kOk : kCriteriaViolated;
}

int cmd_witness2(const RunOptions& o, std::ostream& out) {
  auto [spec, resolved] = resolve_code(o.config.value("code", json::object()));
  if (spec.degree() != 2) throw ConfigError("witness2 needs a tower with [L:K] = 2");
  if (!o.config.contains("witness")) throw ConfigError("witness2 needs a \"witness\" object with a, b, c, d");
  const json& w = o.config.at("witness");
  std::vector<FieldElem> e;
  for (const char* key : {"a", "b", "c", "d"}) {
    if (!w.contains(key)) throw ConfigError(std::string("witness is missing '") + key + "'");
    e.push_back(field_elem_from_json(spec.tower(), w.at(key)));
  }
  const QuadElem nd = two_user_norm_det(e[0], e[1], e[2], e[3]);
  json j = {{"code", resolved}, {"norm_det", quad_to_json(nd)}, {"norm_det_display", nd.to_string()}, {"singular", nd.is_zero()}};
  if (const auto wit = zero_det_witness_2user(e[0], e[1], e[2], e[3])) {
    j["witness"] = {{"x", field_elem_to_json(wit->first)}, {"y", field_elem_to_json(wit->second)}, {"x_display", wit->first.to_string()}};
    j["det"] = field_elem_to_json(two_user_det(e[0], e[1], e[2], e[3], wit->first, wit->second));
  } else {
    j["witness"] = nullptr;
    j["message"] = "no zero determinant";
  }
  const std::string text = j.dump(2) + "\n";
  if (!o.out_dir.empty()) write_file(o.out_dir, "witness2.json", text);
  out << text;
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiuser lattice code construction and decay analysis"};
  app.require_subcommand(1);
  std::string config_path, out_dir, mode, pattern;
  int workers = 0, nmax = 0, max_degree = 0;
  std::uint64_t seed = 0, samples = 0;
  double budget = 0, tolerance = 0;
  long norm_bound = 0;
  bool timing = false;
  auto* o_config = app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_workers = app.add_option("--workers", workers, "worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);
  auto* o_seed = app.add_option("--seed", seed, "64-bit seed for sampled runs");
  auto* o_budget = app.add_option("--budget", budget, "maximum codewords evaluated")->check(CLI::PositiveNumber);
  auto* o_mode = app.add_option("--mode", mode, "exhaustive|sampled");
  auto* o_pattern = app.add_option("--pattern", pattern, "first-user|all-users");
  auto* o_nmax = app.add_option("--nmax", nmax, "largest N on the decay curve")->check(CLI::PositiveNumber);
  auto* o_tol = app.add_option("--tolerance", tolerance, "allowed |slope - expected| for decay")->check(CLI::NonNegativeNumber);
  auto* o_samples = app.add_option("--samples", samples, "sample count in sampled mode");
  auto* o_maxdeg = app.add_option("--max-degree", max_degree, "catalog: largest [L:K]");
  auto* o_norm = app.add_option("--norm-bound", norm_bound, "catalog/inert-search: largest prime norm")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "fill the wall_time_ms column");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const RunOptions&, std::ostream&);
  };
  const Sub subs[] = {{"catalog", "table of period fields and inert primes", cmd_catalog},
                      {"inert-search", "inert primes for the configured tower", cmd_inert_search},
                      {"build", "resolve a code, check lattice ranks, evaluate codewords", cmd_build},
                      {"rank-check", "exact nonvanishing of determinants over a box", cmd_rank_check},
                      {"decay", "decay curve and fitted exponent", cmd_decay},
                      {"witness2", "two-user norm test and zero-determinant witness", cmd_witness2}};
  for (const auto& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunOptions o;
    if (*o_config) {
      std::ifstream f(config_path);
      try {
        o.config = json::parse(f);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
    const json& c = o.config;
    try {
      o.workers = c.value("workers", o.workers);
      o.seed = c.value("seed", o.seed);
      o.budget = c.value("budget", o.budget);
      if (c.contains("mode")) o.mode = parse_mode(c.at("mode").get<std::string>());
      if (c.contains("pattern")) o.pattern = parse_pattern(c.at("pattern").get<std::string>());
      o.nmax = c.value("nmax", o.nmax);
      o.tolerance = c.value("tolerance", o.tolerance);
      o.samples = c.value("samples", o.samples);
      o.max_degree = c.value("max_degree", o.max_degree);
      o.norm_bound = c.value("norm_bound", o.norm_bound);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    if (const char* v = std::getenv("MACDECAY_WORKERS")) o.workers = std::atoi(v);
    if (const char* v = std::getenv("MACDECAY_BUDGET")) o.budget = std::atof(v);
    if (*o_out) o.out_dir = out_dir;
    if (*o_workers) o.workers = workers;
    if (*o_seed) o.seed = seed;
    if (*o_budget) o.budget = budget;
    if (*o_mode) o.mode = parse_mode(mode);
    if (*o_pattern) o.pattern = parse_pattern(pattern);
    if (*o_nmax) o.nmax = nmax;
    if (*o_tol) o.tolerance = tolerance;
    if (*o_samples) o.samples = samples;
    if (*o_maxdeg) o.max_degree = max_degree;
    if (*o_norm) o.norm_bound = norm_bound;
    o.timing = timing;
    if (o.budget <= 0) throw ConfigError("budget must be positive");

    for (const auto& s : subs)
      if (app.got_subcommand(s.name)) return s.fn(o, out);
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCriteriaViolated;
  }
}

}  // namespace macdecay::cli
