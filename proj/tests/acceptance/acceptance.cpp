// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "fixtures.hpp"
#include "macdecay/io.hpp"
#include "macdecay/ring_core.hpp"
#include "macdecay/witness.hpp"
#include "naive.hpp"

using namespace macdecay;
using namespace macdecay::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SearchOptions exhaustive() {
  SearchOptions o;
  o.budget = 1e9;
  return o;
}

Outcome table_one() {
  const auto start = std::chrono::steady_clock::now();
  struct Listed {
    int degree;
    QuadElem p;
  };
  const QuadElem sqrt_m3 = ew(-1, 2);
  const std::vector<Listed> gaussian{{3, gi(2, 1)}, {4, gi(2, 1)}, {5, gi(1, 1)}, {6, gi(1, 1)}, {7, gi(1, 1)}};
  const std::vector<Listed> eisenstein{{3, sqrt_m3}, {4, sqrt_m3}, {5, ew(2, 0) + sqrt_m3}, {6, ew(2, 0) + sqrt_m3}, {7, sqrt_m3}};
  int ok = 0;
  for (const auto* list : {&gaussian, &eisenstein})
    for (const auto& l : *list) {
      const RingTag field = l.p.tag();
      const TowerPtr t = make_period_tower(PeriodSpec::for_degree(smallest_prime_conductor(l.degree), l.degree), field, l.degree, 1);
      ok += ok_valuation(t->discriminant(), l.p) == 0 && is_irreducible_mod_p(t->params().f, l.p);
    }
  const double secs = seconds_since(start);
  return {ok == 10 && secs < 5, fmt("%d/10 listed primes inert, %.2f s", ok, secs)};
}

Outcome single_user_valuation() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20241);
  long trials = 0, bad = 0;
  for (const CodeSpec* s : {&c22(), &c31(), &c13()}) {
    const int nt = s->antennas();
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<FieldElem> x;
      for (int l = 0; l < nt; ++l) x.push_back(random_integral(s->tower(), rng, 3));
      x[static_cast<std::size_t>(trial % nt)] = random_unit_valuation(s->tower(), s->p(), rng, 3);
      const FieldElem d = det_M(*s, x);
      ++trials;
      bad += d.is_zero() || valuation(d, s->p()) > nt - 1;
    }
  }
  long exact = 0, exact_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int l = 1 + trial % 3;
    std::vector<FieldElem> x;
    for (int i = 1; i <= 3; ++i) {
      if (i < l) {
        x.push_back(c13().p() * random_unit_valuation(c13().tower(), c13().p(), rng, 3));
      } else if (i == l) {
        x.push_back(random_unit_valuation(c13().tower(), c13().p(), rng, 3));
      } else {
        x.push_back(random_integral(c13().tower(), rng, 3));
      }
    }
    ++exact;
    exact_bad += valuation(det_M(c13(), x), c13().p()) != l - 1;
  }
  const double secs = seconds_since(start);
  return {bad == 0 && exact_bad == 0 && secs < 30,
          fmt("%ld/%ld random nonzero with v <= n_t-1, %ld/%ld constructed with v = l-1, %.1f s", trials - bad, trials,
              exact - exact_bad, exact, secs)};
}

std::vector<RankCheckReport> g_rank_reports;

Outcome rank_criterion() {
  const auto start = std::chrono::steady_clock::now();
  const auto vecs = nonzero_box_vectors(4, 1);
  std::size_t i = 0, j = 0;
  const auto exhaustive21 = rank_criterion_check(c21(), [&](CoeffBox& box) {
    if (i == vecs.size()) return false;
    box = {vecs[i], vecs[j]};
    if (++j == vecs.size()) {
      j = 0;
      ++i;
    }
    return true;
  });
  g_rank_reports = {exhaustive21};
  std::string detail = fmt("C21 %llu exhaustive", static_cast<unsigned long long>(exhaustive21.checked));
  bool pass = exhaustive21.checked == 6400 && !exhaustive21.counterexample;
  for (const CodeSpec* s : {&c31(), &c22()}) {
    const std::vector<int> bounds(static_cast<std::size_t>(s->users()), 2);
    const auto boxes = sample_boxes(*s, bounds, 100000, 77);
    std::size_t pos = 0;
    const auto rep = rank_criterion_check(*s, [&](CoeffBox& box) {
      if (pos == boxes.size()) return false;
      box = boxes[pos++];
      return true;
    });
    g_rank_reports.push_back(rep);
    pass = pass && rep.checked == 100000 && !rep.counterexample;
    detail += fmt(", %s %llu random", s == &c31() ? "C31" : "C22", static_cast<unsigned long long>(rep.checked));
  }
  const double secs = seconds_since(start);
  return {pass && secs < 300, detail + fmt(", zero determinants: none%s, %.1f s", pass ? "" : " (FOUND)", secs)};
}

Outcome tau_fixed() {
  std::uint64_t checked = 0, violations = 0;
  for (const auto& r : g_rank_reports) {
    checked += r.checked;
    violations += r.tau_violations;
  }
  return {checked == 206400 && violations == 0,
          fmt("%llu determinants, %llu not tau-fixed", static_cast<unsigned long long>(checked),
              static_cast<unsigned long long>(violations))};
}

std::vector<FieldElem> small_box(const TowerPtr& t) {
  std::vector<FieldElem> out;
  for (const auto& c : nonzero_box_vectors(2 * t->degree(), 2)) out.push_back(FieldElem::from_basis_coeffs(t, c));
  return out;
}

Outcome two_user_norm_test() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(31415);
  const TowerPtr& t = c21().tower();
  const auto xs = small_box(t);
  // det = 0 iff ad x sigma(y) = bc sigma(x) y iff (ad/bc) x/sigma(x) = y/sigma(y)
  std::unordered_set<std::string> ratios;
  std::vector<FieldElem> xr;
  for (const auto& x : xs) {
    FieldElem r = x * apply_sigma(x, 1).inverse();
    ratios.insert(r.to_string());
    xr.push_back(std::move(r));
  }
  int neg_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FieldElem a, b, c, d;
    do {
      a = random_nonzero(t, rng, 2);
      b = random_nonzero(t, rng, 2);
      c = random_nonzero(t, rng, 2);
      d = random_nonzero(t, rng, 2);
    } while (two_user_singularity_test(a, b, c, d));
    const FieldElem q = a * d * (b * c).inverse();
    bool zero = false;
    for (const auto& r : xr)
      if (ratios.count((q * r).to_string())) {
        zero = true;
        break;
      }
    neg_ok += !zero && !zero_det_witness_2user(a, b, c, d).has_value();
  }
  int pos_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const TowerPtr& tt = trial % 2 ? t : period_tower(13, RingTag::Eisenstein, 2, 1);
    const FieldElem a = random_nonzero(tt, rng, 3), b = random_nonzero(tt, rng, 3), c = random_nonzero(tt, rng, 3);
    const FieldElem z = random_nonzero(tt, rng, 3);
    const FieldElem d = b * c * apply_sigma(z, 1) * (a * z).inverse();
    const auto w = zero_det_witness_2user(a, b, c, d);
    pos_ok += w && !w->first.is_zero() && !w->second.is_zero() && two_user_det(a, b, c, d, w->first, w->second).is_zero();
  }
  const double secs = seconds_since(start);
  return {neg_ok == 100 && pos_ok == 100 && secs < 120,
          fmt("norm det != 0: %d/100 without zero over %zu^2 box pairs; norm 1: %d/100 verified witnesses, %.1f s", neg_ok,
              xs.size(), pos_ok, secs)};
}

std::vector<DecayReport> g_first_user;

Outcome decay_first_user() {
  const auto start = std::chrono::steady_clock::now();
  g_first_user = decay_curve(c21(), 8, Pattern::FirstUser, exhaustive());
  bool monotone = true;
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < g_first_user.size(); ++i) {
    const double d = g_first_user[i].d_value.value;
    if (i > 0 && d > g_first_user[i - 1].d_value.value) monotone = false;
    lo = std::min(lo, d * static_cast<double>(i + 1));
    hi = std::max(hi, d * static_cast<double>(i + 1));
  }
  const DecayFit f = fit_decay_exponent(g_first_user);
  const double secs = seconds_since(start);
  std::string values;
  for (const auto& r : g_first_user) values += (values.empty() ? "" : " ") + fmt("%.6g", r.d_value.value);
  const bool pass = monotone && hi / lo <= 10 && f.slope >= -1.6 && f.slope <= -0.4 && secs < 600;
  return {pass, fmt("D=[%s], non-increasing=%s, max/min D*N=%.3f, slope=%.4f (expected -1), %.1f s", values.c_str(),
                    monotone ? "yes" : "no", hi / lo, f.slope, secs)};
}

Outcome decay_all_users() {
  const auto start = std::chrono::steady_clock::now();
  const auto curve = decay_curve(c21(), 3, Pattern::AllUsers, exhaustive());
  double lo = INFINITY, hi = 0;
  std::string values;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double prod = curve[i].d_value.value * n * n;
    lo = std::min(lo, prod);
    hi = std::max(hi, prod);
    values += (values.empty() ? "" : " ") + fmt("%.6g", prod);
  }
  const double secs = seconds_since(start);
  return {lo > 0 && hi / lo <= 20 && secs < 600, fmt("D*N^2=[%s], max/min=%.3f, %.1f s", values.c_str(), hi / lo, secs)};
}

Outcome naive_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int ok = 0, total = 0;
  for (const auto& b : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    const auto fast = min_abs_det(c21(), b, exhaustive());
    const auto [arg, det] = naive_two_user_min(c21(), b[0], b[1]);
    ++total;
    ok += fast.argmin == arg && fast.exact_det.num == det.num && fast.exact_det.p_exp == det.p_exp;
  }
  return {ok == total, fmt("%d/%d bounds with identical argmin and exact minimum, %.1f s", ok, total, seconds_since(start))};
}

Outcome determinism() {
  SearchOptions o;
  o.mode = SearchMode::Sampled;
  o.samples = 20000;
  o.seed = 99;
  std::vector<std::string> csvs;
  for (int w : {1, 2, 5}) {
    o.workers = w;
    const auto curve = decay_curve(c22(), 3, Pattern::FirstUser, o);
    csvs.push_back(decay_csv(curve));
  }
  o.workers = 3;
  const auto c21_curve = decay_curve(c21(), 4, Pattern::AllUsers, o);
  o.workers = 1;
  const bool c21_same = decay_csv(c21_curve) == decay_csv(decay_curve(c21(), 4, Pattern::AllUsers, o));
  const bool same = std::all_of(csvs.begin(), csvs.end(), [&](const std::string& s) { return s == csvs[0]; });
  return {same && c21_same, fmt("sampled C22 CSV identical for workers 1/2/5: %s; C21 workers 1/3: %s", same ? "yes" : "no",
                                c21_same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 period table", table_one},
      {"AC2 single-user valuation", single_user_valuation},
      {"AC3 rank criterion", rank_criterion},
      {"AC4 tau-fixed determinants", tau_fixed},
      {"AC5 two-user norm test", two_user_norm_test},
      {"AC6 first-user decay", decay_first_user},
      {"AC7 all-users decay", decay_all_users},
      {"AC8 naive oracle", naive_equivalence},
      {"AC9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
