#include "macdecay/decay.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace macdecay {

namespace {

QuadInt to_quad_int(const QuadElem& x) {
  if (!x.is_integral() || !x.a().get_num().fits_slong_p() || !x.b().get_num().fits_slong_p())
    throw ArithmeticOverflow();
  return {x.a().get_num().get_si(), x.b().get_num().get_si()};
}

}  // namespace

std::optional<FastKernel> FastKernel::create(const CodeSpec& spec) {
  if (spec.tower()->fast() == nullptr) return std::nullopt;
  try {
    return FastKernel(spec);
  } catch (const ArithmeticOverflow&) {
    return std::nullopt;
  }
}

FastKernel::FastKernel(const CodeSpec& spec)
    : ring_(spec.tower()->fast()),
      users_(spec.users()),
      antennas_(spec.antennas()),
      basis_(spec.basis_size()),
      p_(to_quad_int(spec.p())),
      pk_{1, 0} {
  for (int i = 0; i < spec.k(); ++i) pk_ = ring_->mul(pk_, p_);
  for (int i = 0; i < users_ * antennas_; ++i) det_scale_ = checked::mul(det_scale_, ring_->sigma_den());
}

FastKernel::Block FastKernel::block(int user, std::span<const long> coeffs) const {
  const int nt = antennas_;
  const int d = ring_->degree();
  std::vector<IntElem> xs;
  for (int l = 0; l < nt; ++l)
    xs.push_back(IntElem::from_basis_coeffs(ring_, coeffs.subspan(static_cast<std::size_t>(l * basis_), static_cast<std::size_t>(basis_))));
  Block b(static_cast<std::size_t>(nt * users_ * nt), IntElem(ring_));
  for (int t = 0; t < users_; ++t)
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < nt; ++c) {
        QuadInt scale{1, 0};
        if (r < c) scale = p_;
        if (t != user - 1) scale = ring_->mul(scale, pk_);
        IntElem e = xs[static_cast<std::size_t>(((r - c) % nt + nt) % nt)].sigma_scaled((t + users_ * c) % d);
        if (!(scale == QuadInt{1, 0})) e = e.scaled(scale);
        b[static_cast<std::size_t>(r * users_ * nt + t * nt + c)] = e;
      }
  return b;
}

IntElem FastKernel::det(std::span<const Block* const> blocks) const {
  const int n = users_ * antennas_;
  if (n == 1) return (*blocks[0])[0];
  auto at = [&](int r, int c) -> const IntElem& {
    return (*blocks[static_cast<std::size_t>(r / antennas_)])[static_cast<std::size_t>((r % antennas_) * n + c)];
  };
  if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  Matrix<IntElem> m(n, n, IntElem(ring_));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = at(r, c);
  return det_subset_dp(m);
}

const char* mode_name(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "sampled"; }
const char* pattern_name(Pattern p) { return p == Pattern::FirstUser ? "first-user" : "all-users"; }

namespace {

/// |num|^2 = sum c_a theta^a with a double approximation and a rigorous error bound.
struct Abs2 {
  double approx = 0;
  double err = 0;
  bool small = true;
  std::array<std::int64_t, kMaxFastDegree> c{};
  std::vector<BigRat> big;

  std::vector<BigRat> exact(int d) const {
    if (!small) return big;
    std::vector<BigRat> out;
    for (int i = 0; i < d; ++i) out.emplace_back(static_cast<long>(c[static_cast<std::size_t>(i)]));
    return out;
  }
};

void set_approx(Abs2& z, const std::vector<double>& coeffs, double theta) {
  double v = 0;
  double s = 0;
  double pw = 1;
  for (double ci : coeffs) {
    v += ci * pw;
    s += std::fabs(ci) * std::fabs(pw);
    pw *= theta;
  }
  z.approx = v;
  z.err = s * 1e-13 + 1e-300;
}

Abs2 abs2_fast(const IntElem& det, double theta) {
  const IntElem z = det * det.conj();
  Abs2 out;
  const int d = det.ring()->degree();
  std::vector<double> cd;
  for (int i = 0; i < d; ++i) {
    if (z[i].b != 0) throw Error("abs2: x conj(x) has a non-rational coordinate");
    out.c[static_cast<std::size_t>(i)] = z[i].a;
    cd.push_back(static_cast<double>(z[i].a));
  }
  set_approx(out, cd, theta);
  return out;
}

/// `scale` is applied to |num|^2 so exact values compare with kernel output.
Abs2 abs2_exact(const FieldElem& num, double theta, const BigRat& scale) {
  Abs2 out;
  out.small = false;
  out.big = abs2_coords(num);
  for (auto& c : out.big) c *= scale;
  std::vector<double> cd;
  for (const auto& c : out.big) cd.push_back(c.get_d());
  set_approx(out, cd, theta);
  return out;
}

/// Sign of |x|^2 - |y|^2.
int compare_abs2(const Tower& tower, const Abs2& x, const Abs2& y) {
  if (x.approx + x.err < y.approx - y.err) return -1;
  if (x.approx - x.err > y.approx + y.err) return 1;
  const int d = tower.degree();
  auto ex = x.exact(d);
  const auto ey = y.exact(d);
  for (int i = 0; i < d; ++i) ex[static_cast<std::size_t>(i)] -= ey[static_cast<std::size_t>(i)];
  return real_sign(tower, ex);
}

struct Best {
  bool set = false;
  Abs2 value;
  CoeffBox box;
};

/// Total order: |det| first, then the lexicographic box.
bool better(const Tower& tower, const Abs2& v, const CoeffBox& box, const Best& best) {
  if (!best.set) return true;
  if (v.approx - v.err > best.value.approx + best.value.err) return false;
  const int s = compare_abs2(tower, v, best.value);
  return s < 0 || (s == 0 && box < best.box);
}

void offer(const Tower& tower, Best& best, Abs2 v, const CoeffBox& box) {
  if (better(tower, v, box, best)) {
    best.set = true;
    best.value = std::move(v);
    best.box = box;
  }
}

std::string count_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int resolve_workers(int w) {
  if (w > 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(chunk) for chunk in [0, chunks) on up to `workers` threads, rethrowing the first error.
template <class F>
void parallel_chunks(int workers, std::size_t chunks, F body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto run = [&] {
    try {
      for (std::size_t c = next++; c < chunks; c = next++) body(c);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      next = chunks;
    }
  };
  const int n = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(chunks, 1)));
  if (n <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

/// Evaluates one box, using cached fast blocks where available.
class Evaluator {
 public:
  explicit Evaluator(const CodeSpec& spec) : spec_(spec), kernel_(FastKernel::create(spec)), theta_(spec.tower()->theta_approx()) {
    if (kernel_) scale2_ = BigRat(kernel_->det_scale()) * BigRat(kernel_->det_scale());
  }

  const BigRat& scale2() const { return scale2_; }

  std::optional<FastKernel::Block> block(int user, const std::vector<long>& coeffs) const {
    if (!kernel_) return std::nullopt;
    try {
      return kernel_->block(user, coeffs);
    } catch (const ArithmeticOverflow&) {
      return std::nullopt;
    }
  }

  Abs2 eval(const CoeffBox& box, std::span<const std::optional<FastKernel::Block>* const> blocks) const {
    if (kernel_ && std::all_of(blocks.begin(), blocks.end(), [](const auto* b) { return b->has_value(); })) {
      std::vector<const FastKernel::Block*> ptrs;
      for (const auto* b : blocks) ptrs.push_back(&**b);
      try {
        return abs2_fast(kernel_->det(ptrs), theta_);
      } catch (const ArithmeticOverflow&) {
      }
    }
    return abs2_exact(codeword_det(spec_, box).num, theta_, scale2_);
  }

 private:
  const CodeSpec& spec_;
  std::optional<FastKernel> kernel_;
  double theta_;
  BigRat scale2_ = 1;
};

}  // namespace

std::vector<std::vector<long>> nonzero_box_vectors(int len, int n) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(static_cast<std::size_t>(len), -n);
  while (true) {
    if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; })) out.push_back(v);
    int i = len - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == n) v[static_cast<std::size_t>(i--)] = -n;
    if (i < 0) break;
    ++v[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<CoeffBox> sample_boxes(const CodeSpec& spec, std::span<const int> bounds, std::uint64_t count, std::uint64_t seed) {
  const int r = spec.rank();
  std::mt19937_64 rng(seed);
  std::vector<CoeffBox> samples(count);
  for (auto& box : samples)
    for (int n : bounds) {
      std::uniform_int_distribution<long> dist(-n, n);
      std::vector<long> v(static_cast<std::size_t>(r));
      do {
        for (auto& x : v) x = dist(rng);
      } while (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }));
      box.push_back(std::move(v));
    }
  return samples;
}

RankCheckReport rank_criterion_check(const CodeSpec& spec, const std::function<bool(CoeffBox&)>& next) {
  const auto kernel = FastKernel::create(spec);
  RankCheckReport rep;
  CoeffBox box;
  while (next(box)) {
    ++rep.checked;
    std::optional<bool> zero, fixed;
    if (kernel) {
      try {
        std::vector<FastKernel::Block> blocks;
        std::vector<const FastKernel::Block*> ptrs;
        for (int j = 0; j < spec.users(); ++j) {
          const auto& b = box.at(static_cast<std::size_t>(j));
          if (std::all_of(b.begin(), b.end(), [](long v) { return v == 0; }))
            throw PreconditionError("user " + std::to_string(j + 1) + " has an all-zero coefficient vector");
          blocks.push_back(kernel->block(j + 1, b));
        }
        for (const auto& b : blocks) ptrs.push_back(&b);
        const IntElem d = kernel->det(ptrs);
        zero = d.is_zero();
        fixed = d.sigma_scaled(spec.users()) == d.scaled({kernel->ring()->sigma_den(), 0});
      } catch (const ArithmeticOverflow&) {
        zero.reset();
      }
    }
    if (!zero) {
      const ExactDet d = codeword_det(spec, box);
      zero = d.is_zero();
      fixed = in_fixed_field(d.num, spec.users());
    }
    if (*zero) {
      if (!rep.counterexample) rep.counterexample = box;
    } else if (!*fixed) {
      ++rep.tau_violations;
    }
  }
  return rep;
}

double search_space_size(const CodeSpec& spec, std::span<const int> bounds) {
  double total = 1;
  for (int n : bounds) total *= std::pow(2.0 * n + 1, spec.rank()) - 1;
  return total;
}

DecayReport min_abs_det(const CodeSpec& spec, std::span<const int> bounds, const SearchOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const int u = spec.users();
  const int r = spec.rank();
  const Tower& tower = *spec.tower();
  if (static_cast<int>(bounds.size()) != u) throw PreconditionError("min_abs_det: expected one bound per user");
  for (int n : bounds)
    if (n < 1) throw PreconditionError("min_abs_det: bounds must be >= 1");
  const int workers = resolve_workers(opt.workers);
  const Evaluator ev(spec);

  DecayReport rep;
  rep.bounds.assign(bounds.begin(), bounds.end());
  rep.mode = opt.mode;
  rep.seed = opt.seed;
  std::vector<Best> results;

  if (opt.mode == SearchMode::Exhaustive) {
    const double size = search_space_size(spec, bounds);
    if (size > opt.budget)
      throw BudgetExceeded("exhaustive search over " + count_str(size) + " codewords exceeds the budget of " + count_str(opt.budget) +
                           "; use sampled mode");
    std::vector<std::vector<std::vector<long>>> lists;
    for (int n : bounds) lists.push_back(nonzero_box_vectors(r, n));
    std::vector<std::vector<std::optional<FastKernel::Block>>> cached(static_cast<std::size_t>(u));
    for (int j = 1; j < u; ++j)
      for (const auto& v : lists[static_cast<std::size_t>(j)]) cached[static_cast<std::size_t>(j)].push_back(ev.block(j + 1, v));

    const auto& first = lists[0];
    const std::size_t chunk = std::max<std::size_t>(1, first.size() / (static_cast<std::size_t>(workers) * 16));
    const std::size_t chunks = (first.size() + chunk - 1) / chunk;
    results.resize(chunks);
    parallel_chunks(workers, chunks, [&](std::size_t ci) {
      Best best;
      CoeffBox box(static_cast<std::size_t>(u));
      std::vector<std::size_t> idx(static_cast<std::size_t>(u), 0);
      std::vector<const std::optional<FastKernel::Block>*> blocks(static_cast<std::size_t>(u));
      for (std::size_t i1 = ci * chunk; i1 < std::min(first.size(), (ci + 1) * chunk); ++i1) {
        const auto b1 = ev.block(1, first[i1]);
        box[0] = first[i1];
        blocks[0] = &b1;
        std::fill(idx.begin() + 1, idx.end(), 0);
        while (true) {
          for (int j = 1; j < u; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            box[jj] = lists[jj][idx[jj]];
            blocks[jj] = &cached[jj][idx[jj]];
          }
          offer(tower, best, ev.eval(box, blocks), box);
          int j = u - 1;
          while (j >= 1 && ++idx[static_cast<std::size_t>(j)] == lists[static_cast<std::size_t>(j)].size()) idx[static_cast<std::size_t>(j--)] = 0;
          if (j < 1) break;
        }
      }
      results[ci] = std::move(best);
    });
    rep.evaluated = static_cast<std::uint64_t>(size);
  } else {
    if (static_cast<double>(opt.samples) > opt.budget)
      throw BudgetExceeded("sample count " + std::to_string(opt.samples) + " exceeds the budget");
    if (opt.samples == 0) throw PreconditionError("sampled mode needs at least one sample");
    const std::vector<CoeffBox> samples = sample_boxes(spec, bounds, opt.samples, opt.seed);
    const std::size_t chunk = 256;
    const std::size_t chunks = (samples.size() + chunk - 1) / chunk;
    results.resize(chunks);
    parallel_chunks(workers, chunks, [&](std::size_t ci) {
      Best best;
      std::vector<std::optional<FastKernel::Block>> owned(static_cast<std::size_t>(u));
      std::vector<const std::optional<FastKernel::Block>*> blocks;
      for (auto& o : owned) blocks.push_back(&o);
      for (std::size_t s = ci * chunk; s < std::min(samples.size(), (ci + 1) * chunk); ++s) {
        for (int j = 0; j < u; ++j) owned[static_cast<std::size_t>(j)] = ev.block(j + 1, samples[s][static_cast<std::size_t>(j)]);
        offer(tower, best, ev.eval(samples[s], blocks), samples[s]);
      }
      results[ci] = std::move(best);
    });
    rep.samples = opt.samples;
    rep.evaluated = opt.samples;
  }

  Best best;
  for (auto& b : results)
    if (b.set) offer(tower, best, std::move(b.value), b.box);
  if (!best.set) throw Error("min_abs_det: empty search space");

  rep.argmin = best.box;
  rep.exact_det = codeword_det(spec, best.box);
  if (rep.exact_det.is_zero()) throw Error("min_abs_det: zero determinant at the minimum");
  if (compare_abs2(tower, abs2_exact(rep.exact_det.num, tower.theta_approx(), ev.scale2()), best.value) != 0)
    throw Error("min_abs_det: fast and exact determinants disagree");
  rep.d_value = abs_det_ball(rep.exact_det, spec.p(), std::max(128, tower.precision_bits()));
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<int> pattern_bounds(const CodeSpec& spec, Pattern pattern, int n) {
  std::vector<int> b(static_cast<std::size_t>(spec.users()), pattern == Pattern::AllUsers ? n : 1);
  b[0] = n;
  return b;
}

std::vector<DecayReport> decay_curve(const CodeSpec& spec, int n_max, Pattern pattern, const SearchOptions& opt) {
  if (n_max < 1) throw PreconditionError("decay_curve: n_max must be >= 1");
  std::vector<DecayReport> out;
  for (int n = 1; n <= n_max; ++n) {
    const auto b = pattern_bounds(spec, pattern, n);
    out.push_back(min_abs_det(spec, b, opt));
  }
  return out;
}

DecayFit fit_decay_exponent(std::span<const double> n, std::span<const double> d) {
  if (n.size() != d.size() || n.size() < 3) throw PreconditionError("fit_decay_exponent: need at least 3 points");
  const double m = static_cast<double>(n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(d[i] > 0) || !(n[i] > 0)) throw PreconditionError("fit_decay_exponent: values must be positive");
    const double x = std::log(n[i]);
    const double y = std::log(d[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  if (den == 0) throw PreconditionError("fit_decay_exponent: N values must not all coincide");
  DecayFit fit;
  fit.slope = (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double e = std::log(d[i]) - (fit.intercept + fit.slope * std::log(n[i]));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

DecayFit fit_decay_exponent(std::span<const DecayReport> curve) {
  std::vector<double> n, d;
  for (const auto& r : curve) {
    if (r.d_value.value <= r.d_value.radius) throw PreconditionError("fit_decay_exponent: D value not separated from zero");
    n.push_back(r.bounds.at(0));
    d.push_back(r.d_value.value);
  }
  return fit_decay_exponent(n, d);
}

}  // namespace macdecay
