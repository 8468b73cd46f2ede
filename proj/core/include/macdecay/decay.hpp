#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "macdecay/determinant.hpp"
#include "macdecay/fast_elem.hpp"

namespace macdecay {

/// int64 evaluation of codeword determinants. Block entries are scaled by
/// p^k and by D = ring()->sigma_den(), so det() returns
/// det_scale() p^(k U n_t) det A with det_scale() = D^(U n_t).
///
/// Every method may throw ArithmeticOverflow; callers fall back to
/// codeword_det().
class FastKernel {
 public:
  using Block = std::vector<IntElem>;  // n_t x U n_t, row-major

  /// nullopt when the tower has no int64 form.
  static std::optional<FastKernel> create(const CodeSpec& spec);

  /// Numerators of D p^k B_j for the codeword with the given coefficients.
  Block block(int user, std::span<const long> coeffs) const;
  /// det of the stacked blocks, one per user.
  IntElem det(std::span<const Block* const> blocks) const;
  std::int64_t det_scale() const { return det_scale_; }

  const FastRing* ring() const { return ring_; }

 private:
  explicit FastKernel(const CodeSpec& spec);

  const FastRing* ring_;
  int users_;
  int antennas_;
  int basis_;
  QuadInt p_;
  QuadInt pk_;
  std::int64_t det_scale_ = 1;
};

struct RankCheckReport {
  std::uint64_t checked = 0;
  std::uint64_t tau_violations = 0;
  std::optional<CoeffBox> counterexample;  // first box with det == 0
};

/// Exact det != 0 (int64 route with exact fallback) and tau-fixedness for every box produced by `next`
/// (which returns false when exhausted). Boxes with an all-zero user are rejected.
RankCheckReport rank_criterion_check(const CodeSpec& spec, const std::function<bool(CoeffBox&)>& next);

enum class SearchMode { Exhaustive, Sampled };
enum class Pattern { FirstUser, AllUsers };

const char* mode_name(SearchMode m);  // "exhaustive" / "sampled"
const char* pattern_name(Pattern p);  // "first-user" / "all-users"

struct SearchOptions {
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  double budget = 1e8;  // maximum number of codewords evaluated
  int workers = 0;      // 0: hardware concurrency
};

/// One evaluation of the decay function. In sampled mode d_value is only an
/// upper bound on D.
struct DecayReport {
  std::vector<int> bounds;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t samples = 0;  // sampled mode only
  std::uint64_t seed = 0;
  std::uint64_t evaluated = 0;
  RealBall d_value;
  CoeffBox argmin;
  ExactDet exact_det;
  double wall_time_ms = 0;
};

/// Every nonzero vector in [-n, n]^len, in lexicographic order.
std::vector<std::vector<long>> nonzero_box_vectors(int len, int n);

/// `count` boxes drawn uniformly from the all-users-nonzero box space with
/// mt19937_64(seed); all-zero user vectors are redrawn.
std::vector<CoeffBox> sample_boxes(const CodeSpec& spec, std::span<const int> bounds, std::uint64_t count, std::uint64_t seed);

/// Number of all-users-nonzero boxes, as a double (may exceed 2^64).
double search_space_size(const CodeSpec& spec, std::span<const int> bounds);

/// min |det A| over boxes with every user nonzero and |b_i| <= N_j.
/// Ties go to the lexicographically smallest box; the result does not
/// depend on the worker count.
DecayReport min_abs_det(const CodeSpec& spec, std::span<const int> bounds, const SearchOptions& opt);

std::vector<int> pattern_bounds(const CodeSpec& spec, Pattern pattern, int n);

/// D at N = 1..n_max for the chosen pattern.
std::vector<DecayReport> decay_curve(const CodeSpec& spec, int n_max, Pattern pattern, const SearchOptions& opt);

struct DecayFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square of the log-log residuals
};

/// Least squares of log D against log N.
DecayFit fit_decay_exponent(std::span<const double> n, std::span<const double> d);
/// Uses bounds[0] as N; rejects values not separated from zero by their error radius.
DecayFit fit_decay_exponent(std::span<const DecayReport> curve);

}  // namespace macdecay
