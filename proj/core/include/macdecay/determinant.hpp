#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "macdecay/code.hpp"
#include "macdecay/error.hpp"

namespace macdecay {

/// Division-free determinant by dynamic programming over column subsets.
///
/// dp[S] sums the signed products that assign the first |S| rows to the
/// columns in S, so the cost is n 2^(n-1) ring multiplications. T needs
/// +=, -=, *, and is_zero().
template <class T>
T det_subset_dp(const Matrix<T>& a) {
  const int n = a.rows();
  if (n == 0 || a.cols() != n) throw PreconditionError("determinant of a non-square or empty matrix");
  if (n == 1) return a(0, 0);
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::optional<T>> dp(full + 1);
  for (int c = 0; c < n; ++c)
    if (!a(0, c).is_zero()) dp[1u << c] = a(0, c);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (!dp[mask]) continue;
    const int row = __builtin_popcount(mask);
    for (int c = 0; c < n; ++c) {
      const std::uint32_t bit = 1u << c;
      if ((mask & bit) != 0 || a(row, c).is_zero()) continue;
      T term = *dp[mask] * a(row, c);
      auto& slot = dp[mask | bit];
      const bool odd = (__builtin_popcount(mask >> c) & 1) != 0;
      if (!slot) {
        slot = odd ? -term : std::move(term);
      } else if (odd) {
        *slot -= term;
      } else {
        *slot += term;
      }
    }
  }
  if (!dp[full]) return a(0, 0) - a(0, 0);
  return *dp[full];
}

/// det = num * p^(-p_exp), num integral.
struct ExactDet {
  FieldElem num;
  int p_exp = 0;

  bool is_zero() const { return num.is_zero(); }
};

/// Exact determinant of a square CodeMatrix; every row is scaled by
/// p^max_den_exp before expansion.
ExactDet det_exact(const CodeMatrix& a);

/// The determinant as an element of L.
FieldElem det_value(const ExactDet& d, const QuadElem& p);

/// v_P(det) for an integral-numerator determinant; kInfiniteValuation for 0.
int det_valuation(const ExactDet& d, const QuadElem& p);

/// sigma^U(x) == x, i.e. x lies in the tau-fixed field F.
bool in_fixed_field(const FieldElem& x, int users);

/// Coordinates of x * conj(x) in the power basis; rational because theta is real.
std::vector<BigRat> abs2_coords(const FieldElem& x);

/// |det| as a decimal ball, computed from an exact enclosure of |num|^2 / N(p)^p_exp.
RealBall abs_det_ball(const ExactDet& d, const QuadElem& p, int bits = 128);

/// Determinant of the single-user block M(x_1, ..., x_{n_t}).
FieldElem det_M(const CodeSpec& spec, std::span<const FieldElem> xs);

/// Splits det A = T + y with T = p^(-kUn_t) prod_l det sigma^(l-1)(M_l) and
/// records the valuations of both parts against the bounds that force det A != 0.
struct ValuationSplit {
  int v_det = 0;
  int v_leading = 0;
  int v_rest = kInfiniteValuation;
  int leading_bound = 0;  // U(n_t - 1 - k n_t)
  int rest_bound = 0;     // -k(U n_t - 2)

  bool holds() const { return v_leading <= leading_bound && v_rest >= rest_bound && v_leading < v_rest && v_det == v_leading; }
};

/// xs[j] holds the n_t elements of user j+1; each user needs min valuation 0.
ValuationSplit valuation_split(const CodeSpec& spec, std::span<const std::vector<FieldElem>> xs);

/// One coefficient vector per user.
using CoeffBox = std::vector<std::vector<long>>;

/// Exact determinant of the codeword given by a coefficient box.
ExactDet codeword_det(const CodeSpec& spec, const CoeffBox& box);

}  // namespace macdecay
