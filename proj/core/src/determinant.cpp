#include "macdecay/determinant.hpp"

#include <algorithm>

namespace macdecay {

ExactDet det_exact(const CodeMatrix& a) {
  const int s = a.max_den_exp();
  return {det_subset_dp(a.scaled(s)), s * a.rows()};
}

FieldElem det_value(const ExactDet& d, const QuadElem& p) {
  QuadElem pe(1);
  for (int i = 0; i < d.p_exp; ++i) pe *= p;
  return pe.inverse() * d.num;
}

int det_valuation(const ExactDet& d, const QuadElem& p) {
  if (d.is_zero()) return kInfiniteValuation;
  return valuation(d.num, p) - d.p_exp;
}

bool in_fixed_field(const FieldElem& x, int users) { return apply_sigma(x, users) == x; }

std::vector<BigRat> abs2_coords(const FieldElem& x) {
  const FieldElem z = x * conj_complex(x);
  std::vector<BigRat> out;
  for (const auto& c : z.coords()) {
    if (sgn(c.b()) != 0) throw Error("abs2_coords: x conj(x) has a non-rational coordinate");
    out.push_back(c.a());
  }
  return out;
}

RealBall abs_det_ball(const ExactDet& d, const QuadElem& p, int bits) {
  const auto& t = d.num.tower();
  const auto z = abs2_coords(d.num);
  RatInterval v = RatInterval::point(BigRat(0));
  const RatInterval th = t->theta_enclosure(bits);
  for (auto it = z.rbegin(); it != z.rend(); ++it) v = (v * th + RatInterval::point(*it)).round_outward(bits + 32);
  BigRat np(1);
  for (int i = 0; i < d.p_exp; ++i) np *= p.norm();
  v = (BigRat(1) / np) * v;
  if (sgn(v.lo) < 0) v.lo = 0;
  return sqrt_ball(v, bits);
}

FieldElem det_M(const CodeSpec& spec, std::span<const FieldElem> xs) {
  return det_exact(build_M(spec, xs)).num;
}

ValuationSplit valuation_split(const CodeSpec& spec, std::span<const std::vector<FieldElem>> xs) {
  const int u = spec.users();
  const int nt = spec.antennas();
  const int k = spec.k();
  if (static_cast<int>(xs.size()) != u) throw PreconditionError("valuation_split: one element list per user required");
  std::vector<CodeMatrix> blocks;
  FieldElem leading = FieldElem::one(spec.tower());
  for (int j = 0; j < u; ++j) {
    const auto& x = xs[static_cast<std::size_t>(j)];
    blocks.push_back(build_user_block(spec, j + 1, x));
    leading *= apply_sigma(det_M(spec, x), j);
  }
  const ExactDet det = det_exact(build_A(spec, blocks));
  const int p_exp = k * u * nt;
  if (det.p_exp != p_exp) throw Error("valuation_split: unexpected scaling exponent");
  ValuationSplit s;
  s.v_det = det_valuation(det, spec.p());
  s.v_leading = det_valuation({leading, p_exp}, spec.p());
  s.v_rest = det_valuation({det.num - leading, p_exp}, spec.p());
  s.leading_bound = u * (nt - 1 - k * nt);
  s.rest_bound = -k * (u * nt - 2);
  return s;
}

ExactDet codeword_det(const CodeSpec& spec, const CoeffBox& box) {
  if (static_cast<int>(box.size()) != spec.users()) throw PreconditionError("coefficient box needs one vector per user");
  std::vector<CodeMatrix> blocks;
  for (int j = 0; j < spec.users(); ++j) {
    const auto& b = box[static_cast<std::size_t>(j)];
    if (std::all_of(b.begin(), b.end(), [](long v) { return v == 0; }))
      throw PreconditionError("user " + std::to_string(j + 1) + " has an all-zero coefficient vector");
    blocks.push_back(codeword_from_coeffs(spec, j + 1, b));
  }
  return det_exact(build_A(spec, blocks));
}

}  // namespace macdecay
