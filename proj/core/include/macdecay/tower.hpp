#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "macdecay/interval.hpp"
#include "macdecay/matrix.hpp"
#include "macdecay/poly.hpp"
#include "macdecay/quad.hpp"

namespace macdecay {

class FastRing;

/// Locates the designated real root theta of f.
///
/// Either a Gaussian period (sum of cos(2 pi h / m) over h in coset*H) or an
/// explicit approximate value. The exact root is then isolated by bisection.
struct ThetaHint {
  int m = 0;
  std::vector<int> subgroup_gens;
  int coset = 1;
  std::optional<double> value;

  double approximate() const;
};

struct TowerParams {
  RingTag field = RingTag::Gaussian;
  Poly<QuadElem> f;               // monic, degree users * antennas
  Poly<BigRat> sigma_image;       // sigma(theta) = g(theta)
  int users = 1;
  int antennas = 1;
  ThetaHint hint;
  int precision_bits = 256;
};

/// K subset F subset L with L = K(theta) cyclic of degree U*n_t over K.
///
/// Immutable after create(); safe to share between threads (the enclosure
/// cache is internally synchronized).
class Tower {
 public:
  static std::shared_ptr<const Tower> create(TowerParams params);
  ~Tower();

  RingTag field() const { return p_.field; }
  int degree() const { return degree_; }
  int users() const { return p_.users; }
  int antennas() const { return p_.antennas; }
  const Poly<QuadElem>& f() const { return p_.f; }
  const Poly<BigRat>& sigma_image() const { return p_.sigma_image; }
  const ThetaHint& hint() const { return p_.hint; }
  int precision_bits() const { return p_.precision_bits; }
  const TowerParams& params() const { return p_; }
  const QuadElem& discriminant() const { return disc_; }

  double theta_approx() const { return theta_approx_; }
  /// Rational interval of width <= 2^-bits around theta.
  RatInterval theta_enclosure(int bits) const;
  RatInterval sqrt3_enclosure(int bits) const;

  /// Multiply two coordinate vectors modulo f.
  std::vector<QuadElem> mulmod(const std::vector<QuadElem>& x, const std::vector<QuadElem>& y) const;
  /// sigma^j as a K-linear map; column i holds the coordinates of sigma^j(theta^i).
  const Matrix<QuadElem>& sigma_matrix(int j) const;

  /// Machine-integer arithmetic context, or nullptr if the tower does not fit.
  const FastRing* fast() const { return fast_.get(); }

 private:
  explicit Tower(TowerParams p);
  void build();

  TowerParams p_;
  int degree_ = 0;
  QuadElem disc_;
  std::vector<std::vector<QuadElem>> reduction_;  // theta^(d+e), e = 0..d-2
  std::vector<Matrix<QuadElem>> sigma_pow_;
  double theta_approx_ = 0;
  RatInterval theta_seed_;
  std::unique_ptr<FastRing> fast_;

  mutable std::mutex cache_mu_;
  mutable std::map<int, RatInterval> theta_cache_;
  mutable std::map<int, RatInterval> sqrt3_cache_;
};

using TowerPtr = std::shared_ptr<const Tower>;

}  // namespace macdecay
