#pragma once

#include <complex>
#include <span>
#include <vector>

#include "macdecay/field_elem.hpp"
#include "macdecay/matrix.hpp"
#include "macdecay/tower.hpp"

namespace macdecay {

/// Smallest integer k with k > U(n_t - 1)/2.
int choose_k(int users, int antennas);

/// Evidence that p is inert in L/K, recorded when a CodeSpec is created.
struct InertCertificate {
  BigInt residue_order;  // N(p)
  int disc_valuation = 0;
  bool irreducible_mod_p = false;
};

/// C_{U,n_t}(L/K, p, sigma, k): a tower, an inert prime and the exponent k.
class CodeSpec {
 public:
  /// Validates k > U(n_t-1)/2, p prime in O_K, v_p(disc f) = 0 and f irreducible mod p.
  static CodeSpec create(TowerPtr tower, QuadElem p, int k);

  const TowerPtr& tower() const { return tower_; }
  const QuadElem& p() const { return p_; }
  int k() const { return k_; }
  int users() const { return tower_->users(); }
  int antennas() const { return tower_->antennas(); }
  int degree() const { return tower_->degree(); }
  /// 2 U n_t: size of the Z-basis {theta^a mu^b} of O_K[theta].
  int basis_size() const { return 2 * degree(); }
  /// 2 U n_t^2: integer coefficients per user codeword.
  int rank() const { return antennas() * basis_size(); }
  const InertCertificate& certificate() const { return cert_; }

 private:
  CodeSpec(TowerPtr tower, QuadElem p, int k) : tower_(std::move(tower)), p_(std::move(p)), k_(k) {}

  TowerPtr tower_;
  QuadElem p_;
  int k_ = 1;
  InertCertificate cert_;
};

/// Matrix entry num * p^(-den_exp).
struct CodeEntry {
  FieldElem num;
  int den_exp = 0;
};

/// Matrix over L whose denominators are powers of the inert prime p.
class CodeMatrix {
 public:
  CodeMatrix(int rows, int cols, const TowerPtr& tower, QuadElem p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const QuadElem& p() const { return p_; }
  const CodeEntry& at(int r, int c) const { return e_[static_cast<std::size_t>(r * cols_ + c)]; }
  CodeEntry& at(int r, int c) { return e_[static_cast<std::size_t>(r * cols_ + c)]; }

  int max_den_exp() const;
  /// Numerators of p^s * (this), valid for s >= max_den_exp().
  Matrix<FieldElem> scaled(int s) const;

  friend bool operator==(const CodeMatrix& x, const CodeMatrix& y);
  friend CodeMatrix operator+(const CodeMatrix& x, const CodeMatrix& y);

 private:
  int rows_;
  int cols_;
  QuadElem p_;
  std::vector<CodeEntry> e_;
};

/// Left-regular representation of x_1 + ... in the cyclic algebra (L/F, tau, p):
/// entry (r, c) = p^[r<c] tau^c(x_{(r-c) mod n_t}), 0-based.
CodeMatrix build_M(const CodeSpec& spec, std::span<const FieldElem> xs);

/// B_j = (M_j, sigma(M_j), ..., p^-k sigma^(j-1)(M_j), ..., sigma^(U-1)(M_j)).
/// `user` is 1-based. Throws PreconditionError when every x is zero.
CodeMatrix build_user_block(const CodeSpec& spec, int user, std::span<const FieldElem> xs);

/// Vertical stack of the U user blocks.
CodeMatrix build_A(const CodeSpec& spec, std::span<const CodeMatrix> blocks);

/// x_{j,l} from an integer coefficient vector: coeffs[l * 2Un_t + 2a + b] multiplies theta^a mu^b.
std::vector<FieldElem> coeffs_to_elements(const CodeSpec& spec, std::span<const long> coeffs);

/// sum_i coeffs[i] B_{j,i}; the zero vector gives the zero block.
CodeMatrix codeword_from_coeffs(const CodeSpec& spec, int user, std::span<const long> coeffs);

/// The r = 2 U n_t^2 generators B_{j,1..r}, ordered l-major then basis index.
std::vector<CodeMatrix> lattice_basis(const CodeSpec& spec, int user);

/// Complex matrix under the designated embedding (double precision).
Matrix<std::complex<double>> embed_matrix(const CodeMatrix& m);

struct LatticeRankReport {
  int rank = 0;
  int expected = 0;
  double abs_det = 0;  // |det| of the square real generator matrix
};

/// Real-vectorizes the generators of one user and computes their numeric rank.
LatticeRankReport certify_lattice_rank(const CodeSpec& spec, int user);

}  // namespace macdecay
