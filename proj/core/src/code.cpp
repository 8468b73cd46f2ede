#include "macdecay/code.hpp"

#include <algorithm>
#include <cmath>

#include "macdecay/error.hpp"
#include "macdecay/ring_core.hpp"

namespace macdecay {

namespace {

QuadElem p_power(const QuadElem& p, int e) {
  QuadElem r(1);
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

int choose_k(int users, int antennas) {
  if (users < 1 || antennas < 1) throw PreconditionError("choose_k: U and n_t must be positive");
  return users * (antennas - 1) / 2 + 1;
}

CodeSpec CodeSpec::create(TowerPtr tower, QuadElem p, int k) {
  if (!tower) throw PreconditionError("CodeSpec: null tower");
  const int u = tower->users();
  const int nt = tower->antennas();
  if (2 * k <= u * (nt - 1))
    throw PreconditionError("k = " + std::to_string(k) + " must exceed U(n_t-1)/2 = " + std::to_string(u * (nt - 1)) + "/2");
  if (p.tag() != RingTag::Rational && p.tag() != tower->field()) throw PreconditionError("CodeSpec: p lies in a different field");
  p = QuadElem(p.a(), p.b(), tower->field());
  if (!p.is_integral() || !is_ok_prime(p)) throw PreconditionError("CodeSpec: " + p.to_string() + " is not a prime of O_K");
  CodeSpec s(std::move(tower), p, k);
  s.cert_.residue_order = p.norm().get_num();
  if (s.degree() >= 2) {
    s.cert_.disc_valuation = ok_valuation(s.tower_->discriminant(), p);
    if (s.cert_.disc_valuation != 0)
      throw PreconditionError("CodeSpec: " + p.to_string() + " divides disc(f); inertness cannot be certified");
  }
  s.cert_.irreducible_mod_p = is_irreducible_mod_p(s.tower_->f(), p);
  if (!s.cert_.irreducible_mod_p) throw PreconditionError("CodeSpec: " + p.to_string() + " is not inert in L/K");
  return s;
}

CodeMatrix::CodeMatrix(int rows, int cols, const TowerPtr& tower, QuadElem p)
    : rows_(rows), cols_(cols), p_(std::move(p)), e_(static_cast<std::size_t>(rows * cols), CodeEntry{FieldElem::zero(tower), 0}) {}

int CodeMatrix::max_den_exp() const {
  int m = 0;
  for (const auto& e : e_) m = std::max(m, e.den_exp);
  return m;
}

Matrix<FieldElem> CodeMatrix::scaled(int s) const {
  if (s < max_den_exp()) throw PreconditionError("CodeMatrix::scaled: exponent below largest denominator");
  Matrix<FieldElem> out(rows_, cols_, FieldElem{});
  std::vector<QuadElem> pw{QuadElem(1)};
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      const CodeEntry& e = at(r, c);
      const int shift = s - e.den_exp;
      while (static_cast<int>(pw.size()) <= shift) pw.push_back(pw.back() * p_);
      out(r, c) = pw[static_cast<std::size_t>(shift)] * e.num;
    }
  return out;
}

bool operator==(const CodeMatrix& x, const CodeMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_ || !(x.p_ == y.p_)) return false;
  const int s = std::max(x.max_den_exp(), y.max_den_exp());
  return x.scaled(s) == y.scaled(s);
}

CodeMatrix operator+(const CodeMatrix& x, const CodeMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw PreconditionError("CodeMatrix +: shape mismatch");
  CodeMatrix out = x;
  for (int r = 0; r < x.rows_; ++r)
    for (int c = 0; c < x.cols_; ++c) {
      const CodeEntry& a = x.at(r, c);
      const CodeEntry& b = y.at(r, c);
      const int s = std::max(a.den_exp, b.den_exp);
      out.at(r, c) = {p_power(x.p_, s - a.den_exp) * a.num + p_power(x.p_, s - b.den_exp) * b.num, s};
    }
  return out;
}

CodeMatrix build_M(const CodeSpec& spec, std::span<const FieldElem> xs) {
  const int nt = spec.antennas();
  if (static_cast<int>(xs.size()) != nt)
    throw PreconditionError("build_M: expected " + std::to_string(nt) + " elements, got " + std::to_string(xs.size()));
  CodeMatrix m(nt, nt, spec.tower(), spec.p());
  for (int c = 0; c < nt; ++c)
    for (int r = 0; r < nt; ++r) {
      FieldElem v = apply_tau(xs[static_cast<std::size_t>(((r - c) % nt + nt) % nt)], c);
      if (r < c) v *= spec.p();
      m.at(r, c) = {std::move(v), 0};
    }
  return m;
}

namespace {

CodeMatrix user_block_unchecked(const CodeSpec& spec, int user, std::span<const FieldElem> xs) {
  const int u = spec.users();
  const int nt = spec.antennas();
  if (user < 1 || user > u) throw PreconditionError("user index out of range 1.." + std::to_string(u));
  const CodeMatrix m = build_M(spec, xs);
  CodeMatrix b(nt, u * nt, spec.tower(), spec.p());
  const int scaled_block = user - 1;  // the only 1-based -> 0-based conversion
  for (int t = 0; t < u; ++t)
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < nt; ++c)
        b.at(r, t * nt + c) = {apply_sigma(m.at(r, c).num, t), t == scaled_block ? spec.k() : 0};
  return b;
}

}  // namespace

CodeMatrix build_user_block(const CodeSpec& spec, int user, std::span<const FieldElem> xs) {
  if (std::all_of(xs.begin(), xs.end(), [](const FieldElem& x) { return x.is_zero(); }))
    throw PreconditionError("build_user_block: every x_{j,l} is zero");
  return user_block_unchecked(spec, user, xs);
}

CodeMatrix build_A(const CodeSpec& spec, std::span<const CodeMatrix> blocks) {
  const int u = spec.users();
  const int nt = spec.antennas();
  if (static_cast<int>(blocks.size()) != u) throw PreconditionError("build_A: expected one block per user");
  CodeMatrix a(u * nt, u * nt, spec.tower(), spec.p());
  for (int j = 0; j < u; ++j) {
    const CodeMatrix& b = blocks[static_cast<std::size_t>(j)];
    if (b.rows() != nt || b.cols() != u * nt) throw PreconditionError("build_A: user block has wrong shape");
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < u * nt; ++c) a.at(j * nt + r, c) = b.at(r, c);
  }
  return a;
}

std::vector<FieldElem> coeffs_to_elements(const CodeSpec& spec, std::span<const long> coeffs) {
  const int per = spec.basis_size();
  if (static_cast<int>(coeffs.size()) != spec.rank())
    throw PreconditionError("coefficient vector has length " + std::to_string(coeffs.size()) + ", expected " +
                            std::to_string(spec.rank()));
  std::vector<FieldElem> xs;
  for (int l = 0; l < spec.antennas(); ++l)
    xs.push_back(FieldElem::from_basis_coeffs(spec.tower(), coeffs.subspan(static_cast<std::size_t>(l * per), static_cast<std::size_t>(per))));
  return xs;
}

CodeMatrix codeword_from_coeffs(const CodeSpec& spec, int user, std::span<const long> coeffs) {
  const auto xs = coeffs_to_elements(spec, coeffs);
  return user_block_unchecked(spec, user, xs);
}

std::vector<CodeMatrix> lattice_basis(const CodeSpec& spec, int user) {
  std::vector<CodeMatrix> out;
  std::vector<long> e(static_cast<std::size_t>(spec.rank()), 0);
  for (int i = 0; i < spec.rank(); ++i) {
    e[static_cast<std::size_t>(i)] = 1;
    out.push_back(codeword_from_coeffs(spec, user, e));
    e[static_cast<std::size_t>(i)] = 0;
  }
  return out;
}

Matrix<std::complex<double>> embed_matrix(const CodeMatrix& m) {
  const auto& t = m.at(0, 0).num.tower();
  const std::complex<double> pc = embed_double(FieldElem::scalar(t, m.p()));
  Matrix<std::complex<double>> out(m.rows(), m.cols(), 0.0);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = embed_double(m.at(r, c).num) / std::pow(pc, m.at(r, c).den_exp);
  return out;
}

LatticeRankReport certify_lattice_rank(const CodeSpec& spec, int user) {
  const auto basis = lattice_basis(spec, user);
  const int n = static_cast<int>(basis.size());
  // Each n_t x Un_t complex generator becomes a real vector of length 2 n_t U n_t = n.
  std::vector<std::vector<double>> a;
  for (const auto& b : basis) {
    const auto e = embed_matrix(b);
    std::vector<double> v;
    for (const auto& z : e.data()) {
      v.push_back(z.real());
      v.push_back(z.imag());
    }
    a.push_back(std::move(v));
  }
  const int dim = static_cast<int>(a.front().size());
  LatticeRankReport rep;
  rep.expected = n;
  double scale = 0;
  for (const auto& row : a)
    for (double x : row) scale = std::max(scale, std::fabs(x));
  const double tol = 1e-9 * scale * n;
  double det = 1;
  int rank = 0;
  for (int col = 0; col < dim && rank < n; ++col) {
    int piv = rank;
    for (int r = rank + 1; r < n; ++r)
      if (std::fabs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::fabs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    const double pv = a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)];
    if (std::fabs(pv) <= tol) {
      det = 0;
      continue;
    }
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(rank)]);
    det *= pv;
    for (int r = rank + 1; r < n; ++r) {
      const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / pv;
      for (int c = col; c < dim; ++c)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
    }
    ++rank;
  }
  rep.rank = rank;
  rep.abs_det = dim == n && rank == n ? std::fabs(det) : 0.0;
  return rep;
}

}  // namespace macdecay
