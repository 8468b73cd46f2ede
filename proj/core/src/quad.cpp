#include "macdecay/quad.hpp"

#include <ostream>
#include <sstream>

#include "macdecay/error.hpp"

namespace macdecay {

const char* field_name(RingTag tag) {
  switch (tag) {
    case RingTag::Gaussian:
      return "Q(i)";
    case RingTag::Eisenstein:
      return "Q(sqrt-3)";
    case RingTag::Rational:
      break;
  }
  return "Q";
}

RingTag parse_field_name(const std::string& name) {
  if (name == "Q(i)" || name == "gaussian" || name == "i") return RingTag::Gaussian;
  if (name == "Q(sqrt-3)" || name == "Q(sqrt(-3))" || name == "Q(w)" || name == "eisenstein" || name == "sqrt-3")
    return RingTag::Eisenstein;
  if (name == "Q") return RingTag::Rational;
  throw ConfigError("unknown quadratic field '" + name + "' (expected Q(i) or Q(sqrt-3))");
}

QuadElem::QuadElem(BigRat a, BigRat b, RingTag tag) : a_(std::move(a)), b_(std::move(b)), tag_(tag) {
  a_.canonicalize();
  b_.canonicalize();
  if (tag_ == RingTag::Rational && sgn(b_) != 0) throw PreconditionError("rational element with nonzero mu part");
}

RingTag QuadElem::join(RingTag x, RingTag y) {
  if (x == RingTag::Rational) return y;
  if (y == RingTag::Rational || x == y) return x;
  throw PreconditionError("cannot mix Q(i) and Q(sqrt-3) elements");
}

bool QuadElem::is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

BigRat QuadElem::norm() const {
  switch (tag_) {
    case RingTag::Gaussian:
      return a_ * a_ + b_ * b_;
    case RingTag::Eisenstein:
      return a_ * a_ + a_ * b_ + b_ * b_;
    case RingTag::Rational:
      break;
  }
  return a_ * a_;
}

QuadElem QuadElem::conj() const {
  QuadElem r = *this;
  if (tag_ == RingTag::Gaussian) {
    r.b_ = -b_;
  } else if (tag_ == RingTag::Eisenstein) {
    // conj(omega) = 1 - omega
    r.a_ = a_ + b_;
    r.b_ = -b_;
  }
  return r;
}

QuadElem QuadElem::inverse() const {
  if (is_zero()) throw DivisionByZero();
  const BigRat n = norm();
  QuadElem c = conj();
  c.a_ /= n;
  c.b_ /= n;
  return c;
}

QuadElem QuadElem::operator-() const {
  QuadElem r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

QuadElem& QuadElem::operator+=(const QuadElem& o) {
  tag_ = join(tag_, o.tag_);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
  tag_ = join(tag_, o.tag_);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
  tag_ = join(tag_, o.tag_);
  BigRat ac = a_ * o.a_;
  BigRat bd = b_ * o.b_;
  BigRat cross = a_ * o.b_ + b_ * o.a_;
  switch (tag_) {
    case RingTag::Gaussian:
      a_ = ac - bd;
      b_ = cross;
      break;
    case RingTag::Eisenstein:
      // omega^2 = omega - 1
      a_ = ac - bd;
      b_ = cross + bd;
      break;
    case RingTag::Rational:
      a_ = ac;
      break;
  }
  return *this;
}

std::string QuadElem::to_string() const {
  const char* mu = tag_ == RingTag::Eisenstein ? "w" : "i";
  std::ostringstream os;
  if (sgn(b_) == 0) {
    os << a_;
    return os.str();
  }
  if (sgn(a_) != 0) os << a_;
  if (sgn(b_) > 0 && sgn(a_) != 0) os << '+';
  if (b_ == -1) {
    os << '-';
  } else if (b_ != 1) {
    if (b_.get_den() != 1) {
      os << '(' << b_ << ')';
    } else {
      os << b_;
    }
  }
  os << mu;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.to_string(); }

std::optional<QuadElem> try_div_exact(const QuadElem& x, const QuadElem& y) {
  QuadElem q = x / y;
  if (!q.is_integral()) return std::nullopt;
  return q;
}

QuadElem div_exact(const QuadElem& x, const QuadElem& y) {
  auto q = try_div_exact(x, y);
  if (!q) throw NotDivisible(y.to_string() + " does not divide " + x.to_string() + " in O_K");
  return *q;
}

int ok_valuation(const QuadElem& x, const QuadElem& p) {
  if (!x.is_integral()) throw PreconditionError("ok_valuation: non-integral argument " + x.to_string());
  if (!p.is_integral() || p.norm() <= 1) throw PreconditionError("ok_valuation: " + p.to_string() + " is not a prime");
  if (x.is_zero()) return kInfiniteValuation;
  int e = 0;
  QuadElem cur = x;
  while (auto q = try_div_exact(cur, p)) {
    cur = std::move(*q);
    ++e;
  }
  return e;
}

std::vector<QuadElem> units(RingTag tag) {
  switch (tag) {
    case RingTag::Gaussian:
      return {QuadElem(1), QuadElem(0, 1, tag), QuadElem(-1), QuadElem(0, -1, tag)};
    case RingTag::Eisenstein:
      return {QuadElem(1),           QuadElem(0, 1, tag),  QuadElem(-1, 1, tag),
              QuadElem(-1),          QuadElem(0, -1, tag), QuadElem(1, -1, tag)};
    case RingTag::Rational:
      break;
  }
  return {QuadElem(1), QuadElem(-1)};
}

QuadElem canonical_associate(const QuadElem& x) {
  if (x.is_zero()) return x;
  for (const auto& u : units(x.tag())) {
    QuadElem y = u * x;
    if (sgn(y.a()) > 0 && sgn(y.b()) >= 0) return y;
  }
  throw PreconditionError("no canonical associate for " + x.to_string());
}

}  // namespace macdecay
