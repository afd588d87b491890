#include "super/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace sup {

namespace {

bool valid_rational_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  if (i == s.size()) return false;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    ++i;
  }
  return true;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Rational rational_from_string(const std::string& s) {
  if (!valid_rational_text(s)) throw schema_error("bad rational literal: '" + s + "'");
  Rational r;
  if (r.set_str(s, 10) != 0) throw schema_error("bad rational literal: '" + s + "'");
  if (r.get_den() == 0) throw schema_error("zero denominator in rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  return r.get_str();
}

std::string rational_to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_pow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

double rational_to_double(const Rational& r) { return r.get_d(); }

Scalar Scalar::flt(std::complex<double> z) {
  Scalar s;
  s.kind_ = Kind::Float;
  s.f_ = z;
  return s;
}

const Rational& Scalar::exact_re() const {
  if (!is_exact()) throw kind_error("exact_re on float scalar");
  return re_;
}

const Rational& Scalar::exact_im() const {
  if (!is_exact()) throw kind_error("exact_im on float scalar");
  return im_;
}

std::complex<double> Scalar::float_value() const {
  if (!is_float()) throw kind_error("float_value on exact scalar");
  return f_;
}

Scalar Scalar::to_float() const {
  if (is_float()) return *this;
  return flt(std::complex<double>(re_.get_d(), im_.get_d()));
}

std::complex<double> Scalar::to_complex() const {
  if (is_float()) return f_;
  return {re_.get_d(), im_.get_d()};
}

bool Scalar::is_zero() const {
  if (is_exact()) return re_ == 0 && im_ == 0;
  return f_ == std::complex<double>(0.0, 0.0);
}

bool Scalar::is_real() const {
  if (is_exact()) return im_ == 0;
  return f_.imag() == 0.0;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-re_), Rational(-im_));
  return flt(-f_);
}

Scalar Scalar::conj() const {
  if (is_exact()) return Scalar(re_, Rational(-im_));
  return flt(std::conj(f_));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw error("division by zero scalar");
  if (is_exact()) {
    Rational n2 = re_ * re_ + im_ * im_;
    return Scalar(Rational(re_ / n2), Rational(-im_ / n2));
  }
  return flt(std::complex<double>(1.0, 0.0) / f_);
}

Scalar Scalar::abs2() const {
  if (is_exact()) return Scalar(Rational(re_ * re_ + im_ * im_));
  return flt(std::norm(f_), 0.0);
}

void Scalar::check_same_kind(const Scalar& o, const char* op) const {
  if (kind_ != o.kind_)
    throw kind_error(std::string("mixed exact/float scalars in '") + op +
                     "'; promote explicitly with to_float()");
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_kind(o, "+");
  if (is_exact()) {
    re_ += o.re_;
    im_ += o.im_;
  } else {
    f_ += o.f_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_kind(o, "-");
  if (is_exact()) {
    re_ -= o.re_;
    im_ -= o.im_;
  } else {
    f_ -= o.f_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_kind(o, "*");
  if (is_exact()) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    im_ = im;
  } else {
    f_ *= o.f_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_kind(o, "/");
  *this *= o.inv();
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_kind(o, "==");
  if (is_exact()) return re_ == o.re_ && im_ == o.im_;
  return f_ == o.f_;
}

Scalar Scalar::pow(unsigned long e) const {
  Scalar acc(1);
  if (is_float()) acc = flt(1.0, 0.0);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1UL) acc *= base;
    base *= base;
    e >>= 1UL;
  }
  return acc;
}

std::string Scalar::to_string() const {
  if (is_float()) return "(" + format_double(f_.real()) + "," + format_double(f_.imag()) + ")";
  if (im_ == 0) return rational_to_string(re_);
  std::string im_part;
  if (im_ == 1)
    im_part = "i";
  else if (im_ == -1)
    im_part = "-i";
  else
    im_part = rational_to_string(im_) + "i";
  if (re_ == 0) return im_part;
  if (im_part[0] == '-') return rational_to_string(re_) + im_part;
  return rational_to_string(re_) + "+" + im_part;
}

namespace {

// One summand of the compact complex form: "3/2", "-i", "2i", "+1/2i".
void apply_term(Scalar& acc, const std::string& term) {
  if (term.empty()) throw schema_error("empty term in scalar literal");
  std::string body = term;
  bool imag = false;
  if (body.back() == 'i') {
    imag = true;
    body.pop_back();
    if (body.empty() || body == "+")
      body = "1";
    else if (body == "-")
      body = "-1";
  }
  if (!body.empty() && body[0] == '+') body = body.substr(1);
  Rational r = rational_from_string(body);
  if (imag)
    acc += Scalar(Rational(0), r);
  else
    acc += Scalar(r);
}

}  // namespace

Scalar Scalar::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw schema_error("empty scalar literal");
  // Split at the last top-level '+'/'-' (not at position 0). Rational bodies
  // contain no exponents, so every interior sign is a term separator.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') split = i;
  }
  Scalar acc;
  if (split == std::string::npos) {
    apply_term(acc, s);
  } else {
    apply_term(acc, s.substr(0, split));
    apply_term(acc, s.substr(split));
  }
  return acc;
}

Scalar operator*(const Rational& r, const Scalar& s) { return Scalar(r) * s; }

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

double abs_value(const Scalar& s) { return std::abs(s.to_complex()); }

}  // namespace sup
