#include "tstab/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "tstab/errors.hpp"

namespace tstab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::NonpositiveDenominator: return "NonpositiveDenominator";
    case ErrorKind::NotInFan: return "NotInFan";
    case ErrorKind::InvalidVariety: return "InvalidVariety";
    case ErrorKind::NotBig: return "NotBig";
    case ErrorKind::NotAmple: return "NotAmple";
    case ErrorKind::SlopeUndefined: return "SlopeUndefined";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::InvalidTwist: return "InvalidTwist";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::ZeroDensity: return "ZeroDensity";
  }
  return "Error";
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector +: dimension mismatch");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector -: dimension mismatch");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector operator-(const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

RatVector operator*(const Rational& s, const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool is_integral(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

RatVector primitive(const RatVector& v) {
  Integer lcm_den = 1;
  for (const auto& q : v) {
    if (sgn(q) != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  }
  Integer g = 0;
  for (const auto& q : v) {
    Integer num = q.get_num() * (lcm_den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return v;
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = Rational(Integer(v[i].get_num() * (lcm_den / v[i].get_den())) / g);
  }
  return r;
}

RatVector unit_vector(int dim, int i) {
  RatVector e(static_cast<std::size_t>(dim), Rational(0));
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

int rank(const RatMatrix& rows) {
  if (rows.empty()) return 0;
  RatMatrix m = rows;
  const std::size_t cols = m.front().size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t pivot = static_cast<std::size_t>(r);
    while (pivot < m.size() && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[static_cast<std::size_t>(r)]);
    const RatVector& pr = m[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < m.size(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / pr[c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * pr[k];
    }
    ++r;
  }
  return r;
}

Rational determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

bool solve(const RatMatrix& a, const RatVector& b, RatVector& x) {
  const std::size_t n = a.size();
  RatMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = a[i];
    m[i].push_back(b[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(m[pivot], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  x.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return true;
}

RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = a[i];
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(Rational(i == j ? 1 : 0));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("inverse: singular matrix");
    std::swap(m[pivot], m[c]);
    Rational inv = 1 / m[c][c];
    for (auto& q : m[c]) q *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k < 2 * n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  RatMatrix out(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

std::string to_pq(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_int_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

Integer parse_int(std::string_view s) {
  if (!is_int_literal(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_int(trim(s.substr(0, slash)));
    Integer den = parse_int(trim(s.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot_pos);
    std::string_view frac = s.substr(dot_pos + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    Integer w = parse_int(whole);
    Integer f = parse_int(frac);
    if (frac.front() == '-' || frac.front() == '+') throw ParseError("bad decimal '" + std::string(s) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational q(w * scale + f, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_int(s));
}

RatVector parse_rational_list(std::string_view text) {
  RatVector out;
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty coefficient list");
  while (true) {
    auto comma = s.find(',');
    out.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

bool lex_less(const RatVector& a, const RatVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace tstab
