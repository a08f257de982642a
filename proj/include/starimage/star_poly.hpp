#ifndef STARIMAGE_STAR_POLY_HPP
#define STARIMAGE_STAR_POLY_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "starimage/scalar.hpp"

namespace starimage {

enum class VarKind { Symmetric, Skew };

/// A symmetric (y<i>) or skew (z<i>) variable of the free algebra with
/// involution.
struct Variable {
  VarKind kind;
  int index;  // >= 1

  auto operator<=>(const Variable&) const = default;

  std::string name() const {
    return (kind == VarKind::Symmetric ? "y" : "z") + std::to_string(index);
  }
};

using Word = std::vector<Variable>;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  size_t position;
};

/// A multilinear element of F<Y;Z>: a finite sum of rational multiples of
/// words, every variable occurring exactly once in every word.
class StarPolynomial {
 public:
  StarPolynomial() = default;

  static StarPolynomial zero() { return StarPolynomial(); }

  static StarPolynomial monomial(const Rational& coeff, Word w) {
    StarPolynomial p;
    if (coeff != 0) p.terms_[std::move(w)] = coeff;
    return p;
  }

  static StarPolynomial variable(VarKind kind, int index) {
    return monomial(1, {Variable{kind, index}});
  }

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t monomial_count() const { return terms_.size(); }

  StarPolynomial operator+(const StarPolynomial& o) const {
    StarPolynomial r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
  }
  StarPolynomial operator-(const StarPolynomial& o) const {
    StarPolynomial r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
    return r;
  }
  StarPolynomial operator*(const Rational& c) const {
    StarPolynomial r;
    if (c == 0) return r;
    for (const auto& [w, k] : terms_) r.terms_[w] = k * c;
    return r;
  }
  /// Concatenation product of the free algebra.
  StarPolynomial operator*(const StarPolynomial& o) const {
    StarPolynomial r;
    for (const auto& [w1, c1] : terms_)
      for (const auto& [w2, c2] : o.terms_) {
        Word w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        r.add_term(w, c1 * c2);
      }
    return r;
  }
  StarPolynomial operator-() const { return *this * Rational(-1); }

  bool operator==(const StarPolynomial& o) const { return terms_ == o.terms_; }

  /// The set of variables appearing (identical in every monomial once
  /// multilinearity is validated).
  std::set<Variable> variables() const {
    std::set<Variable> vs;
    if (!terms_.empty())
      for (const Variable& v : terms_.begin()->first) vs.insert(v);
    return vs;
  }

  int sym_arity() const {
    int k = 0;
    for (const Variable& v : variables())
      if (v.kind == VarKind::Symmetric) ++k;
    return k;
  }
  int skew_arity() const {
    int l = 0;
    for (const Variable& v : variables())
      if (v.kind == VarKind::Skew) ++l;
    return l;
  }
  int degree() const {
    return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.size());
  }

  /// Throws if some monomial repeats a variable or the monomials do not all
  /// use the same variable set.
  void validate_multilinear() const {
    std::set<Variable> ref;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (w.empty())
        throw DomainError("constant terms are not multilinear");
      std::set<Variable> vs;
      for (const Variable& v : w) {
        if (!vs.insert(v).second)
          throw DomainError("multilinearity violation: variable " + v.name() +
                            " repeats in monomial " + word_name(w));
      }
      if (first) {
        ref = vs;
        first = false;
      } else if (vs != ref) {
        throw DomainError(
            "multilinearity violation: monomial " + word_name(w) +
            " does not use the same variable set as the first monomial");
      }
    }
  }

  void add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_[w] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static std::string word_name(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) s += "*";
      s += w[i].name();
    }
    return s;
  }

 private:
  std::map<Word, Rational> terms_;
};

/// The involution: reverses each word, with sign (-1)^(#skew letters).
inline StarPolynomial star(const StarPolynomial& p) {
  StarPolynomial r;
  for (const auto& [w, c] : p.terms()) {
    Word rev(w.rbegin(), w.rend());
    int skew = static_cast<int>(
        std::count_if(w.begin(), w.end(),
                      [](const Variable& v) { return v.kind == VarKind::Skew; }));
    r.add_term(rev, skew % 2 == 0 ? c : -c);
  }
  return r;
}

inline StarPolynomial symmetric_part(const StarPolynomial& p) {
  return (p + star(p)) * Rational(1, 2);
}

inline StarPolynomial skew_part(const StarPolynomial& p) {
  return (p - star(p)) * Rational(1, 2);
}

/// Replaces each skew variable z_j (in increasing index order, j = 1..l)
/// by the commutator [y_{k+2j-1}, y_{k+2j}] of fresh symmetric variables.
/// The result is a multilinear polynomial in k+2l symmetric variables with
/// the same evaluations on matrix algebras when the commutator slots are
/// evaluated accordingly.
inline StarPolynomial substitute_commutators(const StarPolynomial& p) {
  p.validate_multilinear();
  std::vector<Variable> skews;
  int base = 0;
  for (const Variable& v : p.variables()) {
    if (v.kind == VarKind::Skew)
      skews.push_back(v);
    else
      base = std::max(base, v.index);
  }
  base = std::max(base, p.sym_arity());
  std::map<Variable, std::pair<Variable, Variable>> fresh;
  for (size_t j = 0; j < skews.size(); ++j) {
    int a = base + 2 * static_cast<int>(j) + 1;
    fresh[skews[j]] = {Variable{VarKind::Symmetric, a},
                       Variable{VarKind::Symmetric, a + 1}};
  }
  StarPolynomial g;
  for (const auto& [w, c] : p.terms()) {
    std::vector<std::pair<Word, Rational>> expanded = {{Word{}, c}};
    for (const Variable& v : w) {
      std::vector<std::pair<Word, Rational>> next;
      for (auto& [pw, pc] : expanded) {
        if (v.kind == VarKind::Symmetric) {
          Word e = pw;
          e.push_back(v);
          next.emplace_back(std::move(e), pc);
        } else {
          auto [ya, yb] = fresh.at(v);
          Word e1 = pw;
          e1.push_back(ya);
          e1.push_back(yb);
          next.emplace_back(std::move(e1), pc);
          Word e2 = pw;
          e2.push_back(yb);
          e2.push_back(ya);
          next.emplace_back(std::move(e2), -pc);
        }
      }
      expanded = std::move(next);
    }
    for (auto& [ew, ec] : expanded) g.add_term(ew, ec);
  }
  return g;
}

/// True iff p is a sum of commutators in the free algebra: partition words
/// into cyclic rotation classes and require each class coefficient sum to
/// vanish. Rotations carry no signs (rotation is not the star map).
inline bool cyclic_sum_zero(const StarPolynomial& p) {
  auto canonical_rotation = [](const Word& w) {
    Word best = w;
    Word cur = w;
    for (size_t i = 1; i < w.size(); ++i) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur < best) best = cur;
    }
    return best;
  };
  std::map<Word, Rational> class_sum;
  for (const auto& [w, c] : p.terms()) class_sum[canonical_rotation(w)] += c;
  for (const auto& [w, s] : class_sum)
    if (s != 0) return false;
  return true;
}

/// The standard polynomial s_m = sum over permutations of sgn * word.
inline StarPolynomial standard_polynomial(int m,
                                          VarKind kind = VarKind::Symmetric) {
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i + 1;
  StarPolynomial p;
  auto sign_of = [](const std::vector<int>& q) {
    int s = 1;
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = i + 1; j < q.size(); ++j)
        if (q[i] > q[j]) s = -s;
    return s;
  };
  do {
    Word w;
    for (int i : perm) w.push_back(Variable{kind, i});
    p.add_term(w, Rational(sign_of(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

inline StarPolynomial poly_commutator(const StarPolynomial& a,
                                      const StarPolynomial& b) {
  return a * b - b * a;
}

/// Canonical printed form: monomials in lexicographic word order.
inline std::string to_string(const StarPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rational ac = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (ac != 1) out += scalar_traits<Rational>::to_string(ac) + "*";
    out += StarPolynomial::word_name(w);
  }
  return out;
}

// --- parser ----------------------------------------------------------------
//
// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := [rational] factor ('*'? factor)*
// factor := var | '(' expr ')' | '[' expr ',' expr (',' expr)* ']'
// var    := ('y'|'z') digit+
// rational := int ['/' int]
//
// Multi-argument brackets nest to the left: [a,b,c] = [[a,b],c].

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  StarPolynomial parse() {
    StarPolynomial p = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    p.validate_multilinear();
    return p;
  }

 private:
  StarPolynomial parse_expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = s_[pos_++] == '-';
    StarPolynomial p = parse_term();
    if (neg) p = -p;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      StarPolynomial t = parse_term();
      p = c == '+' ? p + t : p - t;
    }
    return p;
  }

  StarPolynomial parse_term() {
    skip_ws();
    Rational coeff(1);
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_rational_literal();
    }
    StarPolynomial p = StarPolynomial::monomial(coeff, {});
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = p * parse_factor();  // '*' must be followed by a factor
        have_factor = true;
      } else if (c == 'y' || c == 'z' || c == '(' || c == '[') {
        p = p * parse_factor();
        have_factor = true;
      } else {
        break;
      }
    }
    if (!have_factor)
      throw ParseError("constant terms are not allowed", pos_);
    return p;
  }

  StarPolynomial parse_factor() {
    skip_ws();
    char c = peek();
    if (c == 'y' || c == 'z') return parse_var();
    if (c == '(') {
      ++pos_;
      StarPolynomial p = parse_expr();
      expect(')');
      return p;
    }
    if (c == '[') {
      ++pos_;
      StarPolynomial p = parse_expr();
      skip_ws();
      if (peek() != ',') throw ParseError("expected ',' in commutator", pos_);
      while (peek() == ',') {
        ++pos_;
        StarPolynomial q = parse_expr();
        p = poly_commutator(p, q);
        skip_ws();
      }
      expect(']');
      return p;
    }
    throw ParseError("expected variable, '(' or '['", pos_);
  }

  StarPolynomial parse_var() {
    char c = s_[pos_++];
    VarKind kind = c == 'y' ? VarKind::Symmetric : VarKind::Skew;
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start) throw ParseError("variable needs an index", pos_);
    int idx = std::stoi(s_.substr(start, pos_ - start));
    if (idx < 1) throw ParseError("variable index must be >= 1", start);
    return StarPolynomial::variable(kind, idx);
  }

  Rational parse_rational_literal() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    BigInt num(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      size_t dstart = pos_;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ == dstart) throw ParseError("expected denominator", pos_);
      BigInt den(s_.substr(dstart, pos_ - dstart));
      if (den == 0) throw ParseError("zero denominator", dstart);
      return Rational(num, den);
    }
    return Rational(num);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline StarPolynomial parse_star_polynomial(const std::string& text) {
  return detail::Parser(text).parse();
}

}  // namespace starimage

#endif
