#pragma once

#include "freegraph/graph.hpp"
#include "freegraph/rational.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace freegraph {

/// A path in the directed double. The empty word at α stands for p_α.
struct Word {
  VertexId start{};
  VertexId end{};
  std::vector<OrientedEdgeId> letters;

  std::size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool is_loop() const { return start == end; }

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

Word vertex_word(VertexId v);
/// Word from a letter sequence; nullopt when consecutive letters do not compose.
std::optional<Word> make_word(const DirectedDouble& g, std::span<const OrientedEdgeId> letters);
/// Concatenation, or nullopt when a.end != b.start (the product is zero).
std::optional<Word> concat(const Word& a, const Word& b);
/// Word of the adjoint monomial: reversed, each letter replaced by its opposite.
Word adjoint_word(const DirectedDouble& g, const Word& w);
/// Comma-separated oriented-edge labels, or `p(<vertex>)` for an empty word.
std::string format_word(const DirectedDouble& g, const Word& w);
/// Inverse of the label list form: `e1+,e1-`. Throws on unknown labels or broken paths.
Word parse_word(const DirectedDouble& g, std::string_view text);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& c) { return c == 0.0; }
  static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
  static std::complex<double> to_complex(const std::complex<double>& c) { return c; }
};

template <>
struct ScalarTraits<QComplex> {
  static bool is_zero(const QComplex& c) { return c.is_zero(); }
  static QComplex conj(const QComplex& c) { return freegraph::conj(c); }
  static std::complex<double> to_complex(const QComplex& c) { return freegraph::to_complex(c); }
};

/// Noncommutative polynomial in {X_ε} ∪ {p_α} kept in path normal form:
/// every monomial is a composable word, products of non-composable words vanish,
/// and no stored coefficient is zero.
template <class S>
class BasicPoly {
 public:
  using Scalar = S;
  using Terms = std::map<Word, S>;

  BasicPoly() = default;

  static BasicPoly monomial(Word w, S c = S(1)) {
    BasicPoly p;
    p.add(std::move(w), c);
    return p;
  }
  static BasicPoly projection(VertexId v) { return monomial(vertex_word(v)); }
  static BasicPoly generator(const DirectedDouble& g, OrientedEdgeId e) {
    return monomial(Word{g.source(e), g.target(e), {e}});
  }
  /// Σ_α p_α.
  static BasicPoly identity(const DirectedDouble& g) {
    BasicPoly p;
    for (std::size_t a = 0; a < g.vertex_count(); ++a) p.add(vertex_word(static_cast<VertexId>(a)), S(1));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.length());
    return d;
  }
  S coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add(Word w, const S& c) {
    if (ScalarTraits<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(const S& s, const BasicPoly& p) {
    BasicPoly out;
    for (const auto& [w, c] : p.terms_) out.add(w, s * c);
    return out;
  }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    BasicPoly out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_)
        if (auto w = concat(wa, wb)) out.add(std::move(*w), ca * cb);
    return out;
  }
  friend bool operator==(const BasicPoly&, const BasicPoly&) = default;

  BasicPoly pow(unsigned k, const DirectedDouble& g) const {
    BasicPoly r = identity(g);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Terms restricted to words from `from` to `to`: p_from · P · p_to.
  BasicPoly corner(VertexId from, VertexId to) const {
    BasicPoly out;
    for (const auto& [w, c] : terms_)
      if (w.start == from && w.end == to) out.terms_.emplace(w, c);
    return out;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using T = std::invoke_result_t<F, const S&>;
    BasicPoly<T> out;
    for (const auto& [w, c] : terms_) out.add(w, f(c));
    return out;
  }

 private:
  Terms terms_;
};

using ExactPoly = BasicPoly<QComplex>;
using Poly = BasicPoly<std::complex<double>>;

template <class S>
BasicPoly<S> adjoint(const DirectedDouble& g, const BasicPoly<S>& p) {
  BasicPoly<S> out;
  for (const auto& [w, c] : p.terms()) out.add(adjoint_word(g, w), ScalarTraits<S>::conj(c));
  return out;
}

Poly to_numeric(const ExactPoly& p);

/// Largest coefficient modulus of p − q.
double max_abs_difference(const Poly& p, const Poly& q);

/// Human-readable form, e.g. `2*X[e1+]X[e1-] + p[a]`.
std::string format_poly(const DirectedDouble& g, const Poly& p);
std::string format_poly(const DirectedDouble& g, const ExactPoly& p);

/// Parses the expression mini-language:
///
///     expr   := term (('+'|'-') term)*
///     term   := ['-'] coeff? factor ('*' factor)*   |  coeff
///     factor := P[v] | X[e] | X[e;v->w] | X[e+] | X[e-] | '(' expr ')' | factor '^' int
///     coeff  := number | p/q | '(' re ',' im ')'
///
/// `X[e]` is the self-adjoint edge generator X_ε + X_{ε^op} (X_ε for loops); a bare
/// coefficient means that multiple of the identity Σ p_α. Numbers are parsed exactly.
/// Throws ParseError (with byte offset) or Error(invalid_argument) on unknown names.
ExactPoly parse_expression(std::string_view text, const DirectedDouble& g);

}  // namespace freegraph
