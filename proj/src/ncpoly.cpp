#include "freegraph/ncpoly.hpp"

#include "freegraph/error.hpp"

#include <fmt/format.h>

#include <cctype>

namespace freegraph {

Word vertex_word(VertexId v) { return Word{v, v, {}}; }

std::optional<Word> make_word(const DirectedDouble& g, std::span<const OrientedEdgeId> letters) {
  if (letters.empty()) return std::nullopt;
  for (std::size_t k = 0; k + 1 < letters.size(); ++k)
    if (g.target(letters[k]) != g.source(letters[k + 1])) return std::nullopt;
  return Word{g.source(letters.front()), g.target(letters.back()), {letters.begin(), letters.end()}};
}

std::optional<Word> concat(const Word& a, const Word& b) {
  if (a.end != b.start) return std::nullopt;
  Word w{a.start, b.end, {}};
  w.letters.reserve(a.letters.size() + b.letters.size());
  w.letters.insert(w.letters.end(), a.letters.begin(), a.letters.end());
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

Word adjoint_word(const DirectedDouble& g, const Word& w) {
  Word out{w.end, w.start, {}};
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(g.op(*it));
  return out;
}

std::string format_word(const DirectedDouble& g, const Word& w) {
  if (w.empty()) return "p(" + g.graph().vertex(w.start).name + ")";
  std::string s;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k) s += ',';
    s += g.edge(w.letters[k]).label;
  }
  return s;
}

Word parse_word(const DirectedDouble& g, std::string_view text) {
  std::vector<OrientedEdgeId> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty()) throw ParseError("empty oriented-edge label in word", pos);
    auto e = g.find(tok);
    if (!e) throw Error(ErrorCode::invalid_argument, "unknown oriented edge '" + std::string(tok) + "'");
    letters.push_back(*e);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  auto w = make_word(g, letters);
  if (!w) throw Error(ErrorCode::invalid_argument, "word '" + std::string(text) + "' is not a path");
  return *w;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = index(w.start) * 0x9E3779B97F4A7C15ull ^ (index(w.end) + 0x632BE59BD9B4E019ull);
  for (auto e : w.letters) h = (h ^ index(e)) * 0x100000001B3ull + (h >> 29);
  return h;
}

Poly to_numeric(const ExactPoly& p) {
  return p.map_coefficients([](const QComplex& c) { return to_complex(c); });
}

double max_abs_difference(const Poly& p, const Poly& q) {
  double m = 0;
  const Poly d = p - q;
  for (const auto& [w, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

namespace {

std::string format_coefficient(const std::complex<double>& c) {
  if (c.imag() == 0) return fmt::format("{:.12g}", c.real());
  return fmt::format("({:.12g},{:.12g})", c.real(), c.imag());
}

std::string format_coefficient(const QComplex& c) { return to_string(c); }

template <class S>
std::string format_poly_impl(const DirectedDouble& g, const BasicPoly<S>& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    if (!first) s += " + ";
    first = false;
    s += format_coefficient(c) + "*";
    if (w.empty()) {
      s += "P[" + g.graph().vertex(w.start).name + "]";
    } else {
      for (auto e : w.letters) s += "X[" + g.edge(e).label + "]";
    }
  }
  return s;
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const DirectedDouble& g) : text_(text), g_(g) {}

  ExactPoly parse() {
    ExactPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(fmt::format("expression syntax error at position {}: {}", pos_, msg), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_number() {
    skip_ws();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
  }

  Rational number() {
    skip_ws();
    std::size_t start = pos_;
    auto is_num_char = [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/' || c == 'e' || c == 'E';
    };
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (is_num_char(c)) {
        ++pos_;
      } else if ((c == '+' || c == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
        ++pos_;
      } else {
        break;
      }
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      pos_ = start;
      fail("invalid number");
    }
  }

  Rational signed_number() {
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    Rational r = number();
    return neg ? Rational(-r) : r;
  }

  // '(' re ',' im ')' if present at the cursor; restores the cursor otherwise.
  std::optional<QComplex> complex_literal() {
    std::size_t save = pos_;
    if (!accept('(')) return std::nullopt;
    skip_ws();
    std::size_t probe = pos_;
    if (probe < text_.size() && (text_[probe] == '-' || text_[probe] == '+')) ++probe;
    if (probe >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[probe])) || text_[probe] == '.')) {
      pos_ = save;
      return std::nullopt;
    }
    Rational re = signed_number();
    if (!accept(',')) {
      pos_ = save;
      return std::nullopt;
    }
    Rational im = signed_number();
    expect(')');
    return QComplex{re, im};
  }

  ExactPoly expr() {
    ExactPoly p = term();
    for (;;) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  ExactPoly term() {
    QComplex coeff(1);
    bool have_coeff = false;
    if (accept('-')) coeff = QComplex(-1);
    if (at_number()) {
      coeff *= QComplex(number());
      have_coeff = true;
    } else if (auto c = complex_literal()) {
      coeff *= *c;
      have_coeff = true;
    }
    if (have_coeff) {
      accept('*');
      if (!starts_factor()) return coeff * ExactPoly::identity(g_);
    }
    ExactPoly p = factor();
    while (accept('*')) p = p * factor();
    return coeff * p;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == 'P' || c == 'X' || c == '(';
  }

  ExactPoly factor() {
    ExactPoly p = primary();
    while (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      if (k > 64) fail("exponent too large");
      p = p.pow(k, g_);
    }
    return p;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '.'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  VertexId vertex(const std::string& name) {
    if (auto v = g_.graph().find_vertex(name)) return *v;
    throw Error(ErrorCode::invalid_argument, "unknown vertex '" + name + "' in expression");
  }

  ExactPoly primary() {
    skip_ws();
    if (accept('(')) {
      ExactPoly p = expr();
      expect(')');
      return p;
    }
    if (accept('P')) {
      expect('[');
      VertexId v = vertex(identifier());
      expect(']');
      return ExactPoly::projection(v);
    }
    if (accept('X')) {
      expect('[');
      std::string name = identifier();
      auto edge = g_.graph().find_edge(name);
      if (!edge) throw Error(ErrorCode::invalid_argument, "unknown edge '" + name + "' in expression");
      ExactPoly p;
      if (accept(';')) {
        VertexId from = vertex(identifier());
        expect('-');
        expect('>');
        VertexId to = vertex(identifier());
        auto e = g_.find(*edge, from, to);
        if (!e) throw Error(ErrorCode::invalid_argument, "edge '" + name + "' does not join the given vertices");
        p = ExactPoly::generator(g_, *e);
      } else if (accept('+')) {
        p = ExactPoly::generator(g_, *g_.find(name + "+"));
      } else if (accept('-')) {
        auto e = g_.find(name + "-");
        if (!e) throw Error(ErrorCode::invalid_argument, "loop edge '" + name + "' has no '-' orientation");
        p = ExactPoly::generator(g_, *e);
      } else {
        for (auto e : g_.orientations(*edge)) p += ExactPoly::generator(g_, e);
      }
      expect(']');
      return p;
    }
    fail("expected P[..], X[..] or '('");
  }

  std::string_view text_;
  const DirectedDouble& g_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_poly(const DirectedDouble& g, const Poly& p) { return format_poly_impl(g, p); }
std::string format_poly(const DirectedDouble& g, const ExactPoly& p) { return format_poly_impl(g, p); }

ExactPoly parse_expression(std::string_view text, const DirectedDouble& g) {
  return ExpressionParser(text, g).parse();
}

}  // namespace freegraph
