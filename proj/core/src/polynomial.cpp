#include "borderforge/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "borderforge/errors.hpp"

namespace borderforge {

Ring::Ring(PrimeField field, std::size_t nvars, TermOrder order)
    : field_(std::move(field)), nvars_(nvars), order_(order) {
  if (nvars == 0 || nvars > kMaxVars) {
    throw DimensionMismatch("number of variables must be in [1, " + std::to_string(kMaxVars) + "], got " +
                            std::to_string(nvars));
  }
  unit_key_ = order_key(order_, Term::one(nvars_));
}

void Ring::check(const Term& t) const {
  if (t.nvars() != nvars_) {
    throw DimensionMismatch("term over " + std::to_string(t.nvars()) + " variables in a ring with " +
                            std::to_string(nvars_));
  }
}

Polynomial Polynomial::from_terms(const Ring& ring, std::vector<std::pair<Term, Fp>> terms) {
  const PrimeField& F = ring.field();
  std::vector<Monomial> mons;
  mons.reserve(terms.size());
  for (const auto& [t, c] : terms) {
    ring.check(t);
    mons.push_back({ring.key(t), t, Fp{c.v % F.modulus()}});
  }
  std::sort(mons.begin(), mons.end(), [](const Monomial& a, const Monomial& b) { return a.key > b.key; });
  Polynomial out;
  for (const auto& m : mons) {
    if (!out.terms_.empty() && out.terms_.back().key == m.key) {
      out.terms_.back().coeff = F.add(out.terms_.back().coeff, m.coeff);
    } else {
      out.terms_.push_back(m);
    }
  }
  std::erase_if(out.terms_, [](const Monomial& m) { return m.coeff.v == 0; });
  return out;
}

Polynomial Polynomial::monomial(const Ring& ring, const Term& t, Fp c) {
  return from_terms(ring, {{t, c}});
}

Polynomial Polynomial::from_sorted(std::vector<Monomial> monomials) noexcept {
  Polynomial out;
  out.terms_ = std::move(monomials);
  return out;
}

unsigned Polynomial::degree() const noexcept {
  unsigned d = 0;
  for (const auto& m : terms_) d = std::max(d, m.term.degree());
  return d;
}

Fp Polynomial::coefficient(const Ring& ring, const Term& t) const {
  ring.check(t);
  const std::uint64_t k = ring.key(t);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Monomial& m, std::uint64_t key) { return m.key > key; });
  if (it != terms_.end() && it->key == k) return it->coeff;
  return Fp{0};
}

Polynomial axpy(const Ring& ring, const Polynomial& f, Fp c, const Term& t, const Polynomial& g) {
  if (c.v == 0 || g.is_zero()) return f;
  const PrimeField& F = ring.field();
  const Fp nc = F.neg(c);
  const std::uint64_t tk = ring.key(t);
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::vector<Monomial> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const std::uint64_t bk = ring.shift_key(b[j].key, tk);
    if (i < a.size() && a[i].key > bk) {
      out.push_back(a[i++]);
    } else if (i < a.size() && a[i].key == bk) {
      const Fp v = F.add(a[i].coeff, F.mul(nc, b[j].coeff));
      if (v.v != 0) out.push_back({bk, a[i].term, v});
      ++i;
      ++j;
    } else {
      out.push_back({bk, b[j].term.times(t), F.mul(nc, b[j].coeff)});
      ++j;
    }
  }
  return Polynomial::from_sorted(std::move(out));
}

Polynomial mul_term(const Ring& ring, const Polynomial& f, Fp c, const Term& t) {
  return axpy(ring, Polynomial{}, ring.field().neg(c), t, f);
}

Polynomial add(const Ring& ring, const Polynomial& f, const Polynomial& g) {
  return axpy(ring, f, ring.field().neg(ring.field().one()), ring.one(), g);
}

Polynomial sub(const Ring& ring, const Polynomial& f, const Polynomial& g) {
  return axpy(ring, f, ring.field().one(), ring.one(), g);
}

Polynomial mul(const Ring& ring, const Polynomial& f, const Polynomial& g) {
  Polynomial out;
  for (const auto& m : f) out = axpy(ring, out, ring.field().neg(m.coeff), m.term, g);
  return out;
}

Polynomial make_monic(const Ring& ring, const Polynomial& f) {
  if (f.is_zero() || f.is_monic()) return f;
  const PrimeField& F = ring.field();
  const Fp inv = F.inv(f.lc());
  std::vector<Monomial> out(f.terms());
  for (auto& m : out) m.coeff = F.mul(m.coeff, inv);
  return Polynomial::from_sorted(std::move(out));
}

Fp eval(const Ring& ring, const Polynomial& f, std::span<const Fp> point) {
  if (point.size() != ring.nvars()) {
    throw DimensionMismatch("point of length " + std::to_string(point.size()) + " in a ring with " +
                            std::to_string(ring.nvars()) + " variables");
  }
  const PrimeField& F = ring.field();
  Fp acc = F.zero();
  for (const auto& m : f) {
    Fp v = m.coeff;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
      const unsigned e = m.term.exponent(i);
      if (e != 0) v = F.mul(v, F.pow(point[i], e));
    }
    acc = F.add(acc, v);
  }
  return acc;
}

std::string format_term(const Term& t) {
  std::string out;
  for (std::size_t i = 0; i < t.nvars(); ++i) {
    const unsigned e = t.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i + 1);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string format_polynomial(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& m : f) {
    if (!out.empty()) out += " + ";
    out += std::to_string(m.coeff.v);
    if (!m.term.is_one()) out += '*' + format_term(m.term);
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const Ring& ring, const std::string& text) : ring_(ring), s_(text) {}

  Polynomial run() {
    std::vector<std::pair<Term, Fp>> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = take() == '-';
    terms.push_back(parse_term(negative));
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char op = take();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-', got '") + op + "'");
      skip_ws();
      bool neg = op == '-';
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        if (take() == '-') neg = !neg;
      }
      terms.push_back(parse_term(neg));
    }
    return Polynomial::from_terms(ring_, std::move(terms));
  }

 private:
  std::pair<Term, Fp> parse_term(bool negative) {
    const PrimeField& F = ring_.field();
    Fp coeff = F.one();
    std::vector<unsigned> exps(ring_.nvars(), 0);
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff = F.mul(coeff, F.from_int(static_cast<std::int64_t>(parse_uint() % F.modulus())));
      } else if (c == 'x') {
        take();
        const std::uint64_t idx = parse_uint();
        if (idx == 0 || idx > ring_.nvars()) fail("variable x" + std::to_string(idx) + " out of range");
        std::uint64_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          take();
          skip_ws();
          e = parse_uint();
        }
        if (exps[idx - 1] + e > kMaxExponent) fail("exponent too large");
        exps[idx - 1] += static_cast<unsigned>(e);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        take();
        continue;
      }
      if (!at_end() && (peek() == 'x' || std::isdigit(static_cast<unsigned char>(peek())))) continue;
      break;
    }
    if (!any) fail("missing term");
    if (negative) coeff = F.neg(coeff);
    return {Term(std::span<const unsigned>(exps)), coeff};
  }

  std::uint64_t parse_uint() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(take() - '0');
      if (v > (std::uint64_t{1} << 40)) fail("number too large");
    }
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char take() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  const Ring& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, const std::string& text) { return Parser(ring, text).run(); }

}  // namespace borderforge
